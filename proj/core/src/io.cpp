/*
 * Copyright 2026 The rankvar authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rankvar/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace rankvar {
namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

char detect_delimiter(std::string_view header) {
  if (header.find('\t') != std::string_view::npos) return '\t';
  return ',';
}

double parse_double(std::string_view token, std::size_t line_no, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw Error(ErrorKind::Row, "line " + std::to_string(line_no) + ": unparseable " + what +
                                    " '" + std::string(token) + "'");
  }
  return value;
}

std::int64_t parse_timestamp(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorKind::Row, "line " + std::to_string(line_no) + ": unparseable timestamp '" +
                                    std::string(token) + "'");
  }
  if (value < 0) {
    throw Error(ErrorKind::Row,
                "line " + std::to_string(line_no) + ": negative timestamp " + std::string(token));
  }
  return value;
}

// Walks lines of `text`, invoking row_fn(line_no, fields) for each non-empty
// data line. Returns the header fields and delimiter via out parameters.
template <typename RowFn>
void for_each_row(std::string_view text, char& delimiter,
                  std::vector<std::string_view>& header, RowFn&& row_fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(line).empty()) {
      if (pos > text.size()) break;
      continue;
    }
    if (!saw_header) {
      delimiter = detect_delimiter(line);
      header = split_fields(line, delimiter);
      saw_header = true;
      continue;
    }
    row_fn(line_no, split_fields(line, delimiter));
  }
  if (!saw_header) throw Error(ErrorKind::Schema, "missing header row");
}

// Maps header tokens to required roles; throws Schema on missing/duplicate.
std::vector<int> resolve_columns(const std::vector<std::string_view>& header,
                                 const std::vector<std::pair<std::string, ColumnRole>>& wanted,
                                 TableFormat* format_out) {
  std::vector<int> role_of_field(header.size(), -1);
  std::vector<int> field_of_role(wanted.size(), -1);
  for (std::size_t f = 0; f < header.size(); ++f) {
    const std::string name = to_lower(header[f]);
    for (std::size_t r = 0; r < wanted.size(); ++r) {
      if (name == wanted[r].first) {
        if (field_of_role[r] != -1) {
          throw Error(ErrorKind::Schema, "duplicate column '" + name + "' in header");
        }
        field_of_role[r] = static_cast<int>(f);
        role_of_field[f] = static_cast<int>(r);
      }
    }
  }
  for (std::size_t r = 0; r < wanted.size(); ++r) {
    if (field_of_role[r] == -1) {
      throw Error(ErrorKind::Schema, "missing column '" + wanted[r].first + "' in header");
    }
  }
  if (format_out != nullptr) {
    for (std::size_t f = 0; f < header.size(); ++f) {
      if (role_of_field[f] != -1) {
        format_out->columns.emplace_back(std::string(header[f]),
                                         wanted[role_of_field[f]].second);
      }
    }
  }
  return field_of_role;
}

void append_shortest(std::string& out, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  out.append(buf, ptr);
}

}  // namespace

ParsedInteractions parse_interactions(std::string_view text) {
  static const std::vector<std::pair<std::string, ColumnRole>> kWanted = {
      {"user_id", ColumnRole::User},
      {"item_id", ColumnRole::Item},
      {"rating", ColumnRole::Rating},
      {"timestamp", ColumnRole::Timestamp},
  };

  ParsedInteractions out;
  char delimiter = ',';
  std::vector<std::string_view> header;
  std::vector<int> field_of_role;
  bool resolved = false;

  for_each_row(text, delimiter, header, [&](std::size_t line_no,
                                            const std::vector<std::string_view>& fields) {
    if (!resolved) {
      out.format.delimiter = delimiter;
      field_of_role = resolve_columns(header, kWanted, &out.format);
      resolved = true;
    }
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::Row, "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(header.size()) + " fields, got " +
                                      std::to_string(fields.size()));
    }
    Interaction row;
    row.user = std::string(fields[field_of_role[0]]);
    row.item = std::string(fields[field_of_role[1]]);
    if (row.user.empty() || row.item.empty()) {
      throw Error(ErrorKind::Row, "line " + std::to_string(line_no) + ": empty user or item id");
    }
    row.rating = parse_double(fields[field_of_role[2]], line_no, "rating");
    row.timestamp = parse_timestamp(fields[field_of_role[3]], line_no);
    out.log.rows.push_back(std::move(row));
  });

  if (!resolved) {
    // Header-only input: still validate the schema so errors surface early.
    out.format.delimiter = delimiter;
    field_of_role = resolve_columns(header, kWanted, &out.format);
  }
  return out;
}

ParsedInteractions parse_interactions_file(const std::string& path) {
  return parse_interactions(read_file(path));
}

std::string write_interactions(const InteractionLog& log, const TableFormat& format) {
  if (format.columns.empty()) throw Error(ErrorKind::Config, "table format has no columns");
  std::string out;
  out.reserve(log.rows.size() * 24 + 64);
  for (std::size_t c = 0; c < format.columns.size(); ++c) {
    if (c > 0) out.push_back(format.delimiter);
    out += format.columns[c].first;
  }
  out.push_back('\n');
  for (const Interaction& row : log.rows) {
    for (std::size_t c = 0; c < format.columns.size(); ++c) {
      if (c > 0) out.push_back(format.delimiter);
      switch (format.columns[c].second) {
        case ColumnRole::User: out += row.user; break;
        case ColumnRole::Item: out += row.item; break;
        case ColumnRole::Rating: append_shortest(out, row.rating); break;
        case ColumnRole::Timestamp: out += std::to_string(row.timestamp); break;
      }
    }
    out.push_back('\n');
  }
  return out;
}

RankedPredictions parse_predictions(std::string_view text) {
  static const std::vector<std::pair<std::string, ColumnRole>> kWanted = {
      {"user_id", ColumnRole::User},
      {"item_id", ColumnRole::Item},
      {"score", ColumnRole::Rating},
  };

  RankedPredictions preds;
  char delimiter = ',';
  std::vector<std::string_view> header;
  std::vector<int> field_of_role;
  bool resolved = false;

  UserId current_user;
  std::vector<ScoredItem> current_list;
  std::unordered_map<UserId, bool> closed_users;

  auto flush = [&]() {
    if (!current_user.empty()) {
      preds.add_user(current_user, std::move(current_list));
      closed_users[current_user] = true;
      current_list.clear();
    }
  };

  for_each_row(text, delimiter, header, [&](std::size_t line_no,
                                            const std::vector<std::string_view>& fields) {
    if (!resolved) {
      field_of_role = resolve_columns(header, kWanted, nullptr);
      resolved = true;
    }
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::Row, "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(header.size()) + " fields, got " +
                                      std::to_string(fields.size()));
    }
    UserId user{fields[field_of_role[0]]};
    ItemId item{fields[field_of_role[1]]};
    if (user.empty() || item.empty()) {
      throw Error(ErrorKind::Row, "line " + std::to_string(line_no) + ": empty user or item id");
    }
    const double score = parse_double(fields[field_of_role[2]], line_no, "score");
    if (user == current_user && !current_list.empty() && current_list.back().score < score) {
      throw Error(ErrorKind::Row, "line " + std::to_string(line_no) +
                                      ": scores of user '" + user + "' increase; rows must be "
                                      "ordered by non-increasing score");
    }
    if (user != current_user) {
      if (closed_users.count(user) != 0) {
        throw Error(ErrorKind::Row, "line " + std::to_string(line_no) + ": rows of user '" + user +
                                        "' are not contiguous");
      }
      flush();
      current_user = std::move(user);
    }
    current_list.push_back(ScoredItem{std::move(item), score});
  });
  flush();

  if (!resolved) {
    field_of_role = resolve_columns(header, kWanted, nullptr);
  }
  return preds;
}

RankedPredictions parse_predictions_file(const std::string& path) {
  return parse_predictions(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Data, "cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Data, "cannot open file '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw Error(ErrorKind::Data, "failed writing '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorKind::Data, "failed to move '" + tmp + "' into place");
  }
}

}  // namespace rankvar
