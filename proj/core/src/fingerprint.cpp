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

#include "rankvar/fingerprint.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "rankvar/error.hpp"

namespace rankvar {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fixed6(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

std::string render_json(const FingerprintResult& result) {
  std::string out = "{\n  \"entries\": [";
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    const FingerprintEntry& entry = result.entries[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\n";
    out += "      \"family\": ";
    out += entry.family ? "\"" + std::string(family_name(*entry.family)) + "\"" : "null";
    out += ",\n";
    out += "      \"label\": \"" + json_escape(entry.label) + "\",\n";
    out += "      \"matches\": [";
    for (std::size_t m = 0; m < entry.matches.size(); ++m) {
      out += m == 0 ? "\n" : ",\n";
      out += "        {\"deviation\": " + shortest(entry.matches[m].deviation) +
             ", \"name\": \"" + json_escape(entry.matches[m].canonical_name) + "\"}";
    }
    out += entry.matches.empty() ? "],\n" : "\n      ],\n";
    out += "      \"value\": " + shortest(entry.value) + "\n";
    out += "    }";
  }
  out += result.entries.empty() ? "],\n" : "\n  ],\n";
  out += "  \"tolerance\": " + shortest(result.tolerance) + "\n";
  out += "}\n";
  return out;
}

std::string render_markdown(const FingerprintResult& result) {
  std::string out = "| label | value | family | matches |\n| --- | ---: | --- | --- |\n";
  for (const FingerprintEntry& entry : result.entries) {
    out += "| " + entry.label + " | " + fixed6(entry.value) + " | ";
    out += entry.family ? std::string(family_name(*entry.family)) : "(unknown)";
    out += " | ";
    if (entry.matches.empty()) {
      out += "(none)";
    } else {
      for (std::size_t m = 0; m < entry.matches.size(); ++m) {
        if (m != 0) out += ", ";
        char dev[32];
        std::snprintf(dev, sizeof(dev), "%.2e", entry.matches[m].deviation);
        out += entry.matches[m].canonical_name + " (" + dev + ")";
      }
    }
    out += " |\n";
  }
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string render_csv(const FingerprintResult& result) {
  std::string out = "label,value,family,match,deviation\n";
  for (const FingerprintEntry& entry : result.entries) {
    const std::string prefix =
        csv_field(entry.label) + "," + shortest(entry.value) + "," +
        (entry.family ? std::string(family_name(*entry.family)) : "");
    if (entry.matches.empty()) {
      out += prefix + ",,\n";
      continue;
    }
    for (const FingerprintMatch& match : entry.matches) {
      out += prefix + "," + csv_field(match.canonical_name) + "," +
             shortest(match.deviation) + "\n";
    }
  }
  return out;
}

}  // namespace

FingerprintResult fingerprint(std::span<const ObservedValue> observed,
                              const EvaluationReport& report, double tolerance) {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorKind::Config, "fingerprint tolerance must be > 0");
  }
  FingerprintResult result;
  result.tolerance = tolerance;
  result.entries.reserve(observed.size());

  for (const ObservedValue& obs : observed) {
    FingerprintEntry entry;
    entry.label = obs.label;
    entry.value = obs.value;
    entry.family = family_from_label(obs.label);
    if (entry.family) {
      for (const ReportCell& cell : report.cells) {
        if (cell.spec.family != *entry.family) continue;
        const double deviation = std::fabs(cell.value - obs.value);
        if (deviation <= tolerance) {
          entry.matches.push_back(FingerprintMatch{cell.spec.canonical_name, deviation});
        }
      }
      std::sort(entry.matches.begin(), entry.matches.end(),
                [](const FingerprintMatch& a, const FingerprintMatch& b) {
                  if (a.deviation != b.deviation) return a.deviation < b.deviation;
                  return a.canonical_name < b.canonical_name;
                });
    }
    result.entries.push_back(std::move(entry));
  }

  std::sort(result.entries.begin(), result.entries.end(),
            [](const FingerprintEntry& a, const FingerprintEntry& b) {
              if (a.label != b.label) return a.label < b.label;
              return a.value < b.value;
            });
  return result;
}

std::vector<ObservedValue> parse_observed_json(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::Schema, "observed values must be a JSON object of label -> number");
  }
  std::vector<ObservedValue> out;
  out.reserve(doc.size());
  for (const auto& [label, value] : doc.items()) {
    if (!value.is_number()) {
      throw Error(ErrorKind::Schema, "observed value of '" + label + "' is not a number");
    }
    out.push_back(ObservedValue{label, value.get<double>()});
  }
  return out;
}

std::string render_fingerprint(const FingerprintResult& result, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return render_json(result);
    case ReportFormat::Markdown: return render_markdown(result);
    case ReportFormat::Csv: return render_csv(result);
  }
  throw Error(ErrorKind::Config, "unknown report format");
}

}  // namespace rankvar
