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

#include "rankvar/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <utility>

#include <nlohmann/json.hpp>

#include "rankvar/error.hpp"

namespace rankvar {

namespace {

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
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

/// Fixed 6 decimal places; negative zero renders as positive zero so equal
/// values are always byte-equal.
std::string format_value(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

/// Shortest round-trip form for exact parameters such as the log base.
std::string format_exact(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Key/value pairs of the params object, values pre-rendered as JSON.
std::vector<std::pair<std::string, std::string>> params_pairs(const VariantSpec& spec) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto quoted = [](std::string_view s) { return "\"" + std::string(s) + "\""; };

  switch (spec.family) {
    case MetricFamily::Precision:
      break;
    case MetricFamily::Recall: {
      const auto& p = std::get<RecallParams>(spec.params);
      kv.emplace_back("denominator", quoted(p.denominator == RecallDenominator::TotalRelevant
                                                ? "total_relevant"
                                                : "min_k_relevant"));
      break;
    }
    case MetricFamily::HitRate: {
      const auto& p = std::get<HitRateParams>(spec.params);
      kv.emplace_back("variant", quoted(p.variant == HitRateVariant::Indicator ? "indicator"
                                                                               : "hit_count"));
      break;
    }
    case MetricFamily::Mrr: {
      const auto& p = std::get<MrrParams>(spec.params);
      kv.emplace_back("variant",
                      quoted(p.variant == RrVariant::FirstHit ? "first_hit" : "sum_of_hits"));
      break;
    }
    case MetricFamily::Map: {
      const auto& p = std::get<ApAveraging>(spec.params);
      std::string_view term = p.term == ApAveragingTerm::ByK          ? "by_k"
                              : p.term == ApAveragingTerm::ByRelevant ? "by_relevant"
                                                                      : "by_min";
      kv.emplace_back("averaging", quoted(term));
      kv.emplace_back("drop_hit_indicator", p.drop_hit_indicator ? "true" : "false");
      break;
    }
    case MetricFamily::Ndcg: {
      const auto& p = std::get<NdcgParams>(spec.params);
      kv.emplace_back("gain", quoted(p.gain == NdcgGain::Binary ? "binary" : "exponential"));
      kv.emplace_back("ideal",
                      quoted(p.ideal == IdealTruncation::AtK ? "at_k" : "full_test"));
      kv.emplace_back("log_base", format_exact(p.log_base));
      kv.emplace_back("normalize", p.normalize ? "true" : "false");
      break;
    }
    case MetricFamily::Auc: {
      const auto& p = std::get<AucVariantParams>(spec.params);
      std::string_view mode = p.mode == AucMode::Stacked           ? "stacked"
                              : p.mode == AucMode::RatioOfAverages ? "ratio_of_averages"
                              : p.mode == AucMode::Grouped         ? "grouped"
                              : p.mode == AucMode::GroupedTopK     ? "grouped_topk"
                                                                   : "limited_topk";
      kv.emplace_back("mode", quoted(mode));
      kv.emplace_back("weighting",
                      quoted(p.weighting == GaucWeighting::UniformZeroOnDegenerate
                                 ? "uniform"
                                 : "by_rated_count"));
      break;
    }
  }
  if (spec.cutoff) {
    kv.emplace_back("cutoff", std::to_string(*spec.cutoff));
  }
  std::sort(kv.begin(), kv.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return kv;
}

std::string render_params_json(const VariantSpec& spec) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : params_pairs(spec)) {
    if (!first) out += ", ";
    first = false;
    out += "\"" + key + "\": " + value;
  }
  out += "}";
  return out;
}

std::vector<const ReportCell*> cells_by_name(const EvaluationReport& report) {
  std::vector<const ReportCell*> order;
  order.reserve(report.cells.size());
  for (const ReportCell& cell : report.cells) order.push_back(&cell);
  std::sort(order.begin(), order.end(), [](const ReportCell* a, const ReportCell* b) {
    return a->spec.canonical_name < b->spec.canonical_name;
  });
  return order;
}

std::string render_json(const EvaluationReport& report) {
  std::string out = "{\n  \"cells\": [";
  const auto order = cells_by_name(report);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ReportCell& cell = *order[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\n";
    out += "      \"family\": \"" + std::string(family_name(cell.spec.family)) + "\",\n";
    out += "      \"name\": \"" + json_escape(cell.spec.canonical_name) + "\",\n";
    out += "      \"params\": " + render_params_json(cell.spec) + ",\n";
    out += "      \"users\": " + std::to_string(cell.users) + ",\n";
    out += "      \"value\": " + format_value(cell.value) + "\n";
    out += "    }";
  }
  out += order.empty() ? "],\n" : "\n  ],\n";
  out += "  \"dataset\": \"" + json_escape(report.dataset) + "\",\n";
  out += "  \"k\": " + std::to_string(report.k) + "\n";
  out += "}\n";
  return out;
}

/// One wide row mirroring a side-by-side comparison table: a column per
/// variant, values underneath.
std::string render_markdown(const EvaluationReport& report) {
  const auto order = cells_by_name(report);
  std::string header = "| dataset | k |";
  std::string rule = "| --- | --- |";
  std::string row = "| " + report.dataset + " | " + std::to_string(report.k) + " |";
  for (const ReportCell* cell : order) {
    header += " " + cell->spec.canonical_name + " |";
    rule += " ---: |";
    row += " " + format_value(cell->value) + " |";
  }
  return header + "\n" + rule + "\n" + row + "\n";
}

std::string csv_field(std::string_view s) {
  const bool needs_quotes = s.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string render_csv(const EvaluationReport& report) {
  std::string out = "dataset,k,name,family,params,value,users\n";
  for (const ReportCell* cell : cells_by_name(report)) {
    out += csv_field(report.dataset);
    out += "," + std::to_string(report.k);
    out += "," + csv_field(cell->spec.canonical_name);
    out += "," + std::string(family_name(cell->spec.family));
    out += "," + csv_field(render_params_json(cell->spec));
    out += "," + format_value(cell->value);
    out += "," + std::to_string(cell->users);
    out += "\n";
  }
  return out;
}

template <typename T>
T require_field(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw Error(ErrorKind::Schema, std::string("report JSON missing field '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::Schema, std::string("report JSON field '") + key +
                                       "' has the wrong type");
  }
}

VariantSpec::Params parse_params(MetricFamily family, const nlohmann::json& params,
                                 const std::string& name) {
  auto text = [&params](const char* key, std::string_view fallback) -> std::string {
    if (!params.contains(key)) return std::string(fallback);
    if (!params.at(key).is_string()) {
      throw Error(ErrorKind::Schema, std::string("param '") + key + "' must be a string");
    }
    return params.at(key).get<std::string>();
  };

  switch (family) {
    case MetricFamily::Precision:
      return PrecisionParams{};
    case MetricFamily::Recall: {
      RecallParams p;
      const std::string d = text("denominator", "total_relevant");
      if (d == "total_relevant") p.denominator = RecallDenominator::TotalRelevant;
      else if (d == "min_k_relevant") p.denominator = RecallDenominator::MinOfKAndRelevant;
      else throw Error(ErrorKind::Schema, "unknown recall denominator '" + d + "'");
      return p;
    }
    case MetricFamily::HitRate: {
      HitRateParams p;
      const std::string v = text("variant", "indicator");
      if (v == "indicator") p.variant = HitRateVariant::Indicator;
      else if (v == "hit_count") p.variant = HitRateVariant::HitCount;
      else throw Error(ErrorKind::Schema, "unknown hitrate variant '" + v + "'");
      return p;
    }
    case MetricFamily::Mrr: {
      MrrParams p;
      const std::string v = text("variant", "first_hit");
      if (v == "first_hit") p.variant = RrVariant::FirstHit;
      else if (v == "sum_of_hits") p.variant = RrVariant::SumOfHits;
      else throw Error(ErrorKind::Schema, "unknown reciprocal-rank variant '" + v + "'");
      return p;
    }
    case MetricFamily::Map: {
      ApAveraging p;
      const std::string t = text("averaging", "by_relevant");
      if (t == "by_k") p.term = ApAveragingTerm::ByK;
      else if (t == "by_relevant") p.term = ApAveragingTerm::ByRelevant;
      else if (t == "by_min") p.term = ApAveragingTerm::ByMin;
      else throw Error(ErrorKind::Schema, "unknown averaging term '" + t + "'");
      if (params.contains("drop_hit_indicator")) {
        if (!params.at("drop_hit_indicator").is_boolean()) {
          throw Error(ErrorKind::Schema, "param 'drop_hit_indicator' must be a boolean");
        }
        p.drop_hit_indicator = params.at("drop_hit_indicator").get<bool>();
      }
      return p;
    }
    case MetricFamily::Ndcg: {
      NdcgParams p;
      const std::string g = text("gain", "binary");
      if (g == "binary") p.gain = NdcgGain::Binary;
      else if (g == "exponential") p.gain = NdcgGain::Exponential;
      else throw Error(ErrorKind::Schema, "unknown gain '" + g + "'");
      const std::string ideal = text("ideal", "at_k");
      if (ideal == "at_k") p.ideal = IdealTruncation::AtK;
      else if (ideal == "full_test") p.ideal = IdealTruncation::FullTest;
      else throw Error(ErrorKind::Schema, "unknown ideal truncation '" + ideal + "'");
      if (params.contains("log_base")) {
        if (!params.at("log_base").is_number()) {
          throw Error(ErrorKind::Schema, "param 'log_base' must be a number");
        }
        p.log_base = params.at("log_base").get<double>();
      }
      if (params.contains("normalize")) {
        if (!params.at("normalize").is_boolean()) {
          throw Error(ErrorKind::Schema, "param 'normalize' must be a boolean");
        }
        p.normalize = params.at("normalize").get<bool>();
      }
      return p;
    }
    case MetricFamily::Auc: {
      AucVariantParams p;
      const std::string m = text("mode", "grouped");
      if (m == "stacked") p.mode = AucMode::Stacked;
      else if (m == "ratio_of_averages") p.mode = AucMode::RatioOfAverages;
      else if (m == "grouped") p.mode = AucMode::Grouped;
      else if (m == "grouped_topk") p.mode = AucMode::GroupedTopK;
      else if (m == "limited_topk") p.mode = AucMode::LimitedTopK;
      else throw Error(ErrorKind::Schema, "unknown AUC mode '" + m + "'");
      const std::string w = text("weighting", "uniform");
      if (w == "uniform") p.weighting = GaucWeighting::UniformZeroOnDegenerate;
      else if (w == "by_rated_count") p.weighting = GaucWeighting::ByRatedCountSkipDegenerate;
      else throw Error(ErrorKind::Schema, "unknown AUC weighting '" + w + "'");
      return p;
    }
  }
  throw Error(ErrorKind::Schema, "unhandled family for variant '" + name + "'");
}

}  // namespace

std::string render_report(const EvaluationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return render_json(report);
    case ReportFormat::Markdown: return render_markdown(report);
    case ReportFormat::Csv: return render_csv(report);
  }
  throw Error(ErrorKind::Config, "unknown report format");
}

EvaluationReport parse_report_json(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::Schema, "report is not a JSON object");
  }
  EvaluationReport report;
  report.dataset = require_field<std::string>(doc, "dataset");
  const auto k = require_field<std::int64_t>(doc, "k");
  if (k < 1) throw Error(ErrorKind::Schema, "report field 'k' must be >= 1");
  report.k = static_cast<std::size_t>(k);

  if (!doc.contains("cells") || !doc.at("cells").is_array()) {
    throw Error(ErrorKind::Schema, "report JSON missing array field 'cells'");
  }
  for (const nlohmann::json& node : doc.at("cells")) {
    if (!node.is_object()) {
      throw Error(ErrorKind::Schema, "report cell is not a JSON object");
    }
    ReportCell cell;
    cell.spec.canonical_name = require_field<std::string>(node, "name");
    const auto family_token = require_field<std::string>(node, "family");
    const auto family = family_from_name(family_token);
    if (!family) {
      throw Error(ErrorKind::Schema, "unknown metric family '" + family_token + "'");
    }
    cell.spec.family = *family;
    nlohmann::json params = nlohmann::json::object();
    if (node.contains("params")) {
      if (!node.at("params").is_object()) {
        throw Error(ErrorKind::Schema, "report cell field 'params' must be an object");
      }
      params = node.at("params");
    }
    cell.spec.params = parse_params(*family, params, cell.spec.canonical_name);
    if (params.contains("cutoff")) {
      if (!params.at("cutoff").is_number_integer()) {
        throw Error(ErrorKind::Schema, "param 'cutoff' must be an integer");
      }
      const auto cutoff = params.at("cutoff").get<std::int64_t>();
      if (cutoff < 1) throw Error(ErrorKind::Schema, "param 'cutoff' must be >= 1");
      cell.spec.cutoff = static_cast<std::size_t>(cutoff);
    }
    cell.value = require_field<double>(node, "value");
    const auto users = require_field<std::int64_t>(node, "users");
    if (users < 0) throw Error(ErrorKind::Schema, "report cell field 'users' must be >= 0");
    cell.users = static_cast<std::size_t>(users);
    cell.spec.validate();
    report.cells.push_back(std::move(cell));
  }
  return report;
}

ReportFormat report_format_from_name(std::string_view name) {
  std::string lower;
  lower.reserve(name.size());
  for (char c : name) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (lower == "json") return ReportFormat::Json;
  if (lower == "markdown" || lower == "md") return ReportFormat::Markdown;
  if (lower == "csv") return ReportFormat::Csv;
  throw Error(ErrorKind::Config, "unknown report format '" + std::string(name) + "'");
}

}  // namespace rankvar
