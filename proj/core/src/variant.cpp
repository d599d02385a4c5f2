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

#include "rankvar/variant.hpp"

#include <algorithm>
#include <cctype>
#include <numbers>
#include <unordered_set>

#include "rankvar/error.hpp"

namespace rankvar {

std::string_view family_name(MetricFamily family) {
  switch (family) {
    case MetricFamily::Precision: return "precision";
    case MetricFamily::Recall: return "recall";
    case MetricFamily::HitRate: return "hitrate";
    case MetricFamily::Mrr: return "mrr";
    case MetricFamily::Map: return "map";
    case MetricFamily::Ndcg: return "ndcg";
    case MetricFamily::Auc: return "auc";
  }
  throw Error(ErrorKind::Config, "unknown metric family");
}

std::optional<MetricFamily> family_from_name(std::string_view name) {
  if (name == "precision") return MetricFamily::Precision;
  if (name == "recall") return MetricFamily::Recall;
  if (name == "hitrate") return MetricFamily::HitRate;
  if (name == "mrr") return MetricFamily::Mrr;
  if (name == "map") return MetricFamily::Map;
  if (name == "ndcg") return MetricFamily::Ndcg;
  if (name == "auc") return MetricFamily::Auc;
  return std::nullopt;
}

namespace {

bool contains(std::string_view hay, std::string_view needle) {
  return hay.find(needle) != std::string_view::npos;
}

}  // namespace

std::optional<MetricFamily> family_from_label(std::string_view label) {
  // Keep only letters before any "@cutoff" suffix, lowercased, so that
  // "NDCG@20", "ndcg_at_20" and "nDCG" all resolve identically.
  std::string key;
  key.reserve(label.size());
  for (char c : label) {
    if (c == '@') break;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (key.empty()) return std::nullopt;

  // Most specific tokens first: "ndcg" must not fall through to "auc" or
  // "recall", and "arhr" must not be mistaken for a hit rate.
  if (contains(key, "dcg")) return MetricFamily::Ndcg;
  if (contains(key, "auc")) return MetricFamily::Auc;
  if (contains(key, "mrr") || contains(key, "arhr") || contains(key, "reciprocalrank") ||
      key == "rr") {
    return MetricFamily::Mrr;
  }
  if (contains(key, "map") || contains(key, "averageprecision") || contains(key, "avep") ||
      key == "ap") {
    return MetricFamily::Map;
  }
  if (contains(key, "precision") || key == "p") return MetricFamily::Precision;
  if (contains(key, "recall") || key == "r") return MetricFamily::Recall;
  if (contains(key, "hit") || key == "hr") return MetricFamily::HitRate;
  return std::nullopt;
}

void VariantSpec::validate() const {
  if (canonical_name.empty()) {
    throw Error(ErrorKind::Config, "variant spec has an empty canonical name");
  }
  if (cutoff && *cutoff == 0) {
    throw Error(ErrorKind::Config,
                "variant '" + canonical_name + "' has a zero cut-off override");
  }
  const std::size_t expected_index = static_cast<std::size_t>(family);
  if (params.index() != expected_index) {
    throw Error(ErrorKind::Config, "variant '" + canonical_name +
                                       "' carries parameters of a different family");
  }
  if (family == MetricFamily::Map) {
    const auto& ap = std::get<ApAveraging>(params);
    if (ap.drop_hit_indicator && ap.term != ApAveragingTerm::ByK) {
      throw Error(ErrorKind::Config,
                  "variant '" + canonical_name +
                      "' drops the hit indicator outside by-k averaging");
    }
  }
  if (family == MetricFamily::Ndcg) {
    std::get<NdcgParams>(params).validate();
  }
}

std::vector<VariantSpec> registry_default() {
  std::vector<VariantSpec> out;
  out.reserve(21);

  auto add = [&out](MetricFamily family, VariantSpec::Params params, std::string name) {
    VariantSpec spec;
    spec.family = family;
    spec.params = std::move(params);
    spec.canonical_name = std::move(name);
    out.push_back(std::move(spec));
  };

  add(MetricFamily::Precision, PrecisionParams{}, "precision@k");

  add(MetricFamily::Recall, RecallParams{RecallDenominator::TotalRelevant},
      "recall@k/by_total");
  add(MetricFamily::Recall, RecallParams{RecallDenominator::MinOfKAndRelevant},
      "recall@k/by_min");

  add(MetricFamily::HitRate, HitRateParams{HitRateVariant::Indicator},
      "hitrate@k/indicator");
  add(MetricFamily::HitRate, HitRateParams{HitRateVariant::HitCount}, "hitrate@k/count");

  add(MetricFamily::Mrr, MrrParams{RrVariant::FirstHit}, "mrr@k/first_hit");
  add(MetricFamily::Mrr, MrrParams{RrVariant::SumOfHits}, "mrr@k/sum_of_hits");

  add(MetricFamily::Map, ApAveraging{ApAveragingTerm::ByRelevant, false},
      "map@k/by_relevant");
  add(MetricFamily::Map, ApAveraging{ApAveragingTerm::ByK, false}, "map@k/by_k");
  add(MetricFamily::Map, ApAveraging{ApAveragingTerm::ByMin, false}, "map@k/by_min");
  add(MetricFamily::Map, ApAveraging{ApAveragingTerm::ByK, true},
      "map@k/by_k_no_indicator");

  {
    NdcgParams binary;
    binary.gain = NdcgGain::Binary;
    add(MetricFamily::Ndcg, binary, "ndcg@k/binary");

    NdcgParams weighted;
    weighted.gain = NdcgGain::Exponential;
    add(MetricFamily::Ndcg, weighted, "ndcg@k/weighted");

    NdcgParams weighted_ln = weighted;
    weighted_ln.log_base = std::numbers::e;
    add(MetricFamily::Ndcg, weighted_ln, "ndcg@k/weighted_ln");

    NdcgParams raw = binary;
    raw.normalize = false;
    add(MetricFamily::Ndcg, raw, "ndcg@k/binary_unnormalized");
  }

  add(MetricFamily::Auc, AucVariantParams{AucMode::Stacked}, "auc/stacked");
  add(MetricFamily::Auc, AucVariantParams{AucMode::RatioOfAverages},
      "auc/ratio_of_averages");
  add(MetricFamily::Auc,
      AucVariantParams{AucMode::Grouped, GaucWeighting::UniformZeroOnDegenerate},
      "auc/gauc_uniform");
  add(MetricFamily::Auc,
      AucVariantParams{AucMode::Grouped, GaucWeighting::ByRatedCountSkipDegenerate},
      "auc/gauc_weighted");
  add(MetricFamily::Auc, AucVariantParams{AucMode::GroupedTopK}, "auc@k/gauc");
  add(MetricFamily::Auc, AucVariantParams{AucMode::LimitedTopK}, "auc@k/lauc");

  return out;
}

void validate_registry(std::span<const VariantSpec> registry) {
  std::unordered_set<std::string_view> seen;
  for (const VariantSpec& spec : registry) {
    spec.validate();
    if (!seen.insert(spec.canonical_name).second) {
      throw Error(ErrorKind::Config,
                  "duplicate canonical name '" + spec.canonical_name + "' in registry");
    }
  }
}

}  // namespace rankvar
