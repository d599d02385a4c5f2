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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace oracle {

namespace {

bool is_hit(const rankvar::RelevanceSet& rel, const rankvar::ItemId& item) {
  return rel.contains(item);
}

double rating_of(const rankvar::RelevanceSet& rel, const rankvar::ItemId& item) {
  auto rating = rel.rating(item);
  if (!rating) throw std::runtime_error("oracle: missing rating for item " + item);
  return *rating;
}

std::size_t hits_in_prefix(std::span<const rankvar::ScoredItem> rec,
                           const rankvar::RelevanceSet& rel, std::size_t prefix) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < prefix && i < rec.size(); ++i) {
    if (is_hit(rel, rec[i].item)) ++hits;
  }
  return hits;
}

double oracle_precision(std::span<const rankvar::ScoredItem> rec,
                        const rankvar::RelevanceSet& rel, std::size_t k) {
  return static_cast<double>(hits_in_prefix(rec, rel, rec.size())) / static_cast<double>(k);
}

double oracle_recall(std::span<const rankvar::ScoredItem> rec, const rankvar::RelevanceSet& rel,
                     std::size_t k, rankvar::RecallDenominator denom) {
  const std::size_t r = rel.size();
  const std::size_t hits = hits_in_prefix(rec, rel, rec.size());
  const std::size_t d =
      denom == rankvar::RecallDenominator::TotalRelevant ? r : (k < r ? k : r);
  return static_cast<double>(hits) / static_cast<double>(d);
}

double oracle_hit_rate(std::span<const rankvar::ScoredItem> rec,
                       const rankvar::RelevanceSet& rel, rankvar::HitRateVariant variant) {
  const std::size_t hits = hits_in_prefix(rec, rel, rec.size());
  if (variant == rankvar::HitRateVariant::Indicator) return hits > 0 ? 1.0 : 0.0;
  return static_cast<double>(hits);
}

double oracle_rr(std::span<const rankvar::ScoredItem> rec, const rankvar::RelevanceSet& rel,
                 rankvar::RrVariant variant) {
  double sum = 0.0;
  for (std::size_t rank = 1; rank <= rec.size(); ++rank) {
    if (!is_hit(rel, rec[rank - 1].item)) continue;
    if (variant == rankvar::RrVariant::FirstHit) return 1.0 / static_cast<double>(rank);
    sum += 1.0 / static_cast<double>(rank);
  }
  return variant == rankvar::RrVariant::FirstHit ? 0.0 : sum;
}

double oracle_ap(std::span<const rankvar::ScoredItem> rec, const rankvar::RelevanceSet& rel,
                 std::size_t k, const rankvar::ApAveraging& avg) {
  double sum = 0.0;
  for (std::size_t rank = 1; rank <= rec.size(); ++rank) {
    const bool counted = avg.drop_hit_indicator || is_hit(rel, rec[rank - 1].item);
    if (!counted) continue;
    // Precision at this rank, recomputed from scratch each time.
    sum += static_cast<double>(hits_in_prefix(rec, rel, rank)) / static_cast<double>(rank);
  }
  const std::size_t r = rel.size();
  double x = 0.0;
  switch (avg.term) {
    case rankvar::ApAveragingTerm::ByK: x = static_cast<double>(k); break;
    case rankvar::ApAveragingTerm::ByRelevant: x = static_cast<double>(r); break;
    case rankvar::ApAveragingTerm::ByMin: x = static_cast<double>(k < r ? k : r); break;
  }
  return sum / x;
}

double oracle_ndcg(std::span<const rankvar::ScoredItem> rec, const rankvar::RelevanceSet& rel,
                   std::size_t k, const rankvar::NdcgParams& params) {
  const bool binary = params.gain == rankvar::NdcgGain::Binary;

  double dcg = 0.0;
  for (std::size_t rank = 1; rank <= rec.size(); ++rank) {
    if (!is_hit(rel, rec[rank - 1].item)) continue;
    const double gain =
        binary ? 1.0 : std::pow(2.0, rating_of(rel, rec[rank - 1].item)) - 1.0;
    dcg += gain * std::log(params.log_base) / std::log1p(static_cast<double>(rank));
  }
  if (!params.normalize) return dcg;

  std::vector<double> ideal_gains;
  for (const auto& [item, rating] : rel.items) {
    ideal_gains.push_back(binary ? 1.0 : std::pow(2.0, rating_of(rel, item)) - 1.0);
  }
  std::sort(ideal_gains.begin(), ideal_gains.end(), [](double a, double b) { return a > b; });
  std::size_t ideal_len = ideal_gains.size();
  if (params.ideal == rankvar::IdealTruncation::AtK && k < ideal_len) ideal_len = k;

  double idcg = 0.0;
  for (std::size_t rank = 1; rank <= ideal_len; ++rank) {
    idcg += ideal_gains[rank - 1] * std::log(params.log_base) /
            std::log1p(static_cast<double>(rank));
  }
  if (idcg <= 0.0) throw std::runtime_error("oracle: ideal DCG is not positive");
  return dcg / idcg;
}

}  // namespace

double pair_enumeration_auc(const rankvar::ScoredLabels& items) {
  std::vector<double> positives;
  std::vector<double> negatives;
  for (const rankvar::ScoredLabel& entry : items.items) {
    (entry.positive ? positives : negatives).push_back(entry.score);
  }
  if (positives.empty() || negatives.empty()) {
    throw std::runtime_error("oracle: degenerate user");
  }
  double credit = 0.0;
  for (double p : positives) {
    for (double n : negatives) {
      if (p > n) credit += 1.0;
      else if (p == n) credit += 0.5;
    }
  }
  return credit / (static_cast<double>(positives.size()) * static_cast<double>(negatives.size()));
}

std::vector<RocPoint> roc_curve(const rankvar::ScoredLabels& items) {
  double total_pos = 0.0;
  double total_neg = 0.0;
  for (const rankvar::ScoredLabel& entry : items.items) {
    (entry.positive ? total_pos : total_neg) += 1.0;
  }
  if (total_pos == 0.0 || total_neg == 0.0) {
    throw std::runtime_error("oracle: degenerate user");
  }

  // Labels sorted by descending score; one curve point per distinct score.
  std::vector<rankvar::ScoredLabel> sorted(items.items.begin(), items.items.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const rankvar::ScoredLabel& a, const rankvar::ScoredLabel& b) {
                     return a.score > b.score;
                   });

  std::vector<RocPoint> curve;
  curve.push_back(RocPoint{0.0, 0.0});
  double tp = 0.0;
  double fp = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double score = sorted[i].score;
    while (i < sorted.size() && sorted[i].score == score) {
      (sorted[i].positive ? tp : fp) += 1.0;
      ++i;
    }
    curve.push_back(RocPoint{fp / total_neg, tp / total_pos});
  }
  return curve;
}

double trapezoid_area(std::span<const RocPoint> curve) {
  if (curve.size() < 2) throw std::runtime_error("oracle: curve needs at least two points");
  if (curve.front().false_positive_rate != 0.0 || curve.front().true_positive_rate != 0.0) {
    throw std::runtime_error("oracle: curve must start at (0,0)");
  }
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const RocPoint& a = curve[i - 1];
    const RocPoint& b = curve[i];
    if (b.false_positive_rate < a.false_positive_rate ||
        b.true_positive_rate < a.true_positive_rate) {
      throw std::runtime_error("oracle: curve is not monotone");
    }
    area += (b.false_positive_rate - a.false_positive_rate) *
            (a.true_positive_rate + b.true_positive_rate) / 2.0;
  }
  return area;
}

double direct_metric_recompute(std::span<const rankvar::ScoredItem> rec,
                               const rankvar::RelevanceSet& rel, std::size_t k,
                               const rankvar::VariantSpec& variant) {
  switch (variant.family) {
    case rankvar::MetricFamily::Precision:
      return oracle_precision(rec, rel, k);
    case rankvar::MetricFamily::Recall:
      return oracle_recall(rec, rel, k,
                           std::get<rankvar::RecallParams>(variant.params).denominator);
    case rankvar::MetricFamily::HitRate:
      return oracle_hit_rate(rec, rel,
                             std::get<rankvar::HitRateParams>(variant.params).variant);
    case rankvar::MetricFamily::Mrr:
      return oracle_rr(rec, rel, std::get<rankvar::MrrParams>(variant.params).variant);
    case rankvar::MetricFamily::Map:
      return oracle_ap(rec, rel, k, std::get<rankvar::ApAveraging>(variant.params));
    case rankvar::MetricFamily::Ndcg:
      return oracle_ndcg(rec, rel, k, std::get<rankvar::NdcgParams>(variant.params));
    case rankvar::MetricFamily::Auc:
      break;
  }
  throw std::runtime_error("oracle: no direct recompute for this variant");
}

double naive_mean(std::span<const double> values) {
  if (values.empty()) throw std::runtime_error("oracle: empty mean");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace oracle
