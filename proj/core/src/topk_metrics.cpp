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

#include "rankvar/topk_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "rankvar/stable_sum.hpp"

namespace rankvar {
namespace {

void check_truncated(std::span<const ScoredItem> rec, CutOff k) {
  if (rec.size() > k.value()) {
    throw Error(ErrorKind::Config, "recommendation list longer than k; truncate first");
  }
}

std::size_t count_hits(std::span<const ScoredItem> rec, const RelevanceSet& rel) {
  std::size_t hits = 0;
  for (const ScoredItem& entry : rec) {
    if (rel.contains(entry.item)) ++hits;
  }
  return hits;
}

double require_rating(const RelevanceSet& rel, const ItemId& item) {
  auto rating = rel.rating(item);
  if (!rating) {
    throw Error(ErrorKind::Data,
                "exponential gain needs a rating for item '" + item + "' but none is present");
  }
  return *rating;
}

}  // namespace

void NdcgParams::validate() const {
  if (!(log_base > 1.0)) {
    throw Error(ErrorKind::Config, "NDCG log base must be > 1");
  }
}

double precision_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k) {
  check_truncated(rec, k);
  return static_cast<double>(count_hits(rec, rel)) / static_cast<double>(k.value());
}

double recall_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                   RecallDenominator denom) {
  check_truncated(rec, k);
  if (rel.size() == 0) throw Error(ErrorKind::Data, "recall needs at least one relevant item");
  const std::size_t hits = count_hits(rec, rel);
  const std::size_t r = rel.size();
  const std::size_t denominator =
      denom == RecallDenominator::TotalRelevant ? r : std::min(k.value(), r);
  return static_cast<double>(hits) / static_cast<double>(denominator);
}

double hit_rate_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                     HitRateVariant variant) {
  check_truncated(rec, k);
  const std::size_t hits = count_hits(rec, rel);
  if (variant == HitRateVariant::Indicator) return hits > 0 ? 1.0 : 0.0;
  return static_cast<double>(hits);
}

double reciprocal_rank_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                            RrVariant variant) {
  check_truncated(rec, k);
  if (variant == RrVariant::FirstHit) {
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (rel.contains(rec[i].item)) return 1.0 / static_cast<double>(i + 1);
    }
    return 0.0;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (rel.contains(rec[i].item)) sum += 1.0 / static_cast<double>(i + 1);
  }
  return sum;
}

double average_precision_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                              ApAveraging avg) {
  check_truncated(rec, k);
  if (rel.size() == 0) {
    throw Error(ErrorKind::Data, "average precision needs at least one relevant item");
  }
  if (avg.drop_hit_indicator && avg.term != ApAveragingTerm::ByK) {
    throw Error(ErrorKind::Config,
                "dropping the hit indicator is only defined for averaging by k");
  }

  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const bool hit = rel.contains(rec[i].item);
    if (hit) ++hits;
    if (hit || avg.drop_hit_indicator) {
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }

  const std::size_t r = rel.size();
  std::size_t x = k.value();
  switch (avg.term) {
    case ApAveragingTerm::ByK: x = k.value(); break;
    case ApAveragingTerm::ByRelevant: x = r; break;
    case ApAveragingTerm::ByMin: x = std::min(k.value(), r); break;
  }
  return sum / static_cast<double>(x);
}

double ndcg_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                 const NdcgParams& params) {
  check_truncated(rec, k);
  params.validate();
  if (rel.size() == 0) throw Error(ErrorKind::Data, "ndcg needs at least one relevant item");

  const double inv_log_base = 1.0 / std::log(params.log_base);
  auto discount = [&](std::size_t rank) {
    return std::log(static_cast<double>(rank + 1)) * inv_log_base;
  };

  double dcg = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (!rel.contains(rec[i].item)) continue;
    const double gain = params.gain == NdcgGain::Binary
                            ? 1.0
                            : std::exp2(require_rating(rel, rec[i].item)) - 1.0;
    dcg += gain / discount(i + 1);
  }
  if (!params.normalize) return dcg;

  // Ideal list: the relevant items sorted by rating, cut at k or kept whole.
  std::size_t ideal_len = rel.size();
  if (params.ideal == IdealTruncation::AtK) ideal_len = std::min(ideal_len, k.value());

  double idcg = 0.0;
  if (params.gain == NdcgGain::Binary) {
    for (std::size_t rank = 1; rank <= ideal_len; ++rank) idcg += 1.0 / discount(rank);
  } else {
    std::vector<double> gains;
    gains.reserve(rel.size());
    for (const auto& [item, rating] : rel.items) {
      if (!rating) {
        throw Error(ErrorKind::Data,
                    "exponential gain needs a rating for item '" + item + "' but none is present");
      }
      gains.push_back(std::exp2(*rating) - 1.0);
    }
    std::sort(gains.begin(), gains.end(), std::greater<>());
    for (std::size_t rank = 1; rank <= ideal_len; ++rank) {
      idcg += gains[rank - 1] / discount(rank);
    }
  }
  if (!(idcg > 0.0)) {
    throw Error(ErrorKind::Data, "ideal DCG is not positive; cannot normalize");
  }
  return dcg / idcg;
}

double mean_over_users(const std::unordered_map<UserId, double>& per_user,
                       std::span<const UserId> universe) {
  if (universe.empty()) throw Error(ErrorKind::Data, "no users to evaluate");
  std::vector<UserId> ordered(universe.begin(), universe.end());
  std::sort(ordered.begin(), ordered.end());
  StableSum sum;
  for (const UserId& user : ordered) {
    auto it = per_user.find(user);
    sum.add(it == per_user.end() ? 0.0 : it->second);
  }
  return sum.get() / static_cast<double>(ordered.size());
}

double mean_over_sorted_users(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::Data, "no users to evaluate");
  StableSum sum;
  for (double v : values) sum.add(v);
  return sum.get() / static_cast<double>(values.size());
}

}  // namespace rankvar
