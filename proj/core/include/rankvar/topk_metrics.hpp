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

#pragma once

#include <span>
#include <unordered_map>

#include "rankvar/types.hpp"

namespace rankvar {

// Every knob below is one documented way real evaluation code disagrees on
// a metric with the same name. Each combination is a distinct, named
// computation; none of them is "the" metric.

/// Recall denominator: the classical total number of relevant items r, or
/// min(r, k) so a length-k list can reach 1 even when r > k.
enum class RecallDenominator { TotalRelevant, MinOfKAndRelevant };

/// HitRate: 0/1 indicator of at least one hit, or the raw hit count (which
/// can exceed 1 and equals k times the precision).
enum class HitRateVariant { Indicator, HitCount };

/// Reciprocal rank: inverse position of the first hit only, or the sum of
/// inverse positions of all hits (can exceed 1).
enum class RrVariant { FirstHit, SumOfHits };

enum class ApAveragingTerm { ByK, ByRelevant, ByMin };

/// Average-precision configuration. `drop_hit_indicator` keeps every
/// position's precision term in the sum whether or not that position is a
/// hit; it is only meaningful together with ByK.
struct ApAveraging {
  ApAveragingTerm term = ApAveragingTerm::ByRelevant;
  bool drop_hit_indicator = false;
};

enum class NdcgGain { Binary, Exponential };
enum class IdealTruncation { AtK, FullTest };

/// DCG/NDCG configuration: binary or 2^rating - 1 gains, any log base > 1,
/// optional normalization, and ideal-list truncation at k or over the whole
/// test set. With a shared base in DCG and IDCG the normalized value is
/// log-base invariant; the knob exists because unnormalized DCG is not.
struct NdcgParams {
  NdcgGain gain = NdcgGain::Binary;
  double log_base = 2.0;
  bool normalize = true;
  IdealTruncation ideal = IdealTruncation::AtK;

  void validate() const;
};

/// |rel ∩ rec| / k. The denominator stays k even when the list is shorter.
double precision_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k);

/// |rel ∩ rec| / r, or / min(k, r) under MinOfKAndRelevant. Requires r >= 1.
double recall_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                   RecallDenominator denom);

/// Indicator of any hit, or the number of hits.
double hit_rate_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                     HitRateVariant variant);

/// 1/rank of the first hit (0 when there is none), or the sum of 1/rank
/// over all hits.
double reciprocal_rank_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                            RrVariant variant);

/// (1/x) * sum over hit positions p of Precision@p, with x = k, r or
/// min(k, r). With drop_hit_indicator the sum runs over every position of
/// the list instead of the hit positions only (ByK only; anything else is
/// a configuration error).
double average_precision_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                              ApAveraging avg);

/// DCG = sum over ranked hits of gain / log_base(rank + 1); result is
/// DCG/IDCG when normalizing, raw DCG otherwise. Exponential gain requires
/// every relevant item to carry a rating (ErrorKind::Data otherwise).
double ndcg_at_k(std::span<const ScoredItem> rec, const RelevanceSet& rel, CutOff k,
                 const NdcgParams& params);

/// Arithmetic mean over the universe in ascending user-token order with
/// compensated accumulation; universe users missing from per_user count as
/// 0. Throws ErrorKind::Data on an empty universe.
double mean_over_users(const std::unordered_map<UserId, double>& per_user,
                       std::span<const UserId> universe);

/// Same accumulation over values already laid out in ascending user order.
double mean_over_sorted_users(std::span<const double> values);

}  // namespace rankvar
