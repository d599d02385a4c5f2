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

#include <optional>
#include <span>
#include <unordered_map>

#include "rankvar/types.hpp"

namespace rankvar {

struct ScoredLabel {
  double score = 0.0;
  bool positive = false;
};

/// One user's scoreable items ordered by non-increasing score, with
/// training items already excluded. A user is degenerate when the sequence
/// holds no positive or no negative.
struct ScoredLabels {
  std::vector<ScoredLabel> items;

  /// Throws ErrorKind::Data on non-finite scores or increasing order.
  void validate() const;
};

/// How a group AUC treats users. Uniform averaging counts degenerate users
/// as 0; rated-count weighting weights each user's AUC by their item count
/// and skips degenerate users entirely.
enum class GaucWeighting { UniformZeroOnDegenerate, ByRatedCountSkipDegenerate };

/// Mann-Whitney AUC for one user: (pairs with the positive scored strictly
/// higher + half credit for ties) / (P * N). nullopt for degenerate input;
/// the caller decides between scoring 0 and skipping.
std::optional<double> user_pairwise_auc(const ScoredLabels& user_items);

/// AUC of every user's items pooled into one ranking, as if it were a
/// single classification problem. Throws ErrorKind::Degenerate when the
/// pool lacks a positive or a negative.
double stacked_auc(std::span<const ScoredLabels> all_users);

/// Sum of per-user correctly-ordered-pair counts (with tie credit) divided
/// by the sum of per-user pair counts. Degenerate users contribute nothing
/// to either sum. Throws ErrorKind::Degenerate when every user is
/// degenerate.
double ratio_of_averages_auc(std::span<const ScoredLabels> all_users);

/// Mean of per-user AUCs under the chosen weighting. Uniform: plain mean
/// with degenerate users scored 0. ByRatedCount: weighted mean over
/// non-degenerate users only (ErrorKind::Degenerate when there are none).
double group_auc(std::span<const ScoredLabels> all_users, GaucWeighting weighting);

/// Group AUC with the cut-off applied before the metric: per user only the
/// top-k ranked items are kept, labelled positive when relevant; degenerate
/// users score 0; uniform mean over all ground-truth users.
double truncated_group_auc(const RankedPredictions& preds, const GroundTruth& truth, CutOff k);

/// Per-user limited AUC averaged uniformly over ground-truth users. The ROC
/// step curve is built from the top-k list (hit: up 1/P, miss: right 1/N
/// with N = candidates - P), then closed with a straight segment to (1,1).
/// candidates_per_user gives each user's scoreable-item count, i.e. the
/// catalog minus that user's training items. Users with N < 1 or no ranking
/// score 0.
double limited_auc(const RankedPredictions& preds, const GroundTruth& truth, CutOff k,
                   const std::unordered_map<UserId, std::size_t>& candidates_per_user);

}  // namespace rankvar
