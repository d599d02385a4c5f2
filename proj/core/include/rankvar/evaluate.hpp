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

#include <cstddef>
#include <span>
#include <string_view>

#include "rankvar/report.hpp"
#include "rankvar/types.hpp"
#include "rankvar/variant.hpp"

namespace rankvar {

struct ExecPolicy {
  /// Upper bound on worker threads; results are identical for every value.
  std::size_t threads = 1;
  /// Record per-user values for rank-list variants and per-user grouped
  /// AUCs; cells of pooled AUC variants hold NaN in the per-user table.
  bool keep_per_user = false;
};

/// Evaluates every registered variant over the ground-truth user universe.
///
/// Universe and zero rule: the universe is the set of ground-truth users in
/// ascending token order; a universe user without a prediction list scores
/// 0 on every per-user metric. Rank-list metrics read the top-k of the
/// prediction list exactly as given. Full-ranking AUC variants (stacked,
/// ratio-of-averages, grouped) score the user's prediction list minus that
/// user's training items, labelled by ground-truth membership. The
/// limited-AUC candidate count per user is the catalog (all items seen in
/// train, predictions of universe users, or ground truth) minus the user's
/// training items.
///
/// The result is a pure function of the inputs: bit-identical across runs
/// and across `exec.threads` settings.
///
/// Throws ErrorKind::Data when truth is empty ("no users to evaluate"),
/// ErrorKind::Config when a variant requests exponential-gain NDCG but some
/// ground-truth item carries no rating, and ErrorKind::Degenerate when a
/// pooled AUC variant has no scoreable pair at all.
EvaluationReport evaluate_matrix(const RankedPredictions& preds, const GroundTruth& truth,
                                 const InteractionLog& train,
                                 std::span<const VariantSpec> registry, CutOff k,
                                 const ExecPolicy& exec = {},
                                 std::string_view dataset_label = "dataset");

}  // namespace rankvar
