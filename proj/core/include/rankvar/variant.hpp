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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rankvar/auc_metrics.hpp"
#include "rankvar/topk_metrics.hpp"

namespace rankvar {

enum class MetricFamily { Precision, Recall, HitRate, Mrr, Map, Ndcg, Auc };

/// Lowercase family token used in reports: "precision", "recall", ...
std::string_view family_name(MetricFamily family);
std::optional<MetricFamily> family_from_name(std::string_view name);

/// Maps a free-form metric label such as "NDCG@20", "RocAuc" or "HR@10" to
/// its family; nullopt when the label is not recognizable.
std::optional<MetricFamily> family_from_label(std::string_view label);

struct PrecisionParams {};

struct RecallParams {
  RecallDenominator denominator = RecallDenominator::TotalRelevant;
};

struct HitRateParams {
  HitRateVariant variant = HitRateVariant::Indicator;
};

struct MrrParams {
  RrVariant variant = RrVariant::FirstHit;
};

enum class AucMode { Stacked, RatioOfAverages, Grouped, GroupedTopK, LimitedTopK };

struct AucVariantParams {
  AucMode mode = AucMode::Grouped;
  GaucWeighting weighting = GaucWeighting::UniformZeroOnDegenerate;
};

/// A fully parameterized metric variant: the family plus every knob that
/// changes the number, under a unique canonical name. Registering a new
/// variant needs no harness changes.
struct VariantSpec {
  using Params = std::variant<PrecisionParams, RecallParams, HitRateParams, MrrParams,
                              ApAveraging, NdcgParams, AucVariantParams>;

  MetricFamily family = MetricFamily::Precision;
  /// Overrides the evaluation cut-off for this variant when set.
  std::optional<std::size_t> cutoff;
  Params params;
  std::string canonical_name;

  /// Throws ErrorKind::Config when params are illegal for the family.
  void validate() const;
};

/// One spec per documented interpretation: precision, 2 recall, 2 hit-rate,
/// 2 reciprocal-rank, 4 average-precision, 4 NDCG (including the
/// unnormalized and natural-log forms) and 6 AUC variants -- 21 in total,
/// with unique canonical names. Names use a literal "@k"; the concrete
/// cut-off binds at evaluation time.
std::vector<VariantSpec> registry_default();

/// Validates every spec and the uniqueness of canonical names.
void validate_registry(std::span<const VariantSpec> registry);

}  // namespace rankvar
