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

#include "rankvar/evaluate.hpp"

#include <limits>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "rankvar/auc_metrics.hpp"
#include "rankvar/error.hpp"
#include "rankvar/parallel.hpp"
#include "rankvar/topk_metrics.hpp"

namespace rankvar {

namespace {

bool is_degenerate(const ScoredLabels& labels) {
  bool has_positive = false;
  bool has_negative = false;
  for (const ScoredLabel& item : labels.items) {
    (item.positive ? has_positive : has_negative) = true;
    if (has_positive && has_negative) return false;
  }
  return true;
}

/// Inputs shared by several AUC variants, built once on first use.
struct AucInputs {
  std::vector<ScoredLabels> full_labels;  // aligned with the universe
  std::unordered_map<UserId, std::size_t> candidates_per_user;
};

class Evaluator {
 public:
  Evaluator(const RankedPredictions& preds, const GroundTruth& truth,
            const InteractionLog& train, CutOff k, const ExecPolicy& exec)
      : preds_(preds),
        truth_(truth),
        train_(train),
        default_k_(k),
        exec_(exec),
        universe_(truth.users_sorted()) {}

  const std::vector<UserId>& universe() const { return universe_; }

  ReportCell evaluate(const VariantSpec& spec, std::vector<double>* per_user_out) {
    const CutOff eff_k = spec.cutoff ? CutOff(*spec.cutoff) : default_k_;
    ReportCell cell;
    cell.spec = spec;
    cell.users = universe_.size();

    if (spec.family == MetricFamily::Auc) {
      evaluate_auc(spec, eff_k, cell, per_user_out);
      return cell;
    }

    std::vector<double> slots(universe_.size(), 0.0);
    parallel_for(universe_.size(), exec_.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        slots[i] = per_user_value(spec, eff_k, universe_[i]);
      }
    });
    cell.value = mean_over_sorted_users(slots);
    if (per_user_out) *per_user_out = std::move(slots);
    return cell;
  }

 private:
  double per_user_value(const VariantSpec& spec, CutOff k, const UserId& user) const {
    const std::vector<ScoredItem>* list = preds_.find(user);
    if (!list) return 0.0;
    const std::span<const ScoredItem> rec = topk_view(*list, k);
    const RelevanceSet& rel = *truth_.find(user);
    switch (spec.family) {
      case MetricFamily::Precision:
        return precision_at_k(rec, rel, k);
      case MetricFamily::Recall:
        return recall_at_k(rec, rel, k, std::get<RecallParams>(spec.params).denominator);
      case MetricFamily::HitRate:
        return hit_rate_at_k(rec, rel, k, std::get<HitRateParams>(spec.params).variant);
      case MetricFamily::Mrr:
        return reciprocal_rank_at_k(rec, rel, k, std::get<MrrParams>(spec.params).variant);
      case MetricFamily::Map:
        return average_precision_at_k(rec, rel, k, std::get<ApAveraging>(spec.params));
      case MetricFamily::Ndcg:
        return ndcg_at_k(rec, rel, k, std::get<NdcgParams>(spec.params));
      case MetricFamily::Auc:
        break;
    }
    throw Error(ErrorKind::Config, "variant '" + spec.canonical_name +
                                       "' has no per-user evaluation path");
  }

  void evaluate_auc(const VariantSpec& spec, CutOff eff_k, ReportCell& cell,
                    std::vector<double>* per_user_out) {
    const auto& params = std::get<AucVariantParams>(spec.params);
    switch (params.mode) {
      case AucMode::Stacked:
        cell.value = stacked_auc(auc_inputs().full_labels);
        break;
      case AucMode::RatioOfAverages:
        cell.value = ratio_of_averages_auc(auc_inputs().full_labels);
        break;
      case AucMode::Grouped:
        cell.value = group_auc(auc_inputs().full_labels, params.weighting);
        if (params.weighting == GaucWeighting::ByRatedCountSkipDegenerate) {
          std::size_t contributing = 0;
          for (const ScoredLabels& labels : auc_inputs().full_labels) {
            if (!is_degenerate(labels)) ++contributing;
          }
          cell.users = contributing;
        }
        break;
      case AucMode::GroupedTopK:
        cell.value = truncated_group_auc(preds_, truth_, eff_k);
        break;
      case AucMode::LimitedTopK:
        cell.value = limited_auc(preds_, truth_, eff_k, auc_inputs().candidates_per_user);
        break;
    }
    if (per_user_out) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      per_user_out->assign(universe_.size(), nan);
      if (params.mode == AucMode::Stacked || params.mode == AucMode::RatioOfAverages ||
          params.mode == AucMode::Grouped) {
        const auto& labels = auc_inputs().full_labels;
        for (std::size_t i = 0; i < labels.size(); ++i) {
          if (auto auc = user_pairwise_auc(labels[i])) (*per_user_out)[i] = *auc;
        }
      }
    }
  }

  const AucInputs& auc_inputs() {
    if (auc_inputs_) return *auc_inputs_;
    AucInputs inputs;

    std::unordered_map<UserId, std::unordered_set<ItemId>> train_items;
    for (const Interaction& row : train_.rows) {
      if (truth_.has_user(row.user)) train_items[row.user].insert(row.item);
    }

    std::unordered_set<ItemId> catalog;
    for (const Interaction& row : train_.rows) catalog.insert(row.item);

    inputs.full_labels.resize(universe_.size());
    static const std::unordered_set<ItemId> kNoTrainItems;
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      const UserId& user = universe_[i];
      const RelevanceSet& rel = *truth_.find(user);
      for (const auto& [item, rating] : rel.items) catalog.insert(item);

      const auto seen_it = train_items.find(user);
      const std::unordered_set<ItemId>& seen =
          seen_it == train_items.end() ? kNoTrainItems : seen_it->second;

      if (const std::vector<ScoredItem>* list = preds_.find(user)) {
        ScoredLabels& labels = inputs.full_labels[i];
        labels.items.reserve(list->size());
        for (const ScoredItem& scored : *list) {
          catalog.insert(scored.item);
          if (seen.count(scored.item) != 0) continue;
          labels.items.push_back(ScoredLabel{scored.score, rel.contains(scored.item)});
        }
      }
    }

    inputs.candidates_per_user.reserve(universe_.size());
    for (const UserId& user : universe_) {
      const auto seen_it = train_items.find(user);
      const std::size_t seen_count = seen_it == train_items.end() ? 0 : seen_it->second.size();
      inputs.candidates_per_user.emplace(user, catalog.size() - seen_count);
    }

    auc_inputs_ = std::move(inputs);
    return *auc_inputs_;
  }

  const RankedPredictions& preds_;
  const GroundTruth& truth_;
  const InteractionLog& train_;
  CutOff default_k_;
  ExecPolicy exec_;
  std::vector<UserId> universe_;
  std::optional<AucInputs> auc_inputs_;
};

}  // namespace

EvaluationReport evaluate_matrix(const RankedPredictions& preds, const GroundTruth& truth,
                                 const InteractionLog& train,
                                 std::span<const VariantSpec> registry, CutOff k,
                                 const ExecPolicy& exec, std::string_view dataset_label) {
  validate_registry(registry);
  if (truth.user_count() == 0) {
    throw Error(ErrorKind::Data, "no users to evaluate");
  }
  for (const VariantSpec& spec : registry) {
    if (spec.family != MetricFamily::Ndcg) continue;
    if (std::get<NdcgParams>(spec.params).gain == NdcgGain::Exponential && !truth.all_rated()) {
      throw Error(ErrorKind::Config, "variant '" + spec.canonical_name +
                                         "' needs a rating on every ground-truth item");
    }
  }

  Evaluator evaluator(preds, truth, train, k, exec);

  EvaluationReport report;
  report.dataset = std::string(dataset_label);
  report.k = k.value();
  report.cells.reserve(registry.size());
  if (exec.keep_per_user) {
    report.per_user = PerUserTable{};
    report.per_user->users = evaluator.universe();
  }

  for (const VariantSpec& spec : registry) {
    std::vector<double> per_user;
    report.cells.push_back(evaluator.evaluate(spec, exec.keep_per_user ? &per_user : nullptr));
    if (exec.keep_per_user) report.per_user->values.push_back(std::move(per_user));
  }
  return report;
}

}  // namespace rankvar
