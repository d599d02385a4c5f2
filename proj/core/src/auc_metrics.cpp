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

#include "rankvar/auc_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rankvar/stable_sum.hpp"

namespace rankvar {
namespace {

// Doubled pair counts so tie credit stays integral: num2 = 2*wins + ties,
// den2 = 2*P*N. The per-user AUC is num2/den2.
struct PairCounts {
  std::int64_t num2 = 0;
  std::int64_t den2 = 0;
};

// Single pass over labels sorted by non-increasing score. Equal-score runs
// form one group; a positive beats every negative in later (strictly lower)
// groups and half-beats the negatives of its own group.
std::optional<PairCounts> count_pairs(std::span<const ScoredLabel> sorted_desc) {
  std::int64_t total_pos = 0;
  for (const ScoredLabel& entry : sorted_desc) total_pos += entry.positive ? 1 : 0;
  const std::int64_t total_neg = static_cast<std::int64_t>(sorted_desc.size()) - total_pos;
  if (total_pos == 0 || total_neg == 0) return std::nullopt;

  PairCounts counts;
  counts.den2 = 2 * total_pos * total_neg;
  std::int64_t neg_seen = 0;
  std::size_t i = 0;
  while (i < sorted_desc.size()) {
    std::size_t j = i;
    std::int64_t group_pos = 0;
    std::int64_t group_neg = 0;
    while (j < sorted_desc.size() && sorted_desc[j].score == sorted_desc[i].score) {
      group_pos += sorted_desc[j].positive ? 1 : 0;
      group_neg += sorted_desc[j].positive ? 0 : 1;
      ++j;
    }
    const std::int64_t neg_below = total_neg - neg_seen - group_neg;
    counts.num2 += group_pos * (2 * neg_below + group_neg);
    neg_seen += group_neg;
    i = j;
  }
  return counts;
}

}  // namespace

void ScoredLabels::validate() const {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!std::isfinite(items[i].score)) {
      throw Error(ErrorKind::Data, "non-finite score in scored labels");
    }
    if (i > 0 && items[i - 1].score < items[i].score) {
      throw Error(ErrorKind::Data, "scored labels not ordered by non-increasing score");
    }
  }
}

std::optional<double> user_pairwise_auc(const ScoredLabels& user_items) {
  auto counts = count_pairs(user_items.items);
  if (!counts) return std::nullopt;
  return static_cast<double>(counts->num2) / static_cast<double>(counts->den2);
}

double stacked_auc(std::span<const ScoredLabels> all_users) {
  std::vector<ScoredLabel> pool;
  std::size_t total = 0;
  for (const ScoredLabels& user : all_users) total += user.items.size();
  pool.reserve(total);
  for (const ScoredLabels& user : all_users) {
    pool.insert(pool.end(), user.items.begin(), user.items.end());
  }
  std::sort(pool.begin(), pool.end(),
            [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });
  auto counts = count_pairs(pool);
  if (!counts) {
    throw Error(ErrorKind::Degenerate, "degenerate pool: stacked predictions need at least one "
                                       "positive and one negative");
  }
  return static_cast<double>(counts->num2) / static_cast<double>(counts->den2);
}

double ratio_of_averages_auc(std::span<const ScoredLabels> all_users) {
  std::int64_t num2 = 0;
  std::int64_t den2 = 0;
  for (const ScoredLabels& user : all_users) {
    if (auto counts = count_pairs(user.items)) {
      num2 += counts->num2;
      den2 += counts->den2;
    }
  }
  if (den2 == 0) {
    throw Error(ErrorKind::Degenerate, "degenerate pool: every user lacks a positive or a "
                                       "negative");
  }
  return static_cast<double>(num2) / static_cast<double>(den2);
}

double group_auc(std::span<const ScoredLabels> all_users, GaucWeighting weighting) {
  if (all_users.empty()) {
    throw Error(ErrorKind::Degenerate, "group AUC needs at least one user");
  }
  if (weighting == GaucWeighting::UniformZeroOnDegenerate) {
    StableSum sum;
    for (const ScoredLabels& user : all_users) {
      sum.add(user_pairwise_auc(user).value_or(0.0));
    }
    return sum.get() / static_cast<double>(all_users.size());
  }

  // Rated-count weighting: skip degenerate users entirely.
  StableSum weighted;
  std::int64_t total_weight = 0;
  std::optional<double> only_value;
  std::size_t counted = 0;
  for (const ScoredLabels& user : all_users) {
    auto auc = user_pairwise_auc(user);
    if (!auc) continue;
    const auto weight = static_cast<std::int64_t>(user.items.size());
    weighted.add(static_cast<double>(weight) * *auc);
    total_weight += weight;
    only_value = *auc;
    ++counted;
  }
  if (counted == 0) {
    throw Error(ErrorKind::Degenerate, "degenerate pool: every user lacks a positive or a "
                                       "negative");
  }
  // A single contributing user keeps its AUC bit-exactly.
  if (counted == 1) return *only_value;
  return weighted.get() / static_cast<double>(total_weight);
}

double truncated_group_auc(const RankedPredictions& preds, const GroundTruth& truth, CutOff k) {
  const std::vector<UserId> universe = truth.users_sorted();
  if (universe.empty()) throw Error(ErrorKind::Data, "no users to evaluate");
  StableSum sum;
  for (const UserId& user : universe) {
    const RelevanceSet& rel = *truth.find(user);
    const auto* list = preds.find(user);
    double value = 0.0;
    if (list != nullptr) {
      ScoredLabels labels;
      auto view = topk_view(*list, k);
      labels.items.reserve(view.size());
      for (const ScoredItem& entry : view) {
        labels.items.push_back(ScoredLabel{entry.score, rel.contains(entry.item)});
      }
      value = user_pairwise_auc(labels).value_or(0.0);
    }
    sum.add(value);
  }
  return sum.get() / static_cast<double>(universe.size());
}

double limited_auc(const RankedPredictions& preds, const GroundTruth& truth, CutOff k,
                   const std::unordered_map<UserId, std::size_t>& candidates_per_user) {
  const std::vector<UserId> universe = truth.users_sorted();
  if (universe.empty()) throw Error(ErrorKind::Data, "no users to evaluate");
  StableSum sum;
  for (const UserId& user : universe) {
    const RelevanceSet& rel = *truth.find(user);
    const auto* list = preds.find(user);
    auto candidates_it = candidates_per_user.find(user);
    if (candidates_it == candidates_per_user.end()) {
      throw Error(ErrorKind::Data, "no candidate count for user '" + user + "'");
    }
    const std::size_t p = rel.size();
    const std::size_t candidates = candidates_it->second;
    double value = 0.0;
    if (list != nullptr && !list->empty() && candidates > p) {
      const double inv_p = 1.0 / static_cast<double>(p);
      const double inv_n = 1.0 / static_cast<double>(candidates - p);
      double x = 0.0;
      double y = 0.0;
      double area = 0.0;
      for (const ScoredItem& entry : topk_view(*list, k)) {
        if (rel.contains(entry.item)) {
          y += inv_p;
        } else {
          area += inv_n * y;
          x += inv_n;
        }
      }
      // Straight segment from the rank-k ROC point to (1, 1).
      area += (1.0 - x) * 0.5 * (y + 1.0);
      value = area;
    }
    sum.add(value);
  }
  return sum.get() / static_cast<double>(universe.size());
}

}  // namespace rankvar
