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

#include "rankvar/split.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace rankvar {

void SplitConfig::validate() const {
  if (!std::isfinite(positive_threshold)) {
    throw Error(ErrorKind::Config, "positive threshold must be finite");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorKind::Config, "test fraction must lie in (0, 1)");
  }
}

InteractionLog filter_positive(const InteractionLog& log, double threshold) {
  InteractionLog out;
  out.rows.reserve(log.rows.size());
  for (const Interaction& row : log.rows) {
    if (row.rating >= threshold) out.rows.push_back(row);
  }
  return out;
}

TrainTestSplit temporal_split(const InteractionLog& log, double test_fraction) {
  if (log.empty()) throw Error(ErrorKind::Data, "empty input log, nothing to split");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorKind::Config, "test fraction must lie in (0, 1)");
  }

  InteractionLog sorted = log;
  std::stable_sort(sorted.rows.begin(), sorted.rows.end(),
                   [](const Interaction& a, const Interaction& b) {
                     return a.timestamp < b.timestamp;
                   });

  const std::size_t n = sorted.rows.size();
  const auto test_size = static_cast<std::size_t>(
      std::ceil(test_fraction * static_cast<double>(n)));
  const std::size_t boundary = n - std::min(test_size, n);

  TrainTestSplit split;
  split.train.rows.assign(sorted.rows.begin(), sorted.rows.begin() + boundary);
  split.test.rows.assign(sorted.rows.begin() + boundary, sorted.rows.end());
  return split;
}

InteractionLog drop_cold(const InteractionLog& train, const InteractionLog& test) {
  std::unordered_set<UserId> users;
  std::unordered_set<ItemId> items;
  for (const Interaction& row : train.rows) {
    users.insert(row.user);
    items.insert(row.item);
  }
  InteractionLog out;
  out.rows.reserve(test.rows.size());
  for (const Interaction& row : test.rows) {
    if (users.count(row.user) != 0 && items.count(row.item) != 0) out.rows.push_back(row);
  }
  return out;
}

GroundTruth extract_ground_truth(const InteractionLog& test) {
  // Group rows per user first so add_user sees the complete set.
  std::unordered_map<UserId, RelevanceSet> grouped;
  for (const Interaction& row : test.rows) {
    RelevanceSet& rel = grouped[row.user];
    if (!rel.items.emplace(row.item, row.rating).second) {
      throw Error(ErrorKind::Data, "duplicate relevance entry (" + row.user + ", " + row.item +
                                       ") in test set");
    }
  }
  GroundTruth truth;
  for (auto& [user, rel] : grouped) {
    truth.add_user(user, std::move(rel));
  }
  return truth;
}

}  // namespace rankvar
