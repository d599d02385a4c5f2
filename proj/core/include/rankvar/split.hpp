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

#include "rankvar/types.hpp"

namespace rankvar {

/// Preprocessing protocol parameters: keep interactions with
/// rating >= positive_threshold, then put the latest test_fraction of the
/// remaining rows into the test set.
struct SplitConfig {
  double positive_threshold = 4.5;
  double test_fraction = 0.2;

  void validate() const;
};

/// Interactions with rating >= threshold, input order preserved. The
/// comparison is >=: a rating exactly at the threshold stays positive.
InteractionLog filter_positive(const InteractionLog& log, double threshold);

struct TrainTestSplit {
  InteractionLog train;
  InteractionLog test;
};

/// Global timestamp split. Rows are stably sorted by timestamp (ties keep
/// input order); the last ceil(test_fraction * n) rows become the test set.
/// Throws ErrorKind::Data on an empty log.
TrainTestSplit temporal_split(const InteractionLog& log, double test_fraction);

/// Test rows whose user AND item both appear in the training set; rows with
/// cold users or cold items are dropped.
InteractionLog drop_cold(const InteractionLog& train, const InteractionLog& test);

/// Groups the test log into per-user relevant-item sets carrying the test
/// ratings. Throws ErrorKind::Data on a duplicate (user, item) pair.
GroundTruth extract_ground_truth(const InteractionLog& test);

}  // namespace rankvar
