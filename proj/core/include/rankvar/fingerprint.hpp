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
#include <vector>

#include "rankvar/report.hpp"
#include "rankvar/variant.hpp"

namespace rankvar {

/// A metric value exported by some external implementation, e.g.
/// ("NDCG@20", 0.093).
struct ObservedValue {
  std::string label;
  double value = 0.0;
};

struct FingerprintMatch {
  std::string canonical_name;
  double deviation = 0.0;
};

struct FingerprintEntry {
  std::string label;
  double value = 0.0;
  /// nullopt when the label names no known metric family; such entries
  /// carry no matches.
  std::optional<MetricFamily> family;
  /// Same-family variants within tolerance, sorted by (deviation, name).
  std::vector<FingerprintMatch> matches;
};

struct FingerprintResult {
  double tolerance = 0.0;
  std::vector<FingerprintEntry> entries;
};

/// For each observed (label, value), finds every report cell of the same
/// metric family whose aggregate lies within `tolerance` of the value.
/// Entries come back sorted by label. Throws ErrorKind::Config when
/// tolerance <= 0.
FingerprintResult fingerprint(std::span<const ObservedValue> observed,
                              const EvaluationReport& report, double tolerance);

/// Parses a JSON object mapping metric label -> number.
/// Throws ErrorKind::Schema on anything else.
std::vector<ObservedValue> parse_observed_json(std::string_view text);

/// Markdown match table, canonical JSON, or one row per (label, match) CSV.
std::string render_fingerprint(const FingerprintResult& result, ReportFormat format);

}  // namespace rankvar
