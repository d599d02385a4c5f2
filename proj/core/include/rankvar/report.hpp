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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankvar/types.hpp"
#include "rankvar/variant.hpp"

namespace rankvar {

/// One evaluated variant: its spec, the aggregate over the user universe,
/// and how many users contributed to the aggregate.
struct ReportCell {
  VariantSpec spec;
  double value = 0.0;
  std::size_t users = 0;
};

/// Per-user values kept for diagnostics; values[c][u] belongs to cell c and
/// the u-th user of `users` (ascending token order).
struct PerUserTable {
  std::vector<UserId> users;
  std::vector<std::vector<double>> values;
};

/// The variant-by-variant result matrix for one (predictions, test) pair.
struct EvaluationReport {
  std::string dataset;
  std::size_t k = 0;
  std::vector<ReportCell> cells;
  std::optional<PerUserTable> per_user;
};

enum class ReportFormat { Json, Markdown, Csv };

/// Serializes the report. JSON output is canonical: object keys sorted,
/// values at 6 decimal places, cells ordered by canonical name, so equal
/// reports render byte-identically. Markdown is a one-row table with one
/// column per variant; CSV holds one cell per row. The per-user table is
/// never serialized.
std::string render_report(const EvaluationReport& report, ReportFormat format);

/// Parses JSON produced by render_report. Throws ErrorKind::Schema on
/// malformed documents or unknown families.
EvaluationReport parse_report_json(std::string_view text);

/// "json" / "markdown" / "csv" (case-insensitive); anything else is an
/// ErrorKind::Config error.
ReportFormat report_format_from_name(std::string_view name);

}  // namespace rankvar
