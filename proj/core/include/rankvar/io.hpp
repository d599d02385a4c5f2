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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankvar/types.hpp"

namespace rankvar {

enum class ColumnRole { User, Item, Rating, Timestamp };

/// Layout detected from an interaction file's header: the delimiter (comma
/// or tab) and the four recognized columns in their input order with their
/// verbatim header tokens. Extra columns are ignored on input and dropped
/// on output.
struct TableFormat {
  char delimiter = ',';
  std::vector<std::pair<std::string, ColumnRole>> columns;
};

struct ParsedInteractions {
  InteractionLog log;
  TableFormat format;
};

/// Parses delimited text with a header row naming user_id, item_id, rating
/// and timestamp columns (any order, case-insensitive; comma or tab
/// delimiter auto-detected from the header line). User and item tokens are
/// preserved verbatim. Throws ErrorKind::Schema for header problems and
/// ErrorKind::Row (with the 1-based line number) for malformed rows.
ParsedInteractions parse_interactions(std::string_view text);
ParsedInteractions parse_interactions_file(const std::string& path);

/// Re-serializes a log in the given layout: same delimiter, same column
/// order, same header tokens. Byte-stable for identical input and config.
std::string write_interactions(const InteractionLog& log, const TableFormat& format);

/// Parses a predictions file with columns user_id, item_id, score. Rows of
/// one user must be contiguous and ordered by non-increasing score; rank is
/// derived from row order, never read from the file.
RankedPredictions parse_predictions(std::string_view text);
RankedPredictions parse_predictions_file(const std::string& path);

/// Reads a whole file; throws ErrorKind::Data when it cannot be opened.
std::string read_file(const std::string& path);

/// Writes content to path via a temporary file and rename, so a failed run
/// never leaves a partial output behind.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace rankvar
