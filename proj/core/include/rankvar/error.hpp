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

#include <stdexcept>
#include <string>

namespace rankvar {

enum class ErrorKind {
  Schema,      // header row does not provide the required columns
  Row,         // a data row failed to parse; the message carries the line number
  Config,      // illegal variant parameters or run configuration
  Data,        // semantically invalid data (duplicates, missing ratings, ...)
  Degenerate,  // AUC input with no positives or no negatives
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rankvar
