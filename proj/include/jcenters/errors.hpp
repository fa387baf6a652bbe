// Copyright 2026 The jcenters Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JCENTERS_ERRORS_HPP_
#define JCENTERS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace jcenters {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iteration failed to converge, a bracket was lost, or a decomposition
// broke down.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Row and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int row = 0, int col = 0)
      : std::runtime_error(Format(what, row, col)), row_(row), col_(col) {}

  int row() const { return row_; }
  int col() const { return col_; }

 private:
  static std::string Format(const std::string& what, int row, int col) {
    std::string out;
    if (row > 0) out += "row " + std::to_string(row);
    if (col > 0) out += (out.empty() ? "" : ", ") + std::string("column ") + std::to_string(col);
    return out.empty() ? what : out + ": " + what;
  }

  int row_;
  int col_;
};

}  // namespace jcenters

#endif  // JCENTERS_ERRORS_HPP_
