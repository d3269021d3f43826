// Copyright 2026 The DAMNETS Authors
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

#ifndef DAMNETS_ERROR_H_
#define DAMNETS_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace damnets {

// Base class for every error the library throws on bad input or state.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A graph, delta or series violates its structural invariants.
class GraphError : public Error {
 public:
  using Error::Error;
};

// Malformed dataset / config input. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss or gradient during optimisation.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace damnets

#endif  // DAMNETS_ERROR_H_
