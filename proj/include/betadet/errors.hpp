// Copyright 2026 The betadet authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace betadet {

/// Argument outside the analyticity region of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Requested tolerance not reached within the subdivision budget.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Zone-of-control constants violate the admissibility conditions.
class ZoneError : public std::invalid_argument {
 public:
  explicit ZoneError(const std::string& what) : std::invalid_argument(what) {}
};

/// Parameter combination the operation does not support (e.g. complex
/// deformation in a sampler that requires a real one).
class UnsupportedParameterError : public std::invalid_argument {
 public:
  explicit UnsupportedParameterError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace betadet
