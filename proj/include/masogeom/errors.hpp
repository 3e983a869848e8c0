// Copyright 2026 The masogeom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace masogeom {

enum class ErrorKind {
  kStructural,    // dimension mismatch, bad weights, inconsistent layers
  kInput,         // non-finite or wrongly sized query data
  kCapacity,      // an exhaustive enumeration would exceed its cap
  kUnsupported,   // activation / piece count not handled by an operation
  kDegenerate,    // zero vectors, empty diagrams
  kPrecondition,  // e.g. first-layer rows not orthogonal
  kParse,         // malformed file content
  kOutOfDomain,   // query point outside a partition's domain
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace masogeom
