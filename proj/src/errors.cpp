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

#include "masogeom/errors.hpp"

namespace masogeom {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kStructural: return "structural";
    case ErrorKind::kInput: return "input";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kOutOfDomain: return "out_of_domain";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace masogeom
