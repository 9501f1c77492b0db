// Copyright 2026 The fibjones Authors
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

#ifndef FIBJONES_ERRORS_HPP
#define FIBJONES_ERRORS_HPP

#include <stdexcept>

namespace fibjones {

/// Raised when a request exceeds a desk-scale size cap.
class SizeCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace fibjones

#endif  // FIBJONES_ERRORS_HPP
