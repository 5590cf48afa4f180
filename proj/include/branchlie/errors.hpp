/* Copyright 2026 The branchlie Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
#ifndef BRANCHLIE_ERRORS_HPP
#define BRANCHLIE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace branchlie {

// Bad argument: out-of-range index, digit >= base, unknown family, ...
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A configured budget (points, store size, symbol count) was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Self-check failed: a computed series has a negative coefficient,
// an index calibration anchor disagrees, and so on.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace branchlie

#endif
