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
#ifndef BRANCHLIE_TOOLS_VERIFY_SUITE_HPP
#define BRANCHLIE_TOOLS_VERIFY_SUITE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace branchlie::verify {

struct SubLine {
    bool pass = true;
    std::string text;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    std::vector<SubLine> sub;
};

struct SuiteOptions {
    // Exact quotient level used for the extremes anchors.
    int extremes_exact_level = 8;
    bool verbose = true;  // print sub-lines
};

// "core" and "all" are criteria 1..14, "quick" skips the slow ones,
// otherwise a comma separated list of numbers.
std::vector<int> parse_suite(const std::string& suite);

CriterionResult run_criterion(int id, const SuiteOptions& opt);

// Runs and prints each criterion as it finishes; returns the number failed.
int run_suite(const std::vector<int>& ids, const SuiteOptions& opt, std::ostream& os);

}  // namespace branchlie::verify

#endif
