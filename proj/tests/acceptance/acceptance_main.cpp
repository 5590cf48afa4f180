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
// One line per acceptance criterion. Exit 1 if any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "verify_suite.hpp"

int main(int argc, char** argv) {
    branchlie::verify::SuiteOptions opt;
    std::string suite = "all";
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--brief") opt.verbose = false;
        else if (a == "--exact-level" && i + 1 < argc) opt.extremes_exact_level = std::atoi(argv[++i]);
        else suite = a;
    }
    try {
        return branchlie::verify::run_suite(branchlie::verify::parse_suite(suite), opt, std::cout) ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
