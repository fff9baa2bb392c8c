// Copyright 2026 The qftkit Authors
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

// Prints one pass/fail line per acceptance criterion; exits nonzero if any fails.

#include <cstring>
#include <iostream>

#include "qftkit/acceptance.hpp"

int main(int argc, char** argv) {
    qftkit::AcceptanceOptions opt;
    for (int i = 1; i < argc; i++) {
        if (std::strcmp(argv[i], "--quick") == 0) {
            opt.quick = true;
        }
    }
    bool ok = true;
    qftkit::run_acceptance(opt, [&](const qftkit::CriterionResult& r) {
        std::cout << r.line() << std::endl;
        ok &= r.pass;
    });
    std::cout << (ok ? "acceptance PASS" : "acceptance FAIL") << std::endl;
    return ok ? 0 : 1;
}
