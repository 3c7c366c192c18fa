// Copyright 2026 The isingsim Authors
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

// Times the serial and OpenMP trial loops on the same point and checks
// that they return the same failure count.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "isingsim/harness.hpp"

using namespace isingsim;

namespace {

template <typename F>
double seconds(F &&f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char **argv) {
    const int trials = argc > 1 ? std::atoi(argv[1]) : 400;
    const int workers = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
    std::printf("trials %d, workers %d, hardware threads %d\n", trials, workers, omp_get_num_procs());
    std::printf("%-10s %4s %6s %10s %10s %8s %s\n", "state", "L", "t", "serial_s", "omp_s", "speedup", "failures");
    bool same = true;
    for (const auto &state : {CodeState::ifc(IfcLabel::Zero), CodeState::itc(1, 1)})
        for (int L : {8, 16}) {
            PointSpec spec;
            spec.state = state;
            spec.L = L;
            spec.t_sim = 0.2;
            PointResult s, p;
            const double ts = seconds([&] { s = run_point_serial(spec, trials, 1, 0); });
            const double tp = seconds([&] { p = run_point_parallel(spec, trials, 1, 0, workers); });
            same &= s.failures == p.failures;
            std::printf("%-10s %4d %6.2f %10.3f %10.3f %8.2f %d/%d\n", state.str().c_str(), L, spec.t_sim, ts, tp,
                        ts / tp, s.failures, p.failures);
        }
    std::printf("%s\n", same ? "loops agree" : "LOOPS DISAGREE");
    return same ? 0 : 1;
}
