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

// Two-site charge states for checking the Metropolis proposal kernel.

#ifndef ISINGSIM_TESTS_TWO_SITE_HPP_
#define ISINGSIM_TESTS_TWO_SITE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "isingsim/noise.hpp"

namespace isingsim::testing {

// (charge at i, charge at j) with the joint channel when both hold sigma.
enum TwoSite { II, PP, SSI, IP, PI, SSP, IS, SI, PS, SP, kTwoSiteCount };

inline const std::array<std::string, kTwoSiteCount> kTwoSiteNames = {
    "(1,1)", "(psi,psi)", "(s,s;1)", "(1,psi)", "(psi,1)", "(s,s;psi)", "(1,s)", "(s,1)", "(psi,s)", "(s,psi)"};

// Expected kernel, rows and columns in enum order.
inline double table_two(int a, int b) {
    constexpr double h = 0.5, q = 0.25, e = 0.125;
    static constexpr double m[kTwoSiteCount][kTwoSiteCount] = {
        {h, q, q, 0, 0, 0, 0, 0, 0, 0}, {q, h, q, 0, 0, 0, 0, 0, 0, 0}, {q, q, h, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, h, q, q, 0, 0, 0, 0}, {0, 0, 0, q, h, q, 0, 0, 0, 0}, {0, 0, 0, q, q, h, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, h, e, q, e}, {0, 0, 0, 0, 0, 0, e, h, e, q}, {0, 0, 0, 0, 0, 0, q, e, h, e},
        {0, 0, 0, 0, 0, 0, e, q, e, h}};
    return m[a][b];
}

struct TwoSiteRig {
    Lattice lat{Topology::Sphere, 4};
    int i = lat.site(0, 0);
    int j = lat.site(0, 1);
    int ki = lat.site(1, 0);  // neighbour of i only
    int kj = lat.site(1, 1);  // neighbour of j only

    AnyonSystem prepare(TwoSite s, Rng &rng) const {
        AnyonSystem sys(lat);
        switch (s) {
            case II:
                break;
            case PP:
                sys.pair_create(i, j, Charge::Psi);
                break;
            case SSI:
                sys.pair_create(i, j, Charge::Sigma);
                break;
            case IP:
                sys.pair_create(kj, j, Charge::Psi);
                break;
            case PI:
                sys.pair_create(ki, i, Charge::Psi);
                break;
            case SSP:
                sys.pair_create(i, j, Charge::Sigma);
                sys.pair_create(ki, i, Charge::Psi);
                break;
            case IS:
                sys.pair_create(kj, j, Charge::Sigma);
                break;
            case SI:
                sys.pair_create(ki, i, Charge::Sigma);
                break;
            case PS:
                sys.pair_create(kj, j, Charge::Sigma);
                sys.pair_create(ki, i, Charge::Psi);
                break;
            case SP:
                sys.pair_create(ki, i, Charge::Sigma);
                sys.pair_create(kj, j, Charge::Psi);
                break;
            default:
                break;
        }
        sys.site_view(rng);
        return sys;
    }

    // Returns kTwoSiteCount when the state is not one of the ten.
    int classify(const AnyonSystem &sys) const {
        const Charge a = sys.settled_charge(i), b = sys.settled_charge(j);
        using C = Charge;
        if (a == C::Sigma && b == C::Sigma) {
            // i and j are the first two sites in the order, so their modes are 0 and 1.
            Outcome o = sys.tableau().outcome_distribution(MajoranaProduct::pair(0, 1));
            if (o == Outcome::Plus) return SSI;
            if (o == Outcome::Minus) return SSP;
            return kTwoSiteCount;
        }
        if (a == C::Vacuum && b == C::Vacuum) return II;
        if (a == C::Psi && b == C::Psi) return PP;
        if (a == C::Vacuum && b == C::Psi) return IP;
        if (a == C::Psi && b == C::Vacuum) return PI;
        if (a == C::Vacuum && b == C::Sigma) return IS;
        if (a == C::Sigma && b == C::Vacuum) return SI;
        if (a == C::Psi && b == C::Sigma) return PS;
        if (a == C::Sigma && b == C::Psi) return SP;
        return kTwoSiteCount;
    }
};

using KernelCounts = std::array<std::array<long, kTwoSiteCount + 1>, kTwoSiteCount>;

// Runs `per_row` beta = 0 proposals from each state on the edge i -> j.
inline KernelCounts sample_kernel(long per_row, Rng &rng) {
    TwoSiteRig rig;
    MetropolisParams hot{1.0, 1.0, 0.0};
    KernelCounts counts{};
    for (int a = 0; a < kTwoSiteCount; ++a) {
        const AnyonSystem start = rig.prepare(static_cast<TwoSite>(a), rng);
        for (long n = 0; n < per_row; ++n) {
            AnyonSystem sys = start;
            metropolis_step_on(sys, rig.i, rig.j, hot, rng);
            ++counts[a][rig.classify(sys)];
        }
    }
    return counts;
}

// Largest deviation of an empirical frequency from the expected kernel, in
// units of its binomial standard error. Unclassified outcomes count as
// infinitely far off.
inline double kernel_max_z(const KernelCounts &counts, long per_row) {
    double worst = 0;
    for (int a = 0; a < kTwoSiteCount; ++a) {
        if (counts[a][kTwoSiteCount] > 0) return INFINITY;
        for (int b = 0; b < kTwoSiteCount; ++b) {
            const double p = table_two(a, b);
            const double f = static_cast<double>(counts[a][b]) / static_cast<double>(per_row);
            if (p == 0) {
                if (counts[a][b] > 0) return INFINITY;
                continue;
            }
            const double se = std::sqrt(p * (1 - p) / static_cast<double>(per_row));
            worst = std::max(worst, std::abs(f - p) / se);
        }
    }
    return worst;
}

// Largest |f(a->b) - f(b->a)| over the standard error of the difference.
inline double kernel_asymmetry_z(const KernelCounts &counts, long per_row) {
    double worst = 0;
    const double n = static_cast<double>(per_row);
    for (int a = 0; a < kTwoSiteCount; ++a)
        for (int b = a + 1; b < kTwoSiteCount; ++b) {
            const double fab = counts[a][b] / n, fba = counts[b][a] / n;
            const double p = table_two(a, b);
            if (p == 0) continue;
            const double se = std::sqrt(2 * p * (1 - p) / n);
            worst = std::max(worst, std::abs(fab - fba) / se);
        }
    return worst;
}

}  // namespace isingsim::testing

#endif  // ISINGSIM_TESTS_TWO_SITE_HPP_
