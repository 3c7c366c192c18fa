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

#ifndef ISINGSIM_TESTS_MATCHING_FIXTURES_HPP_
#define ISINGSIM_TESTS_MATCHING_FIXTURES_HPP_

#include <sstream>
#include <string>

#include "isingsim/matching.hpp"
#include "isingsim/rng.hpp"

namespace isingsim::testing {

// Random graph on 0..max_n nodes: density, weight range and duplicate edges
// all vary so both sparse and dense regimes are covered.
inline WeightedGraph random_graph(Rng &rng, int max_n) {
    WeightedGraph g;
    g.n = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_n) + 1));
    const double density = 0.15 + 0.85 * uniform01(rng);
    const auto wmax = 1 + uniform_below(rng, coin(rng) ? 4 : 1000);
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) {
            if (uniform01(rng) >= density) continue;
            int u = a, v = b;
            if (coin(rng)) std::swap(u, v);
            g.add_edge(u, v, static_cast<std::int64_t>(uniform_below(rng, wmax)));
            if (uniform_below(rng, 20) == 0) g.add_edge(v, u, static_cast<std::int64_t>(uniform_below(rng, wmax)));
        }
    return g;
}

// Empty when blossom and brute force agree and the blossom output is a valid
// perfect matching of the reported cost.
inline std::string compare_with_brute_force(const WeightedGraph &g) {
    auto fast = min_weight_perfect_matching(g);
    auto slow = brute_force_mwpm(g);
    std::ostringstream os;
    if (fast.has_value() != slow.has_value()) {
        os << "existence differs (n=" << g.n << ", m=" << g.edges.size() << ")";
        return os.str();
    }
    if (!fast) return {};
    if (fast->cost != slow->cost) {
        os << "cost " << fast->cost << " vs " << slow->cost << " (n=" << g.n << ")";
        return os.str();
    }
    std::vector<int> seen(g.n, 0);
    std::int64_t cost = 0;
    for (int k : fast->edges) {
        const auto &e = g.edges[k];
        ++seen[e.u];
        ++seen[e.v];
        cost += e.w;
    }
    for (int c : seen)
        if (c != 1) return "edges are not a perfect matching";
    if (cost != fast->cost) return "reported cost does not match edges";
    return {};
}

}  // namespace isingsim::testing

#endif  // ISINGSIM_TESTS_MATCHING_FIXTURES_HPP_
