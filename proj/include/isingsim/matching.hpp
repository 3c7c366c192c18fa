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

#ifndef ISINGSIM_MATCHING_HPP_
#define ISINGSIM_MATCHING_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace isingsim {

class MatchingError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct WeightedEdge {
    int u;
    int v;
    std::int64_t w;
};

struct WeightedGraph {
    int n = 0;
    std::vector<WeightedEdge> edges;
    void add_edge(int u, int v, std::int64_t w) { edges.push_back({u, v, w}); }
};

struct PerfectMatching {
    std::vector<int> edges;  // indices into the graph's edge list, ascending
    std::vector<int> mate;   // mate[v] = partner of v
    std::int64_t cost = 0;
};

/// Exact minimum-weight perfect matching (Edmonds' blossom algorithm with
/// integer duals, O(n^3)). Returns nullopt when no perfect matching exists.
/// Weights must be non-negative.
std::optional<PerfectMatching> min_weight_perfect_matching(const WeightedGraph &g);

/// Exhaustive search over perfect matchings; n <= 14.
std::optional<PerfectMatching> brute_force_mwpm(const WeightedGraph &g);

}  // namespace isingsim

#endif  // ISINGSIM_MATCHING_HPP_
