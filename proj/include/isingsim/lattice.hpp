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

#ifndef ISINGSIM_LATTICE_HPP_
#define ISINGSIM_LATTICE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isingsim {

enum class Topology : std::uint8_t { Sphere, Torus };

std::string to_string(Topology t);

class LatticeError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Relation : std::uint8_t { Over, Under };
enum class Direction : std::uint8_t { Left, Right };

/// One step of a linearized move: the travelling block passes the content of
/// `node` in the given direction along the site order, over or under it.
struct PassStep {
    int node;
    Relation relation;
    Direction direction;
    bool operator==(const PassStep &) const = default;
};

/// Torus seams. V is the vertical seam formed by the wraparound edges of the
/// last column, crossed by paths running along a row; H is the horizontal
/// seam formed by the wraparound edges of the last row.
enum class Loop : std::uint8_t { H, V };

struct SeamLabel {
    Loop loop;
    int orientation;  // +1 along increasing column (V) or row (H) index
    bool operator==(const SeamLabel &) const = default;
};

struct LinearizedMove {
    int from;
    int to;
    std::vector<PassStep> steps;
    std::optional<SeamLabel> seam;

    /// Exact inverse: the steps reversed with their directions flipped.
    LinearizedMove reversed() const;
};

struct Edge {
    int u;
    int v;
};

class Lattice {
   public:
    Lattice(Topology topology, int L);

    Topology topology() const { return topology_; }
    int size() const { return L_; }
    int site_count() const { return L_ * L_; }
    int site(int row, int col) const;
    int row(int s) const { return s / L_; }
    int col(int s) const { return s % L_; }

    /// Position in the serpentine site order (0-based).
    int order(int s) const { return order_[s]; }
    int site_at(int position) const { return by_order_[position]; }

    const std::vector<Edge> &edges() const { return edges_; }
    const std::vector<int> &neighbors(int s) const { return neighbors_[s]; }
    bool adjacent(int a, int b) const;

    /// Four sphere code sites: top, right, bottom, left mid-side positions.
    std::array<int, 4> code_sites() const;
    bool is_code_site(int s) const;

    int distance(int a, int b) const;
    /// Minimum-length path a..b inclusive; ties broken by lowest site order.
    std::vector<int> shortest_path(int a, int b) const;

    LinearizedMove linearize(int from, int to) const;
    std::optional<SeamLabel> seam_label(int from, int to) const;

   private:
    Topology topology_;
    int L_;
    std::vector<int> order_;
    std::vector<int> by_order_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> neighbors_;

    void check_site(int s) const;
    void add_steps(std::vector<PassStep> &steps, int p_begin, int p_end, Relation rel, Direction dir) const;
};

}  // namespace isingsim

#endif  // ISINGSIM_LATTICE_HPP_
