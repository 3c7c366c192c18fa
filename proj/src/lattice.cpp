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

#include "isingsim/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace isingsim {

std::string to_string(Topology t) { return t == Topology::Sphere ? "sphere" : "torus"; }

LinearizedMove LinearizedMove::reversed() const {
    LinearizedMove out;
    out.from = to;
    out.to = from;
    out.steps.assign(steps.rbegin(), steps.rend());
    for (auto &s : out.steps) s.direction = s.direction == Direction::Left ? Direction::Right : Direction::Left;
    if (seam) out.seam = SeamLabel{seam->loop, -seam->orientation};
    return out;
}

Lattice::Lattice(Topology topology, int L) : topology_(topology), L_(L) {
    if (L < 4 || L % 2 != 0) throw LatticeError("lattice size must be even and at least 4");
    const int n = L * L;
    order_.resize(n);
    by_order_.resize(n);
    for (int r = 0; r < L; ++r)
        for (int c = 0; c < L; ++c) {
            int p = r * L + (r % 2 == 0 ? c : L - 1 - c);
            order_[site(r, c)] = p;
            by_order_[p] = site(r, c);
        }
    for (int r = 0; r < L; ++r)
        for (int c = 0; c + 1 < L; ++c) edges_.push_back({site(r, c), site(r, c + 1)});
    for (int r = 0; r + 1 < L; ++r)
        for (int c = 0; c < L; ++c) edges_.push_back({site(r, c), site(r + 1, c)});
    if (topology == Topology::Torus) {
        for (int r = 0; r < L; ++r) edges_.push_back({site(r, L - 1), site(r, 0)});
        for (int c = 0; c < L; ++c) edges_.push_back({site(L - 1, c), site(0, c)});
    }
    neighbors_.assign(n, {});
    for (const auto &e : edges_) {
        neighbors_[e.u].push_back(e.v);
        neighbors_[e.v].push_back(e.u);
    }
    for (auto &nb : neighbors_) std::sort(nb.begin(), nb.end(), [&](int a, int b) { return order_[a] < order_[b]; });
}

int Lattice::site(int r, int c) const {
    if (r < 0 || r >= L_ || c < 0 || c >= L_) throw LatticeError("site coordinates out of range");
    return r * L_ + c;
}

void Lattice::check_site(int s) const {
    if (s < 0 || s >= site_count()) throw LatticeError("site index out of range");
}

bool Lattice::adjacent(int a, int b) const {
    check_site(a);
    check_site(b);
    const auto &nb = neighbors_[a];
    return std::find(nb.begin(), nb.end(), b) != nb.end();
}

std::array<int, 4> Lattice::code_sites() const {
    const int h = L_ / 2;
    return {site(0, h), site(h, L_ - 1), site(L_ - 1, h), site(h, 0)};
}

bool Lattice::is_code_site(int s) const {
    if (topology_ != Topology::Sphere) return false;
    auto cs = code_sites();
    return std::find(cs.begin(), cs.end(), s) != cs.end();
}

int Lattice::distance(int a, int b) const {
    check_site(a);
    check_site(b);
    int dr = std::abs(row(a) - row(b));
    int dc = std::abs(col(a) - col(b));
    if (topology_ == Topology::Torus) {
        dr = std::min(dr, L_ - dr);
        dc = std::min(dc, L_ - dc);
    }
    return dr + dc;
}

std::vector<int> Lattice::shortest_path(int a, int b) const {
    std::vector<int> path{a};
    int cur = a;
    int d = distance(a, b);
    while (d > 0) {
        for (int nb : neighbors_[cur])
            if (distance(nb, b) == d - 1) {
                cur = nb;
                break;
            }
        path.push_back(cur);
        --d;
    }
    return path;
}

std::optional<SeamLabel> Lattice::seam_label(int from, int to) const {
    if (!adjacent(from, to)) throw LatticeError("seam_label: sites are not adjacent");
    if (topology_ != Topology::Torus) return std::nullopt;
    if (row(from) == row(to) && std::abs(col(from) - col(to)) == L_ - 1)
        return SeamLabel{Loop::V, col(from) == L_ - 1 ? +1 : -1};
    if (col(from) == col(to) && std::abs(row(from) - row(to)) == L_ - 1)
        return SeamLabel{Loop::H, row(from) == L_ - 1 ? +1 : -1};
    return std::nullopt;
}

void Lattice::add_steps(std::vector<PassStep> &steps, int p_begin, int p_end, Relation rel, Direction dir) const {
    if (dir == Direction::Right)
        for (int p = p_begin; p <= p_end; ++p) steps.push_back({by_order_[p], rel, dir});
    else
        for (int p = p_begin; p >= p_end; --p) steps.push_back({by_order_[p], rel, dir});
}

LinearizedMove Lattice::linearize(int from, int to) const {
    if (!adjacent(from, to)) throw LatticeError("linearize: sites are not adjacent");
    LinearizedMove mv{from, to, {}, seam_label(from, to)};
    const int pf = order_[from];
    const int pt = order_[to];
    if (std::abs(pf - pt) == 1 && !mv.seam) return mv;

    const int rf = row(from), rt = row(to), cf = col(from), ct = col(to);
    if (mv.seam && mv.seam->loop == Loop::V) {
        // Canonical direction: (r, L-1) -> (r, 0).
        if (cf != L_ - 1) return linearize(to, from).reversed();
        const int r = rf;
        const int pe = pf;
        const int pw = pt;
        if (r % 2 == 0) {
            add_steps(mv.steps, pe - 1, pw, Relation::Over, Direction::Left);
            add_steps(mv.steps, pw - 1, 0, Relation::Over, Direction::Left);
            add_steps(mv.steps, 0, pw - 1, Relation::Under, Direction::Right);
        } else {
            add_steps(mv.steps, pe - 1, 0, Relation::Over, Direction::Left);
            add_steps(mv.steps, 0, pe, Relation::Under, Direction::Right);
            add_steps(mv.steps, pe + 1, pw - 1, Relation::Under, Direction::Right);
        }
        return mv;
    }
    if (mv.seam && mv.seam->loop == Loop::H) {
        // Canonical direction: (L-1, c) -> (0, c).
        if (rf != L_ - 1) return linearize(to, from).reversed();
        add_steps(mv.steps, pf - 1, pt + 1, Relation::Over, Direction::Left);
        return mv;
    }
    if (cf == ct) {
        // Interior vertical edge, canonical direction downward.
        if (rt < rf) return linearize(to, from).reversed();
        add_steps(mv.steps, pf + 1, pt - 1, rf % 2 == 0 ? Relation::Under : Relation::Over, Direction::Right);
        return mv;
    }
    throw LatticeError("linearize: unexpected edge geometry");
}

}  // namespace isingsim
