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

#include "isingsim/anyon_system.hpp"

#include <algorithm>
#include <sstream>

namespace isingsim {

std::string to_string(const Sector &s) {
    std::ostringstream os;
    os << "(" << (s.lambda_h > 0 ? "+" : "-") << "," << (s.lambda_v > 0 ? "+" : "-") << "," << s.w_h << "," << s.w_v
       << ")";
    return os.str();
}

namespace {

BraidSense pass_sense(Direction dir, Relation rel) {
    return (dir == Direction::Right) == (rel == Relation::Over) ? BraidSense::Clockwise : BraidSense::Anticlockwise;
}

}  // namespace

AnyonSystem::AnyonSystem(const Lattice &lattice)
    : lattice_(&lattice),
      count_(static_cast<std::size_t>(lattice.site_count()), 0),
      psi_(static_cast<std::size_t>(lattice.site_count()), 0),
      ids_(static_cast<std::size_t>(lattice.site_count())),
      fenwick_(static_cast<std::size_t>(lattice.site_count()) + 1, 0) {}

void AnyonSystem::fenwick_add(int position, int delta) {
    for (int k = position + 1; k < static_cast<int>(fenwick_.size()); k += k & -k) fenwick_[k] += delta;
}

std::size_t AnyonSystem::prefix(int position) const {
    int sum = 0;
    for (int k = position; k > 0; k -= k & -k) sum += fenwick_[k];
    return static_cast<std::size_t>(sum);
}

std::size_t AnyonSystem::mode_offset(int site) const { return prefix(lattice_->order(site)); }

Charge AnyonSystem::settled_charge(int site) const {
    if (count_[site] > 1 || (count_[site] == 1 && psi_[site])) throw SystemError("site charge is not settled");
    if (count_[site] == 1) return Charge::Sigma;
    return psi_[site] ? Charge::Psi : Charge::Vacuum;
}

int AnyonSystem::total_psi_parity() const {
    int p = 0;
    for (auto v : psi_) p ^= v;
    return p;
}

bool AnyonSystem::all_vacuum() const {
    for (std::size_t s = 0; s < count_.size(); ++s)
        if (count_[s] || psi_[s]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Block transport.

AnyonSystem::Block AnyonSystem::extract(int site) {
    Block b;
    b.size = static_cast<std::size_t>(count_[site]);
    b.ids.swap(ids_[site]);
    b.gap = lattice_->order(site);
    fenwick_add(b.gap, -count_[site]);
    count_[site] = 0;
    return b;
}

void AnyonSystem::swap_adjacent(std::size_t left_start, std::size_t left_size, std::size_t right_size,
                                BraidSense sense) {
    // The left block moves right, its last member first.
    for (std::size_t idx = left_size; idx-- > 0;)
        for (std::size_t t = 0; t < right_size; ++t) tab_.braid_adjacent(left_start + idx + t, sense);
}

void AnyonSystem::pass(Block &b, int node, Relation rel, Direction dir) {
    const int pk = lattice_->order(node);
    const auto cnt = static_cast<std::size_t>(count_[node]);
    const BraidSense sense = pass_sense(dir, rel);
    const std::size_t start = prefix(b.gap);
    if (dir == Direction::Right) {
        if (start != prefix(pk)) throw std::logic_error("pass: block not adjacent to node");
        if (cnt && b.size) swap_adjacent(start, b.size, cnt, sense);
        b.gap = pk + 1;
    } else {
        if (start != prefix(pk + 1)) throw std::logic_error("pass: block not adjacent to node");
        if (cnt && b.size) {
            // Exact inverse of the rightward pass with the opposite sense.
            const std::size_t s = prefix(pk);
            for (std::size_t idx = 0; idx < b.size; ++idx)
                for (std::size_t t = cnt; t-- > 0;) tab_.braid_adjacent(s + idx + t, sense);
        }
        b.gap = pk;
    }
}

Direction AnyonSystem::departure_side(const LinearizedMove &mv) const {
    const int pf = lattice_->order(mv.from);
    if (mv.steps.empty()) return lattice_->order(mv.to) > pf ? Direction::Right : Direction::Left;
    const auto &first = mv.steps.front();
    if (first.node != mv.from) return first.direction;
    return first.direction == Direction::Right ? Direction::Left : Direction::Right;
}

void AnyonSystem::route(Block &b, const LinearizedMove &mv) {
    for (const auto &step : mv.steps) pass(b, step.node, step.relation, step.direction);
    if (mv.seam) apply_seam(b, *mv.seam);
}

void AnyonSystem::apply_seam(const Block &b, const SeamLabel &seam) {
    const bool own_h = seam.loop == Loop::H;
    const int lambda_own = own_h ? sector_.lambda_h : sector_.lambda_v;
    const std::size_t start = prefix(b.gap);
    if (lambda_own < 0)
        for (std::size_t t = 0; t < b.size; ++t) tab_.negate_mode(start + t);
    if (b.size & 1) (own_h ? sector_.lambda_v : sector_.lambda_h) *= -1;
    if (b.psi) (own_h ? sector_.w_h : sector_.w_v) ^= 1;
}

bool AnyonSystem::landing_side(const Block &b, int site) const {
    const int pj = lattice_->order(site);
    if (b.gap <= pj) {
        if (prefix(b.gap) != prefix(pj)) throw std::logic_error("block did not reach its destination");
        return true;
    }
    if (prefix(b.gap) != prefix(pj + 1)) throw std::logic_error("block did not reach its destination");
    return false;
}

void AnyonSystem::merge(Block &b, int site) {
    const bool left = landing_side(b, site);
    auto &ids = ids_[site];
    if (left)
        ids.insert(ids.begin(), b.ids.begin(), b.ids.end());
    else
        ids.insert(ids.end(), b.ids.begin(), b.ids.end());
    count_[site] += static_cast<int>(b.size);
    fenwick_add(lattice_->order(site), static_cast<int>(b.size));
    psi_[site] ^= static_cast<std::uint8_t>(b.psi);
    b = Block{};
}

// ---------------------------------------------------------------------------
// Elementary processes.

void AnyonSystem::pair_create(int i, int j, Charge q) {
    if (q == Charge::Vacuum) throw SystemError("pair_create: charge must be psi or sigma");
    if (q == Charge::Psi) {
        auto seam = lattice_->seam_label(i, j);
        psi_[i] ^= 1;
        psi_[j] ^= 1;
        if (seam) (seam->loop == Loop::H ? sector_.w_h : sector_.w_v) ^= 1;
        return;
    }
    LinearizedMove mv = lattice_->linearize(i, j);
    const int pi = lattice_->order(i);
    const std::uint32_t stay = next_id_++;
    const std::uint32_t go = next_id_++;
    Block b;
    b.size = 1;
    b.ids = {go};
    const std::size_t base = prefix(pi);
    if (departure_side(mv) == Direction::Right) {
        tab_.insert_vacuum_pair(base + static_cast<std::size_t>(count_[i]));
        ids_[i].push_back(stay);
        b.gap = pi + 1;
    } else {
        tab_.insert_vacuum_pair(base);
        ids_[i].insert(ids_[i].begin(), stay);
        b.gap = pi;
    }
    count_[i] += 1;
    fenwick_add(pi, 1);
    route(b, mv);
    merge(b, j);
}

void AnyonSystem::hop(int i, int j) {
    if (!occupied(i)) throw SystemError("hop: source site is empty");
    LinearizedMove mv = lattice_->linearize(i, j);
    Block b = extract(i);
    b.psi = psi_[i] != 0;
    psi_[i] = 0;
    route(b, mv);
    merge(b, j);
}

void AnyonSystem::exchange(int i, int j, BraidSense sense) {
    if (!occupied(i) && !occupied(j)) throw SystemError("exchange: both sites are empty");
    LinearizedMove mv = lattice_->linearize(i, j);
    Block a = extract(i);
    a.psi = psi_[i] != 0;
    psi_[i] = 0;
    route(a, mv);
    const bool a_left = landing_side(a, j);

    Block b = extract(j);
    b.psi = psi_[j] != 0;
    psi_[j] = 0;
    const int pj = lattice_->order(j);
    const std::size_t start = prefix(pj);
    if (a_left) {
        swap_adjacent(start, a.size, b.size, sense);
        b.gap = pj;
    } else {
        swap_adjacent(start, b.size, a.size, sense);
        b.gap = pj + 1;
    }
    count_[j] = static_cast<int>(a.size);
    ids_[j] = std::move(a.ids);
    fenwick_add(pj, count_[j]);
    psi_[j] = a.psi;

    route(b, lattice_->linearize(j, i));
    merge(b, i);
}

Charge AnyonSystem::decohere_site(int site, Rng &rng, std::span<const int> forced) {
    const std::size_t off = mode_offset(site);
    std::size_t k = 0;
    while (count_[site] >= 2) {
        std::optional<int> f;
        if (k < forced.size()) f = forced[k];
        ++k;
        if (tab_.measure(MajoranaProduct::pair(off, off + 1), rng, f) < 0) psi_[site] ^= 1;
        tab_.remove_pair(off, off + 1);
        count_[site] -= 2;
        fenwick_add(lattice_->order(site), -2);
        ids_[site].erase(ids_[site].begin(), ids_[site].begin() + 2);
    }
    if (count_[site] == 1 && psi_[site]) {
        tab_.negate_mode(off);
        psi_[site] = 0;
    }
    return settled_charge(site);
}

Charge AnyonSystem::fuse_path(const std::vector<int> &path, Rng &rng) {
    if (path.empty()) throw SystemError("fuse_path: empty path");
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
        if (occupied(path[k])) hop(path[k], path[k + 1]);
    return decohere_site(path.back(), rng);
}

std::vector<Charge> AnyonSystem::site_view(Rng &rng) {
    std::vector<Charge> out(count_.size());
    for (int s = 0; s < static_cast<int>(count_.size()); ++s) out[s] = decohere_site(s, rng);
    return out;
}

Sector AnyonSystem::sector() const {
    if (lattice_->topology() != Topology::Torus) throw SystemError("sector is only defined on the torus");
    return sector_;
}

void AnyonSystem::set_sector(const Sector &s) {
    if (lattice_->topology() != Topology::Torus) throw SystemError("sector is only defined on the torus");
    auto pm = [](int x) { return x == 1 || x == -1; };
    auto bit = [](int x) { return x == 0 || x == 1; };
    if (!pm(s.lambda_h) || !pm(s.lambda_v) || !bit(s.w_h) || !bit(s.w_v)) throw SystemError("invalid sector");
    sector_ = s;
}

std::string AnyonSystem::audit() const {
    std::size_t total = 0;
    for (std::size_t s = 0; s < count_.size(); ++s) {
        if (count_[s] < 0) return "negative sigma count";
        if (ids_[s].size() != static_cast<std::size_t>(count_[s])) return "id list out of sync at site " + std::to_string(s);
        total += static_cast<std::size_t>(count_[s]);
    }
    if (total != tab_.mode_count()) return "sigma count does not match the tableau";
    if (prefix(lattice_->site_count()) != total) return "prefix sums out of sync";
    if (auto err = tab_.audit(); !err.empty()) return "tableau: " + err;
    if (lattice_->topology() == Topology::Sphere) {
        const int expect = total_psi_parity() ? -1 : 1;
        if (total == 0) {
            if (expect < 0) return "odd psi count with no sigmas";
        } else {
            Outcome q = tab_.outcome_distribution(MajoranaProduct::range(0, total));
            if (q != (expect > 0 ? Outcome::Plus : Outcome::Minus))
                return "total charge is not vacuum (Q " + to_string(q) + ")";
        }
    }
    return {};
}

std::string AnyonSystem::dump() const {
    std::ostringstream os;
    for (int p = 0; p < lattice_->site_count(); ++p) {
        int s = lattice_->site_at(p);
        if (!occupied(s)) continue;
        os << "site (" << lattice_->row(s) << "," << lattice_->col(s) << ")";
        if (count_[s]) {
            os << " sigma[";
            for (std::size_t k = 0; k < ids_[s].size(); ++k) os << (k ? " " : "") << ids_[s][k];
            os << "]";
        }
        if (psi_[s]) os << " psi";
        os << '\n';
    }
    os << tab_.dump();
    if (lattice_->topology() == Topology::Torus) os << "sector " << to_string(sector_) << '\n';
    return os.str();
}

}  // namespace isingsim
