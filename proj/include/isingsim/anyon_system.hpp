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

#ifndef ISINGSIM_ANYON_SYSTEM_HPP_
#define ISINGSIM_ANYON_SYSTEM_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingsim/anyon_model.hpp"
#include "isingsim/lattice.hpp"
#include "isingsim/majorana.hpp"
#include "isingsim/rng.hpp"

namespace isingsim {

class SystemError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Torus ground-space data: eigenvalues of the two psi loop operators and the
/// parity of psi windings through each loop.
struct Sector {
    int lambda_h = 1;
    int lambda_v = 1;
    int w_h = 0;
    int w_v = 0;
    bool operator==(const Sector &) const = default;
};

std::string to_string(const Sector &s);

/// Charge configuration + fusion space (+ torus sector) of Ising anyons on a
/// lattice. sigma modes are ordered by the lattice's site order; each site's
/// sigmas occupy a contiguous block of modes.
class AnyonSystem {
   public:
    explicit AnyonSystem(const Lattice &lattice);

    const Lattice &lattice() const { return *lattice_; }
    const MajoranaTableau &tableau() const { return tab_; }
    MajoranaTableau &tableau() { return tab_; }

    int sigma_count(int site) const { return count_[site]; }
    bool has_psi(int site) const { return psi_[site] != 0; }
    bool occupied(int site) const { return count_[site] > 0 || psi_[site] != 0; }
    /// Charge of a site holding at most one sigma (and no psi alongside it).
    Charge settled_charge(int site) const;
    /// First mode of the site's block.
    std::size_t mode_offset(int site) const;
    const std::vector<std::uint32_t> &sigma_ids(int site) const { return ids_[site]; }
    std::size_t total_sigmas() const { return tab_.mode_count(); }
    int total_psi_parity() const;

    /// Creates a q-pair at i in the vacuum channel and carries one member to j.
    void pair_create(int i, int j, Charge q);
    /// Moves the whole content of i to j. Throws if i is empty.
    void hop(int i, int j);
    /// Moves i's content to j, exchanges it with j's content in `sense`, and
    /// sends j's former content back to i. Throws if both sites are empty.
    void exchange(int i, int j, BraidSense sense);
    /// Projective measurement of the total charge at `site`. Pairs of sigmas
    /// are fused in mode order; `forced` supplies the fusion outcomes in order
    /// (each must agree with the outcome when that is already determined).
    Charge decohere_site(int site, Rng &rng, std::span<const int> forced = {});
    /// Hops everything along `path` onto its last site, then decoheres it.
    Charge fuse_path(const std::vector<int> &path, Rng &rng);
    /// Decoheres every site and returns the resulting charges.
    std::vector<Charge> site_view(Rng &rng);
    bool all_vacuum() const;

    Sector sector() const;
    void set_sector(const Sector &s);

    /// Empty when consistent. On spheres also checks total charge conservation.
    std::string audit() const;
    std::string dump() const;

   private:
    struct Block {
        std::size_t size = 0;
        std::vector<std::uint32_t> ids;
        int gap = 0;  // block sits before the content of site position `gap`
        bool psi = false;
    };

    const Lattice *lattice_;
    MajoranaTableau tab_;
    std::vector<int> count_;
    std::vector<std::uint8_t> psi_;
    std::vector<std::vector<std::uint32_t>> ids_;
    std::vector<int> fenwick_;
    std::uint32_t next_id_ = 0;
    Sector sector_;

    void fenwick_add(int position, int delta);
    std::size_t prefix(int position) const;

    Block extract(int site);
    void pass(Block &b, int node, Relation rel, Direction dir);
    // Side of the source site the moving block must start from.
    Direction departure_side(const LinearizedMove &mv) const;
    void route(Block &b, const LinearizedMove &mv);
    void apply_seam(const Block &b, const SeamLabel &seam);
    // Returns true when the block lands on the left of the site's content.
    bool landing_side(const Block &b, int site) const;
    void merge(Block &b, int site);
    void swap_adjacent(std::size_t left_start, std::size_t left_size, std::size_t right_size, BraidSense sense);
};

}  // namespace isingsim

#endif  // ISINGSIM_ANYON_SYSTEM_HPP_
