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

#ifndef ISINGSIM_MAJORANA_HPP_
#define ISINGSIM_MAJORANA_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingsim/rng.hpp"

namespace isingsim {

class TableauError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class BraidSense : std::uint8_t { Clockwise, Anticlockwise };

inline BraidSense inverse(BraidSense s) {
    return s == BraidSense::Clockwise ? BraidSense::Anticlockwise : BraidSense::Clockwise;
}

/// sign * Gamma_S where, for S = {s_1 < ... < s_k} with k even,
/// Gamma_S = (-i)^{k/2} c_{s_1} ... c_{s_k}. Gamma_S is Hermitian and squares
/// to one, so the phase of any Hermitian Majorana monomial reduces to a sign.
struct MajoranaProduct {
    std::vector<std::uint64_t> words;
    bool negative = false;

    MajoranaProduct() = default;
    static MajoranaProduct from_modes(const std::vector<std::size_t> &modes, bool negative = false);
    /// -i c_a c_b (for a < b), the pair-parity operator with +1 = vacuum channel.
    static MajoranaProduct pair(std::size_t a, std::size_t b);
    /// Gamma over modes [begin, end).
    static MajoranaProduct range(std::size_t begin, std::size_t end);

    bool contains(std::size_t mode) const;
    void toggle(std::size_t mode);
    std::size_t weight() const;
    std::vector<std::size_t> modes() const;
    /// Highest mode + 1, or 0 when empty.
    std::size_t extent() const;

    /// Product of two even, commuting operators (throws otherwise).
    MajoranaProduct operator*(const MajoranaProduct &other) const;
    bool commutes_with(const MajoranaProduct &other) const;

    bool operator==(const MajoranaProduct &other) const;
    std::string str() const;
};

enum class Outcome : std::uint8_t { Plus, Minus, Uniform };

std::string to_string(Outcome o);

/// Stabilizer state of n Majorana modes (n even) held as n/2 commuting even
/// generators plus dual "destabilizer" supports: d_i anticommutes with g_i and
/// commutes with every other generator. Deterministic outcomes are then read
/// off in one pass over the destabilizers.
class MajoranaTableau {
   public:
    MajoranaTableau() = default;

    std::size_t mode_count() const { return n_; }
    std::size_t generator_count() const { return signs_.size(); }
    MajoranaProduct generator(std::size_t i) const;
    MajoranaProduct destabilizer(std::size_t i) const;

    /// Inserts two modes at `position`, shifting higher modes up by two, and
    /// appends the generator -i c_p c_{p+1} = +1.
    void insert_vacuum_pair(std::size_t position);
    void braid_adjacent(std::size_t alpha, BraidSense sense);
    void negate_mode(std::size_t alpha);

    Outcome outcome_distribution(const MajoranaProduct &op) const;
    /// Projective measurement. `forced` fixes the outcome of a uniform
    /// measurement; contradicting a deterministic outcome throws.
    int measure(const MajoranaProduct &op, Rng &rng, std::optional<int> forced = std::nullopt);
    /// Removes modes a and b. Requires -i c_a c_b to have a deterministic value.
    void remove_pair(std::size_t a, std::size_t b);

    /// Checks commutation, evenness, duality and count. Empty string when fine.
    std::string audit() const;
    std::string dump() const;

   private:
    std::size_t n_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> gen_;
    std::vector<std::uint64_t> des_;
    std::vector<std::uint8_t> signs_;

    std::uint64_t *grow(std::size_t i) { return gen_.data() + i * stride_; }
    const std::uint64_t *grow(std::size_t i) const { return gen_.data() + i * stride_; }
    std::uint64_t *drow(std::size_t i) { return des_.data() + i * stride_; }
    const std::uint64_t *drow(std::size_t i) const { return des_.data() + i * stride_; }

    void check_op(const MajoranaProduct &op) const;
    void set_stride(std::size_t stride);
    // g_dst <- g_dst * g_src (both rows of this tableau).
    void multiply_generator(std::size_t dst, std::size_t src);
    std::vector<std::size_t> anticommuting_destabilizers(const MajoranaProduct &op) const;
    MajoranaProduct product_of(const std::vector<std::size_t> &rows) const;
};

}  // namespace isingsim

#endif  // ISINGSIM_MAJORANA_HPP_
