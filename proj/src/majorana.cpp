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

#include "isingsim/majorana.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace isingsim {

namespace {

inline std::uint64_t low_mask(std::size_t b) { return b == 0 ? 0 : (b >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << b) - 1); }

inline bool get_bit(const std::uint64_t *row, std::size_t i) { return (row[i >> 6] >> (i & 63)) & 1; }

inline void flip_bit(std::uint64_t *row, std::size_t i) { row[i >> 6] ^= std::uint64_t{1} << (i & 63); }

inline std::uint64_t word_at(const std::vector<std::uint64_t> &w, std::size_t i) { return i < w.size() ? w[i] : 0; }

// Sign picked up by Gamma_S Gamma_T = +-Gamma_{S xor T} for even, commuting
// S and T: (-1)^(|S & T| / 2 + #{(s, t) : s > t}).
bool product_flip(const std::uint64_t *s, const std::uint64_t *t, std::size_t words) {
    std::size_t overlap = 0;
    unsigned inversions = 0;
    bool carry = false;
    for (std::size_t w = words; w-- > 0;) {
        std::uint64_t x = s[w];
        std::uint64_t y = x;
        y ^= y >> 1;
        y ^= y >> 2;
        y ^= y >> 4;
        y ^= y >> 8;
        y ^= y >> 16;
        y ^= y >> 32;
        // Bit k of `after` = parity of S's members strictly above k.
        std::uint64_t after = y ^ x;
        if (carry) after = ~after;
        inversions ^= static_cast<unsigned>(std::popcount(t[w] & after)) & 1u;
        carry ^= (std::popcount(x) & 1) != 0;
        overlap += static_cast<std::size_t>(std::popcount(x & t[w]));
    }
    if (overlap & 1) throw TableauError("product of anticommuting Majorana operators");
    return (((overlap >> 1) & 1) ^ inversions) != 0;
}

bool odd_overlap(const std::uint64_t *a, const std::uint64_t *b, std::size_t words) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words; ++w) acc ^= a[w] & b[w];
    return (std::popcount(acc) & 1) != 0;
}

// Inserts k < 64 zero bits at `pos`; the row must have room at the top.
void insert_bits(std::uint64_t *row, std::size_t words, std::size_t pos, std::size_t k) {
    const std::size_t wp = pos >> 6;
    const std::size_t bp = pos & 63;
    for (std::size_t w = words - 1; w > wp; --w) {
        std::uint64_t prev = row[w - 1];
        if (w - 1 == wp) prev &= ~low_mask(bp);
        row[w] = (row[w] << k) | (prev >> (64 - k));
    }
    row[wp] = (row[wp] & low_mask(bp)) | ((row[wp] & ~low_mask(bp)) << k);
}

void erase_bit(std::uint64_t *row, std::size_t words, std::size_t pos) {
    const std::size_t wp = pos >> 6;
    const std::size_t bp = pos & 63;
    row[wp] = (row[wp] & low_mask(bp)) | ((row[wp] >> 1) & ~low_mask(bp));
    for (std::size_t w = wp; w < words; ++w) {
        if (w > wp) row[w] >>= 1;
        if (w + 1 < words) row[w] |= row[w + 1] << 63;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// MajoranaProduct

MajoranaProduct MajoranaProduct::from_modes(const std::vector<std::size_t> &modes, bool negative) {
    MajoranaProduct p;
    p.negative = negative;
    for (std::size_t m : modes) p.toggle(m);
    return p;
}

MajoranaProduct MajoranaProduct::pair(std::size_t a, std::size_t b) {
    if (a == b) throw TableauError("pair operator needs two distinct modes");
    return from_modes({a, b});
}

MajoranaProduct MajoranaProduct::range(std::size_t begin, std::size_t end) {
    MajoranaProduct p;
    for (std::size_t m = begin; m < end; ++m) p.toggle(m);
    return p;
}

bool MajoranaProduct::contains(std::size_t mode) const { return (word_at(words, mode >> 6) >> (mode & 63)) & 1; }

void MajoranaProduct::toggle(std::size_t mode) {
    if ((mode >> 6) >= words.size()) words.resize((mode >> 6) + 1, 0);
    words[mode >> 6] ^= std::uint64_t{1} << (mode & 63);
}

std::size_t MajoranaProduct::weight() const {
    std::size_t k = 0;
    for (auto w : words) k += static_cast<std::size_t>(std::popcount(w));
    return k;
}

std::vector<std::size_t> MajoranaProduct::modes() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t x = words[w];
        while (x) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
            x &= x - 1;
        }
    }
    return out;
}

std::size_t MajoranaProduct::extent() const {
    for (std::size_t w = words.size(); w-- > 0;)
        if (words[w]) return w * 64 + 64 - static_cast<std::size_t>(std::countl_zero(words[w]));
    return 0;
}

MajoranaProduct MajoranaProduct::operator*(const MajoranaProduct &other) const {
    if ((weight() & 1) || (other.weight() & 1)) throw TableauError("product of odd Majorana operators");
    std::size_t n = std::max(words.size(), other.words.size());
    std::vector<std::uint64_t> a(n, 0), b(n, 0);
    std::copy(words.begin(), words.end(), a.begin());
    std::copy(other.words.begin(), other.words.end(), b.begin());
    MajoranaProduct out;
    out.negative = negative ^ other.negative ^ product_flip(a.data(), b.data(), n);
    out.words.resize(n);
    for (std::size_t w = 0; w < n; ++w) out.words[w] = a[w] ^ b[w];
    return out;
}

bool MajoranaProduct::commutes_with(const MajoranaProduct &other) const {
    std::uint64_t acc = 0;
    std::size_t n = std::min(words.size(), other.words.size());
    for (std::size_t w = 0; w < n; ++w) acc ^= words[w] & other.words[w];
    bool odd_overlap = std::popcount(acc) & 1;
    bool both_odd = (weight() & 1) && (other.weight() & 1);
    return odd_overlap == both_odd;
}

bool MajoranaProduct::operator==(const MajoranaProduct &other) const {
    if (negative != other.negative) return false;
    std::size_t n = std::max(words.size(), other.words.size());
    for (std::size_t w = 0; w < n; ++w)
        if (word_at(words, w) != word_at(other.words, w)) return false;
    return true;
}

std::string MajoranaProduct::str() const {
    std::ostringstream os;
    os << (negative ? '-' : '+') << "G[";
    bool first = true;
    for (auto m : modes()) {
        os << (first ? "" : ",") << m;
        first = false;
    }
    os << ']';
    return os.str();
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Plus:
            return "+1";
        case Outcome::Minus:
            return "-1";
        case Outcome::Uniform:
            return "uniform";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// MajoranaTableau

MajoranaProduct MajoranaTableau::generator(std::size_t i) const {
    if (i >= generator_count()) throw TableauError("generator index out of range");
    MajoranaProduct p;
    p.words.assign(grow(i), grow(i) + stride_);
    p.negative = signs_[i] != 0;
    return p;
}

MajoranaProduct MajoranaTableau::destabilizer(std::size_t i) const {
    if (i >= generator_count()) throw TableauError("destabilizer index out of range");
    MajoranaProduct p;
    p.words.assign(drow(i), drow(i) + stride_);
    return p;
}

void MajoranaTableau::set_stride(std::size_t stride) {
    const std::size_t rows = generator_count();
    std::vector<std::uint64_t> g(rows * stride, 0), d(rows * stride, 0);
    const std::size_t keep = std::min(stride, stride_);
    for (std::size_t i = 0; i < rows; ++i) {
        std::copy(grow(i), grow(i) + keep, g.begin() + static_cast<std::ptrdiff_t>(i * stride));
        std::copy(drow(i), drow(i) + keep, d.begin() + static_cast<std::ptrdiff_t>(i * stride));
    }
    gen_.swap(g);
    des_.swap(d);
    stride_ = stride;
}

void MajoranaTableau::insert_vacuum_pair(std::size_t position) {
    if (position > n_) throw TableauError("insert position out of range");
    const std::size_t need = (n_ + 2 + 63) / 64;
    if (need > stride_) set_stride(need);
    const std::size_t rows = generator_count();
    for (std::size_t i = 0; i < rows; ++i) {
        insert_bits(grow(i), stride_, position, 2);
        insert_bits(drow(i), stride_, position, 2);
    }
    n_ += 2;
    gen_.resize(gen_.size() + stride_, 0);
    des_.resize(des_.size() + stride_, 0);
    signs_.push_back(0);
    flip_bit(grow(rows), position);
    flip_bit(grow(rows), position + 1);
    flip_bit(drow(rows), position);
}

void MajoranaTableau::braid_adjacent(std::size_t alpha, BraidSense sense) {
    if (alpha + 1 >= n_) throw TableauError("braid index out of range");
    const std::size_t rows = generator_count();
    const bool cw = sense == BraidSense::Clockwise;
    for (std::size_t i = 0; i < rows; ++i) {
        std::uint64_t *g = grow(i);
        bool a = get_bit(g, alpha);
        bool b = get_bit(g, alpha + 1);
        if (a != b) {
            flip_bit(g, alpha);
            flip_bit(g, alpha + 1);
            // Clockwise: c_a -> c_{a+1}, c_{a+1} -> -c_a. Anticlockwise inverts.
            if (cw ? b : a) signs_[i] ^= 1;
        }
        std::uint64_t *d = drow(i);
        if (get_bit(d, alpha) != get_bit(d, alpha + 1)) {
            flip_bit(d, alpha);
            flip_bit(d, alpha + 1);
        }
    }
}

void MajoranaTableau::negate_mode(std::size_t alpha) {
    if (alpha >= n_) throw TableauError("mode index out of range");
    const std::size_t rows = generator_count();
    for (std::size_t i = 0; i < rows; ++i)
        if (get_bit(grow(i), alpha)) signs_[i] ^= 1;
}

void MajoranaTableau::check_op(const MajoranaProduct &op) const {
    if (op.weight() & 1) throw TableauError("operator has odd support: " + op.str());
    if (op.extent() > n_) throw TableauError("operator support out of range: " + op.str());
}

std::vector<std::size_t> MajoranaTableau::anticommuting_destabilizers(const MajoranaProduct &op) const {
    std::vector<std::uint64_t> w(stride_, 0);
    std::copy_n(op.words.begin(), std::min(op.words.size(), stride_), w.begin());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < generator_count(); ++i)
        if (odd_overlap(drow(i), w.data(), stride_)) out.push_back(i);
    return out;
}

MajoranaProduct MajoranaTableau::product_of(const std::vector<std::size_t> &rows) const {
    MajoranaProduct acc;
    acc.words.assign(stride_, 0);
    for (std::size_t i : rows) {
        acc.negative ^= product_flip(acc.words.data(), grow(i), stride_) ^ (signs_[i] != 0);
        for (std::size_t w = 0; w < stride_; ++w) acc.words[w] ^= grow(i)[w];
    }
    return acc;
}

void MajoranaTableau::multiply_generator(std::size_t dst, std::size_t src) {
    std::uint64_t *g = grow(dst);
    const std::uint64_t *h = grow(src);
    signs_[dst] ^= static_cast<std::uint8_t>(product_flip(g, h, stride_) ^ (signs_[src] != 0));
    for (std::size_t w = 0; w < stride_; ++w) g[w] ^= h[w];
}

Outcome MajoranaTableau::outcome_distribution(const MajoranaProduct &op) const {
    check_op(op);
    std::vector<std::uint64_t> w(stride_, 0);
    std::copy_n(op.words.begin(), std::min(op.words.size(), stride_), w.begin());
    for (std::size_t i = 0; i < generator_count(); ++i)
        if (odd_overlap(grow(i), w.data(), stride_)) return Outcome::Uniform;
    MajoranaProduct acc = product_of(anticommuting_destabilizers(op));
    return acc.negative == op.negative ? Outcome::Plus : Outcome::Minus;
}

int MajoranaTableau::measure(const MajoranaProduct &op, Rng &rng, std::optional<int> forced) {
    check_op(op);
    if (forced && *forced != 1 && *forced != -1) throw TableauError("forced outcome must be +1 or -1");
    std::vector<std::uint64_t> w(stride_, 0);
    std::copy_n(op.words.begin(), std::min(op.words.size(), stride_), w.begin());
    const std::size_t rows = generator_count();
    std::size_t p = rows;
    for (std::size_t i = 0; i < rows && p == rows; ++i)
        if (odd_overlap(grow(i), w.data(), stride_)) p = i;

    if (p == rows) {
        MajoranaProduct acc = product_of(anticommuting_destabilizers(op));
        int value = acc.negative == op.negative ? 1 : -1;
        if (forced && *forced != value) throw TableauError("forced outcome contradicts deterministic value");
        return value;
    }

    int s = forced ? *forced : (coin(rng) ? 1 : -1);
    for (std::size_t i = p + 1; i < rows; ++i)
        if (odd_overlap(grow(i), w.data(), stride_)) multiply_generator(i, p);
    for (std::size_t i = 0; i < rows; ++i) {
        if (i == p || !odd_overlap(drow(i), w.data(), stride_)) continue;
        for (std::size_t k = 0; k < stride_; ++k) drow(i)[k] ^= grow(p)[k];
    }
    std::copy_n(grow(p), stride_, drow(p));
    std::copy_n(w.begin(), stride_, grow(p));
    signs_[p] = static_cast<std::uint8_t>(op.negative ^ (s < 0));
    return s;
}

void MajoranaTableau::remove_pair(std::size_t a, std::size_t b) {
    if (a == b || a >= n_ || b >= n_) throw TableauError("remove_pair: bad modes");
    if (a > b) std::swap(a, b);
    MajoranaProduct op = MajoranaProduct::pair(a, b);
    if (outcome_distribution(op) == Outcome::Uniform) throw TableauError("remove_pair: pair not decoupled");

    std::vector<std::size_t> in = anticommuting_destabilizers(op);
    const std::size_t p = in.front();
    MajoranaProduct prod = product_of(in);
    // Rebase so g_p = +-Gamma_ab, keeping d dual to g.
    for (std::size_t k = 1; k < in.size(); ++k)
        for (std::size_t w = 0; w < stride_; ++w) drow(in[k])[w] ^= drow(p)[w];
    std::copy_n(prod.words.begin(), stride_, grow(p));
    signs_[p] = prod.negative;
    // Clear a and b from every other generator.
    const std::size_t rows = generator_count();
    for (std::size_t k = 0; k < rows; ++k) {
        if (k == p || !get_bit(grow(k), a)) continue;
        multiply_generator(k, p);
        for (std::size_t w = 0; w < stride_; ++w) drow(p)[w] ^= drow(k)[w];
    }
    // Drop row p and the two columns.
    const auto off = static_cast<std::ptrdiff_t>(p * stride_);
    const auto len = static_cast<std::ptrdiff_t>(stride_);
    gen_.erase(gen_.begin() + off, gen_.begin() + off + len);
    des_.erase(des_.begin() + off, des_.begin() + off + len);
    signs_.erase(signs_.begin() + static_cast<std::ptrdiff_t>(p));
    for (std::size_t i = 0; i + 1 < rows; ++i) {
        erase_bit(grow(i), stride_, b);
        erase_bit(grow(i), stride_, a);
        erase_bit(drow(i), stride_, b);
        erase_bit(drow(i), stride_, a);
    }
    n_ -= 2;
}

std::string MajoranaTableau::audit() const {
    const std::size_t rows = generator_count();
    if (n_ & 1) return "odd mode count";
    if (rows * 2 != n_) return "generator count is not half the mode count";
    auto beyond = [&](const std::uint64_t *row) {
        for (std::size_t w = 0; w < stride_; ++w) {
            std::size_t valid = n_ > w * 64 ? std::min<std::size_t>(64, n_ - w * 64) : 0;
            if (row[w] & ~low_mask(valid)) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < rows; ++i) {
        std::size_t wt = 0;
        for (std::size_t w = 0; w < stride_; ++w) wt += static_cast<std::size_t>(std::popcount(grow(i)[w]));
        if (wt & 1) return "generator " + std::to_string(i) + " has odd support";
        if (beyond(grow(i)) || beyond(drow(i)))
            return "row " + std::to_string(i) + " has bits beyond the mode count";
        for (std::size_t j = 0; j < rows; ++j) {
            if (j > i && odd_overlap(grow(i), grow(j), stride_))
                return "generators " + std::to_string(i) + " and " + std::to_string(j) + " anticommute";
            if (odd_overlap(drow(i), grow(j), stride_) != (i == j))
                return "destabilizer " + std::to_string(i) + " not dual to generator " + std::to_string(j);
        }
    }
    return {};
}

std::string MajoranaTableau::dump() const {
    std::ostringstream os;
    os << "modes " << n_ << '\n';
    for (std::size_t i = 0; i < generator_count(); ++i) os << "  " << generator(i).str() << '\n';
    return os.str();
}

}  // namespace isingsim
