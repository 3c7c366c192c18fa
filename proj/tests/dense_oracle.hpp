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

// State-vector reference for the Majorana tableau. Each inserted pair gets a
// fresh qubit in |0>; Majoranas are Jordan-Wigner strings, so -i c_{2k}
// c_{2k+1} = Z_k starts at +1. A position map tracks the tableau's mode order.

#ifndef ISINGSIM_TESTS_DENSE_ORACLE_HPP_
#define ISINGSIM_TESTS_DENSE_ORACLE_HPP_

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingsim/majorana.hpp"

namespace isingsim::testing {

class DenseOracle {
   public:
    DenseOracle() : psi_(Eigen::VectorXcd::Ones(1)) {}

    std::size_t mode_count() const { return phys_.size(); }
    int qubits() const { return qubits_; }

    void insert_pair(std::size_t pos) {
        const Eigen::Index dim = psi_.size();
        Eigen::VectorXcd bigger = Eigen::VectorXcd::Zero(2 * dim);
        bigger.head(dim) = psi_;
        psi_ = bigger;
        phys_.insert(phys_.begin() + static_cast<std::ptrdiff_t>(pos), {2 * qubits_, 2 * qubits_ + 1});
        ++qubits_;
    }

    void braid(std::size_t alpha, BraidSense sense) {
        // Clockwise: (1 + c_{a+1} c_a) / sqrt(2).
        Eigen::VectorXcd t = majorana(phys_[alpha + 1], majorana(phys_[alpha], psi_));
        double s = sense == BraidSense::Clockwise ? 1.0 : -1.0;
        psi_ = (psi_ + s * t) / std::sqrt(2.0);
    }

    void negate(std::size_t alpha) { psi_ = majorana(phys_[alpha], psi_); }

    Eigen::VectorXcd apply(const MajoranaProduct &op, const Eigen::VectorXcd &v) const {
        auto modes = op.modes();
        Eigen::VectorXcd out = v;
        for (auto it = modes.rbegin(); it != modes.rend(); ++it) out = majorana(phys_.at(*it), out);
        std::complex<double> phase = op.negative ? -1.0 : 1.0;
        for (std::size_t k = 0; k < modes.size() / 2; ++k) phase *= std::complex<double>(0, -1);
        return phase * out;
    }

    double prob_plus(const MajoranaProduct &op) const {
        return 0.5 * (1.0 + psi_.dot(apply(op, psi_)).real());
    }

    void project(const MajoranaProduct &op, int outcome) {
        psi_ = 0.5 * (psi_ + static_cast<double>(outcome) * apply(op, psi_));
        double n = psi_.norm();
        if (n < 1e-9) throw std::logic_error("oracle projected onto an impossible outcome");
        psi_ /= n;
    }

    void remove_pair(std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        phys_.erase(phys_.begin() + static_cast<std::ptrdiff_t>(b));
        phys_.erase(phys_.begin() + static_cast<std::ptrdiff_t>(a));
    }

    const Eigen::VectorXcd &state() const { return psi_; }

   private:
    Eigen::VectorXcd psi_;
    std::vector<int> phys_;
    int qubits_ = 0;

    Eigen::VectorXcd majorana(int idx, const Eigen::VectorXcd &v) const {
        const int k = idx / 2;
        const bool y = idx & 1;
        Eigen::VectorXcd out(v.size());
        for (Eigen::Index b = 0; b < v.size(); ++b) {
            const auto ub = static_cast<unsigned long>(b);
            const unsigned long flipped = ub ^ (1ul << k);
            std::complex<double> amp = v[b];
            if (std::popcount(ub & ((1ul << k) - 1)) & 1) amp = -amp;
            if (y) amp *= ((ub >> k) & 1) ? std::complex<double>(0, -1) : std::complex<double>(0, 1);
            out[static_cast<Eigen::Index>(flipped)] = amp;
        }
        return out;
    }
};

inline double expected_prob(Outcome o) { return o == Outcome::Plus ? 1.0 : (o == Outcome::Minus ? 0.0 : 0.5); }

inline MajoranaProduct shifted(const MajoranaProduct &op, std::size_t offset) {
    MajoranaProduct out;
    out.negative = op.negative;
    for (auto m : op.modes()) out.toggle(m + offset);
    return out;
}

/// Compares the tableau against the oracle on every pair operator, the total
/// parity and a few random even operators. Empty string on agreement.
inline std::string compare_states(const MajoranaTableau &t, const DenseOracle &o, std::size_t offset, Rng &rng) {
    const std::size_t n = o.mode_count();
    std::vector<MajoranaProduct> ops;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) ops.push_back(MajoranaProduct::pair(a, b));
    if (n) ops.push_back(MajoranaProduct::range(0, n));
    for (int k = 0; k < 4 && n >= 4; ++k) {
        MajoranaProduct op;
        for (std::size_t m = 0; m < n; ++m)
            if (coin(rng)) op.toggle(m);
        if (op.weight() & 1) op.toggle(uniform_below(rng, n));
        if (op.weight() == 0) continue;
        op.negative = coin(rng);
        ops.push_back(op);
    }
    for (const auto &op : ops) {
        double want = o.prob_plus(op);
        double got = expected_prob(t.outcome_distribution(shifted(op, offset)));
        if (std::abs(want - got) > 1e-9)
            return op.str() + ": oracle p(+1)=" + std::to_string(want) + " tableau " + std::to_string(got);
    }
    return {};
}

/// One random sequence of at most `max_ops` operations on at most `max_modes`
/// modes, with `pad_pairs` untouched pairs below the active modes (to push the
/// active modes across machine-word boundaries).
inline std::string run_random_sequence(Rng &rng, int max_ops, std::size_t max_modes, std::size_t pad_pairs = 0) {
    MajoranaTableau t;
    DenseOracle o;
    for (std::size_t k = 0; k < pad_pairs; ++k) t.insert_vacuum_pair(0);
    const std::size_t off = 2 * pad_pairs;
    t.insert_vacuum_pair(off);
    o.insert_pair(0);
    const int nops = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_ops)));
    for (int step = 0; step < nops; ++step) {
        const std::size_t n = o.mode_count();
        std::string what;
        switch (uniform_below(rng, 5)) {
            case 0: {
                if (n + 2 > max_modes || o.qubits() >= 6) continue;
                std::size_t pos = uniform_below(rng, n + 1);
                t.insert_vacuum_pair(pos + off);
                o.insert_pair(pos);
                what = "insert " + std::to_string(pos);
                break;
            }
            case 1: {
                if (n < 2) continue;
                std::size_t a = uniform_below(rng, n - 1);
                BraidSense s = coin(rng) ? BraidSense::Clockwise : BraidSense::Anticlockwise;
                t.braid_adjacent(a + off, s);
                o.braid(a, s);
                what = "braid " + std::to_string(a);
                break;
            }
            case 2: {
                if (n == 0) continue;
                std::size_t a = uniform_below(rng, n);
                t.negate_mode(a + off);
                o.negate(a);
                what = "negate " + std::to_string(a);
                break;
            }
            case 3: {
                if (n < 2) continue;
                MajoranaProduct op;
                if (coin(rng)) {
                    std::size_t a = uniform_below(rng, n);
                    std::size_t b = uniform_below(rng, n - 1);
                    if (b >= a) ++b;
                    op = MajoranaProduct::pair(std::min(a, b), std::max(a, b));
                } else {
                    for (std::size_t m = 0; m < n; ++m)
                        if (coin(rng)) op.toggle(m);
                    if (op.weight() & 1) op.toggle(uniform_below(rng, n));
                    if (op.weight() == 0) continue;
                }
                op.negative = coin(rng);
                double p = o.prob_plus(op);
                int outcome = t.measure(shifted(op, off), rng);
                if ((outcome > 0 && p < 1e-9) || (outcome < 0 && p > 1 - 1e-9))
                    return "measured impossible outcome of " + op.str();
                o.project(op, outcome);
                what = "measure " + op.str();
                break;
            }
            default: {
                if (n < 2) continue;
                std::size_t a = uniform_below(rng, n);
                std::size_t b = uniform_below(rng, n - 1);
                if (b >= a) ++b;
                auto op = MajoranaProduct::pair(std::min(a, b), std::max(a, b));
                double p = o.prob_plus(op);
                bool decoupled = p < 1e-9 || p > 1 - 1e-9;
                if (decoupled) {
                    t.remove_pair(a + off, b + off);
                    o.remove_pair(a, b);
                } else {
                    bool threw = false;
                    try {
                        t.remove_pair(a + off, b + off);
                    } catch (const TableauError &) {
                        threw = true;
                    }
                    if (!threw) return "remove_pair accepted a coupled pair";
                }
                what = "remove " + std::to_string(a) + "," + std::to_string(b);
                break;
            }
        }
        if (auto err = t.audit(); !err.empty()) return "after " + what + ": audit: " + err;
        if (auto err = compare_states(t, o, off, rng); !err.empty()) return "after " + what + ": " + err;
    }
    return {};
}

}  // namespace isingsim::testing

#endif  // ISINGSIM_TESTS_DENSE_ORACLE_HPP_
