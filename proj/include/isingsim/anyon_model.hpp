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

#ifndef ISINGSIM_ANYON_MODEL_HPP_
#define ISINGSIM_ANYON_MODEL_HPP_

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace isingsim {

using cplx = std::complex<double>;

/// Topological charge of the Ising model. Basis order everywhere is
/// (Vacuum, Psi, Sigma).
enum class Charge : int { Vacuum = 0, Psi = 1, Sigma = 2 };

inline constexpr std::array<Charge, 3> kAllCharges = {Charge::Vacuum, Charge::Psi, Charge::Sigma};

std::string to_string(Charge q);

/// Dense complex matrix, row-major. Small sizes only (at most 3x3 here).
struct SmallMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    SmallMatrix() = default;
    SmallMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    static SmallMatrix identity(std::size_t n);

    cplx &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    SmallMatrix operator*(const SmallMatrix &other) const;
    SmallMatrix adjoint() const;
    double max_abs_diff(const SmallMatrix &other) const;
};

class AnyonModelError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Minimal interface to the algebraic data of a multiplicity-free,
/// self-dual anyon model with three charges. Only the Ising model is shipped.
class AnyonModel {
   public:
    virtual ~AnyonModel() = default;

    /// Fusion channels of a x b (multiplicity-free: each channel at most once).
    virtual std::vector<Charge> fusion_outcomes(Charge a, Charge b) const = 0;
    virtual cplx topological_spin(Charge q) const = 0;
    virtual double quantum_dimension(Charge q) const = 0;
    /// R^{ab}_c. Throws AnyonModelError when c is not a channel of a x b.
    virtual cplx braid_phase(Charge a, Charge b, Charge c) const = 0;
    /// [F^{abc}_d]_{ef}, rows e in a x b, columns f in b x c, both restricted
    /// to labels admissible with d and listed in basis order.
    virtual SmallMatrix f_matrix(Charge a, Charge b, Charge c, Charge d) const = 0;
    /// S_q in basis order (Vacuum, Psi, Sigma).
    virtual SmallMatrix s_matrix(Charge q) const = 0;

    bool admissible(Charge a, Charge b, Charge c) const;
    double total_dimension() const;
    /// Internal labels e (in a x b with e x c containing d), in basis order.
    std::vector<Charge> left_internal(Charge a, Charge b, Charge c, Charge d) const;
    /// Internal labels f (in b x c with a x f containing d), in basis order.
    std::vector<Charge> right_internal(Charge a, Charge b, Charge c, Charge d) const;
    /// [F^{abc}_d]_{ef} by label; zero when either label is not admissible.
    cplx f_entry(Charge a, Charge b, Charge c, Charge d, Charge e, Charge f) const;
};

class IsingModel final : public AnyonModel {
   public:
    std::vector<Charge> fusion_outcomes(Charge a, Charge b) const override;
    cplx topological_spin(Charge q) const override;
    double quantum_dimension(Charge q) const override;
    cplx braid_phase(Charge a, Charge b, Charge c) const override;
    SmallMatrix f_matrix(Charge a, Charge b, Charge c, Charge d) const override;
    SmallMatrix s_matrix(Charge q) const override;
};

const IsingModel &ising();

struct ConsistencyCheck {
    std::string name;
    bool passed = false;
    double residual = 0.0;
};

struct ConsistencyReport {
    std::vector<ConsistencyCheck> checks;
    bool all_passed() const;
    const ConsistencyCheck *find(const std::string &name) const;
};

/// Evaluates the model's defining identities: fusion symmetry/associativity,
/// d_a d_b = sum_c d_c, total dimension, unitarity of S and F, the S-matrix
/// formula from spins and dimensions, pentagon and both hexagon identities.
ConsistencyReport check_consistency(const AnyonModel &model, double tol = 1e-12);

}  // namespace isingsim

#endif  // ISINGSIM_ANYON_MODEL_HPP_
