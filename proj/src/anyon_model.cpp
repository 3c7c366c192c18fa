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

#include "isingsim/anyon_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isingsim {

namespace {

constexpr double kPi = std::numbers::pi;

int idx(Charge q) { return static_cast<int>(q); }

cplx expi(double phi) { return std::polar(1.0, phi); }

bool contains(const std::vector<Charge> &v, Charge q) { return std::find(v.begin(), v.end(), q) != v.end(); }

}  // namespace

std::string to_string(Charge q) {
    switch (q) {
        case Charge::Vacuum:
            return "1";
        case Charge::Psi:
            return "psi";
        case Charge::Sigma:
            return "sigma";
    }
    return "?";
}

SmallMatrix SmallMatrix::identity(std::size_t n) {
    SmallMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SmallMatrix SmallMatrix::operator*(const SmallMatrix &other) const {
    if (cols != other.rows) throw std::invalid_argument("SmallMatrix: shape mismatch");
    SmallMatrix out(rows, other.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            for (std::size_t j = 0; j < other.cols; ++j) out(i, j) += (*this)(i, k) * other(k, j);
    return out;
}

SmallMatrix SmallMatrix::adjoint() const {
    SmallMatrix out(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

double SmallMatrix::max_abs_diff(const SmallMatrix &other) const {
    if (rows != other.rows || cols != other.cols) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) worst = std::max(worst, std::abs(data[i] - other.data[i]));
    return worst;
}

bool AnyonModel::admissible(Charge a, Charge b, Charge c) const { return contains(fusion_outcomes(a, b), c); }

double AnyonModel::total_dimension() const {
    double sum = 0.0;
    for (Charge q : kAllCharges) sum += quantum_dimension(q) * quantum_dimension(q);
    return std::sqrt(sum);
}

std::vector<Charge> AnyonModel::left_internal(Charge a, Charge b, Charge c, Charge d) const {
    std::vector<Charge> out;
    for (Charge e : fusion_outcomes(a, b))
        if (admissible(e, c, d)) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Charge> AnyonModel::right_internal(Charge a, Charge b, Charge c, Charge d) const {
    std::vector<Charge> out;
    for (Charge f : fusion_outcomes(b, c))
        if (admissible(a, f, d)) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

cplx AnyonModel::f_entry(Charge a, Charge b, Charge c, Charge d, Charge e, Charge f) const {
    auto left = left_internal(a, b, c, d);
    auto right = right_internal(a, b, c, d);
    auto li = std::find(left.begin(), left.end(), e);
    auto ri = std::find(right.begin(), right.end(), f);
    if (li == left.end() || ri == right.end()) return 0.0;
    SmallMatrix m = f_matrix(a, b, c, d);
    return m(static_cast<std::size_t>(li - left.begin()), static_cast<std::size_t>(ri - right.begin()));
}

// ---------------------------------------------------------------------------
// Ising data.

std::vector<Charge> IsingModel::fusion_outcomes(Charge a, Charge b) const {
    if (a == Charge::Vacuum) return {b};
    if (b == Charge::Vacuum) return {a};
    if (a == Charge::Psi && b == Charge::Psi) return {Charge::Vacuum};
    if (a == Charge::Sigma && b == Charge::Sigma) return {Charge::Vacuum, Charge::Psi};
    return {Charge::Sigma};  // psi x sigma
}

cplx IsingModel::topological_spin(Charge q) const {
    switch (q) {
        case Charge::Vacuum:
            return 1.0;
        case Charge::Psi:
            return -1.0;
        case Charge::Sigma:
            return expi(kPi / 8);
    }
    return 0.0;
}

double IsingModel::quantum_dimension(Charge q) const { return q == Charge::Sigma ? std::numbers::sqrt2 : 1.0; }

cplx IsingModel::braid_phase(Charge a, Charge b, Charge c) const {
    if (!admissible(a, b, c)) throw AnyonModelError("braid_phase: " + to_string(c) + " is not a channel of " +
                                                    to_string(a) + " x " + to_string(b));
    if (a == Charge::Vacuum || b == Charge::Vacuum) return 1.0;
    if (a == Charge::Psi && b == Charge::Psi) return -1.0;
    if (a == Charge::Sigma && b == Charge::Sigma) return c == Charge::Vacuum ? expi(-kPi / 8) : expi(3 * kPi / 8);
    return cplx(0.0, -1.0);  // R^{sigma psi}_sigma = R^{psi sigma}_sigma
}

SmallMatrix IsingModel::f_matrix(Charge a, Charge b, Charge c, Charge d) const {
    auto left = left_internal(a, b, c, d);
    auto right = right_internal(a, b, c, d);
    if (left.empty() || right.empty() || left.size() != right.size())
        throw AnyonModelError("f_matrix: inadmissible labels (" + to_string(a) + "," + to_string(b) + "," +
                              to_string(c) + ";" + to_string(d) + ")");
    const auto S = Charge::Sigma;
    const auto P = Charge::Psi;
    if (a == S && b == S && c == S && d == S) {
        SmallMatrix m(2, 2);
        const double h = 1.0 / std::numbers::sqrt2;
        m(0, 0) = h;
        m(0, 1) = h;
        m(1, 0) = h;
        m(1, 1) = -h;
        return m;
    }
    SmallMatrix m = SmallMatrix::identity(1);
    if ((a == S && b == P && c == S && d == P) || (a == P && b == S && c == P && d == S)) m(0, 0) = -1.0;
    return m;
}

SmallMatrix IsingModel::s_matrix(Charge q) const {
    SmallMatrix m(3, 3);
    if (q == Charge::Vacuum) {
        const double r = std::numbers::sqrt2;
        const double vals[3][3] = {{1, 1, r}, {1, 1, -r}, {r, -r, 0}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = vals[i][j] / 2.0;
    } else if (q == Charge::Psi) {
        m(2, 2) = expi(-kPi / 4);
    }
    return m;
}

const IsingModel &ising() {
    static const IsingModel model;
    return model;
}

// ---------------------------------------------------------------------------
// Consistency checks.

bool ConsistencyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.passed; });
}

const ConsistencyCheck *ConsistencyReport::find(const std::string &name) const {
    for (const auto &c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

int multiplicity(const AnyonModel &m, Charge a, Charge b, Charge c) { return m.admissible(a, b, c) ? 1 : 0; }

}  // namespace

ConsistencyReport check_consistency(const AnyonModel &model, double tol) {
    ConsistencyReport report;
    auto add = [&](std::string name, double residual) {
        report.checks.push_back({std::move(name), residual <= tol, residual});
    };

    // Fusion commutativity and associativity of total multiplicities.
    {
        double bad = 0.0;
        for (Charge a : kAllCharges)
            for (Charge b : kAllCharges) {
                auto ab = model.fusion_outcomes(a, b);
                auto ba = model.fusion_outcomes(b, a);
                std::sort(ab.begin(), ab.end());
                std::sort(ba.begin(), ba.end());
                if (ab != ba) bad += 1.0;
            }
        add("fusion_commutative", bad);
    }
    {
        double bad = 0.0;
        for (Charge a : kAllCharges)
            for (Charge b : kAllCharges)
                for (Charge c : kAllCharges)
                    for (Charge d : kAllCharges) {
                        int lhs = 0;
                        int rhs = 0;
                        for (Charge e : kAllCharges) {
                            lhs += multiplicity(model, a, b, e) * multiplicity(model, e, c, d);
                            rhs += multiplicity(model, b, c, e) * multiplicity(model, a, e, d);
                        }
                        bad += std::abs(lhs - rhs);
                    }
        add("fusion_associative", bad);
    }
    // d_a d_b = sum_c N_ab^c d_c; for sigma x sigma this is d_sigma^2 = d_1 + d_psi.
    {
        double worst = 0.0;
        for (Charge a : kAllCharges)
            for (Charge b : kAllCharges) {
                double rhs = 0.0;
                for (Charge c : model.fusion_outcomes(a, b)) rhs += model.quantum_dimension(c);
                worst = std::max(worst, std::abs(model.quantum_dimension(a) * model.quantum_dimension(b) - rhs));
            }
        add("dimension_fusion", worst);
        add("d_sigma_squared", std::abs(std::pow(model.quantum_dimension(Charge::Sigma), 2) - 2.0));
        add("total_dimension", std::abs(model.total_dimension() - 2.0));
    }
    // Unit-modulus spins and braid phases.
    {
        double worst = 0.0;
        for (Charge a : kAllCharges) {
            worst = std::max(worst, std::abs(std::abs(model.topological_spin(a)) - 1.0));
            for (Charge b : kAllCharges)
                for (Charge c : model.fusion_outcomes(a, b))
                    worst = std::max(worst, std::abs(std::abs(model.braid_phase(a, b, c)) - 1.0));
        }
        add("unit_phases", worst);
    }
    // S matrices.
    {
        SmallMatrix s = model.s_matrix(Charge::Vacuum);
        add("s_vacuum_unitary", (s * s.adjoint()).max_abs_diff(SmallMatrix::identity(3)));
        double asym = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) asym = std::max(asym, std::abs(s(i, j) - s(j, i)));
        add("s_vacuum_symmetric", asym);
        add("s_sigma_zero", model.s_matrix(Charge::Sigma).max_abs_diff(SmallMatrix(3, 3)));
        // S_ab = (1/D) sum_c N_ab^c d_c theta_c / (theta_a theta_b), charges self-dual.
        SmallMatrix formula(3, 3);
        for (Charge a : kAllCharges)
            for (Charge b : kAllCharges) {
                cplx sum = 0.0;
                for (Charge c : model.fusion_outcomes(a, b))
                    sum += model.quantum_dimension(c) * model.topological_spin(c);
                formula(idx(a), idx(b)) =
                    sum / (model.topological_spin(a) * model.topological_spin(b)) / model.total_dimension();
            }
        add("s_vacuum_from_spins", s.max_abs_diff(formula));
    }
    // F unitarity and the pentagon.
    {
        double worst = 0.0;
        for (Charge a : kAllCharges)
            for (Charge b : kAllCharges)
                for (Charge c : kAllCharges)
                    for (Charge d : kAllCharges) {
                        if (model.left_internal(a, b, c, d).empty()) continue;
                        SmallMatrix f = model.f_matrix(a, b, c, d);
                        worst = std::max(worst, (f * f.adjoint()).max_abs_diff(SmallMatrix::identity(f.rows)));
                    }
        add("f_unitary", worst);
    }
    {
        double worst = 0.0;
        for (Charge a : kAllCharges)
            for (Charge b : kAllCharges)
                for (Charge c : kAllCharges)
                    for (Charge d : kAllCharges)
                        for (Charge e : kAllCharges)
                            for (Charge f : kAllCharges)
                                for (Charge g : kAllCharges)
                                    for (Charge k : kAllCharges)
                                        for (Charge l : kAllCharges) {
                                            cplx lhs = model.f_entry(f, c, d, e, g, l) * model.f_entry(a, b, l, e, f, k);
                                            cplx rhs = 0.0;
                                            for (Charge h : kAllCharges)
                                                rhs += model.f_entry(a, b, c, g, f, h) * model.f_entry(a, h, d, e, g, k) *
                                                       model.f_entry(b, c, d, k, h, l);
                                            worst = std::max(worst, std::abs(lhs - rhs));
                                        }
        add("pentagon", worst);
    }
    // Hexagons, with R and with R^{-1}.
    {
        auto r = [&](Charge x, Charge y, Charge z) -> cplx {
            return model.admissible(x, y, z) ? model.braid_phase(x, y, z) : 0.0;
        };
        auto rinv = [&](Charge x, Charge y, Charge z) -> cplx {
            return model.admissible(x, y, z) ? 1.0 / model.braid_phase(x, y, z) : 0.0;
        };
        double worst = 0.0;
        double worst_inv = 0.0;
        for (Charge a : kAllCharges)
            for (Charge b : kAllCharges)
                for (Charge c : kAllCharges)
                    for (Charge d : kAllCharges)
                        for (Charge e : kAllCharges)
                            for (Charge g : kAllCharges) {
                                if (!model.admissible(c, a, e) || !model.admissible(c, b, g)) continue;
                                if (model.left_internal(a, c, b, d).empty()) continue;
                                cplx lhs = r(c, a, e) * model.f_entry(a, c, b, d, e, g) * r(c, b, g);
                                cplx lhs_inv = rinv(a, c, e) * model.f_entry(a, c, b, d, e, g) * rinv(b, c, g);
                                cplx rhs = 0.0;
                                cplx rhs_inv = 0.0;
                                for (Charge f : kAllCharges) {
                                    cplx outer = model.f_entry(c, a, b, d, e, f) * model.f_entry(a, b, c, d, f, g);
                                    rhs += outer * r(c, f, d);
                                    rhs_inv += outer * rinv(f, c, d);
                                }
                                worst = std::max(worst, std::abs(lhs - rhs));
                                worst_inv = std::max(worst_inv, std::abs(lhs_inv - rhs_inv));
                            }
        add("hexagon", worst);
        add("hexagon_inverse", worst_inv);
    }
    return report;
}

}  // namespace isingsim
