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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "isingsim/anyon_model.hpp"

using namespace isingsim;

namespace {
constexpr double kPi = std::numbers::pi;
const Charge I = Charge::Vacuum;
const Charge P = Charge::Psi;
const Charge S = Charge::Sigma;

bool near(cplx a, cplx b, double tol = 1e-14) { return std::abs(a - b) < tol; }
}  // namespace

TEST_CASE("fusion rules") {
    const auto &m = ising();
    CHECK(m.fusion_outcomes(S, S) == std::vector<Charge>{I, P});
    CHECK(m.fusion_outcomes(P, S) == std::vector<Charge>{S});
    CHECK(m.fusion_outcomes(P, P) == std::vector<Charge>{I});
    for (Charge q : kAllCharges) CHECK(m.fusion_outcomes(I, q) == std::vector<Charge>{q});
    for (Charge a : kAllCharges)
        for (Charge b : kAllCharges) CHECK(m.fusion_outcomes(a, b) == m.fusion_outcomes(b, a));
}

TEST_CASE("braid phases") {
    const auto &m = ising();
    CHECK(near(m.braid_phase(S, S, I), std::polar(1.0, -kPi / 8)));
    CHECK(near(m.braid_phase(S, S, P), std::polar(1.0, 3 * kPi / 8)));
    CHECK(near(m.braid_phase(P, P, I), -1.0));
    CHECK(near(m.braid_phase(I, I, I), 1.0));
    CHECK(near(m.braid_phase(S, P, S), cplx(0, -1)));
    CHECK_THROWS_AS(m.braid_phase(S, S, S), AnyonModelError);
    for (Charge a : kAllCharges)
        for (Charge b : kAllCharges)
            for (Charge c : m.fusion_outcomes(a, b)) CHECK(std::abs(m.braid_phase(a, b, c)) == doctest::Approx(1.0));
}

TEST_CASE("F matrices") {
    const auto &m = ising();
    SmallMatrix f = m.f_matrix(S, S, S, S);
    REQUIRE(f.rows == 2);
    const double h = 1 / std::sqrt(2.0);
    CHECK(near(f(0, 0), h));
    CHECK(near(f(0, 1), h));
    CHECK(near(f(1, 0), h));
    CHECK(near(f(1, 1), -h));
    CHECK((f * f).max_abs_diff(SmallMatrix::identity(2)) < 1e-14);
    CHECK(near(m.f_matrix(S, P, S, P)(0, 0), -1.0));
    CHECK(near(m.f_matrix(P, S, P, S)(0, 0), -1.0));
    SmallMatrix v = m.f_matrix(I, S, S, I);
    CHECK(v.rows == 1);
    CHECK(near(v(0, 0), 1.0));
    CHECK_THROWS_AS(m.f_matrix(S, S, S, I), AnyonModelError);
}

TEST_CASE("S matrices and dimensions") {
    const auto &m = ising();
    SmallMatrix s = m.s_matrix(I);
    const double r = std::sqrt(2.0);
    CHECK(near(s(2, 0), r / 2));
    CHECK(near(s(2, 1), -r / 2));
    CHECK(near(s(2, 2), 0.0));
    SmallMatrix sp = m.s_matrix(P);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(near(sp(i, j), (i == 2 && j == 2) ? std::polar(1.0, -kPi / 4) : cplx(0.0)));
    CHECK(m.s_matrix(S).max_abs_diff(SmallMatrix(3, 3)) == 0.0);
    CHECK(m.quantum_dimension(S) * m.quantum_dimension(S) == doctest::Approx(2.0));
    CHECK(m.total_dimension() == doctest::Approx(2.0));
}

TEST_CASE("consistency report passes on Ising data") {
    auto report = check_consistency(ising());
    for (const auto &c : report.checks) {
        INFO(c.name << " residual " << c.residual);
        CHECK(c.passed);
    }
    CHECK(report.all_passed());
    for (const char *name : {"pentagon", "hexagon", "hexagon_inverse", "s_vacuum_unitary", "s_vacuum_from_spins"})
        CHECK(report.find(name) != nullptr);
}

namespace {
// Same data with one R phase conjugated; the hexagons must notice.
class BrokenModel final : public AnyonModel {
   public:
    std::vector<Charge> fusion_outcomes(Charge a, Charge b) const override { return ising().fusion_outcomes(a, b); }
    cplx topological_spin(Charge q) const override { return ising().topological_spin(q); }
    double quantum_dimension(Charge q) const override { return ising().quantum_dimension(q); }
    cplx braid_phase(Charge a, Charge b, Charge c) const override {
        cplx r = ising().braid_phase(a, b, c);
        return (a == S && b == S && c == P) ? std::conj(r) : r;
    }
    SmallMatrix f_matrix(Charge a, Charge b, Charge c, Charge d) const override { return ising().f_matrix(a, b, c, d); }
    SmallMatrix s_matrix(Charge q) const override { return ising().s_matrix(q); }
};
}  // namespace

TEST_CASE("consistency report detects corrupted data") {
    auto report = check_consistency(BrokenModel{});
    CHECK_FALSE(report.all_passed());
    CHECK_FALSE(report.find("hexagon")->passed);
    CHECK(report.find("pentagon")->passed);
}
