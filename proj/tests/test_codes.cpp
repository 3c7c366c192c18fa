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

#include <deque>
#include <set>

#include "dense_oracle.hpp"
#include "isingsim/codes.hpp"

using namespace isingsim;

namespace {

std::vector<int> path_avoiding(const Lattice &lat, int a, int b, const std::set<int> &blocked) {
    std::vector<int> prev(lat.site_count(), -1);
    std::deque<int> q{a};
    prev[a] = a;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (u == b) break;
        for (int v : lat.neighbors(u))
            if (prev[v] < 0 && (v == b || !blocked.count(v))) {
                prev[v] = u;
                q.push_back(v);
            }
    }
    REQUIRE(prev[b] >= 0);
    std::vector<int> path{b};
    while (path.back() != a) path.push_back(prev[path.back()]);
    return {path.rbegin(), path.rend()};
}

void walk(AnyonSystem &sys, const std::vector<int> &path) {
    for (std::size_t k = 0; k + 1 < path.size(); ++k) sys.hop(path[k], path[k + 1]);
}

std::set<int> occupied_sites(const AnyonSystem &sys) {
    std::set<int> out;
    for (int s = 0; s < sys.lattice().site_count(); ++s)
        if (sys.occupied(s)) out.insert(s);
    return out;
}

// Parks `anchor`'s content at `center`, carries `mover` once around it and
// returns everything along the same paths.
void monodromy(AnyonSystem &sys, int mover, int anchor, int center) {
    const Lattice &lat = sys.lattice();
    int r = lat.row(center), c = lat.col(center);
    std::vector<int> ring = {lat.site(r - 1, c - 1), lat.site(r - 1, c), lat.site(r - 1, c + 1),
                             lat.site(r, c + 1),     lat.site(r + 1, c + 1), lat.site(r + 1, c),
                             lat.site(r + 1, c - 1), lat.site(r, c - 1),     lat.site(r - 1, c - 1)};
    auto blocked = occupied_sites(sys);
    auto p = path_avoiding(lat, anchor, center, blocked);
    walk(sys, p);
    blocked = occupied_sites(sys);
    blocked.insert(ring.begin() + 1, ring.end() - 1);
    blocked.insert(center);
    auto q = path_avoiding(lat, mover, ring[0], blocked);
    walk(sys, q);
    walk(sys, ring);
    walk(sys, {q.rbegin(), q.rend()});
    walk(sys, {p.rbegin(), p.rend()});
}

}  // namespace

TEST_CASE("prepare then verify at zero noise") {
    Rng rng(1);
    for (int L : {4, 6, 8, 12, 16}) {
        Lattice sphere(Topology::Sphere, L);
        for (IfcLabel l : {IfcLabel::Zero, IfcLabel::Plus}) {
            AnyonSystem sys = prepare(sphere, CodeState::ifc(l), rng);
            CHECK(sys.audit().empty());
            CHECK(sys.tableau().outcome_distribution(ifc_logical_operator(sys, l)) == Outcome::Plus);
            CHECK(verify(sys, CodeState::ifc(l), rng));
        }
        Lattice torus(Topology::Torus, L);
        for (auto [lh, lv] : {std::pair{1, 1}, {1, -1}, {-1, 1}}) {
            AnyonSystem sys = prepare(torus, CodeState::itc(lh, lv), rng);
            CHECK(sys.sector() == Sector{lh, lv, 0, 0});
            CHECK(verify(sys, CodeState::itc(lh, lv), rng));
        }
        CHECK_THROWS_AS(prepare(torus, CodeState::itc(-1, -1), rng), CodeError);
        CHECK_THROWS_AS(prepare(torus, CodeState::ifc(IfcLabel::Zero), rng), CodeError);
        CHECK_THROWS_AS(prepare(sphere, CodeState::itc(1, 1), rng), CodeError);
    }
}

TEST_CASE("zero and plus labels are complementary") {
    Rng rng(2);
    Lattice lat(Topology::Sphere, 8);
    AnyonSystem zero = prepare(lat, CodeState::ifc(IfcLabel::Zero), rng);
    CHECK(zero.tableau().outcome_distribution(ifc_logical_operator(zero, IfcLabel::Plus)) == Outcome::Uniform);
    AnyonSystem plus = prepare(lat, CodeState::ifc(IfcLabel::Plus), rng);
    CHECK(plus.tableau().outcome_distribution(ifc_logical_operator(plus, IfcLabel::Zero)) == Outcome::Uniform);
}

TEST_CASE("logical operators as monodromies") {
    Rng rng(3);
    Lattice lat(Topology::Sphere, 8);
    auto cs = lat.code_sites();
    const int t = cs[0], r = cs[1], b = cs[2];
    struct Case {
        int mover, anchor, center;
        bool zero_survives, plus_survives;
    };
    // r around b is logical X, t around r is logical Z.
    const std::vector<Case> cases = {{r, b, lat.site(5, 4), false, true}, {t, r, lat.site(2, 5), true, false}};
    for (const auto &cse : cases)
        for (IfcLabel l : {IfcLabel::Zero, IfcLabel::Plus}) {
            AnyonSystem sys = prepare(lat, CodeState::ifc(l), rng);
            monodromy(sys, cse.mover, cse.anchor, cse.center);
            CHECK(sys.audit().empty());
            CHECK(verify(sys, CodeState::ifc(l), rng) == (l == IfcLabel::Zero ? cse.zero_survives : cse.plus_survives));
        }
}

TEST_CASE("plus is the eigenstate of the r-b monodromy in the dense representation") {
    // Modes in line order for L = 8: t, l, r, b.
    using isingsim::testing::DenseOracle;
    for (int label = 0; label < 2; ++label) {
        DenseOracle o;
        o.insert_pair(0);
        o.insert_pair(2);
        o.project(label == 0 ? MajoranaProduct::pair(0, 2) : MajoranaProduct::pair(2, 3), 1);
        const Eigen::VectorXcd before = o.state();
        o.braid(2, BraidSense::Clockwise);
        o.braid(2, BraidSense::Clockwise);
        const double overlap = std::abs(before.dot(o.state()));
        CHECK(overlap == doctest::Approx(label == 0 ? 0.0 : 1.0));
    }
}

TEST_CASE("ITC failures") {
    Rng rng(4);
    Lattice lat(Topology::Torus, 6);
    const CodeState st = CodeState::itc(1, 1);

    AnyonSystem wound = prepare(lat, st, rng);
    wound.pair_create(lat.site(2, 0), lat.site(2, 1), Charge::Sigma);
    for (int c = 1; c < 6; ++c) wound.hop(lat.site(2, c), lat.site(2, (c + 1) % 6));
    CHECK_FALSE(verify(wound, st, rng));

    AnyonSystem psi = prepare(lat, st, rng);
    psi.pair_create(lat.site(0, 3), lat.site(1, 3), Charge::Psi);
    for (int r = 1; r < 6; ++r) psi.hop(lat.site(r, 3), lat.site((r + 1) % 6, 3));
    CHECK_FALSE(verify(psi, st, rng));

    AnyonSystem residual = prepare(lat, st, rng);
    residual.pair_create(lat.site(0, 3), lat.site(1, 3), Charge::Psi);
    CHECK_FALSE(verify(residual, st, rng));
}

TEST_CASE("ITC verification ignores contractible histories") {
    Rng rng(5);
    Lattice lat(Topology::Torus, 6);
    for (auto [lh, lv] : {std::pair{1, 1}, {1, -1}, {-1, 1}}) {
        const CodeState st = CodeState::itc(lh, lv);
        AnyonSystem sys = prepare(lat, st, rng);
        // A sigma pair whose partner runs around a plaquette next to the seams.
        sys.pair_create(lat.site(5, 5), lat.site(0, 5), Charge::Sigma);
        walk(sys, {lat.site(0, 5), lat.site(0, 0), lat.site(5, 0), lat.site(5, 5)});
        CHECK(sys.decohere_site(lat.site(5, 5), rng) == Charge::Vacuum);
        CHECK(verify(sys, st, rng));
    }
}
