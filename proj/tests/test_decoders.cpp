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

#include "isingsim/decoders.hpp"
#include "isingsim/noise.hpp"

using namespace isingsim;

namespace {

constexpr DecoderKind kAll[] = {DecoderKind::ClusterSimple, DecoderKind::ClusterAware, DecoderKind::PMA};

std::vector<CodeState> all_states() {
    return {CodeState::ifc(IfcLabel::Zero), CodeState::ifc(IfcLabel::Plus), CodeState::itc(1, 1),
            CodeState::itc(-1, 1), CodeState::itc(1, -1)};
}

Topology topology_of(const CodeState &s) { return s.code == CodeKind::IFC ? Topology::Sphere : Topology::Torus; }

void apply_noise(AnyonSystem &sys, double t, Rng &rng) {
    const auto rates = NoiseRates{}.normalized();
    const auto events = sample_event_count(t, sys.lattice().edges().size(), rng);
    for (std::uint64_t k = 0; k < events; ++k) fixed_rate_step(sys, rates, rng);
}

bool bulk_vacuum(const AnyonSystem &sys, CodeKind code) {
    for (int s = 0; s < sys.lattice().site_count(); ++s) {
        if (code == CodeKind::IFC && sys.lattice().is_code_site(s)) continue;
        if (sys.occupied(s)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("names round trip") {
    for (auto d : kAll) CHECK(parse_decoder(to_string(d)) == d);
    CHECK_THROWS(parse_decoder("mwpm"));
}

TEST_CASE("clean input needs no fusions") {
    for (int L : {4, 8})
        for (const auto &state : all_states())
            for (auto d : kAll) {
                Lattice lat(topology_of(state), L);
                Rng rng(1);
                auto sys = prepare(lat, state, rng);
                auto rep = decode(d, sys, state.code, rng);
                INFO(state.str() << " " << to_string(d) << " L=" << L);
                CHECK(rep.fusions == 0);
                CHECK_FALSE(rep.failure_detected);
                CHECK(verify(sys, state, rng));
            }
}

TEST_CASE("decoder must match topology") {
    Lattice sphere(Topology::Sphere, 8);
    AnyonSystem sys(sphere);
    Rng rng(1);
    CHECK_THROWS(decode_pma(sys, CodeKind::ITC, rng));
}

TEST_CASE("psi pair three apart merges after two growth rounds") {
    Lattice lat(Topology::Torus, 8);
    Rng rng(3);
    auto sys = prepare(lat, CodeState::itc(1, 1), rng);
    const int a = lat.site(2, 2), b = lat.site(2, 5);
    sys.pair_create(a, lat.site(2, 3), Charge::Psi);
    sys.hop(lat.site(2, 3), lat.site(2, 4));
    sys.hop(lat.site(2, 4), b);
    auto rep = decode_cluster_simple(sys, CodeKind::ITC, rng);
    CHECK(rep.rounds == 2);
    CHECK_FALSE(rep.failure_detected);
    CHECK(verify(sys, CodeState::itc(1, 1), rng));
}

TEST_CASE("short sigma pair is always undone") {
    for (const auto &state : all_states())
        for (auto d : kAll)
            for (std::uint64_t seed = 0; seed < 8; ++seed) {
                Lattice lat(topology_of(state), 8);
                Rng rng(seed);
                auto sys = prepare(lat, state, rng);
                sys.pair_create(lat.site(4, 3), lat.site(4, 4), Charge::Sigma);
                auto rep = decode(d, sys, state.code, rng);
                INFO(state.str() << " " << to_string(d));
                CHECK(rep.fusions > 0);
                CHECK_FALSE(rep.failure_detected);
                CHECK(verify(sys, state, rng));
            }
}

TEST_CASE("psi next to a code site is absorbed there") {
    for (auto label : {IfcLabel::Zero, IfcLabel::Plus})
        for (auto d : kAll) {
            Lattice lat(Topology::Sphere, 8);
            Rng rng(4);
            const auto state = CodeState::ifc(label);
            auto sys = prepare(lat, state, rng);
            const int t = ifc_code_sites(lat)[0];
            const int nb = lat.site(1, lat.col(t));
            sys.pair_create(nb, t, Charge::Psi);
            auto rep = decode(d, sys, state.code, rng);
            INFO(to_string(d));
            CHECK(rep.fusions == 1);
            CHECK(verify(sys, state, rng));
        }
}

TEST_CASE("decoding clears the bulk and keeps the system consistent") {
    for (const auto &state : all_states())
        for (auto d : kAll)
            for (std::uint64_t seed = 0; seed < 12; ++seed) {
                Lattice lat(topology_of(state), 8);
                Rng rng(100 + seed);
                auto sys = prepare(lat, state, rng);
                apply_noise(sys, 0.15, rng);
                auto rep = decode(d, sys, state.code, rng);
                INFO(state.str() << " " << to_string(d) << " seed " << seed);
                CHECK(sys.audit().empty());
                if (!rep.failure_detected) CHECK(bulk_vacuum(sys, state.code));
            }
}

TEST_CASE("low noise is corrected") {
    for (auto d : kAll)
        for (const auto &state : {CodeState::ifc(IfcLabel::Zero), CodeState::itc(1, -1)}) {
            int ok = 0;
            const int trials = 60;
            for (int k = 0; k < trials; ++k) {
                Lattice lat(topology_of(state), 8);
                Rng rng(trial_seed(7, 0, k));
                auto sys = prepare(lat, state, rng);
                apply_noise(sys, 0.02, rng);
                decode(d, sys, state.code, rng);
                ok += verify(sys, state, rng);
            }
            INFO(state.str() << " " << to_string(d));
            CHECK(ok >= trials - 6);
        }
}

TEST_CASE("deterministic given the seed") {
    for (auto d : kAll) {
        auto once = [&] {
            Lattice lat(Topology::Torus, 8);
            Rng rng(42);
            auto sys = prepare(lat, CodeState::itc(1, 1), rng);
            apply_noise(sys, 0.2, rng);
            auto rep = decode(d, sys, CodeKind::ITC, rng);
            return std::tuple{rep.rounds, rep.fusions, rep.failure_detected, sys.dump()};
        };
        CHECK(once() == once());
    }
}

TEST_CASE("pruned matching graph agrees on small instances") {
    DecoderOptions pruned;
    pruned.prune_above = 0;
    pruned.knn = 4;
    int same = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto run = [&](const DecoderOptions &opt) {
            Lattice lat(Topology::Torus, 12);
            Rng rng(seed);
            auto sys = prepare(lat, CodeState::itc(1, 1), rng);
            apply_noise(sys, 0.08, rng);
            decode_pma(sys, CodeKind::ITC, rng, opt);
            return verify(sys, CodeState::itc(1, 1), rng);
        };
        same += run(pruned) == run(DecoderOptions{});
    }
    CHECK(same >= 16);
}
