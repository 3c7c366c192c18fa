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

#include "isingsim/noise.hpp"

#include <array>
#include <cmath>
#include <random>

namespace isingsim {

NoiseRates NoiseRates::normalized() const {
    const std::array<double, 4> g = {create_psi, create_sigma, hop, exchange};
    double total = 0;
    for (double x : g) {
        if (!(x >= 0) || !std::isfinite(x)) throw NoiseError("rates must be finite and non-negative");
        total += x;
    }
    if (total <= 0) throw NoiseError("at least one rate must be positive");
    if (!(p_decohere >= 0 && p_decohere <= 1)) throw NoiseError("p_decohere must lie in [0, 1]");
    NoiseRates r = *this;
    r.create_psi /= total;
    r.create_sigma /= total;
    r.hop /= total;
    r.exchange /= total;
    return r;
}

void MetropolisParams::validate() const {
    if (!(m_psi >= 0) || !(m_sigma >= 0)) throw NoiseError("masses must be non-negative");
    if (!(beta >= 0)) throw NoiseError("beta must be non-negative");
}

std::string to_string(Process p) {
    switch (p) {
        case Process::None:
            return "none";
        case Process::CreatePsi:
            return "create_psi";
        case Process::CreateSigma:
            return "create_sigma";
        case Process::Hop:
            return "hop";
        case Process::Exchange:
            return "exchange";
    }
    return "?";
}

std::uint64_t sample_event_count(double t_sim, std::size_t edge_count, Rng &rng) {
    if (!(t_sim >= 0)) throw NoiseError("t_sim must be non-negative");
    const double mean = t_sim * static_cast<double>(edge_count);
    if (mean == 0) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

namespace {

void random_directed_edge(const Lattice &lat, Rng &rng, int &i, int &j) {
    const Edge &e = lat.edges()[uniform_below(rng, lat.edges().size())];
    const bool flip = coin(rng);
    i = flip ? e.v : e.u;
    j = flip ? e.u : e.v;
}

void decohere_with_probability(AnyonSystem &sys, double p, Rng &rng) {
    if (p <= 0) return;
    const int n = sys.lattice().site_count();
    for (int s = 0; s < n; ++s)
        if (p >= 1 || uniform01(rng) < p) sys.decohere_site(s, rng);
}

Charge fuse(Charge a, Charge b) {
    if (a == Charge::Sigma || b == Charge::Sigma) throw std::logic_error("fuse: sigma has no unique product");
    return a == b ? Charge::Vacuum : Charge::Psi;
}

}  // namespace

bool process_allowed(const AnyonSystem &sys, int i, int j, Process p) {
    switch (p) {
        case Process::None:
            return false;
        case Process::CreatePsi:
        case Process::CreateSigma:
            return true;
        case Process::Hop:
            return sys.occupied(i);
        case Process::Exchange:
            return sys.occupied(i) || sys.occupied(j);
    }
    return false;
}

Process fixed_rate_step(AnyonSystem &sys, const NoiseRates &rates, Rng &rng) {
    int i, j;
    random_directed_edge(sys.lattice(), rng, i, j);
    const std::array<Process, 4> kinds = {Process::CreatePsi, Process::CreateSigma, Process::Hop, Process::Exchange};
    const std::array<double, 4> gamma = {rates.create_psi, rates.create_sigma, rates.hop, rates.exchange};
    std::array<double, 4> w{};
    double total = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        w[k] = process_allowed(sys, i, j, kinds[k]) ? gamma[k] : 0.0;
        total += w[k];
    }
    Process chosen = Process::None;
    if (total > 0) {
        double u = uniform01(rng) * total;
        for (std::size_t k = 0; k < 4; ++k) {
            if (w[k] <= 0) continue;
            chosen = kinds[k];
            if (u < w[k]) break;
            u -= w[k];
        }
    }
    switch (chosen) {
        case Process::CreatePsi:
            sys.pair_create(i, j, Charge::Psi);
            break;
        case Process::CreateSigma:
            sys.pair_create(i, j, Charge::Sigma);
            break;
        case Process::Hop:
            sys.hop(i, j);
            break;
        case Process::Exchange:
            sys.exchange(i, j, coin(rng) ? BraidSense::Clockwise : BraidSense::Anticlockwise);
            break;
        case Process::None:
            break;
    }
    decohere_with_probability(sys, rates.p_decohere, rng);
    return chosen;
}

double site_energy(Charge q, const MetropolisParams &params) {
    switch (q) {
        case Charge::Vacuum:
            return 0;
        case Charge::Psi:
            return params.m_psi;
        case Charge::Sigma:
            return params.m_sigma;
    }
    return 0;
}

Charge sample_proposal(Charge qi, Charge qj, Rng &rng) {
    // Quarters: two for vacuum, then psi and sigma; sigma takes psi's share
    // when both endpoints hold sigma.
    const auto u = uniform_below(rng, 4);
    if (u < 2) return Charge::Vacuum;
    const bool both_sigma = qi == Charge::Sigma && qj == Charge::Sigma;
    if (u == 2) return both_sigma ? Charge::Sigma : Charge::Psi;
    return Charge::Sigma;
}

MetropolisOutcome metropolis_step(AnyonSystem &sys, const MetropolisParams &params, Rng &rng) {
    int i, j;
    random_directed_edge(sys.lattice(), rng, i, j);
    return metropolis_step_on(sys, i, j, params, rng);
}

MetropolisOutcome metropolis_step_on(AnyonSystem &sys, int i, int j, const MetropolisParams &params, Rng &rng) {
    const Charge qi = sys.settled_charge(i);
    const Charge qj = sys.settled_charge(j);
    MetropolisOutcome out;
    out.proposed = sample_proposal(qi, qj, rng);
    if (out.proposed == Charge::Vacuum) return out;

    const double before = site_energy(qi, params) + site_energy(qj, params);
    auto accept = [&](double after) {
        const double delta = after - before;
        if (delta <= 0) return true;
        return uniform01(rng) < std::exp(-params.beta * delta);
    };

    if (out.proposed == Charge::Psi) {
        const Charge ni = qi == Charge::Sigma ? Charge::Sigma : fuse(qi, Charge::Psi);
        const Charge nj = qj == Charge::Sigma ? Charge::Sigma : fuse(qj, Charge::Psi);
        out.accepted = accept(site_energy(ni, params) + site_energy(nj, params));
        if (out.accepted) {
            sys.pair_create(i, j, Charge::Psi);
            sys.decohere_site(i, rng);
            sys.decohere_site(j, rng);
        }
        return out;
    }

    // Sigma pairs: the fusion outcomes are random, so the move is played out
    // on a scratch copy and committed only on acceptance.
    AnyonSystem trial = sys;
    trial.pair_create(i, j, Charge::Sigma);
    const Charge ni = trial.decohere_site(i, rng);
    const Charge nj = trial.decohere_site(j, rng);
    out.accepted = accept(site_energy(ni, params) + site_energy(nj, params));
    if (out.accepted) sys = std::move(trial);
    return out;
}

}  // namespace isingsim
