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

#ifndef ISINGSIM_NOISE_HPP_
#define ISINGSIM_NOISE_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "isingsim/anyon_system.hpp"

namespace isingsim {

class NoiseError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Relative rates of the elementary processes plus the per-site decoherence
/// probability applied after every step.
struct NoiseRates {
    double create_psi = 0.5;
    double create_sigma = 0.5;
    double hop = 0.0;
    double exchange = 0.0;
    double p_decohere = 0.0;

    /// Rescales the four rates to sum to one. Throws on negative or all-zero
    /// rates, or p_decohere outside [0, 1].
    NoiseRates normalized() const;
};

struct MetropolisParams {
    double m_psi = 1.0;
    double m_sigma = 1.0;
    double beta = 1.0;
    void validate() const;
};

enum class Process { None, CreatePsi, CreateSigma, Hop, Exchange };
std::string to_string(Process p);

/// Poisson(t_sim * edge_count) number of elementary steps.
std::uint64_t sample_event_count(double t_sim, std::size_t edge_count, Rng &rng);

/// Processes with a nonzero effect on the directed edge i -> j given the
/// current occupations.
bool process_allowed(const AnyonSystem &sys, int i, int j, Process p);

/// One fixed-rate step on a uniformly random directed edge. Returns the
/// process applied (None when no allowed process has a positive rate).
Process fixed_rate_step(AnyonSystem &sys, const NoiseRates &rates, Rng &rng);

struct MetropolisOutcome {
    Charge proposed = Charge::Vacuum;
    bool accepted = true;
};

/// Proposal charge for the pair created on an edge whose endpoints hold
/// settled charges qi and qj.
Charge sample_proposal(Charge qi, Charge qj, Rng &rng);

/// One Metropolis step on a uniformly random directed edge. Requires every
/// site to hold a settled charge; leaves it that way.
MetropolisOutcome metropolis_step(AnyonSystem &sys, const MetropolisParams &params, Rng &rng);
/// Same on the given directed edge.
MetropolisOutcome metropolis_step_on(AnyonSystem &sys, int i, int j, const MetropolisParams &params, Rng &rng);

double site_energy(Charge q, const MetropolisParams &params);

}  // namespace isingsim

#endif  // ISINGSIM_NOISE_HPP_
