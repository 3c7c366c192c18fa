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

#ifndef ISINGSIM_HARNESS_HPP_
#define ISINGSIM_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingsim/decoders.hpp"
#include "isingsim/noise.hpp"

namespace isingsim {

class HarnessError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// standard: equal psi and sigma creation. psi_only: no sigma creation.
/// decoherence: standard rates with p_d = 1. hopping: hopping-dominated
/// rates. custom: rates taken from the config. metropolis: thermal noise.
enum class NoiseModel { Standard, PsiOnly, Decoherence, Hopping, Custom, Metropolis };
std::string to_string(NoiseModel m);
NoiseModel parse_noise_model(const std::string &s);
NoiseRates preset_rates(NoiseModel m);

struct PointSpec {
    CodeState state;
    DecoderKind decoder = DecoderKind::PMA;
    DecoderOptions decoder_options;
    NoiseModel noise = NoiseModel::Standard;
    NoiseRates rates;  // used unless noise is Metropolis
    MetropolisParams metropolis;
    int L = 8;
    double t_sim = 0.0;
    ItcCheck itc_check = ItcCheck::Strict;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    std::uint64_t events = 0;
    DecoderReport report;
    bool failure = false;
};

/// prepare, sample Poisson(t_sim * |E|) noise steps, decode, verify.
TrialRecord run_trial(const PointSpec &spec, std::uint64_t seed);

struct PointResult {
    PointSpec spec;
    int trials = 0;
    int failures = 0;
    std::uint64_t seed = 0;
    double failure_rate() const { return trials ? static_cast<double>(failures) / trials : 0.0; }
    double std_err() const;
};

/// Seeds trial k with trial_seed(base, point, k). The parallel loop splits
/// trials across `workers` threads and returns the same counts as the serial one.
PointResult run_point_serial(const PointSpec &spec, int trials, std::uint64_t base, std::uint64_t point);
PointResult run_point_parallel(const PointSpec &spec, int trials, std::uint64_t base, std::uint64_t point,
                               int workers);

struct ExperimentConfig {
    std::vector<CodeState> states;
    std::vector<int> sizes;
    DecoderKind decoder = DecoderKind::PMA;
    DecoderOptions decoder_options;
    NoiseModel noise = NoiseModel::Standard;
    NoiseRates rates;
    MetropolisParams metropolis;
    std::vector<double> t_grid;
    int trials = 100;
    std::uint64_t seed = 1;
    int bootstrap = 200;
    ItcCheck itc_check = ItcCheck::Strict;
    std::string out;

    void validate() const;
};

/// Reads the INI schema documented in the README.
ExperimentConfig load_config(const std::string &path);
ExperimentConfig parse_config(std::istream &in);

/// Points are enumerated state-major, then L, then t.
std::vector<PointSpec> expand_points(const ExperimentConfig &cfg);
std::vector<PointResult> run_experiment(const ExperimentConfig &cfg, int workers);

extern const char *const kCsvHeader;
std::string format_csv_row(const PointResult &r);
std::string format_csv(const std::vector<PointResult> &rows);
/// Parses a results CSV back into curves; throws HarnessError on a bad header.
std::vector<PointResult> parse_csv(std::istream &in);

struct Curve {
    int L = 0;
    std::vector<double> t;
    std::vector<int> trials;
    std::vector<int> failures;
};

struct ThresholdEstimate {
    double t_star = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int L_small = 0;
    int L_large = 0;
    int bootstrap = 0;
    int bootstrap_used = 0;
};

/// Pool-adjacent-violators fit, non-decreasing, weighted.
std::vector<double> isotonic_fit(const std::vector<double> &y, const std::vector<double> &w);

/// Crossing of the two largest sizes' isotonic curves, linearly interpolated.
/// With several upward sign changes the one that best separates "large below
/// small" from "large above small" wins. CI from resampling each point's
/// trials. Throws HarnessError("no crossing").
ThresholdEstimate estimate_threshold(const std::vector<Curve> &curves, int bootstrap = 200, std::uint64_t seed = 1);
std::optional<double> crossing_point(const Curve &small, const Curve &large);

/// Groups results of one state into per-L curves.
std::vector<Curve> curves_for(const std::vector<PointResult> &rows, const std::string &state);

double iid_equivalent(double t_sim);

struct ArrheniusFit {
    double a = 0.0;
    double b = 0.0;
    double r2 = 0.0;
};

/// Least-squares fit of log y = log a + b x.
ArrheniusFit fit_arrhenius(const std::vector<double> &x, const std::vector<double> &y);

struct LifetimePoint {
    double beta = 0.0;
    ThresholdEstimate estimate;
    std::vector<PointResult> rows;
};

struct LifetimeConfig {
    ExperimentConfig base;  // noise must be Metropolis; t_grid is ignored
    std::vector<double> betas;
    /// Grid for each beta: `factors` times a time scale found by doubling
    /// from `probe_start` until the smallest size fails at `probe_rate`.
    std::vector<double> factors{0.4, 0.55, 0.7, 0.85, 1.0, 1.2, 1.45, 1.75};
    double probe_start = 0.05;
    double probe_rate = 0.3;
    int probe_trials = 200;
};

LifetimeConfig load_lifetime_config(const std::string &path);
LifetimeConfig parse_lifetime_config(std::istream &in);
std::vector<LifetimePoint> lifetime_scan(const LifetimeConfig &cfg, int workers);

/// x = beta * m_sigma for each point; the Arrhenius fit uses these.
std::vector<double> lifetime_x(const std::vector<LifetimePoint> &pts, const MetropolisParams &m);
/// Header beta,m_beta,t_star,ci_low,ci_high.
std::string format_lifetime_csv(const std::vector<LifetimePoint> &pts, const MetropolisParams &m);

}  // namespace isingsim

#endif  // ISINGSIM_HARNESS_HPP_
