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

#include "isingsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace isingsim {

std::string to_string(NoiseModel m) {
    switch (m) {
        case NoiseModel::Standard:
            return "standard";
        case NoiseModel::PsiOnly:
            return "psi_only";
        case NoiseModel::Decoherence:
            return "decoherence";
        case NoiseModel::Hopping:
            return "hopping";
        case NoiseModel::Custom:
            return "custom";
        case NoiseModel::Metropolis:
            return "metropolis";
    }
    return "?";
}

NoiseModel parse_noise_model(const std::string &s) {
    for (auto m : {NoiseModel::Standard, NoiseModel::PsiOnly, NoiseModel::Decoherence, NoiseModel::Hopping,
                   NoiseModel::Custom, NoiseModel::Metropolis})
        if (to_string(m) == s) return m;
    throw HarnessError("unknown noise model: " + s);
}

NoiseRates preset_rates(NoiseModel m) {
    switch (m) {
        case NoiseModel::PsiOnly:
            return {1.0, 0.0, 0.0, 0.0, 0.0};
        case NoiseModel::Decoherence:
            return {0.5, 0.5, 0.0, 0.0, 1.0};
        case NoiseModel::Hopping:
            return {0.05, 0.05, 0.9, 0.0, 0.0};
        default:
            return {};
    }
}

namespace {

Topology topology_for(CodeKind k) { return k == CodeKind::IFC ? Topology::Sphere : Topology::Torus; }

std::string noise_label(const PointSpec &s) {
    if (s.noise != NoiseModel::Metropolis) return to_string(s.noise);
    char buf[64];
    std::snprintf(buf, sizeof buf, "metropolis:beta=%.6g", s.metropolis.beta);
    return buf;
}

std::vector<std::string> split(const std::string &s, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        cur.erase(0, cur.find_first_not_of(" \t"));
        cur.erase(cur.find_last_not_of(" \t") + 1);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

CodeState parse_state(CodeKind code, const std::string &s) {
    if (code == CodeKind::IFC) return CodeState::ifc(parse_ifc_label(s));
    if (s.size() != 2 || std::string("+-").find(s[0]) == std::string::npos ||
        std::string("+-").find(s[1]) == std::string::npos)
        throw HarnessError("bad itc state: " + s);
    return CodeState::itc(s[0] == '+' ? 1 : -1, s[1] == '+' ? 1 : -1);
}

CodeState parse_state_label(const std::string &s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw HarnessError("bad code label: " + s);
    return parse_state(parse_code(s.substr(0, slash)), s.substr(slash + 1));
}

std::vector<double> parse_grid(const boost::property_tree::ptree &pt) {
    std::vector<double> out;
    if (auto list = pt.get_optional<std::string>("grid.t")) {
        for (const auto &v : split(*list)) out.push_back(std::stod(v));
        return out;
    }
    const double lo = pt.get<double>("grid.t_min"), hi = pt.get<double>("grid.t_max"), step = pt.get<double>("grid.t_step");
    if (step <= 0) throw HarnessError("grid.t_step must be positive");
    const auto n = static_cast<long>(std::llround((hi - lo) / step));
    for (long k = 0; k <= n; ++k) out.push_back(std::round((lo + k * step) * 1e9) / 1e9);
    return out;
}

ExperimentConfig from_ptree(const boost::property_tree::ptree &pt) {
    ExperimentConfig c;
    const auto code = parse_code(pt.get<std::string>("experiment.code"));
    const auto states = pt.get<std::string>("experiment.states", code == CodeKind::IFC ? "zero,plus" : "++");
    for (const auto &s : split(states)) c.states.push_back(parse_state(code, s));
    for (const auto &s : split(pt.get<std::string>("experiment.sizes"))) c.sizes.push_back(std::stoi(s));
    c.trials = pt.get<int>("experiment.trials", c.trials);
    c.seed = pt.get<std::uint64_t>("experiment.seed", c.seed);
    c.bootstrap = pt.get<int>("experiment.bootstrap", c.bootstrap);
    c.out = pt.get<std::string>("experiment.out", "");
    try {
        c.itc_check = parse_itc_check(pt.get<std::string>("experiment.itc_check", "strict"));
    } catch (const std::invalid_argument &e) {
        throw HarnessError(std::string("config: ") + e.what());
    }

    c.decoder = parse_decoder(pt.get<std::string>("decoder.kind", "pma"));
    c.decoder_options.growth = pt.get<int>("decoder.growth", c.decoder_options.growth);
    c.decoder_options.knn = pt.get<int>("decoder.knn", c.decoder_options.knn);
    c.decoder_options.prune_above = pt.get<int>("decoder.prune_above", c.decoder_options.prune_above);

    c.noise = parse_noise_model(pt.get<std::string>("noise.model", "standard"));
    c.rates = preset_rates(c.noise);
    if (c.noise == NoiseModel::Custom) {
        c.rates.create_psi = pt.get<double>("noise.create_psi", 0.0);
        c.rates.create_sigma = pt.get<double>("noise.create_sigma", 0.0);
        c.rates.hop = pt.get<double>("noise.hop", 0.0);
        c.rates.exchange = pt.get<double>("noise.exchange", 0.0);
        c.rates.p_decohere = pt.get<double>("noise.p_decohere", 0.0);
    }
    c.metropolis.m_psi = pt.get<double>("noise.m_psi", c.metropolis.m_psi);
    c.metropolis.m_sigma = pt.get<double>("noise.m_sigma", c.metropolis.m_sigma);
    c.metropolis.beta = pt.get<double>("noise.beta", c.metropolis.beta);
    if (pt.get_child_optional("grid")) c.t_grid = parse_grid(pt);
    return c;
}

int binomial(Rng &rng, int n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    int k = 0;
    for (int i = 0; i < n; ++i) k += uniform01(rng) < p;
    return k;
}

}  // namespace

TrialRecord run_trial(const PointSpec &spec, std::uint64_t seed) {
    TrialRecord rec;
    rec.seed = seed;
    Lattice lat(topology_for(spec.state.code), spec.L);
    Rng rng(seed);
    auto sys = prepare(lat, spec.state, rng);
    rec.events = sample_event_count(spec.t_sim, lat.edges().size(), rng);
    if (spec.noise == NoiseModel::Metropolis) {
        for (std::uint64_t k = 0; k < rec.events; ++k) metropolis_step(sys, spec.metropolis, rng);
    } else {
        const auto rates = spec.rates.normalized();
        for (std::uint64_t k = 0; k < rec.events; ++k) fixed_rate_step(sys, rates, rng);
    }
    rec.report = decode(spec.decoder, sys, spec.state.code, rng, spec.decoder_options);
    rec.failure = !verify(sys, spec.state, rng, spec.itc_check);
    return rec;
}

double PointResult::std_err() const {
    if (trials == 0) return 0.0;
    const double p = failure_rate();
    return std::sqrt(p * (1.0 - p) / trials);
}

PointResult run_point_serial(const PointSpec &spec, int trials, std::uint64_t base, std::uint64_t point) {
    PointResult r{spec, trials, 0, base};
    for (int k = 0; k < trials; ++k) r.failures += run_trial(spec, trial_seed(base, point, k)).failure;
    return r;
}

PointResult run_point_parallel(const PointSpec &spec, int trials, std::uint64_t base, std::uint64_t point,
                               int workers) {
    int failures = 0;
    std::exception_ptr error;
#pragma omp parallel for num_threads(std::max(1, workers)) schedule(dynamic, 4) reduction(+ : failures)
    for (int k = 0; k < trials; ++k) {
        try {
            failures += run_trial(spec, trial_seed(base, point, static_cast<std::uint64_t>(k))).failure;
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return PointResult{spec, trials, failures, base};
}

void ExperimentConfig::validate() const {
    if (states.empty()) throw HarnessError("config: no states");
    for (std::size_t k = 1; k < states.size(); ++k)
        if (states[k].code != states[0].code) throw HarnessError("config: states mix codes");
    if (sizes.empty()) throw HarnessError("config: no lattice sizes");
    for (int L : sizes)
        if (L < 4 || L % 2 != 0) throw HarnessError("config: lattice sizes must be even and at least 4");
    if (t_grid.empty()) throw HarnessError("config: empty t grid");
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (t_grid[k] < 0) throw HarnessError("config: negative t");
        if (k > 0 && t_grid[k] <= t_grid[k - 1]) throw HarnessError("config: t grid must be strictly increasing");
    }
    if (trials < 1) throw HarnessError("config: trials must be at least 1");
    if (noise == NoiseModel::Metropolis)
        metropolis.validate();
    else
        rates.normalized();
}

ExperimentConfig parse_config(std::istream &in) {
    boost::property_tree::ptree pt;
    try {
        boost::property_tree::ini_parser::read_ini(in, pt);
        auto c = from_ptree(pt);
        c.validate();
        return c;
    } catch (const boost::property_tree::ptree_error &e) {
        throw HarnessError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw HarnessError(std::string("config: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open " + path);
    return parse_config(in);
}

std::vector<PointSpec> expand_points(const ExperimentConfig &cfg) {
    std::vector<PointSpec> out;
    for (const auto &state : cfg.states)
        for (int L : cfg.sizes)
            for (double t : cfg.t_grid)
                out.push_back({state, cfg.decoder, cfg.decoder_options, cfg.noise, cfg.rates, cfg.metropolis, L, t,
                               cfg.itc_check});
    return out;
}

std::vector<PointResult> run_experiment(const ExperimentConfig &cfg, int workers) {
    cfg.validate();
    std::vector<PointResult> out;
    const auto points = expand_points(cfg);
    for (std::size_t k = 0; k < points.size(); ++k)
        out.push_back(workers <= 1 ? run_point_serial(points[k], cfg.trials, cfg.seed, k)
                                   : run_point_parallel(points[k], cfg.trials, cfg.seed, k, workers));
    return out;
}

const char *const kCsvHeader = "code,decoder,noise_model,L,t_sim,trials,failures,failure_rate,std_err,seed";

std::string format_csv_row(const PointResult &r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%d,%.6g,%d,%d,%.6f,%.6f,%llu", r.spec.state.str().c_str(),
                  to_string(r.spec.decoder).c_str(), noise_label(r.spec).c_str(), r.spec.L, r.spec.t_sim, r.trials,
                  r.failures, r.failure_rate(), r.std_err(), static_cast<unsigned long long>(r.seed));
    return buf;
}

std::string format_csv(const std::vector<PointResult> &rows) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto &r : rows) out += format_csv_row(r) + "\n";
    return out;
}

std::vector<PointResult> parse_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw HarnessError("results CSV: unexpected header");
    std::vector<PointResult> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (f.size() != 10) throw HarnessError("results CSV: expected 10 columns in: " + line);
        PointResult r;
        try {
            r.spec.state = parse_state_label(f[0]);
            r.spec.decoder = parse_decoder(f[1]);
            const auto colon = f[2].find(':');
            r.spec.noise = parse_noise_model(f[2].substr(0, colon));
            if (r.spec.noise == NoiseModel::Metropolis) {
                const auto eq = f[2].find('=');
                if (eq == std::string::npos) throw HarnessError("results CSV: metropolis label without beta");
                r.spec.metropolis.beta = std::stod(f[2].substr(eq + 1));
            } else {
                r.spec.rates = preset_rates(r.spec.noise);
            }
            r.spec.L = std::stoi(f[3]);
            r.spec.t_sim = std::stod(f[4]);
            r.trials = std::stoi(f[5]);
            r.failures = std::stoi(f[6]);
            r.seed = std::stoull(f[9]);
        } catch (const std::invalid_argument &e) {
            throw HarnessError(std::string("results CSV: ") + e.what() + " in: " + line);
        }
        out.push_back(r);
    }
    return out;
}

std::vector<double> isotonic_fit(const std::vector<double> &y, const std::vector<double> &w) {
    if (y.size() != w.size()) throw HarnessError("isotonic_fit: size mismatch");
    struct Pool {
        double sum, weight;
        std::size_t count;
    };
    std::vector<Pool> pools;
    for (std::size_t k = 0; k < y.size(); ++k) {
        pools.push_back({y[k] * w[k], w[k], 1});
        while (pools.size() > 1) {
            auto &b = pools[pools.size() - 1];
            auto &a = pools[pools.size() - 2];
            const double ma = a.weight > 0 ? a.sum / a.weight : 0.0;
            const double mb = b.weight > 0 ? b.sum / b.weight : 0.0;
            if (ma <= mb) break;
            a.sum += b.sum;
            a.weight += b.weight;
            a.count += b.count;
            pools.pop_back();
        }
    }
    std::vector<double> out;
    for (const auto &p : pools) out.insert(out.end(), p.count, p.weight > 0 ? p.sum / p.weight : 0.0);
    return out;
}

std::optional<double> crossing_point(const Curve &small, const Curve &large) {
    if (small.t != large.t) throw HarnessError("crossing_point: curves use different t grids");
    const std::size_t n = small.t.size();
    auto smooth = [](const Curve &c) {
        std::vector<double> y, w;
        for (std::size_t k = 0; k < c.t.size(); ++k) {
            y.push_back(c.trials[k] ? static_cast<double>(c.failures[k]) / c.trials[k] : 0.0);
            w.push_back(c.trials[k]);
        }
        return isotonic_fit(y, w);
    };
    const auto fs = smooth(small), fl = smooth(large);
    // Candidate crossings are the upward sign changes of d = large - small.
    // The chosen one best fits the single-crossing shape (d <= 0 below,
    // d >= 0 above), measured by the summed size of the violations.
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = fl[k] - fs[k];
    std::optional<double> best;
    double best_cost = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!(d[k] < 0.0 && d[k + 1] >= 0.0)) continue;
        double cost = 0.0;
        for (std::size_t j = 0; j < n; ++j) cost += j <= k ? std::max(d[j], 0.0) : std::max(-d[j], 0.0);
        if (best && cost >= best_cost) continue;
        best_cost = cost;
        best = small.t[k] + (small.t[k + 1] - small.t[k]) * (-d[k]) / (d[k + 1] - d[k]);
    }
    return best;
}

ThresholdEstimate estimate_threshold(const std::vector<Curve> &curves, int bootstrap, std::uint64_t seed) {
    if (curves.size() < 2) throw HarnessError("estimate_threshold: need at least two sizes");
    std::vector<Curve> sorted = curves;
    std::sort(sorted.begin(), sorted.end(), [](const Curve &a, const Curve &b) { return a.L < b.L; });
    const Curve &small = sorted[sorted.size() - 2], &large = sorted.back();
    if (small.t.size() < 4) throw HarnessError("estimate_threshold: need at least four grid points");
    const auto t = crossing_point(small, large);
    if (!t) throw HarnessError("no crossing");
    ThresholdEstimate est;
    est.t_star = *t;
    est.L_small = small.L;
    est.L_large = large.L;
    est.bootstrap = bootstrap;
    Rng rng(seed);
    std::vector<double> samples;
    auto resample = [&](const Curve &c) {
        Curve r = c;
        for (std::size_t k = 0; k < c.t.size(); ++k)
            r.failures[k] = binomial(rng, c.trials[k], c.trials[k] ? static_cast<double>(c.failures[k]) / c.trials[k] : 0.0);
        return r;
    };
    for (int b = 0; b < bootstrap; ++b) {
        const auto rs = resample(small);
        const auto rl = resample(large);
        if (auto x = crossing_point(rs, rl)) samples.push_back(*x);
    }
    est.bootstrap_used = static_cast<int>(samples.size());
    est.ci_low = est.ci_high = est.t_star;
    if (!samples.empty()) {
        std::sort(samples.begin(), samples.end());
        auto q = [&](double p) { return samples[static_cast<std::size_t>(std::floor(p * (samples.size() - 1) + 0.5))]; };
        est.ci_low = std::min(est.t_star, q(0.025));
        est.ci_high = std::max(est.t_star, q(0.975));
    }
    return est;
}

std::vector<Curve> curves_for(const std::vector<PointResult> &rows, const std::string &state) {
    std::map<int, std::vector<const PointResult *>> by_L;
    for (const auto &r : rows)
        if (r.spec.state.str() == state) by_L[r.spec.L].push_back(&r);
    std::vector<Curve> out;
    for (auto &[L, pts] : by_L) {
        std::stable_sort(pts.begin(), pts.end(), [](auto *a, auto *b) { return a->spec.t_sim < b->spec.t_sim; });
        Curve c;
        c.L = L;
        for (auto *p : pts) {
            c.t.push_back(p->spec.t_sim);
            c.trials.push_back(p->trials);
            c.failures.push_back(p->failures);
        }
        out.push_back(std::move(c));
    }
    return out;
}

double iid_equivalent(double t_sim) {
    if (t_sim < 0) throw HarnessError("iid_equivalent: negative t");
    return -0.5 * std::expm1(-2.0 * t_sim);
}

ArrheniusFit fit_arrhenius(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) throw HarnessError("fit_arrhenius: need two or more points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> ly;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (y[k] <= 0) throw HarnessError("fit_arrhenius: non-positive value");
        ly.push_back(std::log(y[k]));
        sx += x[k];
        sy += ly[k];
        sxx += x[k] * x[k];
        sxy += x[k] * ly[k];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0) throw HarnessError("fit_arrhenius: degenerate x");
    ArrheniusFit f;
    f.b = (n * sxy - sx * sy) / den;
    const double la = (sy - f.b * sx) / n;
    f.a = std::exp(la);
    double ss_res = 0, ss_tot = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        ss_res += std::pow(ly[k] - la - f.b * x[k], 2);
        ss_tot += std::pow(ly[k] - sy / n, 2);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

LifetimeConfig parse_lifetime_config(std::istream &in) {
    boost::property_tree::ptree pt;
    try {
        boost::property_tree::ini_parser::read_ini(in, pt);
        LifetimeConfig c;
        c.base = from_ptree(pt);
        c.base.noise = NoiseModel::Metropolis;
        for (const auto &s : split(pt.get<std::string>("lifetime.betas"))) c.betas.push_back(std::stod(s));
        if (auto f = pt.get_optional<std::string>("lifetime.factors")) {
            c.factors.clear();
            for (const auto &s : split(*f)) c.factors.push_back(std::stod(s));
        }
        c.probe_start = pt.get<double>("lifetime.probe_start", c.probe_start);
        c.probe_rate = pt.get<double>("lifetime.probe_rate", c.probe_rate);
        c.probe_trials = pt.get<int>("lifetime.probe_trials", c.probe_trials);
        if (c.betas.size() < 4) throw HarnessError("lifetime: need at least four temperatures");
        return c;
    } catch (const boost::property_tree::ptree_error &e) {
        throw HarnessError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw HarnessError(std::string("config: ") + e.what());
    }
}

LifetimeConfig load_lifetime_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open " + path);
    return parse_lifetime_config(in);
}

std::vector<LifetimePoint> lifetime_scan(const LifetimeConfig &cfg, int workers) {
    std::vector<LifetimePoint> out;
    std::uint64_t point = 0;
    auto run = [&](const PointSpec &spec, int trials) {
        const auto k = point++;
        return workers <= 1 ? run_point_serial(spec, trials, cfg.base.seed, k)
                            : run_point_parallel(spec, trials, cfg.base.seed, k, workers);
    };
    for (double beta : cfg.betas) {
        ExperimentConfig ec = cfg.base;
        ec.noise = NoiseModel::Metropolis;
        ec.metropolis.beta = beta;
        ec.metropolis.validate();
        PointSpec probe{ec.states.front(), ec.decoder, ec.decoder_options, ec.noise, ec.rates, ec.metropolis,
                        *std::min_element(ec.sizes.begin(), ec.sizes.end()), cfg.probe_start, ec.itc_check};
        while (run(probe, cfg.probe_trials).failure_rate() < cfg.probe_rate) {
            probe.t_sim *= 2.0;
            if (probe.t_sim > 1e6) throw HarnessError("lifetime: failure rate never reaches the probe level");
        }
        ec.t_grid.clear();
        for (double f : cfg.factors) ec.t_grid.push_back(std::round(f * probe.t_sim * 1e9) / 1e9);
        LifetimePoint lp;
        lp.beta = beta;
        for (const auto &spec : expand_points(ec)) lp.rows.push_back(run(spec, ec.trials));
        lp.estimate = estimate_threshold(curves_for(lp.rows, ec.states.front().str()), ec.bootstrap, ec.seed);
        out.push_back(std::move(lp));
    }
    return out;
}

std::vector<double> lifetime_x(const std::vector<LifetimePoint> &pts, const MetropolisParams &m) {
    std::vector<double> x;
    for (const auto &p : pts) x.push_back(p.beta * m.m_sigma);
    return x;
}

std::string format_lifetime_csv(const std::vector<LifetimePoint> &pts, const MetropolisParams &m) {
    std::string text = "beta,m_beta,t_star,ci_low,ci_high\n";
    const auto x = lifetime_x(pts, m);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6f,%.6f,%.6f\n", pts[k].beta, x[k], pts[k].estimate.t_star,
                      pts[k].estimate.ci_low, pts[k].estimate.ci_high);
        text += buf;
    }
    return text;
}

}  // namespace isingsim
