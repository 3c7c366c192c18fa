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

#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "isingsim/anyon_model.hpp"
#include "isingsim/harness.hpp"
#include "isingsim/matching.hpp"
#include "json.hpp"

using namespace isingsim;
using nlohmann::ordered_json;

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App *app, Common &c, bool needs_config) {
    auto *opt = app->add_option("--config", c.config, "INI config file")->check(CLI::ExistingFile);
    if (needs_config) opt->required();
    app->add_option("--seed", c.seed, "Override the base seed");
    app->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "Output path (default: stdout)");
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void emit(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw HarnessError("cannot write " + path);
    f << text;
}

ordered_json estimate_json(const ThresholdEstimate &e) {
    return {{"t_star", e.t_star},
            {"ci", {e.ci_low, e.ci_high}},
            {"pair", {e.L_small, e.L_large}},
            {"bootstrap", e.bootstrap},
            {"bootstrap_used", e.bootstrap_used}};
}

ordered_json summarize(const std::vector<PointResult> &rows, int bootstrap, std::uint64_t seed) {
    std::vector<std::string> states;
    for (const auto &r : rows) {
        const auto s = r.spec.state.str();
        if (std::find(states.begin(), states.end(), s) == states.end()) states.push_back(s);
    }
    ordered_json out = ordered_json::object();
    ordered_json per = ordered_json::array();
    std::optional<double> code_t;
    bool complete = true;
    for (const auto &s : states) {
        ordered_json item{{"state", s}};
        try {
            const auto e = estimate_threshold(curves_for(rows, s), bootstrap, seed);
            item.update(estimate_json(e));
            item["p_iid"] = iid_equivalent(e.t_star);
            code_t = code_t ? std::min(*code_t, e.t_star) : e.t_star;
        } catch (const HarnessError &err) {
            item["error"] = err.what();
            complete = false;
        }
        per.push_back(item);
    }
    out["quasi_thresholds"] = per;
    out["code_threshold"] = complete && code_t ? ordered_json(*code_t) : ordered_json(nullptr);
    return out;
}

ordered_json rows_json(const std::vector<PointResult> &rows) {
    ordered_json arr = ordered_json::array();
    for (const auto &r : rows)
        arr.push_back({{"code", r.spec.state.str()},
                       {"decoder", to_string(r.spec.decoder)},
                       {"noise_model", to_string(r.spec.noise)},
                       {"L", r.spec.L},
                       {"t_sim", r.spec.t_sim},
                       {"trials", r.trials},
                       {"failures", r.failures},
                       {"failure_rate", r.failure_rate()},
                       {"std_err", r.std_err()},
                       {"seed", r.seed}});
    return arr;
}

int cmd_run(const Common &c) {
    auto cfg = load_config(c.config);
    if (c.seed) cfg.seed = *c.seed;
    const auto rows = run_experiment(cfg, c.workers);
    const auto out = c.out.empty() ? cfg.out : c.out;
    if (c.format == "csv") {
        emit(out, format_csv(rows));
        std::cerr << summarize(rows, cfg.bootstrap, cfg.seed).dump(2) << "\n";
    } else {
        ordered_json j{{"rows", rows_json(rows)}, {"summary", summarize(rows, cfg.bootstrap, cfg.seed)}};
        emit(out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_threshold(const Common &c, const std::string &in_path, int bootstrap) {
    std::ifstream in(in_path);
    if (!in) throw HarnessError("cannot open " + in_path);
    const auto rows = parse_csv(in);
    if (rows.empty()) throw HarnessError("no data rows");
    emit(c.out, summarize(rows, bootstrap, c.seed.value_or(1)).dump(2) + "\n");
    return 0;
}

int cmd_lifetime(const Common &c) {
    auto cfg = load_lifetime_config(c.config);
    if (c.seed) cfg.base.seed = *c.seed;
    const auto pts = lifetime_scan(cfg, c.workers);
    const auto x = lifetime_x(pts, cfg.base.metropolis);
    std::vector<double> y;
    for (const auto &p : pts) y.push_back(p.estimate.t_star);
    const auto fit = fit_arrhenius(x, y);
    if (c.format == "csv") {
        emit(c.out, format_lifetime_csv(pts, cfg.base.metropolis));
        std::cerr << "fit: a=" << fit.a << " b=" << fit.b << " r2=" << fit.r2 << "\n";
    } else {
        ordered_json table = ordered_json::array();
        for (std::size_t k = 0; k < pts.size(); ++k)
            table.push_back({{"beta", pts[k].beta}, {"m_beta", x[k]}, {"estimate", estimate_json(pts[k].estimate)},
                             {"rows", rows_json(pts[k].rows)}});
        ordered_json j{{"lifetimes", table}, {"fit", {{"a", fit.a}, {"b", fit.b}, {"r2", fit.r2}}}};
        emit(c.out, j.dump(2) + "\n");
    }
    return 0;
}

bool selftest_line(const std::string &name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    return ok;
}

int cmd_selftest(const Common &c) {
    bool ok = true;
    ok &= selftest_line("ising model consistency", check_consistency(ising()).all_passed());

    Rng rng(c.seed.value_or(1));
    int agree = 0;
    const int graphs = 500;
    for (int k = 0; k < graphs; ++k) {
        WeightedGraph g{2 * (1 + static_cast<int>(uniform_below(rng, 6))), {}};
        for (int a = 0; a < g.n; ++a)
            for (int b = a + 1; b < g.n; ++b)
                if (coin(rng)) g.add_edge(a, b, static_cast<std::int64_t>(uniform_below(rng, 50)));
        const auto fast = min_weight_perfect_matching(g), slow = brute_force_mwpm(g);
        agree += fast.has_value() == slow.has_value() && (!fast || fast->cost == slow->cost);
    }
    ok &= selftest_line("blossom matches brute force", agree == graphs);

    bool clean = true;
    for (const auto &state : {CodeState::ifc(IfcLabel::Zero), CodeState::ifc(IfcLabel::Plus), CodeState::itc(1, -1)})
        for (auto d : {DecoderKind::ClusterSimple, DecoderKind::ClusterAware, DecoderKind::PMA}) {
            PointSpec spec;
            spec.state = state;
            spec.decoder = d;
            spec.L = 8;
            clean &= !run_trial(spec, 7).failure;
        }
    ok &= selftest_line("noiseless trials succeed", clean);

    PointSpec spec;
    spec.state = CodeState::ifc(IfcLabel::Zero);
    spec.L = 8;
    spec.t_sim = 0.1;
    const auto a = run_point_serial(spec, 64, 3, 0), b = run_point_parallel(spec, 64, 3, 0, c.workers + 1);
    ok &= selftest_line("serial and parallel loops agree", a.failures == b.failures);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Ising anyon quantum memory simulator"};
    app.require_subcommand(1);
    Common run_c, thr_c, life_c, self_c;
    auto *run = app.add_subcommand("run", "Run a threshold experiment from a config file");
    add_common(run, run_c, true);
    auto *thr = app.add_subcommand("threshold", "Estimate thresholds from a results CSV");
    add_common(thr, thr_c, false);
    std::string in_path;
    int bootstrap = 200;
    thr->add_option("--in", in_path, "Results CSV")->required()->check(CLI::ExistingFile);
    thr->add_option("--bootstrap", bootstrap, "Bootstrap resamples")->check(CLI::NonNegativeNumber);
    auto *life = app.add_subcommand("lifetime", "Metropolis lifetime scan with Arrhenius fit");
    add_common(life, life_c, true);
    auto *self = app.add_subcommand("selftest", "Quick oracle checks");
    add_common(self, self_c, false);
    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) return cmd_run(run_c);
        if (*thr) return cmd_threshold(thr_c, in_path, bootstrap);
        if (*life) return cmd_lifetime(life_c);
        if (*self) return cmd_selftest(self_c);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
