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

#include "isingsim/decoders.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "isingsim/matching.hpp"

namespace isingsim {

std::string to_string(DecoderKind d) {
    switch (d) {
        case DecoderKind::ClusterSimple:
            return "cluster_simple";
        case DecoderKind::ClusterAware:
            return "cluster_aware";
        case DecoderKind::PMA:
            return "pma";
    }
    return "?";
}

DecoderKind parse_decoder(const std::string &s) {
    if (s == "cluster_simple" || s == "sc") return DecoderKind::ClusterSimple;
    if (s == "cluster_aware" || s == "fac") return DecoderKind::ClusterAware;
    if (s == "pma") return DecoderKind::PMA;
    throw std::invalid_argument("unknown decoder: " + s);
}

namespace {

constexpr unsigned kPsiBit = 1;
constexpr unsigned kSigmaBit = 2;

unsigned charge_bit(Charge q) {
    switch (q) {
        case Charge::Psi:
            return kPsiBit;
        case Charge::Sigma:
            return kSigmaBit;
        default:
            return 0;
    }
}

bool is_code_site(const AnyonSystem &sys, CodeKind code, int s) {
    return code == CodeKind::IFC && sys.lattice().is_code_site(s);
}

// Whether a site's content takes part in a fusion restricted to `mask`.
bool movable(const AnyonSystem &sys, int s, unsigned mask) {
    if (sys.sigma_count(s) > 0) return (mask & kSigmaBit) != 0;
    return sys.has_psi(s) && (mask & kPsiBit) != 0;
}

struct Cluster {
    int root;
    std::vector<int> members;  // sorted
    bool code;
    bool active = true;
};

class ClusterRun {
   public:
    ClusterRun(AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt, DecoderReport &rep)
        : sys_(sys), lat_(sys.lattice()), code_(code), rng_(rng), opt_(opt), rep_(rep) {}

    void run(unsigned mask) {
        const auto charges = sys_.site_view(rng_);
        clusters_.clear();
        for (int p = 0; p < lat_.site_count(); ++p) {
            const int s = lat_.site_at(p);
            const bool code = is_code_site(sys_, code_, s);
            if (code || (charge_bit(charges[s]) & mask)) clusters_.push_back({s, {s}, code});
        }
        const int cap = 2 * lat_.size() + 2;
        for (int round = 0;; ++round) {
            fuse_all(mask);
            prune();
            const auto bulk = std::count_if(clusters_.begin(), clusters_.end(), [](const Cluster &c) { return !c.code; });
            const auto waiting = std::count_if(clusters_.begin(), clusters_.end(), [](const Cluster &c) { return c.active; });
            if (bulk == 0) return;
            if (code_ == CodeKind::ITC && clusters_.size() == 1) {
                rep_.failure_detected = true;
                return;
            }
            if (round >= cap || waiting == 0) {
                rep_.failure_detected = true;
                return;
            }
            grow();
            merge();
            ++rep_.rounds;
        }
    }

   private:
    AnyonSystem &sys_;
    const Lattice &lat_;
    CodeKind code_;
    Rng &rng_;
    const DecoderOptions &opt_;
    DecoderReport &rep_;
    std::vector<Cluster> clusters_;

    void fuse_all(unsigned mask) {
        std::vector<int> parent(lat_.site_count(), -2);
        for (auto &c : clusters_) {
            if (c.members.size() > 1) {
                for (int s : c.members) parent[s] = -1;
                std::vector<int> order{c.root};
                parent[c.root] = c.root;
                for (std::size_t k = 0; k < order.size(); ++k)
                    for (int nb : lat_.neighbors(order[k]))
                        if (parent[nb] == -1) {
                            parent[nb] = order[k];
                            order.push_back(nb);
                        }
                for (std::size_t k = order.size(); k-- > 1;) {
                    const int s = order[k];
                    if (!movable(sys_, s, mask)) continue;
                    sys_.hop(s, parent[s]);
                    ++rep_.fusions;
                }
                for (int s : c.members) parent[s] = -2;
            }
            const Charge q = sys_.decohere_site(c.root, rng_);
            if (c.code)
                c.active = (mask & kSigmaBit) != 0 && q != Charge::Sigma;
            else
                c.active = (charge_bit(q) & mask) != 0 ||
                           std::any_of(c.members.begin(), c.members.end(), [&](int s) { return s != c.root && movable(sys_, s, mask); });
        }
    }

    void prune() {
        std::vector<Cluster> kept;
        for (auto &c : clusters_) {
            if (!c.code && !c.active) continue;
            if (c.code && !c.active) c.members = {c.root};
            kept.push_back(std::move(c));
        }
        clusters_ = std::move(kept);
    }

    void grow() {
        std::vector<char> in(lat_.site_count(), 0);
        for (auto &c : clusters_) {
            if (!c.active) continue;
            for (int step = 0; step < opt_.growth; ++step) {
                for (int s : c.members) in[s] = 1;
                std::vector<int> next = c.members;
                for (int s : c.members)
                    for (int nb : lat_.neighbors(s))
                        if (!in[nb]) {
                            in[nb] = 1;
                            next.push_back(nb);
                        }
                for (int s : next) in[s] = 0;
                std::sort(next.begin(), next.end());
                c.members = std::move(next);
            }
        }
    }

    void merge() {
        const int n = static_cast<int>(clusters_.size());
        std::vector<int> uf(n);
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        std::vector<int> owner(lat_.site_count(), -1);
        for (int k = 0; k < n; ++k)
            for (int s : clusters_[k].members) {
                if (owner[s] < 0) {
                    owner[s] = k;
                    continue;
                }
                const int a = find(owner[s]), b = find(k);
                if (a != b) uf[std::max(a, b)] = std::min(a, b);
            }
        std::vector<Cluster> out;
        std::vector<int> slot(n, -1);
        for (int k = 0; k < n; ++k) {
            const int r = find(k);
            auto &c = clusters_[k];
            if (slot[r] < 0) {
                slot[r] = static_cast<int>(out.size());
                out.push_back(std::move(c));
                continue;
            }
            auto &into = out[slot[r]];
            std::vector<int> both;
            std::set_union(into.members.begin(), into.members.end(), c.members.begin(), c.members.end(),
                           std::back_inserter(both));
            into.members = std::move(both);
            into.active = into.active || c.active;
            if (c.code && (!into.code || lat_.order(c.root) < lat_.order(into.root))) {
                into.root = c.root;
                into.code = true;
            } else if (!into.code && lat_.order(c.root) < lat_.order(into.root)) {
                into.root = c.root;
            }
        }
        clusters_ = std::move(out);
    }
};

int nearest_code_site(const Lattice &lat, int s) {
    int best = -1;
    for (int c : ifc_code_sites(lat))
        if (best < 0 || lat.distance(s, c) < lat.distance(s, best)) best = c;
    return best;
}

// One matching round over the sites carrying a charge in `mask`. Returns
// false when the charges cannot be paired.
bool matching_round(AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt, unsigned mask,
                    DecoderReport &rep) {
    const Lattice &lat = sys.lattice();
    const auto charges = sys.site_view(rng);
    std::vector<int> nodes;
    for (int p = 0; p < lat.site_count(); ++p) {
        const int s = lat.site_at(p);
        if ((charge_bit(charges[s]) & mask) && !is_code_site(sys, code, s)) nodes.push_back(s);
    }
    if (nodes.empty()) return true;
    ++rep.rounds;
    const int n = static_cast<int>(nodes.size());
    const bool boundary = code == CodeKind::IFC;
    if (!boundary && n % 2 != 0) return false;

    const bool prune = opt.knn > 0 && lat.size() > opt.prune_above && n > opt.knn + 1;
    auto build = [&](bool pruned) {
        WeightedGraph g{boundary ? 2 * n : n, {}};
        std::vector<char> keep;
        if (pruned) {
            keep.assign(static_cast<std::size_t>(n) * n, 0);
            std::vector<int> idx(n);
            for (int a = 0; a < n; ++a) {
                std::iota(idx.begin(), idx.end(), 0);
                auto key = [&](int b) { return std::pair{lat.distance(nodes[a], nodes[b]), b}; };
                std::nth_element(idx.begin(), idx.begin() + opt.knn + 1, idx.end(),
                                 [&](int x, int y) { return key(x) < key(y); });
                for (int k = 0; k <= opt.knn; ++k) {
                    keep[static_cast<std::size_t>(a) * n + idx[k]] = 1;
                    keep[static_cast<std::size_t>(idx[k]) * n + a] = 1;
                }
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (!pruned || keep[static_cast<std::size_t>(a) * n + b]) g.add_edge(a, b, lat.distance(nodes[a], nodes[b]));
        if (boundary) {
            for (int a = 0; a < n; ++a) g.add_edge(a, n + a, lat.distance(nodes[a], nearest_code_site(lat, nodes[a])));
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) g.add_edge(n + a, n + b, 0);
        }
        return g;
    };

    auto g = build(prune);
    auto m = min_weight_perfect_matching(g);
    if (!m && prune) {
        g = build(false);
        m = min_weight_perfect_matching(g);
    }
    if (!m) return false;
    for (int k : m->edges) {
        const auto &e = g.edges[k];
        if (e.u >= n && e.v >= n) continue;
        const int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
        if (b >= n) {
            const int s = nodes[a];
            sys.fuse_path(lat.shortest_path(s, nearest_code_site(lat, s)), rng);
        } else {
            sys.fuse_path(lat.shortest_path(nodes[b], nodes[a]), rng);
        }
        ++rep.fusions;
    }
    return true;
}

bool bulk_charge(const AnyonSystem &sys, CodeKind code, unsigned mask) {
    for (int s = 0; s < sys.lattice().site_count(); ++s)
        if (!is_code_site(sys, code, s) && movable(sys, s, mask)) return true;
    return false;
}

void check_topology(const AnyonSystem &sys, CodeKind code) {
    const bool torus = sys.lattice().topology() == Topology::Torus;
    if (torus != (code == CodeKind::ITC)) throw std::invalid_argument("decoder: code does not match lattice topology");
}

}  // namespace

DecoderReport decode_cluster_simple(AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt) {
    check_topology(sys, code);
    DecoderReport rep;
    ClusterRun(sys, code, rng, opt, rep).run(kPsiBit | kSigmaBit);
    return rep;
}

DecoderReport decode_cluster_aware(AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt) {
    check_topology(sys, code);
    DecoderReport rep;
    ClusterRun run(sys, code, rng, opt, rep);
    run.run(kSigmaBit);
    if (rep.failure_detected) return rep;
    run.run(kPsiBit);
    return rep;
}

DecoderReport decode_pma(AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt) {
    check_topology(sys, code);
    DecoderReport rep;
    // sigma rounds first; fusions and swept paths can leave charges behind,
    // so both kinds are revisited until the bulk is clear.
    for (int round = 0; round < opt.max_rounds; ++round) {
        sys.site_view(rng);
        unsigned mask = 0;
        if (bulk_charge(sys, code, kSigmaBit))
            mask = kSigmaBit;
        else if (bulk_charge(sys, code, kPsiBit))
            mask = kPsiBit;
        else
            return rep;
        if (!matching_round(sys, code, rng, opt, mask, rep)) {
            rep.failure_detected = true;
            return rep;
        }
    }
    rep.failure_detected = bulk_charge(sys, code, kSigmaBit | kPsiBit);
    return rep;
}

DecoderReport decode(DecoderKind kind, AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt) {
    switch (kind) {
        case DecoderKind::ClusterSimple:
            return decode_cluster_simple(sys, code, rng, opt);
        case DecoderKind::ClusterAware:
            return decode_cluster_aware(sys, code, rng, opt);
        case DecoderKind::PMA:
            return decode_pma(sys, code, rng, opt);
    }
    throw std::invalid_argument("decode: unknown decoder");
}

}  // namespace isingsim
