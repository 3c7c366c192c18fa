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

#include "isingsim/codes.hpp"

#include <sstream>

namespace isingsim {

std::string to_string(CodeKind k) { return k == CodeKind::IFC ? "ifc" : "itc"; }
std::string to_string(IfcLabel l) { return l == IfcLabel::Zero ? "zero" : "plus"; }

CodeKind parse_code(const std::string &s) {
    if (s == "ifc") return CodeKind::IFC;
    if (s == "itc") return CodeKind::ITC;
    throw CodeError("unknown code '" + s + "'");
}

IfcLabel parse_ifc_label(const std::string &s) {
    if (s == "zero") return IfcLabel::Zero;
    if (s == "plus") return IfcLabel::Plus;
    throw CodeError("unknown IFC label '" + s + "'");
}

std::string CodeState::str() const {
    if (code == CodeKind::IFC) return "ifc/" + to_string(label);
    std::ostringstream os;
    os << "itc/" << (lambda_h > 0 ? '+' : '-') << (lambda_v > 0 ? '+' : '-');
    return os.str();
}

std::array<int, 4> ifc_code_sites(const Lattice &lat) { return lat.code_sites(); }

MajoranaProduct ifc_logical_operator(const AnyonSystem &sys, IfcLabel label) {
    const auto cs = ifc_code_sites(sys.lattice());
    const int a = label == IfcLabel::Zero ? cs[0] : cs[1];
    const int b = label == IfcLabel::Zero ? cs[1] : cs[2];
    if (sys.sigma_count(a) != 1 || sys.sigma_count(b) != 1)
        throw CodeError("logical operator needs exactly one sigma on each code site");
    return MajoranaProduct::pair(sys.mode_offset(a), sys.mode_offset(b));
}

namespace {

void carry(AnyonSystem &sys, int from, int to) {
    const auto path = sys.lattice().shortest_path(from, to);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) sys.hop(path[k], path[k + 1]);
}

}  // namespace

AnyonSystem prepare(const Lattice &lat, const CodeState &state, Rng &rng) {
    AnyonSystem sys(lat);
    if (state.code == CodeKind::ITC) {
        if (lat.topology() != Topology::Torus) throw CodeError("ITC needs a torus");
        if (state.lambda_h < 0 && state.lambda_v < 0) throw CodeError("(-,-) is not an ITC ground state");
        sys.set_sector({state.lambda_h, state.lambda_v, 0, 0});
        return sys;
    }
    if (lat.topology() != Topology::Sphere) throw CodeError("IFC needs a sphere");
    const auto cs = ifc_code_sites(lat);
    const int t = cs[0], r = cs[1], b = cs[2], l = cs[3];
    auto first_step = [&](int from, int to) { return lat.shortest_path(from, to)[1]; };
    const int tr = first_step(t, r);
    sys.pair_create(t, tr, Charge::Sigma);
    carry(sys, tr, r);
    const int lb = first_step(l, b);
    sys.pair_create(l, lb, Charge::Sigma);
    carry(sys, lb, b);

    // Fix the label's pair channel to +1, keeping the total charge trivial.
    const MajoranaProduct op = ifc_logical_operator(sys, state.label);
    const Outcome o = sys.tableau().outcome_distribution(op);
    int s = o == Outcome::Minus ? -1 : 1;
    if (o == Outcome::Uniform) s = sys.tableau().measure(op, rng, 1);
    if (s < 0) {
        const int x = state.label == IfcLabel::Zero ? r : t;
        sys.tableau().negate_mode(sys.mode_offset(x));
        sys.tableau().negate_mode(sys.mode_offset(state.label == IfcLabel::Zero ? l : b));
    }
    return sys;
}

std::string to_string(ItcCheck c) { return c == ItcCheck::Strict ? "strict" : "sector"; }

ItcCheck parse_itc_check(const std::string &s) {
    if (s == "strict") return ItcCheck::Strict;
    if (s == "sector") return ItcCheck::Sector;
    throw std::invalid_argument("unknown itc check: " + s);
}

bool verify(AnyonSystem &sys, const CodeState &state, Rng &rng, ItcCheck check) {
    const Lattice &lat = sys.lattice();
    const auto view = sys.site_view(rng);
    if (state.code == CodeKind::ITC) {
        for (Charge q : view)
            if (q != Charge::Vacuum) return false;
        const auto sec = sys.sector();
        if (check == ItcCheck::Sector) return sec.lambda_h == state.lambda_h && sec.lambda_v == state.lambda_v;
        return sec == Sector{state.lambda_h, state.lambda_v, 0, 0};
    }
    const auto cs = ifc_code_sites(lat);
    for (int s = 0; s < lat.site_count(); ++s) {
        const bool code = s == cs[0] || s == cs[1] || s == cs[2] || s == cs[3];
        if (view[s] != (code ? Charge::Sigma : Charge::Vacuum)) return false;
    }
    return sys.tableau().outcome_distribution(ifc_logical_operator(sys, state.label)) == Outcome::Plus;
}

}  // namespace isingsim
