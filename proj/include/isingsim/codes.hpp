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

#ifndef ISINGSIM_CODES_HPP_
#define ISINGSIM_CODES_HPP_

#include <stdexcept>
#include <string>

#include "isingsim/anyon_system.hpp"

namespace isingsim {

class CodeError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class CodeKind { IFC, ITC };
enum class IfcLabel { Zero, Plus };

std::string to_string(CodeKind k);
std::string to_string(IfcLabel l);
CodeKind parse_code(const std::string &s);
IfcLabel parse_ifc_label(const std::string &s);

/// IFC: a fusion-space label of the four code sigmas on a sphere.
/// ITC: the pair of loop eigenvalues on a torus. (-1,-1) is not a ground
/// state and is rejected.
struct CodeState {
    CodeKind code = CodeKind::IFC;
    IfcLabel label = IfcLabel::Zero;
    int lambda_h = 1;
    int lambda_v = 1;

    static CodeState ifc(IfcLabel l) { return {CodeKind::IFC, l, 1, 1}; }
    static CodeState itc(int lh, int lv) { return {CodeKind::ITC, IfcLabel::Zero, lh, lv}; }
    std::string str() const;
};

/// Code sites in the order t, r, b, l.
std::array<int, 4> ifc_code_sites(const Lattice &lat);

/// The pair operator whose +1 eigenstate defines the IFC label: t-r for
/// zero, r-b for plus. Requires one sigma on each of the two code sites.
MajoranaProduct ifc_logical_operator(const AnyonSystem &sys, IfcLabel label);

AnyonSystem prepare(const Lattice &lat, const CodeState &state, Rng &rng);

/// strict: ITC success needs (lambda_h, lambda_v, w_h, w_v) restored.
/// sector: the w parities are ignored; on a lambda eigenstate a psi winding
/// only contributes a global phase.
enum class ItcCheck { Strict, Sector };
std::string to_string(ItcCheck c);
ItcCheck parse_itc_check(const std::string &s);

/// Decoheres every site and checks the system is back in `state`.
bool verify(AnyonSystem &sys, const CodeState &state, Rng &rng, ItcCheck check = ItcCheck::Strict);

}  // namespace isingsim

#endif  // ISINGSIM_CODES_HPP_
