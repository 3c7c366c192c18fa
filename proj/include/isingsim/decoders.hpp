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

#ifndef ISINGSIM_DECODERS_HPP_
#define ISINGSIM_DECODERS_HPP_

#include <string>

#include "isingsim/codes.hpp"

namespace isingsim {

enum class DecoderKind { ClusterSimple, ClusterAware, PMA };
std::string to_string(DecoderKind d);
DecoderKind parse_decoder(const std::string &s);

struct DecoderOptions {
    int growth = 1;
    /// Keep only the k nearest partners per node in matching graphs on
    /// lattices larger than `prune_above`. 0 disables pruning.
    int knn = 20;
    int prune_above = 24;
    /// Upper bound on matching rounds.
    int max_rounds = 8;
};

struct DecoderReport {
    int rounds = 0;
    int fusions = 0;
    bool failure_detected = false;
};

DecoderReport decode_cluster_simple(AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt = {});
DecoderReport decode_cluster_aware(AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt = {});
DecoderReport decode_pma(AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt = {});
DecoderReport decode(DecoderKind kind, AnyonSystem &sys, CodeKind code, Rng &rng, const DecoderOptions &opt = {});

}  // namespace isingsim

#endif  // ISINGSIM_DECODERS_HPP_
