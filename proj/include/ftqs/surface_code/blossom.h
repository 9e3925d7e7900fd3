// Copyright 2026 The ftqs Authors
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

#ifndef FTQS_SURFACE_CODE_BLOSSOM_H
#define FTQS_SURFACE_CODE_BLOSSOM_H

#include <cstdint>
#include <vector>

namespace ftqs {

struct WeightedEdge {
    int u;
    int v;
    int64_t weight;
};

/// Maximum-weight matching on a general graph (Edmonds' blossom algorithm
/// with primal-dual updates, O(n^3)). With max_cardinality, returns a
/// maximum-weight matching among those of maximum cardinality. Returns
/// mate[v] (or -1) for v in [0, num_vertices). Integer arithmetic only.
std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge> &edges,
                                     bool max_cardinality);

}  // namespace ftqs

#endif
