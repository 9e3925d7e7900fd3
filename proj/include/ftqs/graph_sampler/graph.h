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

#ifndef FTQS_GRAPH_SAMPLER_GRAPH_H
#define FTQS_GRAPH_SAMPLER_GRAPH_H

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ftqs {

enum class MeasurementRole { XY0, XY_PI4, XY_PI2, OUTPUT_Z };

const char *role_name(MeasurementRole role);
/// Accepts "0", "pi4", "pi2", "out" (and the role_name spellings).
MeasurementRole parse_role(std::string_view text);
/// XY-plane angle of a measured role (0 for OUTPUT_Z).
double role_angle(MeasurementRole role);

/// Number of vertices in one boundary link chain.
constexpr int kLinkLength = 12;

/// A rows x width tile of the measurement pattern. Vertex (r, c) sits in
/// gadget row r, gadget column c. Edges are local: horizontal edges join
/// columns c and c+1 of one row, vertical edges join rows r and r+1 of one
/// column. Row r enters at (r, 0) and leaves at (r, width-1).
struct GadgetSpec {
    struct Vertex {
        int row;
        int col;
        MeasurementRole role;
    };
    std::string name;
    int rows = 1;
    int width = 1;
    std::vector<Vertex> vertices;
    std::vector<std::pair<int, int>> edges;

    /// Throws std::invalid_argument on malformed gadgets.
    void validate() const;
    int index_of(int row, int col) const;
    bool has_edge(int a, int b) const;

    static GadgetSpec from_json_text(std::string_view text);
    /// Throws std::runtime_error naming the path if it cannot be read.
    static GadgetSpec from_json_file(const std::string &path);
    std::string to_json_text() const;

    /// Two-row, two-column tile: a vertical CZ between two pi/4 vertices,
    /// followed by a pi/2 vertex over a 0 vertex.
    static GadgetSpec default_gb();
    /// One-row, one-column tile measured at angle 0.
    static GadgetSpec single_wire();
};

struct GraphVertex {
    int row;
    int col;
    int sub;
    MeasurementRole role;
    bool link = false;
};

/// Measurement-pattern graph. Measured vertices come first, ordered by
/// (row, col, sub); the n OUTPUT_Z vertices follow, ordered by row.
struct GraphSpec {
    int n = 0;
    int k = 0;
    std::string gadget_name;
    std::vector<GraphVertex> vertices;
    std::vector<std::pair<int, int>> edges;
    /// Apply H to output vertices too (the rotated form puts H on every vertex).
    bool output_hadamard = true;

    size_t num_vertices() const {
        return vertices.size();
    }
    size_t num_measured() const;
    size_t num_outputs() const {
        return num_vertices() - num_measured();
    }
    std::vector<std::vector<int>> adjacency() const;
    size_t count_role(MeasurementRole role) const;
    /// Throws std::invalid_argument if an invariant fails.
    void validate() const;
    /// Reorders vertices into the canonical order and remaps edges.
    void canonicalize();
};

/// n rows by k graph columns. Columns 0..k-2 are measured and are tiled by
/// the gadget in layers of gadget.width columns, alternating the row offset
/// for two-row gadgets. A boundary row left idle by a layer is bridged by a
/// kLinkLength chain of XY(0) vertices. Column k-1 holds the outputs.
GraphSpec build_brickwork_graph(int n, int k, const GadgetSpec &gadget);

/// Every pi/2 vertex becomes a pi/4, 0, pi/4 path and every other vertex in
/// the same column becomes a 0, 0, 0 path.
GraphSpec substitute_gbprime(const GraphSpec &spec);

}  // namespace ftqs

#endif
