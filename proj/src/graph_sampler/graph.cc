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

#include "ftqs/graph_sampler/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace ftqs {

using nlohmann::json;

const char *role_name(MeasurementRole role) {
    switch (role) {
        case MeasurementRole::XY0:
            return "0";
        case MeasurementRole::XY_PI4:
            return "pi4";
        case MeasurementRole::XY_PI2:
            return "pi2";
        case MeasurementRole::OUTPUT_Z:
            return "out";
    }
    return "?";
}

MeasurementRole parse_role(std::string_view text) {
    if (text == "0" || text == "XY0") {
        return MeasurementRole::XY0;
    }
    if (text == "pi4" || text == "XY_PI4") {
        return MeasurementRole::XY_PI4;
    }
    if (text == "pi2" || text == "XY_PI2") {
        return MeasurementRole::XY_PI2;
    }
    if (text == "out" || text == "OUTPUT_Z") {
        return MeasurementRole::OUTPUT_Z;
    }
    throw std::invalid_argument("unknown measurement role '" + std::string(text) + "'");
}

double role_angle(MeasurementRole role) {
    switch (role) {
        case MeasurementRole::XY_PI4:
            return M_PI / 4.0;
        case MeasurementRole::XY_PI2:
            return M_PI / 2.0;
        default:
            return 0.0;
    }
}

// ---------------------------------------------------------------------------
// GadgetSpec

int GadgetSpec::index_of(int row, int col) const {
    for (size_t i = 0; i < vertices.size(); i++) {
        if (vertices[i].row == row && vertices[i].col == col) {
            return int(i);
        }
    }
    return -1;
}

bool GadgetSpec::has_edge(int a, int b) const {
    for (const auto &[u, v] : edges) {
        if ((u == a && v == b) || (u == b && v == a)) {
            return true;
        }
    }
    return false;
}

void GadgetSpec::validate() const {
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument("gadget '" + name + "': " + msg);
    };
    if (rows != 1 && rows != 2) {
        fail("rows must be 1 or 2");
    }
    if (width < 1) {
        fail("width must be positive");
    }
    if (vertices.size() != size_t(rows * width)) {
        fail("expected one vertex per (row, col) cell");
    }
    std::set<std::pair<int, int>> cells;
    for (const auto &v : vertices) {
        if (v.row < 0 || v.row >= rows || v.col < 0 || v.col >= width) {
            fail("vertex coordinate out of range");
        }
        if (!cells.insert({v.row, v.col}).second) {
            fail("duplicate vertex coordinate");
        }
        if (v.role == MeasurementRole::OUTPUT_Z) {
            fail("gadget vertices must be measured");
        }
    }
    for (const auto &[a, b] : edges) {
        if (a < 0 || b < 0 || size_t(a) >= vertices.size() || size_t(b) >= vertices.size() || a == b) {
            fail("edge endpoint out of range");
        }
        const auto &u = vertices[size_t(a)];
        const auto &v = vertices[size_t(b)];
        bool horizontal = u.row == v.row && std::abs(u.col - v.col) == 1;
        bool vertical = u.col == v.col && std::abs(u.row - v.row) == 1;
        if (!horizontal && !vertical) {
            fail("edges must join grid neighbours");
        }
    }
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c + 1 < width; c++) {
            if (!has_edge(index_of(r, c), index_of(r, c + 1))) {
                fail("row " + std::to_string(r) + " is not a connected wire");
            }
        }
    }
}

GadgetSpec GadgetSpec::from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("gadget JSON: ") + e.what());
    }
    static const std::set<std::string> kKeys = {"name", "rows", "width", "vertices", "edges", "ports"};
    for (const auto &[key, _] : j.items()) {
        if (!kKeys.count(key)) {
            throw std::invalid_argument("gadget JSON: unknown key '" + key + "'");
        }
    }
    GadgetSpec g;
    try {
        g.name = j.value("name", std::string("gadget"));
        g.rows = j.at("rows").get<int>();
        g.width = j.at("width").get<int>();
        for (const auto &v : j.at("vertices")) {
            g.vertices.push_back({v.at("row").get<int>(), v.at("col").get<int>(),
                                  parse_role(v.at("role").get<std::string>())});
        }
        for (const auto &e : j.at("edges")) {
            g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("gadget JSON: ") + e.what());
    }
    g.validate();
    if (j.contains("ports")) {
        const auto &ports = j["ports"];
        auto check = [&](const char *which, int col) {
            if (!ports.contains(which)) {
                return;
            }
            const auto &list = ports[which];
            if (!list.is_array() || list.size() != size_t(g.rows)) {
                throw std::invalid_argument(std::string("gadget JSON: ports.") + which + " needs one entry per row");
            }
            for (int r = 0; r < g.rows; r++) {
                if (list[size_t(r)].get<int>() != g.index_of(r, col)) {
                    throw std::invalid_argument(std::string("gadget JSON: ports.") + which +
                                                " must name the row's boundary vertex");
                }
            }
        };
        check("in", 0);
        check("out", g.width - 1);
    }
    return g;
}

GadgetSpec GadgetSpec::from_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read gadget file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string GadgetSpec::to_json_text() const {
    json j;
    j["name"] = name;
    j["rows"] = rows;
    j["width"] = width;
    j["vertices"] = json::array();
    for (const auto &v : vertices) {
        j["vertices"].push_back({{"row", v.row}, {"col", v.col}, {"role", role_name(v.role)}});
    }
    j["edges"] = json::array();
    for (const auto &[a, b] : edges) {
        j["edges"].push_back({a, b});
    }
    json in = json::array(), out = json::array();
    for (int r = 0; r < rows; r++) {
        in.push_back(index_of(r, 0));
        out.push_back(index_of(r, width - 1));
    }
    j["ports"] = {{"in", in}, {"out", out}};
    return j.dump(2);
}

GadgetSpec GadgetSpec::default_gb() {
    GadgetSpec g;
    g.name = "gb_default";
    g.rows = 2;
    g.width = 2;
    g.vertices = {
        {0, 0, MeasurementRole::XY_PI4},
        {1, 0, MeasurementRole::XY_PI4},
        {0, 1, MeasurementRole::XY_PI2},
        {1, 1, MeasurementRole::XY0},
    };
    g.edges = {{0, 1}, {0, 2}, {1, 3}};
    return g;
}

GadgetSpec GadgetSpec::single_wire() {
    GadgetSpec g;
    g.name = "single_wire";
    g.rows = 1;
    g.width = 1;
    g.vertices = {{0, 0, MeasurementRole::XY0}};
    return g;
}

// ---------------------------------------------------------------------------
// GraphSpec

size_t GraphSpec::num_measured() const {
    size_t m = 0;
    for (const auto &v : vertices) {
        m += v.role != MeasurementRole::OUTPUT_Z;
    }
    return m;
}

size_t GraphSpec::count_role(MeasurementRole role) const {
    size_t c = 0;
    for (const auto &v : vertices) {
        c += v.role == role;
    }
    return c;
}

std::vector<std::vector<int>> GraphSpec::adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (const auto &[a, b] : edges) {
        adj[size_t(a)].push_back(b);
        adj[size_t(b)].push_back(a);
    }
    return adj;
}

namespace {

bool is_connected(const GraphSpec &spec) {
    if (spec.vertices.empty()) {
        return true;
    }
    auto adj = spec.adjacency();
    std::vector<uint8_t> seen(spec.vertices.size(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[size_t(v)]) {
            if (!seen[size_t(u)]) {
                seen[size_t(u)] = 1;
                count++;
                stack.push_back(u);
            }
        }
    }
    return count == spec.vertices.size();
}

}  // namespace

void GraphSpec::validate() const {
    if (num_outputs() != size_t(n)) {
        throw std::invalid_argument("graph has " + std::to_string(num_outputs()) + " outputs, expected " +
                                    std::to_string(n));
    }
    size_t m = num_measured();
    for (size_t i = 0; i < vertices.size(); i++) {
        bool out = vertices[i].role == MeasurementRole::OUTPUT_Z;
        if (out != (i >= m)) {
            throw std::invalid_argument("outputs must follow all measured vertices");
        }
    }
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
        if (a == b) {
            throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
        }
        if (a < 0 || b < 0 || size_t(a) >= vertices.size() || size_t(b) >= vertices.size()) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (a > b) {
            std::swap(a, b);
        }
        if (!seen.insert({a, b}).second) {
            throw std::invalid_argument("duplicate edge");
        }
    }
}

void GraphSpec::canonicalize() {
    std::vector<size_t> order(vertices.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](size_t i) {
        const auto &v = vertices[i];
        return std::make_tuple(v.role == MeasurementRole::OUTPUT_Z, v.row, v.col, v.sub);
    };
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return key(a) < key(b); });
    std::vector<int> remap(vertices.size());
    std::vector<GraphVertex> sorted;
    sorted.reserve(vertices.size());
    for (size_t i = 0; i < order.size(); i++) {
        remap[order[i]] = int(i);
        sorted.push_back(vertices[order[i]]);
    }
    vertices = std::move(sorted);
    std::set<std::pair<int, int>> es;
    for (auto [a, b] : edges) {
        int u = remap[size_t(a)], v = remap[size_t(b)];
        es.insert({std::min(u, v), std::max(u, v)});
    }
    edges.assign(es.begin(), es.end());
}

GraphSpec build_brickwork_graph(int n, int k, const GadgetSpec &gadget) {
    if (n < 1) {
        throw std::invalid_argument("need at least one row, got n=" + std::to_string(n));
    }
    if (k < 2) {
        throw std::invalid_argument("need at least two columns, got k=" + std::to_string(k));
    }
    gadget.validate();

    GraphSpec spec;
    spec.n = n;
    spec.k = k;
    spec.gadget_name = gadget.name;
    std::vector<int> last(size_t(n), -1);
    auto add_vertex = [&](int row, int col, int sub, MeasurementRole role, bool link) {
        spec.vertices.push_back({row, col, sub, role, link});
        int id = int(spec.vertices.size()) - 1;
        if (last[size_t(row)] >= 0) {
            spec.edges.emplace_back(last[size_t(row)], id);
        }
        last[size_t(row)] = id;
        return id;
    };

    const int measured_cols = k - 1;
    const int w = gadget.width;
    int layers = 0;
    for (int layer = 0, start = 0; start < measured_cols; layer++, start += w) {
        layers++;
        int cols = std::min(w, measured_cols - start);
        std::vector<int> group_start;
        std::vector<uint8_t> covered(size_t(n), 0);
        bool restricted = gadget.rows > n;
        if (gadget.rows == 1 || restricted) {
            for (int r = 0; r < n; r++) {
                group_start.push_back(r);
            }
        } else {
            int offset = layer % 2;
            if (offset == 1 && n < 3) {
                offset = 0;
            }
            for (int r = offset; r + 1 < n; r += 2) {
                group_start.push_back(r);
            }
        }
        int h = restricted ? 1 : gadget.rows;
        for (int r0 : group_start) {
            std::vector<int> ids(gadget.vertices.size(), -1);
            for (int gc = 0; gc < cols; gc++) {
                for (int gr = 0; gr < h; gr++) {
                    int gi = gadget.index_of(gr, gc);
                    ids[size_t(gi)] = add_vertex(r0 + gr, start + gc, 0, gadget.vertices[size_t(gi)].role, false);
                }
            }
            for (const auto &[a, b] : gadget.edges) {
                const auto &u = gadget.vertices[size_t(a)];
                const auto &v = gadget.vertices[size_t(b)];
                if (u.row == v.row || ids[size_t(a)] < 0 || ids[size_t(b)] < 0) {
                    continue;  // row wires were chained by add_vertex
                }
                spec.edges.emplace_back(ids[size_t(a)], ids[size_t(b)]);
            }
            for (int gr = 0; gr < h; gr++) {
                covered[size_t(r0 + gr)] = 1;
            }
        }
        for (int r = 0; r < n; r++) {
            if (covered[size_t(r)]) {
                continue;
            }
            for (int s = 0; s < kLinkLength; s++) {
                add_vertex(r, start, s, MeasurementRole::XY0, true);
            }
        }
    }
    for (int r = 0; r < n; r++) {
        add_vertex(r, k - 1, 0, MeasurementRole::OUTPUT_Z, false);
    }
    spec.canonicalize();
    spec.validate();
    if (n > 1 && layers >= 2 && !is_connected(spec)) {
        throw std::invalid_argument("gadget '" + gadget.name + "' does not connect all rows at n=" +
                                    std::to_string(n) + ", k=" + std::to_string(k));
    }
    return spec;
}

GraphSpec substitute_gbprime(const GraphSpec &spec) {
    spec.validate();
    std::set<int> expand_cols;
    for (const auto &v : spec.vertices) {
        if (v.role == MeasurementRole::XY_PI2) {
            if (v.link) {
                throw std::invalid_argument("pi/2 vertex inside a link chain: not a recognized tiling");
            }
            expand_cols.insert(v.col);
        }
    }
    for (const auto &v : spec.vertices) {
        if (!v.link && expand_cols.count(v.col) && v.role != MeasurementRole::XY_PI2 &&
            v.role != MeasurementRole::XY0) {
            throw std::invalid_argument("column " + std::to_string(v.col) +
                                        " mixes pi/2 with other non-zero angles: not a recognized tiling");
        }
    }

    GraphSpec out;
    out.n = spec.n;
    out.k = spec.k;
    out.gadget_name = spec.gadget_name + "_prime";
    out.output_hadamard = spec.output_hadamard;
    // first[v], last[v]: ends of the path replacing v (equal when kept).
    std::vector<int> first(spec.vertices.size()), last(spec.vertices.size());
    for (size_t i = 0; i < spec.vertices.size(); i++) {
        const auto &v = spec.vertices[i];
        if (v.link || !expand_cols.count(v.col)) {
            out.vertices.push_back(v);
            first[i] = last[i] = int(out.vertices.size()) - 1;
            continue;
        }
        MeasurementRole roles[3] = {MeasurementRole::XY0, MeasurementRole::XY0, MeasurementRole::XY0};
        if (v.role == MeasurementRole::XY_PI2) {
            roles[0] = roles[2] = MeasurementRole::XY_PI4;
        }
        int base = int(out.vertices.size());
        for (int t = 0; t < 3; t++) {
            out.vertices.push_back({v.row, v.col, 3 * v.sub + t, roles[t], false});
        }
        out.edges.emplace_back(base, base + 1);
        out.edges.emplace_back(base + 1, base + 2);
        first[i] = base;
        last[i] = base + 2;
    }
    auto before = [&](const GraphVertex &a, const GraphVertex &b) {
        return std::make_pair(a.col, a.sub) < std::make_pair(b.col, b.sub);
    };
    for (auto [a, b] : spec.edges) {
        const auto &u = spec.vertices[size_t(a)];
        const auto &v = spec.vertices[size_t(b)];
        if (u.row != v.row) {
            out.edges.emplace_back(first[size_t(a)], first[size_t(b)]);
            continue;
        }
        if (before(v, u)) {
            std::swap(a, b);
        }
        out.edges.emplace_back(last[size_t(a)], first[size_t(b)]);
    }
    out.canonicalize();
    out.validate();
    return out;
}

}  // namespace ftqs
