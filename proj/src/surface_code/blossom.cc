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

// Structure follows Joris van Rantwijk's public-domain mwmatching.py.
// Endpoint p of edge k is 2k (first vertex) or 2k+1 (second); p ^ 1 is the
// other end. Weights are doubled internally so every dual stays integral.

#include "ftqs/surface_code/blossom.h"

#include <algorithm>
#include <stdexcept>

namespace ftqs {

namespace {

class Matcher {
   public:
    Matcher(int n, const std::vector<WeightedEdge> &edges, bool maxcard)
        : n_(n), maxcard_(maxcard), nedge_(int(edges.size())) {
        int64_t maxw = 0;
        for (const auto &e : edges) {
            if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
                throw std::invalid_argument("matching edge endpoint out of range");
            }
            u_.push_back(e.u);
            v_.push_back(e.v);
            w_.push_back(2 * e.weight);
            maxw = std::max(maxw, 2 * e.weight);
        }
        endpoint_.resize(size_t(2 * nedge_));
        neighbend_.resize(size_t(n));
        for (int k = 0; k < nedge_; k++) {
            endpoint_[size_t(2 * k)] = u_[size_t(k)];
            endpoint_[size_t(2 * k + 1)] = v_[size_t(k)];
            neighbend_[size_t(u_[size_t(k)])].push_back(2 * k + 1);
            neighbend_[size_t(v_[size_t(k)])].push_back(2 * k);
        }
        const size_t n2 = size_t(2 * n);
        mate_.assign(size_t(n), -1);
        label_.assign(n2, 0);
        labelend_.assign(n2, -1);
        inblossom_.resize(size_t(n));
        for (int i = 0; i < n; i++) {
            inblossom_[size_t(i)] = i;
        }
        blossomparent_.assign(n2, -1);
        childs_.assign(n2, {});
        endps_.assign(n2, {});
        blossombase_.assign(n2, -1);
        for (int i = 0; i < n; i++) {
            blossombase_[size_t(i)] = i;
        }
        bestedge_.assign(n2, -1);
        bestedges_.assign(n2, {});
        has_bestedges_.assign(n2, false);
        for (int b = 2 * n - 1; b >= n; b--) {
            unused_.push_back(b);
        }
        dualvar_.assign(n2, 0);
        for (int i = 0; i < n; i++) {
            dualvar_[size_t(i)] = maxw;
        }
        allowedge_.assign(size_t(nedge_), false);
    }

    std::vector<int> run();

   private:
    int64_t slack(int k) const {
        return dualvar_[size_t(u_[size_t(k)])] + dualvar_[size_t(v_[size_t(k)])] - 2 * w_[size_t(k)];
    }

    void leaves(int b, std::vector<int> &out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : childs_[size_t(b)]) {
            leaves(t, out);
        }
    }
    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    static int &at(std::vector<int> &v, int j) {
        int m = int(v.size());
        return v[size_t(((j % m) + m) % m)];
    }

    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);

    int n_;
    bool maxcard_;
    int nedge_;
    std::vector<int> u_, v_;
    std::vector<int64_t> w_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_;
    std::vector<std::vector<int>> childs_, endps_;
    std::vector<int> blossombase_, bestedge_;
    std::vector<std::vector<int>> bestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<int> unused_;
    std::vector<int64_t> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<int> queue_;
};

void Matcher::assign_label(int w, int t, int p) {
    int b = inblossom_[size_t(w)];
    label_[size_t(w)] = label_[size_t(b)] = t;
    labelend_[size_t(w)] = labelend_[size_t(b)] = p;
    bestedge_[size_t(w)] = bestedge_[size_t(b)] = -1;
    if (t == 1) {
        leaves(b, queue_);
    } else if (t == 2) {
        int base = blossombase_[size_t(b)];
        int m = mate_[size_t(base)];
        assign_label(endpoint_[size_t(m)], 1, m ^ 1);
    }
}

int Matcher::scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[size_t(v)];
        if (label_[size_t(b)] & 4) {
            base = blossombase_[size_t(b)];
            break;
        }
        path.push_back(b);
        label_[size_t(b)] = 5;
        if (labelend_[size_t(b)] == -1) {
            v = -1;
        } else {
            v = endpoint_[size_t(labelend_[size_t(b)])];
            b = inblossom_[size_t(v)];
            v = endpoint_[size_t(labelend_[size_t(b)])];
        }
        if (w != -1) {
            std::swap(v, w);
        }
    }
    for (int b : path) {
        label_[size_t(b)] = 1;
    }
    return base;
}

void Matcher::add_blossom(int base, int k) {
    int v = u_[size_t(k)], w = v_[size_t(k)];
    int bb = inblossom_[size_t(base)];
    int bv = inblossom_[size_t(v)];
    int bw = inblossom_[size_t(w)];
    int b = unused_.back();
    unused_.pop_back();
    blossombase_[size_t(b)] = base;
    blossomparent_[size_t(b)] = -1;
    blossomparent_[size_t(bb)] = b;
    std::vector<int> path, endps;
    while (bv != bb) {
        blossomparent_[size_t(bv)] = b;
        path.push_back(bv);
        endps.push_back(labelend_[size_t(bv)]);
        v = endpoint_[size_t(labelend_[size_t(bv)])];
        bv = inblossom_[size_t(v)];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        blossomparent_[size_t(bw)] = b;
        path.push_back(bw);
        endps.push_back(labelend_[size_t(bw)] ^ 1);
        w = endpoint_[size_t(labelend_[size_t(bw)])];
        bw = inblossom_[size_t(w)];
    }
    childs_[size_t(b)] = path;
    endps_[size_t(b)] = endps;
    label_[size_t(b)] = 1;
    labelend_[size_t(b)] = labelend_[size_t(bb)];
    dualvar_[size_t(b)] = 0;
    for (int leaf : leaves(b)) {
        if (label_[size_t(inblossom_[size_t(leaf)])] == 2) {
            queue_.push_back(leaf);
        }
        inblossom_[size_t(leaf)] = b;
    }
    std::vector<int> bestedgeto(size_t(2 * n_), -1);
    for (int child : path) {
        std::vector<std::vector<int>> nblists;
        if (!has_bestedges_[size_t(child)]) {
            for (int leaf : leaves(child)) {
                std::vector<int> list;
                for (int p : neighbend_[size_t(leaf)]) {
                    list.push_back(p / 2);
                }
                nblists.push_back(std::move(list));
            }
        } else {
            nblists.push_back(bestedges_[size_t(child)]);
        }
        for (const auto &list : nblists) {
            for (int kk : list) {
                int i = u_[size_t(kk)], j = v_[size_t(kk)];
                if (inblossom_[size_t(j)] == b) {
                    std::swap(i, j);
                }
                int bj = inblossom_[size_t(j)];
                if (bj != b && label_[size_t(bj)] == 1 &&
                    (bestedgeto[size_t(bj)] == -1 || slack(kk) < slack(bestedgeto[size_t(bj)]))) {
                    bestedgeto[size_t(bj)] = kk;
                }
            }
        }
        bestedges_[size_t(child)].clear();
        has_bestedges_[size_t(child)] = false;
        bestedge_[size_t(child)] = -1;
    }
    auto &mine = bestedges_[size_t(b)];
    mine.clear();
    for (int kk : bestedgeto) {
        if (kk != -1) {
            mine.push_back(kk);
        }
    }
    has_bestedges_[size_t(b)] = true;
    bestedge_[size_t(b)] = -1;
    for (int kk : mine) {
        if (bestedge_[size_t(b)] == -1 || slack(kk) < slack(bestedge_[size_t(b)])) {
            bestedge_[size_t(b)] = kk;
        }
    }
}

void Matcher::expand_blossom(int b, bool endstage) {
    for (int s : childs_[size_t(b)]) {
        blossomparent_[size_t(s)] = -1;
        if (s < n_) {
            inblossom_[size_t(s)] = s;
        } else if (endstage && dualvar_[size_t(s)] == 0) {
            expand_blossom(s, endstage);
        } else {
            for (int leaf : leaves(s)) {
                inblossom_[size_t(leaf)] = s;
            }
        }
    }
    if (!endstage && label_[size_t(b)] == 2) {
        auto &childs = childs_[size_t(b)];
        auto &endps = endps_[size_t(b)];
        int entrychild = inblossom_[size_t(endpoint_[size_t(labelend_[size_t(b)] ^ 1)])];
        int j = int(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
        int jstep, endptrick;
        if (j & 1) {
            j -= int(childs.size());
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int p = labelend_[size_t(b)];
        while (j != 0) {
            label_[size_t(endpoint_[size_t(p ^ 1)])] = 0;
            label_[size_t(endpoint_[size_t(at(endps, j - endptrick) ^ endptrick ^ 1)])] = 0;
            assign_label(endpoint_[size_t(p ^ 1)], 2, p);
            allowedge_[size_t(at(endps, j - endptrick) / 2)] = true;
            j += jstep;
            p = at(endps, j - endptrick) ^ endptrick;
            allowedge_[size_t(p / 2)] = true;
            j += jstep;
        }
        int bv = at(childs, j);
        label_[size_t(endpoint_[size_t(p ^ 1)])] = label_[size_t(bv)] = 2;
        labelend_[size_t(endpoint_[size_t(p ^ 1)])] = labelend_[size_t(bv)] = p;
        bestedge_[size_t(bv)] = -1;
        j += jstep;
        while (at(childs, j) != entrychild) {
            bv = at(childs, j);
            if (label_[size_t(bv)] == 1) {
                j += jstep;
                continue;
            }
            int found = -1;
            for (int leaf : leaves(bv)) {
                found = leaf;
                if (label_[size_t(leaf)] != 0) {
                    break;
                }
            }
            if (found >= 0 && label_[size_t(found)] != 0) {
                label_[size_t(found)] = 0;
                label_[size_t(endpoint_[size_t(mate_[size_t(blossombase_[size_t(bv)])])])] = 0;
                assign_label(found, 2, labelend_[size_t(found)]);
            }
            j += jstep;
        }
    }
    label_[size_t(b)] = labelend_[size_t(b)] = -1;
    childs_[size_t(b)].clear();
    endps_[size_t(b)].clear();
    blossombase_[size_t(b)] = -1;
    bestedges_[size_t(b)].clear();
    has_bestedges_[size_t(b)] = false;
    bestedge_[size_t(b)] = -1;
    unused_.push_back(b);
}

void Matcher::augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[size_t(t)] != b) {
        t = blossomparent_[size_t(t)];
    }
    if (t >= n_) {
        augment_blossom(t, v);
    }
    auto &childs = childs_[size_t(b)];
    auto &endps = endps_[size_t(b)];
    int i = int(std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
        j -= int(childs.size());
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = at(childs, j);
        int p = at(endps, j - endptrick) ^ endptrick;
        if (t >= n_) {
            augment_blossom(t, endpoint_[size_t(p)]);
        }
        j += jstep;
        t = at(childs, j);
        if (t >= n_) {
            augment_blossom(t, endpoint_[size_t(p ^ 1)]);
        }
        mate_[size_t(endpoint_[size_t(p)])] = p ^ 1;
        mate_[size_t(endpoint_[size_t(p ^ 1)])] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[size_t(b)] = blossombase_[size_t(childs[0])];
}

void Matcher::augment_matching(int k) {
    int ends[2][2] = {{u_[size_t(k)], 2 * k + 1}, {v_[size_t(k)], 2 * k}};
    for (auto &sp : ends) {
        int s = sp[0], p = sp[1];
        while (true) {
            int bs = inblossom_[size_t(s)];
            if (bs >= n_) {
                augment_blossom(bs, s);
            }
            mate_[size_t(s)] = p;
            if (labelend_[size_t(bs)] == -1) {
                break;
            }
            int t = endpoint_[size_t(labelend_[size_t(bs)])];
            int bt = inblossom_[size_t(t)];
            s = endpoint_[size_t(labelend_[size_t(bt)])];
            int j = endpoint_[size_t(labelend_[size_t(bt)] ^ 1)];
            if (bt >= n_) {
                augment_blossom(bt, j);
            }
            mate_[size_t(j)] = labelend_[size_t(bt)];
            p = labelend_[size_t(bt)] ^ 1;
        }
    }
}

std::vector<int> Matcher::run() {
    const int n = n_;
    for (int stage = 0; stage < n; stage++) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = n; b < 2 * n; b++) {
            bestedges_[size_t(b)].clear();
            has_bestedges_[size_t(b)] = false;
        }
        std::fill(allowedge_.begin(), allowedge_.end(), false);
        queue_.clear();
        for (int v = 0; v < n; v++) {
            if (mate_[size_t(v)] == -1 && label_[size_t(inblossom_[size_t(v)])] == 0) {
                assign_label(v, 1, -1);
            }
        }
        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                int v = queue_.back();
                queue_.pop_back();
                for (int p : neighbend_[size_t(v)]) {
                    int k = p / 2;
                    int w = endpoint_[size_t(p)];
                    if (inblossom_[size_t(v)] == inblossom_[size_t(w)]) {
                        continue;
                    }
                    int64_t kslack = 0;
                    if (!allowedge_[size_t(k)]) {
                        kslack = slack(k);
                        if (kslack <= 0) {
                            allowedge_[size_t(k)] = true;
                        }
                    }
                    if (allowedge_[size_t(k)]) {
                        if (label_[size_t(inblossom_[size_t(w)])] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[size_t(inblossom_[size_t(w)])] == 1) {
                            int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[size_t(w)] == 0) {
                            label_[size_t(w)] = 2;
                            labelend_[size_t(w)] = p ^ 1;
                        }
                    } else if (label_[size_t(inblossom_[size_t(w)])] == 1) {
                        int b = inblossom_[size_t(v)];
                        if (bestedge_[size_t(b)] == -1 || kslack < slack(bestedge_[size_t(b)])) {
                            bestedge_[size_t(b)] = k;
                        }
                    } else if (label_[size_t(w)] == 0) {
                        if (bestedge_[size_t(w)] == -1 || kslack < slack(bestedge_[size_t(w)])) {
                            bestedge_[size_t(w)] = k;
                        }
                    }
                }
            }
            if (augmented) {
                break;
            }
            int deltatype = -1;
            int64_t delta = 0;
            int deltaedge = -1, deltablossom = -1;
            if (!maxcard_) {
                deltatype = 1;
                delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n);
            }
            for (int v = 0; v < n; v++) {
                if (label_[size_t(inblossom_[size_t(v)])] == 0 && bestedge_[size_t(v)] != -1) {
                    int64_t d = slack(bestedge_[size_t(v)]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[size_t(v)];
                    }
                }
            }
            for (int b = 0; b < 2 * n; b++) {
                if (blossomparent_[size_t(b)] == -1 && label_[size_t(b)] == 1 && bestedge_[size_t(b)] != -1) {
                    int64_t d = slack(bestedge_[size_t(b)]) / 2;
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[size_t(b)];
                    }
                }
            }
            for (int b = n; b < 2 * n; b++) {
                if (blossombase_[size_t(b)] >= 0 && blossomparent_[size_t(b)] == -1 && label_[size_t(b)] == 2 &&
                    (deltatype == -1 || dualvar_[size_t(b)] < delta)) {
                    delta = dualvar_[size_t(b)];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1) {
                deltatype = 1;
                delta = std::max<int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n));
            }
            for (int v = 0; v < n; v++) {
                int l = label_[size_t(inblossom_[size_t(v)])];
                if (l == 1) {
                    dualvar_[size_t(v)] -= delta;
                } else if (l == 2) {
                    dualvar_[size_t(v)] += delta;
                }
            }
            for (int b = n; b < 2 * n; b++) {
                if (blossombase_[size_t(b)] >= 0 && blossomparent_[size_t(b)] == -1) {
                    if (label_[size_t(b)] == 1) {
                        dualvar_[size_t(b)] += delta;
                    } else if (label_[size_t(b)] == 2) {
                        dualvar_[size_t(b)] -= delta;
                    }
                }
            }
            if (deltatype == 1) {
                break;
            } else if (deltatype == 2) {
                allowedge_[size_t(deltaedge)] = true;
                int i = u_[size_t(deltaedge)], j = v_[size_t(deltaedge)];
                if (label_[size_t(inblossom_[size_t(i)])] == 0) {
                    std::swap(i, j);
                }
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[size_t(deltaedge)] = true;
                queue_.push_back(u_[size_t(deltaedge)]);
            } else {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) {
            break;
        }
        for (int b = n; b < 2 * n; b++) {
            if (blossomparent_[size_t(b)] == -1 && blossombase_[size_t(b)] >= 0 && label_[size_t(b)] == 1 &&
                dualvar_[size_t(b)] == 0) {
                expand_blossom(b, true);
            }
        }
    }
    std::vector<int> out(size_t(n), -1);
    for (int v = 0; v < n; v++) {
        if (mate_[size_t(v)] >= 0) {
            out[size_t(v)] = endpoint_[size_t(mate_[size_t(v)])];
        }
    }
    return out;
}

}  // namespace

std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge> &edges,
                                     bool max_cardinality) {
    if (num_vertices <= 0 || edges.empty()) {
        return std::vector<int>(size_t(std::max(0, num_vertices)), -1);
    }
    return Matcher(num_vertices, edges, max_cardinality).run();
}

}  // namespace ftqs
