// Copyright 2026 The fwsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FWSIM_COVER_HPP
#define FWSIM_COVER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fwsim/errors.hpp"
#include "fwsim/frame.hpp"

namespace fwsim {

/// Greedy hypergraph vertex cover: repeatedly removes a vertex of maximum
/// degree (lowest index on ties) with its incident edges. Returns the removed
/// vertices in removal order.
inline std::vector<uint32_t> greedy_cover(const Hypergraph &h) {
    size_t nv = h.num_vertices;
    std::vector<uint32_t> degree(nv, 0);
    for (const auto &e : h.edges) {
        for (auto v : e.vars()) {
            if (v >= nv) {
                throw UsageError("greedy_cover: edge vertex out of range");
            }
            degree[v]++;
        }
    }
    // Incidence lists in CSR form.
    std::vector<size_t> start(nv + 1, 0);
    for (size_t v = 0; v < nv; v++) {
        start[v + 1] = start[v] + degree[v];
    }
    std::vector<uint32_t> incident(start[nv]);
    std::vector<size_t> fill(start.begin(), start.end() - 1);
    for (size_t e = 0; e < h.edges.size(); e++) {
        for (auto v : h.edges[e].vars()) {
            incident[fill[v]++] = static_cast<uint32_t>(e);
        }
    }
    std::vector<bool> alive(h.edges.size(), true);
    std::vector<uint32_t> removed;
    while (true) {
        size_t best = nv;
        uint32_t best_degree = 0;
        for (size_t v = 0; v < nv; v++) {
            if (degree[v] > best_degree) {
                best_degree = degree[v];
                best = v;
            }
        }
        if (best == nv) {
            break;
        }
        removed.push_back(static_cast<uint32_t>(best));
        for (size_t k = start[best]; k < start[best + 1]; k++) {
            uint32_t e = incident[k];
            if (!alive[e]) {
                continue;
            }
            alive[e] = false;
            for (auto v : h.edges[e].vars()) {
                degree[v]--;
            }
        }
    }
    return removed;
}

enum class CoverMode { weak, born };

inline const char *cover_mode_name(CoverMode m) {
    return m == CoverMode::weak ? "weak" : "born";
}

struct CoverResult {
    CoverMode mode;
    std::vector<uint32_t> removed;          // covered z-vertices, in removal order
    std::vector<uint32_t> retained_qubits;  // ascending
    FramePolynomial reduced_frame;          // z-variables of retained qubits only
};

/// Whether a z-restricted monomial must be covered in the given mode.
inline bool is_cover_edge(const Monomial &m, CoverMode mode) {
    return mode == CoverMode::weak ? m.degree() >= 2 : m.degree() == 3;
}

inline CoverResult simulatable_set(const FramePolynomial &final_frame, CoverMode mode) {
    size_t n = final_frame.num_qubits();
    FramePolynomial restricted = restrict_x_zero(final_frame);
    Hypergraph h{2 * n, {}};
    for (const auto &m : hypergraph_view(restricted).edges) {
        if (is_cover_edge(m, mode)) {
            h.edges.push_back(m);
        }
    }
    CoverResult out{mode, greedy_cover(h), {}, FramePolynomial(n)};
    std::vector<bool> gone(n, false);
    std::vector<uint32_t> discard;
    for (auto v : out.removed) {
        gone[v - n] = true;
        discard.push_back(static_cast<uint32_t>(v - n));
    }
    for (uint32_t q = 0; q < n; q++) {
        if (!gone[q]) {
            out.retained_qubits.push_back(q);
        }
    }
    out.reduced_frame = trace_out(restricted, discard);
    return out;
}

}  // namespace fwsim

#endif
