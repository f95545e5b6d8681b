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

#ifndef FWSIM_RANDGEN_HPP
#define FWSIM_RANDGEN_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fwsim/clifford.hpp"
#include "fwsim/errors.hpp"
#include "fwsim/rng.hpp"

namespace fwsim {

/// Symplectic maps of a small Clifford group, each with a generator word
/// (gates on abstract qubits 0 and 1) realizing it.
class CliffordClosure {
   public:
    /// Breadth-first closure of the generators acting on `n` (1 or 2) qubits.
    CliffordClosure(size_t n, const std::vector<Gate> &generators) : n_(n) {
        std::unordered_map<uint64_t, size_t> seen;
        BitMatrix id = BitMatrix::identity(2 * n);
        std::deque<size_t> frontier;
        seen[key(id)] = 0;
        maps_.push_back(id);
        words_.push_back({});
        frontier.push_back(0);
        while (!frontier.empty()) {
            size_t cur = frontier.front();
            frontier.pop_front();
            for (const auto &g : generators) {
                BitMatrix next = maps_[cur];
                gate_action(g, n).forward.left_multiply_into(next);
                uint64_t k = key(next);
                if (seen.count(k)) {
                    continue;
                }
                seen[k] = maps_.size();
                std::vector<Gate> word = words_[cur];
                word.push_back(g);
                maps_.push_back(std::move(next));
                words_.push_back(std::move(word));
                frontier.push_back(maps_.size() - 1);
            }
        }
    }

    size_t size() const {
        return maps_.size();
    }
    const BitMatrix &map(size_t k) const {
        return maps_[k];
    }
    const std::vector<Gate> &word(size_t k) const {
        return words_[k];
    }

   private:
    static uint64_t key(const BitMatrix &m) {
        uint64_t k = 0;
        size_t dim = m.num_rows();
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                k = (k << 1) | uint64_t{m.get(r, c)};
            }
        }
        return k;
    }

    size_t n_;
    std::vector<BitMatrix> maps_;
    std::vector<std::vector<Gate>> words_;
};

inline const CliffordClosure &two_qubit_closure() {
    static const CliffordClosure closure(2, {Gate::one(GateKind::H, 0), Gate::one(GateKind::H, 1),
                                             Gate::one(GateKind::S, 0), Gate::one(GateKind::S, 1),
                                             Gate::two(GateKind::CNOT, 0, 1)});
    return closure;
}

inline const CliffordClosure &one_qubit_closure() {
    static const CliffordClosure closure(1, {Gate::one(GateKind::H, 0), Gate::one(GateKind::S, 0)});
    return closure;
}

/// Index into a closure plus Pauli bits (bit 2q: X on q, bit 2q+1: Z on q).
struct CliffordDraw {
    size_t symplectic;
    uint32_t pauli;
};

inline std::vector<Gate> clifford_word(const CliffordClosure &closure, const CliffordDraw &d, size_t n) {
    std::vector<Gate> word = closure.word(d.symplectic);
    for (uint32_t q = 0; q < n; q++) {
        if ((d.pauli >> (2 * q)) & 1) {
            word.push_back(Gate::one(GateKind::X, q));
        }
        if ((d.pauli >> (2 * q + 1)) & 1) {
            word.push_back(Gate::one(GateKind::Z, q));
        }
    }
    return word;
}

inline CliffordDraw draw_two_qubit_clifford(Rng &rng) {
    size_t s = static_cast<size_t>(uniform_below(rng, two_qubit_closure().size()));
    return {s, static_cast<uint32_t>(uniform_below(rng, 16))};
}

inline CliffordDraw draw_one_qubit_clifford(Rng &rng) {
    size_t s = static_cast<size_t>(uniform_below(rng, one_qubit_closure().size()));
    return {s, static_cast<uint32_t>(uniform_below(rng, 4))};
}

/// Uniform element of the 2-qubit Clifford group modulo phase, as a gate word.
inline std::vector<Gate> random_two_qubit_clifford(Rng &rng) {
    return clifford_word(two_qubit_closure(), draw_two_qubit_clifford(rng), 2);
}

inline std::vector<Gate> random_single_qubit_clifford(Rng &rng) {
    return clifford_word(one_qubit_closure(), draw_one_qubit_clifford(rng), 1);
}

enum class Architecture { ring1d, complete };

inline const char *architecture_name(Architecture a) {
    return a == Architecture::ring1d ? "ring1d" : "complete";
}

inline Architecture parse_architecture(std::string_view s) {
    if (s == "ring1d") {
        return Architecture::ring1d;
    }
    if (s == "complete") {
        return Architecture::complete;
    }
    throw UsageError("unknown architecture '" + std::string(s) + "' (expected ring1d or complete)");
}

struct ArchitectureSpec {
    Architecture kind = Architecture::ring1d;
    size_t n = 2;
    double alpha = 0;
    uint64_t seed = 0;
};

/// L = round-half-up(alpha n ln n).
inline size_t two_qubit_gate_count(size_t n, double alpha) {
    if (!(alpha >= 0) || !std::isfinite(alpha)) {
        throw UsageError("alpha must be a finite nonnegative number");
    }
    double l = alpha * static_cast<double>(n) * std::log(static_cast<double>(n));
    return static_cast<size_t>(std::floor(l + 0.5));
}

/// Qubit pair of the g-th two-qubit gate in the brickwork: layer g / (n/2)
/// alternates between even and odd bonds of the ring.
inline std::pair<uint32_t, uint32_t> ring1d_pair(size_t n, size_t g) {
    size_t per_layer = n / 2;
    size_t layer = g / per_layer;
    uint32_t slot = static_cast<uint32_t>(g % per_layer);
    uint32_t a = static_cast<uint32_t>((2 * slot + (layer % 2)) % n);
    return {a, static_cast<uint32_t>((a + 1) % n)};
}

inline void append_word(CliffordCircuit &c, const std::vector<Gate> &word, uint32_t a, uint32_t b) {
    for (Gate g : word) {
        g.q[0] = g.q[0] == 0 ? a : b;
        if (g.arity() == 2) {
            g.q[1] = g.q[1] == 0 ? a : b;
        }
        c.append(g);
    }
}

/// One random single-qubit Clifford per qubit, then L random two-qubit Cliffords.
inline CliffordCircuit build_circuit(const ArchitectureSpec &spec) {
    require_qubits(spec.n);
    if (spec.kind == Architecture::ring1d && spec.n % 2 != 0) {
        throw UsageError("ring1d needs an even qubit count");
    }
    if (spec.n < 2) {
        throw UsageError("random circuits need at least 2 qubits");
    }
    size_t gates = two_qubit_gate_count(spec.n, spec.alpha);
    Rng rng(spec.seed);
    CliffordCircuit c(spec.n);
    uint32_t n = static_cast<uint32_t>(spec.n);
    for (uint32_t q = 0; q < n; q++) {
        append_word(c, random_single_qubit_clifford(rng), q, q);
    }
    for (size_t g = 0; g < gates; g++) {
        uint32_t a, b;
        if (spec.kind == Architecture::ring1d) {
            std::tie(a, b) = ring1d_pair(spec.n, g);
        } else {
            a = static_cast<uint32_t>(uniform_below(rng, n));
            b = static_cast<uint32_t>(uniform_below(rng, n - 1));
            if (b >= a) {
                b++;
            }
        }
        append_word(c, random_two_qubit_clifford(rng), a, b);
    }
    return c;
}

}  // namespace fwsim

#endif
