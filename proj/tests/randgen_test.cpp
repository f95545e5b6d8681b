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


#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "fwsim/oracle.hpp"
#include "fwsim/randgen.hpp"
#include "test_util.hpp"

using namespace fwsim;

namespace {

uint64_t matrix_key(const BitMatrix &m) {
    uint64_t k = 0;
    for (size_t r = 0; r < m.num_rows(); r++) {
        for (size_t c = 0; c < m.num_cols(); c++) {
            k = (k << 1) | uint64_t{m.get(r, c)};
        }
    }
    return k;
}

CliffordCircuit word_circuit(const std::vector<Gate> &word, size_t n) {
    CliffordCircuit c(n);
    for (const auto &g : word) {
        c.append(g);
    }
    return c;
}

}  // namespace

TEST(closure, two_qubit_group_order) {
    const auto &cl = two_qubit_closure();
    ASSERT_EQ(cl.size(), 720u);
    std::set<uint64_t> keys;
    for (size_t k = 0; k < cl.size(); k++) {
        EXPECT_TRUE(verify_symplectic(cl.map(k)));
        keys.insert(matrix_key(cl.map(k)));
        EXPECT_EQ(circuit_symplectic(word_circuit(cl.word(k), 2)).matrix(), cl.map(k));
    }
    EXPECT_EQ(keys.size(), 720u);
    EXPECT_TRUE(cl.word(0).empty());
}

TEST(closure, one_qubit_group_order) {
    const auto &cl = one_qubit_closure();
    ASSERT_EQ(cl.size(), 6u);
    for (size_t k = 0; k < cl.size(); k++) {
        EXPECT_TRUE(verify_symplectic(cl.map(k)));
    }
}

TEST(random_two_qubit_clifford, identity_frequency) {
    Rng rng(1);
    const int draws = 1000000;
    int hits = 0;
    for (int k = 0; k < draws; k++) {
        auto d = draw_two_qubit_clifford(rng);
        hits += d.symplectic == 0 && d.pauli == 0;
    }
    double p = 1.0 / 11520;
    EXPECT_NEAR(hits, draws * p, 3 * std::sqrt(draws * p * (1 - p)));
}

TEST(random_two_qubit_clifford, symplectic_part_is_uniform) {
    Rng rng(2);
    const int draws = 1000000;
    std::vector<int> counts(720, 0);
    std::vector<int> paulis(16, 0);
    for (int k = 0; k < draws; k++) {
        auto d = draw_two_qubit_clifford(rng);
        counts[d.symplectic]++;
        paulis[d.pauli]++;
    }
    double e = draws / 720.0;
    double chi2 = 0;
    for (int c : counts) {
        chi2 += (c - e) * (c - e) / e;
    }
    // 719 dof: mean 719, sd about 37.9.
    EXPECT_LT(chi2, 719 + 4 * 37.9);
    double ep = draws / 16.0, chi2p = 0;
    for (int c : paulis) {
        chi2p += (c - ep) * (c - ep) / ep;
    }
    EXPECT_LT(chi2p, 37.7);  // 99.9% quantile, 15 dof
}

TEST(random_two_qubit_clifford, words_are_clifford) {
    Rng rng(3);
    for (int rep = 0; rep < 50; rep++) {
        auto word = random_two_qubit_clifford(rng);
        CliffordCircuit c = word_circuit(word, 2);
        DenseOperator u = circuit_unitary(c);
        SymplecticMap s = circuit_symplectic(c);
        for (uint64_t k = 0; k < 16; k++) {
            PhasePoint a = phase_point_from_index(2, k);
            auto img = conjugation_image(u, a);
            ASSERT_TRUE(img.has_value());
            EXPECT_EQ(img->a, apply_map(s, a));
            EXPECT_EQ(*img, conjugate_pauli(c, PauliString(a, false), Direction::forward));
        }
    }
}

TEST(random_single_qubit_clifford, covers_the_group) {
    Rng rng(4);
    std::set<std::string> seen;
    for (int k = 0; k < 5000; k++) {
        CliffordCircuit c = word_circuit(random_single_qubit_clifford(rng), 1);
        std::string sig;
        for (const char *p : {"X", "Z"}) {
            sig += conjugate_pauli(c, PauliString::from_text(p), Direction::forward).str();
        }
        seen.insert(sig);
    }
    EXPECT_EQ(seen.size(), 24u);
}

TEST(build_circuit, gate_counts) {
    EXPECT_EQ(two_qubit_gate_count(10, 1.0), 23u);
    EXPECT_EQ(two_qubit_gate_count(10, 0.0), 0u);
    EXPECT_EQ(two_qubit_gate_count(64, 0.8), 213u);
    EXPECT_THROW(two_qubit_gate_count(10, -1.0), UsageError);
    auto c = build_circuit({Architecture::complete, 8, 0.0, 1});
    for (const auto &g : c.gates) {
        EXPECT_EQ(g.arity(), 1u);
    }
}

TEST(build_circuit, ring_pairs_and_layers) {
    size_t n = 10;
    for (size_t g = 0; g < 23; g++) {
        auto [a, b] = ring1d_pair(n, g);
        EXPECT_EQ(b, (a + 1) % n);
    }
    for (size_t layer = 0; layer < 4; layer++) {
        std::set<uint32_t> used;
        for (size_t s = 0; s < n / 2; s++) {
            auto [a, b] = ring1d_pair(n, layer * (n / 2) + s);
            EXPECT_TRUE(used.insert(a).second);
            EXPECT_TRUE(used.insert(b).second);
            EXPECT_EQ(a % 2, layer % 2);
        }
    }
    auto c = build_circuit({Architecture::ring1d, n, 1.0, 5});
    for (const auto &g : c.gates) {
        if (g.arity() == 2) {
            uint32_t lo = std::min(g.q[0], g.q[1]), hi = std::max(g.q[0], g.q[1]);
            EXPECT_TRUE(hi == lo + 1 || (lo == 0 && hi == n - 1));
        }
    }
}

TEST(build_circuit, deterministic_and_validated) {
    ArchitectureSpec spec{Architecture::complete, 12, 0.7, 99};
    EXPECT_EQ(format_circuit(build_circuit(spec)), format_circuit(build_circuit(spec)));
    spec.seed = 100;
    auto other = build_circuit(spec);
    spec.seed = 99;
    EXPECT_NE(format_circuit(build_circuit(spec)), format_circuit(other));
    EXPECT_THROW(build_circuit({Architecture::ring1d, 7, 1.0, 1}), UsageError);
    EXPECT_THROW(build_circuit({Architecture::complete, 1, 1.0, 1}), UsageError);
    EXPECT_EQ(parse_architecture("complete"), Architecture::complete);
    EXPECT_THROW(parse_architecture("grid"), UsageError);
}
