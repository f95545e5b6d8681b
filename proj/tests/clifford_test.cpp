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

#include "fwsim/clifford.hpp"
#include "fwsim/oracle.hpp"
#include "fwsim/verify.hpp"
#include "test_util.hpp"

using namespace fwsim;

namespace {

std::vector<Gate> all_gates(size_t n) {
    std::vector<Gate> out;
    for (auto k : {GateKind::H, GateKind::S, GateKind::X, GateKind::Z}) {
        for (uint32_t q = 0; q < n; q++) {
            out.push_back(Gate::one(k, q));
        }
    }
    for (auto k : {GateKind::CNOT, GateKind::CZ}) {
        for (uint32_t a = 0; a < n; a++) {
            for (uint32_t b = 0; b < n; b++) {
                if (a != b) {
                    out.push_back(Gate::two(k, a, b));
                }
            }
        }
    }
    return out;
}

}  // namespace

TEST(gate_action, hadamard_table_entry) {
    GateAction h = gate_action(Gate::one(GateKind::H, 0), 1);
    BitMatrix swap(2, 2);
    swap.set(0, 1, true);
    swap.set(1, 0, true);
    EXPECT_EQ(h.smap(1).matrix(), swap);
    EXPECT_EQ(to_string(h.phase), "a0x*a0z");
}

TEST(gate_action, cnot_phase) {
    GateAction c = gate_action(Gate::two(GateKind::CNOT, 0, 1), 2);
    EXPECT_EQ(c.phase, parse_frame_polynomial("a1z*a0x*a0z + a1z*a0x*a1x + a1z*a0x", 2));
}

TEST(gate_action, pauli_x_signs) {
    GateAction x = gate_action(Gate::one(GateKind::X, 0), 1);
    DenseOperator u = gate_unitary(Gate::one(GateKind::X, 0), 1);
    for (uint64_t k = 0; k < 4; k++) {
        PhasePoint a = phase_point_from_index(1, k);
        auto img = conjugation_image(u, a);
        ASSERT_TRUE(img.has_value());
        EXPECT_EQ(img->a, a);
        EXPECT_EQ(img->sign, a.z(0));
        EXPECT_EQ(evaluate(x.phase, a, BitVector(1)), a.z(0));
    }
}

// U T_a U† = (-1)^{P(a)} T_{S(a)} for every gate, placement, and a.
TEST(gate_action, matches_dense_conjugation) {
    for (size_t n = 1; n <= 3; n++) {
        for (const auto &g : all_gates(n)) {
            EXPECT_LT(gate_action_error(g, n), 1e-12) << gate_name(g.kind) << " " << g.q[0] << " " << g.q[1];
        }
    }
}

TEST(gate_action, local_map_inverse) {
    for (const auto &g : all_gates(3)) {
        GateAction act = gate_action(g, 3);
        EXPECT_EQ(act.forward.dense(3) * act.inverse.dense(3), BitMatrix::identity(6));
    }
}

TEST(circuit_symplectic, examples) {
    CliffordCircuit empty(3);
    EXPECT_EQ(circuit_symplectic(empty), SymplecticMap::identity(3));
    CliffordCircuit hh(2);
    hh.append(Gate::one(GateKind::H, 1));
    hh.append(Gate::one(GateKind::H, 1));
    EXPECT_EQ(circuit_symplectic(hh), SymplecticMap::identity(2));
}

TEST(circuit_symplectic, matches_dense_conjugation) {
    Rng rng(10);
    for (int rep = 0; rep < 10; rep++) {
        CliffordCircuit c = testutil::random_circuit(3, 10, rng);
        SymplecticMap s = circuit_symplectic(c);
        EXPECT_TRUE(verify_symplectic(s.matrix()));
        DenseOperator u = circuit_unitary(c);
        for (uint64_t k = 0; k < 64; k++) {
            PhasePoint a = phase_point_from_index(3, k);
            auto img = conjugation_image(u, a);
            ASSERT_TRUE(img.has_value());
            EXPECT_EQ(img->a, apply_map(s, a));
        }
    }
}

TEST(propagate_frame, empty_circuit) {
    Rng rng(1);
    FramePolynomial f = random_frame(2, rng, 5);
    auto p = propagate_frame(CliffordCircuit(2), f);
    EXPECT_EQ(p.frame, f);
    EXPECT_EQ(p.smap, SymplecticMap::identity(2));
}

TEST(propagate_frame, phase_gate_example) {
    auto f = parse_frame_polynomial("a1z + a1x*a2z + a1x*a2x*a2z + a1x*a1z*a2x", 3);
    CliffordCircuit c(3);
    c.append(Gate::one(GateKind::S, 1));
    auto p = propagate_frame(c, f);
    EXPECT_EQ(p.frame, parse_frame_polynomial("a1z + a1x*a1z + a1x*a2x + a1x*a2z + a1x*a1z*a2x + a1x*a2x*a2z", 3));
}

// U A^F(u) U† = A^{F'}(S u), gate by gate and for whole circuits.
TEST(propagate_frame, phase_point_soundness) {
    Rng rng(12);
    for (size_t n = 1; n <= 3; n++) {
        for (const auto &g : all_gates(n)) {
            for (int rep = 0; rep < 3; rep++) {
                FramePolynomial f = random_frame(n, rng, 3 * n);
                BitVector b(n);
                EXPECT_LT(gate_soundness_error(g, f, b), 1e-10);
            }
        }
    }
    for (int rep = 0; rep < 5; rep++) {
        CliffordCircuit c = testutil::random_circuit(3, 12, rng);
        FramePolynomial f = random_frame(3, rng, 8);
        auto p = propagate_frame(c, f);
        DenseOperator u = circuit_unitary(c);
        DenseOperator ud = u.adjoint();
        double worst = 0;
        for (uint64_t idx = 0; idx < 64; idx++) {
            PhasePoint pt = phase_point_from_index(3, idx);
            DenseOperator lhs = u * dense_phase_point(f, pt, BitVector(3), 3) * ud;
            worst = std::max(worst, lhs.max_abs_diff(dense_phase_point(p.frame, apply_map(p.smap, pt), BitVector(3), 3)));
        }
        EXPECT_LT(worst, 1e-10);
    }
}

TEST(propagate_frame, parametric_frames_follow_each_selector) {
    Rng rng(13);
    CliffordCircuit c = testutil::random_circuit(3, 15, rng);
    FramePolynomial f(3);
    for (uint32_t q = 0; q < 3; q++) {
        f.toggle(Monomial{q, 3 + q}, AffineSelector::bit(3, q));
    }
    auto p = propagate_frame(c, f);
    for (uint64_t bi = 0; bi < 8; bi++) {
        BitVector b = testutil::from_index(bi, 3);
        auto fixed = propagate_frame(c, instantiate(f, b));
        EXPECT_EQ(instantiate(p.frame, b), fixed.frame);
    }
}

TEST(conjugate_pauli, examples) {
    CliffordCircuit id(2);
    PauliString p = PauliString::from_text("-XZ");
    EXPECT_EQ(conjugate_pauli(id, p, Direction::forward), p);
    CliffordCircuit h(1);
    h.append(Gate::one(GateKind::H, 0));
    EXPECT_EQ(conjugate_pauli(h, PauliString::from_text("Z"), Direction::forward).str(), "+X");
    CliffordCircuit s(1);
    s.append(Gate::one(GateKind::S, 0));
    EXPECT_EQ(conjugate_pauli(s, PauliString::from_text("X"), Direction::forward).str(), "+Y");
    EXPECT_EQ(conjugate_pauli(s, PauliString::from_text("X"), Direction::backward).str(), "-Y");
}

TEST(conjugate_pauli, matches_dense_oracle) {
    Rng rng(14);
    for (size_t n = 1; n <= 4; n++) {
        for (int rep = 0; rep < 3; rep++) {
            CliffordCircuit c = testutil::random_circuit(n, 12, rng);
            DenseOperator u = circuit_unitary(c);
            DenseOperator ud = u.adjoint();
            for (uint64_t k = 0; k < (uint64_t{1} << (2 * n)); k++) {
                PauliString p(phase_point_from_index(n, k), false);
                DenseOperator t = pauli_operator(p);
                EXPECT_LT((u * t * ud).max_abs_diff(pauli_operator(conjugate_pauli(c, p, Direction::forward))), 1e-12);
                EXPECT_LT((ud * t * u).max_abs_diff(pauli_operator(conjugate_pauli(c, p, Direction::backward))), 1e-12);
            }
        }
    }
}

TEST(circuit_text, round_trip) {
    Rng rng(15);
    CliffordCircuit c = testutil::random_circuit(4, 30, rng);
    std::string text = format_circuit(c);
    CliffordCircuit back = parse_circuit(text);
    EXPECT_EQ(back.n, c.n);
    EXPECT_EQ(back.gates, c.gates);
    EXPECT_EQ(format_circuit(back), text);
    auto commented = parse_circuit("# comment\nqubits 2   # header\n\nCNOT 0 1\nH 1 # trailing\n");
    EXPECT_EQ(commented.gates.size(), 2u);
    EXPECT_EQ(commented.gates[0], Gate::two(GateKind::CNOT, 0, 1));
}

TEST(circuit_text, errors) {
    EXPECT_THROW(parse_circuit("H 0\n"), ParseError);
    EXPECT_THROW(parse_circuit(""), ParseError);
    EXPECT_THROW(parse_circuit("qubits 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nT 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nH 2\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nCNOT 1 1\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nCNOT 1\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nH -1\n"), ParseError);
    CliffordCircuit c(2);
    EXPECT_THROW(c.append(Gate::two(GateKind::CZ, 0, 0)), UsageError);
    EXPECT_THROW(c.append(Gate::one(GateKind::S, 5)), UsageError);
}

// Leading H-free blocks act on |0..0> as a basis permutation up to phase.
TEST(reduce_zero_state_prefix, preserves_output_state) {
    Rng rng(16);
    for (int rep = 0; rep < 30; rep++) {
        size_t n = 2 + uniform_below(rng, 3);
        CliffordCircuit c(n);
        for (int g = 0; g < 12; g++) {
            Gate gate = testutil::random_gate(n, rng);
            if (gate.kind != GateKind::H) {
                c.append(gate);
            }
        }
        CliffordCircuit tail = testutil::random_circuit(n, 10, rng);
        for (const auto &g : tail.gates) {
            c.append(g);
        }
        CliffordCircuit r = reduce_zero_state_prefix(c);
        std::vector<SingleQubitState> zeros(n, SingleQubitState::zero());
        DenseOperator a = product_density(zeros), b = product_density(zeros);
        evolve_density(a, c);
        evolve_density(b, r);
        EXPECT_LT(a.max_abs_diff(b), 1e-12);
    }
}

// A CNOT ahead of the first H leaves a z-quadratic in the zero-state frame;
// the reduced circuit does not.
TEST(reduce_zero_state_prefix, removes_entangling_prefix_terms) {
    CliffordCircuit c(2);
    c.append(Gate::two(GateKind::CNOT, 0, 1));
    c.append(Gate::one(GateKind::H, 0));
    auto raw = restrict_x_zero(propagate_frame(c, FramePolynomial(2)).frame);
    EXPECT_NE(raw.coefficient(Monomial{2, 3}), nullptr);
    auto reduced = restrict_x_zero(propagate_frame(reduce_zero_state_prefix(c), FramePolynomial(2)).frame);
    EXPECT_TRUE(degree_profile(reduced).is_linear);
}
