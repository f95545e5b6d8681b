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

#include "fwsim/oracle.hpp"
#include "fwsim/verify.hpp"
#include "test_util.hpp"

using namespace fwsim;

TEST(oracle, pauli_operators) {
    PhasePoint y(1);
    y.set_x(0, true);
    y.set_z(0, true);
    DenseOperator py = pauli_operator(y);
    EXPECT_NEAR(std::abs(py(0, 1) - cplx(0, -1)), 0, 1e-15);
    EXPECT_NEAR(std::abs(py(1, 0) - cplx(0, 1)), 0, 1e-15);
    for (uint64_t k = 0; k < 16; k++) {
        DenseOperator t = pauli_operator(phase_point_from_index(2, k));
        EXPECT_LT((t * t).max_abs_diff(DenseOperator::identity(2)), 1e-15);
        EXPECT_LT(t.max_abs_diff(t.adjoint()), 1e-15);
    }
}

TEST(oracle, gate_unitaries_are_unitary) {
    Rng rng(1);
    CliffordCircuit c = testutil::random_circuit(3, 20, rng);
    DenseOperator u = circuit_unitary(c);
    EXPECT_LT((u * u.adjoint()).max_abs_diff(DenseOperator::identity(3)), 1e-12);
    DenseOperator prod = DenseOperator::identity(3);
    for (const auto &g : c.gates) {
        prod = gate_unitary(g, 3) * prod;
    }
    EXPECT_LT(prod.max_abs_diff(u), 1e-12);
}

// Tr[A(u) A(v)] = 2^n delta_uv, Tr A(u) = 1, and rho = sum_u W(u) A(u).
TEST(oracle, phase_point_completeness_and_reconstruction) {
    Rng rng(2);
    for (size_t n = 1; n <= 2; n++) {
        for (int rep = 0; rep < 3; rep++) {
            FramePolynomial f = random_frame(n, rng, 2 * n + 1);
            BitVector b(n);
            uint64_t count = uint64_t{1} << (2 * n);
            std::vector<DenseOperator> a;
            for (uint64_t k = 0; k < count; k++) {
                a.push_back(dense_phase_point(f, phase_point_from_index(n, k), b, n));
                EXPECT_NEAR(std::abs(a.back().trace() - cplx(1, 0)), 0, 1e-12);
            }
            for (uint64_t i = 0; i < count; i++) {
                for (uint64_t j = 0; j < count; j++) {
                    double expected = i == j ? static_cast<double>(size_t{1} << n) : 0.0;
                    EXPECT_NEAR(std::abs((a[i] * a[j]).trace() - cplx(expected, 0)), 0, 1e-10);
                }
            }
            std::vector<SingleQubitState> states;
            for (size_t q = 0; q < n; q++) {
                states.push_back(testutil::random_state(rng));
            }
            DenseOperator rho = product_density(states);
            evolve_density(rho, testutil::random_circuit(n, 8, rng));
            WignerTable w = exact_wigner(rho, f, b);
            DenseOperator sum(n);
            double total = 0;
            for (uint64_t k = 0; k < count; k++) {
                double direct = (rho * a[k]).trace().real() / static_cast<double>(size_t{1} << n);
                EXPECT_NEAR(w.values[k], direct, 1e-12);
                DenseOperator term = a[k];
                term *= w.values[k];
                sum += term;
                total += w.values[k];
            }
            EXPECT_NEAR(total, 1, 1e-12);
            EXPECT_LT(sum.max_abs_diff(rho), 1e-10);
        }
    }
}

TEST(oracle, product_density_is_a_state) {
    Rng rng(3);
    std::vector<SingleQubitState> states{testutil::random_state(rng), SingleQubitState::zero(),
                                         SingleQubitState::magic_a()};
    DenseOperator rho = product_density(states);
    EXPECT_NEAR(rho.trace().real(), 1, 1e-14);
    EXPECT_LT(rho.max_abs_diff(rho.adjoint()), 1e-15);
    // Z on qubit 1 has expectation +1.
    PhasePoint z1(3);
    z1.set_z(1, true);
    EXPECT_NEAR((rho * pauli_operator(z1)).trace().real(), 1, 1e-14);
}

TEST(oracle, born_marginals) {
    CliffordCircuit bell(2);
    bell.append(Gate::one(GateKind::H, 0));
    bell.append(Gate::two(GateKind::CNOT, 0, 1));
    std::vector<SingleQubitState> zeros(2, SingleQubitState::zero());
    std::vector<uint32_t> both{0, 1}, first{0};
    auto p = exact_born(bell, zeros, both);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[3], 0.5, 1e-15);
    EXPECT_NEAR(p[1] + p[2], 0, 1e-15);
    EXPECT_NEAR(collision_probability(p), 0.5, 1e-15);
    auto m = exact_born(bell, zeros, first);
    EXPECT_NEAR(m[0], 0.5, 1e-15);

    // X on qubit 2 of three: bit t of the index is subset[t].
    CliffordCircuit x(3);
    x.append(Gate::one(GateKind::X, 2));
    std::vector<SingleQubitState> z3(3, SingleQubitState::zero());
    std::vector<uint32_t> order{2, 0};
    auto q = exact_born(x, z3, order);
    EXPECT_NEAR(q[1], 1, 1e-15);
    EXPECT_THROW(exact_born(CliffordCircuit(11), std::vector<SingleQubitState>(11), order), Unsupported);
}

TEST(oracle, conjugation_image_detects_signs) {
    DenseOperator h = gate_unitary(Gate::one(GateKind::H, 0), 1);
    PhasePoint y(1);
    y.set_x(0, true);
    y.set_z(0, true);
    auto img = conjugation_image(h, y);
    ASSERT_TRUE(img.has_value());
    EXPECT_EQ(img->str(), "-Y");
}
