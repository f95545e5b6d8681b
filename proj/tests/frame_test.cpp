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

#include "fwsim/frame.hpp"
#include "test_util.hpp"

using namespace fwsim;

namespace {

// Qubits 1 and 2 carry the example's labels; qubit 0 is idle.
constexpr size_t kExampleN = 3;
constexpr const char *kPhaseGateInitial = "a1z + a1x*a2z + a1x*a2x*a2z + a1x*a1z*a2x";
constexpr const char *kPhaseGateFinal =
    "a1z + a1x*a1z + a1x*a2x + a1x*a2z + a1x*a1z*a2x + a1x*a2x*a2z";

PhasePoint point(size_t n, std::initializer_list<std::string_view> ones) {
    PhasePoint p(n);
    for (auto name : ones) {
        size_t q = static_cast<size_t>(name[1] - '0');
        if (name[2] == 'x') {
            p.set_x(q, true);
        } else {
            p.set_z(q, true);
        }
    }
    return p;
}

FramePolynomial random_parametric_frame(size_t n, Rng &rng, size_t terms) {
    FramePolynomial f(n);
    for (size_t t = 0; t < terms; t++) {
        size_t d = 1 + uniform_below(rng, 3);
        std::vector<uint32_t> vars;
        for (size_t k = 0; k < d; k++) {
            vars.push_back(static_cast<uint32_t>(uniform_below(rng, 2 * n)));
        }
        AffineSelector c(n, rng() & 1);
        for (size_t q = 0; q < n; q++) {
            c.mask.set(q, (rng() & 3) == 0);
        }
        f.toggle(Monomial(std::span<const uint32_t>(vars)), c);
    }
    return f;
}

}  // namespace

TEST(monomial, canonical_form) {
    EXPECT_EQ(Monomial({5, 1, 5}), Monomial({1, 5}));
    EXPECT_EQ(Monomial({3, 2, 1}).key(), Monomial({1, 2, 3}).key());
    EXPECT_EQ(Monomial::from_key(Monomial({4, 0, 9}).key()), Monomial({0, 4, 9}));
    EXPECT_LT(Monomial({9}), Monomial({0, 1}));
    EXPECT_LT(Monomial({0, 2}), Monomial({1, 2}));
    EXPECT_THROW(Monomial({0, 1, 2, 3}), UsageError);
    EXPECT_NO_THROW(Monomial({0, 1, 2, 1}));
    EXPECT_THROW(Monomial({70000}), UsageError);
}

TEST(frame, toggle_cancels) {
    FramePolynomial f(2);
    f.toggle(Monomial{0, 2});
    f.toggle(Monomial{2, 0});
    EXPECT_TRUE(f.empty());
    f.toggle(Monomial{1}, AffineSelector::bit(2, 0));
    f.toggle(Monomial{1}, AffineSelector::one(2));
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(to_string(f), "(1+b[0])*a1x");
    EXPECT_THROW(f.toggle(Monomial{4}), UsageError);
}

TEST(frame, evaluate_examples) {
    FramePolynomial empty(2);
    EXPECT_FALSE(evaluate(empty, point(2, {"a1x", "a0z"}), BitVector(2)));

    FramePolynomial f(2);
    f.toggle(Monomial{1, 3}, AffineSelector::bit(2, 1));
    BitVector b(2);
    b.set(1, true);
    EXPECT_TRUE(evaluate(f, point(2, {"a1x", "a1z"}), b));
    EXPECT_FALSE(evaluate(f, point(2, {"a1x", "a1z"}), BitVector(2)));

    auto ex = parse_frame_polynomial(kPhaseGateInitial, kExampleN);
    EXPECT_FALSE(evaluate(ex, point(kExampleN, {"a1x", "a2x", "a2z"}), BitVector(kExampleN)));
    EXPECT_TRUE(evaluate(ex, point(kExampleN, {"a1x", "a2z"}), BitVector(kExampleN)));
}

TEST(frame, text_round_trip) {
    Rng rng(3);
    for (int rep = 0; rep < 50; rep++) {
        auto f = random_parametric_frame(4, rng, 12);
        EXPECT_EQ(parse_frame_polynomial(to_string(f), 4), f);
    }
    EXPECT_EQ(to_string(FramePolynomial(3)), "0");
    EXPECT_TRUE(parse_frame_polynomial("0", 3).empty());
    auto g = parse_frame_polynomial("b[1]*a0x*a1z + (1+b[0]+b[2])*a2z", 3);
    EXPECT_EQ(to_string(g), "(1+b[0]+b[2])*a2z + b[1]*a0x*a1z");
}

TEST(frame, parse_errors) {
    EXPECT_THROW(parse_frame_polynomial("a3z", 3), ParseError);
    EXPECT_THROW(parse_frame_polynomial("a0y", 3), ParseError);
    EXPECT_THROW(parse_frame_polynomial("a0x*a1x*a2x*a0z", 3), ParseError);
    EXPECT_THROW(parse_frame_polynomial("a0x +", 3), ParseError);
    EXPECT_THROW(parse_frame_polynomial("b[0]", 3), ParseError);
    EXPECT_THROW(parse_frame_polynomial("b[5]*a0x", 3), ParseError);
    EXPECT_THROW(parse_frame_polynomial("b[0]*b[1]*a0x", 3), ParseError);
}

TEST(frame, add_is_xor) {
    Rng rng(4);
    auto f = random_parametric_frame(3, rng, 10);
    EXPECT_TRUE(add(f, f).empty());
    EXPECT_EQ(add(f, FramePolynomial(3)), f);
    FramePolynomial a(3), b(3);
    a.toggle(Monomial{0});
    b.toggle(Monomial{1, 4});
    auto sum = add(a, b);
    EXPECT_EQ(sum.size(), 2u);
    EXPECT_THROW(add(a, FramePolynomial(2)), UsageError);
}

TEST(frame, substitute_examples) {
    FramePolynomial f(3);
    f.toggle(Monomial{4});
    EXPECT_EQ(substitute(f, {}), f);
    auto g = substitute(f, {{4, {1, 4}}});
    EXPECT_EQ(to_string(g), "a1x + a1z");
    EXPECT_THROW(substitute(f, {{9, {1}}}), UsageError);
}

// substitute(F, v -> sum of row v) equals F composed with that linear map.
TEST(frame, substitute_matches_composition) {
    Rng rng(8);
    size_t n = 3;
    for (int rep = 0; rep < 40; rep++) {
        auto f = random_parametric_frame(n, rng, 10);
        Substitution subs;
        for (int k = 0; k < 2; k++) {
            uint32_t v = static_cast<uint32_t>(uniform_below(rng, 2 * n));
            std::vector<uint32_t> repl;
            for (uint32_t w = 0; w < 2 * n; w++) {
                if ((rng() & 3) == 0) {
                    repl.push_back(w);
                }
            }
            subs[v] = repl;
        }
        BitMatrix m = BitMatrix::identity(2 * n);
        for (auto &[v, repl] : subs) {
            m.row(v).clear();
            for (auto w : repl) {
                m.row(v).set(w, true);
            }
        }
        auto g = substitute(f, subs);
        for (uint64_t idx = 0; idx < 64; idx++) {
            PhasePoint a = phase_point_from_index(n, idx);
            PhasePoint ma(n, m.multiply(a.bits()));
            for (uint64_t bi = 0; bi < 8; bi++) {
                BitVector b = testutil::from_index(bi, n);
                ASSERT_EQ(evaluate(g, a, b), evaluate(f, ma, b));
            }
        }
    }
}

TEST(frame, restrict_x_zero) {
    FramePolynomial f(2);
    f.toggle(Monomial{1, 3});
    EXPECT_TRUE(restrict_x_zero(f).empty());
    auto g = parse_frame_polynomial("a1z + a1x*a0z", 2);
    EXPECT_EQ(to_string(restrict_x_zero(g)), "a1z");

    Rng rng(6);
    for (int rep = 0; rep < 30; rep++) {
        auto h = random_parametric_frame(3, rng, 12);
        auto r = restrict_x_zero(h);
        for (uint64_t z = 0; z < 8; z++) {
            PhasePoint a = PhasePoint::from_halves(BitVector(3), testutil::from_index(z, 3));
            for (uint64_t bi = 0; bi < 8; bi++) {
                BitVector b = testutil::from_index(bi, 3);
                EXPECT_EQ(evaluate(r, a, b), evaluate(h, a, b));
            }
        }
    }
}

TEST(frame, trace_out) {
    auto f = parse_frame_polynomial("a0z + a0z*a1z + a1z*a2z*a3z + a2z", 4);
    EXPECT_EQ(trace_out(f, std::vector<uint32_t>{}), f);
    std::vector<uint32_t> a{1}, b{3}, ab{1, 3};
    EXPECT_EQ(trace_out(trace_out(f, a), b), trace_out(f, ab));
    EXPECT_EQ(to_string(trace_out(f, a)), "a0z + a2z");
    EXPECT_THROW(trace_out(f, std::vector<uint32_t>{4}), UsageError);
}

TEST(frame, instantiate_and_profiles) {
    auto f = parse_frame_polynomial("a0z + b[1]*a0z*a1z", 2);
    BitVector b0(2), b1(2);
    b1.set(1, true);
    EXPECT_TRUE(degree_profile(f, b0).is_linear);
    EXPECT_FALSE(degree_profile(f, b1).is_linear);
    EXPECT_FALSE(degree_profile(f).is_linear);
    EXPECT_EQ(instantiate(f, b0).size(), 1u);
    EXPECT_EQ(instantiate(f, b1).size(), 2u);
    EXPECT_EQ(hypergraph_view(f).edges.size(), 2u);
    EXPECT_EQ(hypergraph_view(f, b0).edges.size(), 1u);

    auto lin = parse_frame_polynomial("a0x + a1z", 2);
    auto p = degree_profile(lin);
    EXPECT_EQ(p.max_degree, 1u);
    EXPECT_TRUE(p.is_linear);
    EXPECT_TRUE(p.nonlinear.empty());
    EXPECT_TRUE(hypergraph_view(FramePolynomial(2)).edges.empty());
}

TEST(frame, example_hypergraph_structure) {
    auto f = parse_frame_polynomial(kPhaseGateInitial, kExampleN);
    auto h = hypergraph_view(f);
    std::vector<Monomial> expected{Monomial{4}, Monomial{1, 5}, Monomial{1, 2, 4}, Monomial{1, 2, 5}};
    EXPECT_EQ(h.edges, expected);
    auto p = degree_profile(f);
    EXPECT_EQ(p.max_degree, 3u);
    EXPECT_FALSE(p.is_linear);
    EXPECT_EQ(p.nonlinear.size(), 3u);
}

TEST(frame, phase_gate_update_example) {
    auto f = parse_frame_polynomial(kPhaseGateInitial, kExampleN);
    // S^{-1} on qubit 1: a1z -> a1x + a1z; then add P = a1x*a1z.
    uint32_t ix = 1, iz = kExampleN + 1;
    auto g = substitute(f, {{iz, {ix, iz}}});
    FramePolynomial p(kExampleN);
    p.toggle(Monomial{ix, iz});
    g = add(g, substitute(p, {{iz, {ix, iz}}}));
    EXPECT_EQ(g, parse_frame_polynomial(kPhaseGateFinal, kExampleN));
    EXPECT_EQ(to_string(g), "a1z + a1x*a2x + a1x*a1z + a1x*a2z + a1x*a2x*a1z + a1x*a2x*a2z");
}

TEST(frame, equality_is_term_equality) {
    Rng rng(2);
    for (int rep = 0; rep < 30; rep++) {
        auto f = random_frame(2, rng, 6);
        auto g = random_frame(2, rng, 6);
        bool agree = true;
        for (uint64_t idx = 0; idx < 16; idx++) {
            agree &= evaluate(f, phase_point_from_index(2, idx), BitVector(2)) ==
                     evaluate(g, phase_point_from_index(2, idx), BitVector(2));
        }
        EXPECT_EQ(agree, f == g);
        EXPECT_EQ(f == g, to_string(f) == to_string(g));
    }
}
