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

#ifndef FWSIM_VERIFY_HPP
#define FWSIM_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fwsim/born.hpp"
#include "fwsim/clifford.hpp"
#include "fwsim/cover.hpp"
#include "fwsim/frame.hpp"
#include "fwsim/oracle.hpp"
#include "fwsim/randgen.hpp"
#include "fwsim/rng.hpp"
#include "fwsim/states.hpp"
#include "fwsim/weaksim.hpp"

namespace fwsim {

constexpr double kOracleTolerance = 1e-10;

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
    std::string name;
    CheckStatus status;
    std::string detail;
};

/// Random non-parametric cubic frame with F(0) = 0.
inline FramePolynomial random_frame(size_t n, Rng &rng, size_t terms) {
    FramePolynomial f(n);
    uint32_t nv = static_cast<uint32_t>(2 * n);
    for (size_t t = 0; t < terms; t++) {
        size_t d = 1 + uniform_below(rng, 3);
        std::vector<uint32_t> vars;
        for (size_t k = 0; k < d; k++) {
            vars.push_back(static_cast<uint32_t>(uniform_below(rng, nv)));
        }
        f.toggle(Monomial(std::span<const uint32_t>(vars)));
    }
    return f;
}

/// max over u of |U A^F(u) U† - A^{F'}(S u)| for one gate.
inline double gate_soundness_error(const Gate &g, const FramePolynomial &f, const BitVector &b) {
    size_t n = f.num_qubits();
    CliffordCircuit c(n);
    c.append(g);
    auto prop = propagate_frame(c, f);
    DenseOperator u = gate_unitary(g, n);
    DenseOperator ud = u.adjoint();
    double worst = 0;
    for (uint64_t idx = 0; idx < (uint64_t{1} << (2 * n)); idx++) {
        PhasePoint p = phase_point_from_index(n, idx);
        DenseOperator lhs = u * dense_phase_point(f, p, b, n) * ud;
        DenseOperator rhs = dense_phase_point(prop.frame, apply_map(prop.smap, p), b, n);
        worst = std::max(worst, lhs.max_abs_diff(rhs));
    }
    return worst;
}

/// max over a of |U T_a U† - (-1)^{P(a)} T_{S(a)}| for one gate.
inline double gate_action_error(const Gate &g, size_t n) {
    GateAction act = gate_action(g, n);
    SymplecticMap s = act.smap(n);
    DenseOperator u = gate_unitary(g, n);
    DenseOperator ud = u.adjoint();
    BitVector b(n);
    double worst = 0;
    for (uint64_t idx = 0; idx < (uint64_t{1} << (2 * n)); idx++) {
        PhasePoint a = phase_point_from_index(n, idx);
        DenseOperator lhs = u * pauli_operator(a) * ud;
        DenseOperator rhs = pauli_operator(PauliString(apply_map(s, a), evaluate(act.phase, a, b)));
        worst = std::max(worst, lhs.max_abs_diff(rhs));
    }
    return worst;
}

inline double total_variation(const std::vector<double> &p, const std::vector<double> &q) {
    double tv = 0;
    for (size_t k = 0; k < p.size(); k++) {
        tv += std::abs(p[k] - q[k]);
    }
    return tv / 2;
}

namespace detail {
inline std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

inline CheckResult tolerance_check(const std::string &name, double err, double tol) {
    return {name, err <= tol ? CheckStatus::pass : CheckStatus::fail, "max error " + fmt_double(err)};
}
}  // namespace detail

/// Oracle cross-checks for one circuit and product input.
inline std::vector<CheckResult> run_verification(const CliffordCircuit &c, const std::vector<SingleQubitState> &states,
                                                 uint64_t seed) {
    size_t n = c.n;
    std::vector<CheckResult> out;
    if (states.size() != n) {
        throw UsageError("verify: state count does not match circuit");
    }
    Rng rng(seed);
    std::vector<Gate> distinct;
    for (const auto &g : c.gates) {
        if (std::find(distinct.begin(), distinct.end(), g) == distinct.end()) {
            distinct.push_back(g);
        }
    }

    {
        bool ok = true;
        for (const auto &g : distinct) {
            ok &= verify_symplectic(gate_action(g, n).smap(n).matrix());
        }
        ok &= verify_symplectic(circuit_symplectic(c).matrix());
        out.push_back({"symplectic_maps", ok ? CheckStatus::pass : CheckStatus::fail,
                       std::to_string(distinct.size()) + " distinct gates"});
    }

    if (n <= 4) {
        double err = 0;
        for (const auto &g : distinct) {
            err = std::max(err, gate_action_error(g, n));
        }
        out.push_back(detail::tolerance_check("gate_conjugation", err, kOracleTolerance));
    } else {
        out.push_back({"gate_conjugation", CheckStatus::skip, "needs n <= 4"});
    }

    if (n <= 3) {
        double err = 0;
        for (const auto &g : distinct) {
            for (int rep = 0; rep < 3; rep++) {
                FramePolynomial f = random_frame(n, rng, 2 + 2 * n);
                err = std::max(err, gate_soundness_error(g, f, BitVector(n)));
            }
        }
        out.push_back(detail::tolerance_check("frame_soundness", err, kOracleTolerance));
    } else {
        out.push_back({"frame_soundness", CheckStatus::skip, "needs n <= 3"});
    }

    if (n <= 4) {
        DenseOperator u = circuit_unitary(c);
        DenseOperator ud = u.adjoint();
        SymplecticMap s = circuit_symplectic(c);
        double err = 0;
        for (uint64_t idx = 0; idx < (uint64_t{1} << (2 * n)); idx++) {
            PauliString p(phase_point_from_index(n, idx), false);
            PauliString fwd = conjugate_pauli(c, p, Direction::forward);
            PauliString bwd = conjugate_pauli(c, p, Direction::backward);
            DenseOperator tp = pauli_operator(p);
            err = std::max(err, (u * tp * ud).max_abs_diff(pauli_operator(fwd)));
            err = std::max(err, (ud * tp * u).max_abs_diff(pauli_operator(bwd)));
            if (!(fwd.a == apply_map(s, p.a))) {
                err = std::max(err, 1.0);
            }
        }
        out.push_back(detail::tolerance_check("pauli_conjugation", err, kOracleTolerance));
    } else {
        out.push_back({"pauli_conjugation", CheckStatus::skip, "needs n <= 4"});
    }

    WignerDistribution dist = build_distribution(states, RepresentationMode::automatic);
    FramePolynomial f0 = initial_frame(dist);
    auto prop = propagate_frame(c, f0);

    if (n <= 5 && dist.is_single_frame()) {
        BitVector b = dist.pinned_selector();
        DenseOperator rho = product_density(states);
        WignerTable before = exact_wigner(rho, f0, b);
        DenseOperator rho_out = rho;
        evolve_density(rho_out, c);
        WignerTable after = exact_wigner(rho_out, prop.frame, b);
        double err = 0;
        for (uint64_t idx = 0; idx < before.values.size(); idx++) {
            PhasePoint u = apply_map(prop.smap, phase_point_from_index(n, idx));
            uint64_t j = 0;
            for (size_t r = 0; r < 2 * n; r++) {
                j |= uint64_t{u.bits()[r]} << r;
            }
            err = std::max(err, std::abs(after.values[j] - before.values[idx]));
        }
        out.push_back(detail::tolerance_check("wigner_transport", err, kOracleTolerance));
    } else {
        out.push_back({"wigner_transport", CheckStatus::skip, "needs n <= 5 and a single-frame input"});
    }

    if (n > 6) {
        out.push_back({"weak_sampler_exact", CheckStatus::skip, "needs n <= 6"});
        out.push_back({"estimators_unbiased", CheckStatus::skip, "needs n <= 6"});
        out.push_back({"variance_identities", CheckStatus::skip, "needs n <= 6"});
        return out;
    }

    {
        CoverResult weak = simulatable_set(prop.frame, CoverMode::weak);
        WeakSimulator sim(prop.smap, weak, dist);
        auto enumerated = enumerate_outcome_distribution(sim, dist);
        auto oracle = exact_born(c, states, weak.retained_qubits);
        double tv = total_variation(enumerated, oracle);
        auto r = detail::tolerance_check("weak_sampler_exact", tv, kOracleTolerance);
        r.detail = std::to_string(weak.retained_qubits.size()) + " retained, TV " + detail::fmt_double(tv);
        out.push_back(r);
    }

    {
        CoverResult born = simulatable_set(prop.frame, CoverMode::born);
        const auto &qubits = born.retained_qubits;
        size_t k = qubits.size();
        WignerEstimator wig(prop.smap, born.reduced_frame, qubits, dist);
        PauliEstimator pau(c, states, qubits);
        auto p = exact_born(c, states, qubits);
        double z = collision_probability(p);
        double err_mean = 0, err_pauli_var = 0;
        double wig_var_sum = 0, pauli_var_sum = 0;
        for (uint64_t j = 0; j < p.size(); j++) {
            BitVector y(k);
            for (size_t t = 0; t < k; t++) {
                y.set(t, (j >> t) & 1);
            }
            Moments mw = wigner_moments(wig, dist, y);
            Moments mp = pauli_moments(pau, y);
            err_mean = std::max({err_mean, std::abs(mw.mean - p[j]), std::abs(mp.mean - p[j])});
            err_pauli_var = std::max(err_pauli_var, std::abs(mp.variance() - (z - p[j] * p[j])));
            wig_var_sum += mw.variance();
            pauli_var_sum += mp.variance();
        }
        double scale = std::ldexp(1.0, -static_cast<int>(k));
        double delta_wig = wig_var_sum * scale;
        double delta_pauli = pauli_var_sum * scale;
        auto r = detail::tolerance_check("estimators_unbiased", err_mean, kOracleTolerance);
        r.detail = std::to_string(k) + " born-retained, " + r.detail;
        out.push_back(r);
        double err_var = std::max({err_pauli_var, std::abs(delta_wig - (1 - z) * scale),
                                   std::abs(delta_pauli - (1 - scale) * z)});
        bool ordered = delta_wig <= delta_pauli + kOracleTolerance;
        auto v = detail::tolerance_check("variance_identities", ordered ? err_var : 1.0, kOracleTolerance);
        v.detail += ", delta_wig " + detail::fmt_double(delta_wig) + " <= delta_pauli " + detail::fmt_double(delta_pauli);
        out.push_back(v);
    }
    return out;
}

inline const char *status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass:
            return "PASS";
        case CheckStatus::fail:
            return "FAIL";
        case CheckStatus::skip:
            return "SKIP";
    }
    return "?";
}

}  // namespace fwsim

#endif
