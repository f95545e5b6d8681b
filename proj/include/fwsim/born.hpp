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

#ifndef FWSIM_BORN_HPP
#define FWSIM_BORN_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fwsim/bits.hpp"
#include "fwsim/clifford.hpp"
#include "fwsim/cover.hpp"
#include "fwsim/errors.hpp"
#include "fwsim/frame.hpp"
#include "fwsim/oracle.hpp"
#include "fwsim/parallel.hpp"
#include "fwsim/phase_space.hpp"
#include "fwsim/rng.hpp"
#include "fwsim/states.hpp"
#include "fwsim/weaksim.hpp"

namespace fwsim {

/// 2^{-k} sum_a (-1)^{Q(a)}, always 0 or ±2^{-halvings}.
struct GaussSum {
    bool zero = false;
    bool negative = false;
    size_t halvings = 0;

    double value() const {
        if (zero) {
            return 0.0;
        }
        double v = std::ldexp(1.0, -static_cast<int>(halvings));
        return negative ? -v : v;
    }
};

/// Variable elimination in O(k^3 / 64); never enumerates.
inline GaussSum gauss_sum_quadratic(LocalQuadratic q) {
    size_t k = q.size();
    BitVector alive(k);
    for (size_t i = 0; i < k; i++) {
        alive.set(i, true);
    }
    GaussSum out;
    for (size_t i = 0; i < k; i++) {
        if (!alive[i]) {
            continue;
        }
        auto partner = q.pairs[i].find_next(0);
        if (!partner) {
            // a_i appears at most linearly: the sum over a_i is 2 or 0.
            if (q.linear[i]) {
                out.zero = true;
                return out;
            }
            alive.set(i, false);
            continue;
        }
        // Summing over a_i forces a_j = r.a + L_i.
        size_t j = *partner;
        BitVector r = q.pairs[i];
        r.set(j, false);
        bool c = q.linear[i];
        BitVector nrow = q.pairs[j];
        nrow.set(i, false);
        bool lj = q.linear[j];
        // Remove a_i and a_j from the form.
        for (size_t v : {i, j}) {
            q.pairs[v].for_each_one([&](size_t m) {
                q.pairs[m].set(v, false);
            });
            q.pairs[v].clear();
            q.linear.set(v, false);
            alive.set(v, false);
        }
        // (r.a + c)(n.a + L_j).
        r.for_each_one([&](size_t m) {
            q.pairs[m] ^= nrow;
        });
        nrow.for_each_one([&](size_t m) {
            q.pairs[m] ^= r;
        });
        (r & nrow).for_each_one([&](size_t m) {
            q.pairs[m].set(m, false);
            q.linear.flip(m);
        });
        if (lj) {
            q.linear ^= r;
        }
        if (c) {
            q.linear ^= nrow;
            q.constant ^= lj;
        }
        out.halvings++;
    }
    out.negative = q.constant;
    return out;
}

/// Brute-force 2^{-k} sum_a (-1)^{Q(a)}; k <= 24.
inline double gauss_sum_brute_force(const LocalQuadratic &q) {
    size_t k = q.size();
    if (k > 24) {
        throw Unsupported("brute-force Gauss sum limited to 24 variables");
    }
    double total = 0;
    BitVector a(k);
    for (uint64_t idx = 0; idx < (uint64_t{1} << k); idx++) {
        for (size_t t = 0; t < k; t++) {
            a.set(t, (idx >> t) & 1);
        }
        total += q.evaluate(a) ? -1 : 1;
    }
    return std::ldexp(total, -static_cast<int>(k));
}

/// Mean and M2 accumulator; merge is associative.
struct RunningStats {
    uint64_t count = 0;
    double mean = 0;
    double m2 = 0;

    void add(double x) {
        count++;
        double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }
    void merge(const RunningStats &o) {
        if (o.count == 0) {
            return;
        }
        if (count == 0) {
            *this = o;
            return;
        }
        double na = static_cast<double>(count), nb = static_cast<double>(o.count);
        double d = o.mean - mean;
        double total = na + nb;
        mean += d * nb / total;
        m2 += o.m2 + d * d * na * nb / total;
        count += o.count;
    }
    double variance() const {
        return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    }
    double stderr_of_mean() const {
        return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
    }
};

enum class EstimateMethod { pauli, wigner };

inline const char *method_name(EstimateMethod m) {
    return m == EstimateMethod::pauli ? "pauli" : "wigner";
}

struct EstimateReport {
    EstimateMethod method;
    std::string target;
    std::vector<uint32_t> qubits;
    uint64_t samples = 0;
    double estimate = 0;
    double variance = 0;
    double standard_error = 0;
    uint64_t seed = 0;
};

/// z-restricted final frame with every qubit outside `qubits` traced out.
inline FramePolynomial reduce_to_qubits(const FramePolynomial &final_frame, std::span<const uint32_t> qubits) {
    size_t n = final_frame.num_qubits();
    std::vector<bool> keep(n, false);
    for (auto q : qubits) {
        if (q >= n) {
            throw UsageError("qubit index out of range");
        }
        keep[q] = true;
    }
    std::vector<uint32_t> discard;
    for (uint32_t q = 0; q < n; q++) {
        if (!keep[q]) {
            discard.push_back(q);
        }
    }
    return trace_out(restrict_x_zero(final_frame), discard);
}

/// Wigner-sampling estimator of marginal Born probabilities on a qubit set
/// whose reduced frame has degree <= 2 for every selector.
class WignerEstimator {
   public:
    WignerEstimator(const SymplecticMap &s, const FramePolynomial &reduced, std::vector<uint32_t> qubits,
                    const WignerDistribution &dist)
        : n_(s.num_qubits()), qubits_(std::move(qubits)), sampler_(dist) {
        if (dist.n != n_ || reduced.num_qubits() != n_) {
            throw UsageError("wigner estimator: qubit count mismatch");
        }
        check_reduced_support(reduced, qubits_);
        if (degree_profile(reduced).max_degree > 2) {
            throw NeedMoreTracing("reduced frame has cubic terms on the requested qubits; trace out more qubits");
        }
        std::vector<int> slot(n_, -1);
        for (size_t t = 0; t < qubits_.size(); t++) {
            slot[qubits_[t]] = static_cast<int>(t);
            rows_.push_back(s.matrix().row(x_index(qubits_[t])));
        }
        for (const auto &[key, c] : reduced.terms()) {
            Monomial m = Monomial::from_key(key);
            Term t{static_cast<uint32_t>(slot[m[0] - n_]), 0, m.degree() == 2, c};
            if (t.pair) {
                t.m = static_cast<uint32_t>(slot[m[1] - n_]);
            }
            terms_.push_back(std::move(t));
        }
    }

    static WignerEstimator for_cover(const SymplecticMap &s, const CoverResult &cover, const WignerDistribution &dist) {
        return WignerEstimator(s, cover.reduced_frame, cover.retained_qubits, dist);
    }

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<uint32_t> &qubits() const {
        return qubits_;
    }
    const DistributionSampler &sampler() const {
        return sampler_;
    }

    /// p_u(y') = 2^{-k} sum_a (-1)^{(S(u)_x + y').a + G_b(a)}; target bit t is qubits()[t].
    double value(const PhaseSample &s, const BitVector &target) const {
        size_t k = qubits_.size();
        LocalQuadratic q(k);
        for (const auto &t : terms_) {
            if (!t.coef.evaluate(s.b)) {
                continue;
            }
            if (t.pair) {
                q.pairs[t.j].flip(t.m);
                q.pairs[t.m].flip(t.j);
            } else {
                q.linear.flip(t.j);
            }
        }
        for (size_t t = 0; t < k; t++) {
            if (rows_[t].dot(s.u.bits()) ^ target[t]) {
                q.linear.flip(t);
            }
        }
        return gauss_sum_quadratic(std::move(q)).value();
    }

   private:
    struct Term {
        uint32_t j, m;
        bool pair;
        AffineSelector coef;
    };
    size_t n_;
    std::vector<uint32_t> qubits_;
    DistributionSampler sampler_;
    std::vector<BitVector> rows_;
    std::vector<Term> terms_;
};

/// Uniform-Pauli estimator: (-1)^{a.y'} Tr(rho U† Z^a U) with a uniform on the qubit set.
class PauliEstimator {
   public:
    PauliEstimator(CliffordCircuit circuit, std::vector<SingleQubitState> states, std::vector<uint32_t> qubits)
        : circuit_(std::move(circuit)), states_(std::move(states)), qubits_(std::move(qubits)) {
        if (states_.size() != circuit_.n) {
            throw UsageError("pauli estimator: state count does not match circuit");
        }
        for (auto q : qubits_) {
            if (q >= circuit_.n) {
                throw UsageError("qubit index out of range");
            }
        }
    }

    const std::vector<uint32_t> &qubits() const {
        return qubits_;
    }

    /// Value for the Pauli label a (bit t on qubits()[t]).
    double value(const BitVector &a, const BitVector &target) const {
        PauliString p(circuit_.n);
        for (size_t t = 0; t < qubits_.size(); t++) {
            p.a.set_z(qubits_[t], a[t]);
        }
        PauliString back = conjugate_pauli(circuit_, p, Direction::backward);
        double v = back.sign ^ a.dot(target) ? -1.0 : 1.0;
        for (size_t q = 0; q < circuit_.n && v != 0; q++) {
            bool x = back.a.x(q), z = back.a.z(q);
            const auto &s = states_[q];
            if (x && z) {
                v *= s.ry;
            } else if (x) {
                v *= s.rx;
            } else if (z) {
                v *= s.rz;
            }
        }
        return v;
    }

    double sample_value(Rng &rng, BitVector &a, const BitVector &target) const {
        for (size_t t = 0; t < qubits_.size(); t++) {
            a.set(t, rng() & 1);
        }
        return value(a, target);
    }

   private:
    CliffordCircuit circuit_;
    std::vector<SingleQubitState> states_;
    std::vector<uint32_t> qubits_;
};

constexpr size_t kEstimateChunk = 1 << 12;

namespace detail {
inline BitVector parse_target(std::string_view target, size_t k) {
    BitVector y = BitVector::from_string(target);
    if (y.size() != k) {
        throw UsageError("target string has " + std::to_string(y.size()) + " bits but the qubit set has " +
                         std::to_string(k));
    }
    return y;
}

template <typename ChunkBody>
RunningStats chunked_stats(uint64_t samples, uint64_t seed, size_t threads, ChunkBody &&body) {
    size_t chunks = static_cast<size_t>((samples + kEstimateChunk - 1) / kEstimateChunk);
    std::vector<RunningStats> partial(chunks);
    parallel_for(chunks, threads, [&](size_t c) {
        Rng rng(mix_seed(seed, c));
        uint64_t count = std::min<uint64_t>(kEstimateChunk, samples - c * kEstimateChunk);
        body(rng, count, partial[c]);
    });
    RunningStats total;
    for (const auto &p : partial) {
        total.merge(p);
    }
    return total;
}

inline EstimateReport make_report(EstimateMethod m, std::string target, std::vector<uint32_t> qubits,
                                  const RunningStats &st, uint64_t seed) {
    EstimateReport r{m, std::move(target), std::move(qubits)};
    r.samples = st.count;
    r.estimate = st.mean;
    r.variance = st.variance();
    r.standard_error = st.stderr_of_mean();
    r.seed = seed;
    return r;
}
}  // namespace detail

inline EstimateReport wigner_estimate(const WignerEstimator &est, std::string_view target, uint64_t samples,
                                      uint64_t seed, size_t threads) {
    BitVector y = detail::parse_target(target, est.qubits().size());
    auto st = detail::chunked_stats(samples, seed, threads, [&](Rng &rng, uint64_t count, RunningStats &acc) {
        PhaseSample s{PhasePoint(est.num_qubits()), BitVector(est.num_qubits())};
        for (uint64_t k = 0; k < count; k++) {
            est.sampler().sample_into(rng, s);
            acc.add(est.value(s, y));
        }
    });
    return detail::make_report(EstimateMethod::wigner, std::string(target), est.qubits(), st, seed);
}

inline EstimateReport pauli_estimate(const PauliEstimator &est, std::string_view target, uint64_t samples,
                                     uint64_t seed, size_t threads) {
    BitVector y = detail::parse_target(target, est.qubits().size());
    auto st = detail::chunked_stats(samples, seed, threads, [&](Rng &rng, uint64_t count, RunningStats &acc) {
        BitVector a(est.qubits().size());
        for (uint64_t k = 0; k < count; k++) {
            acc.add(est.sample_value(rng, a, y));
        }
    });
    return detail::make_report(EstimateMethod::pauli, std::string(target), est.qubits(), st, seed);
}

/// First and second moments of an estimator's value.
struct Moments {
    double mean = 0;
    double second = 0;
    double variance() const {
        return second - mean * mean;
    }
};

/// Exact moments of the Pauli estimator by enumerating all 2^k labels.
inline Moments pauli_moments(const PauliEstimator &est, const BitVector &target) {
    size_t k = est.qubits().size();
    if (k > 20) {
        throw Unsupported("exact Pauli moments limited to 20 qubits");
    }
    Moments m;
    BitVector a(k);
    double w = std::ldexp(1.0, -static_cast<int>(k));
    for (uint64_t idx = 0; idx < (uint64_t{1} << k); idx++) {
        for (size_t t = 0; t < k; t++) {
            a.set(t, (idx >> t) & 1);
        }
        double v = est.value(a, target);
        m.mean += w * v;
        m.second += w * v * v;
    }
    return m;
}

/// Exact moments of the Wigner estimator by enumerating the input support.
inline Moments wigner_moments(const WignerEstimator &est, const WignerDistribution &dist, const BitVector &target) {
    Moments m;
    enumerate_support(dist, [&](const PhaseSample &s, double w) {
        double v = est.value(s, target);
        m.mean += w * v;
        m.second += w * v * v;
    });
    return m;
}

struct VarianceRow {
    std::string target;
    double probability;
    double var_pauli;
};

struct VarianceReport {
    std::vector<uint32_t> qubits;
    double collision = 0;    // Z^{(k)}
    double delta_pauli = 0;  // mean over y of Var_Pauli
    double delta_wigner = 0; // mean over y of Var_Wigner
    std::vector<VarianceRow> rows;
};

/// Predicted variances from the exact marginal distribution.
inline VarianceReport variance_report(const CliffordCircuit &c, const std::vector<SingleQubitState> &states,
                                      std::span<const uint32_t> qubits) {
    auto p = exact_born(c, states, qubits);
    size_t k = qubits.size();
    VarianceReport r;
    r.qubits.assign(qubits.begin(), qubits.end());
    r.collision = collision_probability(p);
    double scale = std::ldexp(1.0, -static_cast<int>(k));
    r.delta_pauli = (1 - scale) * r.collision;
    r.delta_wigner = (1 - r.collision) * scale;
    for (size_t j = 0; j < p.size(); j++) {
        std::string y(k, '0');
        for (size_t t = 0; t < k; t++) {
            if ((j >> t) & 1) {
                y[t] = '1';
            }
        }
        r.rows.push_back({y, p[j], r.collision - p[j] * p[j]});
    }
    return r;
}

}  // namespace fwsim

#endif
