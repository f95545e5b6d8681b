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

#ifndef FWSIM_WEAKSIM_HPP
#define FWSIM_WEAKSIM_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fwsim/bits.hpp"
#include "fwsim/clifford.hpp"
#include "fwsim/cover.hpp"
#include "fwsim/errors.hpp"
#include "fwsim/frame.hpp"
#include "fwsim/parallel.hpp"
#include "fwsim/phase_space.hpp"
#include "fwsim/rng.hpp"
#include "fwsim/states.hpp"

namespace fwsim {

/// Rejects reduced frames containing x-variables or discarded qubits.
inline void check_reduced_support(const FramePolynomial &f, std::span<const uint32_t> qubits) {
    size_t n = f.num_qubits();
    std::vector<bool> allowed(n, false);
    for (auto q : qubits) {
        if (q >= n) {
            throw UsageError("qubit index out of range");
        }
        allowed[q] = true;
    }
    for (const auto &[key, c] : f.terms()) {
        Monomial m = Monomial::from_key(key);
        for (auto v : m.vars()) {
            if (v < n || !allowed[v - n]) {
                throw UsageError("reduced frame references a variable outside the retained z-coordinates");
            }
        }
    }
}

/// k with F(0_x, a_z) = k . a_z.
struct LinearFrameData {
    BitVector k;
};

inline LinearFrameData extract_linear_k(const FramePolynomial &reduced, const BitVector &b) {
    check_selector(reduced, b);
    size_t n = reduced.num_qubits();
    LinearFrameData out{BitVector(n)};
    for (const auto &[key, c] : reduced.terms()) {
        if (!c.evaluate(b)) {
            continue;
        }
        Monomial m = Monomial::from_key(key);
        if (m.degree() != 1) {
            throw InstantiatedFrameNonlinear("reduced frame is nonlinear at the sampled selector");
        }
        if (m[0] < n) {
            throw UsageError("extract_linear_k: frame contains an x-variable");
        }
        out.k.flip(m[0] - n);
    }
    return out;
}

/// Samples marginal outcomes over a weak-mode retained set: y_i = S(u)_ix + k_i(b).
class WeakSimulator {
   public:
    WeakSimulator(const SymplecticMap &s, const CoverResult &cover, const WignerDistribution &dist)
        : n_(s.num_qubits()), retained_(cover.retained_qubits), sampler_(dist) {
        if (cover.mode != CoverMode::weak) {
            throw UsageError("weak simulation needs a weak-mode cover");
        }
        if (dist.n != n_ || cover.reduced_frame.num_qubits() != n_) {
            throw UsageError("weak simulation: qubit count mismatch");
        }
        check_reduced_support(cover.reduced_frame, retained_);
        std::vector<int> slot(n_, -1);
        for (size_t t = 0; t < retained_.size(); t++) {
            rows_.push_back(s.matrix().row(x_index(retained_[t])));
            k_.emplace_back(n_);
            slot[retained_[t]] = static_cast<int>(t);
        }
        for (const auto &[key, c] : cover.reduced_frame.terms()) {
            Monomial m = Monomial::from_key(key);
            if (m.degree() != 1) {
                throw InstantiatedFrameNonlinear("weak-mode reduced frame has a nonlinear term");
            }
            k_[slot[m[0] - n_]] ^= c;
        }
    }

    static WeakSimulator for_circuit(const CliffordCircuit &c, const WignerDistribution &dist) {
        auto prop = propagate_frame(c, initial_frame(dist));
        return WeakSimulator(prop.smap, simulatable_set(prop.frame, CoverMode::weak), dist);
    }

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<uint32_t> &retained() const {
        return retained_;
    }
    size_t num_outputs() const {
        return rows_.size();
    }
    const DistributionSampler &sampler() const {
        return sampler_;
    }

    /// Deterministic outcome map of one phase-space sample; bit t is qubit retained()[t].
    void outcome_into(const PhaseSample &s, BitVector &y) const {
        for (size_t t = 0; t < rows_.size(); t++) {
            y.set(t, rows_[t].dot(s.u.bits()) ^ k_[t].evaluate(s.b));
        }
    }
    BitVector outcome(const PhaseSample &s) const {
        BitVector y(rows_.size());
        outcome_into(s, y);
        return y;
    }
    BitVector sample(Rng &rng) const {
        return outcome(sampler_.sample(rng));
    }

   private:
    size_t n_;
    std::vector<uint32_t> retained_;
    std::vector<BitVector> rows_;
    std::vector<AffineSelector> k_;
    DistributionSampler sampler_;
};

inline BitVector sample_outcome(const WeakSimulator &sim, Rng &rng) {
    return sim.sample(rng);
}

/// Convenience for one-off draws; prefer reusing a WeakSimulator.
inline BitVector sample_outcome(const CliffordCircuit &c, const WignerDistribution &dist, const CoverResult &cover,
                                Rng &rng) {
    auto prop = propagate_frame(c, initial_frame(dist));
    return WeakSimulator(prop.smap, cover, dist).sample(rng);
}

constexpr size_t kSampleChunk = 1 << 14;

/// Histogram of `shots` outcomes. Chunk c uses stream mix_seed(seed, c), so
/// the result does not depend on the thread count.
template <typename Sim>
std::map<std::string, uint64_t> sample_histogram(const Sim &sim, uint64_t shots, uint64_t seed, size_t threads) {
    size_t chunks = static_cast<size_t>((shots + kSampleChunk - 1) / kSampleChunk);
    std::vector<std::map<std::string, uint64_t>> partial(chunks);
    parallel_for(chunks, threads, [&](size_t c) {
        Rng rng(mix_seed(seed, c));
        uint64_t count = std::min<uint64_t>(kSampleChunk, shots - c * kSampleChunk);
        size_t n = sim.num_qubits();
        PhaseSample s{PhasePoint(n), BitVector(n)};
        BitVector y(sim.num_outputs());
        auto &hist = partial[c];
        for (uint64_t k = 0; k < count; k++) {
            sim.sampler().sample_into(rng, s);
            sim.outcome_into(s, y);
            hist[y.str()]++;
        }
    });
    std::map<std::string, uint64_t> total;
    for (const auto &h : partial) {
        for (const auto &[key, v] : h) {
            total[key] += v;
        }
    }
    return total;
}

/// Exact outcome distribution of a sampler, by enumerating the finite support
/// of the input distribution. Entry j has output bit t in bit t of j.
template <typename Sim>
std::vector<double> enumerate_outcome_distribution(const Sim &sim, const WignerDistribution &dist) {
    size_t k = sim.num_outputs();
    if (k > 24) {
        throw Unsupported("enumerated outcome distributions are limited to 24 output bits");
    }
    std::vector<double> p(size_t{1} << k, 0.0);
    BitVector y(k);
    enumerate_support(dist, [&](const PhaseSample &s, double w) {
        sim.outcome_into(s, y);
        uint64_t j = 0;
        for (size_t t = 0; t < k; t++) {
            j |= uint64_t{y[t]} << t;
        }
        p[j] += w;
    });
    return p;
}

/// Quadratic form after a linear change of variables a = M a':
///   Q(M a') = sum_t links[t] a'_{chain[t]} a'_{chain[t+1]} + linear . a'.
/// Local index t refers to qubit qubits[t]. A false link separates chains.
struct QuadraticCanonicalForm {
    std::vector<uint32_t> qubits;
    std::vector<uint32_t> chain;
    std::vector<bool> links;
    BitMatrix transform;
    BitVector linear;

    /// Local variables removed to make the form linear: every second vertex
    /// of each maximal linked run.
    std::vector<uint32_t> dropped() const {
        std::vector<uint32_t> out;
        size_t pos = 0;  // position within the current run
        for (size_t t = 0; t < chain.size(); t++) {
            if (t > 0 && !links[t - 1]) {
                pos = 0;
            }
            if (pos % 2 == 1) {
                out.push_back(chain[t]);
            }
            pos++;
        }
        return out;
    }
};

/// Symmetric bilinear part and linear part of a quadratic over k local variables.
struct LocalQuadratic {
    std::vector<BitVector> pairs;  // pairs[j][m] = coefficient of a_j a_m, zero diagonal
    BitVector linear;
    bool constant = false;

    explicit LocalQuadratic(size_t k) : pairs(k, BitVector(k)), linear(k) {
    }
    size_t size() const {
        return linear.size();
    }
    bool evaluate(const BitVector &a) const {
        bool acc = constant ^ linear.dot(a);
        for (size_t j = 0; j < size(); j++) {
            if (a[j]) {
                BitVector upper = pairs[j] & a;
                for (size_t m = 0; m <= j; m++) {
                    upper.set(m, false);
                }
                acc ^= upper.popcount() & 1;
            }
        }
        return acc;
    }
};

/// z-restricted polynomial at selector b, in local coordinates of `qubits`.
inline LocalQuadratic local_quadratic(const FramePolynomial &f, const BitVector &b, std::span<const uint32_t> qubits) {
    check_selector(f, b);
    size_t n = f.num_qubits();
    std::vector<int> slot(n, -1);
    for (size_t t = 0; t < qubits.size(); t++) {
        if (qubits[t] >= n) {
            throw UsageError("qubit index out of range");
        }
        slot[qubits[t]] = static_cast<int>(t);
    }
    LocalQuadratic out(qubits.size());
    for (const auto &[key, c] : f.terms()) {
        Monomial m = Monomial::from_key(key);
        for (auto v : m.vars()) {
            if (v < n || slot[v - n] < 0) {
                throw UsageError("quadratic form references a variable outside the given z-coordinates");
            }
        }
        if (!c.evaluate(b)) {
            continue;
        }
        if (m.degree() == 3) {
            throw UsageError("quadratic form has a cubic term");
        }
        if (m.degree() == 1) {
            out.linear.flip(slot[m[0] - n]);
        } else {
            size_t j = slot[m[0] - n], k = slot[m[1] - n];
            out.pairs[j].flip(k);
            out.pairs[k].flip(j);
        }
    }
    return out;
}

inline QuadraticCanonicalForm canonicalize_local(LocalQuadratic q, std::vector<uint32_t> qubits) {
    size_t k = q.size();
    QuadraticCanonicalForm out{std::move(qubits), {}, {}, BitMatrix::identity(k), BitVector(k)};
    BitVector processed(k);
    auto remaining = [&](size_t v) {
        BitVector r = q.pairs[v];
        processed.for_each_one([&](size_t p) {
            r.set(p, false);
        });
        return r;
    };
    for (size_t head = 0; head < k; head++) {
        if (processed[head] || remaining(head).none()) {
            continue;
        }
        if (!out.chain.empty()) {
            out.links.push_back(false);
        }
        size_t cur = head;
        out.chain.push_back(static_cast<uint32_t>(cur));
        processed.set(cur, true);
        while (true) {
            BitVector l = remaining(cur);
            auto first = l.find_next(0);
            if (!first) {
                break;
            }
            size_t t = *first;
            BitVector r = l;
            r.set(t, false);
            if (r.any()) {
                // a_t <- a_t + r.a makes cur's remaining partner the single variable t.
                BitVector nrow = q.pairs[t];
                r.for_each_one([&](size_t j) {
                    q.pairs[j] ^= nrow;
                });
                nrow.for_each_one([&](size_t j) {
                    q.pairs[j] ^= r;
                });
                for (size_t j = 0; j < k; j++) {
                    q.pairs[j].set(j, false);
                }
                q.linear ^= r & nrow;
                if (q.linear[t]) {
                    q.linear ^= r;
                }
                for (size_t i = 0; i < k; i++) {
                    if (out.transform.get(i, t)) {
                        out.transform.row(i) ^= r;
                    }
                }
            }
            out.links.push_back(true);
            out.chain.push_back(static_cast<uint32_t>(t));
            processed.set(t, true);
            cur = t;
        }
    }
    out.linear = q.linear;
    return out;
}

/// Chain form of a degree <= 2 frame over the z-variables of `qubits` at selector b.
inline QuadraticCanonicalForm canonicalize_quadratic(const FramePolynomial &q, const BitVector &b,
                                                     std::span<const uint32_t> qubits) {
    return canonicalize_local(local_quadratic(q, b, qubits), std::vector<uint32_t>(qubits.begin(), qubits.end()));
}

/// Samples values of linear functions of the outcomes on a born-mode retained
/// set with a quadratic reduced frame (single-frame input only).
class LinearFunctionSampler {
   public:
    LinearFunctionSampler(const SymplecticMap &s, const CoverResult &cover, const WignerDistribution &dist)
        : n_(s.num_qubits()), sampler_(dist) {
        if (!dist.is_single_frame()) {
            throw Unsupported("linear-function sampling supports single-frame distributions only");
        }
        if (dist.n != n_) {
            throw UsageError("linear-function sampling: qubit count mismatch");
        }
        const auto &qubits = cover.retained_qubits;
        check_reduced_support(cover.reduced_frame, qubits);
        BitVector b = dist.pinned_selector();
        if (degree_profile(cover.reduced_frame, b).max_degree > 2) {
            throw NeedMoreTracing("reduced frame has cubic terms; use a born-mode cover");
        }
        form_ = canonicalize_quadratic(cover.reduced_frame, b, qubits);
        auto dropped = form_.dropped();
        std::vector<bool> gone(qubits.size(), false);
        for (auto d : dropped) {
            gone[d] = true;
        }
        for (size_t i = 0; i < qubits.size(); i++) {
            if (gone[i]) {
                continue;
            }
            // z'_i = sum_j M_ji (S(u)_x + y)_{qubits[j]} restricted to outputs.
            BitVector row(2 * n_);
            std::vector<uint32_t> support;
            for (size_t j = 0; j < qubits.size(); j++) {
                if (form_.transform.get(j, i)) {
                    row ^= s.matrix().row(x_index(qubits[j]));
                    support.push_back(qubits[j]);
                }
            }
            rows_.push_back(std::move(row));
            offsets_.push_back(form_.linear[i]);
            functions_.push_back(std::move(support));
        }
    }

    size_t num_qubits() const {
        return n_;
    }
    size_t num_outputs() const {
        return rows_.size();
    }
    const DistributionSampler &sampler() const {
        return sampler_;
    }
    const QuadraticCanonicalForm &form() const {
        return form_;
    }
    /// Output t is the parity of the measured bits of functions()[t].
    const std::vector<std::vector<uint32_t>> &functions() const {
        return functions_;
    }

    void outcome_into(const PhaseSample &s, BitVector &y) const {
        for (size_t t = 0; t < rows_.size(); t++) {
            y.set(t, rows_[t].dot(s.u.bits()) ^ offsets_[t]);
        }
    }
    BitVector sample(Rng &rng) const {
        BitVector y(rows_.size());
        outcome_into(sampler_.sample(rng), y);
        return y;
    }

   private:
    size_t n_;
    DistributionSampler sampler_;
    QuadraticCanonicalForm form_;
    std::vector<BitVector> rows_;
    std::vector<bool> offsets_;
    std::vector<std::vector<uint32_t>> functions_;
};

inline BitVector sample_linear_functions(const LinearFunctionSampler &sampler, Rng &rng) {
    return sampler.sample(rng);
}

}  // namespace fwsim

#endif
