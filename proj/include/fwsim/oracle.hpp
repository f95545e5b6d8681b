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

#ifndef FWSIM_ORACLE_HPP
#define FWSIM_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fwsim/clifford.hpp"
#include "fwsim/errors.hpp"
#include "fwsim/frame.hpp"
#include "fwsim/phase_space.hpp"
#include "fwsim/states.hpp"

namespace fwsim {

// Dense ground truth for small n. Computational basis index s has the value
// of qubit q in bit q.

constexpr size_t kMaxDenseStateQubits = 10;
constexpr size_t kMaxDensePauliQubits = 6;

using cplx = std::complex<double>;

class DenseOperator {
   public:
    explicit DenseOperator(size_t n) : n_(n), dim_(size_t{1} << n), data_(dim_ * dim_) {
        if (n > kMaxDenseStateQubits) {
            throw Unsupported("dense operators are limited to " + std::to_string(kMaxDenseStateQubits) + " qubits");
        }
    }
    static DenseOperator identity(size_t n) {
        DenseOperator m(n);
        for (size_t k = 0; k < m.dim_; k++) {
            m(k, k) = 1;
        }
        return m;
    }

    size_t num_qubits() const {
        return n_;
    }
    size_t dim() const {
        return dim_;
    }
    cplx &operator()(size_t r, size_t c) {
        return data_[r * dim_ + c];
    }
    const cplx &operator()(size_t r, size_t c) const {
        return data_[r * dim_ + c];
    }
    cplx *row_data(size_t r) {
        return data_.data() + r * dim_;
    }

    DenseOperator adjoint() const {
        DenseOperator out(n_);
        for (size_t r = 0; r < dim_; r++) {
            for (size_t c = 0; c < dim_; c++) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }
    cplx trace() const {
        cplx t = 0;
        for (size_t k = 0; k < dim_; k++) {
            t += (*this)(k, k);
        }
        return t;
    }
    friend DenseOperator operator*(const DenseOperator &a, const DenseOperator &b) {
        check_same(a, b);
        DenseOperator out(a.n_);
        for (size_t r = 0; r < a.dim_; r++) {
            for (size_t k = 0; k < a.dim_; k++) {
                cplx v = a(r, k);
                if (v == cplx(0)) {
                    continue;
                }
                for (size_t c = 0; c < a.dim_; c++) {
                    out(r, c) += v * b(k, c);
                }
            }
        }
        return out;
    }
    DenseOperator &operator+=(const DenseOperator &b) {
        check_same(*this, b);
        for (size_t k = 0; k < data_.size(); k++) {
            data_[k] += b.data_[k];
        }
        return *this;
    }
    DenseOperator &operator*=(cplx s) {
        for (auto &v : data_) {
            v *= s;
        }
        return *this;
    }
    double max_abs_diff(const DenseOperator &b) const {
        check_same(*this, b);
        double m = 0;
        for (size_t k = 0; k < data_.size(); k++) {
            m = std::max(m, std::abs(data_[k] - b.data_[k]));
        }
        return m;
    }

   private:
    static void check_same(const DenseOperator &a, const DenseOperator &b) {
        if (a.n_ != b.n_) {
            throw UsageError("dense operator dimension mismatch");
        }
    }

    size_t n_;
    size_t dim_;
    std::vector<cplx> data_;
};

namespace detail {
inline uint64_t half_bits(const PhasePoint &a, bool z) {
    uint64_t v = 0;
    for (size_t q = 0; q < a.num_qubits(); q++) {
        if (z ? a.z(q) : a.x(q)) {
            v |= uint64_t{1} << q;
        }
    }
    return v;
}

inline cplx i_power(int k) {
    static const cplx table[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    return table[((k % 4) + 4) % 4];
}

inline PhasePoint point_from_index(size_t n, uint64_t index) {
    PhasePoint p(n);
    for (size_t r = 0; r < 2 * n; r++) {
        p.bits().set(r, (index >> r) & 1);
    }
    return p;
}
}  // namespace detail

/// Phase point with coordinate r of the point in bit r of `index`.
inline PhasePoint phase_point_from_index(size_t n, uint64_t index) {
    return detail::point_from_index(n, index);
}

/// T_a|s> = i^{|a_x & a_z|} (-1)^{a_z . s} |s xor a_x>.
inline DenseOperator pauli_operator(const PhasePoint &a) {
    size_t n = a.num_qubits();
    DenseOperator m(n);
    uint64_t x = detail::half_bits(a, false);
    uint64_t z = detail::half_bits(a, true);
    cplx base = detail::i_power(std::popcount(x & z));
    for (uint64_t s = 0; s < m.dim(); s++) {
        m(s ^ x, s) = (std::popcount(z & s) & 1) ? -base : base;
    }
    return m;
}

inline DenseOperator pauli_operator(const PauliString &p) {
    DenseOperator m = pauli_operator(p.a);
    if (p.sign) {
        m *= -1;
    }
    return m;
}

/// M <- U M for the gate's unitary U.
inline void apply_gate_left(DenseOperator &m, const Gate &g) {
    size_t dim = m.dim();
    uint64_t bi = uint64_t{1} << g.q[0];
    uint64_t bj = uint64_t{1} << g.q[1];
    const double h = 1 / std::sqrt(2.0);
    for (uint64_t r = 0; r < dim; r++) {
        cplx *row = m.row_data(r);
        switch (g.kind) {
            case GateKind::H:
                if (!(r & bi)) {
                    cplx *other = m.row_data(r | bi);
                    for (size_t c = 0; c < dim; c++) {
                        cplx a = row[c], b = other[c];
                        row[c] = h * (a + b);
                        other[c] = h * (a - b);
                    }
                }
                break;
            case GateKind::S:
                if (r & bi) {
                    for (size_t c = 0; c < dim; c++) {
                        row[c] *= cplx(0, 1);
                    }
                }
                break;
            case GateKind::X:
                if (!(r & bi)) {
                    std::swap_ranges(row, row + dim, m.row_data(r | bi));
                }
                break;
            case GateKind::Z:
                if (r & bi) {
                    for (size_t c = 0; c < dim; c++) {
                        row[c] = -row[c];
                    }
                }
                break;
            case GateKind::CNOT:
                if ((r & bi) && !(r & bj)) {
                    std::swap_ranges(row, row + dim, m.row_data(r | bj));
                }
                break;
            case GateKind::CZ:
                if ((r & bi) && (r & bj)) {
                    for (size_t c = 0; c < dim; c++) {
                        row[c] = -row[c];
                    }
                }
                break;
        }
    }
}

inline DenseOperator gate_unitary(const Gate &g, size_t n) {
    validate_gate(g, n);
    DenseOperator u = DenseOperator::identity(n);
    apply_gate_left(u, g);
    return u;
}

inline DenseOperator circuit_unitary(const CliffordCircuit &c) {
    DenseOperator u = DenseOperator::identity(c.n);
    for (const auto &g : c.gates) {
        apply_gate_left(u, g);
    }
    return u;
}

/// rho <- U rho U†.
inline void evolve_density(DenseOperator &rho, const CliffordCircuit &c) {
    if (rho.num_qubits() != c.n) {
        throw UsageError("evolve_density: qubit count mismatch");
    }
    for (const auto &g : c.gates) {
        apply_gate_left(rho, g);
        rho = rho.adjoint();
        apply_gate_left(rho, g);
        rho = rho.adjoint();
    }
}

inline DenseOperator single_qubit_density(const SingleQubitState &s) {
    DenseOperator m(1);
    m(0, 0) = (1 + s.rz) / 2;
    m(1, 1) = (1 - s.rz) / 2;
    m(0, 1) = cplx(s.rx, -s.ry) / 2.0;
    m(1, 0) = cplx(s.rx, s.ry) / 2.0;
    return m;
}

inline DenseOperator product_density(const std::vector<SingleQubitState> &states) {
    size_t n = states.size();
    require_qubits(n);
    std::vector<DenseOperator> locals;
    for (const auto &s : states) {
        locals.push_back(single_qubit_density(s));
    }
    DenseOperator rho(n);
    for (uint64_t r = 0; r < rho.dim(); r++) {
        for (uint64_t c = 0; c < rho.dim(); c++) {
            cplx v = 1;
            for (size_t q = 0; q < n && v != cplx(0); q++) {
                v *= locals[q]((r >> q) & 1, (c >> q) & 1);
            }
            rho(r, c) = v;
        }
    }
    return rho;
}

/// A^F(u) = 2^{-n} sum_a (-1)^{[u,a] + F(a)} T_a.
inline DenseOperator dense_phase_point(const FramePolynomial &f, const PhasePoint &u, const BitVector &b, size_t n) {
    if (n > kMaxDensePauliQubits) {
        throw Unsupported("dense_phase_point is limited to " + std::to_string(kMaxDensePauliQubits) + " qubits");
    }
    if (f.num_qubits() != n || u.num_qubits() != n) {
        throw UsageError("dense_phase_point: qubit count mismatch");
    }
    DenseOperator out(n);
    uint64_t count = uint64_t{1} << (2 * n);
    double scale = 1.0 / static_cast<double>(size_t{1} << n);
    for (uint64_t idx = 0; idx < count; idx++) {
        PhasePoint a = detail::point_from_index(n, idx);
        bool sign = symplectic_inner(u, a) ^ evaluate(f, a, b);
        uint64_t x = detail::half_bits(a, false);
        uint64_t z = detail::half_bits(a, true);
        cplx base = detail::i_power(std::popcount(x & z)) * (sign ? -scale : scale);
        for (uint64_t s = 0; s < out.dim(); s++) {
            out(s ^ x, s) += (std::popcount(z & s) & 1) ? -base : base;
        }
    }
    return out;
}

struct WignerTable {
    std::vector<double> values;  // index: coordinate r of u in bit r
    bool has_negative = false;
};

/// W(u) = 2^{-n} Tr[rho A^F(u)], via a Walsh-Hadamard transform of the Pauli
/// expectations.
inline WignerTable exact_wigner(const DenseOperator &rho, const FramePolynomial &f, const BitVector &b) {
    size_t n = rho.num_qubits();
    if (n > kMaxDensePauliQubits) {
        throw Unsupported("exact_wigner is limited to " + std::to_string(kMaxDensePauliQubits) + " qubits");
    }
    if (f.num_qubits() != n) {
        throw UsageError("exact_wigner: qubit count mismatch");
    }
    uint64_t count = uint64_t{1} << (2 * n);
    uint64_t low = (uint64_t{1} << n) - 1;
    std::vector<double> g(count, 0.0);
    for (uint64_t idx = 0; idx < count; idx++) {
        PhasePoint a = detail::point_from_index(n, idx);
        uint64_t x = idx & low;
        uint64_t z = idx >> n;
        cplx t = 0;
        for (uint64_t s = 0; s < rho.dim(); s++) {
            double sgn = (std::popcount(z & s) & 1) ? -1 : 1;
            t += sgn * rho(s, s ^ x);
        }
        t *= detail::i_power(std::popcount(x & z));
        double v = t.real();
        if (evaluate(f, a, b)) {
            v = -v;
        }
        // [u,a] = u . swap(a); store at the swapped index.
        g[(x << n) | z] = v;
    }
    for (uint64_t len = 1; len < count; len <<= 1) {
        for (uint64_t i = 0; i < count; i += 2 * len) {
            for (uint64_t j = i; j < i + len; j++) {
                double a = g[j], c = g[j + len];
                g[j] = a + c;
                g[j + len] = a - c;
            }
        }
    }
    WignerTable out;
    out.values.resize(count);
    for (uint64_t u = 0; u < count; u++) {
        out.values[u] = g[u] / static_cast<double>(count);
        out.has_negative |= out.values[u] < -1e-12;
    }
    return out;
}

/// Marginal distribution over `subset`; entry j has the outcome of subset[t] in bit t.
inline std::vector<double> marginal_of(const std::vector<double> &full, size_t n, std::span<const uint32_t> subset) {
    for (auto q : subset) {
        if (q >= n) {
            throw UsageError("marginal: qubit index out of range");
        }
    }
    std::vector<double> out(size_t{1} << subset.size(), 0.0);
    for (uint64_t s = 0; s < full.size(); s++) {
        uint64_t j = 0;
        for (size_t t = 0; t < subset.size(); t++) {
            j |= ((s >> subset[t]) & 1) << t;
        }
        out[j] += full[s];
    }
    return out;
}

inline std::vector<double> exact_born(const CliffordCircuit &c, const std::vector<SingleQubitState> &states,
                                      std::span<const uint32_t> subset) {
    if (c.n > kMaxDenseStateQubits) {
        throw Unsupported("exact_born is limited to " + std::to_string(kMaxDenseStateQubits) + " qubits");
    }
    if (states.size() != c.n) {
        throw UsageError("exact_born: state count does not match circuit");
    }
    DenseOperator rho = product_density(states);
    evolve_density(rho, c);
    std::vector<double> diag(rho.dim());
    for (size_t s = 0; s < rho.dim(); s++) {
        diag[s] = rho(s, s).real();
    }
    return marginal_of(diag, c.n, subset);
}

inline double collision_probability(const std::vector<double> &p) {
    double z = 0;
    for (double v : p) {
        z += v * v;
    }
    return z;
}

inline double collision_probability(const CliffordCircuit &c, const std::vector<SingleQubitState> &states,
                                    std::span<const uint32_t> subset) {
    return collision_probability(exact_born(c, states, subset));
}

/// If U T_a U† = ±T_b, returns that signed Pauli.
inline std::optional<PauliString> conjugation_image(const DenseOperator &u, const PhasePoint &a) {
    size_t n = a.num_qubits();
    DenseOperator m = u * pauli_operator(a) * u.adjoint();
    uint64_t x = 0;
    while (x < m.dim() && std::abs(m(x, 0)) < 1e-9) {
        x++;
    }
    if (x == m.dim()) {
        return std::nullopt;
    }
    for (uint64_t z = 0; z < m.dim(); z++) {
        PhasePoint b(n);
        for (size_t q = 0; q < n; q++) {
            b.set_x(q, (x >> q) & 1);
            b.set_z(q, (z >> q) & 1);
        }
        DenseOperator t = pauli_operator(b);
        if (m.max_abs_diff(t) < 1e-9) {
            return PauliString(b, false);
        }
        t *= -1;
        if (m.max_abs_diff(t) < 1e-9) {
            return PauliString(b, true);
        }
    }
    return std::nullopt;
}

}  // namespace fwsim

#endif
