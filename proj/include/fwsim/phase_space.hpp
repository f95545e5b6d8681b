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

#ifndef FWSIM_PHASE_SPACE_HPP
#define FWSIM_PHASE_SPACE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "fwsim/bits.hpp"
#include "fwsim/errors.hpp"

namespace fwsim {

// Flat coordinate convention used throughout: index v in [0, 2n) is the
// x-coordinate of qubit v when v < n and the z-coordinate of qubit v - n
// otherwise.
inline size_t x_index(size_t q) {
    return q;
}
inline size_t z_index(size_t n, size_t q) {
    return n + q;
}

inline void require_qubits(size_t n) {
    if (n == 0) {
        throw UsageError("qubit count must be at least 1");
    }
}

/// A point of the discrete phase space Z_2^{2n}.
class PhasePoint {
   public:
    explicit PhasePoint(size_t n) : n_(n), bits_(2 * n) {
        require_qubits(n);
    }
    PhasePoint(size_t n, BitVector bits) : n_(n), bits_(std::move(bits)) {
        require_qubits(n);
        if (bits_.size() != 2 * n) {
            throw UsageError("phase point must have exactly 2n bits");
        }
    }
    static PhasePoint from_halves(const BitVector &x, const BitVector &z) {
        if (x.size() != z.size()) {
            throw UsageError("x and z halves differ in length");
        }
        PhasePoint p(x.size());
        for (size_t q = 0; q < x.size(); q++) {
            p.bits_.set(q, x[q]);
            p.bits_.set(p.n_ + q, z[q]);
        }
        return p;
    }

    size_t num_qubits() const {
        return n_;
    }
    const BitVector &bits() const {
        return bits_;
    }
    BitVector &bits() {
        return bits_;
    }
    bool x(size_t q) const {
        return bits_[q];
    }
    bool z(size_t q) const {
        return bits_[n_ + q];
    }
    void set_x(size_t q, bool v) {
        bits_.set(q, v);
    }
    void set_z(size_t q, bool v) {
        bits_.set(n_ + q, v);
    }
    BitVector x_half() const {
        BitVector out(n_);
        for (size_t q = 0; q < n_; q++) {
            out.set(q, x(q));
        }
        return out;
    }
    BitVector z_half() const {
        BitVector out(n_);
        for (size_t q = 0; q < n_; q++) {
            out.set(q, z(q));
        }
        return out;
    }

    friend bool operator==(const PhasePoint &a, const PhasePoint &b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

   private:
    size_t n_;
    BitVector bits_;
};

/// [u, a] = u_x . a_z + u_z . a_x.
inline bool symplectic_inner(const PhasePoint &u, const PhasePoint &a) {
    if (u.num_qubits() != a.num_qubits()) {
        throw UsageError("symplectic_inner: qubit count mismatch");
    }
    size_t n = u.num_qubits();
    bool acc = false;
    for (size_t q = 0; q < n; q++) {
        acc ^= (u.x(q) & a.z(q)) ^ (u.z(q) & a.x(q));
    }
    return acc;
}

/// True iff M^T J M = J, where J pairs coordinate q with coordinate n + q.
inline bool verify_symplectic(const BitMatrix &m) {
    size_t dim = m.num_rows();
    if (dim == 0 || dim % 2 != 0 || m.num_cols() != dim) {
        return false;
    }
    size_t n = dim / 2;
    BitMatrix cols = m.transposed();
    // Column c paired with column d under J: sum_q c_q d_{n+q} + c_{n+q} d_q.
    std::vector<BitVector> swapped;
    swapped.reserve(dim);
    for (size_t c = 0; c < dim; c++) {
        BitVector s(dim);
        for (size_t q = 0; q < n; q++) {
            s.set(q, cols.row(c)[n + q]);
            s.set(n + q, cols.row(c)[q]);
        }
        swapped.push_back(std::move(s));
    }
    for (size_t c = 0; c < dim; c++) {
        for (size_t d = c; d < dim; d++) {
            bool expected = (c + n == d);
            if (cols.row(c).dot(swapped[d]) != expected) {
                return false;
            }
        }
    }
    return true;
}

/// Linear symplectic transformation of Z_2^{2n}.
class SymplecticMap {
   public:
    static SymplecticMap identity(size_t n) {
        require_qubits(n);
        return SymplecticMap(n, BitMatrix::identity(2 * n));
    }
    /// Validates the symplectic condition.
    static SymplecticMap from_matrix(BitMatrix m) {
        if (!verify_symplectic(m)) {
            throw UsageError("matrix is not symplectic");
        }
        size_t n = m.num_rows() / 2;
        return SymplecticMap(n, std::move(m));
    }

    size_t num_qubits() const {
        return n_;
    }
    const BitMatrix &matrix() const {
        return m_;
    }
    BitMatrix &mutable_matrix() {
        return m_;
    }

    /// this ∘ other (apply `other` first).
    SymplecticMap after(const SymplecticMap &other) const {
        if (other.n_ != n_) {
            throw UsageError("symplectic map composition: qubit count mismatch");
        }
        return SymplecticMap(n_, m_ * other.m_);
    }

    friend bool operator==(const SymplecticMap &a, const SymplecticMap &b) {
        return a.n_ == b.n_ && a.m_ == b.m_;
    }

   private:
    SymplecticMap(size_t n, BitMatrix m) : n_(n), m_(std::move(m)) {
    }
    friend SymplecticMap invert_map(const SymplecticMap &s);

    size_t n_;
    BitMatrix m_;
};

inline PhasePoint apply_map(const SymplecticMap &s, const PhasePoint &u) {
    if (s.num_qubits() != u.num_qubits()) {
        throw UsageError("apply_map: qubit count mismatch");
    }
    return PhasePoint(u.num_qubits(), s.matrix().multiply(u.bits()));
}

inline SymplecticMap invert_map(const SymplecticMap &s) {
    auto inv = s.matrix().inverse();
    if (!inv) {
        throw std::logic_error("invert_map: symplectic map is singular");
    }
    return SymplecticMap(s.num_qubits(), std::move(*inv));
}

/// (-1)^sign T_a with T_a = ⊗_j i^{a_jx a_jz} X^{a_jx} Z^{a_jz}.
struct PauliString {
    explicit PauliString(size_t n) : a(n), sign(false) {
    }
    PauliString(PhasePoint a, bool sign) : a(std::move(a)), sign(sign) {
    }

    /// Parses "+XIZY" / "-ZZ" / "XY" (qubit 0 first).
    static PauliString from_text(std::string_view text) {
        bool sign = false;
        if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
            sign = text[0] == '-';
            text.remove_prefix(1);
        }
        PauliString p(text.size());
        p.sign = sign;
        for (size_t q = 0; q < text.size(); q++) {
            char c = text[q];
            if (c == 'X' || c == 'Y') {
                p.a.set_x(q, true);
            }
            if (c == 'Z' || c == 'Y') {
                p.a.set_z(q, true);
            }
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z' && c != '_') {
                throw ParseError("bad Pauli character '" + std::string(1, c) + "'");
            }
        }
        return p;
    }

    std::string str() const {
        std::string out(1, sign ? '-' : '+');
        for (size_t q = 0; q < a.num_qubits(); q++) {
            out += "IXZY"[a.x(q) + 2 * a.z(q)];
        }
        return out;
    }

    size_t num_qubits() const {
        return a.num_qubits();
    }

    friend bool operator==(const PauliString &p, const PauliString &q) {
        return p.sign == q.sign && p.a == q.a;
    }

    PhasePoint a;
    bool sign;
};

}  // namespace fwsim

#endif
