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

#ifndef FWSIM_DENSE_FRAME_HPP
#define FWSIM_DENSE_FRAME_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fwsim/clifford.hpp"
#include "fwsim/cover.hpp"
#include "fwsim/errors.hpp"
#include "fwsim/frame.hpp"

namespace fwsim {

/// z-restricted frame of a non-parametric polynomial, as qubit index tuples.
struct ZRestrictedFrame {
    size_t n = 0;
    std::vector<uint32_t> linear;
    std::vector<std::array<uint32_t, 2>> quadratic;
    std::vector<std::array<uint32_t, 3>> cubic;

    FramePolynomial to_polynomial() const {
        FramePolynomial f(n);
        uint32_t nn = static_cast<uint32_t>(n);
        for (auto i : linear) {
            f.toggle(Monomial{nn + i});
        }
        for (auto [i, j] : quadratic) {
            f.toggle(Monomial{nn + i, nn + j});
        }
        for (auto [i, j, k] : cubic) {
            f.toggle(Monomial{nn + i, nn + j, nn + k});
        }
        return f;
    }

    /// Edges over z-vertices n + q that the given cover mode must hit.
    Hypergraph cover_edges(CoverMode mode) const {
        Hypergraph h{2 * n, {}};
        uint32_t nn = static_cast<uint32_t>(n);
        if (mode == CoverMode::weak) {
            h.edges.reserve(quadratic.size() + cubic.size());
            for (auto [i, j] : quadratic) {
                h.edges.push_back(Monomial{nn + i, nn + j});
            }
        } else {
            h.edges.reserve(cubic.size());
        }
        for (auto [i, j, k] : cubic) {
            h.edges.push_back(Monomial{nn + i, nn + j, nn + k});
        }
        return h;
    }
};

/// Non-parametric frame stored as f(x) = sum_{i,j} x_i x_j mu_ij(Y x), where
/// each mu_ij is a linear functional (bit vector) and Y is an accumulated
/// invertible change of variables. A local substitution x <- A x mixes only
/// the affected slices of the mu tensor and the affected columns of Y, so a
/// gate costs O(N^2 / 64) word operations for N = 2n variables, independent
/// of the number of monomials.
class DenseFrame {
   public:
    explicit DenseFrame(size_t n) : n_(n), nv_(2 * n), w_((2 * n + 63) / 64) {
        require_qubits(n);
        t_.assign(nv_ * nv_ * w_, 0);
        y_cols_.assign(nv_ * w_, 0);
        y_inv_rows_.assign(nv_ * w_, 0);
        for (size_t v = 0; v < nv_; v++) {
            set_bit(&y_cols_[v * w_], v);
            set_bit(&y_inv_rows_[v * w_], v);
        }
    }

    size_t num_qubits() const {
        return n_;
    }

    /// Adds x_{v0} x_{v1} x_{v2} (repeated indices allowed).
    void toggle(uint32_t i, uint32_t j, uint32_t k) {
        uint64_t *dst = slot(i, j);
        const uint64_t *src = &y_inv_rows_[k * w_];
        for (size_t w = 0; w < w_; w++) {
            dst[w] ^= src[w];
        }
    }
    void toggle(const Monomial &m) {
        if (m.degree() == 1) {
            toggle(m[0], m[0], m[0]);
        } else if (m.degree() == 2) {
            toggle(m[0], m[1], m[1]);
        } else {
            toggle(m[0], m[1], m[2]);
        }
    }

    /// F <- (F + P)(S^{-1} x).
    void apply(const GateAction &act) {
        for (const auto &[key, c] : act.phase.terms()) {
            toggle(Monomial::from_key(key));
        }
        const LocalMap &a = act.inverse;
        size_t d = a.coords.size();
        if (d == 0) {
            return;
        }
        // Column s of A (as a mask over local rows r).
        std::array<uint8_t, 4> col{};
        for (size_t r = 0; r < d; r++) {
            for (size_t s = 0; s < d; s++) {
                if ((a.rows[r] >> s) & 1) {
                    col[s] |= static_cast<uint8_t>(1u << r);
                }
            }
        }
        size_t slice = nv_ * w_;
        // First axis: T'[c_s] = sum_r A_{rs} T[c_r].
        scratch_.assign(d * slice, 0);
        for (size_t s = 0; s < d; s++) {
            uint64_t *dst = &scratch_[s * slice];
            for (size_t r = 0; r < d; r++) {
                if ((col[s] >> r) & 1) {
                    const uint64_t *src = &t_[a.coords[r] * slice];
                    for (size_t w = 0; w < slice; w++) {
                        dst[w] ^= src[w];
                    }
                }
            }
        }
        for (size_t s = 0; s < d; s++) {
            std::copy(&scratch_[s * slice], &scratch_[(s + 1) * slice], &t_[a.coords[s] * slice]);
        }
        // Second axis, same mixing within every slice.
        std::array<uint64_t, 4 * kMaxWords> tmp;
        for (size_t i = 0; i < nv_; i++) {
            mix_columns(&t_[i * slice], a, col, tmp.data());
        }
        mix_columns(y_cols_.data(), a, col, tmp.data());
        // Y^{-1} <- A^{-1} Y^{-1}: rows mixed by the forward map.
        const LocalMap &f = act.forward;
        for (size_t r = 0; r < d; r++) {
            uint64_t *dst = &tmp[r * w_];
            std::fill(dst, dst + w_, 0);
            for (size_t s = 0; s < d; s++) {
                if ((f.rows[r] >> s) & 1) {
                    const uint64_t *src = &y_inv_rows_[f.coords[s] * w_];
                    for (size_t w = 0; w < w_; w++) {
                        dst[w] ^= src[w];
                    }
                }
            }
        }
        for (size_t r = 0; r < d; r++) {
            std::copy(&tmp[r * w_], &tmp[(r + 1) * w_], &y_inv_rows_[f.coords[r] * w_]);
        }
    }

    void apply(const Gate &g) {
        apply(gate_action(g, n_));
    }

    ZRestrictedFrame z_restricted() const {
        size_t n = n_;
        size_t wn = (n + 63) / 64;
        // Rows of Y restricted to z-columns, as n-bit vectors.
        std::vector<uint64_t> yz(nv_ * wn, 0);
        for (size_t c = 0; c < n; c++) {
            const uint64_t *column = &y_cols_[(n + c) * w_];
            for (size_t r = 0; r < nv_; r++) {
                if ((column[r >> 6] >> (r & 63)) & 1) {
                    yz[r * wn + (c >> 6)] |= uint64_t{1} << (c & 63);
                }
            }
        }
        // Byte tables: combination of 8 consecutive rows of yz for each byte value.
        size_t groups = (nv_ + 7) / 8;
        std::vector<uint64_t> table(groups * 256 * wn, 0);
        for (size_t g = 0; g < groups; g++) {
            for (size_t v = 1; v < 256; v++) {
                size_t low = std::countr_zero(v);
                size_t r = g * 8 + low;
                uint64_t *dst = &table[(g * 256 + v) * wn];
                const uint64_t *prev = &table[(g * 256 + (v & (v - 1))) * wn];
                for (size_t w = 0; w < wn; w++) {
                    dst[w] = prev[w] ^ (r < nv_ ? yz[r * wn + w] : 0);
                }
            }
        }
        // lam[i][j] = mu_{n+i, n+j} Y_Z, bits over c.
        std::vector<uint64_t> lam(n * n * wn, 0);
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < n; j++) {
                const auto *mu = reinterpret_cast<const uint8_t *>(slot_const(n + i, n + j));
                uint64_t *dst = &lam[(i * n + j) * wn];
                for (size_t g = 0; g < groups; g++) {
                    uint8_t byte = mu[g];
                    if (byte) {
                        const uint64_t *src = &table[(g * 256 + byte) * wn];
                        for (size_t w = 0; w < wn; w++) {
                            dst[w] ^= src[w];
                        }
                    }
                }
            }
        }
        auto c3 = [&](size_t i, size_t j, size_t k) -> bool {
            return (lam[(i * n + j) * wn + (k >> 6)] >> (k & 63)) & 1;
        };
        ZRestrictedFrame out;
        out.n = n;
        for (uint32_t i = 0; i < n; i++) {
            if (c3(i, i, i)) {
                out.linear.push_back(i);
            }
            for (uint32_t j = i + 1; j < n; j++) {
                bool q = c3(i, i, j) ^ c3(i, j, i) ^ c3(j, i, i) ^ c3(i, j, j) ^ c3(j, i, j) ^ c3(j, j, i);
                if (q) {
                    out.quadratic.push_back({i, j});
                }
                for (uint32_t k = j + 1; k < n; k++) {
                    bool t = c3(i, j, k) ^ c3(i, k, j) ^ c3(j, i, k) ^ c3(j, k, i) ^ c3(k, i, j) ^ c3(k, j, i);
                    if (t) {
                        out.cubic.push_back({i, j, k});
                    }
                }
            }
        }
        return out;
    }

   private:
    static constexpr size_t kMaxWords = (2 * kMaxVariables + 63) / 64;

    static void set_bit(uint64_t *p, size_t k) {
        p[k >> 6] |= uint64_t{1} << (k & 63);
    }
    uint64_t *slot(size_t i, size_t j) {
        return &t_[(i * nv_ + j) * w_];
    }
    const uint64_t *slot_const(size_t i, size_t j) const {
        return &t_[(i * nv_ + j) * w_];
    }

    // block[q] for q in [0, nv) are w-word vectors; replaces block[c_s] by
    // sum_r A_{rs} block[c_r].
    void mix_columns(uint64_t *block, const LocalMap &a, const std::array<uint8_t, 4> &col, uint64_t *tmp) const {
        size_t d = a.coords.size();
        for (size_t s = 0; s < d; s++) {
            uint64_t *dst = tmp + s * w_;
            std::fill(dst, dst + w_, 0);
            for (size_t r = 0; r < d; r++) {
                if ((col[s] >> r) & 1) {
                    const uint64_t *src = block + a.coords[r] * w_;
                    for (size_t w = 0; w < w_; w++) {
                        dst[w] ^= src[w];
                    }
                }
            }
        }
        for (size_t s = 0; s < d; s++) {
            std::copy(tmp + s * w_, tmp + (s + 1) * w_, block + a.coords[s] * w_);
        }
    }

    size_t n_, nv_, w_;
    std::vector<uint64_t> t_;
    std::vector<uint64_t> y_cols_;
    std::vector<uint64_t> y_inv_rows_;
    std::vector<uint64_t> scratch_;
};

/// Propagates from F0 = 0 with the dense backend and returns the z-restricted frame.
inline ZRestrictedFrame propagate_zero_frame_dense(const CliffordCircuit &c) {
    DenseFrame f(c.n);
    for (const auto &g : c.gates) {
        f.apply(g);
    }
    return f.z_restricted();
}

}  // namespace fwsim

#endif
