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

#ifndef FWSIM_BITS_HPP
#define FWSIM_BITS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fwsim/errors.hpp"

namespace fwsim {

/// Packed GF(2) vector of fixed length.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }
    const uint64_t *words() const {
        return words_.data();
    }
    uint64_t *words() {
        return words_.data();
    }

    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    bool operator[](size_t k) const {
        return get(k);
    }
    void set(size_t k, bool value) {
        uint64_t m = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= m;
        } else {
            words_[k >> 6] &= ~m;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }
    void clear() {
        for (auto &w : words_) {
            w = 0;
        }
    }

    BitVector &operator^=(const BitVector &other) {
        check_same_size(other);
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    BitVector &operator&=(const BitVector &other) {
        check_same_size(other);
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] &= other.words_[w];
        }
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector &b) {
        a ^= b;
        return a;
    }
    friend BitVector operator&(BitVector a, const BitVector &b) {
        a &= b;
        return a;
    }

    /// Parity of the bitwise AND (GF(2) dot product).
    bool dot(const BitVector &other) const {
        check_same_size(other);
        uint64_t acc = 0;
        for (size_t w = 0; w < words_.size(); w++) {
            acc ^= words_[w] & other.words_[w];
        }
        return std::popcount(acc) & 1;
    }

    size_t popcount() const {
        size_t total = 0;
        for (auto w : words_) {
            total += std::popcount(w);
        }
        return total;
    }
    bool any() const {
        for (auto w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    bool none() const {
        return !any();
    }

    /// Index of the first set bit at or after `from`.
    std::optional<size_t> find_next(size_t from = 0) const {
        if (from >= num_bits_) {
            return std::nullopt;
        }
        size_t w = from >> 6;
        uint64_t cur = words_[w] & (~uint64_t{0} << (from & 63));
        while (true) {
            if (cur) {
                return w * 64 + std::countr_zero(cur);
            }
            if (++w >= words_.size()) {
                return std::nullopt;
            }
            cur = words_[w];
        }
    }

    template <typename F>
    void for_each_one(F &&f) const {
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t cur = words_[w];
            while (cur) {
                f(w * 64 + std::countr_zero(cur));
                cur &= cur - 1;
            }
        }
    }

    /// Characters '0'/'1', bit 0 first.
    std::string str() const {
        std::string out(num_bits_, '0');
        for (size_t k = 0; k < num_bits_; k++) {
            if (get(k)) {
                out[k] = '1';
            }
        }
        return out;
    }
    static BitVector from_string(std::string_view text) {
        BitVector out(text.size());
        for (size_t k = 0; k < text.size(); k++) {
            if (text[k] == '1') {
                out.set(k, true);
            } else if (text[k] != '0') {
                throw ParseError("bit string may only contain '0' and '1': " + std::string(text));
            }
        }
        return out;
    }

    friend bool operator==(const BitVector &a, const BitVector &b) {
        return a.num_bits_ == b.num_bits_ && a.words_ == b.words_;
    }

    size_t hash() const {
        uint64_t h = 0x9E3779B97F4A7C15ull ^ num_bits_;
        for (auto w : words_) {
            h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }

   private:
    void check_same_size(const BitVector &other) const {
        if (other.num_bits_ != num_bits_) {
            throw UsageError(
                "bit vector length mismatch: " + std::to_string(num_bits_) + " vs " +
                std::to_string(other.num_bits_));
        }
    }

    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Row-major GF(2) matrix; each row is a packed BitVector.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {
    }

    static BitMatrix identity(size_t n) {
        BitMatrix m(n, n);
        for (size_t k = 0; k < n; k++) {
            m.rows_[k].set(k, true);
        }
        return m;
    }

    size_t num_rows() const {
        return rows_.size();
    }
    size_t num_cols() const {
        return cols_;
    }
    BitVector &row(size_t r) {
        return rows_[r];
    }
    const BitVector &row(size_t r) const {
        return rows_[r];
    }
    bool get(size_t r, size_t c) const {
        return rows_[r].get(c);
    }
    void set(size_t r, size_t c, bool v) {
        rows_[r].set(c, v);
    }

    /// M v.
    BitVector multiply(const BitVector &v) const {
        if (v.size() != cols_) {
            throw UsageError("matrix-vector dimension mismatch");
        }
        BitVector out(rows_.size());
        for (size_t r = 0; r < rows_.size(); r++) {
            if (rows_[r].dot(v)) {
                out.set(r, true);
            }
        }
        return out;
    }

    /// vᵀ M, as a vector of length num_cols.
    BitVector left_multiply(const BitVector &v) const {
        if (v.size() != rows_.size()) {
            throw UsageError("vector-matrix dimension mismatch");
        }
        BitVector out(cols_);
        v.for_each_one([&](size_t r) {
            out ^= rows_[r];
        });
        return out;
    }

    friend BitMatrix operator*(const BitMatrix &a, const BitMatrix &b) {
        if (a.cols_ != b.rows_.size()) {
            throw UsageError("matrix product dimension mismatch");
        }
        BitMatrix out(a.rows_.size(), b.cols_);
        for (size_t r = 0; r < a.rows_.size(); r++) {
            out.rows_[r] = b.left_multiply(a.rows_[r]);
        }
        return out;
    }

    BitMatrix transposed() const {
        BitMatrix out(cols_, rows_.size());
        for (size_t r = 0; r < rows_.size(); r++) {
            rows_[r].for_each_one([&](size_t c) {
                out.rows_[c].set(r, true);
            });
        }
        return out;
    }

    /// Gauss-Jordan inverse; nullopt when singular or non-square.
    std::optional<BitMatrix> inverse() const {
        size_t n = rows_.size();
        if (n != cols_) {
            return std::nullopt;
        }
        BitMatrix a = *this;
        BitMatrix inv = identity(n);
        for (size_t col = 0; col < n; col++) {
            size_t pivot = col;
            while (pivot < n && !a.rows_[pivot].get(col)) {
                pivot++;
            }
            if (pivot == n) {
                return std::nullopt;
            }
            std::swap(a.rows_[pivot], a.rows_[col]);
            std::swap(inv.rows_[pivot], inv.rows_[col]);
            for (size_t r = 0; r < n; r++) {
                if (r != col && a.rows_[r].get(col)) {
                    a.rows_[r] ^= a.rows_[col];
                    inv.rows_[r] ^= inv.rows_[col];
                }
            }
        }
        return inv;
    }

    friend bool operator==(const BitMatrix &a, const BitMatrix &b) {
        return a.cols_ == b.cols_ && a.rows_ == b.rows_;
    }

   private:
    size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

struct BitVectorHash {
    size_t operator()(const BitVector &v) const {
        return v.hash();
    }
};

}  // namespace fwsim

#endif
