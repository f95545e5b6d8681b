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

#ifndef FWSIM_FRAME_HPP
#define FWSIM_FRAME_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fwsim/bits.hpp"
#include "fwsim/errors.hpp"
#include "fwsim/phase_space.hpp"

namespace fwsim {

/// Largest variable index representable in a packed monomial key.
constexpr size_t kMaxVariables = 65535;

/// Canonical product of 1 to 3 distinct variables.
class Monomial {
   public:
    static constexpr size_t kMaxDegree = 3;

    /// Sorts and merges repeated variables (x^2 = x).
    Monomial(std::initializer_list<uint32_t> vars) : Monomial(std::span<const uint32_t>(vars.begin(), vars.size())) {
    }
    explicit Monomial(std::span<const uint32_t> vars) {
        std::array<uint32_t, 6> buf{};
        if (vars.empty() || vars.size() > buf.size()) {
            throw UsageError("monomial needs between 1 and 3 distinct variables");
        }
        std::copy(vars.begin(), vars.end(), buf.begin());
        std::sort(buf.begin(), buf.begin() + vars.size());
        size_t d = std::unique(buf.begin(), buf.begin() + vars.size()) - buf.begin();
        if (d > kMaxDegree) {
            throw UsageError("monomial degree exceeds 3");
        }
        for (size_t k = 0; k < d; k++) {
            if (buf[k] >= kMaxVariables) {
                throw UsageError("variable index too large for monomial packing");
            }
            vars_[k] = buf[k];
        }
        degree_ = static_cast<uint8_t>(d);
    }

    static Monomial from_key(uint64_t key) {
        Monomial m;
        for (size_t k = 0; k < kMaxDegree; k++) {
            uint32_t field = (key >> (16 * k)) & 0xFFFF;
            if (field == 0) {
                break;
            }
            m.vars_[m.degree_++] = field - 1;
        }
        return m;
    }

    /// Three 16-bit fields holding index + 1, zero for unused slots.
    uint64_t key() const {
        uint64_t key = 0;
        for (size_t k = 0; k < degree_; k++) {
            key |= uint64_t{vars_[k] + 1} << (16 * k);
        }
        return key;
    }

    size_t degree() const {
        return degree_;
    }
    uint32_t operator[](size_t k) const {
        return vars_[k];
    }
    std::span<const uint32_t> vars() const {
        return {vars_.data(), degree_};
    }
    bool contains(uint32_t v) const {
        for (size_t k = 0; k < degree_; k++) {
            if (vars_[k] == v) {
                return true;
            }
        }
        return false;
    }
    uint32_t max_var() const {
        return vars_[degree_ - 1];
    }

    /// Ordered by degree, then lexicographically by variable index.
    friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b) {
        if (a.degree_ != b.degree_) {
            return a.degree_ <=> b.degree_;
        }
        for (size_t k = 0; k < a.degree_; k++) {
            if (a.vars_[k] != b.vars_[k]) {
                return a.vars_[k] <=> b.vars_[k];
            }
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Monomial &a, const Monomial &b) {
        return (a <=> b) == 0;
    }

   private:
    Monomial() = default;
    std::array<uint32_t, kMaxDegree> vars_{};
    uint8_t degree_ = 0;
};

/// Coefficient c(b) = const + mask . b of a monomial.
struct AffineSelector {
    AffineSelector() = default;
    explicit AffineSelector(size_t n, bool constant = false) : mask(n), constant(constant) {
    }
    AffineSelector(BitVector mask, bool constant) : mask(std::move(mask)), constant(constant) {
    }
    static AffineSelector one(size_t n) {
        return AffineSelector(n, true);
    }
    static AffineSelector bit(size_t n, size_t i) {
        AffineSelector s(n);
        s.mask.set(i, true);
        return s;
    }

    bool evaluate(const BitVector &b) const {
        return constant ^ mask.dot(b);
    }
    bool is_zero() const {
        return !constant && mask.none();
    }
    bool is_parametric() const {
        return mask.any();
    }
    AffineSelector &operator^=(const AffineSelector &other) {
        mask ^= other.mask;
        constant ^= other.constant;
        return *this;
    }
    friend bool operator==(const AffineSelector &a, const AffineSelector &b) {
        return a.constant == b.constant && a.mask == b.mask;
    }

    BitVector mask;
    bool constant = false;
};

/// Multilinear GF(2) polynomial of degree <= 3 in the 2n phase-space
/// variables, with coefficients affine in the frame selector b.
class FramePolynomial {
   public:
    using Terms = std::unordered_map<uint64_t, AffineSelector>;

    explicit FramePolynomial(size_t n) : n_(n) {
        require_qubits(n);
        if (2 * n > kMaxVariables) {
            throw UsageError("too many qubits for frame polynomial packing");
        }
    }

    size_t num_qubits() const {
        return n_;
    }
    size_t num_vars() const {
        return 2 * n_;
    }
    size_t size() const {
        return terms_.size();
    }
    bool empty() const {
        return terms_.empty();
    }
    const Terms &terms() const {
        return terms_;
    }

    /// XOR-folds c into the coefficient of m.
    void toggle(const Monomial &m, const AffineSelector &c) {
        check_monomial(m);
        if (c.mask.size() != n_) {
            throw UsageError("selector length does not match qubit count");
        }
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m.key(), c);
        if (!inserted) {
            it->second ^= c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }
    void toggle(const Monomial &m) {
        toggle(m, AffineSelector::one(n_));
    }

    const AffineSelector *coefficient(const Monomial &m) const {
        auto it = terms_.find(m.key());
        return it == terms_.end() ? nullptr : &it->second;
    }

    std::vector<std::pair<Monomial, AffineSelector>> sorted_terms() const {
        std::vector<std::pair<Monomial, AffineSelector>> out;
        out.reserve(terms_.size());
        for (const auto &[key, c] : terms_) {
            out.emplace_back(Monomial::from_key(key), c);
        }
        std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
            return a.first < b.first;
        });
        return out;
    }

    /// Removes and returns every term whose monomial satisfies pred.
    template <typename Pred>
    std::vector<std::pair<Monomial, AffineSelector>> extract_if(Pred &&pred) {
        std::vector<std::pair<Monomial, AffineSelector>> out;
        for (auto it = terms_.begin(); it != terms_.end();) {
            Monomial m = Monomial::from_key(it->first);
            if (pred(m)) {
                out.emplace_back(m, std::move(it->second));
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
        return out;
    }

    bool is_parametric() const {
        for (const auto &[key, c] : terms_) {
            if (c.is_parametric()) {
                return true;
            }
        }
        return false;
    }

    friend bool operator==(const FramePolynomial &a, const FramePolynomial &b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

   private:
    void check_monomial(const Monomial &m) const {
        if (m.max_var() >= 2 * n_) {
            throw UsageError("monomial variable out of range for " + std::to_string(n_) + " qubits");
        }
    }

    size_t n_;
    Terms terms_;
};

/// Edges are vertex sets of size 1 to 3 over vertices [0, num_vertices).
struct Hypergraph {
    size_t num_vertices = 0;
    std::vector<Monomial> edges;
};

struct DegreeProfile {
    size_t max_degree = 0;
    bool is_linear = true;
    std::vector<Monomial> nonlinear;
};

/// Replacement of variables by GF(2) sums of variables. An empty sum is 0.
using Substitution = std::map<uint32_t, std::vector<uint32_t>>;

inline void check_selector(const FramePolynomial &f, const BitVector &b) {
    if (b.size() != f.num_qubits()) {
        throw UsageError("frame selector length does not match qubit count");
    }
}

inline bool evaluate(const FramePolynomial &f, const PhasePoint &a, const BitVector &b) {
    if (a.num_qubits() != f.num_qubits()) {
        throw UsageError("evaluate: phase point dimension mismatch");
    }
    check_selector(f, b);
    bool acc = false;
    for (const auto &[key, c] : f.terms()) {
        Monomial m = Monomial::from_key(key);
        bool prod = true;
        for (auto v : m.vars()) {
            prod &= a.bits()[v];
        }
        if (prod) {
            acc ^= c.evaluate(b);
        }
    }
    return acc;
}

inline FramePolynomial add(const FramePolynomial &f, const FramePolynomial &g) {
    if (f.num_qubits() != g.num_qubits()) {
        throw UsageError("add: qubit count mismatch");
    }
    FramePolynomial out = f;
    for (const auto &[key, c] : g.terms()) {
        out.toggle(Monomial::from_key(key), c);
    }
    return out;
}

inline FramePolynomial substitute(const FramePolynomial &f, const Substitution &subs) {
    uint32_t nv = static_cast<uint32_t>(f.num_vars());
    for (const auto &[var, repl] : subs) {
        if (var >= nv) {
            throw UsageError("substitute: variable out of range");
        }
        for (auto r : repl) {
            if (r >= nv) {
                throw UsageError("substitute: replacement variable out of range");
            }
        }
    }
    FramePolynomial out(f.num_qubits());
    for (const auto &[key, c] : f.terms()) {
        Monomial m = Monomial::from_key(key);
        std::array<std::span<const uint32_t>, 3> factors;
        std::array<uint32_t, 3> self{};
        bool touched = false;
        for (size_t k = 0; k < m.degree(); k++) {
            auto it = subs.find(m[k]);
            if (it == subs.end()) {
                self[k] = m[k];
                factors[k] = std::span<const uint32_t>(&self[k], 1);
            } else {
                factors[k] = it->second;
                touched = true;
            }
        }
        if (!touched) {
            out.toggle(m, c);
            continue;
        }
        std::array<uint32_t, 3> pick{};
        size_t d = m.degree();
        std::array<size_t, 3> idx{};
        bool vanishes = false;
        for (size_t k = 0; k < d; k++) {
            vanishes |= factors[k].empty();
        }
        while (!vanishes) {
            for (size_t k = 0; k < d; k++) {
                pick[k] = factors[k][idx[k]];
            }
            out.toggle(Monomial(std::span<const uint32_t>(pick.data(), d)), c);
            size_t k = 0;
            while (k < d && ++idx[k] == factors[k].size()) {
                idx[k] = 0;
                k++;
            }
            if (k == d) {
                break;
            }
        }
    }
    return out;
}

/// Drops every monomial containing an x-variable.
inline FramePolynomial restrict_x_zero(const FramePolynomial &f) {
    FramePolynomial out(f.num_qubits());
    uint32_t n = static_cast<uint32_t>(f.num_qubits());
    for (const auto &[key, c] : f.terms()) {
        Monomial m = Monomial::from_key(key);
        if (m[0] >= n) {
            out.toggle(m, c);
        }
    }
    return out;
}

/// Drops every monomial touching a variable of a discarded qubit.
inline FramePolynomial trace_out(const FramePolynomial &f, std::span<const uint32_t> discard) {
    size_t n = f.num_qubits();
    std::vector<bool> gone(n, false);
    for (auto q : discard) {
        if (q >= n) {
            throw UsageError("trace_out: qubit index out of range");
        }
        gone[q] = true;
    }
    FramePolynomial out(n);
    for (const auto &[key, c] : f.terms()) {
        Monomial m = Monomial::from_key(key);
        bool keep = true;
        for (auto v : m.vars()) {
            keep &= !gone[v % n];
        }
        if (keep) {
            out.toggle(m, c);
        }
    }
    return out;
}

/// Polynomial with coefficients evaluated at a fixed selector b.
inline FramePolynomial instantiate(const FramePolynomial &f, const BitVector &b) {
    check_selector(f, b);
    FramePolynomial out(f.num_qubits());
    for (const auto &[key, c] : f.terms()) {
        if (c.evaluate(b)) {
            out.toggle(Monomial::from_key(key));
        }
    }
    return out;
}

namespace detail {
inline std::vector<Monomial> sorted_monomials(const FramePolynomial &f, const BitVector *b) {
    std::vector<Monomial> out;
    for (const auto &[key, c] : f.terms()) {
        if (b == nullptr || c.evaluate(*b)) {
            out.push_back(Monomial::from_key(key));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline DegreeProfile profile_of(const std::vector<Monomial> &monomials) {
    DegreeProfile p;
    for (const auto &m : monomials) {
        p.max_degree = std::max(p.max_degree, m.degree());
        if (m.degree() >= 2) {
            p.nonlinear.push_back(m);
        }
    }
    p.is_linear = p.nonlinear.empty();
    return p;
}
}  // namespace detail

/// Any-b view: an edge per monomial whose coefficient is not identically zero.
inline Hypergraph hypergraph_view(const FramePolynomial &f) {
    return Hypergraph{f.num_vars(), detail::sorted_monomials(f, nullptr)};
}
/// Fixed-b view.
inline Hypergraph hypergraph_view(const FramePolynomial &f, const BitVector &b) {
    check_selector(f, b);
    return Hypergraph{f.num_vars(), detail::sorted_monomials(f, &b)};
}

inline DegreeProfile degree_profile(const FramePolynomial &f) {
    return detail::profile_of(detail::sorted_monomials(f, nullptr));
}
inline DegreeProfile degree_profile(const FramePolynomial &f, const BitVector &b) {
    check_selector(f, b);
    return detail::profile_of(detail::sorted_monomials(f, &b));
}

/// "a3x" / "a0z".
inline std::string variable_name(size_t n, uint32_t v) {
    return "a" + std::to_string(v % n) + (v < n ? "x" : "z");
}

inline std::string selector_prefix(const AffineSelector &c) {
    if (!c.is_parametric()) {
        return "";
    }
    std::vector<std::string> parts;
    if (c.constant) {
        parts.push_back("1");
    }
    c.mask.for_each_one([&](size_t i) {
        parts.push_back("b[" + std::to_string(i) + "]");
    });
    if (parts.size() == 1) {
        return parts[0] + "*";
    }
    std::string out = "(";
    for (size_t k = 0; k < parts.size(); k++) {
        out += (k ? "+" : "") + parts[k];
    }
    return out + ")*";
}

/// Deterministic text form, e.g. "a1z + a1x*a2z + b[1]*a1x*a1z"; "0" when empty.
inline std::string to_string(const FramePolynomial &f) {
    auto terms = f.sorted_terms();
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    for (size_t t = 0; t < terms.size(); t++) {
        if (t) {
            out += " + ";
        }
        out += selector_prefix(terms[t].second);
        const Monomial &m = terms[t].first;
        for (size_t k = 0; k < m.degree(); k++) {
            out += (k ? "*" : "") + variable_name(f.num_qubits(), m[k]);
        }
    }
    return out;
}

namespace detail {
class FrameTextParser {
   public:
    FrameTextParser(std::string_view text, size_t n) : text_(text), n_(n), out_(n) {
    }

    FramePolynomial parse() {
        skip_space();
        if (peek() == '0' && rest_is_blank(pos_ + 1)) {
            return out_;
        }
        while (true) {
            parse_term();
            skip_space();
            if (pos_ >= text_.size()) {
                break;
            }
            expect('+');
        }
        return out_;
    }

   private:
    bool rest_is_blank(size_t from) const {
        for (size_t k = from; k < text_.size(); k++) {
            if (!std::isspace(static_cast<unsigned char>(text_[k]))) {
                return false;
            }
        }
        return true;
    }
    char peek() const {
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            pos_++;
        }
    }
    [[noreturn]] void fail(const std::string &what) const {
        throw ParseError("frame polynomial, column " + std::to_string(pos_ + 1) + ": " + what);
    }
    void expect(char c) {
        skip_space();
        if (peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        pos_++;
    }
    size_t parse_uint() {
        skip_space();
        size_t start = pos_;
        size_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<size_t>(text_[pos_] - '0');
            if (v > (size_t{1} << 40)) {
                fail("number too large");
            }
            pos_++;
        }
        if (pos_ == start) {
            fail("expected a number");
        }
        return v;
    }
    size_t parse_selector_bit() {
        expect('b');
        expect('[');
        size_t i = parse_uint();
        expect(']');
        if (i >= n_) {
            fail("selector index out of range");
        }
        return i;
    }
    // Selector factors: 'b[i]' or '(1+b[i]+...)'.
    void parse_selector(AffineSelector &c) {
        skip_space();
        if (peek() == 'b') {
            c.mask.flip(parse_selector_bit());
            return;
        }
        expect('(');
        while (true) {
            skip_space();
            if (peek() == '1') {
                pos_++;
                c.constant ^= true;
            } else {
                c.mask.flip(parse_selector_bit());
            }
            skip_space();
            if (peek() == ')') {
                pos_++;
                return;
            }
            expect('+');
        }
    }
    uint32_t parse_variable() {
        expect('a');
        size_t q = parse_uint();
        if (q >= n_) {
            fail("qubit index out of range");
        }
        char kind = peek();
        if (kind != 'x' && kind != 'z') {
            fail("expected 'x' or 'z' after qubit index");
        }
        pos_++;
        return static_cast<uint32_t>(kind == 'x' ? q : n_ + q);
    }
    void parse_term() {
        AffineSelector c = AffineSelector::one(n_);
        bool has_selector = false;
        std::vector<uint32_t> vars;
        while (true) {
            skip_space();
            char ch = peek();
            if (ch == 'b' || ch == '(') {
                AffineSelector factor(n_);
                parse_selector(factor);
                if (has_selector) {
                    fail("at most one selector factor per term");
                }
                has_selector = true;
                c = factor;
            } else {
                vars.push_back(parse_variable());
            }
            skip_space();
            if (peek() != '*') {
                break;
            }
            pos_++;
        }
        if (vars.empty()) {
            fail("term has no variables");
        }
        if (vars.size() > 3) {
            fail("term degree exceeds 3");
        }
        Monomial m{std::span<const uint32_t>(vars)};
        out_.toggle(m, c);
    }

    std::string_view text_;
    size_t n_;
    size_t pos_ = 0;
    FramePolynomial out_;
};
}  // namespace detail

/// Inverse of to_string. Repeated monomials are XOR-folded.
inline FramePolynomial parse_frame_polynomial(std::string_view text, size_t n) {
    return detail::FrameTextParser(text, n).parse();
}

}  // namespace fwsim

#endif
