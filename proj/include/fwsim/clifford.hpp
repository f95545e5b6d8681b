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

#ifndef FWSIM_CLIFFORD_HPP
#define FWSIM_CLIFFORD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fwsim/bits.hpp"
#include "fwsim/errors.hpp"
#include "fwsim/frame.hpp"
#include "fwsim/phase_space.hpp"

namespace fwsim {

enum class GateKind : uint8_t { H, S, CNOT, CZ, X, Z };

inline const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::CZ:
            return "CZ";
        case GateKind::X:
            return "X";
        case GateKind::Z:
            return "Z";
    }
    return "?";
}

inline size_t gate_arity(GateKind k) {
    return (k == GateKind::CNOT || k == GateKind::CZ) ? 2 : 1;
}

/// For CNOT, q[0] is the control and q[1] the target.
struct Gate {
    GateKind kind;
    std::array<uint32_t, 2> q{};

    static Gate one(GateKind kind, uint32_t a) {
        return Gate{kind, {a, 0}};
    }
    static Gate two(GateKind kind, uint32_t a, uint32_t b) {
        return Gate{kind, {a, b}};
    }
    size_t arity() const {
        return gate_arity(kind);
    }
    friend bool operator==(const Gate &a, const Gate &b) {
        return a.kind == b.kind && a.q[0] == b.q[0] && (a.arity() == 1 || a.q[1] == b.q[1]);
    }
};

inline void validate_gate(const Gate &g, size_t n) {
    if (g.q[0] >= n || (g.arity() == 2 && g.q[1] >= n)) {
        throw UsageError(std::string(gate_name(g.kind)) + ": qubit index out of range");
    }
    if (g.arity() == 2 && g.q[0] == g.q[1]) {
        throw UsageError(std::string(gate_name(g.kind)) + ": repeated qubit index");
    }
}

/// Gates in application order: gates[0] acts first.
struct CliffordCircuit {
    explicit CliffordCircuit(size_t n) : n(n) {
        require_qubits(n);
    }
    void append(const Gate &g) {
        validate_gate(g, n);
        gates.push_back(g);
    }
    size_t num_qubits() const {
        return n;
    }

    size_t n;
    std::vector<Gate> gates;
};

/// Linear map acting on at most four coordinates: output coordinate
/// coords[r] becomes the XOR of input coordinates coords[s] for each bit s
/// of rows[r]. Other coordinates are unchanged.
struct LocalMap {
    std::vector<uint32_t> coords;
    std::vector<uint8_t> rows;

    PhasePoint apply(const PhasePoint &u) const {
        PhasePoint out = u;
        for (size_t r = 0; r < coords.size(); r++) {
            bool v = false;
            for (size_t s = 0; s < coords.size(); s++) {
                if ((rows[r] >> s) & 1) {
                    v ^= u.bits()[coords[s]];
                }
            }
            out.bits().set(coords[r], v);
        }
        return out;
    }

    LocalMap inverse() const {
        size_t k = coords.size();
        std::vector<uint8_t> a = rows;
        std::vector<uint8_t> inv(k);
        for (size_t r = 0; r < k; r++) {
            inv[r] = static_cast<uint8_t>(1u << r);
        }
        for (size_t c = 0; c < k; c++) {
            size_t p = c;
            while (p < k && !((a[p] >> c) & 1)) {
                p++;
            }
            if (p == k) {
                throw std::logic_error("LocalMap::inverse: singular map");
            }
            std::swap(a[p], a[c]);
            std::swap(inv[p], inv[c]);
            for (size_t r = 0; r < k; r++) {
                if (r != c && ((a[r] >> c) & 1)) {
                    a[r] ^= a[c];
                    inv[r] ^= inv[c];
                }
            }
        }
        return LocalMap{coords, inv};
    }

    /// Replaces each affected variable by the corresponding row of this map.
    Substitution as_substitution() const {
        Substitution subs;
        for (size_t r = 0; r < coords.size(); r++) {
            std::vector<uint32_t> repl;
            for (size_t s = 0; s < coords.size(); s++) {
                if ((rows[r] >> s) & 1) {
                    repl.push_back(coords[s]);
                }
            }
            subs[coords[r]] = std::move(repl);
        }
        return subs;
    }

    /// Dense form on 2n coordinates.
    BitMatrix dense(size_t n) const {
        BitMatrix m = BitMatrix::identity(2 * n);
        for (size_t r = 0; r < coords.size(); r++) {
            m.row(coords[r]).clear();
            for (size_t s = 0; s < coords.size(); s++) {
                if ((rows[r] >> s) & 1) {
                    m.row(coords[r]).set(coords[s], true);
                }
            }
        }
        return m;
    }

    /// Replaces M by (this map) * M, treating M's rows as coordinate functionals.
    void left_multiply_into(BitMatrix &m) const {
        std::array<BitVector, 4> old;
        for (size_t s = 0; s < coords.size(); s++) {
            old[s] = m.row(coords[s]);
        }
        for (size_t r = 0; r < coords.size(); r++) {
            BitVector row(m.num_cols());
            for (size_t s = 0; s < coords.size(); s++) {
                if ((rows[r] >> s) & 1) {
                    row ^= old[s];
                }
            }
            m.row(coords[r]) = std::move(row);
        }
    }
};

/// U T_a U† = (-1)^{P(a)} T_{S(a)}.
struct GateAction {
    LocalMap forward;
    LocalMap inverse;
    FramePolynomial phase;

    SymplecticMap smap(size_t n) const {
        return SymplecticMap::from_matrix(forward.dense(n));
    }
};

inline GateAction gate_action(const Gate &g, size_t n) {
    validate_gate(g, n);
    uint32_t nn = static_cast<uint32_t>(n);
    uint32_t i = g.q[0];
    uint32_t j = g.q[1];
    uint32_t ix = i, iz = nn + i, jx = j, jz = nn + j;
    GateAction act{LocalMap{}, LocalMap{}, FramePolynomial(n)};
    switch (g.kind) {
        case GateKind::H:
            act.forward = LocalMap{{ix, iz}, {0b10, 0b01}};
            act.phase.toggle(Monomial{iz, ix});
            break;
        case GateKind::S:
            act.forward = LocalMap{{ix, iz}, {0b01, 0b11}};
            act.phase.toggle(Monomial{iz, ix});
            break;
        case GateKind::CNOT:
            // Coordinates (ix, jx, iz, jz): jx += ix, iz += jz.
            act.forward = LocalMap{{ix, jx, iz, jz}, {0b0001, 0b0011, 0b1100, 0b1000}};
            act.phase.toggle(Monomial{jz, ix, iz});
            act.phase.toggle(Monomial{jz, ix, jx});
            act.phase.toggle(Monomial{jz, ix});
            break;
        case GateKind::CZ:
            // iz += jx, jz += ix.
            act.forward = LocalMap{{ix, jx, iz, jz}, {0b0001, 0b0010, 0b0110, 0b1001}};
            act.phase.toggle(Monomial{jx, ix, iz});
            act.phase.toggle(Monomial{jx, ix, jz});
            break;
        case GateKind::X:
            act.phase.toggle(Monomial{iz});
            break;
        case GateKind::Z:
            act.phase.toggle(Monomial{ix});
            break;
    }
    act.inverse = act.forward.inverse();
    return act;
}

/// S = S_m ... S_1 for gates applied in order 1..m.
inline SymplecticMap circuit_symplectic(const CliffordCircuit &c) {
    SymplecticMap s = SymplecticMap::identity(c.n);
    for (const auto &g : c.gates) {
        gate_action(g, c.n).forward.left_multiply_into(s.mutable_matrix());
    }
    return s;
}

/// F <- (F + P)(S^{-1} a), in place.
inline void apply_gate_to_frame(FramePolynomial &f, const GateAction &act) {
    for (const auto &[key, c] : act.phase.terms()) {
        f.toggle(Monomial::from_key(key), c);
    }
    const LocalMap &inv = act.inverse;
    if (inv.coords.empty()) {
        return;
    }
    Substitution subs = inv.as_substitution();
    auto touched = f.extract_if([&](const Monomial &m) {
        for (auto v : m.vars()) {
            if (subs.count(v)) {
                return true;
            }
        }
        return false;
    });
    FramePolynomial moved(f.num_qubits());
    for (auto &[m, c] : touched) {
        moved.toggle(m, c);
    }
    FramePolynomial expanded = substitute(moved, subs);
    for (const auto &[key, c] : expanded.terms()) {
        f.toggle(Monomial::from_key(key), c);
    }
}

struct FramePropagation {
    FramePolynomial frame;
    SymplecticMap smap;
};

inline FramePropagation propagate_frame(const CliffordCircuit &c, const FramePolynomial &f0) {
    if (f0.num_qubits() != c.n) {
        throw UsageError("propagate_frame: qubit count mismatch");
    }
    FramePropagation out{f0, SymplecticMap::identity(c.n)};
    for (const auto &g : c.gates) {
        GateAction act = gate_action(g, c.n);
        apply_gate_to_frame(out.frame, act);
        act.forward.left_multiply_into(out.smap.mutable_matrix());
    }
    return out;
}

enum class Direction { forward, backward };

namespace detail {
/// p <- g p g† using stabilizer tableau update rules.
inline void conjugate_by_gate(PauliString &p, const Gate &g) {
    PhasePoint &a = p.a;
    uint32_t i = g.q[0];
    uint32_t j = g.q[1];
    switch (g.kind) {
        case GateKind::H: {
            bool x = a.x(i), z = a.z(i);
            p.sign ^= x & z;
            a.set_x(i, z);
            a.set_z(i, x);
            break;
        }
        case GateKind::S: {
            bool x = a.x(i), z = a.z(i);
            p.sign ^= x & z;
            a.set_z(i, z ^ x);
            break;
        }
        case GateKind::CNOT: {
            bool xc = a.x(i), zc = a.z(i), xt = a.x(j), zt = a.z(j);
            p.sign ^= xc & zt & (xt ^ zc ^ 1);
            a.set_x(j, xt ^ xc);
            a.set_z(i, zc ^ zt);
            break;
        }
        case GateKind::CZ: {
            bool xa = a.x(i), za = a.z(i), xb = a.x(j), zb = a.z(j);
            p.sign ^= xa & xb & (za ^ zb);
            a.set_z(i, za ^ xb);
            a.set_z(j, zb ^ xa);
            break;
        }
        case GateKind::X:
            p.sign ^= a.z(i);
            break;
        case GateKind::Z:
            p.sign ^= a.x(i);
            break;
    }
}
}  // namespace detail

/// forward: U p U†; backward: U† p U.
inline PauliString conjugate_pauli(const CliffordCircuit &c, PauliString p, Direction direction) {
    if (p.num_qubits() != c.n) {
        throw UsageError("conjugate_pauli: qubit count mismatch");
    }
    if (direction == Direction::forward) {
        for (const auto &g : c.gates) {
            detail::conjugate_by_gate(p, g);
        }
        return p;
    }
    for (size_t k = c.gates.size(); k-- > 0;) {
        const Gate &g = c.gates[k];
        if (g.kind == GateKind::S) {
            // S^{-1} = Z S.
            detail::conjugate_by_gate(p, g);
            detail::conjugate_by_gate(p, Gate::one(GateKind::Z, g.q[0]));
        } else {
            detail::conjugate_by_gate(p, g);
        }
    }
    return p;
}

/// For a circuit acting on |0...0>: replaces the leading H-free block, which
/// permutes computational basis states up to phase, by X gates preparing the
/// basis state it produces. The output state is unchanged up to global phase.
inline CliffordCircuit reduce_zero_state_prefix(const CliffordCircuit &c) {
    std::vector<bool> s(c.n, false);
    size_t k = 0;
    for (; k < c.gates.size(); k++) {
        const Gate &g = c.gates[k];
        if (g.kind == GateKind::H) {
            break;
        }
        if (g.kind == GateKind::X) {
            s[g.q[0]] = !s[g.q[0]];
        } else if (g.kind == GateKind::CNOT) {
            s[g.q[1]] = s[g.q[1]] ^ s[g.q[0]];
        }
    }
    CliffordCircuit out(c.n);
    for (uint32_t q = 0; q < c.n; q++) {
        if (s[q]) {
            out.append(Gate::one(GateKind::X, q));
        }
    }
    for (; k < c.gates.size(); k++) {
        out.gates.push_back(c.gates[k]);
    }
    return out;
}

inline std::string format_circuit(const CliffordCircuit &c) {
    std::string out = "qubits " + std::to_string(c.n) + "\n";
    for (const auto &g : c.gates) {
        out += gate_name(g.kind);
        out += " " + std::to_string(g.q[0]);
        if (g.arity() == 2) {
            out += " " + std::to_string(g.q[1]);
        }
        out += "\n";
    }
    return out;
}

namespace detail {
inline std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> words;
    std::istringstream in{std::string(line)};
    std::string w;
    while (in >> w) {
        words.push_back(w);
    }
    return words;
}

inline uint64_t parse_index(const std::string &word, size_t line_no) {
    if (word.empty() || word.size() > 9 || word.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" + word + "'");
    }
    return std::stoull(word);
}
}  // namespace detail

/// Reads "qubits <n>" followed by one gate per line; '#' starts a comment.
inline CliffordCircuit parse_circuit(std::istream &in) {
    std::string line;
    size_t line_no = 0;
    std::optional<CliffordCircuit> circuit;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        auto words = detail::split_words(line);
        if (words.empty()) {
            continue;
        }
        auto where = "line " + std::to_string(line_no) + ": ";
        if (!circuit) {
            if (words[0] != "qubits" || words.size() != 2) {
                throw ParseError(where + "expected header 'qubits <n>'");
            }
            uint64_t n = detail::parse_index(words[1], line_no);
            if (n == 0) {
                throw ParseError(where + "qubit count must be at least 1");
            }
            circuit.emplace(n);
            continue;
        }
        const std::string &op = words[0];
        GateKind kind;
        if (op == "H") {
            kind = GateKind::H;
        } else if (op == "S") {
            kind = GateKind::S;
        } else if (op == "CNOT") {
            kind = GateKind::CNOT;
        } else if (op == "CZ") {
            kind = GateKind::CZ;
        } else if (op == "X") {
            kind = GateKind::X;
        } else if (op == "Z") {
            kind = GateKind::Z;
        } else {
            throw ParseError(where + "unknown gate '" + op + "'");
        }
        size_t arity = gate_arity(kind);
        if (words.size() != arity + 1) {
            throw ParseError(where + op + " takes " + std::to_string(arity) + " qubit index(es)");
        }
        Gate g{kind, {0, 0}};
        for (size_t k = 0; k < arity; k++) {
            uint64_t q = detail::parse_index(words[k + 1], line_no);
            if (q >= circuit->n) {
                throw ParseError(where + "qubit index " + words[k + 1] + " out of range");
            }
            g.q[k] = static_cast<uint32_t>(q);
        }
        if (arity == 2 && g.q[0] == g.q[1]) {
            throw ParseError(where + "repeated qubit index");
        }
        circuit->gates.push_back(g);
    }
    if (!circuit) {
        throw ParseError("circuit has no 'qubits <n>' header");
    }
    return *circuit;
}

inline CliffordCircuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_circuit(in);
}

}  // namespace fwsim

#endif
