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

#ifndef FWSIM_STATES_HPP
#define FWSIM_STATES_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fwsim/bits.hpp"
#include "fwsim/errors.hpp"
#include "fwsim/frame.hpp"
#include "fwsim/phase_space.hpp"
#include "fwsim/rng.hpp"

namespace fwsim {

constexpr double kBlochTolerance = 1e-12;
constexpr double kClampTolerance = 1e-12;

struct SingleQubitState {
    double rx = 0, ry = 0, rz = 0;

    static SingleQubitState bloch(double rx, double ry, double rz) {
        SingleQubitState s{rx, ry, rz};
        if (!(rx * rx + ry * ry + rz * rz <= 1 + kBlochTolerance)) {
            throw UsageError("Bloch vector lies outside the unit ball");
        }
        return s;
    }
    static SingleQubitState zero() {
        return {0, 0, 1};
    }
    /// (I + (X + Y + Z)/sqrt(3)) / 2.
    static SingleQubitState magic_a() {
        double c = 1 / std::sqrt(3.0);
        return {c, c, c};
    }
    static SingleQubitState equatorial(double theta) {
        return {std::cos(theta), std::sin(theta), 0};
    }
};

/// (1/4)[1 + (-1)^{u_z} r_x + (-1)^{u_x} r_z + (-1)^{u_x + u_z + b} r_y].
inline double wigner_single(const SingleQubitState &s, bool b, bool ux, bool uz) {
    double sx = uz ? -1 : 1;
    double sz = ux ? -1 : 1;
    double sy = (ux ^ uz ^ b) ? -1 : 1;
    return (1 + sx * s.rx + sz * s.rz + sy * s.ry) / 4;
}

/// Weight slot of (u_x, u_z, b) in a per-qubit table.
inline size_t table_index(bool ux, bool uz, bool b) {
    return 4 * size_t{b} + 2 * size_t{ux} + size_t{uz};
}

/// Weights w(s) = prod_k (1 + s_k r_k)/2 indexed by bits (t_x, t_y, t_z) of
/// the slot, where s_k = (-1)^{t_k}: slot = 4 t_x + 2 t_y + t_z.
inline std::array<double, 8> cube_decompose(const SingleQubitState &s) {
    if (!(s.rx * s.rx + s.ry * s.ry + s.rz * s.rz <= 1 + kBlochTolerance)) {
        throw UsageError("cube_decompose: unphysical Bloch vector");
    }
    std::array<double, 8> w{};
    for (size_t t = 0; t < 8; t++) {
        double sx = (t & 4) ? -1 : 1;
        double sy = (t & 2) ? -1 : 1;
        double sz = (t & 1) ? -1 : 1;
        w[t] = std::max(0.0, (1 + sx * s.rx) / 2) * std::max(0.0, (1 + sy * s.ry) / 2) *
               std::max(0.0, (1 + sz * s.rz) / 2);
    }
    return w;
}

/// (u_x, u_z, b) of the phase point operator with Bloch-like vector s.
struct CubeCorner {
    bool ux, uz, b;
};
inline CubeCorner cube_corner(size_t t) {
    bool tx = t & 4, ty = t & 2, tz = t & 1;
    // b = (1 - s_x s_y s_z)/2, u_z = (1 - s_x)/2, u_x = (1 - s_z)/2.
    return CubeCorner{tz, tx, static_cast<bool>(tx ^ ty ^ tz)};
}

enum class RepresentationMode { single_frame, cube, automatic };

enum class QubitFrame : uint8_t {
    zero_frame,  // b pinned to 0
    dual_frame,  // b pinned to 1
    cube         // b sampled
};

/// Product distribution over (phase point, frame selector).
struct WignerDistribution {
    size_t n = 0;
    std::vector<std::array<double, 8>> tables;
    std::vector<QubitFrame> frames;

    bool is_single_frame() const {
        for (auto f : frames) {
            if (f == QubitFrame::cube) {
                return false;
            }
        }
        return true;
    }
    RepresentationMode mode() const {
        return is_single_frame() ? RepresentationMode::single_frame : RepresentationMode::cube;
    }
    /// Selector value for pinned qubits.
    BitVector pinned_selector() const {
        BitVector b(n);
        for (size_t q = 0; q < n; q++) {
            b.set(q, frames[q] == QubitFrame::dual_frame);
        }
        return b;
    }
};

namespace detail {
inline bool fixed_frame_table(const SingleQubitState &s, bool b, std::array<double, 8> &table) {
    table.fill(0);
    for (int ux = 0; ux < 2; ux++) {
        for (int uz = 0; uz < 2; uz++) {
            double w = wigner_single(s, b, ux, uz);
            if (w < -kClampTolerance) {
                return false;
            }
            table[table_index(ux, uz, b)] = std::max(0.0, w);
        }
    }
    return true;
}
}  // namespace detail

inline WignerDistribution build_distribution(const std::vector<SingleQubitState> &states, RepresentationMode mode) {
    require_qubits(states.size());
    WignerDistribution d;
    d.n = states.size();
    d.tables.resize(d.n);
    d.frames.resize(d.n);
    for (size_t q = 0; q < d.n; q++) {
        const auto &s = states[q];
        if (!(s.rx * s.rx + s.ry * s.ry + s.rz * s.rz <= 1 + kBlochTolerance)) {
            throw UsageError("qubit " + std::to_string(q) + ": Bloch vector outside the unit ball");
        }
        auto &table = d.tables[q];
        if (mode != RepresentationMode::cube) {
            if (detail::fixed_frame_table(s, false, table)) {
                d.frames[q] = QubitFrame::zero_frame;
                continue;
            }
            if (detail::fixed_frame_table(s, true, table)) {
                d.frames[q] = QubitFrame::dual_frame;
                continue;
            }
            if (mode == RepresentationMode::single_frame) {
                throw NegativeRepresentation(
                    q, "qubit " + std::to_string(q) + " has negative Wigner weight in both fixed frames");
            }
        }
        table.fill(0);
        auto w = cube_decompose(s);
        for (size_t t = 0; t < 8; t++) {
            auto c = cube_corner(t);
            table[table_index(c.ux, c.uz, c.b)] += w[t];
        }
        d.frames[q] = QubitFrame::cube;
    }
    return d;
}

/// F0 = sum_i b_i a_ix a_iz, with pinned selectors folded into constants.
inline FramePolynomial initial_frame(const WignerDistribution &d) {
    FramePolynomial f(d.n);
    uint32_t n = static_cast<uint32_t>(d.n);
    for (uint32_t q = 0; q < n; q++) {
        Monomial m{q, n + q};
        if (d.frames[q] == QubitFrame::dual_frame) {
            f.toggle(m);
        } else if (d.frames[q] == QubitFrame::cube) {
            f.toggle(m, AffineSelector::bit(d.n, q));
        }
    }
    return f;
}

struct PhaseSample {
    PhasePoint u;
    BitVector b;
};

/// Precomputed cumulative tables for repeated sampling.
class DistributionSampler {
   public:
    explicit DistributionSampler(const WignerDistribution &d) : n_(d.n), cumulative_(d.n) {
        for (size_t q = 0; q < n_; q++) {
            double acc = 0;
            size_t last = 0;
            for (size_t k = 0; k < 8; k++) {
                acc += d.tables[q][k];
                cumulative_[q][k] = acc;
                if (d.tables[q][k] > 0) {
                    last = k;
                }
            }
            // Normalize and make the last nonzero slot absorb rounding.
            for (size_t k = 0; k < 8; k++) {
                cumulative_[q][k] = k >= last ? 2.0 : cumulative_[q][k] / acc;
            }
        }
    }

    size_t num_qubits() const {
        return n_;
    }

    void sample_into(Rng &rng, PhaseSample &out) const {
        for (size_t q = 0; q < n_; q++) {
            double r = uniform_unit(rng);
            size_t k = 0;
            while (cumulative_[q][k] <= r) {
                k++;
            }
            out.u.set_x(q, (k >> 1) & 1);
            out.u.set_z(q, k & 1);
            out.b.set(q, (k >> 2) & 1);
        }
    }
    PhaseSample sample(Rng &rng) const {
        PhaseSample s{PhasePoint(n_), BitVector(n_)};
        sample_into(rng, s);
        return s;
    }

   private:
    size_t n_;
    std::vector<std::array<double, 8>> cumulative_;
};

inline PhaseSample sample(const WignerDistribution &d, Rng &rng) {
    return DistributionSampler(d).sample(rng);
}

/// Calls f(sample, probability) for every point of the finite support.
template <typename F>
void enumerate_support(const WignerDistribution &d, F &&f) {
    std::vector<std::vector<size_t>> slots(d.n);
    for (size_t q = 0; q < d.n; q++) {
        for (size_t k = 0; k < 8; k++) {
            if (d.tables[q][k] > 0) {
                slots[q].push_back(k);
            }
        }
    }
    std::vector<size_t> idx(d.n, 0);
    PhaseSample s{PhasePoint(d.n), BitVector(d.n)};
    while (true) {
        double p = 1;
        for (size_t q = 0; q < d.n; q++) {
            size_t k = slots[q][idx[q]];
            p *= d.tables[q][k];
            s.u.set_x(q, (k >> 1) & 1);
            s.u.set_z(q, k & 1);
            s.b.set(q, (k >> 2) & 1);
        }
        f(static_cast<const PhaseSample &>(s), p);
        size_t q = 0;
        while (q < d.n && ++idx[q] == slots[q].size()) {
            idx[q] = 0;
            q++;
        }
        if (q == d.n) {
            return;
        }
    }
}

/// One state per line: `bloch rx ry rz`, `zero`, `A`, `equatorial theta`.
inline SingleQubitState parse_state_spec(std::string_view spec) {
    std::istringstream in{std::string(spec)};
    std::string name;
    in >> name;
    auto rest_empty = [&] {
        std::string extra;
        return !(in >> extra);
    };
    SingleQubitState s;
    if (name == "zero") {
        s = SingleQubitState::zero();
    } else if (name == "A") {
        s = SingleQubitState::magic_a();
    } else if (name == "equatorial") {
        double theta;
        if (!(in >> theta)) {
            throw ParseError("equatorial needs an angle");
        }
        s = SingleQubitState::equatorial(theta);
    } else if (name == "bloch") {
        double rx, ry, rz;
        if (!(in >> rx >> ry >> rz)) {
            throw ParseError("bloch needs three components");
        }
        try {
            s = SingleQubitState::bloch(rx, ry, rz);
        } catch (const UsageError &e) {
            throw ParseError(e.what());
        }
    } else {
        throw ParseError("unknown state '" + name + "'");
    }
    if (!rest_empty()) {
        throw ParseError("trailing text after state '" + name + "'");
    }
    return s;
}

inline std::vector<SingleQubitState> parse_states(std::istream &in) {
    std::vector<SingleQubitState> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(parse_state_spec(line));
        } catch (const ParseError &e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (out.empty()) {
        throw ParseError("state file lists no qubits");
    }
    return out;
}

inline std::vector<SingleQubitState> parse_states(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_states(in);
}

}  // namespace fwsim

#endif
