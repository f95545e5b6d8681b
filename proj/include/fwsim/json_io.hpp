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

#ifndef FWSIM_JSON_IO_HPP
#define FWSIM_JSON_IO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "fwsim/born.hpp"
#include "fwsim/cover.hpp"
#include "fwsim/frame.hpp"

namespace fwsim {

inline nlohmann::ordered_json cover_to_json(const CoverResult &c) {
    size_t n = c.reduced_frame.num_qubits();
    nlohmann::ordered_json removed = nlohmann::ordered_json::array();
    for (auto v : c.removed) {
        removed.push_back(variable_name(n, v));
    }
    return nlohmann::ordered_json{{"mode", cover_mode_name(c.mode)},
                                  {"removed", removed},
                                  {"retained", c.retained_qubits},
                                  {"reduced_frame", to_string(c.reduced_frame)}};
}

inline nlohmann::ordered_json report_to_json(const EstimateReport &r) {
    return nlohmann::ordered_json{{"method", method_name(r.method)},
                                  {"qubits", r.qubits},
                                  {"target", r.target},
                                  {"samples", r.samples},
                                  {"estimate", r.estimate},
                                  {"variance", r.variance},
                                  {"stderr", r.standard_error},
                                  {"seed", r.seed}};
}

inline nlohmann::ordered_json histogram_to_json(const std::map<std::string, uint64_t> &h) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto &[k, v] : h) {
        out[k] = v;
    }
    return out;
}

}  // namespace fwsim

#endif
