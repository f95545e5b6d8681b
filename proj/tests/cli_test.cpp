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


#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"

#include "cli_util.hpp"

using namespace fwsim::testutil;
using nlohmann::json;

namespace {

const char *kCoverFrame =
    "a3z + a5z + a1z*a5z + a2z*a5z + a4z*a5z + a3z*a5z*a6z + a1z*a2z*a4z + a1z*a3z + a2z*a6z + a3z*a6z";

std::string circuit_file() {
    static std::string path = write_scratch("c.txt", "qubits 3\nH 0\nS 0\nH 1\nCNOT 0 1\nH 2\nCZ 1 2\nS 2\nH 2\n").string();
    return path;
}

}  // namespace

TEST(cli, cover_from_frame_text) {
    auto r = run_cli(std::string("cover --frame '") + kCoverFrame + "' --qubits-count 7 --mode weak");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["removed"], json({"a5z", "a1z", "a6z"}));
    EXPECT_EQ(j["retained"], json({0, 2, 3, 4}));
    EXPECT_EQ(j["reduced_frame"], "a3z");
}

TEST(cli, gen_then_cover) {
    auto g = run_cli("gen --arch complete --n 6 --alpha 0.5 --seed 4");
    ASSERT_EQ(g.code, 0) << g.err;
    EXPECT_EQ(g.out.rfind("qubits 6\n", 0), 0u);
    auto path = write_scratch("gen.txt", g.out);
    auto r = run_cli("cover --circuit '" + path.string() + "' --mode born");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["mode"], "born");
}

TEST(cli, sample_is_deterministic) {
    std::string args = "sample --circuit '" + circuit_file() + "' --input-state A --shots 3000 --seed 11";
    auto a = run_cli(args, "FW_THREADS=1");
    auto b = run_cli(args, "FW_THREADS=3");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto j = json::parse(a.out);
    uint64_t total = 0;
    for (auto &[k, v] : j["histogram"].items()) {
        EXPECT_EQ(k.size(), j["retained"].size());
        total += v.get<uint64_t>();
    }
    EXPECT_EQ(total, 3000u);
    auto c = run_cli(args + " --linear-functions");
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_TRUE(json::parse(c.out).contains("functions"));
}

TEST(cli, estimate_reports) {
    for (const char *method : {"wigner", "pauli"}) {
        auto r = run_cli("estimate --circuit '" + circuit_file() + "' --input-state A --method " + method +
                         " --samples 4000 --seed 3 --qubits 0,1 --target 01 --exact");
        ASSERT_EQ(r.code, 0) << r.err;
        auto j = json::parse(r.out);
        EXPECT_EQ(j["method"], method);
        double est = j["estimate"], se = j["stderr"], p = j["exact"]["probability"];
        EXPECT_LT(std::abs(est - p), 5 * se + 1e-12);
    }
}

TEST(cli, verify_random_circuit) {
    auto r = run_cli("verify --random 3 --gates 15 --seed 8");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    for (const auto &c : j["checks"]) {
        EXPECT_NE(c["status"], "FAIL") << c["name"];
    }
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run_cli("").code, 2);
    EXPECT_EQ(run_cli("sample --circuit '" + circuit_file() + "' --shots notanumber").code, 2);
    EXPECT_EQ(run_cli("cover --frame 'a9q' --qubits-count 2").code, 2);
    auto bad = write_scratch("bad.txt", "qubits 2\nTOFFOLI 0 1\n");
    auto p = run_cli("sample --circuit '" + bad.string() + "'");
    EXPECT_EQ(p.code, 2);
    EXPECT_EQ(json::parse(p.err)["error"], "parse_error");

    auto neg = run_cli("sample --circuit '" + circuit_file() + "' --input-state 'equatorial 0.7' --representation single");
    EXPECT_EQ(neg.code, 3);
    EXPECT_EQ(json::parse(neg.err)["error"], "negative_representation");

    // This circuit leaves a0z*a1z*a2z in the final frame.
    auto g = run_cli("gen --arch complete --n 3 --alpha 1.5 --seed 3");
    ASSERT_EQ(g.code, 0) << g.err;
    auto cubic = write_scratch("cubic.txt", g.out);
    auto need = run_cli("estimate --circuit '" + cubic.string() + "' --input-state A --qubits 0,1,2 --samples 10");
    EXPECT_EQ(need.code, 3);
    EXPECT_EQ(json::parse(need.err)["error"], "need_more_tracing");
}

TEST(cli, config_file) {
    auto cfg = write_scratch("cfg.json", json{{"circuit", circuit_file()},
                                              {"input-state", "A"},
                                              {"shots", 500},
                                              {"seed", 2}}
                                             .dump());
    auto a = run_cli("sample --config '" + cfg.string() + "'");
    auto b = run_cli("sample --circuit '" + circuit_file() + "' --input-state A --shots 500 --seed 2");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto nested = write_scratch("cfg2.json", json{{"scan", {{"n", {8}}, {"alpha", {0.5}}, {"replicates", 2}}}}.dump());
    auto s = run_cli("--config '" + nested.string() + "' scan --arch ring1d");
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_NE(s.out.find("\nring1d,8,0.5,1,"), std::string::npos);
}

TEST(cli, scan_csv_is_thread_independent) {
    std::string args = "scan --arch complete --n 8,12 --alpha 0.4,0.8 --replicates 3 --seed 5";
    auto a = run_cli(args, "FW_THREADS=1");
    auto b = run_cli(args, "FW_THREADS=4");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}
