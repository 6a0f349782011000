// Copyright 2026 The wmtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wmtomo/povm.h"

using wmtomo::cli::kExitNumerical;
using wmtomo::cli::kExitOk;
using wmtomo::cli::kExitUsage;
using wmtomo::cli::parse_grid;
using wmtomo::cli::run_cli;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"crb-scan"}).code, kExitUsage);
    EXPECT_EQ(run({"crb-scan", "--protocol", "nonsense"}).code, kExitUsage);
    EXPECT_EQ(run({"crb-scan", "--protocol", "dst-original", "--strength", "2.0"}).code, kExitUsage);
    EXPECT_EQ(run({"crb-scan", "--protocol", "mub", "--grid", "0.1:0.2:3"}).code, kExitUsage);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, kExitOk); }

TEST(Cli, MubSingleRow) {
    CliResult r = run({"crb-scan", "--protocol", "mub"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto l = lines(r.out);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], "strength,C,divergent");
    double c = std::stod(l[1].substr(l[1].find(',') + 1));
    EXPECT_NEAR(c, 13.0 / 12.0, 1e-3);
}

TEST(Cli, DstOriginalDefaultScanMinimum) {
    CliResult r = run({"crb-scan", "--protocol", "dst-original"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(lines(r.out).size(), 31u);
    auto pos = r.err.find("argmin strength=");
    ASSERT_NE(pos, std::string::npos);
    double best = std::stod(r.err.substr(pos + 16));
    EXPECT_GE(best, 0.8);
    EXPECT_LE(best, 1.0);
}

TEST(Cli, DivergentExitCode) {
    std::vector<std::string> base{"crb-scan", "--protocol", "dst-original", "--strength", "1.5707963267948966"};
    CliResult r = run(base);
    EXPECT_EQ(r.code, kExitNumerical);
    EXPECT_NE(r.out.find(",inf,1"), std::string::npos) << r.out;
    base.push_back("--allow-divergent");
    EXPECT_EQ(run(base).code, kExitOk);
}

TEST(Cli, SimulateIsByteDeterministic) {
    std::vector<std::string> args{"simulate", "--protocol", "mub", "--n", "20", "--trials", "4", "--particles", "200",
                                  "--seed", "9", "--threads", "2"};
    CliResult a = run(args);
    CliResult b = run(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto l = lines(a.out);
    EXPECT_EQ(l[0], "N,mean_infidelity,stderr,protocol,strength");
    EXPECT_EQ(l.back().substr(0, 3), "20,");
}

TEST(Cli, SimulateRejectsNonpositiveCounts) {
    EXPECT_EQ(run({"simulate", "--protocol", "mub", "--n", "0"}).code, kExitUsage);
    EXPECT_EQ(run({"simulate", "--protocol", "mub", "--n", "-5"}).code, kExitUsage);
    EXPECT_EQ(run({"simulate", "--protocol", "mub", "--particles", "10"}).code, kExitUsage);
}

TEST(Cli, BasisDistributionSummary) {
    CliResult r = run({"basis-distribution", "--epsilon", "0.575", "--nodes", "101"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("points: 10201"), std::string::npos);
    EXPECT_NE(r.out.find("uniformity metric: "), std::string::npos);
}

TEST(Cli, BasisDistributionCsv) {
    std::string path = ::testing::TempDir() + "wmtomo_basis.csv";
    CliResult r = run({"basis-distribution", "--epsilon", "1.0", "--nodes", "21", "--output", path});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "nx,ny,nz,weight");
    size_t rows = 0;
    for (std::string l; std::getline(in, l);) ++rows;
    EXPECT_EQ(rows, 441u);
    std::remove(path.c_str());
}

TEST(Cli, PovmCheckVerdicts) {
    CliResult da = run({"povm-check", "--protocol", "das-arvind"});
    ASSERT_EQ(da.code, kExitOk) << da.err;
    EXPECT_NE(da.out.find("validation: pass"), std::string::npos);
    EXPECT_NE(da.out.find("random ODOP: yes"), std::string::npos);
    CliResult tet = run({"povm-check", "--protocol", "tetrahedron"});
    EXPECT_NE(tet.out.find("random ODOP: no (4 unmatched)"), std::string::npos);
    CliResult dst = run({"povm-check", "--protocol", "dst-original", "--phi", "0.89"});
    EXPECT_NE(dst.out.find("random ODOP: yes"), std::string::npos);
}

TEST(Cli, PovmCheckJson) {
    std::string path = ::testing::TempDir() + "wmtomo_mub.json";
    CliResult r = run({"povm-check", "--protocol", "mub", "--json", path});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    wmtomo::DiscretePovm p = wmtomo::povm_from_json(buf.str());
    EXPECT_EQ(p.size(), 6u);
    std::remove(path.c_str());
}

TEST(ParseGrid, Forms) {
    auto g = parse_grid("0.1:0.5:5");
    ASSERT_EQ(g.size(), 5u);
    EXPECT_DOUBLE_EQ(g.front(), 0.1);
    EXPECT_DOUBLE_EQ(g.back(), 0.5);
    EXPECT_NEAR(g[1], 0.2, 1e-15);
    EXPECT_ANY_THROW(parse_grid("0.1:0.5"));
    EXPECT_ANY_THROW(parse_grid("a:b:c"));
    EXPECT_ANY_THROW(parse_grid("0.1:0.5:0"));
}
