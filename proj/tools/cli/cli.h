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

#ifndef WMTOMO_TOOLS_CLI_H
#define WMTOMO_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

#include "wmtomo/dasarvind.h"
#include "wmtomo/estimate.h"
#include "wmtomo/fisher.h"

namespace wmtomo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// `args` excludes the program name. Subcommands: crb-scan, simulate,
/// basis-distribution, povm-check.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "a:b:n" -> n evenly spaced values from a to b inclusive (n = 1 gives {a}).
std::vector<double> parse_grid(const std::string &text);

// CSV contracts. Headers are stable; values use 17 significant digits.
inline constexpr const char *kCrbHeader = "strength,C,divergent";
inline constexpr const char *kCurveHeader = "N,mean_infidelity,stderr,protocol,strength";
inline constexpr const char *kBasisHeader = "nx,ny,nz,weight";

void write_crb_csv(std::ostream &os, const std::vector<CrbPoint> &points);
void write_curve_csv(std::ostream &os, const ExperimentCurve &curve, std::string_view protocol, double strength);
void write_basis_csv(std::ostream &os, const std::vector<WeightedPoint> &points);

}  // namespace wmtomo::cli

#endif
