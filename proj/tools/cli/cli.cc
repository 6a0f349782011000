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

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wmtomo::cli {

namespace {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string &path, std::ostream &fallback, Fn &&write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot open output file '" + path + "'");
    }
    write(file);
    if (!file) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

double default_strength(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::kDstOriginal:
            return 0.89;
        case ProtocolKind::kDstAugmentedEqual:
        case ProtocolKind::kDstAugmentedHalfZ:
            return 1.25;
        case ProtocolKind::kDasArvind:
            return 0.575;
        default:
            return 0.0;
    }
}

std::string default_grid(ProtocolKind kind) {
    return kind == ProtocolKind::kDasArvind ? "0.1:1.0:20" : "0.05:1.5:30";
}

struct CommonProtocol {
    std::string protocol;
    std::optional<double> strength;
    size_t da_nodes = 41;
    size_t haar_bases = 10000;
    uint64_t seed = 0;

    ProtocolSpec spec() const {
        ProtocolSpec s;
        s.kind = parse_protocol(protocol);
        s.strength = strength.value_or(default_strength(s.kind));
        s.da_nodes = da_nodes;
        s.haar_bases = haar_bases;
        s.haar_seed = seed;
        return s;
    }
};

void add_protocol_options(CLI::App *cmd, CommonProtocol &p, bool with_seed) {
    cmd->add_option("--protocol", p.protocol,
                    "dst-original | dst-augmented-equal | dst-augmented-half-z | das-arvind | mub | "
                    "haar-odop | tetrahedron")
        ->required();
    cmd->add_option("--strength,--phi,--epsilon", p.strength, "phi_c for DST, epsilon for das-arvind");
    cmd->add_option("--da-nodes", p.da_nodes, "quadrature nodes per meter axis for das-arvind")
        ->check(CLI::Range(size_t{2}, size_t{100000}));
    cmd->add_option("--haar-bases", p.haar_bases, "sampled bases for a fixed haar-odop POVM");
    if (with_seed) {
        cmd->add_option("--seed", p.seed, "64-bit seed");
    }
}

}  // namespace

std::vector<double> parse_grid(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) {
        throw UsageError("grid must look like a:b:n, got '" + text + "'");
    }
    double a = 0.0, b = 0.0;
    long n = 0;
    try {
        size_t pos = 0;
        a = std::stod(parts[0], &pos);
        if (pos != parts[0].size()) throw std::invalid_argument("a");
        b = std::stod(parts[1], &pos);
        if (pos != parts[1].size()) throw std::invalid_argument("b");
        n = std::stol(parts[2], &pos);
        if (pos != parts[2].size()) throw std::invalid_argument("n");
    } catch (const std::exception &) {
        throw UsageError("grid must look like a:b:n, got '" + text + "'");
    }
    if (n < 1) {
        throw UsageError("grid needs at least one point");
    }
    std::vector<double> out;
    for (long i = 0; i < n; ++i) {
        out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
}

void write_crb_csv(std::ostream &os, const std::vector<CrbPoint> &points) {
    os << kCrbHeader << '\n';
    for (const auto &p : points) {
        os << num(p.strength) << ',' << num(p.c_value) << ',' << (p.divergent ? 1 : 0) << '\n';
    }
}

void write_curve_csv(std::ostream &os, const ExperimentCurve &curve, std::string_view protocol, double strength) {
    os << kCurveHeader << '\n';
    for (const auto &p : curve.points) {
        os << p.n << ',' << num(p.mean_infidelity) << ',' << num(p.stderr_infidelity) << ',' << protocol << ','
           << num(strength) << '\n';
    }
}

void write_basis_csv(std::ostream &os, const std::vector<WeightedPoint> &points) {
    os << kBasisHeader << '\n';
    for (const auto &p : points) {
        os << num(p.n.x()) << ',' << num(p.n.y()) << ',' << num(p.n.z()) << ',' << num(p.weight) << '\n';
    }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Weak-measurement tomography workbench", "wmtomo"};
    app.require_subcommand(1);

    // crb-scan
    CommonProtocol crb_p;
    std::string crb_grid;
    size_t n_theta = 64, n_phi = 128;
    bool allow_divergent = false;
    std::string crb_output;
    auto *crb_cmd = app.add_subcommand("crb-scan", "Cramer-Rao constant C versus strength");
    add_protocol_options(crb_cmd, crb_p, true);
    crb_cmd->add_option("--grid", crb_grid, "strength grid a:b:n");
    crb_cmd->add_option("--n-theta", n_theta, "Gauss-Legendre nodes in cos(theta)")->check(CLI::Range(2, 100000));
    crb_cmd->add_option("--n-phi", n_phi, "midpoint nodes in phi_az")->check(CLI::Range(1, 100000));
    crb_cmd->add_flag("--allow-divergent", allow_divergent, "exit 0 even if some C diverges");
    crb_cmd->add_option("--output,-o", crb_output, "CSV path (default stdout)");

    // simulate
    CommonProtocol sim_p;
    ExperimentPlan plan;
    std::string sim_output;
    auto *sim_cmd = app.add_subcommand("simulate", "Monte Carlo average infidelity versus N");
    add_protocol_options(sim_cmd, sim_p, true);
    sim_cmd->add_option("--n", plan.n_copies, "copies per trial")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--trials", plan.n_trials, "trials")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--particles", plan.n_particles, "SMC particles")->check(CLI::Range(size_t{100}, size_t{1} << 30));
    sim_cmd->add_option("--threads", plan.threads, "worker threads (default WMTOMO_THREADS or all cores)");
    sim_cmd->add_option("--output,-o", sim_output, "CSV path (default stdout)");

    // basis-distribution
    DaConfig basis_cfg;
    basis_cfg.nodes = 401;
    std::string basis_output;
    auto *basis_cmd = app.add_subcommand("basis-distribution", "Effective das-arvind measurement-basis distribution");
    basis_cmd->add_option("--epsilon", basis_cfg.epsilon, "coupling epsilon")->check(CLI::PositiveNumber);
    basis_cmd->add_option("--nodes", basis_cfg.nodes, "nodes per meter axis")->check(CLI::Range(size_t{2}, size_t{100000}));
    basis_cmd->add_option("--output,-o", basis_output, "CSV path (default: no CSV)");

    // povm-check
    CommonProtocol check_p;
    std::string json_output;
    auto *check_cmd = app.add_subcommand("povm-check", "Validate a protocol POVM and test random-ODOP form");
    add_protocol_options(check_cmd, check_p, true);
    check_cmd->add_option("--json", json_output, "also write the POVM as JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (crb_cmd->parsed()) {
            ProtocolSpec spec = crb_p.spec();
            SphereQuadrature quad{n_theta, n_phi};
            std::vector<CrbPoint> points;
            std::optional<size_t> argmin;
            if (has_strength(spec.kind) && !crb_p.strength) {
                std::vector<double> grid = parse_grid(crb_grid.empty() ? default_grid(spec.kind) : crb_grid);
                CrbScan scan = scan_crb(spec, grid, quad);
                points = scan.points;
                argmin = scan.argmin;
            } else {
                if (!crb_grid.empty()) {
                    throw UsageError("--grid and --strength are exclusive; --grid needs a protocol with a strength");
                }
                CrbResult r = crb(spec, quad);
                points.push_back({spec.strength, r.c_value, r.divergent});
                if (!r.divergent) argmin = 0;
                if (r.divergent) err << "divergent: " << r.reason << '\n';
            }
            emit(crb_output, out, [&](std::ostream &os) { write_crb_csv(os, points); });
            std::ostream &log = crb_output.empty() ? err : out;
            if (argmin) {
                log << "argmin strength=" << num(points[*argmin].strength) << " C=" << num(points[*argmin].c_value)
                    << '\n';
            } else {
                log << "argmin: none (all points divergent)\n";
            }
            bool any_divergent = std::any_of(points.begin(), points.end(), [](const CrbPoint &p) { return p.divergent; });
            if (any_divergent && !allow_divergent) {
                err << "error: divergent C (pass --allow-divergent to accept)\n";
                return kExitNumerical;
            }
            return kExitOk;
        }
        if (sim_cmd->parsed()) {
            plan.protocol = sim_p.spec();
            plan.seed = sim_p.seed;
            ExperimentCurve curve = run_experiment(plan);
            double strength = has_strength(plan.protocol.kind) ? plan.protocol.strength : 0.0;
            emit(sim_output, out, [&](std::ostream &os) {
                write_curve_csv(os, curve, protocol_name(plan.protocol.kind), strength);
            });
            return kExitOk;
        }
        if (basis_cmd->parsed()) {
            std::vector<WeightedPoint> points = basis_distribution(basis_cfg);
            if (!basis_output.empty()) {
                emit(basis_output, out, [&](std::ostream &os) { write_basis_csv(os, points); });
            }
            double total = 0.0;
            for (const auto &p : points) total += p.weight;
            out << "points: " << points.size() << '\n';
            out << "total weight: " << num(total) << '\n';
            out << "uniformity metric: " << num(uniformity_metric(points)) << '\n';
            return kExitOk;
        }
        if (check_cmd->parsed()) {
            ProtocolSpec spec = check_p.spec();
            DiscretePovm povm = make_povm(spec);
            double tol = spec.kind == ProtocolKind::kDasArvind ? kTolerances.quadrature_completeness
                                                                : kTolerances.completeness;
            ValidationReport report = validate(povm, tol);
            out << "protocol: " << protocol_name(spec.kind) << '\n';
            if (has_strength(spec.kind)) out << "strength: " << num(spec.strength) << '\n';
            out << "elements: " << povm.size() << '\n';
            out << "completeness deficit: " << num(report.completeness_deficit) << '\n';
            out << "max positivity violation: " << num(report.max_positivity_violation) << '\n';
            out << "validation: " << (report.passed ? "pass" : "fail") << '\n';
            try {
                OdopResult odop = random_odop_decomposition(povm);
                if (odop.success) {
                    out << "random ODOP: yes (" << odop.decomposition.pairs.size() << " pairs)\n";
                } else {
                    out << "random ODOP: no (" << odop.unmatched.size() << " unmatched)\n";
                }
            } catch (const NotRankOneError &) {
                out << "random ODOP: no (rank-2 element)\n";
            }
            if (!json_output.empty()) {
                emit(json_output, out, [&](std::ostream &os) { os << povm_to_json(povm) << '\n'; });
            }
            return report.passed ? kExitOk : kExitNumerical;
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError &e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace wmtomo::cli
