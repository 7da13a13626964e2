// Command-line harness: identity verification, evolution experiments,
// deformation sweeps, and blade-engine vs dense-oracle comparison.
// Exit codes: 0 pass, 1 check/constraint failure, 2 usage or parse error.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fermionic/fermionic.hpp"

namespace {

using namespace fermionic;

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Metric load_metric(int dim, const std::string& source) {
    if (source == "identity") return Metric::identity(dim);
    std::ifstream in(source);
    if (!in) throw InvalidParameter("cannot open metric file: " + source);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    if (values.size() != static_cast<std::size_t>(dim) * dim)
        throw InvalidParameter("metric file must hold exactly dim*dim values");
    Mat g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = values[static_cast<std::size_t>(i) * dim + j];
    return Metric(g);
}

int run_check_identities(int dim, const std::string& metric_source, int trials,
                         std::uint64_t seed, double tol) {
    const Metric m = load_metric(dim, metric_source);
    const auto report = run_identity_suite(m, trials, seed);

    std::printf("identity suite  dim=%d metric=%s trials=%d seed=%llu tol=%g\n", dim,
                metric_source.c_str(), trials, static_cast<unsigned long long>(seed), tol);
    bool ok = true;
    for (const auto& row : report) {
        const bool pass = row.value <= tol;
        ok = ok && pass;
        std::printf("%-36s %11.3e  %s\n", row.name.c_str(), row.value, pass ? "PASS" : "FAIL");
    }
    std::printf("RESULT %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError(0, "cannot open config file: " + path);
    return parse_config(in);
}

std::vector<std::uint32_t> blade_columns(const ObservableTrajectory& traj) {
    std::vector<std::uint32_t> masks;
    for (const auto& [t, a] : traj)
        for (const auto& [mask, c] : a.terms()) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    return masks;
}

void write_trajectory_csv(const std::string& path, const ObservableTrajectory& traj,
                          const Metric& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot open output file: " + path);
    const auto columns = blade_columns(traj);
    out << "t";
    for (auto mask : columns) out << "," << Blade(mask).label();
    out << ",norm,i,int\n";
    for (const auto& [t, a] : traj) {
        out << g17(t);
        for (auto mask : columns) out << "," << g17(a.coeff(mask));
        const auto [scalar, integral] = distinguished_functionals(a, m);
        out << "," << g17(std::sqrt(std::max(0.0, extended_inner(a, a, m))));
        out << "," << g17(scalar) << "," << g17(integral) << "\n";
    }
}

int run_evolve(const std::string& config_path, const std::string& out_path) {
    const ExperimentConfig cfg = parse_config_file(config_path);
    const EvolutionSpec spec = to_evolution_spec(cfg);
    const ObservableTrajectory traj = evolve_observable(spec);
    write_trajectory_csv(out_path, traj, spec.metric);
    return 0;
}

int run_deform(const std::string& config_path, const std::string& hbars_csv,
               const std::string& out_path) {
    const ExperimentConfig cfg = parse_config_file(config_path);
    if (cfg.observables.size() < 2)
        throw ConfigParseError(0, "deform requires two observable blocks");
    const Metric m = cfg.metric();
    const Multivector a = cfg.observable_multivector(0);
    const Multivector b = cfg.observable_multivector(1);

    std::vector<double> hbars;
    std::stringstream ss(hbars_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double h = std::stod(item, &used);
            if (used != item.size() || h < 0.0) throw std::invalid_argument(item);
            hbars.push_back(h);
        } catch (const std::exception&) {
            throw InvalidParameter("bad hbar value '" + item + "'");
        }
    }
    if (hbars.empty()) throw InvalidParameter("empty hbar list");

    const Multivector wedge_ab = wedge(a, b);
    const Multivector half_bracket = 0.5 * casalbuoni_bracket(a, b, m);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot open output file: " + out_path);
    out << "hbar,residual_wedge,residual_first_order\n";
    for (double h : hbars) {
        const Multivector ab = clifford_product(a, b, m, DeformationParameter(h));
        const double r_wedge = (ab - wedge_ab).inf_norm();
        const double r_first = (ab - wedge_ab - h * half_bracket).inf_norm();
        out << g17(h) << "," << g17(r_wedge) << "," << g17(r_first) << "\n";
    }
    return 0;
}

struct SweepWorst {
    double deviation = 0.0;
    std::string description;
};

void track_worst(SweepWorst& w, double dev, const std::string& kind, std::uint32_t ma,
                 std::uint32_t mb, const std::string& metric_name) {
    if (dev > w.deviation) {
        w.deviation = dev;
        w.description = kind + "(" + Blade(ma).label() + ", " + Blade(mb).label() + ") under " +
                        metric_name + " metric";
    }
}

int run_oracle_compare(int dim, std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<std::pair<std::string, Metric>> metrics = {
        {"identity", Metric::identity(dim)},
        {"random-spd", random_spd_metric(dim, rng)},
    };
    constexpr double kTol = 1e-10;
    SweepWorst worst;

    for (const auto& [metric_name, m] : metrics) {
        for (std::uint32_t ma = 0; ma < (1u << dim); ++ma) {
            const Multivector a = [&] {
                Multivector v(dim);
                v.add_term(ma, 1.0);
                return v;
            }();
            const int pa = std::popcount(ma);
            const auto da = oracle::to_dense(a, pa);
            for (std::uint32_t mb = 0; mb < (1u << dim); ++mb) {
                Multivector b(dim);
                b.add_term(mb, 1.0);
                const int pb = std::popcount(mb);
                const auto db = oracle::to_dense(b, pb);

                // wedge
                {
                    const Multivector engine = wedge(a, b);
                    if (pa + pb > dim) {
                        track_worst(worst, engine.inf_norm(), "wedge", ma, mb, metric_name);
                    } else {
                        const double dev =
                            max_abs_diff(engine, oracle::from_dense(oracle::oracle_wedge(da, db)));
                        track_worst(worst, dev, "wedge", ma, mb, metric_name);
                    }
                }
                // bracket
                {
                    const Multivector engine = casalbuoni_bracket(a, b, m);
                    if (pa + pb - 2 > dim) {
                        track_worst(worst, engine.inf_norm(), "bracket", ma, mb, metric_name);
                    } else {
                        const double dev = max_abs_diff(
                            engine, oracle::from_dense(oracle::oracle_bracket(da, db, m)));
                        track_worst(worst, dev, "bracket", ma, mb, metric_name);
                    }
                }
                // clifford
                {
                    const double dev =
                        max_abs_diff(clifford_product(a, b, m, DeformationParameter(1.0)),
                                     oracle::oracle_clifford(da, db, m, 1.0));
                    track_worst(worst, dev, "clifford", ma, mb, metric_name);
                }
                // inner
                {
                    const double dev = std::abs(extended_inner(a, b, m) -
                                                oracle::oracle_inner(da, db, m));
                    track_worst(worst, dev, "inner", ma, mb, metric_name);
                }
            }
        }
    }

    std::printf("oracle compare  dim=%d seed=%llu pairs=%u kinds=4 metrics=2\n", dim,
                static_cast<unsigned long long>(seed), (1u << dim) * (1u << dim));
    std::printf("max deviation %11.3e at %s\n", worst.deviation,
                worst.description.empty() ? "-" : worst.description.c_str());
    const bool ok = worst.deviation <= kTol;
    std::printf("RESULT %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical engine for pseudo-classical fermionic mechanics"};
    app.require_subcommand(1);

    int dim = 4;
    std::string metric_source = "identity";
    int trials = 200;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    auto* check = app.add_subcommand("check-identities", "run the algebraic identity suites");
    check->add_option("--dim", dim, "phase-space dimension")->required()->check(CLI::Range(1, 6));
    check->add_option("--metric", metric_source, "identity or a gram matrix file");
    check->add_option("--trials", trials, "random trials")->check(CLI::PositiveNumber);
    check->add_option("--seed", seed, "rng seed");
    check->add_option("--tol", tol, "residual tolerance")->check(CLI::PositiveNumber);

    std::string config_path, out_path;
    auto* evolve = app.add_subcommand("evolve", "integrate an observable and write a CSV trajectory");
    evolve->add_option("config", config_path, "experiment config file")->required();
    evolve->add_option("out", out_path, "output CSV path")->required();

    std::string deform_config, deform_out, hbars = "0,0.5,1";
    auto* deform = app.add_subcommand("deform", "deformation residual sweep over hbar");
    deform->add_option("config", deform_config, "config with two observable blocks")->required();
    deform->add_option("out", deform_out, "output CSV path")->required();
    deform->add_option("--hbars", hbars, "comma-separated nonnegative hbar values");

    int cmp_dim = 3;
    std::uint64_t cmp_seed = 1;
    auto* cmp = app.add_subcommand("oracle-compare", "exhaustive blade-engine vs dense-oracle sweep");
    cmp->add_option("--dim", cmp_dim, "dimension (oracle cap 6)")->required()->check(CLI::Range(1, 6));
    cmp->add_option("--seed", cmp_seed, "rng seed for the random SPD metric");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (check->parsed()) return run_check_identities(dim, metric_source, trials, seed, tol);
        if (evolve->parsed()) return run_evolve(config_path, out_path);
        if (deform->parsed()) return run_deform(deform_config, hbars, deform_out);
        if (cmp->parsed()) return run_oracle_compare(cmp_dim, cmp_seed);
    } catch (const ConfigParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        // constraint violations: NotAntiHermitian, ModeMismatch, dimension errors, ...
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
