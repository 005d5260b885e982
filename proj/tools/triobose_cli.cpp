// Command-line front end. Every figure-style dataset the library can
// produce is reachable from here as CSV or JSON; outputs are byte
// deterministic for identical configurations.
//
// Exit codes: 0 success, 1 partial or solver failure, 2 invalid arguments.

#include "CLI11.hpp"

#include "triobose/exact.hpp"
#include "triobose/io.hpp"
#include "triobose/model.hpp"
#include "triobose/rdm.hpp"
#include "triobose/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using triobose::TrapParams;
namespace io = triobose::io;

struct OutputOptions {
    std::string format = "csv";
    std::string out;
};

void add_output_options(CLI::App* cmd, OutputOptions& opt) {
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opt.out, "Output file (default: stdout)");
}

int emit(const io::Table& table, const nlohmann::ordered_json& config,
         const OutputOptions& opt) {
    const std::string content =
        opt.format == "json" ? io::to_json(table, config) : io::to_csv(table);
    io::write_output(opt.out, content);
    return 0;
}

int fail_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

int fail_run(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 1;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    std::vector<double> x(points);
    for (int i = 0; i < points; ++i)
        x[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    return x;
}

// ---- energy ---------------------------------------------------------------

struct EnergyArgs {
    std::vector<double> g;
    bool exact = false;
    OutputOptions out;
};

int run_energy(const EnergyArgs& a) {
    for (double g : a.g)
        if (!(g > 0.0)) return fail_usage("coupling g must be > 0 (got " + io::format_number(g) + ")");

    io::Table t;
    t.columns = {"g", "energy_harmonic"};
    if (a.exact) {
        t.columns.push_back("energy_exact");
        t.columns.push_back("error");
    }

    bool any_failed = false;
    for (double g : a.g) {
        const TrapParams p{g};
        std::vector<io::Cell> row = {io::Cell::of(g), io::Cell::of(triobose::energy_harmonic(p))};
        if (a.exact) {
            try {
                const auto sol = triobose::exact::solve_exact(p, triobose::exact::GridSpec::for_coupling(p));
                row.push_back(io::Cell::of(sol.energy));
                row.push_back(io::Cell::of(std::string{}));
            } catch (const std::exception& e) {
                row.push_back(io::Cell::none());
                row.push_back(io::Cell::of(std::string(e.what())));
                any_failed = true;
            }
        }
        t.add_row(std::move(row));
    }

    nlohmann::ordered_json config;
    config["command"] = "energy";
    config["format"] = a.out.format;
    config["g"] = a.g;
    config["exact"] = a.exact;
    const int rc = emit(t, config, a.out);
    return rc != 0 ? rc : (any_failed ? 1 : 0);
}

// ---- density --------------------------------------------------------------

struct DensityArgs {
    double g = 0.0;
    std::string source = "approx";
    double grid_min = std::numeric_limits<double>::quiet_NaN();
    double grid_max = std::numeric_limits<double>::quiet_NaN();
    int grid_points = 401;
    OutputOptions out;
};

int run_density(const DensityArgs& a) {
    if (!(a.g > 0.0)) return fail_usage("coupling g must be > 0 (got " + io::format_number(a.g) + ")");
    if (a.grid_points < 2) return fail_usage("--grid-points must be >= 2");

    const TrapParams p{a.g};
    const double x_c = triobose::equilibrium(p).x_c;
    const double lo = std::isnan(a.grid_min) ? -(x_c + 6.0) : a.grid_min;
    const double hi = std::isnan(a.grid_max) ? (x_c + 6.0) : a.grid_max;
    if (!(lo < hi)) return fail_usage("--grid-min must be below --grid-max");
    const std::vector<double> grid = linear_grid(lo, hi, a.grid_points);

    std::vector<double> n;
    try {
        if (a.source == "approx") {
            n = triobose::rdm::density(triobose::rdm::rdm_finite(p), grid).values;
        } else if (a.source == "asymptotic") {
            n = triobose::rdm::density(triobose::rdm::assemble_asymptotic_total(p), grid).values;
        } else {
            const auto sol =
                triobose::exact::solve_exact(p, triobose::exact::GridSpec::for_coupling(p));
            const auto ks = triobose::exact::exact_rdm(sol, grid);
            n.resize(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i)
                n[i] = 3.0 * ks.values[i * grid.size() + i];
        }
    } catch (const std::domain_error& e) {
        return fail_usage(e.what());
    } catch (const std::exception& e) {
        return fail_run(e.what());
    }

    io::Table t;
    t.columns = {"x_osc", "n_osc"};  // oscillator units on both axes
    for (std::size_t i = 0; i < grid.size(); ++i)
        t.add_row({io::Cell::of(grid[i]), io::Cell::of(n[i])});

    nlohmann::ordered_json config;
    config["command"] = "density";
    config["format"] = a.out.format;
    config["g"] = a.g;
    config["source"] = a.source;
    config["grid_min"] = lo;
    config["grid_max"] = hi;
    config["grid_points"] = a.grid_points;
    return emit(t, config, a.out);
}

// ---- occupancies ----------------------------------------------------------

struct OccupancyArgs {
    double g = 0.0;
    bool g_given = false;
    int count = 3;
    std::string source = "approx";
    bool asymptotic = false;
    bool g0_limit = false;
    double quad_l = 0.0;
    int quad_n = 0;
    OutputOptions out;
};

int run_occupancies(const OccupancyArgs& a) {
    if (a.count < 1) return fail_usage("--count must be >= 1");
    const int modes = (a.g_given ? 1 : 0) + (a.asymptotic ? 1 : 0) + (a.g0_limit ? 1 : 0);
    if (modes != 1)
        return fail_usage("choose exactly one of --g, --asymptotic, --g0-limit");
    if ((a.quad_l != 0.0 || a.quad_n != 0) && !a.asymptotic)
        return fail_usage("--quad-L/--quad-n apply to --asymptotic only");

    std::vector<double> lambda;
    try {
        if (a.asymptotic) {
            triobose::spectral::OccupancyReport rep;
            if (a.quad_l != 0.0 || a.quad_n != 0) {
                const double l = a.quad_l != 0.0 ? a.quad_l : 8.0;
                const int n = a.quad_n != 0 ? a.quad_n : 200;
                if (!(l > 0.0) || n < 4) return fail_usage("--quad-L must be > 0 and --quad-n >= 4");
                rep = triobose::spectral::asymptotic_occupancies(
                    a.count, triobose::spectral::build_quadrature(l, n));
            } else {
                rep = triobose::spectral::asymptotic_occupancies(a.count);
            }
            for (const auto& entry : rep.merged) lambda.push_back(entry.value);
        } else if (a.g0_limit) {
            lambda = triobose::exact::g0_limit_occupancies(a.count).lambda1;
        } else {
            if (!(a.g > 0.0))
                return fail_usage("coupling g must be > 0 (got " + io::format_number(a.g) + ")");
            const TrapParams p{a.g};
            if (a.source == "approx") {
                lambda = triobose::spectral::finite_g_occupancies(p, a.count).lambda1;
            } else {
                const auto sol =
                    triobose::exact::solve_exact(p, triobose::exact::GridSpec::for_coupling(p));
                lambda = triobose::exact::exact_occupancies(sol, a.count).lambda1;
            }
        }
    } catch (const std::domain_error& e) {
        return fail_usage(e.what());
    } catch (const std::exception& e) {
        return fail_run(e.what());
    }

    io::Table t;
    t.columns = {"l", "lambda"};
    for (std::size_t l = 0; l < lambda.size(); ++l)
        t.add_row({io::Cell::of(static_cast<double>(l)), io::Cell::of(lambda[l])});

    nlohmann::ordered_json config;
    config["command"] = "occupancies";
    config["format"] = a.out.format;
    config["count"] = a.count;
    if (a.asymptotic) {
        config["mode"] = "asymptotic";
        if (a.quad_l != 0.0) config["quad_L"] = a.quad_l;
        if (a.quad_n != 0) config["quad_n"] = a.quad_n;
    } else if (a.g0_limit) {
        config["mode"] = "g0-limit";
    } else {
        config["g"] = a.g;
        config["source"] = a.source;
    }
    return emit(t, config, a.out);
}

// ---- asymptotic -----------------------------------------------------------

struct AsymptoticArgs {
    int count = 3;
    OutputOptions out;
};

int run_asymptotic(const AsymptoticArgs& a) {
    if (a.count < 1) return fail_usage("--count must be >= 1");
    const auto rep = triobose::spectral::asymptotic_occupancies(a.count);

    io::Table t;
    t.columns = {"name", "value"};
    t.add_row({io::Cell::of(std::string("lambda0_central")), io::Cell::of(rep.lambda1[0])});
    t.add_row({io::Cell::of(std::string("lambda0_side")), io::Cell::of(rep.lambda2[0])});
    t.add_row({io::Cell::of(std::string("residual_mass")),
               io::Cell::of(1.0 - rep.lambda1[0] - 2.0 * rep.lambda2[0])});
    t.add_row({io::Cell::of(std::string("degree_of_correlation")), io::Cell::of(rep.K)});
    t.add_row({io::Cell::of(std::string("linear_entropy")), io::Cell::of(rep.L)});
    t.add_row({io::Cell::of(std::string("conservation_residual")),
               io::Cell::of(rep.conservation_residual)});
    for (std::size_t l = 0; l < rep.merged.size(); ++l)
        t.add_row({io::Cell::of("lambda_" + std::to_string(l)), io::Cell::of(rep.merged[l].value)});

    nlohmann::ordered_json config;
    config["command"] = "asymptotic";
    config["format"] = a.out.format;
    config["count"] = a.count;
    return emit(t, config, a.out);
}

// ---- exact ----------------------------------------------------------------

struct ExactArgs {
    double g = 0.0;
    int count = 3;
    OutputOptions out;
};

int run_exact(const ExactArgs& a) {
    if (!(a.g > 0.0)) return fail_usage("coupling g must be > 0 (got " + io::format_number(a.g) + ")");
    if (a.count < 1) return fail_usage("--count must be >= 1");

    const TrapParams p{a.g};
    io::Table t;
    t.columns = {"name", "value"};
    try {
        const auto sol = triobose::exact::solve_exact(p, triobose::exact::GridSpec::for_coupling(p));
        const auto rep = triobose::exact::exact_occupancies(sol, a.count);
        t.add_row({io::Cell::of(std::string("g")), io::Cell::of(a.g)});
        t.add_row({io::Cell::of(std::string("energy_exact")), io::Cell::of(sol.energy)});
        t.add_row({io::Cell::of(std::string("energy_harmonic")),
                   io::Cell::of(triobose::energy_harmonic(p))});
        t.add_row({io::Cell::of(std::string("degree_of_correlation")), io::Cell::of(rep.K)});
        for (std::size_t l = 0; l < rep.lambda1.size(); ++l)
            t.add_row({io::Cell::of("lambda_" + std::to_string(l)), io::Cell::of(rep.lambda1[l])});
    } catch (const std::exception& e) {
        return fail_run(e.what());
    }

    nlohmann::ordered_json config;
    config["command"] = "exact";
    config["format"] = a.out.format;
    config["g"] = a.g;
    config["count"] = a.count;
    return emit(t, config, a.out);
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
    std::vector<double> g_list;
    OutputOptions out;
};

int run_sweep(const SweepArgs& a) {
    const auto rows = triobose::exact::sweep(a.g_list);

    io::Table t;
    t.columns = {"g",        "energy_exact", "energy_harmonic", "k_exact", "k_approx",
                 "lambda_0", "lambda_1",     "lambda_2",        "error"};
    bool any_failed = false;
    for (const auto& row : rows) {
        std::vector<io::Cell> cells;
        cells.push_back(io::Cell::of(row.g));
        if (row.error.empty()) {
            cells.push_back(io::Cell::of(row.energy_exact));
            cells.push_back(io::Cell::of(row.energy_harmonic));
            cells.push_back(io::Cell::of(row.k_exact));
            cells.push_back(io::Cell::of(row.k_approx));
            for (int l = 0; l < 3; ++l)
                cells.push_back(l < static_cast<int>(row.occupancies.size())
                                    ? io::Cell::of(row.occupancies[l])
                                    : io::Cell::none());
            cells.push_back(io::Cell::of(std::string{}));
        } else {
            any_failed = true;
            for (int i = 0; i < 7; ++i) cells.push_back(io::Cell::none());
            cells.push_back(io::Cell::of(row.error));
        }
        t.add_row(std::move(cells));
    }

    nlohmann::ordered_json config;
    config["command"] = "sweep";
    config["format"] = a.out.format;
    config["g_list"] = a.g_list;
    const int rc = emit(t, config, a.out);
    return rc != 0 ? rc : (any_failed ? 1 : 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Ground-state structure of three trapped charged bosons: harmonic-approximation "
        "and exact observables as CSV/JSON tables.\n"
        "Environment: TRIOBOSE_THREADS caps sweep workers (0 = auto)."};
    app.require_subcommand(1);

    EnergyArgs energy;
    CLI::App* cmd_energy = app.add_subcommand(
        "energy", "Ground-state energies; columns: g,energy_harmonic[,energy_exact,error]");
    cmd_energy->add_option("--g", energy.g, "Coupling(s), comma separated")
        ->required()
        ->delimiter(',');
    cmd_energy->add_flag("--exact", energy.exact, "Also run the grid solver per coupling");
    add_output_options(cmd_energy, energy.out);

    DensityArgs density;
    CLI::App* cmd_density =
        app.add_subcommand("density", "One-particle density n(x); columns: x_osc,n_osc");
    cmd_density->add_option("--g", density.g, "Coupling")->required();
    cmd_density->add_option("--source", density.source, "Density source")
        ->check(CLI::IsMember({"approx", "asymptotic", "exact"}))
        ->capture_default_str();
    cmd_density->add_option("--grid-min", density.grid_min, "Grid start (default -(x_c+6))");
    cmd_density->add_option("--grid-max", density.grid_max, "Grid end (default +(x_c+6))");
    cmd_density->add_option("--grid-points", density.grid_points, "Grid size")
        ->capture_default_str();
    add_output_options(cmd_density, density.out);

    OccupancyArgs occ;
    CLI::App* cmd_occ = app.add_subcommand(
        "occupancies", "Natural-orbital occupancies, descending; columns: l,lambda");
    CLI::Option* occ_g = cmd_occ->add_option("--g", occ.g, "Coupling (with --source)");
    cmd_occ->add_option("--count", occ.count, "Occupancies to emit")->capture_default_str();
    cmd_occ->add_option("--source", occ.source, "Kernel for finite coupling")
        ->check(CLI::IsMember({"approx", "exact"}))
        ->capture_default_str();
    cmd_occ->add_flag("--asymptotic", occ.asymptotic, "Strong-coupling limit (merged families)");
    cmd_occ->add_flag("--g0-limit", occ.g0_limit, "Zero-coupling limit");
    cmd_occ->add_option("--quad-L", occ.quad_l, "Quadrature half-width (asymptotic mode)");
    cmd_occ->add_option("--quad-n", occ.quad_n, "Quadrature node count (asymptotic mode)");
    add_output_options(cmd_occ, occ.out);

    AsymptoticArgs asym;
    CLI::App* cmd_asym = app.add_subcommand(
        "asymptotic", "Strong-coupling summary scalars; columns: name,value");
    cmd_asym->add_option("--count", asym.count, "Merged occupancies to include")
        ->capture_default_str();
    add_output_options(cmd_asym, asym.out);

    ExactArgs exact;
    CLI::App* cmd_exact = app.add_subcommand(
        "exact", "Grid-solver summary for one coupling; columns: name,value");
    cmd_exact->add_option("--g", exact.g, "Coupling")->required();
    cmd_exact->add_option("--count", exact.count, "Occupancies to include")->capture_default_str();
    add_output_options(cmd_exact, exact.out);

    SweepArgs sweep;
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep",
        "Per-coupling summary rows (parallel workers); columns: "
        "g,energy_exact,energy_harmonic,k_exact,k_approx,lambda_0,lambda_1,lambda_2,error");
    cmd_sweep->add_option("--g-list", sweep.g_list, "Couplings, comma separated")
        ->required()
        ->delimiter(',');
    add_output_options(cmd_sweep, sweep.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    occ.g_given = occ_g->count() > 0;

    try {
        if (cmd_energy->parsed()) return run_energy(energy);
        if (cmd_density->parsed()) return run_density(density);
        if (cmd_occ->parsed()) return run_occupancies(occ);
        if (cmd_asym->parsed()) return run_asymptotic(asym);
        if (cmd_exact->parsed()) return run_exact(exact);
        if (cmd_sweep->parsed()) return run_sweep(sweep);
    } catch (const std::invalid_argument& e) {
        return fail_usage(e.what());
    } catch (const std::domain_error& e) {
        return fail_usage(e.what());
    } catch (const std::exception& e) {
        return fail_run(e.what());
    }
    return 2;
}
