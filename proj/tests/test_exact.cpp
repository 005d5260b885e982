#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "triobose/exact.hpp"
#include "triobose/model.hpp"
#include "triobose/rdm.hpp"
#include "triobose/wavefunction.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

using namespace triobose;

namespace {

// One grid solve per coupling for the whole binary; solves are deterministic
// so sharing them across cases changes nothing but the runtime.
const exact::ExactSolution& solved(double g) {
    static std::map<double, exact::ExactSolution> cache;
    auto it = cache.find(g);
    if (it == cache.end()) {
        const TrapParams p{g};
        it = cache.emplace(g, exact::solve_exact(p, exact::GridSpec::for_coupling(p))).first;
    }
    return it->second;
}

std::vector<double> symmetric_grid(double lim, int points) {
    std::vector<double> x(points);
    for (int i = 0; i < points; ++i) x[i] = -lim + 2.0 * lim * i / (points - 1);
    return x;
}

std::vector<double> density_on(const exact::KernelSamples& ks) {
    const std::size_t n = ks.grid.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = 3.0 * ks.values[i * n + i];
    return d;
}

}  // namespace

TEST_CASE("solver rejects unusable grids and couplings") {
    const TrapParams p{20.0};
    const double min_width = equilibrium(p).x_c * std::sqrt(2.0) + 6.0;
    CHECK_THROWS_AS(exact::solve_exact(p, {min_width + 2.0, 32}), std::invalid_argument);
    CHECK_THROWS_AS(exact::solve_exact(p, {min_width - 1.0, 512}), std::invalid_argument);
    CHECK_THROWS_AS(exact::solve_exact({0.0}, {10.0, 128}), std::domain_error);
    CHECK_THROWS_AS(exact::solve_exact({-3.0}, {10.0, 128}), std::domain_error);

    const exact::GridSpec spec = exact::GridSpec::for_coupling(p);
    CHECK_THROWS_AS(exact::energy_functional(p, spec, std::vector<double>(7, 1.0)),
                    std::invalid_argument);
    const std::vector<double> zeros(static_cast<std::size_t>(spec.points_per_axis) *
                                    spec.points_per_axis);
    CHECK_THROWS_AS(exact::energy_functional(p, spec, zeros), std::invalid_argument);
}

TEST_CASE("small-coupling energies extrapolate to the free-fermion value") {
    const std::vector<double> gs = {0.05, 0.02, 0.01};
    const std::vector<double> frozen = {4.604071223, 4.535543240, 4.512657907};
    std::vector<double> es;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        es.push_back(solved(gs[i]).energy);
        CHECK(es[i] == doctest::Approx(frozen[i]).epsilon(1e-6));
    }

    // least-squares line through (g, E); the intercept is the g -> 0 limit
    double sg = 0, se = 0, sgg = 0, sge = 0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        sg += gs[i];
        se += es[i];
        sgg += gs[i] * gs[i];
        sge += gs[i] * es[i];
    }
    const double n = static_cast<double>(gs.size());
    const double slope = (n * sge - sg * se) / (n * sgg - sg * sg);
    const double intercept = (se - slope * sg) / n;
    MESSAGE("extrapolated g->0 energy: " << intercept);
    CHECK(intercept == doctest::Approx(4.5).epsilon(0.05 / 4.5));
    CHECK(intercept == doctest::Approx(4.4898).epsilon(1.5e-3 / 4.4898));
}

TEST_CASE("exact energy sits above the harmonic estimate") {
    for (double g : {5.0, 20.0, 100.0}) {
        const double ex = solved(g).energy;
        const double harm = energy_harmonic({g});
        CHECK(ex > harm);
    }
    const double ex20 = solved(20.0).energy;
    const double harm20 = energy_harmonic({20.0});
    CHECK((ex20 - harm20) / ex20 < 0.01);
}

TEST_CASE("grid refinement settles the energy at second order") {
    const TrapParams p{20.0};
    const double w = exact::GridSpec::for_coupling(p).half_width;
    const double e256 = exact::solve_exact(p, {w, 256}).energy;
    const double e384 = exact::solve_exact(p, {w, 384}).energy;
    const double e512 = solved(20.0).energy;

    CHECK(std::abs(e384 - e256) / std::abs(e384) < 1e-3);

    // two independent h^2 Richardson limits must agree if the stencil
    // converges at second order
    const double rich_a = e384 + (e384 - e256) / ((384.0 / 256.0) * (384.0 / 256.0) - 1.0);
    const double rich_b = e512 + (e512 - e384) / ((512.0 / 384.0) * (512.0 / 384.0) - 1.0);
    MESSAGE("Richardson-extrapolated energy at g=20: " << rich_b);
    CHECK(std::abs(rich_a - rich_b) < 5e-5);
    CHECK(std::abs(rich_b - e512) < 5e-4);
}

TEST_CASE("stored field is normalized, positive, and realizes the minimum") {
    const double g = 20.0;
    const exact::ExactSolution& sol = solved(g);
    const int n = sol.grid.points_per_axis;
    const double h = sol.grid.half_width / n;

    double sum_sq = 0.0, min_v = 0.0;
    for (double v : sol.psi_rel) {
        sum_sq += v * v;
        min_v = std::min(min_v, v);
    }
    CHECK(6.0 * sum_sq * h * h == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_v == 0.0);

    double edge = 0.0, bulk = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = sol.psi_rel[static_cast<std::size_t>(i) * n + j];
            bulk = std::max(bulk, v);
            if (i == n - 1 || j == n - 1) edge = std::max(edge, v);
        }
    CHECK(edge <= 1e-6 * bulk);

    const TrapParams p{g};
    const double base = exact::energy_functional(p, sol.grid, sol.psi_rel);
    CHECK(base == doctest::Approx(sol.energy).epsilon(1e-8));

    std::vector<double> scaled = sol.psi_rel;
    for (double& v : scaled) v *= 2.5;
    CHECK(exact::energy_functional(p, sol.grid, scaled) ==
          doctest::Approx(base).epsilon(1e-10));

    std::vector<double> bent = sol.psi_rel;
    for (std::size_t i = 0; i < bent.size(); ++i)
        bent[i] *= 1.0 + 0.02 * std::sin(3.0 * static_cast<double>(i));
    CHECK(exact::energy_functional(p, sol.grid, bent) > base + 1e-7);
}

TEST_CASE("bosonic evaluator is symmetric, normalized, and vanishes with the state") {
    const double g = 20.0;
    const exact::ExactSolution& sol = solved(g);
    const double x_c = equilibrium({g}).x_c;

    const double pts[3][3] = {{-2.5, 0.3, 2.8}, {-3.1, -0.4, 2.2}, {0.1, 1.4, -2.0}};
    for (const auto& q : pts) {
        const double ref = exact::evaluate_bosonic(sol, q[0], q[1], q[2]);
        int order[3] = {0, 1, 2};
        do {
            const double v = exact::evaluate_bosonic(sol, q[order[0]], q[order[1]], q[order[2]]);
            CHECK(v == doctest::Approx(ref).epsilon(1e-12));
        } while (std::next_permutation(order, order + 3));
    }

    const double peak = exact::evaluate_bosonic(sol, -x_c, 0.0, x_c);
    CHECK(peak == doctest::Approx(0.246117).epsilon(1e-3));
    CHECK(std::abs(exact::evaluate_bosonic(sol, 0.8, 0.8, 3.0)) < 1e-5 * peak);
    CHECK(std::abs(exact::evaluate_bosonic(sol, -1.3, 2.0, 2.0)) < 1e-5 * peak);
    CHECK(exact::evaluate_bosonic(sol, 15.0, 0.0, -15.0) == 0.0);

    const double lim = x_c + 5.0;
    const auto density3 = [&sol](const Eigen::VectorXd& x) {
        const double v = exact::evaluate_bosonic(sol, x[0], x[1], x[2]);
        return v * v;
    };
    const Eigen::Vector3d lo(-lim, -lim, -lim), hi(lim, lim, lim);
    const double norm3 = oracle::integrate_box(density3, lo, hi, 48);
    CHECK(norm3 == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("evaluator approaches the displaced-Gaussian ansatz at strong coupling") {
    const double g = 200.0;
    const exact::ExactSolution& sol = solved(g);
    const wavefunction::SymmetrizedState ansatz = wavefunction::symmetrize({g});
    const double x_c = equilibrium({g}).x_c;

    const Eigen::Vector3d classical(-x_c, 0.0, x_c);
    const double ex0 = exact::evaluate_bosonic(sol, classical[0], classical[1], classical[2]);
    CHECK(std::abs(ex0 - ansatz.value(classical)) / ex0 < 5e-3);

    const double pts[4][3] = {{-x_c - 0.4, 0.1, x_c + 0.2},
                              {-x_c + 0.3, -0.25, x_c - 0.1},
                              {-x_c, 0.5, x_c + 0.5},
                              {-x_c - 0.2, -0.4, x_c - 0.3}};
    for (const auto& q : pts) {
        const double ex = exact::evaluate_bosonic(sol, q[0], q[1], q[2]);
        const double ap = ansatz.value(Eigen::Vector3d(q[0], q[1], q[2]));
        CHECK(std::abs(ex - ap) / std::abs(ex) < 0.08);
    }
}

TEST_CASE("projected kernel has unit trace and mirrors its arguments") {
    const exact::ExactSolution& sol = solved(200.0);
    const exact::OrbitalKernel k = exact::project_rdm(sol);
    CHECK(k.m_orbitals == 76);
    CHECK(std::abs(k.trace() - 1.0) < 1e-4);

    const double pairs[4][2] = {{0.3, 5.9}, {-6.1, 6.4}, {-0.2, 0.7}, {2.0, -6.6}};
    for (const auto& q : pairs) {
        CHECK(k(q[0], q[1]) == doctest::Approx(k(q[1], q[0])).epsilon(1e-12));
    }
    for (double x : {-6.3, -3.0, 0.0, 3.0, 6.3}) CHECK(k(x, x) >= 0.0);
}

TEST_CASE("sampled kernel reproduces the density structure of the strong trap") {
    CHECK_THROWS_AS(exact::exact_rdm(solved(20.0), {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(exact::exact_rdm(solved(20.0), {1.0, 1.0, 2.0}), std::invalid_argument);

    const double g = 200.0;
    const exact::ExactSolution& sol = solved(g);
    const double x_c = equilibrium({g}).x_c;
    const std::vector<double> grid = symmetric_grid(x_c + 6.0, 601);
    const exact::KernelSamples ks = exact::exact_rdm(sol, grid);
    const std::size_t n = grid.size();

    for (std::size_t i = 0; i < n; i += 47)
        for (std::size_t j = i; j < n; j += 61)
            CHECK(ks.values[i * n + j] == doctest::Approx(ks.values[j * n + i]).epsilon(1e-12));

    const std::vector<double> dens = density_on(ks);
    double mirror = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        mirror = std::max(mirror, std::abs(dens[i] - dens[n - 1 - i]));
    MESSAGE("density mirror asymmetry at g=200: " << mirror);
    CHECK(mirror < 1e-4);

    // the three local maxima sit near -x_c, 0, +x_c
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (dens[i] > dens[i - 1] && dens[i] > dens[i + 1] && dens[i] > 0.05)
            peaks.push_back(grid[i]);
    REQUIRE(peaks.size() == 3);
    CHECK(std::abs(peaks[0] + x_c) < 0.35);
    CHECK(std::abs(peaks[1]) < 0.35);
    CHECK(std::abs(peaks[2] - x_c) < 0.35);
}

TEST_CASE("exact and approximate densities agree at strong coupling only") {
    for (double g : {200.0, 20.0}) {
        const exact::ExactSolution& sol = solved(g);
        const double x_c = equilibrium({g}).x_c;
        const std::vector<double> grid = symmetric_grid(x_c + 6.0, 401);
        const std::vector<double> dens = density_on(exact::exact_rdm(sol, grid));
        const rdm::Kernel approx = rdm::rdm_finite({g});
        double sup = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            sup = std::max(sup, std::abs(dens[i] - 3.0 * approx(grid[i], grid[i])));
        if (g == 200.0)
            CHECK(sup < 0.06);
        else
            CHECK(sup > 0.07);
    }
}

TEST_CASE("occupancy spectra form the asymptotic doublet at large coupling") {
    CHECK_THROWS_AS(exact::exact_occupancies(solved(20.0), 0), std::invalid_argument);

    const auto rep200 = exact::exact_occupancies(solved(200.0), 6);
    REQUIRE(rep200.lambda1.size() == 6);
    for (std::size_t i = 1; i < rep200.lambda1.size(); ++i)
        CHECK(rep200.lambda1[i] <= rep200.lambda1[i - 1]);
    for (double v : rep200.lambda1) CHECK(v >= 0.0);
    CHECK(std::abs(rep200.lambda1[0] - rep200.lambda1[1]) < 0.02);
    CHECK(rep200.conservation_residual < 1e-3);
    CHECK(rep200.K == doctest::Approx(3.1977).epsilon(5e-3 / 3.1977));

    const auto rep1000 = exact::exact_occupancies(solved(1000.0), 3);
    CHECK(std::abs(rep1000.K - 3.190633562) < 0.05);
    CHECK(rep1000.K == doctest::Approx(3.193220).epsilon(2e-3 / 3.19));
    const double doublet[3] = {0.324904956773458, 0.324904956773458, 0.319336378255278};
    for (int i = 0; i < 3; ++i) CHECK(std::abs(rep1000.lambda1[i] - doublet[i]) < 1e-3);
}

TEST_CASE("zero-coupling limit spectrum matches the free-fermion modulus") {
    CHECK_THROWS_AS(exact::g0_limit_occupancies(0), std::invalid_argument);

    const auto rep = exact::g0_limit_occupancies(5);
    REQUIRE(rep.lambda1.size() == 5);
    const double paper[3] = {0.6619, 0.1755, 0.1004};
    const double frozen[3] = {0.661914, 0.175472, 0.100425};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(rep.lambda1[i] - paper[i]) < 2e-3);
        CHECK(std::abs(rep.lambda1[i] - frozen[i]) < 2e-5);
    }
    CHECK(rep.conservation_residual < 1e-3);
    CHECK(rep.K == doctest::Approx(2.080681).epsilon(1e-3 / 2.08));
}

TEST_CASE("sweep assembles per-coupling rows deterministically") {
    CHECK_THROWS_AS(exact::sweep({}), std::invalid_argument);

    setenv("TRIOBOSE_THREADS", "2", 1);
    const auto rows = exact::sweep({5.0, -2.0, 20.0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].g == 5.0);
    CHECK(rows[1].g == -2.0);
    CHECK(rows[2].g == 20.0);

    CHECK(rows[1].error.find("> 0") != std::string::npos);
    for (std::size_t i : {std::size_t{0}, std::size_t{2}}) {
        CHECK(rows[i].error.empty());
        CHECK(rows[i].energy_exact > rows[i].energy_harmonic);
        REQUIRE(rows[i].occupancies.size() == 3);
        CHECK(rows[i].occupancies[0] >= rows[i].occupancies[1]);
        CHECK(rows[i].occupancies[1] >= rows[i].occupancies[2]);
        CHECK(rows[i].k_exact > 2.0);
        CHECK(rows[i].k_exact < 3.4);
        CHECK(rows[i].k_approx > 2.0);
        CHECK(rows[i].k_approx < 3.4);
    }
    CHECK(rows[2].k_exact == doctest::Approx(3.221372).epsilon(2e-3 / 3.22));
    CHECK(rows[2].k_approx == doctest::Approx(3.1761).epsilon(2e-3 / 3.18));

    setenv("TRIOBOSE_THREADS", "1", 1);
    const auto again = exact::sweep({5.0, -2.0, 20.0});
    REQUIRE(again.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(again[i].energy_exact == rows[i].energy_exact);
        CHECK(again[i].k_exact == rows[i].k_exact);
        CHECK(again[i].k_approx == rows[i].k_approx);
        CHECK(again[i].error == rows[i].error);
        REQUIRE(again[i].occupancies.size() == rows[i].occupancies.size());
        for (std::size_t l = 0; l < rows[i].occupancies.size(); ++l)
            CHECK(again[i].occupancies[l] == rows[i].occupancies[l]);
    }
}
