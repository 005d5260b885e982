#include "triobose/exact.hpp"

#include "triobose/rdm.hpp"
#include "triobose/wavefunction.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>

namespace triobose::exact {

namespace {

constexpr int kMaxLanczosSteps = 300;
constexpr double kResidualTol = 1e-10;
constexpr double kBoundaryTol = 1e-6;
constexpr int kOrbitalBudget = 320;

// Ordered-sector grid in the relative pair (y1, y2): cell centers on the
// open quadrant, kept only half a step away from the second coincidence
// line, which also caps the Coulomb terms at O(g/h).
struct SectorGrid {
    int n = 0;
    double h = 0.0;
    std::vector<double> coord;  // cell-center value per axis index
    std::vector<int> index;     // n*n -> unknown id, -1 off sector
    int unknowns = 0;
};

SectorGrid make_sector_grid(const GridSpec& grid) {
    SectorGrid s;
    s.n = grid.points_per_axis;
    s.h = grid.half_width / grid.points_per_axis;
    s.coord.resize(s.n);
    for (int i = 0; i < s.n; ++i) s.coord[i] = (i + 0.5) * s.h;
    s.index.assign(static_cast<std::size_t>(s.n) * s.n, -1);
    const double sqrt3 = std::sqrt(3.0);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j)
            if (0.5 * (sqrt3 * s.coord[j] - s.coord[i]) >= 0.5 * s.h)
                s.index[static_cast<std::size_t>(i) * s.n + j] = s.unknowns++;
    return s;
}

double relative_potential(double y1, double y2, double g) {
    const double sqrt2 = std::sqrt(2.0), sqrt3 = std::sqrt(3.0);
    return 0.5 * (y1 * y1 + y2 * y2) + g / (sqrt2 * y1) + g * sqrt2 / (sqrt3 * y2 - y1) +
           g * sqrt2 / (sqrt3 * y2 + y1);
}

// Five-point discretization of -(1/2) laplacian + V - shift on the sector.
Eigen::SparseMatrix<double> assemble(const SectorGrid& sg, double g, double shift) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(sg.unknowns) * 5);
    const double inv_h2 = 1.0 / (sg.h * sg.h);
    for (int i = 0; i < sg.n; ++i) {
        for (int j = 0; j < sg.n; ++j) {
            const int a = sg.index[static_cast<std::size_t>(i) * sg.n + j];
            if (a < 0) continue;
            trip.emplace_back(a, a,
                              2.0 * inv_h2 + relative_potential(sg.coord[i], sg.coord[j], g) -
                                  shift);
            if (i + 1 < sg.n) {
                const int b = sg.index[static_cast<std::size_t>(i + 1) * sg.n + j];
                if (b >= 0) {
                    trip.emplace_back(a, b, -0.5 * inv_h2);
                    trip.emplace_back(b, a, -0.5 * inv_h2);
                }
            }
            if (j + 1 < sg.n) {
                const int b = sg.index[static_cast<std::size_t>(i) * sg.n + j + 1];
                if (b >= 0) {
                    trip.emplace_back(a, b, -0.5 * inv_h2);
                    trip.emplace_back(b, a, -0.5 * inv_h2);
                }
            }
        }
    }
    Eigen::SparseMatrix<double> h(sg.unknowns, sg.unknowns);
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}

void validate_grid(const TrapParams& params, const GridSpec& grid) {
    const double x_c = equilibrium(params).x_c;
    if (grid.points_per_axis < 64)
        throw std::invalid_argument("sector grid needs at least 64 points per axis");
    if (!(grid.half_width >= x_c * std::sqrt(2.0) + 6.0))
        throw std::invalid_argument("sector window must cover the classical geometry");
}

double catmull_rom(double t, int k) {
    switch (k) {
        case -1: return 0.5 * (-t + 2.0 * t * t - t * t * t);
        case 0: return 0.5 * (2.0 - 5.0 * t * t + 3.0 * t * t * t);
        case 1: return 0.5 * (t + 4.0 * t * t - 3.0 * t * t * t);
        default: return 0.5 * (-t * t + t * t * t);
    }
}

// Interpolated sector sample with zero fill outside the stored window.
double sector_value(const ExactSolution& sol, double u, double v) {
    const int n = sol.grid.points_per_axis;
    const double h = sol.grid.half_width / n;
    const double fi = u / h - 0.5, fj = v / h - 0.5;
    const int i0 = static_cast<int>(std::floor(fi));
    const int j0 = static_cast<int>(std::floor(fj));
    const double ti = fi - i0, tj = fj - j0;
    double val = 0.0;
    for (int di = -1; di <= 2; ++di) {
        const int ii = i0 + di;
        if (ii < 0 || ii >= n) continue;
        const double wi = catmull_rom(ti, di);
        for (int dj = -1; dj <= 2; ++dj) {
            const int jj = j0 + dj;
            if (jj < 0 || jj >= n) continue;
            val += wi * catmull_rom(tj, dj) * sol.psi_rel[static_cast<std::size_t>(ii) * n + jj];
        }
    }
    return val;
}

int orbital_count_for(double x_c) {
    const int m = static_cast<int>(std::ceil((x_c + 5.5) * (x_c + 5.5) / 2.0)) + 6;
    if (m > kOrbitalBudget)
        throw std::runtime_error("orbital projection budget exceeded at this coupling");
    return m;
}

// Projects a symmetric three-body state onto the trap-orbital basis through
// its one-body kernel: coeff_mn = 2 * int_{a<b} F_m(a,b) F_n(a,b) da db with
// F_m(a,b) = int phi_m(x) psi(x,a,b) dx. The x integral is split at the two
// derivative kinks x=a and x=b, and each segment's rule is sized for the
// oscillation parameter of the highest orbital over it (nodes >= nu/2 plus
// margin, nu = k_top * half_length), so the basis can grow with the coupling
// without aliasing the coefficient tail.
template <class Psi3>
OrbitalKernel project_state(const Psi3& psi, double span, int m_orbitals) {
    const spectral::QuadratureRule outer = spectral::build_quadrature(1.0, 160);
    const double k_top = std::sqrt(2.0 * m_orbitals + 1.0);
    std::map<int, spectral::QuadratureRule> segment_rules;
    const auto rule_for = [&](double hw) -> const spectral::QuadratureRule& {
        const int need = static_cast<int>(std::ceil(0.55 * k_top * hw)) + 30;
        const int n = std::max(32, 8 * ((need + 7) / 8));
        auto it = segment_rules.find(n);
        if (it == segment_rules.end())
            it = segment_rules.emplace(n, spectral::build_quadrature(1.0, n)).first;
        return it->second;
    };

    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(m_orbitals, m_orbitals);
    Eigen::VectorXd f(m_orbitals);
    for (std::size_t ia = 0; ia < outer.nodes.size(); ++ia) {
        const double a = span * outer.nodes[ia];
        const double wa = span * outer.weights[ia];
        for (std::size_t ib = 0; ib < outer.nodes.size(); ++ib) {
            const double half = 0.5 * (span - a);
            const double b = a + (outer.nodes[ib] + 1.0) * half;
            const double wb = outer.weights[ib] * half;

            f.setZero();
            const double cuts[4] = {-span, a, b, span};
            for (int seg = 0; seg < 3; ++seg) {
                const double mid = 0.5 * (cuts[seg] + cuts[seg + 1]);
                const double hw = 0.5 * (cuts[seg + 1] - cuts[seg]);
                if (!(hw > 0.0)) continue;
                const spectral::QuadratureRule& inner = rule_for(hw);
                for (std::size_t q = 0; q < inner.nodes.size(); ++q) {
                    const double x = mid + hw * inner.nodes[q];
                    const double w = hw * inner.weights[q];
                    const double ps = psi(x, a, b);
                    if (ps == 0.0) continue;
                    const std::vector<double> orb =
                        wavefunction::orbital_values(m_orbitals - 1, x);
                    for (int m = 0; m < m_orbitals; ++m) f[m] += w * ps * orb[m];
                }
            }
            rho.selfadjointView<Eigen::Lower>().rankUpdate(f, 2.0 * wa * wb);
        }
    }

    OrbitalKernel k;
    k.m_orbitals = m_orbitals;
    k.coeff.resize(static_cast<std::size_t>(m_orbitals) * m_orbitals);
    for (int m = 0; m < m_orbitals; ++m)
        for (int n = 0; n <= m; ++n) {
            k.coeff[static_cast<std::size_t>(m) * m_orbitals + n] = rho(m, n);
            k.coeff[static_cast<std::size_t>(n) * m_orbitals + m] = rho(m, n);
        }
    return k;
}

spectral::OccupancyReport report_from_spectrum(const std::vector<double>& eigs, int count) {
    spectral::OccupancyReport rep;
    double sum = 0.0, sum_sq = 0.0;
    for (const double v : eigs) {
        sum += v;
        sum_sq += v * v;
    }
    rep.K = 1.0 / sum_sq;
    rep.L = 1.0 - sum_sq;
    rep.conservation_residual = std::abs(sum - 1.0);
    const int keep = std::min<int>(count, static_cast<int>(eigs.size()));
    rep.lambda1.assign(eigs.begin(), eigs.begin() + keep);
    for (int l = 0; l < keep; ++l) rep.merged.push_back({eigs[l], 1, l, 0});
    return rep;
}

int worker_count(std::size_t jobs) {
    int n = 0;
    if (const char* env = std::getenv("TRIOBOSE_THREADS")) n = std::atoi(env);
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return std::min<int>(n, static_cast<int>(jobs));
}

}  // namespace

ExactSolution solve_exact(const TrapParams& params, const GridSpec& grid) {
    const EquilibriumGeometry eq = equilibrium(params);
    validate_grid(params, grid);

    const SectorGrid sg = make_sector_grid(grid);
    const double sigma = eq.v_min;  // classical floor, just below the spectrum
    const Eigen::SparseMatrix<double> hs = assemble(sg, params.g, sigma);

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(hs);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("factorization of the shifted sector operator failed");

    // Inverse-operator Lanczos with full reorthogonalization; the dominant
    // eigenvalue mu of (H - sigma)^(-1) gives E_rel = sigma + 1/mu.
    const double y1_eq = eq.x_c / std::sqrt(2.0);
    const double y2_eq = eq.x_c * std::sqrt(1.5);
    Eigen::VectorXd v(sg.unknowns);
    for (int i = 0; i < sg.n; ++i)
        for (int j = 0; j < sg.n; ++j) {
            const int a = sg.index[static_cast<std::size_t>(i) * sg.n + j];
            if (a < 0) continue;
            const double d1 = sg.coord[i] - y1_eq, d2 = sg.coord[j] - y2_eq;
            v[a] = std::exp(-0.5 * (d1 * d1 + d2 * d2));
        }
    v.normalize();

    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alphas, betas;
    double mu = 0.0;
    Eigen::VectorXd ritz;
    bool converged = false;

    for (int step = 0; step < kMaxLanczosSteps && !converged; ++step) {
        basis.push_back(v);
        Eigen::VectorXd w = solver.solve(v);
        alphas.push_back(v.dot(w));
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) w -= b.dot(w) * b;
        const double beta = w.norm();

        const int k = static_cast<int>(alphas.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            t(i, i) = alphas[i];
            if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = betas[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        mu = es.eigenvalues()[k - 1];
        const Eigen::VectorXd s = es.eigenvectors().col(k - 1);
        if (beta * std::abs(s[k - 1]) <= kResidualTol * std::max(1.0, std::abs(mu))) {
            ritz = Eigen::VectorXd::Zero(sg.unknowns);
            for (int i = 0; i < k; ++i) ritz += s[i] * basis[i];
            converged = true;
            break;
        }
        betas.push_back(beta);
        v = w / beta;
    }
    if (!converged) throw std::runtime_error("ground-state iteration did not converge");

    ExactSolution sol;
    sol.g = params.g;
    sol.grid = grid;
    sol.energy = sigma + 1.0 / mu + 0.5;

    if (ritz.sum() < 0.0) ritz = -ritz;
    const double peak = ritz.cwiseAbs().maxCoeff();
    double worst_negative = 0.0;
    for (int i = 0; i < ritz.size(); ++i) {
        if (ritz[i] < 0.0) {
            worst_negative = std::min(worst_negative, ritz[i]);
            ritz[i] = 0.0;
        }
    }
    if (worst_negative < -1e-6 * peak)
        throw std::runtime_error("converged state is not single signed on the sector");

    // Unit norm over the whole relative plane: six symmetric sector copies.
    ritz /= std::sqrt(6.0 * ritz.squaredNorm() * sg.h * sg.h);

    sol.psi_rel.assign(static_cast<std::size_t>(sg.n) * sg.n, 0.0);
    double boundary = 0.0, bulk = 0.0;
    for (int i = 0; i < sg.n; ++i)
        for (int j = 0; j < sg.n; ++j) {
            const int a = sg.index[static_cast<std::size_t>(i) * sg.n + j];
            if (a < 0) continue;
            sol.psi_rel[static_cast<std::size_t>(i) * sg.n + j] = ritz[a];
            bulk = std::max(bulk, ritz[a]);
            if (i == sg.n - 1 || j == sg.n - 1) boundary = std::max(boundary, ritz[a]);
        }
    if (boundary > kBoundaryTol * bulk)
        throw std::domain_error("sector window too small: state reaches the outer boundary");
    return sol;
}

double evaluate_bosonic(const ExactSolution& sol, double x1, double x2, double x3) {
    const double sqrt2 = std::sqrt(2.0), sqrt3 = std::sqrt(3.0), sqrt6 = std::sqrt(6.0);
    const double r = (x1 + x2 + x3) / sqrt3;
    const double y1 = (x2 - x1) / sqrt2;
    const double y2 = (2.0 * x3 - x1 - x2) / sqrt6;

    // Fold into the ordered sector: sort the reconstructed centered positions.
    double p[3] = {-y1 / sqrt2 - y2 / sqrt6, y1 / sqrt2 - y2 / sqrt6, 2.0 * y2 / sqrt6};
    std::sort(p, p + 3);
    const double u = (p[1] - p[0]) / sqrt2;
    const double w = (2.0 * p[2] - p[0] - p[1]) / sqrt6;

    return std::pow(M_PI, -0.25) * std::exp(-0.5 * r * r) * sector_value(sol, u, w);
}

double energy_functional(const TrapParams& params, const GridSpec& grid,
                         const std::vector<double>& psi) {
    validate_grid(params, grid);
    const SectorGrid sg = make_sector_grid(grid);
    if (psi.size() != static_cast<std::size_t>(sg.n) * sg.n)
        throw std::invalid_argument("field size does not match the grid");

    Eigen::VectorXd v(sg.unknowns);
    for (int i = 0; i < sg.n; ++i)
        for (int j = 0; j < sg.n; ++j) {
            const int a = sg.index[static_cast<std::size_t>(i) * sg.n + j];
            if (a >= 0) v[a] = psi[static_cast<std::size_t>(i) * sg.n + j];
        }
    const double nrm = v.squaredNorm();
    if (!(nrm > 0.0)) throw std::invalid_argument("field vanishes on the sector");

    const Eigen::SparseMatrix<double> h = assemble(sg, params.g, 0.0);
    return v.dot(h * v) / nrm + 0.5;
}

double OrbitalKernel::operator()(double x, double y) const {
    const std::vector<double> fx = wavefunction::orbital_values(m_orbitals - 1, x);
    const std::vector<double> fy = wavefunction::orbital_values(m_orbitals - 1, y);
    double acc = 0.0;
    for (int m = 0; m < m_orbitals; ++m) {
        double row = 0.0;
        for (int n = 0; n < m_orbitals; ++n)
            row += coeff[static_cast<std::size_t>(m) * m_orbitals + n] * fy[n];
        acc += fx[m] * row;
    }
    return acc;
}

double OrbitalKernel::trace() const {
    double acc = 0.0;
    for (int m = 0; m < m_orbitals; ++m) acc += coeff[static_cast<std::size_t>(m) * m_orbitals + m];
    return acc;
}

OrbitalKernel project_rdm(const ExactSolution& sol) {
    const double x_c = equilibrium({sol.g}).x_c;
    const int m0 = orbital_count_for(x_c);
    const auto psi = [&sol](double x, double a, double b) {
        return evaluate_bosonic(sol, x, a, b);
    };
    return project_state(psi, x_c + 8.0, m0);
}

OrbitalKernel g0_limit_kernel() {
    const auto psi = [](double x, double a, double b) {
        return wavefunction::slater_modulus_g0(x, a, b);
    };
    return project_state(psi, 8.0, 40);
}

KernelSamples exact_rdm(const ExactSolution& sol, const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("kernel grid needs at least two points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("kernel grid must be strictly increasing");

    const OrbitalKernel k = project_rdm(sol);
    const std::size_t n = grid.size();
    Eigen::MatrixXd phi(n, k.m_orbitals);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> orb = wavefunction::orbital_values(k.m_orbitals - 1, grid[i]);
        for (int m = 0; m < k.m_orbitals; ++m) phi(i, m) = orb[m];
    }
    Eigen::Map<const Eigen::MatrixXd> rho(k.coeff.data(), k.m_orbitals, k.m_orbitals);
    const Eigen::MatrixXd values = phi * rho * phi.transpose();

    KernelSamples out;
    out.grid = grid;
    out.values.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.values[i * n + j] = values(i, j);
    return out;
}

spectral::OccupancyReport exact_occupancies(const ExactSolution& sol, int count) {
    if (count < 1) throw std::invalid_argument("occupancy count must be >= 1");
    const OrbitalKernel k = project_rdm(sol);
    const double half_width = equilibrium({sol.g}).x_c + 9.5;
    const int n = std::max(200, static_cast<int>(std::ceil(25.0 * half_width)));
    const spectral::QuadratureRule rule = spectral::build_quadrature(half_width, n);
    const spectral::SpectralDecomposition dec =
        spectral::nystrom_eigs([&k](double x, double y) { return k(x, y); }, rule, n);
    return report_from_spectrum(dec.eigenvalues, count);
}

spectral::OccupancyReport g0_limit_occupancies(int count) {
    if (count < 1) throw std::invalid_argument("occupancy count must be >= 1");
    const OrbitalKernel k = g0_limit_kernel();
    // The basis is orthonormal, so kernel occupancies are exactly the
    // eigenvalues of the coefficient matrix.
    Eigen::Map<const Eigen::MatrixXd> rho(k.coeff.data(), k.m_orbitals, k.m_orbitals);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho);
    std::vector<double> eigs(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(eigs.begin(), eigs.end(), std::greater<double>());
    return report_from_spectrum(eigs, count);
}

std::vector<SweepRow> sweep(const std::vector<double>& couplings) {
    if (couplings.empty()) throw std::invalid_argument("sweep requires at least one coupling");

    std::vector<SweepRow> rows(couplings.size());
    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= couplings.size()) return;
            SweepRow& row = rows[i];
            row.g = couplings[i];
            try {
                const TrapParams p{couplings[i]};
                row.energy_harmonic = energy_harmonic(p);
                const ExactSolution sol = solve_exact(p, GridSpec::for_coupling(p));
                row.energy_exact = sol.energy;
                const spectral::OccupancyReport rep = exact_occupancies(sol, 3);
                row.k_exact = rep.K;
                for (const auto& e : rep.merged) row.occupancies.push_back(e.value);
                row.k_approx = rdm::degree_of_correlation(rdm::rdm_finite(p)).K;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    const int workers = worker_count(couplings.size());
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return rows;
}

}  // namespace triobose::exact
