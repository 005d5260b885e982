#pragma once

// Numerically exact reference solver. The center of mass separates as a unit
// oscillator; the relative problem is solved on a 2D grid over one ordered
// sector with the coincidence lines as hard walls, which is where the
// fermionic representation of the bosonic ground state has its nodes. The
// bosonic state is the modulus, extended over all sectors by symmetry.

#include "triobose/model.hpp"
#include "triobose/spectral.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace triobose::exact {

struct GridSpec {
    double half_width = 0.0;  // span of each relative coordinate
    int points_per_axis = 0;

    static GridSpec for_coupling(const TrapParams& p) {
        return {equilibrium(p).x_c * std::sqrt(2.0) + 8.0, 512};
    }
};

struct ExactSolution {
    double energy = 0.0;  // total ground-state energy, relative part + 1/2
    double g = 0.0;
    GridSpec grid;
    std::vector<double> psi_rel;  // row-major samples on the sector grid, 0 off-sector
};

// Ground state at coupling params.g on the given grid.
// Throws std::invalid_argument for a grid violating the size rules,
// std::domain_error when the window clips the state, std::runtime_error when
// the eigensolve does not converge.
ExactSolution solve_exact(const TrapParams& params, const GridSpec& grid);

// Bosonic three-body wavefunction value reconstructed from the stored sector
// samples (modulus extension plus the center-of-mass Gaussian).
double evaluate_bosonic(const ExactSolution& sol, double x1, double x2, double x3);

// Energy of an arbitrary real field on the solution's grid under the same
// discretized operator (plus the center-of-mass zero point). The converged
// state realizes the minimum.
double energy_functional(const TrapParams& params, const GridSpec& grid,
                         const std::vector<double>& psi);

// One-body kernel of a grid solution expanded over trap orbitals:
// k(x,y) = sum_mn coeff[m][n] phi_m(x) phi_n(y).
struct OrbitalKernel {
    int m_orbitals = 0;
    std::vector<double> coeff;  // m_orbitals^2, row-major, symmetric

    double operator()(double x, double y) const;
    double trace() const;  // sum of diagonal coefficients
};

// Projection of the solution's one-body kernel onto the orbital basis sized
// for its coupling. Throws std::runtime_error when the coupling would need a
// basis beyond the projection budget.
OrbitalKernel project_rdm(const ExactSolution& sol);

// Same projection for the zero-coupling limit state, which is known in
// closed form and needs no grid solve.
OrbitalKernel g0_limit_kernel();

struct KernelSamples {
    std::vector<double> grid;
    std::vector<double> values;  // grid.size()^2, row-major
};

// Kernel sampled on a strictly increasing grid.
KernelSamples exact_rdm(const ExactSolution& sol, const std::vector<double>& grid);

// Occupancies of the projected kernel through the spectral module's
// discretized eigensolve on an automatically sized window.
spectral::OccupancyReport exact_occupancies(const ExactSolution& sol, int count);

// Occupancies of the zero-coupling limit kernel.
spectral::OccupancyReport g0_limit_occupancies(int count);

struct SweepRow {
    double g = 0.0;
    double energy_exact = 0.0;
    double energy_harmonic = 0.0;
    double k_exact = 0.0;
    double k_approx = 0.0;
    std::vector<double> occupancies;  // top three exact occupancies
    std::string error;                // empty on success
};

// One solved row per coupling, in input order. Rows run in parallel across a
// worker pool sized by the TRIOBOSE_THREADS environment variable (default:
// hardware concurrency); failures are recorded per row, not thrown.
std::vector<SweepRow> sweep(const std::vector<double>& couplings);

}  // namespace triobose::exact
