#pragma once

// Natural orbitals and occupancies: Gauss-Legendre discretization of the
// symmetric-kernel eigenproblem, occupancy bookkeeping for the site kernels,
// and the displaced-orbital basis of the strong-coupling Schmidt form.

#include "triobose/rdm.hpp"

#include <functional>
#include <vector>

namespace triobose::spectral {

struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing in [-L, L], mirror symmetric
    std::vector<double> weights;  // positive
    double half_width = 0.0;
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues;                  // descending, small negatives clamped
    std::vector<std::vector<double>> eigenfunctions;  // node samples, weighted-orthonormal
    QuadratureRule rule;
};

// One row of the combined strong-coupling spectrum.
struct MergedEntry {
    double value;
    int family;  // 1 = central-site kernel, 2 = side-site kernel
    int l;       // index within its family
    int copy;    // +1/-1 for the two side copies, 0 for the central family
};

struct OccupancyReport {
    std::vector<double> lambda1;       // central-site spectrum (or the single spectrum)
    std::vector<double> lambda2;       // side-site spectrum; empty for single-kernel runs
    std::vector<MergedEntry> merged;   // descending, side entries doubled
    double K = 0.0;                    // from the full spectrum
    double L = 0.0;
    double conservation_residual = 0.0;
};

// Gauss-Legendre rule mapped to [-half_width, half_width]; nodes come out
// bitwise mirror symmetric so odd integrands cancel exactly.
QuadratureRule build_quadrature(double half_width, int n);

using KernelFn = std::function<double(double, double)>;

// Symmetric-kernel eigendecomposition on the rule: the weighted collocation
// matrix sqrt(w_i) k(x_i,x_j) sqrt(w_j) is diagonalized and eigenvectors are
// unweighted back to function samples. Keeps the top `count` pairs.
// Requires the kernel to be below 1e-12 on the window edge.
SpectralDecomposition nystrom_eigs(const KernelFn& k, const QuadratureRule& rule, int count);
SpectralDecomposition nystrom_eigs(const rdm::Kernel& k, const QuadratureRule& rule, int count);

// Off-node value of eigenfunction l through the kernel-smoothing identity.
double nystrom_extend(const SpectralDecomposition& dec, const KernelFn& k, int l, double x);
double nystrom_extend(const SpectralDecomposition& dec, const rdm::Kernel& k, int l, double x);

// Occupancy spectra of the two site kernels, merged with the side family
// doubled. Lists are capped at `count`; K and the conservation residual are
// always taken over the full computed spectra. The one-argument form uses
// the default rule (half-width 8, 200 nodes).
OccupancyReport asymptotic_occupancies(int count);
OccupancyReport asymptotic_occupancies(int count, const QuadratureRule& rule);

// Even/odd combinations of one side orbital displaced to the two side sites.
struct EtaTauPair {
    std::vector<double> eta, tau;  // samples on eval rule nodes
    QuadratureRule rule;
    double cross_overlap;  // displaced-copy overlap; must be below 1e-8
};

EtaTauPair eta_tau_basis(const SpectralDecomposition& side_dec, const rdm::Kernel& side_kernel,
                         int l, double x_c, const QuadratureRule& eval_rule);

// Weight left out when the strong-coupling Schmidt sum keeps orbitals with
// l <= keep_through only.
double schmidt_truncation_error(const TrapParams& params, int keep_through = 0);

// Occupancies of the finite-coupling kernel on an automatically sized window.
OccupancyReport finite_g_occupancies(const TrapParams& params, int count);

}  // namespace triobose::spectral
