#pragma once

// One-body reduced density matrices: the finite-coupling kernel obtained by
// tracing two coordinates out of the symmetrized state, the strong-coupling
// site kernels in closed form, densities, and the degree of correlation.

#include "triobose/gaussian.hpp"
#include "triobose/model.hpp"

#include <utility>
#include <vector>

namespace triobose::rdm {

enum class KernelLabel { finite_g, rho1, rho_tilde, asymptotic_total };

// Symmetric two-point kernel k(x,y) held as an exact Gaussian sum.
struct Kernel {
    gaussian::Sum body;
    KernelLabel label = KernelLabel::finite_g;

    Kernel() : body(2) {}

    double operator()(double x, double y) const {
        Eigen::VectorXd p(2);
        p << x, y;
        return evaluate(body, p);
    }
};

struct DensityProfile {
    std::vector<double> grid;
    std::vector<double> values;
};

struct CorrelationMeasure {
    double K;  // effective number of occupied orbitals, 1 / tr k^2
    double L;  // 1 - 1/K
};

// One-body kernel at coupling params.g: the two shared coordinates of
// psi(x,.,.)*psi(y,.,.) integrated out analytically (36 Gaussian terms).
Kernel rdm_finite(const TrapParams& params);

// Coupling-independent site kernels of the strong-repulsion limit: the
// central-site kernel and the side-site kernel in its own centered frame.
std::pair<Kernel, Kernel> rdm_asymptotic();

// Central kernel plus the two side copies shifted to the equilibrium spacing
// of coupling g.
Kernel assemble_asymptotic_total(const TrapParams& params);

// Analytic value of the diagonal integral of k.
double trace(const Kernel& k);

// Analytic value of the double integral of k(x,y)^2.
double purity(const Kernel& k);

// Particle density n(x) = 3 k(x,x) on a strictly increasing grid.
DensityProfile density(const Kernel& k, const std::vector<double>& grid);

// K = 1/tr k^2 and L = 1 - 1/K. Requires trace(k) = 1 within 1e-8.
CorrelationMeasure degree_of_correlation(const Kernel& k);

}  // namespace triobose::rdm
