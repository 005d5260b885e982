#pragma once

// Ground-state wavefunctions for three trapped charges: the Gaussian ansatz
// about one classical ordering, its bosonic symmetrization over all six
// orderings, and the ideal-gas limit built from the lowest trap orbitals.

#include "triobose/gaussian.hpp"
#include "triobose/model.hpp"

#include <vector>

namespace triobose::wavefunction {

// Single unnormalized Gaussian factor in displacement coordinates, centered
// at the origin. Its exponent is alpha*(sum/3)^2 + beta*((x2-x1)^2+(x3-x2)^2)
// + gamma*(x3-x1)^2.
struct AnsatzState {
    gaussian::Sum body;
    AnsatzParams params;

    AnsatzState() : body(3) {}
};

// Bosonic ground state of the harmonic approximation: the ansatz summed over
// all six particle orderings. body holds the six unnormalized terms; the
// physical state is norm_constant * body.
struct SymmetrizedState {
    gaussian::Sum body;
    double norm_constant = 0.0;
    double g = 0.0;

    SymmetrizedState() : body(3) {}

    double value(const Eigen::VectorXd& x) const { return norm_constant * evaluate(body, x); }
};

// Ansatz with the closed-form variational parameters.
AnsatzState build_ansatz();

// Ansatz with explicit exponent parameters (used to probe sensitivity).
AnsatzState build_ansatz(double alpha, double beta, double gamma);

// Applies the trap-centered quadratic Hamiltonian to the ansatz by exact
// differentiation and returns max |(H - E0) psi| / |psi| over the samples,
// where E0 is the zero-point energy of the three normal modes.
double verify_ansatz_solves_pde(const AnsatzState& state,
                                const std::vector<Eigen::VectorXd>& sample_points);

// Symmetrized, normalized ground state for coupling params.g.
SymmetrizedState symmetrize(const TrapParams& params);

// Harmonic-oscillator eigenfunction of quantum number n, evaluated by the
// stable normalized three-term recurrence.
struct HermiteOrbital {
    int n = 0;

    explicit HermiteOrbital(int n_);
    double operator()(double x) const;
};

// Values of orbitals 0..n_max at x, one recurrence pass.
std::vector<double> orbital_values(int n_max, double x);

// Zero-coupling limit of the bosonic ground state: the modulus of the Slater
// determinant of the three lowest trap orbitals, with 1/sqrt(3!) prefactor.
double slater_modulus_g0(double x1, double x2, double x3);

}  // namespace triobose::wavefunction
