#pragma once

#include <array>

// Three identical charged bosons in a 1D harmonic trap, in trap units.
// The single control parameter g is the ratio of Coulomb to confinement
// energy scales; g > 0 throughout.

namespace triobose {

struct TrapParams {
    double g = 1.0;
};

// Classical equilibrium of the ordered configuration x1 < x2 < x3.
struct EquilibriumGeometry {
    double x_c;                       // nearest-neighbour spacing
    std::array<double, 3> positions;  // {-x_c, 0, +x_c}
    double v_min;                     // potential at the minimum
};

// Parameters of the harmonic-approximation ground-state ansatz
// exp(-alpha*X^2 - beta*(d21^2 + d32^2) - gamma*d31^2) in shifted coordinates.
struct AnsatzParams {
    double alpha;
    double beta;
    double gamma;
    double c_infinity;  // large-g limit of the symmetrized normalization
};

// Zero-point energy of the three normal modes, (10 + 10*sqrt(3) + 2*sqrt(145))/20.
double harmonic_zero_point_energy();

EquilibriumGeometry equilibrium(const TrapParams& p);

// Full potential: harmonic traps plus pairwise Coulomb repulsion.
// Throws std::domain_error when two coordinates coincide.
double potential_exact(double x1, double x2, double x3, const TrapParams& p);

// Same potential written as centre of mass plus pair terms; agrees with
// potential_exact identically and is kept as an independent evaluation route.
double potential_exact_pair_form(double x1, double x2, double x3, const TrapParams& p);

// Second-order Taylor expansion of the potential about the classical minimum.
double potential_harmonic(double x1, double x2, double x3, const TrapParams& p);

// Ground-state energy of the harmonic approximation.
double energy_harmonic(const TrapParams& p);

AnsatzParams ansatz_params();

}  // namespace triobose
