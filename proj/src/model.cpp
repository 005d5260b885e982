#include "triobose/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace triobose {

namespace {

void require_positive_g(const TrapParams& p) {
    if (!(p.g > 0.0))
        throw std::domain_error("coupling g must be > 0 (got " + std::to_string(p.g) + ")");
}

}  // namespace

double harmonic_zero_point_energy() {
    return (10.0 + 10.0 * std::sqrt(3.0) + 2.0 * std::sqrt(145.0)) / 20.0;
}

EquilibriumGeometry equilibrium(const TrapParams& p) {
    require_positive_g(p);
    const double x_c = std::cbrt(10.0 * p.g) / 2.0;
    // potential at the ordered minimum (-x_c, 0, x_c): x_c^2 + (5/2) g/x_c = 3 x_c^2
    const double v_min = 0.75 * std::cbrt(100.0 * p.g * p.g);
    return {x_c, {-x_c, 0.0, x_c}, v_min};
}

double potential_exact(double x1, double x2, double x3, const TrapParams& p) {
    if (p.g < 0.0) throw std::domain_error("coupling g must be >= 0");
    if (p.g > 0.0 && (x1 == x2 || x2 == x3 || x1 == x3))
        throw std::domain_error("potential is singular at coincident coordinates");
    double v = 0.5 * (x1 * x1 + x2 * x2 + x3 * x3);
    if (p.g > 0.0)
        v += p.g * (1.0 / std::abs(x1 - x2) + 1.0 / std::abs(x2 - x3) + 1.0 / std::abs(x1 - x3));
    return v;
}

double potential_exact_pair_form(double x1, double x2, double x3, const TrapParams& p) {
    if (p.g < 0.0) throw std::domain_error("coupling g must be >= 0");
    if (p.g > 0.0 && (x1 == x2 || x2 == x3 || x1 == x3))
        throw std::domain_error("potential is singular at coincident coordinates");
    const double X = (x1 + x2 + x3) / 3.0;
    double v = 1.5 * X * X;
    const double pairs[3][2] = {{x2 - x1, 0.0}, {x3 - x2, 0.0}, {x3 - x1, 0.0}};
    for (const auto& pr : pairs) {
        const double d = pr[0];
        v += d * d / 6.0;
        if (p.g > 0.0) v += p.g / std::abs(d);
    }
    return v;
}

double potential_harmonic(double x1, double x2, double x3, const TrapParams& p) {
    const auto eq = equilibrium(p);
    const double X = (x1 + x2 + x3) / 3.0;
    const double d21 = (x2 - x1) - eq.x_c;
    const double d32 = (x3 - x2) - eq.x_c;
    const double d31 = (x3 - x1) - 2.0 * eq.x_c;
    return eq.v_min + 1.5 * X * X + (29.0 / 30.0) * (d21 * d21 + d32 * d32) +
           (4.0 / 15.0) * d31 * d31;
}

double energy_harmonic(const TrapParams& p) {
    const auto eq = equilibrium(p);
    return harmonic_zero_point_energy() + eq.v_min;
}

AnsatzParams ansatz_params() {
    return {1.5, std::sqrt(29.0 / 5.0) / 6.0, (15.0 * std::sqrt(3.0) - std::sqrt(145.0)) / 60.0,
            std::sqrt(2.0) * std::pow(29.0, 0.125) * std::pow(3.0, 0.625) * std::pow(5.0, 0.875) /
                (30.0 * std::pow(M_PI, 0.75))};
}

}  // namespace triobose
