#include "triobose/wavefunction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace triobose::wavefunction {

namespace {

// Quadratic-form matrix of alpha*(sum/3)^2 + beta*((x2-x1)^2 + (x3-x2)^2)
// + gamma*(x3-x1)^2 in the displacement coordinates.
Eigen::MatrixXd exponent_matrix(double alpha, double beta, double gamma) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(3, 3, alpha / 9.0);
    const std::array<std::array<double, 3>, 3> diffs = {{{-1.0, 1.0, 0.0},   // x2 - x1
                                                         {0.0, -1.0, 1.0},   // x3 - x2
                                                         {-1.0, 0.0, 1.0}}};  // x3 - x1
    const std::array<double, 3> weights = {beta, beta, gamma};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) += weights[k] * diffs[k][i] * diffs[k][j];
    return m;
}

// Trap-centered quadratic potential with the minimum value subtracted.
double shifted_quadratic_potential(const Eigen::VectorXd& x) {
    const double cm = (x[0] + x[1] + x[2]) / 3.0;
    const double d21 = x[1] - x[0];
    const double d32 = x[2] - x[1];
    const double d31 = x[2] - x[0];
    return 1.5 * cm * cm + (29.0 / 30.0) * (d21 * d21 + d32 * d32) + (4.0 / 15.0) * d31 * d31;
}

}  // namespace

AnsatzState build_ansatz() {
    const AnsatzParams p = ansatz_params();
    AnsatzState s = build_ansatz(p.alpha, p.beta, p.gamma);
    s.params = p;
    return s;
}

AnsatzState build_ansatz(double alpha, double beta, double gamma) {
    AnsatzState s;
    s.params = ansatz_params();
    s.params.alpha = alpha;
    s.params.beta = beta;
    s.params.gamma = gamma;
    s.body.push(gaussian::make_term(1.0, Eigen::VectorXd::Zero(3),
                                    exponent_matrix(alpha, beta, gamma)));
    return s;
}

double verify_ansatz_solves_pde(const AnsatzState& state,
                                const std::vector<Eigen::VectorXd>& sample_points) {
    if (state.body.terms().size() != 1)
        throw std::invalid_argument("ansatz state must hold exactly one term");
    const gaussian::Term& t = state.body.terms()[0];
    const double e0 = harmonic_zero_point_energy();

    // For psi = c*exp(-(x-mu)' A (x-mu)):
    //   -(1/2) laplacian psi / psi = tr(A) - 2 |A (x-mu)|^2.
    double worst = 0.0;
    for (const auto& x : sample_points) {
        if (x.size() != 3) throw std::invalid_argument("sample points must have 3 components");
        const Eigen::VectorXd d = x - t.mu;
        const Eigen::VectorXd ad = t.a * d;
        const double kinetic = t.a.trace() - 2.0 * ad.squaredNorm();
        worst = std::max(worst, std::abs(kinetic + shifted_quadratic_potential(x) - e0));
    }
    return worst;
}

SymmetrizedState symmetrize(const TrapParams& params) {
    const EquilibriumGeometry eq = equilibrium(params);
    const AnsatzParams ap = ansatz_params();
    const Eigen::MatrixXd m = exponent_matrix(ap.alpha, ap.beta, ap.gamma);

    SymmetrizedState s;
    s.g = params.g;
    std::array<int, 3> perm = {0, 1, 2};
    do {
        // Particle perm[k] sits at the k-th ordered site.
        Eigen::VectorXd mu(3);
        Eigen::MatrixXd a(3, 3);
        for (int i = 0; i < 3; ++i) {
            mu[perm[i]] = eq.positions[i];
            for (int j = 0; j < 3; ++j) a(perm[i], perm[j]) = m(i, j);
        }
        s.body.push(gaussian::make_term(1.0, mu, a));
    } while (std::next_permutation(perm.begin(), perm.end()));

    s.norm_constant = 1.0 / std::sqrt(gaussian::integral(gaussian::product(s.body, s.body)));
    return s;
}

HermiteOrbital::HermiteOrbital(int n_) : n(n_) {
    if (n_ < 0) throw std::invalid_argument("orbital quantum number must be >= 0");
}

double HermiteOrbital::operator()(double x) const { return orbital_values(n, x).back(); }

std::vector<double> orbital_values(int n_max, double x) {
    if (n_max < 0) throw std::invalid_argument("orbital quantum number must be >= 0");
    std::vector<double> v(static_cast<std::size_t>(n_max) + 1);
    v[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (n_max == 0) return v;
    v[1] = std::sqrt(2.0) * x * v[0];
    for (int k = 2; k <= n_max; ++k)
        v[k] = x * std::sqrt(2.0 / k) * v[k - 1] - std::sqrt((k - 1.0) / k) * v[k - 2];
    return v;
}

double slater_modulus_g0(double x1, double x2, double x3) {
    const std::array<double, 3> xs = {x1, x2, x3};
    Eigen::Matrix3d m;
    for (int j = 0; j < 3; ++j) {
        const std::vector<double> v = orbital_values(2, xs[j]);
        for (int i = 0; i < 3; ++i) m(i, j) = v[i];
    }
    return std::abs(m.determinant()) / std::sqrt(6.0);
}

}  // namespace triobose::wavefunction
