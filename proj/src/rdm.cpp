#include "triobose/rdm.hpp"

#include "triobose/wavefunction.hpp"

#include <cmath>
#include <stdexcept>

namespace triobose::rdm {

namespace {

// Marginal of t_a(x,z1,z2) * t_b(y,z1,z2) over the two shared coordinates.
// slot_of_x selects which argument of the three-body factor carries the kept
// coordinate; the other two slots are integrated out.
gaussian::Term traced_pair(const gaussian::Term& ta, const gaussian::Term& tb, int slot_of_x) {
    std::vector<int> map_a(3), map_b(3);
    int z = 2;
    for (int s = 0; s < 3; ++s) {
        if (s == slot_of_x) {
            map_a[s] = 0;
            map_b[s] = 1;
        } else {
            map_a[s] = z;
            map_b[s] = z;
            ++z;
        }
    }
    const gaussian::Term four =
        gaussian::product(gaussian::embed(ta, 4, map_a), gaussian::embed(tb, 4, map_b));
    return gaussian::marginalize(four, {0, 1});
}

}  // namespace

Kernel rdm_finite(const TrapParams& params) {
    const wavefunction::SymmetrizedState psi = wavefunction::symmetrize(params);
    const double scale = psi.norm_constant * psi.norm_constant;

    Kernel k;
    k.label = KernelLabel::finite_g;
    for (const auto& ta : psi.body.terms()) {
        for (const auto& tb : psi.body.terms()) {
            // Coordinates here are particle labels, so the kept particle is
            // always the first argument of both factors.
            gaussian::Term t = traced_pair(ta, tb, 0);
            t.coeff *= scale;
            k.body.push(t);
        }
    }
    return k;
}

std::pair<Kernel, Kernel> rdm_asymptotic() {
    // In the strong-repulsion limit only same-ordering pairs survive, and the
    // centered marginal depends only on which site the kept particle occupies.
    // Each site collects two identical spectator orderings, hence the factor
    // 2 on the squared limiting normalization.
    const AnsatzParams ap = ansatz_params();
    const double a_inf = 2.0 * ap.c_infinity * ap.c_infinity;
    const wavefunction::AnsatzState ansatz = wavefunction::build_ansatz();
    const gaussian::Term& base = ansatz.body.terms()[0];

    auto site_kernel = [&](int slot, KernelLabel label) {
        gaussian::Term t = traced_pair(base, base, slot);
        t.coeff *= a_inf;
        Kernel k;
        k.label = label;
        k.body.push(t);
        return k;
    };
    return {site_kernel(1, KernelLabel::rho1), site_kernel(0, KernelLabel::rho_tilde)};
}

Kernel assemble_asymptotic_total(const TrapParams& params) {
    const EquilibriumGeometry eq = equilibrium(params);
    auto [central, side] = rdm_asymptotic();

    Kernel k;
    k.label = KernelLabel::asymptotic_total;
    k.body.push(central.body.terms()[0]);
    Eigen::VectorXd d(2);
    d << eq.x_c, eq.x_c;
    k.body.push(gaussian::shift(side.body.terms()[0], d));
    k.body.push(gaussian::shift(side.body.terms()[0], -d));
    return k;
}

double trace(const Kernel& k) {
    // Restrict each term to the diagonal line x = y and integrate: the
    // exponent becomes a*x^2 - 2*b*x + c with a = 1'A1, b = 1'A mu.
    double total = 0.0;
    for (const auto& t : k.body.terms()) {
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
        const double a = ones.dot(t.a * ones);
        if (!(a > 0.0)) throw std::domain_error("kernel diagonal is not integrable");
        const double b = ones.dot(t.a * t.mu);
        const double c = t.mu.dot(t.a * t.mu);
        total += t.coeff * std::exp(b * b / a - c) * std::sqrt(M_PI / a);
    }
    return total;
}

double purity(const Kernel& k) { return gaussian::integral(gaussian::product(k.body, k.body)); }

DensityProfile density(const Kernel& k, const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("density grid needs at least two points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("density grid must be strictly increasing");

    DensityProfile p;
    p.grid = grid;
    p.values.reserve(grid.size());
    for (const double x : grid) p.values.push_back(3.0 * k(x, x));
    return p;
}

CorrelationMeasure degree_of_correlation(const Kernel& k) {
    const double tr = trace(k);
    if (std::abs(tr - 1.0) > 1e-8)
        throw std::domain_error("degree of correlation requires a unit-trace kernel");
    const double kk = 1.0 / purity(k);
    return {kk, 1.0 - 1.0 / kk};
}

}  // namespace triobose::rdm
