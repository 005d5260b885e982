#include "triobose/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace triobose::spectral {

namespace {

constexpr double kTailThreshold = 1e-12;
constexpr double kEigFloor = -1e-10;

// Legendre P_n and its derivative at t by the three-term recurrence.
void legendre(int n, double t, double& p, double& dp) {
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = (std::abs(t) < 1.0) ? n * (t * p1 - p0) / (t * t - 1.0) : 0.0;
    if (std::abs(t) < 1e-300) dp = -n * p0;  // limit form at the centre
}

void require_rule(const QuadratureRule& rule) {
    if (rule.nodes.size() < 2 || rule.nodes.size() != rule.weights.size())
        throw std::invalid_argument("quadrature rule is empty or inconsistent");
}

void require_thin_tails(const KernelFn& k, double half_width) {
    const int probes = 81;
    double worst = 0.0;
    for (int i = 0; i < probes; ++i) {
        const double t = -half_width + 2.0 * half_width * i / (probes - 1);
        worst = std::max({worst, std::abs(k(half_width, t)), std::abs(k(-half_width, t))});
    }
    if (worst > kTailThreshold)
        throw std::domain_error("kernel does not vanish on the quadrature window edge");
}

OccupancyReport single_family_report(const SpectralDecomposition& dec, int count) {
    OccupancyReport rep;
    double sum = 0.0, sum_sq = 0.0;
    for (const double v : dec.eigenvalues) {
        sum += v;
        sum_sq += v * v;
    }
    rep.K = 1.0 / sum_sq;
    rep.L = 1.0 - sum_sq;
    rep.conservation_residual = std::abs(sum - 1.0);

    const int keep = std::min<int>(count, static_cast<int>(dec.eigenvalues.size()));
    rep.lambda1.assign(dec.eigenvalues.begin(), dec.eigenvalues.begin() + keep);
    for (int l = 0; l < keep; ++l) rep.merged.push_back({dec.eigenvalues[l], 1, l, 0});
    return rep;
}

}  // namespace

QuadratureRule build_quadrature(double half_width, int n) {
    if (!(half_width > 0.0)) throw std::invalid_argument("quadrature half-width must be > 0");
    if (n < 2) throw std::invalid_argument("quadrature needs at least 2 nodes");

    QuadratureRule r;
    r.half_width = half_width;
    r.nodes.assign(n, 0.0);
    r.weights.assign(n, 0.0);

    for (int i = 0; i < n / 2; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // near +1 for i = 0
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 60; ++it) {
            legendre(n, t, p, dp);
            const double dt = p / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        legendre(n, t, p, dp);
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        r.nodes[n - 1 - i] = half_width * t;
        r.nodes[i] = -half_width * t;
        r.weights[n - 1 - i] = half_width * w;
        r.weights[i] = half_width * w;
    }
    if (n % 2 == 1) {
        double p = 0.0, dp = 1.0;
        legendre(n, 0.0, p, dp);
        r.nodes[n / 2] = 0.0;
        r.weights[n / 2] = half_width * 2.0 / (dp * dp);
    }
    return r;
}

SpectralDecomposition nystrom_eigs(const KernelFn& k, const QuadratureRule& rule, int count) {
    require_rule(rule);
    if (count < 1) throw std::invalid_argument("eigenpair count must be >= 1");
    require_thin_tails(k, rule.half_width);

    const int n = static_cast<int>(rule.nodes.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = std::sqrt(rule.weights[i] * rule.weights[j]) *
                             k(rule.nodes[i], rule.nodes[j]);
            m(i, j) = m(j, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("collocation eigensolve failed to converge");

    SpectralDecomposition dec;
    dec.rule = rule;
    const int keep = std::min(count, n);
    for (int l = 0; l < keep; ++l) {
        const int col = n - 1 - l;  // Eigen sorts ascending
        double lambda = es.eigenvalues()[col];
        if (lambda < 0.0 && lambda >= kEigFloor) lambda = 0.0;
        dec.eigenvalues.push_back(lambda);

        std::vector<double> u(n);
        for (int j = 0; j < n; ++j) u[j] = es.eigenvectors()(j, col) / std::sqrt(rule.weights[j]);
        int peak = 0;
        for (int j = 1; j < n; ++j)
            if (std::abs(u[j]) > std::abs(u[peak])) peak = j;
        if (u[peak] < 0.0)
            for (double& v : u) v = -v;
        dec.eigenfunctions.push_back(std::move(u));
    }
    return dec;
}

SpectralDecomposition nystrom_eigs(const rdm::Kernel& k, const QuadratureRule& rule, int count) {
    return nystrom_eigs([&k](double x, double y) { return k(x, y); }, rule, count);
}

double nystrom_extend(const SpectralDecomposition& dec, const KernelFn& k, int l, double x) {
    if (l < 0 || l >= static_cast<int>(dec.eigenvalues.size()))
        throw std::invalid_argument("eigenfunction index out of range");
    const double lambda = dec.eigenvalues[l];
    if (!(lambda > 1e-12))
        throw std::domain_error("cannot extend an eigenfunction with near-zero eigenvalue");

    double acc = 0.0;
    const auto& u = dec.eigenfunctions[l];
    for (std::size_t j = 0; j < dec.rule.nodes.size(); ++j)
        acc += dec.rule.weights[j] * k(x, dec.rule.nodes[j]) * u[j];
    return acc / lambda;
}

double nystrom_extend(const SpectralDecomposition& dec, const rdm::Kernel& k, int l, double x) {
    return nystrom_extend(dec, [&k](double a, double b) { return k(a, b); }, l, x);
}

OccupancyReport asymptotic_occupancies(int count) {
    return asymptotic_occupancies(count, build_quadrature(8.0, 200));
}

OccupancyReport asymptotic_occupancies(int count, const QuadratureRule& rule) {
    if (count < 1) throw std::invalid_argument("occupancy count must be >= 1");
    const auto [central, side] = rdm::rdm_asymptotic();
    const int n = static_cast<int>(rule.nodes.size());
    const SpectralDecomposition dec1 = nystrom_eigs(central, rule, n);
    const SpectralDecomposition dec2 = nystrom_eigs(side, rule, n);

    double sum = 0.0, sum_sq = 0.0;
    for (const double v : dec1.eigenvalues) {
        sum += v;
        sum_sq += v * v;
    }
    for (const double v : dec2.eigenvalues) {
        sum += 2.0 * v;
        sum_sq += 2.0 * v * v;
    }

    OccupancyReport rep;
    rep.K = 1.0 / sum_sq;
    rep.L = 1.0 - sum_sq;
    rep.conservation_residual = std::abs(sum - 1.0);

    const int keep = std::min(count, n);
    rep.lambda1.assign(dec1.eigenvalues.begin(), dec1.eigenvalues.begin() + keep);
    rep.lambda2.assign(dec2.eigenvalues.begin(), dec2.eigenvalues.begin() + keep);

    std::vector<MergedEntry> all;
    for (int l = 0; l < n; ++l) {
        all.push_back({dec1.eigenvalues[l], 1, l, 0});
        all.push_back({dec2.eigenvalues[l], 2, l, +1});
        all.push_back({dec2.eigenvalues[l], 2, l, -1});
    }
    std::stable_sort(all.begin(), all.end(), [](const MergedEntry& a, const MergedEntry& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.family != b.family) return a.family > b.family;  // side entries first
        if (a.copy != b.copy) return a.copy > b.copy;          // + copy first
        return a.l < b.l;
    });
    const int keep_merged = std::min<int>(count, static_cast<int>(all.size()));
    rep.merged.assign(all.begin(), all.begin() + keep_merged);
    return rep;
}

EtaTauPair eta_tau_basis(const SpectralDecomposition& side_dec, const rdm::Kernel& side_kernel,
                         int l, double x_c, const QuadratureRule& eval_rule) {
    require_rule(eval_rule);
    if (!(x_c > 0.0)) throw std::invalid_argument("site spacing must be > 0");

    const std::size_t n = eval_rule.nodes.size();
    std::vector<double> plus(n), minus(n);
    for (std::size_t j = 0; j < n; ++j) {
        plus[j] = nystrom_extend(side_dec, side_kernel, l, eval_rule.nodes[j] + x_c);
        minus[j] = nystrom_extend(side_dec, side_kernel, l, eval_rule.nodes[j] - x_c);
    }

    double cross = 0.0;
    for (std::size_t j = 0; j < n; ++j) cross += eval_rule.weights[j] * plus[j] * minus[j];
    if (std::abs(cross) >= 1e-8)
        throw std::domain_error("displaced orbital copies overlap too strongly at this spacing");

    EtaTauPair out;
    out.rule = eval_rule;
    out.cross_overlap = cross;
    out.eta.resize(n);
    out.tau.resize(n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < n; ++j) {
        out.eta[j] = (plus[j] + minus[j]) * inv_sqrt2;
        out.tau[j] = (plus[j] - minus[j]) * inv_sqrt2;
    }
    return out;
}

double schmidt_truncation_error(const TrapParams& params, int keep_through) {
    if (!(params.g > 0.0)) throw std::domain_error("coupling g must be > 0");
    if (keep_through < 0) throw std::invalid_argument("truncation rank must be >= 0");

    const auto [central, side] = rdm::rdm_asymptotic();
    const QuadratureRule rule = build_quadrature(8.0, 200);
    const int n = static_cast<int>(rule.nodes.size());
    const SpectralDecomposition dec1 = nystrom_eigs(central, rule, n);
    const SpectralDecomposition dec2 = nystrom_eigs(side, rule, n);

    double residual = 0.0;
    for (int l = keep_through + 1; l < n; ++l)
        residual += dec1.eigenvalues[l] + 2.0 * dec2.eigenvalues[l];
    return residual;
}

OccupancyReport finite_g_occupancies(const TrapParams& params, int count) {
    if (count < 1) throw std::invalid_argument("occupancy count must be >= 1");
    const rdm::Kernel k = rdm::rdm_finite(params);
    const double half_width = equilibrium(params).x_c + 8.0;
    const int n = std::max(200, static_cast<int>(std::ceil(25.0 * half_width)));
    const QuadratureRule rule = build_quadrature(half_width, n);
    const SpectralDecomposition dec = nystrom_eigs(k, rule, n);
    return single_family_report(dec, count);
}

}  // namespace triobose::spectral
