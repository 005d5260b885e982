#pragma once

// Independent numerical routes used to validate library results. Nothing here
// calls the code under test: quadrature nodes come from the Golub-Welsch
// eigenvalue method (the library uses Newton iteration), and the closed-form
// spectrum of a single Gaussian kernel comes from the Mehler expansion.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

struct Rule1D {
    std::vector<double> x, w;
};

// Gauss-Legendre on [-1,1] via the symmetric tridiagonal Jacobi matrix.
inline Rule1D golub_welsch(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        j(k, k - 1) = j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    Rule1D r;
    for (int i = 0; i < n; ++i) {
        r.x.push_back(es.eigenvalues()[i]);
        const double v = es.eigenvectors()(0, i);
        r.w.push_back(2.0 * v * v);
    }
    return r;
}

inline Rule1D mapped(const Rule1D& ref, double lo, double hi) {
    Rule1D r;
    for (std::size_t i = 0; i < ref.x.size(); ++i) {
        r.x.push_back(0.5 * (hi - lo) * ref.x[i] + 0.5 * (hi + lo));
        r.w.push_back(0.5 * (hi - lo) * ref.w[i]);
    }
    return r;
}

// Tensor-product integration of f over a box in up to 4 dimensions.
inline double integrate_box(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, int n_per_axis) {
    const int dim = static_cast<int>(lo.size());
    const Rule1D ref = golub_welsch(n_per_axis);
    std::vector<Rule1D> ax;
    for (int d = 0; d < dim; ++d) ax.push_back(mapped(ref, lo[d], hi[d]));

    Eigen::VectorXd pt(dim);
    std::function<double(int)> rec = [&](int d) -> double {
        double acc = 0.0;
        for (int i = 0; i < n_per_axis; ++i) {
            pt[d] = ax[d].x[i];
            acc += ax[d].w[i] * (d + 1 == dim ? f(pt) : rec(d + 1));
        }
        return acc;
    };
    return rec(0);
}

// Eigenvalues of the kernel c*exp(-p(x^2+y^2)+q*x*y) on L^2(R):
// lambda_l = c*sqrt(pi/(p+nu)) * t^l with nu = sqrt(p^2-(q/2)^2), t = (q/2)/(p+nu).
inline double mehler_eig(double c, double p, double q, int l) {
    const double nu = std::sqrt(p * p - 0.25 * q * q);
    const double t = 0.5 * q / (p + nu);
    return c * std::sqrt(M_PI / (p + nu)) * std::pow(t, l);
}

}  // namespace oracle
