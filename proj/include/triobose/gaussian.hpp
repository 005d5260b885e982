#pragma once

#include <Eigen/Dense>
#include <vector>

// Exact algebra on finite sums of multivariate Gaussians
//   c * exp(-(x-mu)^T A (x-mu)),  A symmetric positive semidefinite,
// closed under pointwise products and marginalization. All reduced-density
// kernels in this library are produced by this module without quadrature.

namespace triobose::gaussian {

struct Term {
    double coeff = 1.0;
    Eigen::VectorXd mu;
    Eigen::MatrixXd a;  // precision form, symmetric PSD

    int dim() const { return static_cast<int>(mu.size()); }
};

// Validates symmetry (to 1e-14) and positive semidefiniteness (eigenvalues
// >= -1e-12), then stores the symmetrized matrix. Throws std::invalid_argument.
Term make_term(double coeff, const Eigen::VectorXd& mu, const Eigen::MatrixXd& a);

class Sum {
  public:
    explicit Sum(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    void push(Term t);

  private:
    int dim_;
    std::vector<Term> terms_;
};

double evaluate(const Term& t, const Eigen::VectorXd& x);
double evaluate(const Sum& s, const Eigen::VectorXd& x);

// Pointwise product; completing the square keeps the result in closed form.
Term product(const Term& a, const Term& b);
Sum product(const Sum& a, const Sum& b);

// Integrate out the variables NOT in `keep` (indices ascending). The integrated
// block must be positive definite; otherwise std::domain_error (non-integrable).
Term marginalize(const Term& t, const std::vector<int>& keep);
Sum marginalize(const Sum& s, const std::vector<int>& keep);

// Rigid translation of the means.
Term shift(const Term& t, const Eigen::VectorXd& delta);
Sum shift(const Sum& s, const Eigen::VectorXd& delta);

// Integral over all of R^dim.
double integral(const Term& t);
double integral(const Sum& s);

// Re-index into a larger variable space: variable i of t becomes
// mapping[i] of the result; the new variables are absent from the exponent.
Term embed(const Term& t, int dim, const std::vector<int>& mapping);
Sum embed(const Sum& s, int dim, const std::vector<int>& mapping);

// Optional cleanup: drop terms whose peak |coeff| is below rel_tol times the
// largest. Not applied automatically anywhere.
Sum prune(const Sum& s, double rel_tol);

}  // namespace triobose::gaussian
