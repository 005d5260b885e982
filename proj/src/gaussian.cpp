#include "triobose/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace triobose::gaussian {

namespace {

constexpr double kSymTol = 1e-14;
constexpr double kPsdFloor = -1e-12;

void check_dims(const Term& t) {
    if (t.a.rows() != t.a.cols() || t.a.rows() != t.mu.size())
        throw std::invalid_argument("gaussian term: matrix/mean dimensions disagree");
}

}  // namespace

Term make_term(double coeff, const Eigen::VectorXd& mu, const Eigen::MatrixXd& a) {
    Term t{coeff, mu, a};
    check_dims(t);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > kSymTol * scale)
        throw std::invalid_argument("gaussian term: precision matrix not symmetric");
    t.a = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.a, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdFloor * scale)
        throw std::invalid_argument("gaussian term: precision matrix not positive semidefinite");
    return t;
}

void Sum::push(Term t) {
    if (t.dim() != dim_) throw std::invalid_argument("gaussian sum: term dimension mismatch");
    terms_.push_back(std::move(t));
}

double evaluate(const Term& t, const Eigen::VectorXd& x) {
    if (x.size() != t.mu.size()) throw std::invalid_argument("gaussian evaluate: wrong point dimension");
    const Eigen::VectorXd d = x - t.mu;
    return t.coeff * std::exp(-d.dot(t.a * d));
}

double evaluate(const Sum& s, const Eigen::VectorXd& x) {
    double v = 0.0;
    for (const auto& t : s.terms()) v += evaluate(t, x);
    return v;
}

Term product(const Term& a, const Term& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("gaussian product: dimension mismatch");
    Term out;
    out.a = a.a + b.a;
    const Eigen::VectorXd rhs = a.a * a.mu + b.a * b.mu;
    // A may be singular along directions absent from both factors; the linear
    // term is always in range(A), so the pseudoinverse solve is exact.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.a);
    const auto& ev = es.eigenvalues();
    const double cutoff = 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
    for (int i = 0; i < ev.size(); ++i)
        if (ev[i] > cutoff) inv[i] = 1.0 / ev[i];
    out.mu = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose() * rhs;
    double c = a.mu.dot(a.a * a.mu) + b.mu.dot(b.a * b.mu) - out.mu.dot(out.a * out.mu);
    if (c < 0.0) c = 0.0;  // exact value is >= 0; clip roundoff
    out.coeff = a.coeff * b.coeff * std::exp(-c);
    return out;
}

Sum product(const Sum& a, const Sum& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("gaussian product: dimension mismatch");
    Sum out(a.dim());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) out.push(product(ta, tb));
    return out;
}

Term marginalize(const Term& t, const std::vector<int>& keep) {
    const int n = t.dim();
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= n) throw std::invalid_argument("marginalize: index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw std::invalid_argument("marginalize: kept indices must be strictly ascending");
    }
    std::vector<int> drop;
    {
        std::vector<bool> kept(n, false);
        for (int k : keep) kept[k] = true;
        for (int i = 0; i < n; ++i)
            if (!kept[i]) drop.push_back(i);
    }
    const int nk = static_cast<int>(keep.size());
    const int nd = static_cast<int>(drop.size());
    if (nd == 0) return t;

    Eigen::MatrixXd akk(nk, nk), akd(nk, nd), add(nd, nd);
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nk; ++j) akk(i, j) = t.a(keep[i], keep[j]);
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nd; ++j) akd(i, j) = t.a(keep[i], drop[j]);
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j) add(i, j) = t.a(drop[i], drop[j]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(add);
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() <= 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff()))
        throw std::domain_error("marginalize: integrated block is not positive definite");

    double logdet = 0.0;
    for (int i = 0; i < nd; ++i) logdet += std::log(ev[i]);
    const Eigen::MatrixXd addinv =
        es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();

    Term out;
    out.coeff = t.coeff * std::exp(0.5 * nd * std::log(M_PI) - 0.5 * logdet);
    Eigen::MatrixXd schur = akk - akd * addinv * akd.transpose();
    out.a = 0.5 * (schur + schur.transpose());
    out.mu.resize(nk);
    for (int i = 0; i < nk; ++i) out.mu[i] = t.mu[keep[i]];
    return out;
}

Sum marginalize(const Sum& s, const std::vector<int>& keep) {
    Sum out(static_cast<int>(keep.size()));
    for (const auto& t : s.terms()) out.push(marginalize(t, keep));
    return out;
}

Term shift(const Term& t, const Eigen::VectorXd& delta) {
    if (delta.size() != t.mu.size()) throw std::invalid_argument("shift: wrong delta dimension");
    Term out = t;
    out.mu += delta;
    return out;
}

Sum shift(const Sum& s, const Eigen::VectorXd& delta) {
    Sum out(s.dim());
    for (const auto& t : s.terms()) out.push(shift(t, delta));
    return out;
}

double integral(const Term& t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.a, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() <= 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff()))
        throw std::domain_error("integral: term is not integrable (flat direction)");
    double logdet = 0.0;
    for (int i = 0; i < ev.size(); ++i) logdet += std::log(ev[i]);
    return t.coeff * std::exp(0.5 * t.dim() * std::log(M_PI) - 0.5 * logdet);
}

double integral(const Sum& s) {
    double v = 0.0;
    for (const auto& t : s.terms()) v += integral(t);
    return v;
}

Term embed(const Term& t, int dim, const std::vector<int>& mapping) {
    if (static_cast<int>(mapping.size()) != t.dim())
        throw std::invalid_argument("embed: mapping size must equal term dimension");
    for (int m : mapping)
        if (m < 0 || m >= dim) throw std::invalid_argument("embed: mapping index out of range");
    Term out;
    out.coeff = t.coeff;
    out.mu = Eigen::VectorXd::Zero(dim);
    out.a = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < t.dim(); ++i) {
        out.mu[mapping[i]] = t.mu[i];
        for (int j = 0; j < t.dim(); ++j) out.a(mapping[i], mapping[j]) = t.a(i, j);
    }
    return out;
}

Sum embed(const Sum& s, int dim, const std::vector<int>& mapping) {
    Sum out(dim);
    for (const auto& t : s.terms()) out.push(embed(t, dim, mapping));
    return out;
}

Sum prune(const Sum& s, double rel_tol) {
    double peak = 0.0;
    for (const auto& t : s.terms()) peak = std::max(peak, std::abs(t.coeff));
    Sum out(s.dim());
    for (const auto& t : s.terms())
        if (std::abs(t.coeff) >= rel_tol * peak) out.push(t);
    return out;
}

}  // namespace triobose::gaussian
