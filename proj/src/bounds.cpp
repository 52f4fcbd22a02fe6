#include "heb/bounds.hpp"

#include "heb/error.hpp"

#include <cmath>

namespace heb {

Integer complexity_bound(int d, int n, int p) {
    if (d < 1 || n < 1 || p < 1) throw Error("H(d, n, p) needs positive d, n, p");
    Integer base = 6 * d - 3, power;
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n + p - 1));
    return Integer(d) * power;
}

ExponentReport holder_exponent(int d, int n, int p) {
    if (d < 1 || n < 1 || p < 1) throw Error("holder_exponent: d, n and p must be positive");
    ExponentReport rep;
    rep.d = d;
    rep.n = n;
    rep.p = p;
    rep.H = complexity_bound(2 * d, n, p);
    rep.alpha = Rational(Integer(2), rep.H);
    rep.alpha.canonicalize();
    if (p > n)
        rep.notes.push_back("p > n: the exponent formula is evaluated although the error bound theorem assumes 1 <= p <= n");
    if (d == 4 && p == 1)
        rep.notes.push_back("d = 4, p = 1: the partition-problem application prints the exponent 1/(8*45^n); "
                            "the general formula 2/H(8, n, 1) gives 1/(4*45^n), which is reported here");
    return rep;
}

double QuadraticBound::value(std::span<const double> x) const {
    Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
    return 0.5 * v.dot(A * v) + b.dot(v) + c0;
}

Eigen::VectorXd QuadraticBound::gradient(std::span<const double> x) const {
    Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
    return A * v + b;
}

QuadraticBound quadratic_bound(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double c0) {
    if (A.rows() != A.cols() || A.rows() != b.size() || A.rows() == 0)
        throw DimensionError("quadratic_bound: A must be square and match b");
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + A.cwiseAbs().maxCoeff()))
        throw Error("quadratic_bound: A is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const double scale = lam.cwiseAbs().maxCoeff();
    if (scale == 0.0) throw Error("quadratic_bound: A is the zero matrix");
    const double cutoff = 1e-10 * scale;

    QuadraticBound qb;
    qb.A = A;
    qb.b = b;
    qb.c0 = c0;
    qb.eigenvalues = lam;
    qb.lambda_min_nonzero = scale;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        if (std::abs(lam(i)) > cutoff) qb.lambda_min_nonzero = std::min(qb.lambda_min_nonzero, std::abs(lam(i)));
    qb.constant = std::sqrt(2.0 * qb.lambda_min_nonzero) / 2.0;

    // Least-squares critical point through the pseudo-inverse.
    const Eigen::MatrixXd& R = eig.eigenvectors();
    Eigen::VectorXd rb = R.transpose() * b;
    Eigen::VectorXd z = Eigen::VectorXd::Zero(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        if (std::abs(lam(i)) > cutoff) z(i) = -rb(i) / lam(i);
    qb.critical_point = R * z;
    const double residual = (A * qb.critical_point + b).norm();
    if (residual > 1e-9 * (1.0 + b.norm()))
        throw Error("quadratic_bound: A x = -b is inconsistent (b has a component outside range(A)), "
                    "so f has no critical point");
    qb.critical_value = qb.value(std::span<const double>(qb.critical_point.data(), static_cast<std::size_t>(qb.critical_point.size())));
    return qb;
}

double stability_radius(std::span<const double> y, double c, const ExponentReport& rep) {
    if (!(c > 0.0)) throw Error("stability_radius: c must be positive");
    double norm = 0.0;
    for (double v : y) {
        if (!std::isfinite(v)) throw Error("stability_radius: y must be finite");
        norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    return c * (std::pow(norm, rep.alpha_value()) + norm);
}

}  // namespace heb
