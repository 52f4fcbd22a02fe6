#pragma once

#include "heb/rational.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace heb {

/// Exponents of the global Hölder error bound
///   c d(x, S) <= [f]_+^alpha + [f]_+^beta,  alpha = 2 / H(2d, n, p),  beta = 1,
/// with H(d, n, p) = d (6d - 3)^(n + p - 1).
struct ExponentReport {
    int d = 0, n = 0, p = 0;
    Integer H;
    Rational alpha;
    Rational beta{1};
    bool assumed_convenient = false;
    bool assumed_nondegenerate = false;
    std::vector<std::string> notes;

    double alpha_value() const { return alpha.get_d(); }
};

/// H(d, n, p) = d (6d - 3)^(n + p - 1), exact.
Integer complexity_bound(int d, int n, int p);

ExponentReport holder_exponent(int d, int n, int p);

/// Single quadratic f(x) = 1/2 x^T A x + b^T x + c0 and the constant of the
/// square-root error bound around a critical point.
struct QuadraticBound {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    double c0 = 0.0;
    Eigen::VectorXd eigenvalues;
    double lambda_min_nonzero = 0.0;  // lambda(A)
    double constant = 0.0;            // sqrt(2 lambda(A)) / 2
    Eigen::VectorXd critical_point;   // A x + b = 0
    double critical_value = 0.0;      // f(critical_point)

    double value(std::span<const double> x) const;
    Eigen::VectorXd gradient(std::span<const double> x) const;
};

QuadraticBound quadratic_bound(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double c0);

/// Radius c (|y|^alpha + |y|) of the ball by which S(0) must be inflated to cover S(y).
double stability_radius(std::span<const double> y, double c, const ExponentReport& rep);

}  // namespace heb
