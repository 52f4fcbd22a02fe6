#pragma once

#include "heb/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heb {

/// Exponent vector of a monomial x^k. Ordered graded-lexicographically:
/// total degree first, then entries lexicographically.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t nvars) : e_(nvars, 0) {}
    ExponentVector(std::initializer_list<int> entries);
    explicit ExponentVector(std::vector<int> entries);

    std::size_t size() const noexcept { return e_.size(); }
    int operator[](std::size_t j) const { return e_[j]; }
    int& operator[](std::size_t j) { return e_[j]; }
    std::span<const int> entries() const noexcept { return e_; }

    int total_degree() const noexcept;
    bool is_origin() const noexcept;
    /// m > 0 when this is m * e_j; zero otherwise.
    int pure_power_of(std::size_t j) const noexcept;

    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
    friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b);

private:
    std::vector<int> e_;
};

std::string to_string(const ExponentVector& e);

/// Sparse multivariate polynomial with exact rational coefficients. No stored
/// coefficient is zero; the zero polynomial has an empty term map.
class Polynomial {
public:
    using TermMap = std::map<ExponentVector, Rational>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t j);

    /// Adds c * x^e, collecting like terms.
    void add_term(const ExponentVector& e, const Rational& c);

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    int degree() const noexcept;
    std::vector<ExponentVector> support() const;
    Rational coefficient(const ExponentVector& e) const;

    Polynomial derivative(std::size_t j) const;
    /// x_j * d/dx_j.
    Polynomial euler_component(std::size_t j) const;

    double evaluate(std::span<const double> x) const;
    Rational evaluate(std::span<const Rational> x) const;
    std::vector<double> gradient(std::span<const double> x) const;

    Polynomial principal_part(const std::set<ExponentVector>& face_support) const;

    /// Human-readable form accepted back by parse_system.
    std::string to_string(const std::vector<std::string>& varnames) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void check_dimension(std::size_t len) const;

    std::size_t nvars_ = 0;
    TermMap terms_;
};

/// Free-function forms of the core operations.
double evaluate(const Polynomial& f, std::span<const double> x);
Rational evaluate(const Polynomial& f, std::span<const Rational> x);
std::vector<double> gradient(const Polynomial& f, std::span<const double> x);
Polynomial principal_part(const Polynomial& f, const std::set<ExponentVector>& face_support);

/// Floating-point copy of a polynomial laid out for fast repeated evaluation.
class CompiledPolynomial {
public:
    CompiledPolynomial() = default;
    explicit CompiledPolynomial(const Polynomial& f);

    std::size_t nvars() const noexcept { return nvars_; }
    double value(std::span<const double> x) const;
    /// Returns f(x) and writes the gradient into grad (size nvars).
    double value_and_gradient(std::span<const double> x, std::span<double> grad) const;

private:
    std::size_t nvars_ = 0;
    int max_exp_ = 0;
    std::vector<double> coef_;
    std::vector<int> exps_;  // row-major, one row per term
};

/// Polynomial map F = (f_1, ..., f_p) over a shared variable roster.
class PolySystem {
public:
    PolySystem(std::vector<std::string> names, std::vector<std::string> varnames,
               std::vector<Polynomial> polys);

    std::size_t n() const noexcept { return varnames_.size(); }
    std::size_t p() const noexcept { return polys_.size(); }
    /// Maximum component degree.
    int d() const noexcept { return d_; }

    const std::vector<Polynomial>& polys() const noexcept { return polys_; }
    const Polynomial& operator[](std::size_t i) const { return polys_[i]; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<std::string>& varnames() const noexcept { return varnames_; }

    /// Throws heb::Error naming the first identically-zero component, if any.
    void require_nonzero_components() const;

    std::string to_string() const;

private:
    std::vector<std::string> names_;
    std::vector<std::string> varnames_;
    std::vector<Polynomial> polys_;
    int d_ = 0;
};

struct ParseOptions {
    std::size_t max_variables = 8;
};

/// Parses the line-oriented system grammar:
///
///   line   := ident "=" expr          (one component per line, '#' starts a comment)
///   expr   := ["+"|"-"] term (("+"|"-") term)*
///   term   := [coeff "*"?] factor ("*"? factor)* | coeff
///   factor := ident ("^" posint)?
///   coeff  := integer | decimal | integer "/" posint
///
/// An optional `vars a, b, c` line fixes the variable order; otherwise variables
/// are numbered by first appearance.
PolySystem parse_system(std::string_view text, const ParseOptions& options = {});

}  // namespace heb
