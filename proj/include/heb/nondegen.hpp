#pragma once

#include "heb/newton.hpp"
#include "heb/polysys.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace heb {

/// The p x (n+p) polynomial matrix of a face at infinity: column j < n of row i
/// holds x_j * d f_{i,D_i} / d x_j, column n+i holds f_{i,D_i}.
struct MDeltaMatrix {
    std::size_t face_id = 0;
    std::size_t n = 0;
    std::size_t p = 0;
    std::vector<std::vector<Polynomial>> entries;
    std::vector<Rational> weights;           // the face's witness normal q
    std::vector<Rational> weighted_degrees;  // d_i = d(q, G(f_i))
    std::vector<Polynomial> principal_parts;
};

MDeltaMatrix build_m_delta(const PolySystem& system, const FaceAtInfinity& face);

/// Floating-point evaluator for an MDeltaMatrix.
class MDeltaEvaluator {
public:
    explicit MDeltaEvaluator(const MDeltaMatrix& m);

    std::size_t n() const noexcept { return n_; }
    std::size_t p() const noexcept { return p_; }
    Eigen::MatrixXd evaluate(std::span<const double> x) const;
    /// Sum of squared p x p minors, det(M M^T).
    double minor_norm(std::span<const double> x) const;
    /// minor_norm divided by prod_i C_i^2 S_i(x)^2, where C_i^2 is the squared
    /// coefficient mass of row i and S_i(x)^2 the sum of (x^k)^2 over the support of
    /// f_{i,D_i}. Lies in [0, 1], vanishes exactly where rank M < p (a vanishing row
    /// included) and is invariant under the quasi-homogeneous torus action.
    double normalized(std::span<const double> x) const;

private:
    std::size_t n_, p_;
    std::vector<std::vector<CompiledPolynomial>> cells_;
    std::vector<std::vector<bool>> zero_;
    std::vector<double> coef_mass_;
    std::vector<std::vector<std::vector<int>>> monomials_;  // support of f_{i,D_i} per row
};

/// Sum over all p x p minors of minor(x)^2.
double minor_norm_objective(const MDeltaMatrix& m, std::span<const double> x);
double normalized_minor_objective(const MDeltaMatrix& m, std::span<const double> x);

/// Exact rank of M(x) at a rational point.
std::size_t exact_rank(const MDeltaMatrix& m, std::span<const Rational> x);

enum class FaceStatus { NondegenerateProbable, Degenerate, Inconclusive };

std::string to_string(FaceStatus s);

struct CertifyConfig {
    std::size_t samples = 4096;  // per sign orthant
    double tau_zero = 1e-12;     // on the normalized objective
    std::vector<double> tau_axis_schedule{1e-1, 1e-2, 1e-3};
    std::size_t descent_iterations = 200;
    std::size_t multistarts = 16;
    std::uint64_t seed = 42;
    unsigned workers = 1;
};

struct FaceVerdict {
    std::size_t face_id = 0;
    FaceStatus status = FaceStatus::Inconclusive;
    std::optional<std::vector<double>> witness;
    /// Rational rounding of the witness at which M has exact rank < p, when found.
    std::optional<std::vector<Rational>> exact_witness;
    double witness_objective = 0.0;  // normalized objective at the witness
    double objective_min = 0.0;      // over all samples and refinements
    std::vector<double> level_minima;  // one per tau_axis level
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

FaceVerdict certify_face(const MDeltaMatrix& m, const CertifyConfig& cfg);

struct NondegVerdict {
    FaceStatus overall = FaceStatus::NondegenerateProbable;
    bool convenient = false;
    std::vector<ConvenienceReport> convenience;
    std::vector<FaceVerdict> faces;
};

NondegVerdict certify_system(const PolySystem& system, const CertifyConfig& cfg,
                             const FaceEnumerationOptions& options = {});
NondegVerdict certify_system(const PolySystem& system, const SystemNewtonData& newton, const CertifyConfig& cfg);

}  // namespace heb
