#pragma once

#include "heb/bounds.hpp"
#include "heb/polysys.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace heb {

using Interval = std::pair<double, double>;

/// Where and how much to sample. rings are sphere radii for the asymptotic probe.
struct SamplePlan {
    std::vector<Interval> box;
    std::size_t count = 2000;
    std::vector<double> rings;
    std::uint64_t seed = 42;
    double boundary_fraction = 0.25;

    /// Throws heb::Error when the plan violates its invariants for dimension n.
    void validate(std::size_t n) const;
};

/// Floating-point copy of a PolySystem for repeated evaluation.
class CompiledSystem {
public:
    explicit CompiledSystem(const PolySystem& system);

    std::size_t n() const noexcept { return n_; }
    std::size_t p() const noexcept { return polys_.size(); }
    void values(std::span<const double> x, std::span<double> out) const;
    /// Values plus the p x n Jacobian, row-major.
    void values_and_jacobian(std::span<const double> x, std::span<double> vals, std::span<double> jac) const;
    /// max(0, max_i f_i(x))
    double residual(std::span<const double> x) const;

private:
    std::size_t n_;
    std::vector<CompiledPolynomial> polys_;
};

/// [f(x)]_+ with f = max_i f_i.
double residual(const PolySystem& system, std::span<const double> x);

struct DistanceConfig {
    std::size_t starts = 32;
    std::vector<double> penalties{1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8};
    double tau_feas = 1e-9;
    /// Region scanned by the feasibility grid; defaults to [-10, 10]^n.
    std::vector<Interval> search_box;
    std::size_t grid_points = 4096;
    std::size_t anchor_candidates = 32;
    std::size_t inner_iterations = 100;
    /// Additional candidate starting points (e.g. known points of S).
    std::vector<std::vector<double>> extra_seeds;
    std::uint64_t seed = 42;
};

struct DistanceResult {
    double distance = 0.0;
    std::vector<double> certificate;  // a feasible point realizing the distance
};

/// Upper-bound estimator of d(x, S) by multi-start penalty descent. The
/// constructor runs the feasibility pre-pass and throws EmptyFeasibleSet when
/// no point of S is found. distance() is safe to call concurrently.
class DistanceOracle {
public:
    DistanceOracle(const PolySystem& system, DistanceConfig cfg = {});

    DistanceResult distance(std::span<const double> x) const;
    const std::vector<std::vector<double>>& anchors() const noexcept { return anchors_; }
    const DistanceConfig& config() const noexcept { return cfg_; }

private:
    std::vector<double> penalty_solve(std::span<const double> x, std::vector<double> start) const;
    std::optional<std::vector<double>> restore(std::vector<double> a) const;
    bool feasible(std::span<const double> a) const;

    CompiledSystem sys_;
    DistanceConfig cfg_;
    std::vector<std::vector<double>> anchors_;
};

DistanceResult distance_to_S(const PolySystem& system, std::span<const double> x, const DistanceConfig& cfg = {});

/// Minimum-norm point of conv(points): value, barycentric weights.
struct MinNormPoint {
    double norm = 0.0;
    std::vector<double> weights;
    std::vector<double> point;
};

/// Wolfe's finite min-norm-point procedure over the convex hull of the given points.
MinNormPoint min_norm_point(const std::vector<std::vector<double>>& points, double tolerance = 1e-12);

struct SlopeResult {
    double value = 0.0;
    std::vector<double> lambda;        // length p, zero off the active set
    std::vector<std::size_t> active;   // indices with f(x) - f_i(x) <= tau_active
};

/// Nonsmooth slope of f = max_i f_i: the minimal norm over convex combinations
/// of active gradients. A negative tau_active selects 1e-8 (1 + |f(x)|).
SlopeResult slope(const PolySystem& system, std::span<const double> x, double tau_active = -1.0);
SlopeResult slope(const CompiledSystem& system, std::span<const double> x, double tau_active = -1.0);

enum class GoodnessTrend { Consistent, Decaying, NotAvailable };

std::string to_string(GoodnessTrend t);

struct RingFloor {
    double radius = 0.0;
    std::optional<double> floor;  // nullopt when no sampled point has f > 0
    std::size_t positive_samples = 0;
};

struct GoodnessProbe {
    std::vector<RingFloor> rings;
    GoodnessTrend trend = GoodnessTrend::NotAvailable;
};

GoodnessProbe probe_goodness(const PolySystem& system, const SamplePlan& plan, unsigned workers = 1);

struct SampleRecord {
    std::vector<double> x;
    double residual = 0.0;
    double distance = 0.0;
    double slope = 0.0;
    /// ([f]_+^alpha + [f]_+) / d(x, S); NaN when d(x, S) <= tau_dist.
    double ratio = 0.0;
};

struct VerificationReport {
    std::vector<SampleRecord> samples;
    double fitted_c = 0.0;          // min ratio over samples with distance > tau_dist
    std::size_t counted = 0;        // samples entering fitted_c
    std::size_t violations = 0;     // counted samples whose ratio is not finite and positive
    Rational alpha_used;
    GoodnessProbe rings;
    std::uint64_t seed = 0;
};

using DistanceFn = std::function<DistanceResult(std::span<const double>)>;

struct VerifyConfig {
    double tau_dist = 1e-6;
    DistanceConfig distance;
    unsigned workers = 1;
    /// Replaces 2/H, e.g. to test a sharper exponent.
    std::optional<Rational> alpha_override;
};

/// Samples the plan and evaluates the error-bound ratio at every point. When
/// `distance` is empty a DistanceOracle is built from cfg.distance.
VerificationReport verify_bound(const PolySystem& system, const ExponentReport& rep, const SamplePlan& plan,
                                const VerifyConfig& cfg = {}, DistanceFn distance = {});

/// The sample points verify_bound would use (exposed for tests).
std::vector<std::vector<double>> plan_samples(const CompiledSystem& system, const SamplePlan& plan,
                                              const DistanceFn& distance);

}  // namespace heb
