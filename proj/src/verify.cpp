#include "heb/verify.hpp"

#include "heb/error.hpp"
#include "heb/parallel.hpp"
#include "heb/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

namespace heb {

void SamplePlan::validate(std::size_t n) const {
    if (count < 1) throw Error("sample plan: count must be at least 1");
    if (box.size() != n) throw DimensionError("sample plan: box has " + std::to_string(box.size()) +
                                              " intervals for " + std::to_string(n) + " variables");
    for (const auto& [lo, hi] : box)
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw Error("sample plan: empty or non-finite box");
    for (std::size_t k = 0; k < rings.size(); ++k) {
        if (!(rings[k] > 0.0)) throw Error("sample plan: ring radii must be positive");
        if (k && !(rings[k] > rings[k - 1])) throw Error("sample plan: ring radii must be strictly increasing");
    }
    if (boundary_fraction < 0.0 || boundary_fraction > 1.0) throw Error("sample plan: boundary fraction outside [0, 1]");
}

CompiledSystem::CompiledSystem(const PolySystem& system) : n_(system.n()) {
    for (const auto& f : system.polys()) polys_.emplace_back(f);
}

void CompiledSystem::values(std::span<const double> x, std::span<double> out) const {
    for (std::size_t i = 0; i < polys_.size(); ++i) out[i] = polys_[i].value(x);
}

void CompiledSystem::values_and_jacobian(std::span<const double> x, std::span<double> vals, std::span<double> jac) const {
    for (std::size_t i = 0; i < polys_.size(); ++i) vals[i] = polys_[i].value_and_gradient(x, jac.subspan(i * n_, n_));
}

double CompiledSystem::residual(std::span<const double> x) const {
    if (x.size() != n_) throw DimensionError("point has the wrong dimension");
    double f = -std::numeric_limits<double>::infinity();
    for (const auto& poly : polys_) f = std::max(f, poly.value(x));
    return std::max(f, 0.0);
}

double residual(const PolySystem& system, std::span<const double> x) {
    if (x.size() != system.n()) throw DimensionError("point has the wrong dimension");
    double f = -std::numeric_limits<double>::infinity();
    for (const auto& poly : system.polys()) f = std::max(f, poly.evaluate(x));
    return std::max(f, 0.0);
}

// ---------------------------------------------------------------------------
// Distance oracle

namespace {

double norm2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
}

/// Quasi-Newton (BFGS) descent with Armijo backtracking.
template <typename Fn>
Eigen::VectorXd bfgs(Fn&& fn, Eigen::VectorXd x, std::size_t iterations) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd g(n), gn(n);
    double fx = fn(x, g);
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
    bool scaled = false;
    for (std::size_t it = 0; it < iterations; ++it) {
        if (!std::isfinite(fx) || g.norm() <= 1e-15 * (1.0 + std::abs(fx))) break;
        Eigen::VectorXd d = -H * g;
        if (d.dot(g) >= 0.0) {
            H.setIdentity();
            d = -g;
        }
        double t = 1.0, fn_val = 0.0;
        Eigen::VectorXd xn;
        bool accepted = false;
        for (int back = 0; back < 60; ++back) {
            xn = x + t * d;
            fn_val = fn(xn, gn);
            if (std::isfinite(fn_val) && fn_val <= fx + 1e-4 * t * g.dot(d)) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
        Eigen::VectorXd s = xn - x, y = gn - g;
        const double sy = s.dot(y);
        if (sy > 1e-300 && sy > 1e-12 * s.norm() * y.norm()) {
            if (!scaled) {
                H *= sy / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
            H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
        }
        const bool tiny = s.norm() <= 1e-16 * (1.0 + x.norm());
        x = xn;
        fx = fn_val;
        g = gn;
        if (tiny) break;
    }
    return x;
}

std::uint64_t hash_point(std::span<const double> x) {
    std::uint64_t h = 0x51ed270b7a1e3c4dULL;
    for (double v : x) h = splitmix64(h ^ std::bit_cast<std::uint64_t>(v));
    return h;
}

}  // namespace

DistanceOracle::DistanceOracle(const PolySystem& system, DistanceConfig cfg) : sys_(system), cfg_(std::move(cfg)) {
    const std::size_t n = sys_.n();
    if (cfg_.search_box.empty()) cfg_.search_box.assign(n, {-10.0, 10.0});
    if (cfg_.search_box.size() != n) throw DimensionError("distance oracle: search box dimension mismatch");
    if (cfg_.penalties.empty()) throw Error("distance oracle: empty penalty schedule");

    // Feasibility pre-pass: a regular grid over the search box, best residuals restored onto S.
    const std::size_t per_axis = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(cfg_.grid_points), 1.0 / static_cast<double>(n)) + 1e-9)));
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= per_axis;
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(total);
    std::vector<double> x(n);
    auto grid_point = [&](std::size_t idx, std::vector<double>& out) {
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t k = idx % per_axis;
            idx /= per_axis;
            const auto [lo, hi] = cfg_.search_box[j];
            out[j] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(per_axis - 1);
        }
    };
    for (std::size_t idx = 0; idx < total; ++idx) {
        grid_point(idx, x);
        scored.emplace_back(sys_.residual(x), idx);
    }
    std::sort(scored.begin(), scored.end());
    std::vector<std::vector<double>> candidates;
    for (std::size_t k = 0; k < std::min(cfg_.anchor_candidates, scored.size()); ++k) {
        grid_point(scored[k].second, x);
        candidates.push_back(x);
    }
    for (const auto& s : cfg_.extra_seeds) {
        if (s.size() != n) throw DimensionError("distance oracle: seed point has the wrong dimension");
        candidates.push_back(s);
    }
    for (auto& c : candidates) {
        auto a = restore(c);
        if (!a) continue;
        bool duplicate = std::any_of(anchors_.begin(), anchors_.end(),
                                     [&](const std::vector<double>& b) { return norm2(*a, b) < 1e-9; });
        if (!duplicate) anchors_.push_back(std::move(*a));
    }
    if (anchors_.empty())
        throw EmptyFeasibleSet("S possibly empty: the feasibility pre-pass found no point with all f_i <= " +
                               std::to_string(cfg_.tau_feas));
}

bool DistanceOracle::feasible(std::span<const double> a) const {
    std::vector<double> vals(sys_.p());
    sys_.values(a, vals);
    return std::all_of(vals.begin(), vals.end(), [&](double v) { return v <= cfg_.tau_feas; });
}

std::optional<std::vector<double>> DistanceOracle::restore(std::vector<double> a) const {
    const std::size_t n = sys_.n(), p = sys_.p();
    std::vector<double> vals(p), jac(p * n);
    for (int it = 0; it < 200; ++it) {
        sys_.values_and_jacobian(a, vals, jac);
        std::vector<std::size_t> viol;
        for (std::size_t i = 0; i < p; ++i)
            if (vals[i] > 0.0) viol.push_back(i);
        if (std::all_of(vals.begin(), vals.end(), [&](double v) { return v <= cfg_.tau_feas; })) return a;
        // Minimum-norm Gauss-Newton step driving the violated constraints to zero.
        Eigen::MatrixXd J(static_cast<Eigen::Index>(viol.size()), static_cast<Eigen::Index>(n));
        Eigen::VectorXd r(static_cast<Eigen::Index>(viol.size()));
        for (std::size_t k = 0; k < viol.size(); ++k) {
            r(static_cast<Eigen::Index>(k)) = vals[viol[k]];
            for (std::size_t j = 0; j < n; ++j) J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = jac[viol[k] * n + j];
        }
        Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(r);
        if (!step.allFinite() || step.norm() == 0.0) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) a[j] -= step(static_cast<Eigen::Index>(j));
    }
    return std::nullopt;
}

std::vector<double> DistanceOracle::penalty_solve(std::span<const double> x, std::vector<double> start) const {
    const std::size_t n = sys_.n(), p = sys_.p();
    Eigen::Map<const Eigen::VectorXd> target(x.data(), static_cast<Eigen::Index>(n));
    Eigen::VectorXd a = Eigen::Map<Eigen::VectorXd>(start.data(), static_cast<Eigen::Index>(n));
    std::vector<double> vals(p), jac(p * n);
    for (double mu : cfg_.penalties) {
        auto phi = [&](const Eigen::VectorXd& v, Eigen::VectorXd& grad) {
            sys_.values_and_jacobian(std::span<const double>(v.data(), n), vals, jac);
            grad = 2.0 * (v - target);
            double value = (v - target).squaredNorm();
            for (std::size_t i = 0; i < p; ++i) {
                if (vals[i] <= 0.0) continue;
                value += mu * vals[i] * vals[i];
                for (std::size_t j = 0; j < n; ++j) grad(static_cast<Eigen::Index>(j)) += 2.0 * mu * vals[i] * jac[i * n + j];
            }
            return value;
        };
        a = bfgs(phi, a, cfg_.inner_iterations);
    }
    return std::vector<double>(a.data(), a.data() + n);
}

DistanceResult DistanceOracle::distance(std::span<const double> x) const {
    const std::size_t n = sys_.n();
    if (x.size() != n) throw DimensionError("distance: point has the wrong dimension");
    std::vector<double> xv(x.begin(), x.end());
    if (feasible(x)) return {0.0, xv};

    // Nearest anchors give the initial upper bound.
    std::vector<std::pair<double, std::size_t>> near;
    for (std::size_t k = 0; k < anchors_.size(); ++k) near.emplace_back(norm2(x, anchors_[k]), k);
    std::sort(near.begin(), near.end());
    DistanceResult best{near.front().first, anchors_[near.front().second]};

    // Deterministic start sequence; a larger budget extends it, never reorders it.
    std::vector<std::vector<double>> starts;
    starts.push_back(xv);
    for (std::size_t k = 0; k < std::min<std::size_t>(near.size(), 8); ++k) {
        const auto& anchor = anchors_[near[k].second];
        starts.push_back(anchor);
        std::vector<double> mid(n);
        for (std::size_t j = 0; j < n; ++j) mid[j] = 0.5 * (xv[j] + anchor[j]);
        starts.push_back(std::move(mid));
    }
    auto rng = stream_rng(cfg_.seed, {hash_point(x)});
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double scale = best.distance;
    while (starts.size() < cfg_.starts) {
        std::vector<double> s(n);
        const double r = scale * unit(rng) / std::sqrt(static_cast<double>(n));
        for (std::size_t j = 0; j < n; ++j) s[j] = xv[j] + r * gauss(rng);
        starts.push_back(std::move(s));
    }
    starts.resize(std::min(starts.size(), cfg_.starts));

    for (auto& s : starts) {
        auto a = restore(penalty_solve(x, std::move(s)));
        if (!a) continue;
        const double d = norm2(x, *a);
        if (d < best.distance) best = {d, std::move(*a)};
    }
    return best;
}

DistanceResult distance_to_S(const PolySystem& system, std::span<const double> x, const DistanceConfig& cfg) {
    return DistanceOracle(system, cfg).distance(x);
}

// ---------------------------------------------------------------------------
// Slope

MinNormPoint min_norm_point(const std::vector<std::vector<double>>& points, double tolerance) {
    if (points.empty()) throw Error("min_norm_point: no points");
    const std::size_t m = points.size(), n = points.front().size();
    Eigen::MatrixXd P(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        if (points[i].size() != n) throw DimensionError("min_norm_point: ragged point list");
        for (std::size_t j = 0; j < n; ++j) P(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = points[i][j];
    }
    const double scale = std::max(P.colwise().squaredNorm().maxCoeff(), 1e-300);

    Eigen::Index start;
    P.colwise().squaredNorm().minCoeff(&start);
    std::vector<Eigen::Index> corral{start};
    std::vector<double> w{1.0};
    Eigen::VectorXd x = P.col(start);

    auto combine = [&](const std::vector<double>& weights) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < corral.size(); ++k) out += weights[k] * P.col(corral[k]);
        return out;
    };

    for (int major = 0; major < 1000; ++major) {
        Eigen::Index j;
        (P.transpose() * x).minCoeff(&j);
        if (x.squaredNorm() - x.dot(P.col(j)) <= tolerance * scale) break;
        if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
        corral.push_back(j);
        w.push_back(0.0);
        for (int minor = 0; minor < 1000; ++minor) {
            // Affine minimizer over the corral: [G 1; 1^T 0][v; mu] = [0; 1].
            const Eigen::Index k = static_cast<Eigen::Index>(corral.size());
            Eigen::MatrixXd K = Eigen::MatrixXd::Zero(k + 1, k + 1);
            for (Eigen::Index a = 0; a < k; ++a) {
                for (Eigen::Index b = 0; b < k; ++b) K(a, b) = P.col(corral[a]).dot(P.col(corral[b]));
                K(a, k) = K(k, a) = 1.0;
            }
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
            rhs(k) = 1.0;
            Eigen::VectorXd sol = K.completeOrthogonalDecomposition().solve(rhs);
            std::vector<double> v(sol.data(), sol.data() + k);
            if (std::all_of(v.begin(), v.end(), [](double t) { return t > 1e-15; })) {
                w = v;
                x = combine(w);
                break;
            }
            double theta = 1.0;
            for (std::size_t a = 0; a < v.size(); ++a)
                if (v[a] <= 1e-15) theta = std::min(theta, w[a] / (w[a] - v[a]));
            for (std::size_t a = 0; a < w.size(); ++a) w[a] = (1.0 - theta) * w[a] + theta * v[a];
            // Drop the points whose weight reached zero.
            std::vector<Eigen::Index> keep_idx;
            std::vector<double> keep_w;
            for (std::size_t a = 0; a < w.size(); ++a)
                if (w[a] > 1e-15) {
                    keep_idx.push_back(corral[a]);
                    keep_w.push_back(w[a]);
                }
            if (keep_idx.empty()) {
                keep_idx.push_back(corral.back());
                keep_w.push_back(1.0);
            }
            const double total = std::accumulate(keep_w.begin(), keep_w.end(), 0.0);
            for (auto& t : keep_w) t /= total;
            corral = std::move(keep_idx);
            w = std::move(keep_w);
            x = combine(w);
        }
    }

    MinNormPoint out;
    out.weights.assign(m, 0.0);
    for (std::size_t k = 0; k < corral.size(); ++k) out.weights[static_cast<std::size_t>(corral[k])] += w[k];
    out.point.assign(x.data(), x.data() + n);
    out.norm = x.norm();
    return out;
}

SlopeResult slope(const CompiledSystem& system, std::span<const double> x, double tau_active) {
    const std::size_t n = system.n(), p = system.p();
    if (x.size() != n) throw DimensionError("slope: point has the wrong dimension");
    std::vector<double> vals(p), jac(p * n);
    system.values_and_jacobian(x, vals, jac);
    const double fmax = *std::max_element(vals.begin(), vals.end());
    if (tau_active < 0.0) tau_active = 1e-8 * (1.0 + std::abs(fmax));
    SlopeResult out;
    std::vector<std::vector<double>> grads;
    for (std::size_t i = 0; i < p; ++i) {
        if (fmax - vals[i] > tau_active) continue;
        out.active.push_back(i);
        grads.emplace_back(jac.begin() + static_cast<std::ptrdiff_t>(i * n), jac.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
    }
    if (grads.size() == 1) {
        // Singleton simplex: the slope is the gradient norm itself.
        double s = 0.0;
        for (double g : grads.front()) s += g * g;
        out.value = std::sqrt(s);
        out.lambda.assign(p, 0.0);
        out.lambda[out.active.front()] = 1.0;
        return out;
    }
    MinNormPoint mnp = min_norm_point(grads);
    out.value = mnp.norm;
    out.lambda.assign(p, 0.0);
    for (std::size_t k = 0; k < out.active.size(); ++k) out.lambda[out.active[k]] = mnp.weights[k];
    return out;
}

SlopeResult slope(const PolySystem& system, std::span<const double> x, double tau_active) {
    return slope(CompiledSystem(system), x, tau_active);
}

// ---------------------------------------------------------------------------
// Goodness at infinity

std::string to_string(GoodnessTrend t) {
    switch (t) {
        case GoodnessTrend::Consistent: return "consistent";
        case GoodnessTrend::Decaying: return "decaying";
        case GoodnessTrend::NotAvailable: return "n/a";
    }
    return "n/a";
}

namespace {

/// Local minimization of log(slope) over the sphere of radius R inside {f > 0}.
std::pair<double, std::vector<double>> refine_on_sphere(const CompiledSystem& sys, std::vector<double> x, double R) {
    const std::size_t n = x.size();
    auto project = [&](std::vector<double>& v) {
        double s = 0.0;
        for (double t : v) s += t * t;
        s = std::sqrt(s);
        for (double& t : v) t *= R / s;
    };
    auto objective = [&](const std::vector<double>& v) {
        if (sys.residual(v) <= 0.0) return std::numeric_limits<double>::infinity();
        double s = slope(sys, v).value;
        return s > 0.0 ? std::log(s) : -std::numeric_limits<double>::infinity();
    };
    double fx = objective(x);
    double step = 1e-2 * R;
    std::vector<double> grad(n), trial(n);
    for (int it = 0; it < 150 && std::isfinite(fx) && step > 1e-15 * R; ++it) {
        const double h = 1e-9 * R;
        for (std::size_t j = 0; j < n; ++j) {
            trial = x;
            trial[j] += h;
            double fu = objective(trial);
            trial[j] -= 2 * h;
            double fd = objective(trial);
            grad[j] = (std::isfinite(fu) && std::isfinite(fd)) ? (fu - fd) / (2 * h) : 0.0;
        }
        // Tangential component only.
        double radial = 0.0;
        for (std::size_t j = 0; j < n; ++j) radial += grad[j] * x[j] / (R * R);
        double gn = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            grad[j] -= radial * x[j];
            gn += grad[j] * grad[j];
        }
        gn = std::sqrt(gn);
        if (gn == 0.0) break;
        for (std::size_t j = 0; j < n; ++j) trial[j] = x[j] - step * grad[j] / gn;
        project(trial);
        double ft = objective(trial);
        if (ft < fx) {
            x = trial;
            fx = ft;
            step *= 2.0;
        } else {
            step *= 0.5;
        }
    }
    return {std::exp(fx), x};
}

}  // namespace

GoodnessProbe probe_goodness(const PolySystem& system, const SamplePlan& plan, unsigned workers) {
    if (plan.rings.empty()) throw Error("probe_goodness: the sample plan has no rings");
    for (std::size_t k = 0; k < plan.rings.size(); ++k)
        if (!(plan.rings[k] > 0.0) || (k && !(plan.rings[k] > plan.rings[k - 1])))
            throw Error("probe_goodness: ring radii must be positive and strictly increasing");
    const CompiledSystem sys(system);
    const std::size_t n = sys.n();
    GoodnessProbe probe;
    for (std::size_t k = 0; k < plan.rings.size(); ++k) {
        const double R = plan.rings[k];
        std::vector<double> slopes(plan.count, std::numeric_limits<double>::infinity());
        std::vector<std::vector<double>> points(plan.count);
        parallel_for(plan.count, workers, [&](std::size_t i) {
            auto rng = stream_rng(plan.seed, {0x7269ULL, k, i});
            std::normal_distribution<double> gauss;
            std::vector<double> x(n);
            double s = 0.0;
            for (auto& v : x) {
                v = gauss(rng);
                s += v * v;
            }
            s = std::sqrt(s);
            for (auto& v : x) v *= R / s;
            points[i] = x;
            if (sys.residual(x) > 0.0) slopes[i] = slope(sys, x).value;
        });
        RingFloor ring;
        ring.radius = R;
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < plan.count; ++i)
            if (std::isfinite(slopes[i])) order.push_back(i);
        ring.positive_samples = order.size();
        if (!order.empty()) {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return slopes[a] != slopes[b] ? slopes[a] < slopes[b] : a < b;
            });
            const std::size_t starts = std::min<std::size_t>(order.size(), 8);
            std::vector<double> refined(starts);
            parallel_for(starts, workers, [&](std::size_t s) {
                refined[s] = refine_on_sphere(sys, points[order[s]], R).first;
            });
            double floor = slopes[order.front()];
            for (double v : refined) floor = std::min(floor, v);
            ring.floor = floor;
        }
        probe.rings.push_back(ring);
    }

    std::vector<double> floors;
    for (const auto& r : probe.rings)
        if (r.floor) floors.push_back(*r.floor);
    if (floors.size() < 2 || floors.size() != probe.rings.size()) {
        probe.trend = GoodnessTrend::NotAvailable;
    } else {
        bool decreasing = true;
        for (std::size_t k = 1; k < floors.size(); ++k)
            if (!(floors[k] < floors[k - 1])) decreasing = false;
        probe.trend = (decreasing && floors.back() <= 0.5 * floors.front()) ? GoodnessTrend::Decaying
                                                                           : GoodnessTrend::Consistent;
    }
    return probe;
}

// ---------------------------------------------------------------------------
// Bound verification

std::vector<std::vector<double>> plan_samples(const CompiledSystem& system, const SamplePlan& plan,
                                              const DistanceFn& distance) {
    const std::size_t n = system.n();
    plan.validate(n);
    std::vector<std::vector<double>> out(plan.count);
    for (std::size_t i = 0; i < plan.count; ++i) {
        auto rng = stream_rng(plan.seed, {0x76657269ULL, i});
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        // Orthant stratification: bit j of the stratum picks the half of a box side straddling zero.
        const std::size_t stratum = i % (std::size_t{1} << std::min<std::size_t>(n, 20));
        std::vector<double> y(n);
        for (std::size_t j = 0; j < n; ++j) {
            auto [lo, hi] = plan.box[j];
            if (lo < 0.0 && hi > 0.0) {
                if ((stratum >> j) & 1U)
                    lo = 0.0;
                else
                    hi = 0.0;
            }
            y[j] = lo + (hi - lo) * unit(rng);
        }
        const bool boundary = std::floor(static_cast<double>(i + 1) * plan.boundary_fraction) >
                              std::floor(static_cast<double>(i) * plan.boundary_fraction);
        if (boundary && distance && system.residual(y) > 0.0) {
            // Pull the point toward S: bisect the segment from its certificate to y for
            // the boundary crossing, then step slightly outward.
            const std::vector<double> a = distance(y).certificate;
            auto at = [&](double t) {
                std::vector<double> z(n);
                for (std::size_t j = 0; j < n; ++j) z[j] = a[j] + t * (y[j] - a[j]);
                return z;
            };
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                (system.residual(at(mid)) > 0.0 ? hi : lo) = mid;
            }
            const double eps = std::pow(10.0, -4.0 + 3.0 * unit(rng));
            y = at(hi + eps * (1.0 - hi));
        }
        out[i] = std::move(y);
    }
    return out;
}

VerificationReport verify_bound(const PolySystem& system, const ExponentReport& rep, const SamplePlan& plan,
                                const VerifyConfig& cfg, DistanceFn distance) {
    const std::size_t n = system.n();
    plan.validate(n);
    const CompiledSystem sys(system);
    std::shared_ptr<DistanceOracle> oracle;
    if (!distance) {
        oracle = std::make_shared<DistanceOracle>(system, cfg.distance);
        distance = [oracle](std::span<const double> x) { return oracle->distance(x); };
    }

    VerificationReport report;
    report.seed = plan.seed;
    report.alpha_used = cfg.alpha_override ? *cfg.alpha_override : rep.alpha;
    const double alpha = report.alpha_used.get_d();

    const auto points = plan_samples(sys, plan, distance);
    report.samples.resize(points.size());
    parallel_for(points.size(), cfg.workers, [&](std::size_t i) {
        SampleRecord rec;
        rec.x = points[i];
        rec.residual = sys.residual(rec.x);
        rec.distance = distance(rec.x).distance;
        rec.slope = slope(sys, rec.x).value;
        const double numerator = rec.residual > 0.0 ? std::pow(rec.residual, alpha) + rec.residual : 0.0;
        rec.ratio = rec.distance > cfg.tau_dist ? numerator / rec.distance : std::numeric_limits<double>::quiet_NaN();
        report.samples[i] = std::move(rec);
    });

    report.fitted_c = std::numeric_limits<double>::infinity();
    for (const auto& rec : report.samples) {
        if (!(rec.distance > cfg.tau_dist)) continue;
        ++report.counted;
        if (!(std::isfinite(rec.ratio) && rec.ratio > 0.0)) ++report.violations;
        report.fitted_c = std::min(report.fitted_c, rec.ratio);
    }
    if (report.violations > 0) report.fitted_c = 0.0;
    if (!plan.rings.empty()) report.rings = probe_goodness(system, plan, cfg.workers);
    return report;
}

}  // namespace heb
