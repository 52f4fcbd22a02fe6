#include "heb/nondegen.hpp"

#include "heb/error.hpp"
#include "heb/parallel.hpp"
#include "heb/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace heb {

MDeltaMatrix build_m_delta(const PolySystem& system, const FaceAtInfinity& face) {
    if (!face.decomposition) throw Error("face " + std::to_string(face.id) + " carries no decomposition");
    const auto& parts = *face.decomposition;
    if (parts.size() != system.p())
        throw Error("face " + std::to_string(face.id) + ": decomposition has the wrong number of components");
    const std::size_t n = system.n(), p = system.p();

    MDeltaMatrix m;
    m.face_id = face.id;
    m.n = n;
    m.p = p;
    m.weights = face.witness_normal;
    m.entries.assign(p, std::vector<Polynomial>(n + p, Polynomial(n)));
    for (std::size_t i = 0; i < p; ++i) {
        std::set<ExponentVector> support(parts[i].begin(), parts[i].end());
        Polynomial principal = system[i].principal_part(support);
        for (std::size_t j = 0; j < n; ++j) m.entries[i][j] = principal.euler_component(j);
        m.entries[i][n + i] = principal;
        Rational d = 0;
        if (!parts[i].empty()) {
            for (std::size_t j = 0; j < n; ++j) d += m.weights[j] * parts[i].front()[j];
        }
        m.weighted_degrees.push_back(d);
        m.principal_parts.push_back(std::move(principal));
    }
    return m;
}

MDeltaEvaluator::MDeltaEvaluator(const MDeltaMatrix& m) : n_(m.n), p_(m.p) {
    cells_.resize(p_);
    zero_.resize(p_);
    for (std::size_t i = 0; i < p_; ++i)
        for (std::size_t j = 0; j < n_ + p_; ++j) {
            cells_[i].emplace_back(m.entries[i][j]);
            zero_[i].push_back(m.entries[i][j].is_zero());
        }
    coef_mass_.assign(p_, 0.0);
    monomials_.resize(p_);
    for (std::size_t i = 0; i < p_; ++i) {
        for (std::size_t j = 0; j < n_ + p_; ++j)
            for (const auto& [e, c] : m.entries[i][j].terms()) coef_mass_[i] += c.get_d() * c.get_d();
        for (const auto& e : m.principal_parts[i].support()) monomials_[i].emplace_back(e.entries().begin(), e.entries().end());
    }
}

Eigen::MatrixXd MDeltaEvaluator::evaluate(std::span<const double> x) const {
    if (x.size() != n_) throw DimensionError("M_Delta evaluation point has the wrong dimension");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p_), static_cast<Eigen::Index>(n_ + p_));
    for (std::size_t i = 0; i < p_; ++i)
        for (std::size_t j = 0; j < n_ + p_; ++j)
            if (!zero_[i][j]) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cells_[i][j].value(x);
    return out;
}

namespace {

// |det R|^2 from a Householder QR of M^T; equals det(M M^T) by Cauchy-Binet.
double gram_determinant(const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m.transpose());
    const Eigen::MatrixXd& r = qr.matrixQR();
    double det = 1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) det *= r(i, i) * r(i, i);
    return det;
}

}  // namespace

double MDeltaEvaluator::minor_norm(std::span<const double> x) const { return gram_determinant(evaluate(x)); }

double MDeltaEvaluator::normalized(std::span<const double> x) const {
    Eigen::MatrixXd m = evaluate(x);
    std::vector<double> logs;
    for (std::size_t i = 0; i < p_; ++i) {
        // Row i is quasi-homogeneous of the same weighted degree as every monomial of
        // f_{i,D_i}, so |row| / (C_i |monomials|) is constant on torus orbits and at most 1.
        logs.clear();
        for (const auto& k : monomials_[i]) {
            double l = 0.0;
            for (std::size_t j = 0; j < n_; ++j)
                if (k[j]) l += k[j] * std::log(std::abs(x[j]));
            logs.push_back(l);
        }
        if (logs.empty() || coef_mass_[i] == 0.0) return 0.0;
        const double top = *std::max_element(logs.begin(), logs.end());
        double sum = 0.0;
        for (double l : logs) sum += std::exp(2.0 * (l - top));
        const double log_scale = top + 0.5 * std::log(sum) + 0.5 * std::log(coef_mass_[i]);
        if (!std::isfinite(log_scale)) return 0.0;
        m.row(static_cast<Eigen::Index>(i)) *= std::exp(-log_scale);
    }
    return gram_determinant(m);
}

double minor_norm_objective(const MDeltaMatrix& m, std::span<const double> x) {
    return MDeltaEvaluator(m).minor_norm(x);
}

double normalized_minor_objective(const MDeltaMatrix& m, std::span<const double> x) {
    return MDeltaEvaluator(m).normalized(x);
}

std::size_t exact_rank(const MDeltaMatrix& m, std::span<const Rational> x) {
    std::vector<std::vector<Rational>> a(m.p, std::vector<Rational>(m.n + m.p));
    for (std::size_t i = 0; i < m.p; ++i)
        for (std::size_t j = 0; j < m.n + m.p; ++j) a[i][j] = m.entries[i][j].evaluate(x);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.n + m.p && rank < m.p; ++c) {
        std::size_t sel = rank;
        while (sel < m.p && a[sel][c] == 0) ++sel;
        if (sel == m.p) continue;
        std::swap(a[rank], a[sel]);
        for (std::size_t i = rank + 1; i < m.p; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[rank][c];
            for (std::size_t k = c; k < m.n + m.p; ++k) a[i][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::string to_string(FaceStatus s) {
    switch (s) {
        case FaceStatus::NondegenerateProbable: return "nondegenerate_probable";
        case FaceStatus::Degenerate: return "degenerate";
        case FaceStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

struct Candidate {
    double value;
    std::size_t orthant;
    std::size_t index;
    std::vector<double> x;

    friend bool operator<(const Candidate& a, const Candidate& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.orthant != b.orthant) return a.orthant < b.orthant;
        return a.index < b.index;
    }
};

void keep_best(std::vector<Candidate>& pool, Candidate c, std::size_t limit) {
    if (pool.size() < limit) {
        pool.push_back(std::move(c));
        std::push_heap(pool.begin(), pool.end());
    } else if (c < pool.front()) {
        std::pop_heap(pool.begin(), pool.end());
        pool.back() = std::move(c);
        std::push_heap(pool.begin(), pool.end());
    }
}

/// Minimizes the normalized objective over log-magnitudes u in [lo, hi]^n with
/// fixed signs. Steps along the negative gradient with a Gauss-Newton initial
/// length 2 g / |grad g| (exact for a squared residual) and backtracking.
Candidate descend(const MDeltaEvaluator& eval, Candidate start, double lo, double hi, std::size_t iterations,
                  double target) {
    const std::size_t n = start.x.size();
    std::vector<double> sign(n), u(n), x(n), trial(n), grad(n);
    for (std::size_t j = 0; j < n; ++j) {
        sign[j] = start.x[j] < 0 ? -1.0 : 1.0;
        u[j] = std::clamp(std::log(std::abs(start.x[j])), lo, hi);
    }
    auto objective = [&](const std::vector<double>& uu) {
        for (std::size_t j = 0; j < n; ++j) x[j] = sign[j] * std::exp(uu[j]);
        return eval.normalized(x);
    };
    double g = objective(u);
    const double h = 1e-7;
    for (std::size_t it = 0; it < iterations && g > target; ++it) {
        for (std::size_t j = 0; j < n; ++j) {
            double up = std::min(u[j] + h, hi), down = std::max(u[j] - h, lo);
            trial = u;
            trial[j] = up;
            double fu = objective(trial);
            trial[j] = down;
            double fd = objective(trial);
            grad[j] = (fu - fd) / (up - down);
            // Projected gradient: drop components pushing out of the box.
            if ((u[j] <= lo && grad[j] > 0) || (u[j] >= hi && grad[j] < 0)) grad[j] = 0.0;
        }
        double gnorm = std::sqrt(std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0));
        if (gnorm == 0.0 || !std::isfinite(gnorm)) break;
        double step = std::min(2.0 * g / gnorm, 1.0);
        bool improved = false;
        for (int back = 0; back < 40; ++back) {
            for (std::size_t j = 0; j < n; ++j) trial[j] = std::clamp(u[j] - step * grad[j] / gnorm, lo, hi);
            double ft = objective(trial);
            if (ft < g) {
                u = trial;
                g = ft;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    for (std::size_t j = 0; j < n; ++j) x[j] = sign[j] * std::exp(u[j]);
    start.value = g;
    start.x = x;
    return start;
}

/// Moves x along its orbit t^q * x to the point whose norm is closest to one.
std::vector<double> torus_normalize(const std::vector<double>& x, const std::vector<Rational>& q) {
    std::vector<double> qd = to_doubles(q);
    auto norm_at = [&](double s) {
        double acc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            double v = x[j] * std::exp(qd[j] * s);
            acc += v * v;
        }
        return std::sqrt(acc);
    };
    auto loss = [&](double s) { return std::abs(std::log(norm_at(s))); };
    double a = -40.0, b = 40.0;
    // Golden-section search on the (unimodal in practice) distance of log-norm from zero.
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    for (int it = 0; it < 200; ++it) {
        if (loss(c) < loss(d))
            b = d;
        else
            a = c;
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    double s = 0.5 * (a + b);
    if (loss(0.0) <= loss(s)) s = 0.0;
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] * std::exp(qd[j] * s);
    return out;
}

std::optional<std::vector<Rational>> rational_witness(const MDeltaMatrix& m, const std::vector<double>& x) {
    for (long den : {10L, 100L, 1000L, 10000L, 100000L, 1000000L}) {
        std::vector<Rational> r;
        bool ok = true;
        for (double v : x) {
            Rational a = approximate(v, den);
            if (a == 0) ok = false;
            r.push_back(a);
        }
        if (ok && exact_rank(m, r) < m.p) return r;
    }
    return std::nullopt;
}

}  // namespace

FaceVerdict certify_face(const MDeltaMatrix& m, const CertifyConfig& cfg) {
    if (cfg.tau_axis_schedule.empty()) throw Error("certify: empty tau_axis schedule");
    if (cfg.samples == 0) throw Error("certify: sample budget must be positive");
    const MDeltaEvaluator eval(m);
    const std::size_t n = m.n;
    const std::size_t orthants = std::size_t{1} << n;
    std::vector<double> levels = cfg.tau_axis_schedule;
    std::sort(levels.begin(), levels.end(), std::greater<>());
    const std::size_t nlev = levels.size();
    const std::size_t keep = std::max<std::size_t>(cfg.multistarts, 1);

    // Stratified sampling: stratum k draws log-magnitudes uniformly from
    // [ln tau_k, -ln tau_k]; boxes are nested so stratum k also serves levels >= k.
    std::vector<std::vector<std::vector<Candidate>>> best(orthants, std::vector<std::vector<Candidate>>(nlev));
    std::vector<std::vector<double>> stratum_min(orthants, std::vector<double>(nlev, std::numeric_limits<double>::infinity()));
    parallel_for(orthants, cfg.workers, [&](std::size_t o) {
        std::vector<double> x(n);
        for (std::size_t k = 0; k < nlev; ++k) {
            std::size_t count = cfg.samples / nlev + (k < cfg.samples % nlev ? 1 : 0);
            auto rng = stream_rng(cfg.seed, {m.face_id, o, k});
            const double lim = -std::log(levels[k]);
            std::uniform_real_distribution<double> mag(-lim, lim);
            for (std::size_t s = 0; s < count; ++s) {
                for (std::size_t j = 0; j < n; ++j) x[j] = ((o >> j) & 1U ? -1.0 : 1.0) * std::exp(mag(rng));
                double v = eval.normalized(x);
                stratum_min[o][k] = std::min(stratum_min[o][k], v);
                keep_best(best[o][k], Candidate{v, o, k * cfg.samples + s, x}, keep);
            }
        }
    });

    FaceVerdict verdict;
    verdict.face_id = m.face_id;
    verdict.seed = cfg.seed;
    verdict.samples = cfg.samples * orthants;

    std::vector<Candidate> refined(nlev * keep);
    std::vector<std::vector<Candidate>> starts(nlev);
    for (std::size_t k = 0; k < nlev; ++k) {
        for (std::size_t o = 0; o < orthants; ++o)
            for (std::size_t s = 0; s <= k; ++s)
                starts[k].insert(starts[k].end(), best[o][s].begin(), best[o][s].end());
        std::sort(starts[k].begin(), starts[k].end());
        if (starts[k].size() > keep) starts[k].resize(keep);
    }
    parallel_for(nlev * keep, cfg.workers, [&](std::size_t t) {
        std::size_t k = t / keep, s = t % keep;
        if (s >= starts[k].size()) {
            refined[t].value = std::numeric_limits<double>::infinity();
            return;
        }
        const double lim = -std::log(levels[k]);
        refined[t] = descend(eval, starts[k][s], -lim, lim, cfg.descent_iterations, cfg.tau_zero * 1e-6);
    });

    std::optional<Candidate> witness;
    for (std::size_t k = 0; k < nlev; ++k) {
        double level_min = std::numeric_limits<double>::infinity();
        for (std::size_t o = 0; o < orthants; ++o)
            for (std::size_t s = 0; s <= k; ++s) level_min = std::min(level_min, stratum_min[o][s]);
        const Candidate* best_refined = nullptr;
        for (std::size_t s = 0; s < keep; ++s) {
            const Candidate& c = refined[k * keep + s];
            if (!best_refined || c < *best_refined) best_refined = &c;
        }
        if (best_refined) level_min = std::min(level_min, best_refined->value);
        verdict.level_minima.push_back(level_min);
        if (!witness && best_refined && best_refined->value <= cfg.tau_zero) witness = *best_refined;
    }
    verdict.objective_min = *std::min_element(verdict.level_minima.begin(), verdict.level_minima.end());

    if (witness) {
        verdict.status = FaceStatus::Degenerate;
        std::vector<double> x = witness->x;
        // Rank is constant on torus orbits; prefer the representative nearest the unit sphere.
        std::vector<double> normalized = torus_normalize(x, m.weights);
        double tau = levels.back();
        bool inside = std::all_of(normalized.begin(), normalized.end(), [tau](double v) { return std::abs(v) >= tau; });
        if (inside && eval.normalized(normalized) <= cfg.tau_zero) x = normalized;
        verdict.witness_objective = eval.normalized(x);
        verdict.exact_witness = rational_witness(m, x);
        verdict.witness = std::move(x);
        return verdict;
    }

    const double last = verdict.level_minima.back();
    bool decaying = nlev >= 2;
    for (std::size_t k = 1; k < nlev; ++k)
        if (!(verdict.level_minima[k] <= 0.1 * verdict.level_minima[k - 1])) decaying = false;
    if (last < 10.0 * cfg.tau_zero || decaying)
        verdict.status = FaceStatus::Inconclusive;
    else
        verdict.status = FaceStatus::NondegenerateProbable;
    return verdict;
}

NondegVerdict certify_system(const PolySystem& system, const SystemNewtonData& newton, const CertifyConfig& cfg) {
    NondegVerdict out;
    out.convenience = newton.convenience;
    out.convenient = newton.convenient();
    out.faces.resize(newton.faces.size());
    // Faces run one after another; each face parallelizes its own sampling.
    for (std::size_t f = 0; f < newton.faces.size(); ++f)
        out.faces[f] = certify_face(build_m_delta(system, newton.faces[f]), cfg);
    bool any_degenerate = false, all_nondegenerate = true;
    for (const auto& v : out.faces) {
        any_degenerate |= v.status == FaceStatus::Degenerate;
        all_nondegenerate &= v.status == FaceStatus::NondegenerateProbable;
    }
    out.overall = any_degenerate      ? FaceStatus::Degenerate
                  : all_nondegenerate ? FaceStatus::NondegenerateProbable
                                      : FaceStatus::Inconclusive;
    return out;
}

NondegVerdict certify_system(const PolySystem& system, const CertifyConfig& cfg, const FaceEnumerationOptions& options) {
    return certify_system(system, analyze_newton(system, options), cfg);
}

}  // namespace heb
