// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "heb/bounds.hpp"
#include "heb/cli.hpp"
#include "heb/error.hpp"
#include "heb/newton.hpp"
#include "heb/nondegen.hpp"
#include "heb/report.hpp"
#include "heb/verify.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace heb;
using Clock = std::chrono::steady_clock;

namespace {

using PointSet = std::set<ExponentVector>;

struct Result {
    bool pass = true;
    std::vector<std::string> detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail.push_back("failed: " + what);
        }
    }
    void note(const std::string& what) { detail.push_back(what); }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

PointSet as_set(const std::vector<ExponentVector>& v) { return PointSet(v.begin(), v.end()); }

/// (face vertices, summand generator sets) as listed for a face.
using FaceListing = std::pair<PointSet, std::vector<PointSet>>;

bool faces_match(const SystemNewtonData& nd, const std::vector<FaceListing>& expected) {
    if (nd.faces.size() != expected.size()) return false;
    std::set<std::size_t> used;
    for (const auto& want : expected) {
        bool found = false;
        for (std::size_t k = 0; k < nd.faces.size() && !found; ++k) {
            const auto& f = nd.faces[k];
            if (used.count(k) || as_set(f.vertices) != want.first || !f.decomposition) continue;
            if (f.decomposition->size() != want.second.size()) continue;
            bool parts = true;
            for (std::size_t i = 0; i < want.second.size(); ++i) parts &= as_set((*f.decomposition)[i]) == want.second[i];
            if (parts) {
                used.insert(k);
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

ExponentVector e2(int a, int b) { return ExponentVector{a, b}; }
ExponentVector e3(int a, int b, int c) { return ExponentVector{a, b, c}; }

std::string fmt_min(const NondegVerdict& v) {
    double m = INFINITY;
    for (const auto& f : v.faces) m = std::min(m, f.objective_min);
    return fmt(m);
}

// ---------------------------------------------------------------------------

Result half_disk_end_to_end() {
    Result r;
    const auto t0 = Clock::now();
    auto sys = testing::load_fixture("halfdisk.poly");
    auto nd = analyze_newton(sys);
    r.require(as_set(nd.sum.vertices()) == PointSet{e2(0, 0), e2(3, 0), e2(0, 3)}, "sum vertices {(0,0),(3,0),(0,3)}");
    r.require(faces_match(nd, {{{e2(3, 0)}, {{e2(1, 0)}, {e2(2, 0)}}},
                               {{e2(0, 3)}, {{e2(0, 1)}, {e2(0, 2)}}},
                               {{e2(3, 0), e2(0, 3)}, {{e2(1, 0), e2(0, 1)}, {e2(2, 0), e2(0, 2)}}}}),
              "three faces with their decompositions");
    CertifyConfig cfg;
    cfg.samples = 4096;
    auto v = certify_system(sys, nd, cfg);
    r.require(v.overall == FaceStatus::NondegenerateProbable, "nondegenerate_probable");
    for (const auto& f : v.faces) {
        r.require(f.objective_min > 1e-6, "face " + std::to_string(f.face_id) + " objective_min > 1e-6");
        r.require(f.samples >= 4096, "at least 4096 samples per face");
    }
    auto rep = holder_exponent(sys.d(), 2, 2);
    r.require(rep.alpha == Rational(1, 18522), "alpha = 1/18522");
    const double secs = seconds_since(t0);
    r.require(secs < 10.0, "runtime < 10 s");
    r.note("faces=" + std::to_string(nd.faces.size()) + " min_objective=" + fmt_min(v) + " alpha=" + to_string(rep.alpha) +
           " time=" + fmt(secs) + "s");
    return r;
}

Result sphere_cubic_end_to_end() {
    Result r;
    const auto t0 = Clock::now();
    auto sys = testing::load_fixture("sphere_cubic.poly");
    auto nd = analyze_newton(sys);
    const PointSet x2{e3(2, 0, 0)}, y2{e3(0, 2, 0)}, z2{e3(0, 0, 2)}, z3{e3(0, 0, 3)};
    const std::vector<FaceListing> listed{
        {{e3(3, 0, 0), e3(0, 3, 0), e3(2, 0, 3), e3(0, 2, 3)}, {{e3(2, 0, 0), e3(0, 2, 0)}, {e3(1, 0, 0), e3(0, 1, 0), e3(0, 0, 3)}}},
        {{e3(2, 0, 3), e3(0, 2, 3), e3(0, 0, 5)}, {{e3(2, 0, 0), e3(0, 2, 0), e3(0, 0, 2)}, z3}},
        {{e3(3, 0, 0), e3(0, 3, 0)}, {{e3(2, 0, 0), e3(0, 2, 0)}, {e3(1, 0, 0), e3(0, 1, 0)}}},
        {{e3(2, 0, 3), e3(0, 2, 3)}, {{e3(2, 0, 0), e3(0, 2, 0)}, z3}},
        {{e3(2, 0, 3), e3(0, 0, 5)}, {{e3(2, 0, 0), e3(0, 0, 2)}, z3}},
        {{e3(3, 0, 0), e3(2, 0, 3)}, {x2, {e3(1, 0, 0), e3(0, 0, 3)}}},
        {{e3(0, 2, 3), e3(0, 0, 5)}, {{e3(0, 2, 0), e3(0, 0, 2)}, z3}},
        {{e3(0, 3, 0), e3(0, 2, 3)}, {y2, {e3(0, 1, 0), e3(0, 0, 3)}}},
        {{e3(3, 0, 0)}, {x2, {e3(1, 0, 0)}}},
        {{e3(0, 3, 0)}, {y2, {e3(0, 1, 0)}}},
        {{e3(2, 0, 3)}, {x2, z3}},
        {{e3(0, 2, 3)}, {y2, z3}},
        {{e3(0, 0, 5)}, {z2, z3}},
    };
    r.require(nd.faces.size() == 13, "exactly 13 faces");
    r.require(faces_match(nd, listed), "faces and decompositions match the listed thirteen");
    CertifyConfig cfg;
    auto v = certify_system(sys, nd, cfg);
    r.require(v.overall == FaceStatus::NondegenerateProbable, "all faces nondegenerate_probable");
    std::size_t good = 0;
    for (const auto& f : v.faces) good += f.status == FaceStatus::NondegenerateProbable;
    auto rep = holder_exponent(sys.d(), 3, 2);
    r.require(rep.alpha == Rational(1, 3557763), "alpha = 1/3557763");
    const double secs = seconds_since(t0);
    r.require(secs < 60.0, "runtime < 60 s");
    r.note("faces=" + std::to_string(nd.faces.size()) + " nondegenerate=" + std::to_string(good) +
           " min_objective=" + fmt_min(v) + " alpha=" + to_string(rep.alpha) + " time=" + fmt(secs) + "s");
    return r;
}

Result diagonal_degenerate() {
    Result r;
    auto sys = testing::load_fixture("diagonal.poly");
    auto v = certify_system(sys, CertifyConfig{});
    r.require(v.overall == FaceStatus::Degenerate, "degenerate verdict");
    const FaceVerdict* deg = nullptr;
    for (const auto& f : v.faces)
        if (f.status == FaceStatus::Degenerate) deg = &f;
    r.require(deg && deg->witness, "witness reported");
    if (deg && deg->witness) {
        const auto& w = *deg->witness;
        r.require(std::abs(w[0] - w[1]) < 1e-4, "|x - y| < 1e-4");
        r.require(std::min(std::abs(w[0]), std::abs(w[1])) > 0.05, "min(|x|,|y|) > 0.05");
        r.require(deg->witness_objective < 1e-12, "normalized objective < 1e-12 at the witness");
        r.note("witness=(" + fmt(w[0]) + ", " + fmt(w[1]) + ") objective=" + fmt(deg->witness_objective));
    }
    auto eps = testing::load_fixture("diagonal_eps.poly");
    auto ve = certify_system(eps, CertifyConfig{});
    r.require(ve.overall == FaceStatus::NondegenerateProbable, "perturbed system nondegenerate_probable");
    r.require(holder_exponent(sys.d(), 2, 2).alpha == Rational(1, 18522), "alpha = 1/18522");
    r.require(holder_exponent(eps.d(), 2, 2).alpha == Rational(1, 18522), "perturbed alpha = 1/18522");
    r.note("perturbed min_objective=" + fmt_min(ve));
    return r;
}

Result partition_instance() {
    Result r;
    auto sys = testing::load_fixture("partition2.poly");
    auto rep = holder_exponent(sys.d(), static_cast<int>(sys.n()), static_cast<int>(sys.p()));
    r.require(to_string(rep.H) == "16200", "H = 8*45^2 = 16200");
    r.require(rep.notes.size() == 1 && rep.notes[0].find("1/(8*45^n)") != std::string::npos, "exponent discrepancy note");
    // S = {(1,-1), (-1,1)} exactly; the distance is the nearer of the two.
    const std::vector<std::vector<double>> S{{1.0, -1.0}, {-1.0, 1.0}};
    DistanceFn analytic = [&](std::span<const double> x) {
        DistanceResult best{INFINITY, {}};
        for (const auto& s : S) {
            double d = std::hypot(x[0] - s[0], x[1] - s[1]);
            if (d < best.distance) best = {d, s};
        }
        return best;
    };
    SamplePlan plan;
    plan.box = {{-3.0, 3.0}, {-3.0, 3.0}};
    plan.count = 2000;
    auto vr = verify_bound(sys, rep, plan, VerifyConfig{}, analytic);
    std::size_t nonpositive = 0;
    for (const auto& s : vr.samples)
        if (s.distance > 1e-6 && !(s.ratio > 0.0)) ++nonpositive;
    r.require(vr.samples.size() == 2000, "2000 samples");
    r.require(vr.fitted_c > 0.0 && std::isfinite(vr.fitted_c), "fitted_c > 0");
    r.require(nonpositive == 0 && vr.violations == 0, "zero non-positive ratios");
    r.note("H=" + to_string(rep.H) + " fitted_c=" + fmt(vr.fitted_c) + " counted=" + std::to_string(vr.counted));
    return r;
}

Result quadratic_square_root_bound() {
    Result r;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> grid(-128, 128), small(-2, 2), dim(1, 4);
    std::uniform_real_distribution<double> box(-3.0, 3.0);
    std::size_t grad_viol = 0, dist_viol = 0, checked = 0;
    double worst_slack = INFINITY;
    for (int inst = 0; inst < 20; ++inst) {
        const int n = dim(rng);
        // Entries on the 1/64 grid in [-2, 2]; every other instance is rank deficient.
        std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
        if (inst % 2 == 0 || n == 1) {
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) A[i][j] = A[j][i] = Rational(grid(rng), 64);
        } else {
            std::vector<int> u(n), w(n);
            for (auto& t : u) t = small(rng);
            for (auto& t : w) t = small(rng);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) A[i][j] = Rational(u[i] * u[j] - w[i] * w[j], 4);
        }
        bool zero = true;
        for (auto& row : A)
            for (auto& a : row) {
                a.canonicalize();
                zero &= a == 0;
            }
        if (zero) A[0][0] = 1;
        std::vector<Rational> xbar(n), b(n, Rational(0));
        for (auto& t : xbar) {
            t = Rational(grid(rng), 64);
            t.canonicalize();
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[i] -= A[i][j] * xbar[j];
        const Rational c0(grid(rng), 64);

        // g = f - f(xbar) = 1/2 (x - xbar)^T A (x - xbar), built exactly.
        Polynomial f(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ExponentVector e(n);
                e[i] += 1;
                e[j] += 1;
                f.add_term(e, A[i][j] / 2);
            }
        for (int i = 0; i < n; ++i) {
            ExponentVector e(n);
            e[i] = 1;
            f.add_term(e, b[i]);
        }
        f.add_term(ExponentVector(n), c0);
        const Rational fbar = f.evaluate(std::span<const Rational>(xbar));
        Polynomial g = f - Polynomial::constant(n, fbar);
        std::vector<std::string> vars;
        for (int j = 0; j < n; ++j) vars.push_back("x" + std::to_string(j + 1));
        PolySystem level({"g", "h"}, vars, {g, g * Rational(-1)});

        Eigen::MatrixXd Ad(n, n);
        Eigen::VectorXd bd(n);
        for (int i = 0; i < n; ++i) {
            bd(i) = b[i].get_d();
            for (int j = 0; j < n; ++j) Ad(i, j) = A[i][j].get_d();
        }
        auto q = quadratic_bound(Ad, bd, c0.get_d());

        DistanceConfig dc;
        dc.extra_seeds.push_back(to_doubles(xbar));
        dc.search_box.assign(static_cast<std::size_t>(n), {-6.0, 6.0});
        DistanceOracle oracle(level, dc);
        for (int s = 0; s < 1000; ++s) {
            std::vector<double> x(static_cast<std::size_t>(n));
            for (auto& t : x) t = box(rng);
            const double gap = std::abs(q.value(x) - q.critical_value);
            if (std::sqrt(2.0 * q.lambda_min_nonzero) * std::sqrt(gap) > q.gradient(x).norm() + 1e-8) ++grad_viol;
            const double d = oracle.distance(x).distance;
            const double slack = std::sqrt(gap) + 1e-6 - q.constant * d;
            worst_slack = std::min(worst_slack, slack);
            if (slack < 0.0) ++dist_viol;
            ++checked;
        }
    }
    r.require(checked == 20000, "1000 samples on each of 20 instances");
    r.require(grad_viol == 0, "gradient inequality: zero violations");
    r.require(dist_viol == 0, "distance bound: zero violations");
    r.note("gradient_violations=" + std::to_string(grad_viol) + " distance_violations=" + std::to_string(dist_viol) +
           " min_slack=" + fmt(worst_slack));
    return r;
}

Result slope_equivalence() {
    Result r;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0, worst_single = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t n = 2 + static_cast<std::size_t>(inst % 3);
        const std::size_t p = 2 + static_cast<std::size_t>(inst % 2);  // p <= min(3, n)
        std::vector<double> x(n);
        for (auto& t : x) t = u(rng);
        std::vector<Rational> xr;
        for (double t : x) xr.push_back(rational_from_double(t));
        // Shift constants so every component takes the value 1 at x: all active.
        std::vector<Polynomial> polys;
        for (std::size_t i = 0; i < p; ++i) {
            auto f = testing::random_polynomial(rng, n, 3, 6);
            f -= Polynomial::constant(n, f.evaluate(std::span<const Rational>(xr)) - 1);
            polys.push_back(f);
        }
        std::vector<std::string> vars, names;
        for (std::size_t j = 0; j < n; ++j) vars.push_back("x" + std::to_string(j));
        for (std::size_t i = 0; i < p; ++i) names.push_back("f" + std::to_string(i));
        PolySystem sys(names, vars, polys);
        auto s = slope(sys, x);
        if (s.active.size() != p) {
            r.require(false, "all components active");
            continue;
        }
        std::vector<std::vector<double>> grads;
        for (const auto& f : polys) grads.push_back(f.gradient(x));

        // Brute-force simplex grid, step 1e-3, then zoomed grids around the best node.
        auto norm_at = [&](double a, double b) -> double {
            double c = 1.0 - a - b, sq = 0.0;
            if (a < 0 || b < 0 || c < -1e-15) return INFINITY;
            for (std::size_t j = 0; j < n; ++j) {
                double v = a * grads[0][j] + b * grads[1][j] + (p == 3 ? c * grads[2][j] : 0.0);
                sq += v * v;
            }
            return std::sqrt(sq);
        };
        double best = INFINITY, ba = 0, bb = 0, step = 1e-3;
        const int steps = 1000;
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= (p == 3 ? steps - i : 0); ++j) {
                const double a = i * step, b = p == 3 ? j * step : 1.0 - a;
                const double v = norm_at(a, b);
                if (v < best) best = v, ba = a, bb = b;
            }
        for (int zoom = 0; zoom < 6; ++zoom) {
            const double ca = ba, cb = bb;
            const double fine = step / 50.0;
            for (int i = -100; i <= 100; ++i)
                for (int j = (p == 3 ? -100 : 0); j <= (p == 3 ? 100 : 0); ++j) {
                    const double a = ca + i * fine, b = p == 3 ? cb + j * fine : 1.0 - a;
                    const double v = norm_at(a, b);
                    if (v < best) best = v, ba = a, bb = b;
                }
            step = fine;
        }
        worst = std::max(worst, std::abs(s.value - best));

        // Singleton case: raise one component so it alone is active.
        std::vector<Polynomial> lifted = polys;
        lifted[0] += Polynomial::constant(n, Rational(1));
        PolySystem single(names, vars, lifted);
        auto ss = slope(single, x);
        double gn = 0.0;
        for (double t : grads[0]) gn += t * t;
        worst_single = std::max(worst_single, std::abs(ss.value - std::sqrt(gn)));
    }
    r.require(worst <= 1e-5, "min-norm slope within 1e-5 of the grid");
    r.require(worst_single <= 1e-12, "singleton slope within 1e-12 of the gradient norm");
    r.note("max_grid_gap=" + fmt(worst) + " max_singleton_gap=" + fmt(worst_single));
    return r;
}

Result property_suites() {
    Result r;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 30);

    // Support values add over Minkowski sums.
    std::size_t mink_fail = 0;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 3);
        std::vector<NewtonPolytope> parts;
        const int p = 2 + k % 2;
        for (int i = 0; i < p; ++i) parts.push_back(newton_polytope(testing::random_polynomial(rng, n, 3, 4)));
        auto sum = minkowski_sum(parts);
        std::vector<Rational> q(n);
        for (auto& t : q) {
            t = Rational(num(rng), den(rng));
            t.canonicalize();
        }
        Rational total = 0;
        for (const auto& g : parts) total += support_value(g, q);
        if (support_value(sum, q) != total) ++mink_fail;
    }
    r.require(mink_fail == 0, "support value of the sum equals the sum of support values (1000 q)");

    // Origin exclusion, negative support value and a negative normal entry agree.
    std::size_t eq_fail = 0, faces = 0;
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 2);
        std::vector<Polynomial> polys{testing::random_convenient(rng, n, 3, 3), testing::random_convenient(rng, n, 3, 3)};
        std::vector<std::string> vars;
        for (std::size_t j = 0; j < n; ++j) vars.push_back("x" + std::to_string(j));
        auto nd = analyze_newton(PolySystem({"f", "g"}, vars, polys));
        // Every face of the sum, with or without the origin, is reached through the facet lattice;
        // faces at infinity must satisfy all three, the rest none.
        for (const auto& face : nd.faces) {
            ++faces;
            const bool a = std::none_of(face.support_points.begin(), face.support_points.end(),
                                        [](const ExponentVector& e) { return e.is_origin(); });
            const bool b = support_value(nd.sum, face.witness_normal) < 0;
            const bool c = *std::min_element(face.witness_normal.begin(), face.witness_normal.end()) < 0;
            if (!(a && b && c)) ++eq_fail;
        }
        // Faces through the origin: non-positive normals of facets containing it.
        for (const auto& facet : nd.sum.facets()) {
            const bool a = facet.offset != 0;  // origin excluded iff the facet misses it
            const bool b = facet.offset < 0;
            const bool c = *std::min_element(facet.normal.begin(), facet.normal.end()) < 0;
            ++faces;
            if (a != b || b != c) ++eq_fail;
        }
    }
    r.require(eq_fail == 0, "three face characterizations agree on 50 convenient systems");

    // Quasi-homogeneity identity on every face of the three fixtures.
    std::size_t euler_fail = 0, euler_rows = 0;
    for (const char* name : {"halfdisk.poly", "sphere_cubic.poly", "diagonal.poly"}) {
        auto sys = testing::load_fixture(name);
        auto nd = analyze_newton(sys);
        for (const auto& face : nd.faces) {
            auto m = build_m_delta(sys, face);
            for (std::size_t i = 0; i < m.p; ++i) {
                Polynomial lhs(m.n);
                for (std::size_t j = 0; j < m.n; ++j) lhs += m.entries[i][j] * m.weights[j];
                lhs -= m.principal_parts[i] * m.weighted_degrees[i];
                ++euler_rows;
                if (!lhs.is_zero()) ++euler_fail;
            }
        }
    }
    r.require(euler_fail == 0, "Euler identity vanishes symbolically on every face");

    // Same configuration, same bytes.
    bool identical = true;
    for (Command c : {Command::Analyze, Command::Certify, Command::Verify}) {
        RunConfig cfg;
        cfg.command = c;
        cfg.input_path = testing::fixture_path("halfdisk.poly");
        cfg.format = OutputFormat::Json;
        cfg.samples = 200;
        cfg.rings = {10.0, 100.0};
        std::ostringstream a, b, err;
        run(cfg, a, err);
        run(cfg, b, err);
        identical &= !a.str().empty() && a.str() == b.str();
    }
    r.require(identical, "byte-identical JSON across two runs");
    r.note("minkowski_failures=" + std::to_string(mink_fail) + " characterization_checks=" + std::to_string(faces) +
           " euler_rows=" + std::to_string(euler_rows));
    return r;
}

Result hoffman_regime() {
    Result r;
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coef(-3, 3), dim(1, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0), box(-3.0, 3.0);
    std::normal_distribution<double> gauss;
    bool all_finite = true, bounded = true;
    double worst_growth = 0.0, worst_c = 0.0;
    std::size_t total = 0;
    for (int inst = 0; inst < 20; ++inst) {
        const std::size_t n = static_cast<std::size_t>(dim(rng)), p = static_cast<std::size_t>(dim(rng));
        std::vector<Rational> x0(n);
        for (auto& t : x0) t = Rational(coef(rng), 2);
        // f_i(x) = a_i . x - b_i with b_i = a_i . x0 + s_i, s_i >= 0, so x0 lies in S.
        std::vector<Polynomial> polys;
        for (std::size_t i = 0; i < p; ++i) {
            Polynomial f(n);
            Rational ax0 = 0;
            for (std::size_t j = 0; j < n; ++j) {
                int a = coef(rng);
                ExponentVector e(n);
                e[j] = 1;
                f.add_term(e, Rational(a));
                ax0 += a * x0[j];
            }
            if (f.is_zero()) {
                ExponentVector e(n);
                e[i % n] = 1;
                f.add_term(e, Rational(1));
                ax0 += x0[i % n];
            }
            f.add_term(ExponentVector(n), -(ax0 + Rational(static_cast<long>(rng() % 3), 2)));
            polys.push_back(f);
        }
        std::vector<std::string> vars, names;
        for (std::size_t j = 0; j < n; ++j) vars.push_back("x" + std::to_string(j));
        for (std::size_t i = 0; i < p; ++i) names.push_back("f" + std::to_string(i));
        PolySystem sys(names, vars, polys);
        DistanceOracle oracle(sys);
        CompiledSystem cs(sys);

        auto ratio = [&](const std::vector<double>& x) {
            const double res = cs.residual(x);
            const double d = oracle.distance(x).distance;
            if (d <= 1e-6) return 0.0;
            return res > 0.0 ? d / res : INFINITY;
        };
        double max_box = 0.0;
        for (int s = 0; s < 400; ++s) {
            std::vector<double> x(n);
            for (auto& t : x) t = box(rng);
            max_box = std::max(max_box, ratio(x));
            ++total;
        }
        // The same 200 directions on every ring.
        std::vector<std::vector<double>> dirs(200, std::vector<double>(n));
        for (auto& d : dirs) {
            double s = 0.0;
            for (auto& t : d) {
                t = gauss(rng);
                s += t * t;
            }
            for (auto& t : d) t /= std::sqrt(s);
        }
        std::vector<double> ring_max;
        for (double R : {10.0, 100.0, 1000.0}) {
            double m = 0.0;
            for (const auto& d : dirs) {
                std::vector<double> x(n);
                for (std::size_t j = 0; j < n; ++j) x[j] = x0[j].get_d() + R * d[j];
                m = std::max(m, ratio(x));
                ++total;
            }
            ring_max.push_back(m);
        }
        const double c = std::max({max_box, ring_max[0], ring_max[1], ring_max[2]});
        all_finite &= std::isfinite(c);
        if (ring_max[1] > 0.0) worst_growth = std::max(worst_growth, ring_max[2] / ring_max[1]);
        bounded &= ring_max[2] <= 2.0 * ring_max[1] + 1e-12;
        worst_c = std::max(worst_c, c);
    }
    r.require(total == 20000, "1000 samples on each of 20 systems");
    r.require(all_finite, "finite fitted constant on every system");
    r.require(bounded, "no growth from R = 100 to R = 1000");
    r.note("max_ratio=" + fmt(worst_c) + " max_growth_1000_over_100=" + fmt(worst_growth));
    return r;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"half-disk system end to end", half_disk_end_to_end},
        {"sphere-cubic system end to end", sphere_cubic_end_to_end},
        {"diagonal system degenerate, perturbation nondegenerate", diagonal_degenerate},
        {"partition instance exponent and error bound", partition_instance},
        {"single quadratic square-root bound", quadratic_square_root_bound},
        {"min-norm slope against a simplex grid", slope_equivalence},
        {"property suites", property_suites},
        {"affine systems stay in the linear regime", hoffman_regime},
    };
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = Clock::now();
        Result res;
        try {
            res = criteria[k].second();
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail.push_back(std::string("exception: ") + e.what());
        }
        all &= res.pass;
        std::cout << (res.pass ? "PASS" : "FAIL") << " criterion " << (k + 1) << ": " << criteria[k].first;
        for (const auto& d : res.detail) std::cout << " | " << d;
        std::cout << " [" << fmt(seconds_since(t0)) << "s]" << std::endl;
    }
    return all ? 0 : 1;
}
