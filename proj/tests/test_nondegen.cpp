#include "heb/nondegen.hpp"
#include "heb/report.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>

using namespace heb;

namespace {

// Sum of squared p x p minors by explicit column-subset expansion.
double explicit_minor_sum(const Eigen::MatrixXd& M) {
    const auto p = M.rows(), m = M.cols();
    std::vector<bool> mask(static_cast<std::size_t>(m), false);
    std::fill(mask.begin(), mask.begin() + p, true);
    double total = 0.0;
    do {
        Eigen::MatrixXd sub(p, p);
        Eigen::Index c = 0;
        for (Eigen::Index k = 0; k < m; ++k)
            if (mask[static_cast<std::size_t>(k)]) sub.col(c++) = M.col(k);
        double det = sub.determinant();
        total += det * det;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return total;
}

FaceAtInfinity edge_face(const SystemNewtonData& nd) {
    for (const auto& f : nd.faces)
        if (f.dim == 1) return f;
    FAIL("no edge");
    return {};
}

}  // namespace

TEST_CASE("M matrix of the degenerate fixture's edge") {
    auto sys = testing::load_fixture("diagonal.poly");
    auto nd = analyze_newton(sys);
    auto m = build_m_delta(sys, edge_face(nd));
    REQUIRE(m.p == 2);
    REQUIRE(m.n == 2);
    const std::vector<std::string> v{"x", "y"};
    CHECK(m.entries[0][0].to_string(v) == "2*x^2");
    CHECK(m.entries[0][1].to_string(v) == "-2*y^2");
    CHECK(m.entries[0][2].to_string(v) == "x^2 - y^2");
    CHECK(m.entries[0][3].to_string(v) == "0");
    CHECK(m.entries[1][0].to_string(v) == "x");
    CHECK(m.entries[1][1].to_string(v) == "-y");
    CHECK(m.entries[1][2].to_string(v) == "0");
    CHECK(m.entries[1][3].to_string(v) == "x - y");

    // Hand expansion at (1, -1): rows (2, -2, 0, 0) and (1, 1, 0, 2).
    const std::vector<double> x{1.0, -1.0};
    CHECK(minor_norm_objective(m, x) == doctest::Approx(48.0).epsilon(1e-12));
    CHECK(exact_rank(m, std::vector<Rational>{1, 1}) == 1);
    CHECK(exact_rank(m, std::vector<Rational>{1, 2}) == 2);
    CHECK(normalized_minor_objective(m, std::vector<double>{0.7, 0.7}) < 1e-15);
}

TEST_CASE("triangle fixture vertex face has constant normalized objective") {
    auto sys = testing::load_fixture("halfdisk.poly");
    auto nd = analyze_newton(sys);
    auto m = build_m_delta(sys, nd.faces[0]);
    for (double t : {0.01, 0.5, -3.0, 40.0}) {
        std::vector<double> x{t, 1.7};
        CHECK(normalized_minor_objective(m, x) == doctest::Approx(0.6).epsilon(1e-12));
    }
}

TEST_CASE("minor objective agrees with explicit expansion and SVD rank") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const char* name : {"halfdisk.poly", "sphere_cubic.poly", "diagonal.poly", "diagonal_eps.poly"}) {
        auto sys = testing::load_fixture(name);
        auto nd = analyze_newton(sys);
        for (const auto& face : nd.faces) {
            auto m = build_m_delta(sys, face);
            MDeltaEvaluator ev(m);
            for (int k = 0; k < 40; ++k) {
                std::vector<double> x(sys.n());
                for (auto& v : x) v = u(rng);
                // Every fourth point of the degenerate fixture sits on the diagonal.
                if (std::string(name) == "diagonal.poly" && k % 4 == 0) x[1] = x[0];
                auto M = ev.evaluate(x);
                const double expl = explicit_minor_sum(M);
                CHECK(ev.minor_norm(x) == doctest::Approx(expl).epsilon(1e-9).scale(1e-12));
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
                const auto& s = svd.singularValues();
                const bool deficient = s(s.size() - 1) <= 1e-9 * std::max(1e-300, s(0));
                CHECK(deficient == (ev.normalized(x) < 1e-14));
            }
        }
    }
}

TEST_CASE("Euler quasi-homogeneity identity holds symbolically on every face") {
    for (const char* name : {"halfdisk.poly", "sphere_cubic.poly", "diagonal.poly"}) {
        auto sys = testing::load_fixture(name);
        auto nd = analyze_newton(sys);
        for (const auto& face : nd.faces) {
            auto m = build_m_delta(sys, face);
            for (std::size_t i = 0; i < m.p; ++i) {
                Polynomial lhs(m.n);
                for (std::size_t j = 0; j < m.n; ++j) lhs += m.entries[i][j] * m.weights[j];
                lhs -= m.principal_parts[i] * m.weighted_degrees[i];
                CHECK(lhs.is_zero());
            }
        }
    }
}

TEST_CASE("normalized objective is invariant under the torus action") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.3, 2.0), t(0.2, 5.0);
    auto sys = testing::load_fixture("sphere_cubic.poly");
    auto nd = analyze_newton(sys);
    for (const auto& face : nd.faces) {
        auto m = build_m_delta(sys, face);
        for (int k = 0; k < 20; ++k) {
            std::vector<double> x(3), y(3);
            const double s = t(rng);
            for (std::size_t j = 0; j < 3; ++j) {
                x[j] = (k & (1 << j)) ? -u(rng) : u(rng);
                y[j] = x[j] * std::pow(s, m.weights[j].get_d());
            }
            CHECK(normalized_minor_objective(m, y) == doctest::Approx(normalized_minor_objective(m, x)).epsilon(1e-8));
            CHECK(minor_norm_objective(m, y) > 0.0);
        }
    }
}

TEST_CASE("single-polynomial verdicts match a dense grid on the circle") {
    // Homogeneous edge faces: the grid over the unit circle covers every torus orbit.
    for (const auto& [text, degenerate] : {std::pair{"f = x^2 - 2*x*y + y^2 + x\n", true},
                                           std::pair{"f = x^2 + y^2 + x + 1\n", false},
                                           std::pair{"f = x^2 - y^2 + 3\n", false},
                                           std::pair{"f = x^4 - 2*x^2*y^2 + y^4 + 1\n", true},
                                           std::pair{"f = x^2 + x*y + y^2 - 1\n", false}}) {
        auto sys = parse_system(text);
        auto nd = analyze_newton(sys);
        double grid_min = 1.0;
        for (const auto& face : nd.faces) {
            auto m = build_m_delta(sys, face);
            for (int k = 0; k < 200000; ++k) {
                const double th = 2 * M_PI * (k + 0.5) / 200000;
                std::vector<double> x{std::cos(th), std::sin(th)};
                if (std::abs(x[0]) < 1e-3 || std::abs(x[1]) < 1e-3) continue;
                grid_min = std::min(grid_min, normalized_minor_objective(m, x));
            }
        }
        CertifyConfig cfg;
        cfg.samples = 512;
        auto v = certify_system(sys, cfg);
        CHECK((grid_min < 1e-8) == degenerate);
        CHECK((v.overall == FaceStatus::Degenerate) == degenerate);
    }
}

TEST_CASE("verdicts are reproducible under a fixed seed") {
    auto sys = testing::load_fixture("diagonal_eps.poly");
    CertifyConfig cfg;
    cfg.samples = 256;
    cfg.seed = 9;
    auto a = to_json(certify_system(sys, cfg)).dump();
    auto b = to_json(certify_system(sys, cfg)).dump();
    CHECK(a == b);
    cfg.workers = 3;
    CHECK(to_json(certify_system(sys, cfg)).dump() == a);
}
