#pragma once

// Shared helpers and independent oracles for the test binaries.

#include "heb/newton.hpp"
#include "heb/polysys.hpp"
#include "heb/random.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace heb::testing {

inline std::string fixture_path(const std::string& name) { return std::string(HEB_FIXTURES) + "/" + name; }

inline PolySystem load_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

/// Random polynomial with small integer exponents and coefficients in [-5, 5].
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n, int max_degree, int terms) {
    std::uniform_int_distribution<int> coef(-5, 5), deg(0, max_degree);
    Polynomial f(n);
    for (int t = 0; t < terms; ++t) {
        ExponentVector e(n);
        int budget = deg(rng);
        for (int k = 0; k < budget; ++k) e[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] += 1;
        int c = coef(rng);
        if (c) f.add_term(e, Rational(c));
    }
    if (f.is_zero()) f.add_term(ExponentVector(n), Rational(1));
    return f;
}

/// Random convenient polynomial: a pure power of every variable plus random mixed terms.
inline Polynomial random_convenient(std::mt19937_64& rng, std::size_t n, int max_degree, int extra_terms) {
    Polynomial f = random_polynomial(rng, n, max_degree, extra_terms);
    std::uniform_int_distribution<int> power(1, max_degree), coef(1, 4);
    for (std::size_t j = 0; j < n; ++j) {
        ExponentVector e(n);
        e[j] = power(rng);
        f.add_term(e, Rational(coef(rng)));
        if (f.coefficient(e) == 0) f.add_term(e, Rational(1));
    }
    return f;
}

inline Rational dot(const std::vector<Rational>& q, const ExponentVector& k) {
    Rational s = 0;
    for (std::size_t j = 0; j < q.size(); ++j) s += q[j] * k[j];
    return s;
}

/// Exact rank of a rational matrix by Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Brute-force facet normals of conv(points), for full-dimensional point sets:
/// every hyperplane through n affinely independent points that leaves all points
/// on one side. Returns the set of (primitive normal, offset) pairs, inward facing.
inline std::set<std::pair<std::vector<Integer>, Integer>> brute_force_facets(const std::vector<ExponentVector>& pts) {
    std::set<std::pair<std::vector<Integer>, Integer>> out;
    const std::size_t m = pts.size();
    if (m == 0) return out;
    const std::size_t n = pts[0].size();
    std::vector<std::size_t> idx(n);
    // Enumerate n-subsets.
    std::vector<bool> mask(m, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(std::min(n, m)), true);
    if (m < n) return out;
    do {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < m; ++i)
            if (mask[i]) chosen.push_back(i);
        // Normal = null vector of the (n-1) x n difference matrix.
        std::vector<std::vector<Rational>> diff;
        for (std::size_t k = 1; k < n; ++k) {
            std::vector<Rational> row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = pts[chosen[k]][j] - pts[chosen[0]][j];
            diff.push_back(row);
        }
        if (rational_rank(diff) != n - 1) continue;
        // Null vector via cofactors: the generalized cross product.
        std::vector<Rational> normal(n);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<Rational>> minor;
            for (const auto& row : diff) {
                std::vector<Rational> r;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != j) r.push_back(row[k]);
                minor.push_back(r);
            }
            // Determinant by elimination.
            Rational det = 1;
            const std::size_t s = minor.size();
            for (std::size_t c = 0; c < s; ++c) {
                std::size_t piv = c;
                while (piv < s && minor[piv][c] == 0) ++piv;
                if (piv == s) {
                    det = 0;
                    break;
                }
                if (piv != c) {
                    std::swap(minor[piv], minor[c]);
                    det = -det;
                }
                det *= minor[c][c];
                for (std::size_t r = c + 1; r < s; ++r) {
                    Rational f = minor[r][c] / minor[c][c];
                    for (std::size_t k = c; k < s; ++k) minor[r][k] -= f * minor[c][k];
                }
            }
            normal[j] = ((j % 2) ? -det : det);
        }
        Rational offset = dot(normal, pts[chosen[0]]);
        bool ge = true, le = true;
        for (const auto& p : pts) {
            Rational v = dot(normal, p);
            if (v < offset) ge = false;
            if (v > offset) le = false;
        }
        if (!ge && !le) continue;
        if (!ge) {
            for (auto& v : normal) v = -v;
            offset = -offset;
        }
        auto prim = primitive_integer(normal);
        std::vector<Rational> pr(prim.begin(), prim.end());
        Integer off(dot(pr, pts[chosen[0]]));
        out.insert({prim, off});
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

}  // namespace heb::testing
