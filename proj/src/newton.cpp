#include "heb/newton.hpp"

#include "heb/error.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace heb {

namespace {

/// Fixed-size bit set over generator (or constraint) indices.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    std::size_t size() const { return size_; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }
    bool is_subset_of(const BitSet& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~other.words_[k]) return false;
        return true;
    }
    BitSet& operator&=(const BitSet& other) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
        return *this;
    }
    friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
    friend bool operator==(const BitSet&, const BitSet&) = default;
    friend bool operator<(const BitSet& a, const BitSet& b) { return a.words_ < b.words_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

using IVec = std::vector<Integer>;

Integer dot(const IVec& a, const IVec& b) {
    Integer s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

void make_primitive(IVec& v) {
    Integer g = 0;
    for (const auto& z : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g > 1)
        for (auto& z : v) z /= g;
}

/// Row-reduces a copy of rows over Q; returns the pivot columns (rank = size).
std::vector<std::size_t> pivot_columns(std::vector<std::vector<Rational>> rows, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational factor = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < ncols; ++k) rows[i][k] -= factor * rows[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Extreme rays of the pointed cone {y : A y >= 0} by the double description method.
/// A must have full column rank. Each ray carries its set of tight rows.
std::vector<std::pair<IVec, BitSet>> extreme_rays(const std::vector<IVec>& rows) {
    const std::size_t m = rows.size();
    const std::size_t dim = rows.front().size();

    // Greedy basis of dim independent rows.
    std::vector<std::size_t> basis;
    std::vector<std::vector<Rational>> echelon;
    std::vector<std::size_t> echelon_pivot;
    for (std::size_t i = 0; i < m && basis.size() < dim; ++i) {
        std::vector<Rational> v(rows[i].begin(), rows[i].end());
        for (std::size_t b = 0; b < echelon.size(); ++b) {
            std::size_t pc = echelon_pivot[b];
            if (v[pc] == 0) continue;
            Rational f = v[pc] / echelon[b][pc];
            for (std::size_t k = 0; k < dim; ++k) v[k] -= f * echelon[b][k];
        }
        auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
        if (nz == v.end()) continue;
        echelon_pivot.push_back(static_cast<std::size_t>(nz - v.begin()));
        echelon.push_back(std::move(v));
        basis.push_back(i);
    }
    if (basis.size() != dim) throw std::logic_error("extreme_rays: constraint matrix is rank deficient");

    // Inverse of the basis submatrix; column j is the ray tight on every basis row but j.
    std::vector<std::vector<Rational>> aug(dim, std::vector<Rational>(2 * dim));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) aug[r][c] = rows[basis[r]][c];
        aug[r][dim + r] = 1;
    }
    for (std::size_t c = 0; c < dim; ++c) {
        std::size_t sel = c;
        while (aug[sel][c] == 0) ++sel;
        std::swap(aug[c], aug[sel]);
        Rational piv = aug[c][c];
        for (auto& x : aug[c]) x /= piv;
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == c || aug[r][c] == 0) continue;
            Rational f = aug[r][c];
            for (std::size_t k = 0; k < 2 * dim; ++k) aug[r][k] -= f * aug[c][k];
        }
    }

    std::vector<std::pair<IVec, BitSet>> rays;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Rational> col(dim);
        for (std::size_t r = 0; r < dim; ++r) col[r] = aug[r][dim + j];
        IVec ray = primitive_integer(col);
        BitSet zero(m);
        for (std::size_t b = 0; b < dim; ++b)
            if (b != j) zero.set(basis[b]);
        rays.emplace_back(std::move(ray), std::move(zero));
    }

    std::vector<bool> in_basis(m, false);
    for (auto b : basis) in_basis[b] = true;

    for (std::size_t i = 0; i < m; ++i) {
        if (in_basis[i]) continue;
        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> pos, neg, zero;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(rows[i], rays[r].first);
            int s = sgn(val[r]);
            (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
        }
        if (neg.empty()) {
            for (auto r : zero) rays[r].second.set(i);
            continue;
        }
        std::vector<std::pair<IVec, BitSet>> next;
        for (auto a : pos) {
            for (auto b : neg) {
                BitSet common = rays[a].second & rays[b].second;
                if (dim >= 2 && common.count() + 2 < dim) continue;
                bool adjacent = true;
                for (std::size_t c = 0; c < rays.size() && adjacent; ++c)
                    if (c != a && c != b && common.is_subset_of(rays[c].second)) adjacent = false;
                if (!adjacent) continue;
                IVec ray(dim);
                for (std::size_t k = 0; k < dim; ++k)
                    ray[k] = val[a] * rays[b].first[k] - val[b] * rays[a].first[k];
                make_primitive(ray);
                common.set(i);
                next.emplace_back(std::move(ray), std::move(common));
            }
        }
        for (auto r : pos) next.push_back(rays[r]);
        for (auto r : zero) {
            rays[r].second.set(i);
            next.push_back(rays[r]);
        }
        rays = std::move(next);
    }
    return rays;
}

Rational dot(const std::vector<Rational>& q, const ExponentVector& e) {
    Rational s = 0;
    for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] != 0) s += q[j] * e[j];
    return s;
}

/// Face lattice bookkeeping shared by the hull and the enumeration.
struct Incidence {
    std::vector<BitSet> facet_points;  // per facet: generators on it
};

Incidence incidence_of(const NewtonPolytope& gamma) {
    Incidence inc;
    const auto& pts = gamma.points();
    for (const auto& f : gamma.facets()) {
        BitSet on(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (dot(f.normal, pts[i]) == f.offset) on.set(i);
        inc.facet_points.push_back(std::move(on));
    }
    return inc;
}

}  // namespace

int affine_dimension(const std::vector<ExponentVector>& points) {
    if (points.empty()) return -1;
    const std::size_t n = points.front().size();
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 1; i < points.size(); ++i) {
        std::vector<Rational> r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = points[i][j] - points[0][j];
        rows.push_back(std::move(r));
    }
    return static_cast<int>(pivot_columns(std::move(rows), n).size());
}

NewtonPolytope NewtonPolytope::from_points(std::size_t nvars, std::vector<ExponentVector> points) {
    for (const auto& p : points) {
        if (p.size() != nvars) throw DimensionError("generator has the wrong number of coordinates");
        for (std::size_t j = 0; j < nvars; ++j)
            if (p[j] < 0) throw Error("generators of a Newton polyhedron must be non-negative");
    }
    points.push_back(ExponentVector(nvars));
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    NewtonPolytope gamma;
    gamma.nvars_ = nvars;
    gamma.points_ = points;

    // The origin is a generator, so the affine hull is the linear span of the points.
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : points) rows.emplace_back(p.entries().begin(), p.entries().end());
    const std::vector<std::size_t> pivots = pivot_columns(rows, nvars);
    const std::size_t k = pivots.size();
    gamma.dim_ = static_cast<int>(k);
    if (k == 0) {
        gamma.vertices_ = points;
        return gamma;
    }

    // Projection onto the pivot coordinates is injective on the span; work in R^k
    // with the homogenized constraints (pi(g), -1) . (a, b) >= 0.
    std::vector<IVec> cons;
    for (const auto& p : points) {
        IVec row(k + 1);
        for (std::size_t c = 0; c < k; ++c) row[c] = p[pivots[c]];
        row[k] = -1;
        cons.push_back(std::move(row));
    }
    auto rays = extreme_rays(cons);

    std::set<std::vector<Integer>> seen;
    for (auto& [ray, tight] : rays) {
        IVec a(ray.begin(), ray.begin() + static_cast<std::ptrdiff_t>(k));
        if (std::all_of(a.begin(), a.end(), [](const Integer& z) { return z == 0; })) continue;
        if (tight.none()) continue;
        make_primitive(a);
        if (!seen.insert(a).second) continue;
        Facet f;
        f.normal.assign(nvars, Rational(0));
        for (std::size_t c = 0; c < k; ++c) f.normal[pivots[c]] = Rational(a[c]);
        bool first = true;
        for (const auto& p : points) {
            Rational v = dot(f.normal, p);
            if (first || v < f.offset) f.offset = v;
            first = false;
        }
        gamma.facets_.push_back(std::move(f));
    }
    std::sort(gamma.facets_.begin(), gamma.facets_.end(), [](const Facet& a, const Facet& b) {
        return std::lexicographical_compare(a.normal.begin(), a.normal.end(), b.normal.begin(), b.normal.end());
    });

    const Incidence inc = incidence_of(gamma);
    for (std::size_t i = 0; i < points.size(); ++i) {
        BitSet meet(points.size());
        bool any = false;
        for (const auto& fp : inc.facet_points) {
            if (!fp.test(i)) continue;
            meet = any ? (meet & fp) : fp;
            any = true;
        }
        if (any && meet.count() == 1) gamma.vertices_.push_back(points[i]);
    }
    return gamma;
}

bool NewtonPolytope::contains_generator(const ExponentVector& e) const {
    return std::binary_search(points_.begin(), points_.end(), e);
}

Rational support_value(const NewtonPolytope& gamma, const std::vector<Rational>& q) {
    if (q.size() != gamma.ambient_dim()) throw DimensionError("normal vector has the wrong dimension");
    Rational best = 0;  // the origin is always a generator
    for (const auto& p : gamma.points()) best = std::min(best, dot(q, p));
    return best;
}

std::vector<ExponentVector> face_points(const NewtonPolytope& gamma, const std::vector<Rational>& q) {
    const Rational d = support_value(gamma, q);
    std::vector<ExponentVector> out;
    for (const auto& p : gamma.points())
        if (dot(q, p) == d) out.push_back(p);
    return out;
}

NewtonPolytope newton_polytope(const Polynomial& f) {
    if (f.is_zero()) throw Error("the Newton polyhedron of the zero polynomial is empty");
    return NewtonPolytope::from_points(f.nvars(), f.support());
}

ConvenienceReport is_convenient(const NewtonPolytope& gamma) {
    ConvenienceReport rep;
    for (std::size_t j = 0; j < gamma.ambient_dim(); ++j) {
        bool hit = std::any_of(gamma.points().begin(), gamma.points().end(),
                               [j](const ExponentVector& e) { return e.pure_power_of(j) > 0; });
        if (!hit) rep.missing_axes.push_back(j);
    }
    rep.convenient = rep.missing_axes.empty();
    return rep;
}

ConvenienceReport is_convenient(const Polynomial& f) {
    if (f.is_zero()) throw Error("convenience is undefined for the zero polynomial");
    ConvenienceReport rep;
    const auto supp = f.support();
    for (std::size_t j = 0; j < f.nvars(); ++j) {
        bool hit = std::any_of(supp.begin(), supp.end(), [j](const ExponentVector& e) { return e.pure_power_of(j) > 0; });
        if (!hit) rep.missing_axes.push_back(j);
    }
    rep.convenient = rep.missing_axes.empty();
    return rep;
}

NewtonPolytope minkowski_sum(const std::vector<NewtonPolytope>& polytopes) {
    if (polytopes.empty()) throw Error("Minkowski sum of an empty list");
    const std::size_t n = polytopes.front().ambient_dim();
    for (const auto& g : polytopes)
        if (g.ambient_dim() != n) throw DimensionError("Minkowski summands live in different dimensions");
    // Every vertex of a sum is a sum of summand vertices.
    std::vector<ExponentVector> acc = polytopes.front().vertices();
    for (std::size_t i = 1; i < polytopes.size(); ++i) {
        std::set<ExponentVector> next;
        for (const auto& a : acc)
            for (const auto& b : polytopes[i].vertices()) next.insert(a + b);
        auto partial = NewtonPolytope::from_points(n, {next.begin(), next.end()});
        acc = (i + 1 == polytopes.size()) ? std::vector<ExponentVector>(next.begin(), next.end()) : partial.vertices();
    }
    return NewtonPolytope::from_points(n, std::move(acc));
}

std::vector<FaceAtInfinity> faces_at_infinity(const NewtonPolytope& gamma, const FaceEnumerationOptions& options) {
    const auto& pts = gamma.points();
    std::vector<FaceAtInfinity> out;
    if (gamma.dim() == 0) return out;

    const Incidence inc = incidence_of(gamma);
    const std::size_t origin = static_cast<std::size_t>(
        std::find(pts.begin(), pts.end(), ExponentVector(gamma.ambient_dim())) - pts.begin());

    // Closure of the facets under intersection gives every proper nonempty face.
    std::set<BitSet> seen;
    std::deque<BitSet> queue;
    for (const auto& fp : inc.facet_points)
        if (seen.insert(fp).second) queue.push_back(fp);
    while (!queue.empty()) {
        BitSet face = std::move(queue.front());
        queue.pop_front();
        for (const auto& fp : inc.facet_points) {
            BitSet meet = face & fp;
            if (meet.none() || meet == face) continue;
            if (seen.insert(meet).second) {
                if (seen.size() > options.face_cap)
                    throw EnumerationOverflow("face enumeration exceeded the cap of " +
                                              std::to_string(options.face_cap) + " faces");
                queue.push_back(std::move(meet));
            }
        }
    }

    for (const auto& face : seen) {
        if (face.test(origin)) continue;
        FaceAtInfinity f;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (face.test(i)) f.support_points.push_back(pts[i]);
        for (const auto& v : gamma.vertices())
            if (std::binary_search(f.support_points.begin(), f.support_points.end(), v)) f.vertices.push_back(v);
        f.dim = affine_dimension(f.support_points);

        f.witness_normal.assign(gamma.ambient_dim(), Rational(0));
        for (std::size_t k = 0; k < inc.facet_points.size(); ++k) {
            if (!face.is_subset_of(inc.facet_points[k])) continue;
            for (std::size_t j = 0; j < gamma.ambient_dim(); ++j) f.witness_normal[j] += gamma.facets()[k].normal[j];
        }
        f.value = support_value(gamma, f.witness_normal);
        if (face_points(gamma, f.witness_normal) != f.support_points)
            throw std::logic_error("witness normal does not cut out its face");
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const FaceAtInfinity& a, const FaceAtInfinity& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.support_points < b.support_points;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i + 1;
    return out;
}

std::vector<std::vector<ExponentVector>> decompose_face(const FaceAtInfinity& face,
                                                        const std::vector<NewtonPolytope>& summands) {
    const auto& q = face.witness_normal;
    Rational total = 0;
    std::vector<std::vector<ExponentVector>> parts;
    for (const auto& g : summands) {
        total += support_value(g, q);
        parts.push_back(face_points(g, q));
    }
    bool supports = total == face.value;
    for (const auto& s : face.support_points)
        if (dot(q, s) != face.value) supports = false;
    if (!supports)
        throw Error("face " + std::to_string(face.id) + ": witness normal does not support the face on the summands");
    return parts;
}

bool SystemNewtonData::convenient() const {
    return std::all_of(convenience.begin(), convenience.end(), [](const ConvenienceReport& r) { return r.convenient; });
}

SystemNewtonData analyze_newton(const PolySystem& system, const FaceEnumerationOptions& options) {
    system.require_nonzero_components();
    SystemNewtonData data;
    for (const auto& f : system.polys()) {
        data.components.push_back(newton_polytope(f));
        data.convenience.push_back(is_convenient(f));
    }
    data.sum = minkowski_sum(data.components);
    data.faces = faces_at_infinity(data.sum, options);
    for (auto& face : data.faces) face.decomposition = decompose_face(face, data.components);
    return data;
}

}  // namespace heb
