#pragma once

#include "heb/polysys.hpp"
#include "heb/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace heb {

/// Supporting half-space {k : <normal, k> >= offset}; normal is a primitive integer vector.
struct Facet {
    std::vector<Rational> normal;
    Rational offset;
};

/// Convex hull of a finite lattice point set that always contains the origin
/// (the Newton polyhedron at infinity). Points are the generators, sorted and
/// deduplicated; vertices are the extreme generators.
class NewtonPolytope {
public:
    /// Builds the hull of points plus the origin. Throws DimensionError on ragged input.
    static NewtonPolytope from_points(std::size_t nvars, std::vector<ExponentVector> points);

    std::size_t ambient_dim() const noexcept { return nvars_; }
    int dim() const noexcept { return dim_; }
    const std::vector<ExponentVector>& points() const noexcept { return points_; }
    const std::vector<ExponentVector>& vertices() const noexcept { return vertices_; }
    const std::vector<Facet>& facets() const noexcept { return facets_; }

    bool contains_generator(const ExponentVector& e) const;

private:
    std::size_t nvars_ = 0;
    int dim_ = 0;
    std::vector<ExponentVector> points_;
    std::vector<ExponentVector> vertices_;
    std::vector<Facet> facets_;
};

/// d(q, G) = min over generators of <q, k>.
Rational support_value(const NewtonPolytope& gamma, const std::vector<Rational>& q);
/// Generators attaining d(q, G), i.e. the lattice points of the face Delta(q, G).
std::vector<ExponentVector> face_points(const NewtonPolytope& gamma, const std::vector<Rational>& q);

/// A face of a Newton polyhedron not containing the origin, with a normal q in
/// the relative interior of its normal cone.
struct FaceAtInfinity {
    std::size_t id = 0;  // 1-based position in the enumeration order
    int dim = 0;
    std::vector<ExponentVector> support_points;  // generators lying on the face
    std::vector<ExponentVector> vertices;
    std::vector<Rational> witness_normal;
    Rational value;  // d(q, G) < 0 is not assumed; origin exclusion is the defining test
    /// One generator set per summand, present for faces of Minkowski sums.
    std::optional<std::vector<std::vector<ExponentVector>>> decomposition;
};

struct ConvenienceReport {
    bool convenient = false;
    std::vector<std::size_t> missing_axes;  // 0-based variable indices
};

struct FaceEnumerationOptions {
    std::size_t face_cap = 20000;
};

NewtonPolytope newton_polytope(const Polynomial& f);
ConvenienceReport is_convenient(const Polynomial& f);
ConvenienceReport is_convenient(const NewtonPolytope& gamma);
NewtonPolytope minkowski_sum(const std::vector<NewtonPolytope>& polytopes);

/// Every nonempty face without the origin, ordered by dimension then by support.
std::vector<FaceAtInfinity> faces_at_infinity(const NewtonPolytope& gamma,
                                              const FaceEnumerationOptions& options = {});

/// Component faces Delta(q, G_i) for the face's witness normal. Throws heb::Error when
/// q does not cut out the face on the Minkowski sum of the summands.
std::vector<std::vector<ExponentVector>> decompose_face(const FaceAtInfinity& face,
                                                        const std::vector<NewtonPolytope>& summands);

/// Newton data of a whole system: per-component polyhedra, their sum and the
/// decomposed faces at infinity of the sum.
struct SystemNewtonData {
    std::vector<NewtonPolytope> components;
    std::vector<ConvenienceReport> convenience;
    NewtonPolytope sum;
    std::vector<FaceAtInfinity> faces;

    bool convenient() const;
};

SystemNewtonData analyze_newton(const PolySystem& system, const FaceEnumerationOptions& options = {});

/// Affine dimension of a finite point set (-1 when empty).
int affine_dimension(const std::vector<ExponentVector>& points);

}  // namespace heb
