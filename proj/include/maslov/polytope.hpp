#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

namespace maslov {

using LatticePoint = std::vector<std::int64_t>;

/// Convex lattice polytope in Z^n, n <= 3, stored as its irredundant vertex
/// list in lexicographic order.  Equality of polytopes is equality of these
/// canonical lists.  All arithmetic is exact integer arithmetic.
class Polytope {
public:
    /// Convex hull of `points` (ShapeError if empty, n > 3, or a point of the
    /// wrong length).
    static Polytope hull(std::size_t dim, std::vector<LatticePoint> points);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }

    friend bool operator==(const Polytope&, const Polytope&) = default;

private:
    Polytope(std::size_t dim, std::vector<LatticePoint> vertices) : dim_(dim), vertices_(std::move(vertices)) {}

    std::size_t dim_;
    std::vector<LatticePoint> vertices_;
};

/// Extreme points of a finite lattice point set, sorted lexicographically.
std::vector<LatticePoint> convex_hull_vertices(std::size_t dim, std::vector<LatticePoint> points);

/// Minkowski semiring operations.
Polytope minkowski_add(const Polytope& p, const Polytope& q);  ///< hull of the union
Polytope minkowski_mul(const Polytope& p, const Polytope& q);  ///< Minkowski sum

/// `{"dim": n, "vertices": [[..], ...]}`
void write_polytope_json(std::ostream& out, const Polytope& p);
/// Same format; the listed points need not be extreme, the hull is taken.
Polytope read_polytope_json(std::istream& in);
/// Filled polygon (n = 2) or segment/point rendering.
void write_polytope_svg(std::ostream& out, const Polytope& p);

}  // namespace maslov
