#pragma once

// Exact rational polytopes in dimension <= 4.

#include <cstddef>
#include <functional>
#include <vector>

#include "toricmld/exact_lattice.hpp"

namespace toric {

/// Half-space <normal, x> <= offset with a primitive integer normal.
struct Facet {
  IntVector normal;
  Rat offset;

  friend bool operator==(const Facet&, const Facet&) = default;
};

/// Full-dimensional polytope carrying both representations. Vertices are
/// sorted lexicographically, facets by normal.
class RatPolytope {
 public:
  RatPolytope() = default;

  std::size_t dim() const { return dim_; }
  const std::vector<RatVector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool contains(const RatVector& x) const;
  bool contains_strictly(const RatVector& x) const;
  /// Indices of the vertices on each facet, parallel to facets().
  std::vector<std::vector<std::size_t>> incidences() const;

  friend bool operator==(const RatPolytope&, const RatPolytope&) = default;

 private:
  friend RatPolytope convex_hull(const std::vector<RatVector>& points);
  friend RatPolytope scale_about(const RatPolytope& p, const Rat& t, const RatVector& c);
  friend RatPolytope reflect_about(const RatPolytope& p, const RatVector& c);
  friend RatPolytope translate(const RatPolytope& p, const RatVector& v);

  void sort_parts();

  std::size_t dim_ = 0;
  std::vector<RatVector> vertices_;
  std::vector<Facet> facets_;
};

/// Hull of a full-dimensional point set (ambient dimension 0..4). A single
/// point in dimension 0 is the rank-0 polytope.
RatPolytope convex_hull(const std::vector<RatVector>& points);

/// Pulling triangulation: each simplex is a list of dim+1 vertex indices.
std::vector<std::vector<std::size_t>> triangulate(const RatPolytope& p);

/// Euclidean volume in the ambient coordinates.
Rat euclidean_volume(const RatPolytope& p);
/// Volume normalized so a fundamental cell of `lattice` has volume 1. The
/// lattice must be a full-rank sublattice of Z^dim. Rank 0 gives 1.
Rat normalized_volume(const RatPolytope& p, const SublatticeBasis& lattice);
Rat normalized_volume(const RatPolytope& p);

RatPolytope minkowski_sum(const RatPolytope& p, const RatPolytope& q);
/// P + (-P), centrally symmetric about the origin.
RatPolytope difference_body(const RatPolytope& p);
/// c + t(P - c), t > 0.
RatPolytope scale_about(const RatPolytope& p, const Rat& t, const RatVector& c);
/// 2c - P.
RatPolytope reflect_about(const RatPolytope& p, const RatVector& c);
RatPolytope translate(const RatPolytope& p, const RatVector& v);

Rat support_function(const RatPolytope& p, const RatVector& u);

/// Largest gamma with z + gamma(S - S) contained in S.
Rat max_gamma(const RatPolytope& s, const RatVector& z);

/// Hull of {0} and {h} × Q in R × R^k.
RatPolytope cone_over(const Rat& h, const RatPolytope& q);

/// Calls `visit` with the lattice coordinates c of every point x = (1/scale)·c·B
/// of (1/scale)·L inside P (interior only when strict), in lexicographic order
/// of c. Enumeration stops early when `visit` returns false.
void for_each_lattice_point(const RatPolytope& p, const SublatticeBasis& lattice, const Int& scale, bool strict,
                            const std::function<bool(const IntVector&)>& visit);

/// All points of (1/scale)·L in P, in ambient coordinates, ordered
/// lexicographically by lattice coordinates.
std::vector<RatVector> enumerate_points(const RatPolytope& p, const SublatticeBasis& lattice, const Int& scale,
                                        bool strict);
std::vector<RatVector> enumerate_points(const RatPolytope& p, const Int& scale, bool strict);

}  // namespace toric
