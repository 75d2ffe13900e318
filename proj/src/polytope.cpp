#include "toricmld/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace toric {

namespace {

constexpr std::size_t kMaxDim = 4;

std::size_t affine_rank(const std::vector<RatVector>& pts, const std::vector<std::size_t>& idx) {
  if (idx.size() <= 1) return 0;
  const std::size_t dim = pts[idx[0]].size();
  RatMatrix m(idx.size() - 1, dim);
  for (std::size_t i = 1; i < idx.size(); ++i) m.set_row(i - 1, pts[idx[i]] - pts[idx[0]]);
  return rank(m);
}

// Advances a k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

bool RatPolytope::contains(const RatVector& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Facet& f) { return dot(x, f.normal) <= f.offset; });
}

bool RatPolytope::contains_strictly(const RatVector& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Facet& f) { return dot(x, f.normal) < f.offset; });
}

std::vector<std::vector<std::size_t>> RatPolytope::incidences() const {
  std::vector<std::vector<std::size_t>> out(facets_.size());
  for (std::size_t f = 0; f < facets_.size(); ++f)
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (dot(vertices_[v], facets_[f].normal) == facets_[f].offset) out[f].push_back(v);
  return out;
}

void RatPolytope::sort_parts() {
  std::sort(vertices_.begin(), vertices_.end());
  std::sort(facets_.begin(), facets_.end(), [](const Facet& a, const Facet& b) {
    return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
  });
}

RatPolytope convex_hull(const std::vector<RatVector>& input) {
  if (input.empty()) throw Error(ErrorCode::NotFullDimensional, "hull of an empty point set");
  const std::size_t dim = input[0].size();
  for (const auto& p : input)
    if (p.size() != dim) throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");
  if (dim > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "hull is limited to dimension 4");

  std::vector<RatVector> pts = input;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  RatPolytope out;
  out.dim_ = dim;
  if (dim == 0) {
    out.vertices_ = pts;
    return out;
  }
  std::vector<std::size_t> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  if (pts.size() < dim + 1 || affine_rank(pts, all) < dim)
    throw Error(ErrorCode::NotFullDimensional, "point set spans less than dimension " + std::to_string(dim));

  // Work with integer points scaled by a common denominator.
  Int scale = 1;
  for (const auto& p : pts) scale = lcm(scale, denominator_lcm(p));
  std::vector<IntVector> ipts;
  ipts.reserve(pts.size());
  for (const auto& p : pts) ipts.push_back(to_int(Rat(scale) * p));

  const std::size_t n = ipts.size();
  std::map<IntVector, Int> found;  // normal -> scaled offset
  std::vector<std::vector<bool>> tight_sets;
  std::vector<std::size_t> comb(dim);
  std::iota(comb.begin(), comb.end(), 0);
  IntMatrix diff(dim - 1, dim);
  do {
    // Skip combinations already lying on a known facet.
    bool known = std::any_of(tight_sets.begin(), tight_sets.end(), [&](const std::vector<bool>& t) {
      return std::all_of(comb.begin(), comb.end(), [&](std::size_t i) { return t[i]; });
    });
    if (known) continue;
    for (std::size_t k = 1; k < dim; ++k) diff.set_row(k - 1, ipts[comb[k]] - ipts[comb[0]]);
    IntVector normal = cofactor_normal(diff);
    if (is_zero(normal)) continue;
    normal = primitive(normal);
    Int off = dot(normal, ipts[comb[0]]);
    bool pos = false, neg = false;
    std::vector<bool> tight(n, false);
    for (std::size_t j = 0; j < n && !(pos && neg); ++j) {
      int s = sgn(Int(dot(normal, ipts[j]) - off));
      if (s > 0) pos = true;
      else if (s < 0) neg = true;
      else tight[j] = true;
    }
    if (pos && neg) continue;
    if (pos) {
      normal = Int(-1) * normal;
      off = -off;
    }
    if (found.emplace(normal, off).second) tight_sets.push_back(std::move(tight));
  } while (next_combination(comb, n));

  for (const auto& [normal, off] : found) out.facets_.push_back({normal, make_rat(off, scale)});

  // A point is a vertex iff its tight facet normals span the whole space.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<IntVector> normals;
    for (const auto& [normal, off] : found)
      if (dot(normal, ipts[j]) == off) normals.push_back(normal);
    if (normals.size() < dim) continue;
    if (rank(IntMatrix::from_rows(normals, dim)) == dim) out.vertices_.push_back(pts[j]);
  }
  out.sort_parts();
  return out;
}

namespace {

void triangulate_face(const RatPolytope& p, const std::vector<std::vector<std::size_t>>& inc,
                      const std::vector<std::size_t>& face, std::size_t face_dim,
                      std::vector<std::vector<std::size_t>>& out) {
  if (face.size() == face_dim + 1) {
    out.push_back(face);
    return;
  }
  const std::size_t apex = face.front();
  std::set<std::vector<std::size_t>> subfaces;
  for (const auto& facet_vertices : inc) {
    std::vector<std::size_t> g;
    std::set_intersection(face.begin(), face.end(), facet_vertices.begin(), facet_vertices.end(),
                          std::back_inserter(g));
    if (g.size() < face_dim || std::binary_search(g.begin(), g.end(), apex)) continue;
    if (g.size() == face.size()) continue;
    if (affine_rank(p.vertices(), g) == face_dim - 1) subfaces.insert(std::move(g));
  }
  for (const auto& g : subfaces) {
    std::vector<std::vector<std::size_t>> sub;
    triangulate_face(p, inc, g, face_dim - 1, sub);
    for (auto& s : sub) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> triangulate(const RatPolytope& p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> all(p.vertices().size());
  std::iota(all.begin(), all.end(), 0);
  triangulate_face(p, p.incidences(), all, p.dim(), out);
  return out;
}

Rat euclidean_volume(const RatPolytope& p) {
  const std::size_t dim = p.dim();
  if (dim == 0) return 1;
  Int factorial = 1;
  for (std::size_t k = 2; k <= dim; ++k) factorial *= static_cast<unsigned long>(k);
  Rat total = 0;
  const auto& v = p.vertices();
  for (const auto& simplex : triangulate(p)) {
    RatMatrix m(dim, dim);
    for (std::size_t k = 1; k <= dim; ++k) m.set_row(k - 1, v[simplex[k]] - v[simplex[0]]);
    total += abs(determinant(m));
  }
  return total / factorial;
}

Rat normalized_volume(const RatPolytope& p, const SublatticeBasis& lattice) {
  if (lattice.ambient_dim() != p.dim() || lattice.rank() != p.dim())
    throw Error(ErrorCode::DimensionMismatch, "volume needs a full-rank lattice in the polytope's ambient space");
  if (p.dim() == 0) return 1;
  return euclidean_volume(p) / Rat(lattice.index());
}

Rat normalized_volume(const RatPolytope& p) { return euclidean_volume(p); }

RatPolytope minkowski_sum(const RatPolytope& p, const RatPolytope& q) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "Minkowski sum of different dimensions");
  std::vector<RatVector> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) sums.push_back(a + b);
  return convex_hull(sums);
}

RatPolytope difference_body(const RatPolytope& p) {
  return minkowski_sum(p, reflect_about(p, RatVector(p.dim())));
}

RatPolytope scale_about(const RatPolytope& p, const Rat& t, const RatVector& c) {
  if (t <= 0) throw Error(ErrorCode::InvalidParameters, "scale factor must be positive");
  if (c.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "scaling centre");
  RatPolytope out = p;
  for (auto& v : out.vertices_) v = c + t * (v - c);
  for (auto& f : out.facets_) f.offset = t * f.offset + (1 - t) * dot(c, f.normal);
  out.sort_parts();
  return out;
}

RatPolytope reflect_about(const RatPolytope& p, const RatVector& c) {
  if (c.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "reflection centre");
  RatPolytope out = p;
  for (auto& v : out.vertices_) v = Rat(2) * c - v;
  for (auto& f : out.facets_) {
    f.offset = f.offset - 2 * dot(c, f.normal);
    f.normal = Int(-1) * f.normal;
  }
  out.sort_parts();
  return out;
}

RatPolytope translate(const RatPolytope& p, const RatVector& v) {
  if (v.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "translation vector");
  RatPolytope out = p;
  for (auto& x : out.vertices_) x = x + v;
  for (auto& f : out.facets_) f.offset += dot(v, f.normal);
  out.sort_parts();
  return out;
}

Rat support_function(const RatPolytope& p, const RatVector& u) {
  if (p.vertices().empty()) throw Error(ErrorCode::UnboundedRegion, "support function of an empty polytope");
  Rat best = dot(u, p.vertices().front());
  for (const auto& v : p.vertices()) best = std::max(best, dot(u, v));
  return best;
}

Rat max_gamma(const RatPolytope& s, const RatVector& z) {
  if (!s.contains_strictly(z)) throw Error(ErrorCode::PointNotInterior, to_string(z) + " is not interior");
  std::optional<Rat> best;
  for (const auto& f : s.facets()) {
    RatVector u = to_rat(f.normal);
    // h_{S-S}(u) = h_S(u) + h_S(-u)
    Rat width = support_function(s, u) + support_function(s, -u);
    Rat g = (f.offset - dot(z, f.normal)) / width;
    if (!best || g < *best) best = g;
  }
  if (!best) throw Error(ErrorCode::DimensionMismatch, "max_gamma needs a polytope of positive dimension");
  return *best;
}

RatPolytope cone_over(const Rat& h, const RatPolytope& q) {
  if (h <= 0) throw Error(ErrorCode::InvalidParameters, "cone height must be positive");
  std::vector<RatVector> pts;
  pts.push_back(RatVector(q.dim() + 1));
  for (const auto& v : q.vertices()) {
    RatVector lifted;
    lifted.reserve(v.size() + 1);
    lifted.push_back(h);
    lifted.insert(lifted.end(), v.begin(), v.end());
    pts.push_back(std::move(lifted));
  }
  return convex_hull(pts);
}

namespace {

struct SliceLevel {
  // Facets of the projection onto the first (level+1) coordinates.
  std::vector<IntVector> normals;
  std::vector<Rat> offsets;
};

bool visit_level(const std::vector<SliceLevel>& levels, std::size_t k, bool strict, IntVector& prefix,
                 const std::function<bool(const IntVector&)>& visit) {
  const std::size_t dim = levels.size();
  const bool last = k + 1 == dim;
  const SliceLevel& level = levels[k];
  std::optional<Rat> lo, hi;
  for (std::size_t f = 0; f < level.normals.size(); ++f) {
    const IntVector& w = level.normals[f];
    Rat rest = level.offsets[f];
    for (std::size_t i = 0; i < k; ++i) rest -= w[i] * prefix[i];
    if (w[k] == 0) {
      if (last && strict && rest <= 0) return true;
      if (rest < 0) return true;
      continue;
    }
    Rat bound = rest / Rat(w[k]);
    if (w[k] > 0) {
      if (!hi || bound < *hi) hi = bound;
    } else {
      if (!lo || bound > *lo) lo = bound;
    }
  }
  if (!lo || !hi) throw Error(ErrorCode::UnboundedRegion, "slice is unbounded");
  const bool open = last && strict;
  Int first = open ? Int(floor(*lo) + 1) : ceil(*lo);
  Int stop = open ? Int(ceil(*hi) - 1) : floor(*hi);
  for (Int c = first; c <= stop; ++c) {
    prefix[k] = c;
    if (last) {
      if (!visit(prefix)) return false;
    } else if (!visit_level(levels, k + 1, strict, prefix, visit)) {
      return false;
    }
  }
  return true;
}

}  // namespace

void for_each_lattice_point(const RatPolytope& p, const SublatticeBasis& lattice, const Int& scale, bool strict,
                            const std::function<bool(const IntVector&)>& visit) {
  const std::size_t dim = p.dim();
  if (scale < 1) throw Error(ErrorCode::InvalidParameters, "lattice scale must be >= 1");
  if (lattice.ambient_dim() != dim || lattice.rank() != dim)
    throw Error(ErrorCode::DimensionMismatch, "enumeration needs a full-rank lattice in the polytope's space");
  if (p.vertices().empty()) throw Error(ErrorCode::UnboundedRegion, "polytope has no vertices");
  if (dim == 0) {
    visit(IntVector{});
    return;
  }

  // Coordinates c with x = (1/scale)·c·B.
  std::vector<RatVector> coords;
  coords.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) coords.push_back(Rat(scale) * lattice.to_coords(v));

  std::vector<SliceLevel> levels(dim);
  for (const auto& f : p.facets()) {
    levels[dim - 1].normals.push_back(mul(lattice.basis(), f.normal));
    levels[dim - 1].offsets.push_back(Rat(scale) * f.offset);
  }
  for (std::size_t k = 1; k < dim; ++k) {
    std::vector<RatVector> projected;
    projected.reserve(coords.size());
    for (const auto& c : coords) projected.emplace_back(c.begin(), c.begin() + k);
    RatPolytope shadow = convex_hull(projected);
    for (const auto& f : shadow.facets()) {
      levels[k - 1].normals.push_back(f.normal);
      levels[k - 1].offsets.push_back(f.offset);
    }
  }
  IntVector prefix(dim);
  visit_level(levels, 0, strict, prefix, visit);
}

std::vector<RatVector> enumerate_points(const RatPolytope& p, const SublatticeBasis& lattice, const Int& scale,
                                        bool strict) {
  std::vector<RatVector> out;
  const RatMatrix basis = to_rat(lattice.basis());
  const Rat inv = Rat(1) / Rat(scale);
  for_each_lattice_point(p, lattice, scale, strict, [&](const IntVector& c) {
    out.push_back(p.dim() == 0 ? RatVector{} : inv * mul(to_rat(c), basis));
    return true;
  });
  return out;
}

std::vector<RatVector> enumerate_points(const RatPolytope& p, const Int& scale, bool strict) {
  return enumerate_points(p, SublatticeBasis::standard(p.dim()), scale, strict);
}

}  // namespace toric
