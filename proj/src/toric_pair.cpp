#include "toricmld/toric_pair.hpp"

#include <algorithm>

#include "toricmld/polytope.hpp"

namespace toric {

BoundaryCoefficient BoundaryCoefficient::standard(const Int& l) {
  if (l < 1) throw Error(ErrorCode::NonStandardCoefficient, "l must be >= 1, got " + to_string(l));
  BoundaryCoefficient b;
  b.l_ = l;
  return b;
}

BoundaryCoefficient BoundaryCoefficient::one() { return BoundaryCoefficient{}; }

BoundaryCoefficient BoundaryCoefficient::from_value(const Rat& b) {
  if (b == 1) return one();
  // b = (l-1)/l  <=>  1 - b = 1/l
  Rat c = 1 - b;
  if (c <= 0 || c.get_num() != 1)
    throw Error(ErrorCode::NonStandardCoefficient, "coefficient " + to_string(b) + " is not (l-1)/l or 1");
  return standard(Int(c.get_den()));
}

Rat BoundaryCoefficient::value() const { return 1 - complement(); }

Rat BoundaryCoefficient::complement() const {
  if (is_one()) return Rat(0);
  return make_rat(1, *l_);
}

bool ToricLogPair::is_klt() const {
  return std::none_of(coeffs_.begin(), coeffs_.end(), [](const BoundaryCoefficient& b) { return b.is_one(); });
}

bool ToricLogPair::in_interior(const IntVector& x) const {
  for (const auto& u : facet_normals_)
    if (dot(u, x) <= 0) return false;
  return true;
}

namespace {

// Sign pattern of a 1-dimensional nullspace vector: true when all entries are
// nonzero with one common sign.
bool uniform_sign(const RatVector& v) {
  int s = 0;
  for (const auto& x : v) {
    int t = sgn(x);
    if (t == 0) return false;
    if (s == 0) s = t;
    else if (s != t) return false;
  }
  return true;
}

// Calls f on every k-subset of {0..m-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RatMatrix columns_of(const std::vector<IntVector>& vs, const std::vector<std::size_t>& idx, std::size_t dim) {
  RatMatrix m(dim, idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = vs[idx[c]][r];
  return m;
}

}  // namespace

std::vector<IntVector> cone_facet_normals(std::size_t dim, const std::vector<IntVector>& gens) {
  std::vector<IntVector> out;
  if (dim == 1) {
    out.push_back(IntVector{Int(sgn(gens.at(0)[0]))});
    return out;
  }
  for_each_subset(gens.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
    IntMatrix rows(dim - 1, dim);
    for (std::size_t i = 0; i < idx.size(); ++i) rows.set_row(i, gens[idx[i]]);
    IntVector u = cofactor_normal(rows);
    if (is_zero(u)) return;
    u = primitive(u);
    bool pos = true, neg = true;
    for (const auto& g : gens) {
      int s = sgn(dot(u, g));
      if (s < 0) pos = false;
      if (s > 0) neg = false;
    }
    if (!pos && !neg) return;
    if (!pos) u = Int(-1) * u;
    if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
  });
  std::sort(out.begin(), out.end());
  return out;
}

ToricLogPair validate_pair(std::size_t dim, const std::vector<IntVector>& rays,
                           const std::vector<BoundaryCoefficient>& coeffs) {
  if (rays.size() != coeffs.size())
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(rays.size()) + " rays but " + std::to_string(coeffs.size()) + " coefficients");
  if (dim == 0 || rays.empty()) throw Error(ErrorCode::NotFullDimensional, "need at least one ray and d >= 1");
  for (const auto& r : rays) {
    if (r.size() != dim) throw Error(ErrorCode::DimensionMismatch, "ray " + to_string(r) + " has the wrong length");
    if (content(r) != 1) throw Error(ErrorCode::NonPrimitiveRay, "ray " + to_string(r) + " is not primitive");
  }

  // A nonnegative relation among the rays has a circuit in its support.
  for (std::size_t k = 2; k <= std::min(rays.size(), dim + 1); ++k) {
    bool bad = false;
    for_each_subset(rays.size(), k, [&](const std::vector<std::size_t>& idx) {
      if (bad) return;
      auto ns = nullspace(columns_of(rays, idx, dim));
      if (ns.size() == 1 && uniform_sign(ns[0])) bad = true;
    });
    if (bad) throw Error(ErrorCode::NotStronglyConvex, "cone contains a line");
  }

  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j]) throw Error(ErrorCode::RedundantRay, "ray " + to_string(rays[i]) + " listed twice");

  if (rank(IntMatrix::from_rows(rays, dim)) < dim)
    throw Error(ErrorCode::NotFullDimensional, "rays span a proper subspace");

  ToricLogPair p;
  p.dim_ = dim;
  p.rays_ = rays;
  p.coeffs_ = coeffs;
  p.facet_normals_ = cone_facet_normals(dim, rays);

  if (dim > 1) {
    for (const auto& r : rays) {
      std::vector<IntVector> tight;
      for (const auto& u : p.facet_normals_)
        if (dot(u, r) == 0) tight.push_back(u);
      if (tight.empty() || rank(IntMatrix::from_rows(tight, dim)) < dim - 1)
        throw Error(ErrorCode::RedundantRay, "ray " + to_string(r) + " is not extremal");
    }
  } else if (rays.size() > 1) {
    throw Error(ErrorCode::RedundantRay, "a 1-dimensional cone has a single ray");
  }
  return p;
}

ToricLogPair validate_pair(std::size_t dim, const std::vector<IntVector>& rays, const std::vector<Rat>& coeffs) {
  std::vector<BoundaryCoefficient> bs;
  bs.reserve(coeffs.size());
  for (const auto& c : coeffs) bs.push_back(BoundaryCoefficient::from_value(c));
  return validate_pair(dim, rays, bs);
}

RatVector solve_psi(const ToricLogPair& pair) {
  const auto& rays = pair.rays();
  RatMatrix m(rays.size(), pair.dim());
  RatVector rhs(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = 0; j < pair.dim(); ++j) m(i, j) = rays[i][j];
    rhs[i] = pair.coeffs()[i].complement();
  }
  auto psi = solve(m, rhs);
  if (!psi) throw Error(ErrorCode::NotLogQGorenstein, "no psi with <psi, e_a> = 1 - b_a for all rays");
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (dot(*psi, rays[i]) != rhs[i]) throw Error(ErrorCode::CheckFailed, "psi does not solve the ray equations");
  return *psi;
}

Int compute_index(const ToricLogPair& pair, const RatVector& psi) {
  if (is_zero(psi)) return Int(1);
  ValueGroup vg = value_group(psi);
  bool some_standard = std::any_of(pair.coeffs().begin(), pair.coeffs().end(),
                                   [](const BoundaryCoefficient& b) { return !b.is_one(); });
  if (some_standard && !vg.generator_is_inverse_index)
    throw Error(ErrorCode::ValueGroupMismatch,
                "<psi, N> is generated by " + to_string(vg.generator) + ", not 1/" + to_string(vg.index));
  return vg.index;
}

LogCanonicalReport compute_mld(const ToricLogPair& pair) {
  const std::size_t d = pair.dim();
  LogCanonicalReport rep;
  rep.psi = solve_psi(pair);
  rep.klt = pair.is_klt();
  rep.n = compute_index(pair, rep.psi);

  if (is_zero(rep.psi)) {
    rep.a = 0;
    rep.q = 1;
    rep.witness = IntVector(d, 0);
    for (const auto& r : pair.rays()) rep.witness = rep.witness + r;
    return rep;
  }
  rep.value_group_flag = value_group(rep.psi).generator_is_inverse_index;

  std::vector<IntVector> face, rest;
  for (std::size_t i = 0; i < pair.rays().size(); ++i)
    (pair.coeffs()[i].is_one() ? face : rest).push_back(pair.rays()[i]);

  SublatticeBasis w = face.empty() ? SublatticeBasis(d, IntMatrix(0, d)) : SublatticeBasis::saturation_of(d, face);
  QuotientMap qm = quotient_lattice(w);
  const std::size_t m = d - w.rank();

  // n·psi̅ is integral; work with it to keep the inner loop in Z.
  IntVector npsi = to_int(Rat(rep.n) * rep.psi);
  IntVector npsibar = mul(npsi, qm.section);

  std::vector<IntVector> gens;
  for (const auto& r : rest) {
    IntVector g = primitive(mul(qm.projection, r));
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }
  Int top(0);  // n·U
  for (const auto& g : gens) top += dot(npsibar, g);

  std::vector<RatVector> pts{RatVector(m, Rat(0))};
  for (const auto& g : gens) pts.push_back(make_rat(top, dot(npsibar, g)) * to_rat(g));
  RatPolytope slab = convex_hull(pts);
  std::vector<IntVector> normals = cone_facet_normals(m, gens);

  Int best = top + 1;
  IntVector arg;
  for_each_lattice_point(slab, SublatticeBasis::standard(m), Int(1), false, [&](const IntVector& y) {
    for (const auto& u : normals)
      if (dot(u, y) <= 0) return true;
    Int v = dot(npsibar, y);
    if (v < best) {
      best = v;
      arg = y;
    }
    return true;
  });
  if (arg.empty()) throw Error(ErrorCode::CheckFailed, "no interior lattice point in the slab");
  rep.a = make_rat(best, rep.n);
  rep.q = Int(rep.a.get_den());

  // Lift back: x = section·y + t·f with f in the relative interior of the face.
  IntVector x0 = mul(qm.section, arg);
  if (face.empty()) {
    rep.witness = x0;
  } else {
    IntVector f(d, 0);
    for (const auto& r : face) f = f + r;
    std::optional<Int> t;
    for (const auto& u : pair.facet_normals()) {
      Int uf = dot(u, f), ux = dot(u, x0);
      if (uf == 0) {
        if (ux <= 0) throw Error(ErrorCode::CheckFailed, "quotient witness does not lift");
        continue;
      }
      Int need = floor_div(-ux, uf) + 1;
      if (!t || need > *t) t = need;
    }
    rep.witness = x0 + (*t) * f;
  }
  if (!pair.in_interior(rep.witness) || dot(rep.psi, to_rat(rep.witness)) != rep.a)
    throw Error(ErrorCode::CheckFailed, "witness " + to_string(rep.witness) + " fails verification");
  return rep;
}

Rat mld_oracle(const ToricLogPair& pair) {
  if (!pair.is_klt()) throw Error(ErrorCode::NotKlt, "oracle needs all b < 1");
  RatVector psi = solve_psi(pair);
  Int n = denominator_lcm(psi);
  Rat level = make_rat(1, n);
  for (const auto& r : pair.rays()) level += dot(psi, r);
  std::vector<RatVector> pts{RatVector(pair.dim(), Rat(0))};
  for (const auto& r : pair.rays()) pts.push_back(Rat(level / dot(psi, r)) * to_rat(r));
  std::optional<Rat> best;
  for (const auto& x : enumerate_points(convex_hull(pts), Int(1), true)) {
    Rat v = dot(psi, x);
    if (!best || v < *best) best = v;
  }
  if (!best) throw Error(ErrorCode::CheckFailed, "oracle found no interior point");
  return *best;
}

Int factorial(std::size_t k) {
  Int f(1);
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

Rat power(const Rat& x, std::size_t k) {
  Rat p(1);
  for (std::size_t i = 0; i < k; ++i) p *= x;
  return p;
}

BoundVerdict bound_check(const LogCanonicalReport& report, std::size_t dim, const std::optional<Rat>& gamma) {
  BoundVerdict v;
  v.n = report.n;
  v.q = report.q;
  v.dim = dim;
  if (dim == 1) {
    v.constant = 1;
  } else if (dim == 2) {
    v.constant = 2;
  } else {
    if (!gamma) throw Error(ErrorCode::MissingGamma, "d >= 3 needs gamma from a proof trace");
    if (*gamma <= 0) throw Error(ErrorCode::InvalidParameters, "gamma must be positive");
    v.constant = Rat(factorial(dim)) / power(*gamma, dim - 1);
  }
  Rat qd = power(Rat(report.q), dim);
  v.limit = v.constant * qd;
  v.n_over_qd = Rat(report.n) / qd;
  v.pass = Rat(report.n) <= v.limit;
  return v;
}

}  // namespace toric
