#include "toricmld/proof_pipeline.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

namespace {

CheckResult check(std::string name, bool pass, std::string detail = {}) {
  return CheckResult{std::move(name), pass, std::move(detail)};
}

void append(std::vector<CheckResult>& to, const std::vector<CheckResult>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

Rat two_pow(std::size_t k) { return Rat(Int(1) << static_cast<unsigned>(k)); }

// Vertices of {c : A c <= b} in R^k by intersecting k-subsets of the
// bounding hyperplanes. Only for bounded regions.
std::vector<RatVector> halfspace_vertices(const std::vector<RatVector>& a, const std::vector<Rat>& b, std::size_t k) {
  std::vector<RatVector> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  const std::size_t m = a.size();
  if (m < k) return out;
  while (true) {
    RatMatrix sys(k, k);
    RatVector rhs(k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) sys(r, c) = a[idx[r]][c];
      rhs[r] = b[idx[r]];
    }
    if (rank(sys) == k) {
      RatVector x = *solve(sys, rhs);
      bool ok = true;
      for (std::size_t r = 0; r < m && ok; ++r) ok = dot(a[r], x) <= b[r];
      if (ok && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::string join_points(const std::vector<RatVector>& pts) {
  std::string s = "[";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ",";
    s += to_string(pts[i]);
  }
  return s + "]";
}

RatPolytope scaled_difference(const RatPolytope& s, const Rat& gamma, const RatVector& z) {
  RatPolytope d = difference_body(s);
  return translate(scale_about(d, gamma, RatVector(s.dim(), Rat(0))), z);
}

}  // namespace

BoxData build_box(const ToricLogPair& pair, const RatVector& psi, const Int& n, const IntVector& e,
                  const SublatticeBasis& lambda) {
  if (!pair.is_klt()) throw Error(ErrorCode::NotKlt, "box needs all b < 1");
  if (pair.dim() < 2) throw Error(ErrorCode::DimensionTooSmall, "box needs d >= 2");
  const std::size_t k = lambda.rank();
  BoxData out;
  RatVector er = to_rat(e);
  for (std::size_t i = 0; i < pair.rays().size(); ++i) {
    Rat scale = Rat(n) * pair.coeffs()[i].complement();  // n(1 - b)
    RatVector amb = Rat(1 / scale) * to_rat(pair.rays()[i]) - er;
    out.vertices.push_back(lambda.to_coords(amb));
    // e_alpha = n(1 - b)(v + e)
    RatVector back = scale * (lambda.from_coords(out.vertices.back()) + er);
    out.checks.push_back(check("ray_identity[" + std::to_string(i) + "]", back == to_rat(pair.rays()[i]),
                               to_string(back)));
    out.checks.push_back(check("ray_level[" + std::to_string(i) + "]", dot(psi, amb + er) == make_rat(1, n)));
  }
  out.box = convex_hull(out.vertices);

  // Direct description: <u, cB + e> >= 0 for every inner facet normal u of sigma.
  std::vector<RatVector> a;
  std::vector<Rat> b;
  for (const auto& u : pair.facet_normals()) {
    RatVector row(k);
    for (std::size_t r = 0; r < k; ++r) row[r] = -Rat(dot(lambda.vector(r), u));
    a.push_back(row);
    b.push_back(Rat(dot(u, e)));
  }
  RatPolytope direct = convex_hull(halfspace_vertices(a, b, k));
  out.checks.push_back(check("box_halfspace_match", direct == out.box, join_points(direct.vertices())));
  return out;
}

ShrinkResult shrink_to_unique(const RatPolytope& s, const Int& q) {
  std::optional<RatVector> z;
  for_each_lattice_point(s, SublatticeBasis::standard(s.dim()), Int(1), true, [&](const IntVector& c) {
    z = to_rat(c);
    return false;
  });
  if (!z) throw Error(ErrorCode::NoInteriorPoint, "S has no interior lattice point");
  return shrink_to_unique(s, q, *z);
}

ShrinkResult shrink_to_unique(const RatPolytope& s, const Int& q, const RatVector& z) {
  const std::size_t k = s.dim();
  if (!is_integral(z) || !s.contains_strictly(z))
    throw Error(ErrorCode::NoInteriorPoint, to_string(z) + " is not an interior lattice point");
  std::vector<Rat> room;  // b - <u, z> > 0
  for (const auto& f : s.facets()) room.push_back(f.offset - dot(to_rat(f.normal), z));

  Rat t(1);
  Rat qr(q);
  for_each_lattice_point(s, SublatticeBasis::standard(k), q, true, [&](const IntVector& c) {
    RatVector w = Rat(1 / qr) * to_rat(c);
    if (w == z) return true;
    // smallest dilation about z that puts w on the boundary
    Rat f(0);
    for (std::size_t i = 0; i < s.facets().size(); ++i) {
      Rat r = dot(to_rat(s.facets()[i].normal), w - z) / room[i];
      if (r > f) f = r;
    }
    if (f < t) t = f;
    return true;
  });

  ShrinkResult out{scale_about(s, t, z), z, t};
  std::size_t count = 0;
  bool has_z = false;
  for_each_lattice_point(out.shrunk, SublatticeBasis::standard(k), q, true, [&](const IntVector& c) {
    ++count;
    if (Rat(1 / qr) * to_rat(c) == z) has_z = true;
    return count < 2;
  });
  if (count != 1 || !has_z) throw Error(ErrorCode::CheckFailed, "shrunk body still has extra (1/q)-lattice points");
  return out;
}

MinkowskiBody minkowski_certificate(const Int& j, const RatPolytope& s_shrunk, const RatVector& z, const Rat& gamma) {
  const std::size_t d = s_shrunk.dim() + 1;
  MinkowskiBody mk;
  RatPolytope q = scaled_difference(s_shrunk, gamma, z);
  mk.cone = cone_over(Rat(j), q);
  RatVector centre{Rat(j)};
  centre.insert(centre.end(), z.begin(), z.end());
  mk.reflected = reflect_about(mk.cone, centre);
  std::vector<RatVector> pts = mk.cone.vertices();
  pts.insert(pts.end(), mk.reflected.vertices().begin(), mk.reflected.vertices().end());
  mk.body = convex_hull(pts);
  mk.cone_volume = normalized_volume(mk.cone);
  mk.body_volume = normalized_volume(mk.body);

  mk.checks.push_back(check("P_symmetric", reflect_about(mk.body, centre) == mk.body));

  std::vector<IntVector> inner;
  for_each_lattice_point(mk.body, SublatticeBasis::standard(d), Int(1), true, [&](const IntVector& c) {
    inner.push_back(c);
    return inner.size() < 2;
  });
  bool unique = inner.size() == 1 && to_rat(inner[0]) == centre;
  std::string witness;
  for (const auto& c : inner)
    if (to_rat(c) != centre) witness = to_string(c);
  mk.checks.push_back(check("P_unique_interior_point", unique, witness));
  mk.checks.push_back(check("P_volume_le_2^d", mk.body_volume <= two_pow(d), to_string(mk.body_volume)));
  mk.checks.push_back(check("P_volume_twice_C", mk.body_volume == 2 * mk.cone_volume, to_string(mk.cone_volume)));

  std::optional<IntVector> hit;
  for_each_lattice_point(cone_over(Rat(j), s_shrunk), SublatticeBasis::standard(d), Int(1), true,
                         [&](const IntVector& c) {
                           hit = c;
                           return false;
                         });
  mk.checks.push_back(check("cone_over_S_empty", !hit, hit ? to_string(*hit) : ""));
  return mk;
}

std::vector<CheckResult> verify_bullets(const ToricLogPair& pair, const ProofTrace& tr) {
  std::vector<CheckResult> out;
  const std::size_t k = tr.lambda.rank();

  // (i) first level i with an interior point of i·box; levels are the first
  // coordinate of the cone over S = j·box, scanned in increasing order.
  std::optional<Int> first;
  RatPolytope tower = cone_over(Rat(tr.j), tr.s);
  for_each_lattice_point(tower, SublatticeBasis::standard(k + 1), Int(1), false, [&](const IntVector& p) {
    if (p[0] < 1) return true;
    IntVector c(p.begin() + 1, p.end());
    RatVector cr = to_rat(c);
    for (const auto& f : tr.box.facets())
      if (dot(to_rat(f.normal), cr) >= Rat(p[0]) * f.offset) return true;
    first = p[0];
    return false;
  });
  out.push_back(check("bullet_na_min_level", first && *first == tr.j,
                      first ? "min i = " + to_string(*first) : "no level <= j"));

  // (ii) min{i : i v_alpha in Lambda} = n(1 - b_alpha)
  bool all_ok = true;
  std::string bad;
  for (std::size_t a = 0; a < tr.box_vertices.size(); ++a) {
    Int target = to_int(RatVector{Rat(tr.n) * pair.coeffs()[a].complement()})[0];
    Int i(1);
    while (i <= tr.n && !is_integral(Rat(i) * tr.box_vertices[a])) ++i;
    if (i != target) {
      all_ok = false;
      bad = "alpha " + std::to_string(a) + ": " + to_string(i) + " vs " + to_string(target);
    }
  }
  out.push_back(check("bullet_vertex_order", all_ok, bad));

  // (iii) n·box in Lambda; S = j·box in (1/q)Lambda
  bool n_ok = true, s_ok = true;
  for (const auto& v : tr.box_vertices) {
    n_ok = n_ok && is_integral(Rat(tr.n) * v);
    s_ok = s_ok && is_integral(Rat(tr.q * tr.j) * v);
  }
  for (const auto& v : tr.s.vertices()) s_ok = s_ok && is_integral(Rat(tr.q) * v);
  out.push_back(check("n_box_vertices_in_lambda", n_ok));
  out.push_back(check("S_vertices_in_lambda_over_q", s_ok));
  return out;
}

std::vector<CheckResult> chain_verify(const ProofTrace& tr) {
  std::vector<CheckResult> out;
  const std::size_t d = tr.dim;
  const std::size_t k = d - 1;
  Rat qk = power(Rat(tr.q), k);
  Rat dfact(factorial(d));

  RatPolytope q_body = scaled_difference(tr.s_shrunk, tr.gamma, tr.z);
  Rat vol_q = normalized_volume(q_body);
  Rat vol_ss = normalized_volume(difference_body(tr.s));
  Rat vol_ss_shrunk = normalized_volume(difference_body(tr.s_shrunk));

  out.push_back(check("gamma_range", tr.gamma > 0 && tr.gamma <= make_rat(1, 2), to_string(tr.gamma)));
  Rat lhs = 2 * Rat(tr.j) / Rat(static_cast<long>(d)) * vol_q;
  out.push_back(check("displayed_inequality", lhs <= two_pow(d), to_string(lhs)));
  out.push_back(check("volume_scaling_shrunk", vol_q == power(tr.gamma, k) * vol_ss_shrunk));
  out.push_back(check("volume_scaling", vol_q == power(tr.gamma_chain, k) * vol_ss));
  Rat lv = two_pow(k) / (Rat(factorial(k)) * qk);
  out.push_back(check("difference_body_lower_bound", vol_ss >= lv, to_string(vol_ss) + " >= " + to_string(lv)));

  Rat gk = power(tr.gamma_chain, k);
  Rat j_limit = dfact / gk * qk;
  out.push_back(check("j_bound", Rat(tr.j) <= j_limit, to_string(tr.j) + " <= " + to_string(j_limit)));
  Rat n_limit = dfact * qk * Rat(tr.q) / gk;
  out.push_back(check("n_le_jq", tr.n <= tr.j * tr.q));
  out.push_back(check("n_bound", Rat(tr.j * tr.q) <= n_limit,
                      to_string(Int(tr.j * tr.q)) + " <= " + to_string(n_limit)));

  // same two bounds with gamma of the shrunk body itself
  Rat gs = power(tr.gamma, k);
  Rat j_limit_s = dfact / gs * qk;
  Rat n_limit_s = dfact * qk * Rat(tr.q) / gs;
  out.push_back(check("j_bound_shrunk_gamma", Rat(tr.j) <= j_limit_s,
                      to_string(tr.j) + " <= " + to_string(j_limit_s)));
  out.push_back(check("n_bound_shrunk_gamma", Rat(tr.n) <= n_limit_s,
                      to_string(tr.n) + " <= " + to_string(n_limit_s)));
  return out;
}

bool ProofTrace::all_passed() const { return first_failure() == nullptr; }

const CheckResult* ProofTrace::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

ProofTrace run_pipeline(const ToricLogPair& pair) {
  if (pair.dim() < 2) throw Error(ErrorCode::DimensionTooSmall, "proof pipeline needs d >= 2");
  if (!pair.is_klt()) throw Error(ErrorCode::NotKlt, "proof pipeline needs all b < 1");
  LogCanonicalReport rep = compute_mld(pair);
  ProofTrace tr;
  tr.dim = pair.dim();
  tr.psi = rep.psi;
  tr.n = rep.n;
  tr.a = rep.a;
  tr.q = rep.q;
  tr.e = base_point(rep.psi);
  tr.lambda = kernel_sublattice(rep.psi);

  BoxData bx = build_box(pair, tr.psi, tr.n, tr.e, tr.lambda);
  tr.box = bx.box;
  tr.box_vertices = bx.vertices;
  append(tr.checks, bx.checks);

  Rat ja = Rat(tr.n) * tr.a;
  tr.j = to_int(RatVector{ja})[0];
  tr.s = scale_about(tr.box, Rat(tr.j), RatVector(tr.dim - 1, Rat(0)));
  append(tr.checks, verify_bullets(pair, tr));

  ShrinkResult sh = shrink_to_unique(tr.s, tr.q);
  tr.z = sh.z;
  tr.shrink_factor = sh.factor;
  tr.s_shrunk = sh.shrunk;
  tr.gamma = max_gamma(tr.s_shrunk, tr.z);
  tr.gamma_chain = tr.shrink_factor * tr.gamma;

  tr.mk = minkowski_certificate(tr.j, tr.s_shrunk, tr.z, tr.gamma);
  append(tr.checks, tr.mk.checks);
  append(tr.checks, chain_verify(tr));
  return tr;
}

void require_all(const ProofTrace& trace) {
  if (const CheckResult* c = trace.first_failure())
    throw Error(ErrorCode::CheckFailed, c->name + (c->detail.empty() ? "" : ": " + c->detail));
}

std::string serialize_trace(const ProofTrace& tr) {
  std::ostringstream os;
  os << "trace-v1\n";
  os << "dim: " << tr.dim << "\n";
  os << "psi: " << to_string(tr.psi) << "\n";
  os << "n: " << to_string(tr.n) << "\n";
  os << "a: " << to_string(tr.a) << "\n";
  os << "q: " << to_string(tr.q) << "\n";
  os << "e: " << to_string(tr.e) << "\n";
  std::vector<RatVector> basis;
  for (std::size_t i = 0; i < tr.lambda.rank(); ++i) basis.push_back(to_rat(tr.lambda.vector(i)));
  os << "lambda: " << join_points(basis) << "\n";
  for (std::size_t i = 0; i < tr.box_vertices.size(); ++i)
    os << "v[" << i << "]: " << to_string(tr.box_vertices[i]) << "\n";
  os << "box: " << join_points(tr.box.vertices()) << "\n";
  os << "j: " << to_string(tr.j) << "\n";
  os << "S: " << join_points(tr.s.vertices()) << "\n";
  os << "z: " << to_string(tr.z) << "\n";
  os << "shrink_factor: " << to_string(tr.shrink_factor) << "\n";
  os << "S_shrunk: " << join_points(tr.s_shrunk.vertices()) << "\n";
  os << "gamma: " << to_string(tr.gamma) << "\n";
  os << "gamma_chain: " << to_string(tr.gamma_chain) << "\n";
  os << "C: " << join_points(tr.mk.cone.vertices()) << "\n";
  os << "P: " << join_points(tr.mk.body.vertices()) << "\n";
  os << "vol_C: " << to_string(tr.mk.cone_volume) << "\n";
  os << "vol_P: " << to_string(tr.mk.body_volume) << "\n";
  for (const auto& c : tr.checks) {
    os << "check " << c.name << ": " << (c.pass ? "pass" : "fail");
    if (!c.detail.empty()) os << " " << c.detail;
    os << "\n";
  }
  os << "result: " << (tr.all_passed() ? "pass" : "fail") << "\n";
  return os.str();
}

VolumeIdentity lemma_vo_check(const Rat& h, const RatPolytope& q, const SublatticeBasis& lattice) {
  if (h <= 0) throw Error(ErrorCode::InvalidParameters, "height must be positive");
  VolumeIdentity out;
  RatPolytope c = cone_over(h, q);
  out.cone_volume = normalized_volume(c, lattice.prepend_unit_axis());
  out.predicted = h / Rat(static_cast<long>(lattice.rank() + 1)) * normalized_volume(q, lattice);
  out.pass = out.cone_volume == out.predicted;
  return out;
}

DifferenceBodyBound lemma_lv_check(const RatPolytope& q) {
  const std::size_t d = q.dim();
  for (const auto& v : q.vertices())
    if (!is_integral(v)) throw Error(ErrorCode::NotLatticePolytope, "vertex " + to_string(v) + " is not integral");
  DifferenceBodyBound out;
  RatPolytope diff = difference_body(q);
  out.volume = normalized_volume(diff);
  out.bound = two_pow(d) / Rat(factorial(d));
  out.pass = out.volume >= out.bound;

  out.simplex = d >= 1 && q.vertices().size() == d + 1;
  if (!out.simplex) return out;
  const RatVector& base = q.vertices()[0];
  std::vector<RatVector> v;
  for (std::size_t i = 1; i <= d; ++i) v.push_back(q.vertices()[i] - base);
  std::vector<RatVector> pm;
  for (const auto& x : v) {
    pm.push_back(x);
    pm.push_back(-x);
  }
  RatPolytope hull = convex_hull(pm);
  bool inside = std::all_of(hull.vertices().begin(), hull.vertices().end(),
                            [&](const RatVector& x) { return diff.contains(x); });
  out.hull_volume = normalized_volume(hull);
  out.pieces_volume = 0;
  Rat piece_floor = 1 / Rat(factorial(d));
  bool pieces_ok = true;
  for (unsigned long mask = 0; mask < (1UL << d); ++mask) {
    std::vector<RatVector> pts{RatVector(d, Rat(0))};
    for (std::size_t i = 0; i < d; ++i) pts.push_back((mask >> i) & 1 ? -v[i] : v[i]);
    Rat vol = normalized_volume(convex_hull(pts));
    out.pieces_volume += vol;
    if (mask == 0 || vol < out.min_piece) out.min_piece = vol;
    pieces_ok = pieces_ok && vol >= piece_floor;
  }
  out.decomposition_pass = inside && pieces_ok && out.hull_volume == out.pieces_volume;
  return out;
}

}  // namespace toric
