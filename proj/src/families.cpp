#include "toricmld/families.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"

namespace toric {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

// Plain modulo mapping keeps draws identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(eng_() % span);
  }

 private:
  std::mt19937_64 eng_;
};

constexpr int kRetryBudget = 1000;

std::string coeff_token(const BoundaryCoefficient& b) { return to_string(b.value()); }

bool full_rank_differences(const std::vector<RatVector>& pts, std::size_t d) {
  if (d == 0) return !pts.empty();
  if (pts.size() < d + 1) return false;
  RatMatrix m(pts.size() - 1, d);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
  return rank(m) == d;
}

}  // namespace

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Line: return "line";
    case FamilyKind::Cyclic2d: return "cyclic2d";
    case FamilyKind::RandomCone: return "random_cone";
    case FamilyKind::LemmaPolytopes: return "lemma_polytopes";
    case FamilyKind::ExplicitList: return "explicit_list";
  }
  return "?";
}

FamilyKind parse_family_kind(const std::string& name) {
  for (auto k : {FamilyKind::Line, FamilyKind::Cyclic2d, FamilyKind::RandomCone, FamilyKind::LemmaPolytopes,
                 FamilyKind::ExplicitList})
    if (to_string(k) == name) return k;
  throw Error(ErrorCode::InvalidParameters, "unknown family '" + name + "'");
}

void validate_spec(const FamilySpec& spec) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidParameters, what); };
  switch (spec.kind) {
    case FamilyKind::Line:
      if (spec.L < 1) bad("line family needs L >= 1");
      break;
    case FamilyKind::Cyclic2d:
      if (spec.max_r < 1) bad("cyclic2d needs max_r >= 1");
      if (spec.L < 1) bad("coefficient grid needs L >= 1");
      break;
    case FamilyKind::RandomCone:
      if (!spec.seed) bad("random_cone needs a seed");
      if (spec.dims.empty()) bad("random_cone needs dims");
      for (auto d : spec.dims)
        if (d < 2 || d > 4) bad("random_cone dims must be in 2..4");
      if (spec.count < 1) bad("random_cone needs count >= 1");
      if (spec.max_entry < 1) bad("max_entry must be >= 1");
      if (spec.L < 1) bad("coefficient grid needs L >= 1");
      break;
    case FamilyKind::LemmaPolytopes:
      bad("lemma_polytopes is run through the lemma suites, not the sweep");
      break;
    case FamilyKind::ExplicitList:
      break;
  }
}

ToricLogPair cyclic_quotient_cone(long r, long s) {
  if (r < 1 || s < 0 || s >= r || gcd(Int(r), Int(s)) != 1)
    throw Error(ErrorCode::InvalidParameters,
                "need r >= 1, 0 <= s < r, gcd(r,s) = 1; got r=" + std::to_string(r) + ", s=" + std::to_string(s));
  return validate_pair(2, {{0, 1}, {r, -s}}, std::vector<BoundaryCoefficient>(2, BoundaryCoefficient::standard(1)));
}

std::vector<std::vector<BoundaryCoefficient>> coefficient_grid(std::size_t k, long L, bool include_one) {
  if (k < 1 || L < 1) throw Error(ErrorCode::InvalidParameters, "coefficient grid needs k >= 1 and L >= 1");
  std::vector<BoundaryCoefficient> values;
  for (long l = 1; l <= L; ++l) values.push_back(BoundaryCoefficient::standard(l));
  if (include_one) values.push_back(BoundaryCoefficient::one());
  std::vector<std::vector<BoundaryCoefficient>> out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<BoundaryCoefficient> t;
    for (auto i : idx) t.push_back(values[i]);
    out.push_back(std::move(t));
    std::size_t p = k;
    while (p > 0 && idx[p - 1] + 1 == values.size()) idx[--p] = 0;
    if (p == 0) break;
    ++idx[p - 1];
  }
  return out;
}

ToricLogPair random_simplicial_cone(std::size_t d, long max_entry, std::uint64_t seed) {
  if (d < 2 || d > 4) throw Error(ErrorCode::InvalidParameters, "random cones need d in 2..4");
  if (max_entry < 1) throw Error(ErrorCode::InvalidParameters, "max_entry must be >= 1");
  Rng rng(seed);
  std::vector<BoundaryCoefficient> zero(d, BoundaryCoefficient::standard(1));
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<IntVector> rays;
    bool degenerate = false;
    for (std::size_t i = 0; i < d; ++i) {
      IntVector v(d);
      for (auto& c : v) c = rng.uniform(-max_entry, max_entry);
      if (is_zero(v)) degenerate = true;
      else rays.push_back(primitive(v));
    }
    if (degenerate) continue;
    try {
      return validate_pair(d, rays, zero);
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::ExhaustedResampling, "no valid cone after " + std::to_string(kRetryBudget) + " draws");
}

std::vector<Instance> generate_instances(const FamilySpec& spec) {
  validate_spec(spec);
  std::vector<Instance> out;
  switch (spec.kind) {
    case FamilyKind::Line: {
      std::vector<BoundaryCoefficient> vals;
      for (long l = 1; l <= spec.L; ++l) vals.push_back(BoundaryCoefficient::standard(l));
      if (spec.include_one) vals.push_back(BoundaryCoefficient::one());
      for (const auto& b : vals) out.push_back({"line b=" + coeff_token(b), 1, {{1}}, {b}});
      break;
    }
    case FamilyKind::Cyclic2d: {
      auto grid = coefficient_grid(2, spec.L, spec.include_one);
      for (long r = 1; r <= spec.max_r; ++r)
        for (long s = 0; s < r; ++s) {
          if (gcd(Int(r), Int(s)) != 1) continue;
          for (const auto& c : grid)
            out.push_back({"cyc r=" + std::to_string(r) + " s=" + std::to_string(s) + " b=" + format_coeffs(c), 2,
                           {{0, 1}, {r, -s}}, c});
        }
      break;
    }
    case FamilyKind::RandomCone: {
      for (auto d : spec.dims) {
        auto grid = coefficient_grid(d, spec.L, spec.include_one);
        for (long i = 0; i < spec.count; ++i) {
          auto cone = random_simplicial_cone(d, spec.max_entry, mix(*spec.seed, d, 2 * i));
          Rng pick(mix(*spec.seed, d, 2 * i + 1));
          const auto& c = grid[pick.uniform(0, static_cast<long>(grid.size()) - 1)];
          out.push_back({"rand d=" + std::to_string(d) + " i=" + std::to_string(i), d, cone.rays(), c});
        }
      }
      break;
    }
    case FamilyKind::ExplicitList:
      out = spec.instances;
      break;
    case FamilyKind::LemmaPolytopes:
      break;
  }
  return out;
}

bool SweepRow::pass() const {
  if (error) return false;
  if (pipeline_ran && !pipeline_pass) return false;
  if (oracle_match && !*oracle_match) return false;
  return !verdict || verdict->pass;
}

SweepRow evaluate_instance(const Instance& inst, bool with_oracle) {
  SweepRow row;
  row.instance = inst;
  try {
    ToricLogPair pair = validate_pair(inst.dim, inst.rays, inst.coeffs);
    row.report = compute_mld(pair);
    if (with_oracle && pair.is_klt()) row.oracle_match = mld_oracle(pair) == row.report->a;
    if (pair.is_klt() && pair.dim() >= 2) {
      ProofTrace tr = run_pipeline(pair);
      row.pipeline_ran = true;
      row.j = tr.j;
      row.gamma = tr.gamma;
      row.gamma_chain = tr.gamma_chain;
      if (const CheckResult* f = tr.first_failure()) {
        row.pipeline_pass = false;
        row.pipeline_failure = f->name + (f->detail.empty() ? "" : " " + f->detail);
      }
    } else {
      row.j = to_int(RatVector{Rat(row.report->n) * row.report->a})[0];
    }
    if (pair.dim() <= 2 || row.gamma_chain) row.verdict = bound_check(*row.report, pair.dim(), row.gamma_chain);
  } catch (const Error& e) {
    row.error = e.code();
    row.error_detail = e.detail();
  }
  return row;
}

SweepReport sweep(const FamilySpec& spec) {
  SweepReport rep;
  for (const auto& inst : generate_instances(spec)) {
    SweepRow row = evaluate_instance(inst, spec.with_oracle);
    if (row.error) ++rep.errors;
    if (row.pipeline_ran) ++rep.pipeline_runs;
    if (row.oracle_match) {
      ++rep.oracle_checks;
      if (!*row.oracle_match) ++rep.oracle_mismatches;
    }
    if (row.verdict && (!rep.max_n_over_qd || row.verdict->n_over_qd > *rep.max_n_over_qd))
      rep.max_n_over_qd = row.verdict->n_over_qd;
    if (row.gamma && (!rep.min_gamma || *row.gamma < *rep.min_gamma)) rep.min_gamma = row.gamma;
    if (row.report && (!rep.max_a || row.report->a > *rep.max_a)) rep.max_a = row.report->a;
    // an instance the validator rejects is a recorded skip, not a counterexample
    if (!row.error && !row.pass()) rep.counterexamples.push_back(row.instance.key);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string format_rays(const std::vector<IntVector>& rays) {
  std::string s;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (i) s += ";";
    for (std::size_t j = 0; j < rays[i].size(); ++j) {
      if (j) s += " ";
      s += to_string(rays[i][j]);
    }
  }
  return s;
}

std::string format_coeffs(const std::vector<BoundaryCoefficient>& coeffs) {
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ";";
    s += coeff_token(coeffs[i]);
  }
  return s;
}

namespace {

std::string pass_token(const SweepRow& row) {
  if (row.error) return "error:" + std::string(to_string(*row.error));
  if (!row.verdict && !row.pipeline_ran) return "na";
  return row.pass() ? "pass" : "fail";
}

template <class T>
std::string opt(const std::optional<T>& v) {
  return v ? to_string(*v) : "";
}

}  // namespace

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream os;
  os << "key,d,rays,coeffs,n,a,q,j,gamma,n_over_qd,pass\n";
  for (const auto& row : report.rows) {
    const auto& in = row.instance;
    os << in.key << ',' << in.dim << ',' << format_rays(in.rays) << ',' << format_coeffs(in.coeffs) << ',';
    if (row.report)
      os << to_string(row.report->n) << ',' << to_string(row.report->a) << ',' << to_string(row.report->q);
    else
      os << ",,";
    os << ',' << opt(row.j) << ',' << opt(row.gamma) << ',';
    if (row.verdict) os << to_string(row.verdict->n_over_qd);
    os << ',' << pass_token(row) << '\n';
  }
  return os.str();
}

std::string sweep_json(const SweepReport& report) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["key"] = row.instance.key;
    r["d"] = row.instance.dim;
    r["rays"] = format_rays(row.instance.rays);
    r["coeffs"] = format_coeffs(row.instance.coeffs);
    if (row.report) {
      r["n"] = to_string(row.report->n);
      r["a"] = to_string(row.report->a);
      r["q"] = to_string(row.report->q);
      r["psi"] = to_string(row.report->psi);
      r["witness"] = to_string(row.report->witness);
      r["klt"] = row.report->klt;
    }
    if (row.j) r["j"] = to_string(*row.j);
    if (row.gamma) r["gamma"] = to_string(*row.gamma);
    if (row.gamma_chain) r["gamma_chain"] = to_string(*row.gamma_chain);
    if (row.verdict) {
      r["limit"] = to_string(row.verdict->limit);
      r["n_over_qd"] = to_string(row.verdict->n_over_qd);
    }
    if (row.pipeline_ran) r["pipeline_pass"] = row.pipeline_pass;
    if (!row.pipeline_failure.empty()) r["pipeline_failure"] = row.pipeline_failure;
    if (row.oracle_match) r["oracle_match"] = *row.oracle_match;
    if (row.error) {
      r["error"] = std::string(to_string(*row.error));
      r["error_detail"] = row.error_detail;
    }
    r["pass"] = pass_token(row);
    rows.push_back(std::move(r));
  }
  json agg;
  agg["rows"] = report.rows.size();
  agg["errors"] = report.errors;
  agg["pipeline_runs"] = report.pipeline_runs;
  agg["max_n_over_qd"] = opt(report.max_n_over_qd);
  agg["min_gamma"] = opt(report.min_gamma);
  agg["max_a"] = opt(report.max_a);
  agg["counterexamples"] = report.counterexamples;
  if (report.oracle_checks) {
    agg["oracle_checks"] = report.oracle_checks;
    agg["oracle_mismatches"] = report.oracle_mismatches;
  }
  json out;
  out["rows"] = std::move(rows);
  out["aggregates"] = std::move(agg);
  return out.dump(2) + "\n";
}

std::string sweep_summary(const SweepReport& report) {
  std::ostringstream os;
  os << "rows: " << report.rows.size() << "\n";
  os << "errors: " << report.errors << "\n";
  os << "pipeline runs: " << report.pipeline_runs << "\n";
  os << "max n/q^d: " << (report.max_n_over_qd ? to_string(*report.max_n_over_qd) : "-") << "\n";
  os << "min gamma: " << (report.min_gamma ? to_string(*report.min_gamma) : "-") << "\n";
  os << "max a: " << (report.max_a ? to_string(*report.max_a) : "-") << "\n";
  if (report.oracle_checks)
    os << "oracle mismatches: " << report.oracle_mismatches << " of " << report.oracle_checks << "\n";
  os << "counterexamples: " << report.counterexamples.size() << "\n";
  for (const auto& k : report.counterexamples) os << "  " << k << "\n";
  return os.str();
}

LemmaKind parse_lemma_kind(const std::string& name) {
  if (name == "vo") return LemmaKind::Vo;
  if (name == "lv") return LemmaKind::Lv;
  if (name == "minkowski") return LemmaKind::Minkowski;
  throw Error(ErrorCode::InvalidParameters, "unknown lemma check '" + name + "'");
}

RatPolytope random_lattice_polytope(std::size_t d, long max_entry, std::size_t points, std::uint64_t seed) {
  if (d < 1 || d > 4 || max_entry < 1 || points < d + 1)
    throw Error(ErrorCode::InvalidParameters, "bad random polytope parameters");
  Rng rng(seed);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<RatVector> pts;
    for (std::size_t i = 0; i < points; ++i) {
      RatVector p(d);
      for (auto& c : p) c = rng.uniform(0, max_entry);
      pts.push_back(p);
    }
    if (full_rank_differences(pts, d)) return convex_hull(pts);
  }
  throw Error(ErrorCode::ExhaustedResampling, "no full-dimensional lattice polytope");
}

SublatticeBasis random_full_lattice(std::size_t d, std::uint64_t seed) {
  if (d == 0 || seed % 2 == 0) return SublatticeBasis::standard(d);
  Rng rng(seed);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.uniform(-2, 2);
    if (determinant(m) != 0) return SublatticeBasis(d, m);
  }
  throw Error(ErrorCode::ExhaustedResampling, "no full-rank sublattice");
}

namespace {

// Random rational polytope with coordinates p/r, |p| <= 4, r in 1..3.
RatPolytope random_rational_polytope(std::size_t d, Rng& rng) {
  if (d == 0) return convex_hull({RatVector{}});
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::size_t count = d + 1 + static_cast<std::size_t>(rng.uniform(0, 3));
    std::vector<RatVector> pts;
    for (std::size_t i = 0; i < count; ++i) {
      RatVector p(d);
      for (auto& c : p) c = make_rat(rng.uniform(-4, 4), rng.uniform(1, 3));
      pts.push_back(p);
    }
    if (full_rank_differences(pts, d)) return convex_hull(pts);
  }
  throw Error(ErrorCode::ExhaustedResampling, "no full-dimensional rational polytope");
}

std::string vertices_text(const RatPolytope& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    if (i) s += ",";
    s += to_string(p.vertices()[i]);
  }
  return s + "]";
}

void run_vo(LemmaReport& rep, std::uint64_t seed) {
  const std::size_t k = rep.dim - 1;
  for (std::size_t i = 0; i < rep.samples; ++i) {
    Rng rng(mix(seed, 1, i));
    Rat h = make_rat(rng.uniform(1, 6), rng.uniform(1, 3));
    RatPolytope q = random_rational_polytope(k, rng);
    SublatticeBasis lat = random_full_lattice(k, mix(seed, 2, i));
    if (k > 0 && abs(lat.index()) != 1) ++rep.nonstandard_lattices;
    VolumeIdentity v = lemma_vo_check(h, q, lat);
    if (v.pass) ++rep.passed;
    else
      rep.failures.push_back("h=" + to_string(h) + " Q=" + vertices_text(q) + " L index " + to_string(lat.index()) +
                             ": " + to_string(v.cone_volume) + " != " + to_string(v.predicted));
  }
}

void run_lv(LemmaReport& rep, std::uint64_t seed) {
  const std::size_t d = rep.dim;
  for (std::size_t i = 0; i < rep.samples; ++i) {
    Rng rng(mix(seed, 3, i));
    // every third sample is a simplex, so the decomposition branch runs
    std::size_t pts = (i % 3 == 0) ? d + 1 : d + 1 + static_cast<std::size_t>(rng.uniform(1, 4));
    RatPolytope q = random_lattice_polytope(d, 3, pts, mix(seed, 4, i));
    DifferenceBodyBound b = lemma_lv_check(q);
    if (!rep.extreme_volume || b.volume < *rep.extreme_volume) rep.extreme_volume = b.volume;
    if (b.pass && b.decomposition_pass) ++rep.passed;
    else
      rep.failures.push_back("Q=" + vertices_text(q) + ": vol(Q-Q)=" + to_string(b.volume) +
                             (b.decomposition_pass ? "" : " (decomposition failed)"));
  }
  std::vector<RatVector> unit{RatVector(d, Rat(0))};
  for (std::size_t i = 0; i < d; ++i) {
    RatVector e(d, Rat(0));
    e[i] = 1;
    unit.push_back(e);
  }
  DifferenceBodyBound u = lemma_lv_check(convex_hull(unit));
  rep.notes.push_back("unit simplex: vol(Q-Q)=" + to_string(u.volume) + " >= " + to_string(u.bound) +
                      ", H=" + to_string(u.hull_volume) + " = sum C_f=" + to_string(u.pieces_volume));
}

void run_minkowski(LemmaReport& rep, std::uint64_t seed) {
  const std::size_t d = rep.dim;
  for (std::size_t i = 0; i < rep.samples; ++i) {
    auto cone = random_simplicial_cone(d, 2, mix(seed, 5, i));
    Rng rng(mix(seed, 6, i));
    std::vector<BoundaryCoefficient> bs;
    for (std::size_t a = 0; a < d; ++a) bs.push_back(BoundaryCoefficient::standard(rng.uniform(1, 3)));
    ToricLogPair pair = validate_pair(d, cone.rays(), bs);
    ProofTrace tr = run_pipeline(pair);
    bool ok = std::all_of(tr.mk.checks.begin(), tr.mk.checks.end(), [](const CheckResult& c) { return c.pass; });
    if (!rep.extreme_volume || tr.mk.body_volume > *rep.extreme_volume) rep.extreme_volume = tr.mk.body_volume;
    if (ok) {
      ++rep.passed;
    } else {
      std::string failed;
      for (const auto& c : tr.mk.checks)
        if (!c.pass) failed += " " + c.name + (c.detail.empty() ? "" : "=" + c.detail);
      rep.failures.push_back("rays " + format_rays(pair.rays()) + " b " + format_coeffs(bs) + ":" + failed);
    }
  }
  if (d == 2) {
    ProofTrace smooth = run_pipeline(
        validate_pair(2, {{1, 0}, {0, 1}}, std::vector<BoundaryCoefficient>(2, BoundaryCoefficient::standard(1))));
    rep.notes.push_back("smooth d=2: vol(P)=" + to_string(smooth.mk.body_volume));
  }
}

}  // namespace

LemmaReport run_lemma_suite(LemmaKind kind, std::size_t dim, std::size_t samples, std::uint64_t seed) {
  LemmaReport rep;
  rep.kind = kind;
  rep.dim = dim;
  rep.samples = samples;
  switch (kind) {
    case LemmaKind::Vo:
      if (dim < 1 || dim > 4) throw Error(ErrorCode::InvalidParameters, "vo needs dim in 1..4");
      run_vo(rep, seed);
      break;
    case LemmaKind::Lv:
      if (dim < 1 || dim > 4) throw Error(ErrorCode::InvalidParameters, "lv needs dim in 1..4");
      run_lv(rep, seed);
      break;
    case LemmaKind::Minkowski:
      if (dim < 2 || dim > 4) throw Error(ErrorCode::InvalidParameters, "minkowski needs dim in 2..4");
      run_minkowski(rep, seed);
      break;
  }
  return rep;
}

std::string lemma_summary(const LemmaReport& rep) {
  static const char* names[] = {"vo", "lv", "minkowski"};
  std::ostringstream os;
  os << "check: " << names[static_cast<int>(rep.kind)] << "\n";
  os << "dim: " << rep.dim << "\n";
  os << "passed: " << rep.passed << " of " << rep.samples << "\n";
  if (rep.kind == LemmaKind::Vo) os << "non-standard lattices: " << rep.nonstandard_lattices << "\n";
  if (rep.extreme_volume) {
    if (rep.kind == LemmaKind::Lv) os << "min vol(Q-Q): " << to_string(*rep.extreme_volume) << "\n";
    if (rep.kind == LemmaKind::Minkowski) os << "max vol(P): " << to_string(*rep.extreme_volume) << "\n";
  }
  for (const auto& n : rep.notes) os << n << "\n";
  for (const auto& f : rep.failures) os << "FAIL " << f << "\n";
  return os.str();
}

}  // namespace toric
