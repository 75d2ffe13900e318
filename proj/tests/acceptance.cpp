// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>

#include "toricmld/families.hpp"

using namespace toric;

namespace {

using Clock = std::chrono::steady_clock;
using BC = BoundaryCoefficient;

// pinned thresholds
constexpr double kLineSeconds = 1.0;
constexpr double kCyclicSeconds = 300.0;
constexpr double kVoSeconds = 60.0;
constexpr long kMaxR = 60;
constexpr long kCyclicL = 5;
constexpr long kRandomCones = 500;
constexpr long kRandomL = 3;
constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kVoSamples = 200;
constexpr std::size_t kLvSamples = 500;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const Outcome& o) {
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  if (!o.pass) ++failures;
}

std::vector<BC> zeros(std::size_t k) { return std::vector<BC>(k, BC::standard(1)); }

// Interior lattice points of the cone in [-r, r]^d, minimum psi, by plain iteration.
Rat brute_mld(const ToricLogPair& p, const RatVector& psi, long r) {
  std::optional<Rat> best;
  const std::size_t d = p.dim();
  IntVector x(d, Int(-r));
  while (true) {
    if (p.in_interior(x)) {
      Rat v = dot(psi, to_rat(x));
      if (!best || v < *best) best = v;
    }
    std::size_t i = 0;
    while (i < d && x[i] == r) x[i++] = -r;
    if (i == d) break;
    ++x[i];
  }
  return best ? *best : Rat(-1);
}

}  // namespace

int main() {
  // 1: c_1 = 1
  {
    Outcome o;
    auto t0 = Clock::now();
    FamilySpec spec;
    spec.kind = FamilyKind::Line;
    spec.L = 1000;
    SweepReport rep = sweep(spec);
    double secs = seconds_since(t0);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      const auto& row = rep.rows[i];
      Int l(static_cast<long>(i + 1));
      if (!row.report || row.report->n != l || row.report->a != make_rat(1, l) || row.report->q != l)
        o.fail("wrong (n,a,q) at l=" + to_string(l));
      else if (!row.verdict || !row.verdict->pass || Rat(row.report->n) != row.verdict->limit)
        o.fail("n != 1*q at l=" + to_string(l));
    }
    if (rep.rows.size() != 1000) o.fail("expected 1000 rows");
    if (secs >= kLineSeconds) o.fail("runtime " + std::to_string(secs) + " s");
    if (o.pass) o.detail = "l=1..1000: (n,a,q)=(l,1/l,l), n = 1*q; " + std::to_string(secs) + " s";
    report(1, o);
  }

  // 2 + the 2D part of 3, 5, 8 share one sweep
  auto t0 = Clock::now();
  FamilySpec cyc;
  cyc.kind = FamilyKind::Cyclic2d;
  cyc.max_r = kMaxR;
  cyc.L = kCyclicL;
  cyc.include_one = true;
  cyc.with_oracle = true;
  SweepReport cyc_rep = sweep(cyc);
  double cyc_secs = seconds_since(t0);

  FamilySpec rnd;
  rnd.kind = FamilyKind::RandomCone;
  rnd.dims = {3};
  rnd.count = kRandomCones;
  rnd.L = kRandomL;
  rnd.seed = kSeed;
  rnd.with_oracle = true;
  SweepReport rnd_rep = sweep(rnd);

  {
    Outcome o;
    std::size_t bad = 0;
    for (const auto& row : cyc_rep.rows) {
      if (row.error || !row.verdict) {
        o.fail("row without verdict: " + row.instance.key);
        continue;
      }
      if (row.verdict->constant != 2 || Rat(row.verdict->n) > 2 * Rat(row.verdict->q * row.verdict->q)) ++bad;
    }
    if (bad) o.fail(std::to_string(bad) + " rows with n > 2 q^2");
    if (!cyc_rep.counterexamples.empty()) o.fail("counterexample " + cyc_rep.counterexamples.front());
    if (cyc_secs >= kCyclicSeconds) o.fail("runtime " + std::to_string(cyc_secs) + " s");
    if (o.pass)
      o.detail = std::to_string(cyc_rep.rows.size()) + " instances (r<=60, L<=5 with b=1), max n/q^2 = " +
                 to_string(*cyc_rep.max_n_over_qd) + ", 0 counterexamples; " + std::to_string(cyc_secs) +
                 " s including oracle and proof traces";
    report(2, o);
  }

  {
    Outcome o;
    std::size_t klt2 = 0, checked2 = 0;
    for (const auto& row : cyc_rep.rows) {
      if (!row.report || !row.report->klt) continue;
      ++klt2;
      if (!row.oracle_match) o.fail("no oracle run for " + row.instance.key);
      else if (!*row.oracle_match) o.fail("mismatch at " + row.instance.key);
      else ++checked2;
    }
    std::size_t checked3 = 0;
    for (const auto& row : rnd_rep.rows) {
      if (row.error) {
        o.fail("random row error " + row.instance.key);
        continue;
      }
      if (!row.oracle_match || !*row.oracle_match) o.fail("mismatch at " + row.instance.key);
      else ++checked3;
    }
    if (checked3 != static_cast<std::size_t>(kRandomCones)) o.fail("expected 500 random 3D comparisons");
    if (o.pass)
      o.detail = "compute_mld = mld_oracle on " + std::to_string(checked2) + " 2D klt and " +
                 std::to_string(checked3) + " random 3D instances";
    report(3, o);
  }

  // 4: known invariants
  {
    Outcome o;
    auto expect = [&](const std::string& name, const ToricLogPair& p, long n, Rat a, long q, long box) {
      LogCanonicalReport r = compute_mld(p);
      if (r.n != n || r.a != a || r.q != q)
        o.fail(name + " gave (" + to_string(r.n) + "," + to_string(r.a) + "," + to_string(r.q) + ")");
      Rat brute = brute_mld(p, r.psi, box);
      if (brute != a) o.fail(name + " enumeration gave " + to_string(brute));
    };
    expect("1/3(1,1)", validate_pair(2, {{0, 1}, {3, -1}}, zeros(2)), 3, make_rat(2, 3), 3, 6);
    for (long k = 1; k <= 10; ++k)
      expect("A_" + std::to_string(k), validate_pair(2, {{0, 1}, {k + 1, -k}}, zeros(2)), 1, Rat(1), 1, 2 * k + 4);
    for (std::size_t d = 1; d <= 4; ++d) {
      std::vector<IntVector> rays;
      for (std::size_t i = 0; i < d; ++i) {
        IntVector v(d, 0);
        v[i] = 1;
        rays.push_back(v);
      }
      expect("smooth d=" + std::to_string(d), validate_pair(d, rays, zeros(d)), 1, Rat(static_cast<long>(d)), 1, 3);
    }
    if (o.pass) o.detail = "1/3(1,1) -> (3,2/3,3); A_1..A_10 -> (1,1,1); smooth d=1..4 -> (1,d,1); all by enumeration too";
    report(4, o);
  }

  // 5: every check of every proof trace
  {
    Outcome o;
    std::size_t runs = 0, klt = 0;
    for (const auto* rep : {&cyc_rep, &rnd_rep})
      for (const auto& row : rep->rows) {
        if (!row.report || !row.report->klt || row.instance.dim < 2) continue;
        ++klt;
        if (!row.pipeline_ran) {
          o.fail("no trace for " + row.instance.key);
          continue;
        }
        ++runs;
        if (!row.pipeline_pass) o.fail(row.instance.key + ": " + row.pipeline_failure);
        if (!row.verdict || !row.verdict->pass) o.fail(row.instance.key + ": bound verdict");
      }
    // the named checks are all present in a trace
    ProofTrace tr = run_pipeline(validate_pair(2, {{0, 1}, {3, -1}}, zeros(2)));
    std::set<std::string> names;
    for (const auto& c : tr.checks) names.insert(c.name);
    for (const char* need : {"bullet_na_min_level", "bullet_vertex_order", "S_vertices_in_lambda_over_q",
                             "P_unique_interior_point", "P_volume_le_2^d", "displayed_inequality", "j_bound",
                             "n_bound", "j_bound_shrunk_gamma", "n_bound_shrunk_gamma"})
      if (!names.count(need)) o.fail(std::string("trace lacks check ") + need);
    if (o.pass)
      o.detail = std::to_string(runs) + " of " + std::to_string(klt) +
                 " klt traces (d>=2) pass every check; min gamma 2D " + to_string(*cyc_rep.min_gamma) + ", 3D " +
                 to_string(*rnd_rep.min_gamma);
    report(5, o);
  }

  // 6: lemma vo
  {
    Outcome o;
    auto t = Clock::now();
    std::size_t nonstd = 0, total = 0;
    for (std::size_t d : {2, 3, 4}) {
      LemmaReport r = run_lemma_suite(LemmaKind::Vo, d, kVoSamples, kSeed + d);
      total += r.passed;
      nonstd += r.nonstandard_lattices;
      if (!r.ok()) o.fail("d=" + std::to_string(d) + ": " + (r.failures.empty() ? "" : r.failures.front()));
    }
    double secs = seconds_since(t);
    if (nonstd == 0) o.fail("no non-standard sublattice sampled");
    if (secs >= kVoSeconds) o.fail("runtime " + std::to_string(secs) + " s");
    if (o.pass)
      o.detail = std::to_string(total) + "/600 exact equalities (" + std::to_string(nonstd) +
                 " on index > 1 sublattices); " + std::to_string(secs) + " s";
    report(6, o);
  }

  // 7: lemma lv
  {
    Outcome o;
    std::string mins;
    for (std::size_t d : {2, 3}) {
      LemmaReport r = run_lemma_suite(LemmaKind::Lv, d, kLvSamples, kSeed + 10 + d);
      if (!r.ok()) o.fail("d=" + std::to_string(d) + ": " + (r.failures.empty() ? "" : r.failures.front()));
      mins += " d=" + std::to_string(d) + " min " + to_string(*r.extreme_volume);
    }
    DifferenceBodyBound seg = lemma_lv_check(convex_hull({{Rat(0)}, {Rat(1)}}));
    if (seg.volume != 2 || seg.bound != 2) o.fail("unit segment gave " + to_string(seg.volume));
    DifferenceBodyBound tri = lemma_lv_check(convex_hull({{0, 0}, {1, 0}, {0, 1}}));
    if (tri.volume != 3 || !tri.pass) o.fail("unit triangle gave " + to_string(tri.volume));
    if (!tri.decomposition_pass || tri.hull_volume != tri.pieces_volume) o.fail("triangle decomposition");
    if (o.pass)
      o.detail = "1000 random lattice polytopes pass," + mins + "; segment 2 = 2; triangle 3 >= 2; H = sum C_f";
    report(7, o);
  }

  // 8: Minkowski body preconditions verified before the volume bound
  {
    Outcome o;
    ProofTrace smooth = run_pipeline(validate_pair(2, {{1, 0}, {0, 1}}, zeros(2)));
    if (smooth.mk.body_volume != 4) o.fail("smooth d=2 vol(P) = " + to_string(smooth.mk.body_volume));
    const auto& mc = smooth.mk.checks;
    auto pos = [&](const std::string& n) {
      for (std::size_t i = 0; i < mc.size(); ++i)
        if (mc[i].name == n) return static_cast<long>(i);
      return -1L;
    };
    long sym = pos("P_symmetric"), uniq = pos("P_unique_interior_point"), vol = pos("P_volume_le_2^d");
    if (sym < 0 || uniq < 0 || vol < 0 || !(sym < vol && uniq < vol)) o.fail("check order");
    std::size_t bodies = 0;
    for (std::size_t d : {2, 3, 4}) {
      LemmaReport r = run_lemma_suite(LemmaKind::Minkowski, d, d == 4 ? 20 : 100, kSeed + 20 + d);
      bodies += r.passed;
      if (!r.ok()) o.fail("d=" + std::to_string(d) + ": " + (r.failures.empty() ? "" : r.failures.front()));
    }
    for (const auto* rep : {&cyc_rep, &rnd_rep})
      for (const auto& row : rep->rows)
        if (row.pipeline_ran) {
          ++bodies;
          if (!row.pipeline_pass) o.fail(row.instance.key + ": " + row.pipeline_failure);
        }
    if (o.pass)
      o.detail = std::to_string(bodies) + " bodies symmetric with a unique interior point, vol <= 2^d; smooth d=2 vol(P) = 4";
    report(8, o);
  }

  // 9: determinism
  {
    Outcome o;
    FamilySpec a;
    a.kind = FamilyKind::RandomCone;
    a.dims = {2, 3, 4};
    a.count = 40;
    a.L = 3;
    a.include_one = true;
    a.seed = kSeed;
    std::string first = sweep_csv(sweep(a));
    std::string second = sweep_csv(sweep(a));
    if (first != second) o.fail("random_cone CSV differs between runs");
    if (sweep_csv(rnd_rep) != sweep_csv(sweep(rnd))) o.fail("3D oracle sweep CSV differs between runs");
    if (o.pass) o.detail = "repeated seeded sweeps give byte-identical CSV (" + std::to_string(first.size()) + " bytes)";
    report(9, o);
  }

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
