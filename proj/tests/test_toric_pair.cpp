#include <random>

#include "doctest.h"
#include "toricmld/toric_pair.hpp"

using namespace toric;

namespace {

using BC = BoundaryCoefficient;

std::vector<BC> zeros(std::size_t k) { return std::vector<BC>(k, BC::standard(1)); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::CheckFailed;
}

// Minimum of psi over interior lattice points of the cone inside the box
// [-r, r]^d, by plain iteration.
std::optional<Rat> box_min(const ToricLogPair& p, const RatVector& psi, long r) {
  const std::size_t d = p.dim();
  std::optional<Rat> best;
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
  return best;
}

// Box large enough to hold the klt slab {x in sigma : psi(x) <= psi(sum of rays)}.
long slab_radius(const ToricLogPair& p, const RatVector& psi) {
  Rat u(0);
  for (const auto& r : p.rays()) u += dot(psi, to_rat(r));
  Rat m(0);
  for (const auto& r : p.rays()) {
    Rat s = u / dot(psi, to_rat(r));
    for (const auto& c : r) m = std::max(m, Rat(s * abs(c)));
  }
  return ceil(m).get_si();
}

std::vector<IntVector> random_simplicial(std::mt19937_64& rng, std::size_t d, long e) {
  std::uniform_int_distribution<long> dist(-e, e);
  while (true) {
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < d; ++i) {
      IntVector v(d);
      for (auto& c : v) c = dist(rng);
      if (is_zero(v)) break;
      rays.push_back(primitive(v));
    }
    if (rays.size() < d) continue;
    if (rank(IntMatrix::from_rows(rays, d)) == d) return rays;
  }
}

std::vector<BC> random_coeffs(std::mt19937_64& rng, std::size_t k, long max_l, bool with_one) {
  std::uniform_int_distribution<long> dist(1, with_one ? max_l + 1 : max_l);
  std::vector<BC> out;
  for (std::size_t i = 0; i < k; ++i) {
    long l = dist(rng);
    out.push_back(l > max_l ? BC::one() : BC::standard(l));
  }
  return out;
}

}  // namespace

TEST_CASE("boundary coefficients") {
  CHECK(BC::standard(1).value() == 0);
  CHECK(BC::standard(3).value() == make_rat(2, 3));
  CHECK(BC::one().value() == 1);
  CHECK(BC::one().complement() == 0);
  CHECK(BC::from_value(make_rat(4, 5)) == BC::standard(5));
  CHECK(BC::from_value(Rat(1)) == BC::one());
  CHECK(BC::from_value(Rat(0)) == BC::standard(1));
  CHECK(code_of([] { BC::from_value(make_rat(3, 5)); }) == ErrorCode::NonStandardCoefficient);
  CHECK(code_of([] { BC::from_value(Rat(-1)); }) == ErrorCode::NonStandardCoefficient);
  CHECK(code_of([] { BC::standard(0); }) == ErrorCode::NonStandardCoefficient);
}

TEST_CASE("validate_pair examples") {
  auto q = validate_pair(2, {{1, 0}, {0, 1}}, zeros(2));
  CHECK(q.facet_normals() == std::vector<IntVector>{{0, 1}, {1, 0}});
  CHECK(code_of([] { validate_pair(2, {{1, 0}, {-1, 0}}, zeros(2)); }) == ErrorCode::NotStronglyConvex);
  CHECK(code_of([] { validate_pair(2, {{2, 4}}, zeros(1)); }) == ErrorCode::NonPrimitiveRay);
  CHECK(code_of([] { validate_pair(2, {{1, 0}, {0, 1}}, zeros(3)); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { validate_pair(2, {{1, 0}, {0, 1}, {1, 1}}, zeros(3)); }) == ErrorCode::RedundantRay);
  CHECK(code_of([] { validate_pair(2, {{1, 0}, {1, 0}}, zeros(2)); }) == ErrorCode::RedundantRay);
  CHECK(code_of([] { validate_pair(3, {{1, 0, 0}, {0, 1, 0}}, zeros(2)); }) == ErrorCode::NotFullDimensional);
  CHECK(code_of([] {
          validate_pair(3, {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {0, 0, 1}}, zeros(4));
        }) == ErrorCode::NotStronglyConvex);
  CHECK(code_of([] { validate_pair(2, {{1, 0}, {0, 1}}, std::vector<Rat>{make_rat(1, 3), 0}); }) ==
        ErrorCode::NonStandardCoefficient);
  // (1,1,3) is the sum of the other three rays, so it is not extremal
  CHECK(code_of([] { validate_pair(3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 3}}, zeros(4)); }) ==
        ErrorCode::RedundantRay);
  auto one_d = validate_pair(1, {{-1}}, zeros(1));
  CHECK(one_d.facet_normals() == std::vector<IntVector>{{-1}});
}

TEST_CASE("solve_psi and compute_index") {
  auto quad = validate_pair(2, {{1, 0}, {0, 1}}, zeros(2));
  CHECK(solve_psi(quad) == RatVector{1, 1});
  CHECK(compute_index(quad, solve_psi(quad)) == 1);

  auto third = validate_pair(2, {{0, 1}, {3, -1}}, zeros(2));
  CHECK(solve_psi(third) == RatVector{make_rat(2, 3), 1});
  CHECK(compute_index(third, solve_psi(third)) == 3);

  auto half = validate_pair(2, {{1, 0}, {0, 1}}, {BC::standard(2), BC::standard(1)});
  CHECK(solve_psi(half) == RatVector{make_rat(1, 2), 1});
  CHECK(compute_index(half, solve_psi(half)) == 2);

  auto nonq = validate_pair(3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {2, 2, 3}}, zeros(4));
  CHECK(code_of([&] { solve_psi(nonq); }) == ErrorCode::NotLogQGorenstein);

  auto lc = validate_pair(2, {{1, 0}, {0, 1}}, {BC::one(), BC::one()});
  CHECK(is_zero(solve_psi(lc)));
  CHECK(compute_index(lc, solve_psi(lc)) == 1);
}

TEST_CASE("compute_mld examples") {
  auto smooth = compute_mld(validate_pair(2, {{1, 0}, {0, 1}}, zeros(2)));
  CHECK(smooth.a == 2);
  CHECK(smooth.q == 1);
  CHECK(smooth.witness == IntVector{1, 1});
  CHECK(smooth.klt);

  auto third = compute_mld(validate_pair(2, {{0, 1}, {3, -1}}, zeros(2)));
  CHECK(third.n == 3);
  CHECK(third.a == make_rat(2, 3));
  CHECK(third.q == 3);
  CHECK(third.witness == IntVector{1, 0});
  CHECK(third.value_group_flag);

  auto face = compute_mld(validate_pair(2, {{1, 0}, {0, 1}}, {BC::one(), BC::standard(1)}));
  CHECK(face.psi == RatVector{0, 1});
  CHECK(face.a == 1);
  CHECK(face.q == 1);
  CHECK_FALSE(face.klt);
  CHECK(face.witness[1] == 1);
  CHECK(face.witness[0] > 0);

  auto half = compute_mld(validate_pair(2, {{1, 0}, {0, 1}}, {BC::standard(2), BC::standard(1)}));
  CHECK(half.a == make_rat(3, 2));
  CHECK(half.q == 2);
  CHECK(half.witness == IntVector{1, 1});

  auto lc = compute_mld(validate_pair(2, {{1, 0}, {0, 1}}, {BC::one(), BC::one()}));
  CHECK(lc.a == 0);
  CHECK(lc.q == 1);
  CHECK(lc.n == 1);

  for (long k = 1; k <= 10; ++k) {
    auto ak = compute_mld(validate_pair(2, {{0, 1}, {k + 1, -k}}, zeros(2)));
    CHECK(ak.n == 1);
    CHECK(ak.a == 1);
    CHECK(ak.q == 1);
  }
  for (std::size_t d = 1; d <= 4; ++d) {
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < d; ++i) {
      IntVector v(d, 0);
      v[i] = 1;
      rays.push_back(v);
    }
    auto r = compute_mld(validate_pair(d, rays, zeros(d)));
    CHECK(r.n == 1);
    CHECK(r.a == Rat(static_cast<long>(d)));
    CHECK(r.q == 1);
  }
}

TEST_CASE("mld_oracle examples") {
  CHECK(mld_oracle(validate_pair(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, zeros(3))) == 3);
  CHECK(mld_oracle(validate_pair(2, {{0, 1}, {3, -1}}, zeros(2))) == make_rat(2, 3));
  auto a1 = validate_pair(2, {{0, 1}, {2, -1}}, zeros(2));
  CHECK(mld_oracle(a1) == 1);
  CHECK(solve_psi(a1) == RatVector{1, 1});
  CHECK(code_of([] { mld_oracle(validate_pair(2, {{1, 0}, {0, 1}}, {BC::one(), BC::standard(1)})); }) ==
        ErrorCode::NotKlt);
}

TEST_CASE("bound_check examples") {
  auto line = compute_mld(validate_pair(1, {{1}}, {BC::standard(5)}));
  CHECK(line.n == 5);
  CHECK(line.a == make_rat(1, 5));
  CHECK(line.q == 5);
  auto v1 = bound_check(line, 1);
  CHECK(v1.pass);
  CHECK(v1.limit == 5);
  CHECK(v1.n_over_qd == 1);

  auto v2 = bound_check(compute_mld(validate_pair(2, {{0, 1}, {3, -1}}, zeros(2))), 2);
  CHECK(v2.pass);
  CHECK(v2.limit == 18);

  auto v3 = bound_check(compute_mld(validate_pair(2, {{1, 0}, {0, 1}}, zeros(2))), 2);
  CHECK(v3.pass);
  CHECK(v3.limit == 2);

  auto smooth3 = compute_mld(validate_pair(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, zeros(3)));
  CHECK(code_of([&] { bound_check(smooth3, 3); }) == ErrorCode::MissingGamma);
  auto v4 = bound_check(smooth3, 3, make_rat(1, 2));
  CHECK(v4.constant == 24);
  CHECK(v4.pass);
}

TEST_CASE("2D cyclic quotients agree with the box oracle") {
  for (long r = 1; r <= 14; ++r)
    for (long s = 0; s < r; ++s) {
      if (gcd(Int(r), Int(s)) != 1) continue;
      for (long l1 = 1; l1 <= 3; ++l1)
        for (long l2 = 1; l2 <= 3; ++l2) {
          auto p = validate_pair(2, {{0, 1}, {r, -s}}, {BC::standard(l1), BC::standard(l2)});
          auto rep = compute_mld(p);
          auto brute = box_min(p, rep.psi, slab_radius(p, rep.psi));
          REQUIRE(brute.has_value());
          CHECK(rep.a == *brute);
          CHECK(mld_oracle(p) == rep.a);
          CHECK(is_integral(Rat(rep.n) * rep.psi));
          CHECK(Int(rep.n) % rep.q == 0);
          CHECK(Rat(rep.a * rep.n).get_den() == 1);
        }
    }
}

TEST_CASE("random 3D simplicial cones: compute_mld, oracle, box") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 60; ++it) {
    auto rays = random_simplicial(rng, 3, 2);
    auto coeffs = random_coeffs(rng, 3, 3, false);
    ToricLogPair p = validate_pair(3, rays, coeffs);
    auto rep = compute_mld(p);
    CHECK(mld_oracle(p) == rep.a);
    auto brute = box_min(p, rep.psi, slab_radius(p, rep.psi));
    REQUIRE(brute.has_value());
    CHECK(*brute == rep.a);
    CHECK(p.in_interior(rep.witness));
    CHECK(dot(rep.psi, to_rat(rep.witness)) == rep.a);
  }
}

TEST_CASE("face-quotient reduction against growing boxes") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int it = 0; it < 80; ++it) {
    std::size_t d = (it % 2 == 0) ? 2 : 3;
    auto rays = random_simplicial(rng, d, 2);
    auto coeffs = random_coeffs(rng, d, 2, true);
    ToricLogPair p = validate_pair(d, rays, coeffs);
    auto rep = compute_mld(p);
    if (is_zero(rep.psi)) continue;
    // No interior point goes below a, and larger boxes eventually reach it.
    std::optional<Rat> prev;
    bool reached = false;
    for (long r : {2L, 4L, 8L, 16L}) {
      auto m = box_min(p, rep.psi, r);
      if (!m) continue;
      CHECK(*m >= rep.a);
      if (prev) CHECK(*m <= *prev);
      prev = m;
      if (*m == rep.a) reached = true;
    }
    long need = 0;
    for (const auto& c : rep.witness) need = std::max(need, Int(abs(c)).get_si());
    if (need <= 16) CHECK(reached);
    // adding a lattice point of the face keeps the value and interiority
    IntVector f(d, 0);
    for (std::size_t i = 0; i < d; ++i)
      if (p.coeffs()[i].is_one()) f = f + p.rays()[i];
    IntVector w2 = rep.witness + Int(3) * f;
    CHECK(p.in_interior(w2));
    CHECK(dot(rep.psi, to_rat(w2)) == rep.a);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("raising a coefficient never raises the mld") {
  for (long r = 2; r <= 12; ++r)
    for (long s = 1; s < r; ++s) {
      if (gcd(Int(r), Int(s)) != 1) continue;
      std::vector<IntVector> rays{{0, 1}, {r, -s}};
      std::vector<BC> grid{BC::standard(1), BC::standard(2), BC::standard(3), BC::standard(4), BC::one()};
      for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
          auto lo = compute_mld(validate_pair(2, rays, {grid[i], grid[j]}));
          auto hi = compute_mld(validate_pair(2, rays, {grid[i], grid[j + 1]}));
          CHECK(hi.a <= lo.a);
          CHECK(hi.a >= 0);
        }
    }
}
