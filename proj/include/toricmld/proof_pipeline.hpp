#pragma once

// Step-by-step re-run of the n <= c_d q^d argument on one klt instance.
// Everything below Lambda lives in Lambda-coordinates, so Lambda itself is
// the standard lattice there.

#include <optional>
#include <string>
#include <vector>

#include "toricmld/polytope.hpp"
#include "toricmld/toric_pair.hpp"

namespace toric {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct BoxData {
  RatPolytope box;
  std::vector<RatVector> vertices;  // v_alpha per ray, Lambda-coordinates
  std::vector<CheckResult> checks;
};

/// The slice Lambda_R ∩ (sigma - e) with v_alpha = e_alpha/(n(1-b_alpha)) - e.
BoxData build_box(const ToricLogPair& pair, const RatVector& psi, const Int& n, const IntVector& e,
                  const SublatticeBasis& lambda);

struct ShrinkResult {
  RatPolytope shrunk;
  RatVector z;
  Rat factor;  // S' = z + factor (S - z)
};

/// z = lexicographically least point of Lambda ∩ int(S); shrinks S about z
/// until z is the only point of (1/q)Lambda in the interior.
ShrinkResult shrink_to_unique(const RatPolytope& s, const Int& q);
ShrinkResult shrink_to_unique(const RatPolytope& s, const Int& q, const RatVector& z);

struct MinkowskiBody {
  RatPolytope cone;       // C
  RatPolytope reflected;  // C'
  RatPolytope body;       // P
  Rat cone_volume;
  Rat body_volume;
  std::vector<CheckResult> checks;
};

MinkowskiBody minkowski_certificate(const Int& j, const RatPolytope& s_shrunk, const RatVector& z, const Rat& gamma);

struct ProofTrace {
  std::size_t dim = 0;
  RatVector psi;
  Int n;
  Rat a;
  Int q;
  IntVector e;
  SublatticeBasis lambda;
  RatPolytope box;
  std::vector<RatVector> box_vertices;
  Int j;
  RatPolytope s;
  RatVector z;
  Rat shrink_factor;
  RatPolytope s_shrunk;
  Rat gamma;        // max_gamma(S', z)
  Rat gamma_chain;  // shrink_factor * gamma: z + gamma_chain (S - S) ⊆ S
  MinkowskiBody mk;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  /// First failing check, if any.
  const CheckResult* first_failure() const;
};

std::vector<CheckResult> verify_bullets(const ToricLogPair& pair, const ProofTrace& trace);
std::vector<CheckResult> chain_verify(const ProofTrace& trace);

/// Throws NotKlt or DimensionTooSmall; check failures are recorded, not thrown.
ProofTrace run_pipeline(const ToricLogPair& pair);
/// Throws CheckFailed naming the first failing check.
void require_all(const ProofTrace& trace);

std::string serialize_trace(const ProofTrace& trace);

struct VolumeIdentity {
  Rat cone_volume;
  Rat predicted;
  bool pass = false;
};

/// vol_{Z×L}(cone_over(h, Q)) = h/(rank L + 1) · vol_L(Q). L must be full rank.
VolumeIdentity lemma_vo_check(const Rat& h, const RatPolytope& q, const SublatticeBasis& lattice);

struct DifferenceBodyBound {
  Rat volume;  // vol(Q - Q)
  Rat bound;   // 2^d / d!
  bool pass = false;
  bool simplex = false;
  // simplex-only: H = hull(±v_i) ⊆ Q - Q, vol(H) = Σ vol(C_f), each vol(C_f) >= 1/d!
  Rat hull_volume;
  Rat pieces_volume;
  Rat min_piece;
  bool decomposition_pass = true;
};

/// Throws NotLatticePolytope unless Q has integer vertices.
DifferenceBodyBound lemma_lv_check(const RatPolytope& q);

}  // namespace toric
