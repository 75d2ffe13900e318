#pragma once

// Instance generators, the sweep driver, and randomized lemma suites.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toricmld/proof_pipeline.hpp"

namespace toric {

/// Unvalidated instance; the sweep validates and records errors per row.
struct Instance {
  std::string key;
  std::size_t dim = 0;
  std::vector<IntVector> rays;
  std::vector<BoundaryCoefficient> coeffs;
};

enum class FamilyKind { Line, Cyclic2d, RandomCone, LemmaPolytopes, ExplicitList };

std::string to_string(FamilyKind kind);
/// Throws InvalidParameters for unknown names.
FamilyKind parse_family_kind(const std::string& name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::Cyclic2d;
  long max_r = 0;                  // cyclic2d
  std::vector<std::size_t> dims;   // random_cone
  long max_entry = 2;              // random_cone
  long L = 1;                      // coefficient grid depth; max l for the line family
  bool include_one = false;
  long count = 0;                  // random_cone, per dimension
  std::optional<std::uint64_t> seed;
  std::vector<Instance> instances;  // explicit_list
  bool with_oracle = false;         // also compare compute_mld with mld_oracle on klt rows
};

/// Throws InvalidParameters.
void validate_spec(const FamilySpec& spec);

ToricLogPair cyclic_quotient_cone(long r, long s);

/// All k-tuples of 0, 1/2, ..., (L-1)/L (and 1), lexicographic.
std::vector<std::vector<BoundaryCoefficient>> coefficient_grid(std::size_t k, long L, bool include_one);

ToricLogPair random_simplicial_cone(std::size_t d, long max_entry, std::uint64_t seed);

/// The instances of a sweepable family in generation order.
std::vector<Instance> generate_instances(const FamilySpec& spec);

struct SweepRow {
  Instance instance;
  std::optional<ErrorCode> error;
  std::string error_detail;
  std::optional<LogCanonicalReport> report;
  std::optional<Int> j;
  std::optional<Rat> gamma;
  std::optional<Rat> gamma_chain;
  bool pipeline_ran = false;
  bool pipeline_pass = true;
  std::string pipeline_failure;
  std::optional<BoundVerdict> verdict;
  std::optional<bool> oracle_match;
  /// Verdict passes and every pipeline check passes; no verdict counts as pass.
  bool pass() const;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::optional<Rat> max_n_over_qd;
  std::optional<Rat> min_gamma;
  std::optional<Rat> max_a;
  std::vector<std::string> counterexamples;
  std::size_t errors = 0;
  std::size_t pipeline_runs = 0;
  std::size_t oracle_checks = 0;
  std::size_t oracle_mismatches = 0;
};

SweepRow evaluate_instance(const Instance& inst, bool with_oracle);
SweepReport sweep(const FamilySpec& spec);

std::string sweep_csv(const SweepReport& report);
std::string sweep_json(const SweepReport& report);
std::string sweep_summary(const SweepReport& report);

/// "0 1;3 -1" and "0;1/2;1"
std::string format_rays(const std::vector<IntVector>& rays);
std::string format_coeffs(const std::vector<BoundaryCoefficient>& coeffs);

// Randomized lemma suites.

enum class LemmaKind { Vo, Lv, Minkowski };
LemmaKind parse_lemma_kind(const std::string& name);

struct LemmaReport {
  LemmaKind kind = LemmaKind::Vo;
  std::size_t dim = 0;
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;  // exact witnesses
  std::optional<Rat> extreme_volume;  // lv: min vol(Q-Q); minkowski: max vol(P)
  std::vector<std::string> notes;     // pinned cases
  std::size_t nonstandard_lattices = 0;  // vo: samples with index > 1
  bool ok() const { return failures.empty() && passed == samples; }
};

/// Hull of random integer points in [0, max_entry]^d, resampled until full-dimensional.
RatPolytope random_lattice_polytope(std::size_t d, long max_entry, std::size_t points, std::uint64_t seed);
/// Random full-rank sublattice of Z^d with small entries; every other seed is Z^d itself.
SublatticeBasis random_full_lattice(std::size_t d, std::uint64_t seed);

LemmaReport run_lemma_suite(LemmaKind kind, std::size_t dim, std::size_t samples, std::uint64_t seed);
std::string lemma_summary(const LemmaReport& report);

}  // namespace toric
