#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tfree/arrangement.hpp"
#include "tfree/matroid.hpp"
#include "tfree/rank2.hpp"

namespace tfree {

// ---- mixed products -------------------------------------------------------

struct FlatContribution {
  Flat2 flat;
  ExponentPair exponents;
};

struct Lmp2Breakdown {
  Integer total;
  std::vector<FlatContribution> flats;
};

/// Sum over rank-2 flats X of d1^X * d2^X.
Lmp2Breakdown lmp2_breakdown(const Arrangement& a, const Multiplicity& m);
Integer lmp2(const Arrangement& a, const Multiplicity& m);

/// Second elementary symmetric polynomial of the exponents.
Integer gmp2_from_exponents(std::span<const unsigned long> exponents);

/// Max of e2 over nonnegative integer rank-tuples summing to total; reached
/// at the balanced partition.
Integer gmp2_max(std::size_t rank, const Integer& total);
/// The real relaxation C(rank, 2) * (total / rank)^2, for reporting.
Rational gmp2_real_bound(std::size_t rank, const Integer& total);

// ---- generic circuits -----------------------------------------------------

/// rank + 1 hyperplanes of an essential irreducible arrangement, any three of
/// which have independent normals.
struct GenericCircuit {
  std::vector<std::size_t> indices;
};

/// |indices| == rank + 1 and every triple of normals has rank 3.
bool is_generic_circuit(const Arrangement& a, std::span<const std::size_t> indices);

/// Deletion/restriction recursion with the explicit rank-3 case analysis.
/// Throws ReducibleInput unless a is irreducible of rank >= 3.
GenericCircuit find_generic_circuit(const Arrangement& a);
/// First valid (rank + 1)-subset in lexicographic order.
GenericCircuit find_generic_circuit_brute_force(const Arrangement& a);

struct CircuitGap {
  Integer lmp2;          // C(rank + 1, 2)
  Rational gmp2_bound;   // C(rank, 2) ((rank + 1) / rank)^2
  Rational gap;          // (rank + 1) / (2 rank)
};

/// Why a generic circuit is never free. Throws std::invalid_argument for rank < 3.
CircuitGap circuit_is_nonfree_check(std::size_t rank);

// ---- certificates ---------------------------------------------------------

/// Proof that (A, m) is not free: LMP2 of the scoped subarrangement exceeds
/// every GMP2 a free multiarrangement of that rank and total multiplicity could
/// have. The scope is either all of A or one irreducible factor of A; a free
/// (A, m) restricts to a free factor, so either scope certifies A.
class NonFreenessCertificate {
 public:
  /// Throws InternalInvariant unless lmp2_lower > gmp2_upper.
  NonFreenessCertificate(Integer lmp2_lower, bool lmp2_exact, Integer gmp2_upper, std::size_t rank,
                         Multiplicity multiplicity, std::vector<std::size_t> scope);

  static constexpr const char* theorem = "LMP2>GMP2max";

  const Integer& lmp2_lower() const { return lmp2_lower_; }
  bool lmp2_exact() const { return lmp2_exact_; }
  const Integer& gmp2_upper() const { return gmp2_upper_; }
  std::size_t rank() const { return rank_; }
  /// Over all hyperplanes of A.
  const Multiplicity& multiplicity() const { return multiplicity_; }
  /// Hyperplanes of A the inequality is about.
  const std::vector<std::size_t>& scope() const { return scope_; }
  Integer total_multiplicity() const;
  Rational gmp2_real_bound() const { return tfree::gmp2_real_bound(rank_, total_multiplicity()); }

  std::vector<std::size_t> circuit_indices;  // empty unless built from a circuit
  std::optional<unsigned long> k0;

 private:
  Integer lmp2_lower_;
  bool lmp2_exact_;
  Integer gmp2_upper_;
  std::size_t rank_;
  Multiplicity multiplicity_;
  std::vector<std::size_t> scope_;
};

/// Some(certificate) iff exact LMP2 > gmp2_max(rank, |m|). None is
/// inconclusive, not a freeness proof.
std::optional<NonFreenessCertificate> nonfree_by_lmp_gmp(const Arrangement& a,
                                                          const Multiplicity& m);

/// Recomputes the certificate's inequality for A from scratch along a second
/// route: flats grouped by their reduced span, exponents by dimension
/// counting, gmp2 bound from an explicit balanced tuple.
bool audit_certificate(const Arrangement& a, const NonFreenessCertificate& cert);

// ---- non-free multiplicity family -----------------------------------------

/// k on the circuit, 1 elsewhere.
Multiplicity circuit_multiplicity(std::size_t n, std::span<const std::size_t> circuit, unsigned k);

/// C(rank + 1, 2) k^2 > gmp2_max(rank, (k - 1)(rank + 1) + n).
bool circuit_bound_exceeds(std::size_t rank, std::size_t n, unsigned long k);

/// Least k >= 1 with circuit_bound_exceeds. Throws std::invalid_argument for rank < 3.
unsigned long threshold_k0(std::size_t rank, std::size_t n);

struct NonFreeFamily {
  GenericCircuit circuit;
  unsigned long k0 = 0;
  Multiplicity multiplicity;  // at k0
};

/// Throws ReducibleInput unless a is irreducible of rank >= 3.
NonFreeFamily nonfree_multiplicity_family(const Arrangement& a);

// ---- verdict --------------------------------------------------------------

struct TotallyFree {
  Decomposition decomposition;
};

struct NotTotallyFreeWitness {
  Decomposition decomposition;
  std::size_t factor_position = 0;      // into decomposition.factors
  GenericCircuit circuit;               // indices into A
  GenericCircuit factor_circuit;        // indices into the factor arrangement
  unsigned long k0 = 0;
  NonFreenessCertificate certificate;   // scoped to the factor

  const Factor& factor() const { return decomposition.factors.at(factor_position); }
};

using Verdict = std::variant<TotallyFree, NotTotallyFreeWitness>;

inline bool is_totally_free(const Verdict& v) { return std::holds_alternative<TotallyFree>(v); }

Verdict decide_totally_free(const Arrangement& a);

}  // namespace tfree
