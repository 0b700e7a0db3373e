#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropkit/error.hpp"

namespace tropkit {

/// Torus ranks n_v per place; places not listed have good reduction (n_v = 0).
struct AbelianProfile {
  int dim = 0;
  std::map<std::string, int> torus_rank;
  bool simple = false;

  int n(const std::string& place) const;
  /// Copy without zero entries, so equal profiles compare equal.
  AbelianProfile normalized() const;
  friend bool operator==(const AbelianProfile& a, const AbelianProfile& b);
};

/// Throws BadParams unless 0 <= n_v <= dim everywhere.
void validate_profile(const AbelianProfile& p);

int abelian_rank(const AbelianProfile& p, const std::string& place);
AbelianProfile product_profile(const AbelianProfile& a, const AbelianProfile& b);
AbelianProfile trivial_profile();
bool check_exact_sequence(const AbelianProfile& p1, const AbelianProfile& p2, const AbelianProfile& p3);
bool check_isogeny_invariant(const AbelianProfile& a, const AbelianProfile& b);
bool is_nowhere_degenerate(const AbelianProfile& p);

struct IsogenyDecomposition {
  std::vector<std::pair<AbelianProfile, int>> factors;  // (simple factor, multiplicity)
};

/// Product of all factors with multiplicity.
AbelianProfile total_profile(const IsogenyDecomposition& d);
IsogenyDecomposition concat(const IsogenyDecomposition& a, const IsogenyDecomposition& b);

/// Throws NotSimpleFactor, BadParams (multiplicity < 1).
int ndr(const IsogenyDecomposition& d);
AbelianProfile max_nowhere_degenerate_profile(const IsogenyDecomposition& d);

/// ndr of a source surjecting onto a target can only drop.
bool check_surjection_ndr(const IsogenyDecomposition& source, const IsogenyDecomposition& target);

struct ConjectureStatus {
  enum class Kind { HoldsByNdrLeq1, ReducedToNowhereDegenerate } kind;
  int ndr = 0;
  std::optional<AbelianProfile> reduced_to;
  std::string citation;
  std::string summary() const;
};

ConjectureStatus conjecture_status(const IsogenyDecomposition& d);

struct DualGraph {
  std::vector<int> genus;                               // per vertex
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // loops and multi-edges allowed
};

/// Cycle rank #E - #V + 1. Throws Disconnected, BadParams on bad indices or negative genus.
int jacobian_torus_rank(const DualGraph& g);

struct CurveStatus {
  enum class Kind { HoldsByThmA3, Unresolved } kind;
  std::optional<std::string> witness_place;
  std::string citation;
  std::string summary() const;
};

/// Throws GenusMismatch unless every graph has sum of genera + cycle rank = g.
CurveStatus curve_status(const std::map<std::string, DualGraph>& graphs, int g);

}  // namespace tropkit
