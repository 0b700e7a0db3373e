#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropkit/tropical_maps.hpp"

namespace tropkit {

/// {u in R^r : u >= 0, u_1 + ... + u_r <= vpi}. Throws BadParams if vpi <= 0.
Polytope standard_simplex(std::size_t r, const Rat& vpi);

struct Stratum {
  std::string id;
  int dim = 0;
  std::optional<std::string> label;
};

/// The simplex of a stratum, in its own chart R^r.
struct CanonicalSimplex {
  std::string stratum_id;
  int r = 0;
  Rat vpi = 1;
};

/// `face` is a face of `of`; `chart` maps the face's chart R^{r_face} onto
/// that face inside the chart of `of`.
struct IncidenceEdge {
  std::string face;
  std::string of;
  AffineMap chart;
};

struct SkeletonModel {
  int d = 0;
  std::vector<Stratum> strata;
  std::vector<CanonicalSimplex> simplices;
  std::vector<IncidenceEdge> incidence;
  ValueGroup gamma = ValueGroup::rationals();

  const Stratum* find_stratum(const std::string& id) const;
  const CanonicalSimplex* find_simplex(const std::string& stratum_id) const;
  /// Throws UnknownCell.
  const CanonicalSimplex& simplex(const std::string& stratum_id) const;
  int stratum_dim(const std::string& stratum_id) const;
};

struct SkeletonViolation {
  Errc kind;
  std::string message;
};

struct SkeletonReport {
  std::vector<SkeletonViolation> violations;
  bool ok() const { return violations.empty(); }
};

SkeletonReport validate_skeleton(const SkeletonModel& m);

/// Simplex id -> exponent map on its chart.
using FaffTable = std::map<std::string, ExponentMap>;

struct SkeletonVertex {
  std::string simplex;
  QVector point;  // chart coordinates
  friend bool operator==(const SkeletonVertex&, const SkeletonVertex&) = default;
};

struct SubdividedSkeleton {
  SkeletonModel base;
  /// Per simplex: the cells Delta_S meet f^{-1}(D + lambda), closed under faces, sorted.
  std::map<std::string, std::vector<Polytope>> cells;
  /// Vertices of the subdivision lying in the relative interior of their simplex.
  std::vector<SkeletonVertex> vertices;
};

/// Throws MissingData if a simplex has no map, DimensionMismatch on shape
/// errors, InconsistentOnFaces if maps do not agree along incidence charts
/// modulo the target lattice.
SubdividedSkeleton subdivide_skeleton(const SkeletonModel& m, const FaffTable& fmaps, const QuotientComplex& target);

/// Pullback of one target cell translate: {u in p : M u + c in d + lambda}; nullopt if empty.
std::optional<Polytope> pullback_cell(const Polytope& p, const AffineMap& f, const Polytope& d, const QVector& lambda);

/// First failure of the decomposition axioms inside one simplex, if any.
std::optional<std::string> check_simplex_decomposition(const Polytope& simplex, const std::vector<Polytope>& cells);

struct VertexStratum {
  SkeletonVertex vertex;
  int stratum_dim;    // dim S
  int torsor_rank;    // dim Delta_S
  int derived_dim;    // dim R = dim S + dim Delta_S
};

/// Covers vertices only.
std::vector<VertexStratum> vertex_stratum_table(const SubdividedSkeleton& s);

struct NondegEntry {
  int image_dim = 0;
  int abelian_image_dim = 0;
};
using NondegData = std::map<std::string, NondegEntry>;

/// Throws MissingData if some simplex has no entry, BadParams if an entry is out of range.
std::set<std::string> nondegenerate_set(const SkeletonModel& m, const NondegData& nd);

/// dim f_aff(Delta_S) computed from the exponent maps.
std::map<std::string, int> computed_image_dims(const SkeletonModel& m, const FaffTable& fmaps);

}  // namespace tropkit
