#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tropkit/error.hpp"
#include "tropkit/polytope.hpp"

namespace tropkit {

/// Full-rank lattice in Q^n; basis vectors are the columns of `basis()`.
class Lattice {
 public:
  explicit Lattice(QMatrix basis);
  static Lattice from_vectors(const std::vector<QVector>& vectors);
  static Lattice integer(std::size_t n);
  static Lattice scaled(std::size_t n, const Rat& factor);

  std::size_t rank() const { return basis_.cols(); }
  const QMatrix& basis() const { return basis_; }
  QVector basis_vector(std::size_t j) const { return basis_.col(j); }

  QVector coordinates(const QVector& x) const;
  bool contains(const QVector& x) const;
  /// Representative of x + Lambda in the half-open fundamental parallelepiped.
  QVector reduce(const QVector& x) const;
  Rat covolume() const;
  bool same_lattice(const Lattice& other) const;
  Lattice direct_sum(const Lattice& other) const;

  /// Lattice points whose coordinates lie in the coordinate bounding box of
  /// `pts`; a superset of the lattice points of conv(pts).
  std::vector<QVector> points_in_box(const std::vector<QVector>& pts) const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }

 private:
  QMatrix basis_;
  QMatrix inverse_;
};

/// Translations lambda for which a and b + lambda may meet.
std::vector<QVector> translations_meeting(const Polytope& a, const Polytope& b, const Lattice& lat);

/// Some lambda with inner contained in outer + lambda, if one exists.
std::optional<QVector> containing_translation(const Polytope& inner, const Polytope& outer, const Lattice& lat);

/// Translate of p whose first vertex lies in the fundamental parallelepiped.
Polytope canonical_cell(const Polytope& p, const Lattice& lat);

/// Point of R^n / Lambda, stored by its reduced representative.
class QuotientPoint {
 public:
  QuotientPoint(const Lattice& lat, const QVector& x) : rep_(lat.reduce(x)) {}
  const QVector& representative() const { return rep_; }
  friend bool operator==(const QuotientPoint&, const QuotientPoint&) = default;

 private:
  QVector rep_;
};

/// Lambda-periodic Gamma-rational decomposition of R^n, stored as a finite
/// list of representative cells (one or more per Lambda-orbit).
class PeriodicComplex {
 public:
  /// Stores the cells as given. Use validate_periodic for checked construction.
  static PeriodicComplex unchecked(Lattice lat, ValueGroup gamma, std::vector<Polytope> cells);

  std::size_t ambient_dim() const { return lattice_.rank(); }
  const Lattice& lattice() const { return lattice_; }
  const ValueGroup& gamma() const { return gamma_; }
  const std::vector<Polytope>& cells() const { return cells_; }

 private:
  PeriodicComplex(Lattice lat, ValueGroup gamma, std::vector<Polytope> cells)
      : lattice_(std::move(lat)), gamma_(std::move(gamma)), cells_(std::move(cells)) {}
  Lattice lattice_;
  ValueGroup gamma_;
  std::vector<Polytope> cells_;
};

struct PeriodicViolation {
  Errc kind;
  std::string message;
  std::vector<std::size_t> cells;  // offending input cell indices
};

struct PeriodicValidation {
  std::optional<PeriodicComplex> complex;
  std::optional<PeriodicViolation> violation;
  bool ok() const { return complex.has_value(); }
};

/// Checks, in order: Gamma-rationality, injectivity into R^n / Lambda,
/// closure under faces (mod Lambda), pairwise intersections being common
/// faces, and coverage by volume accounting against |det Lambda|. Reports the
/// first violation found.
PeriodicValidation validate_periodic(std::vector<Polytope> cells, const Lattice& lat, const ValueGroup& gamma);

/// As validate_periodic, but throws Error(kind) on the first violation.
PeriodicComplex make_periodic(std::vector<Polytope> cells, const Lattice& lat, const ValueGroup& gamma);

/// One cell per Lambda-orbit, canonicalized and sorted by (dim, vertices).
class QuotientComplex {
 public:
  QuotientComplex(PeriodicComplex base, std::vector<Polytope> cells, std::vector<std::size_t> representative)
      : base_(std::move(base)), cells_(std::move(cells)), representative_(std::move(representative)) {}

  const PeriodicComplex& base() const { return base_; }
  const Lattice& lattice() const { return base_.lattice(); }
  std::size_t ambient_dim() const { return base_.ambient_dim(); }
  const std::vector<Polytope>& cells() const { return cells_; }
  const Polytope& cell(std::size_t id) const { return cells_.at(id); }
  /// Index into base().cells() of the input cell that represents each orbit.
  const std::vector<std::size_t>& representative() const { return representative_; }
  std::size_t count(std::size_t dim) const;

 private:
  PeriodicComplex base_;
  std::vector<Polytope> cells_;
  std::vector<std::size_t> representative_;
};

QuotientComplex quotient(const PeriodicComplex& c);

/// Splits along the periodic families {normal . u = constant + normal . lambda}.
/// Throws NotLatticeStable if a family leaves Gamma (constant or a translate
/// step outside Gamma). The result is validated.
PeriodicComplex refine(const PeriodicComplex& c, const std::vector<Hyperplane>& cuts);

/// Throws NotCovered if no cell contains a representative of x in its relative interior.
std::size_t locate(const QuotientComplex& qc, const QuotientPoint& x);

/// Throws LatticeMismatch unless both complexes live on the same lattice.
QuotientComplex common_refinement(const QuotientComplex& a, const QuotientComplex& b);

/// Family of parallel cut hyperplanes {normal . u = offset + k * step}; step 0 means a single hyperplane.
struct CutFamily {
  QVector normal;
  Rat offset;
  Rat step;
};

/// Full-dimensional pieces of p after cutting by every family.
std::vector<Polytope> split_by_cuts(const Polytope& p, const std::vector<CutFamily>& cuts);

/// Periodic family generated by a hyperplane and the lattice translations.
CutFamily periodic_family(const Hyperplane& h, const Lattice& lat);

}  // namespace tropkit
