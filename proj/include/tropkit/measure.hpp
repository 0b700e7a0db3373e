#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropkit/skeleton.hpp"

namespace tropkit {

/// Cells a measure lives on. With a lattice, cells are canonical orbit
/// representatives in R^n / Lambda; without one they are plain cells of R^n.
struct Carrier {
  std::size_t ambient_dim = 0;
  std::optional<Lattice> lattice;
  std::vector<Polytope> cells;

  static std::shared_ptr<const Carrier> plain(std::size_t n, std::vector<Polytope> cells);
  static std::shared_ptr<const Carrier> periodic(const Lattice& lat, std::vector<Polytope> cells);
  static std::shared_ptr<const Carrier> from_quotient(const QuotientComplex& qc);

  /// Id of the cell equal to p (up to a lattice translation); nullopt if absent.
  std::optional<std::size_t> find(const Polytope& p) const;
  /// Lattice translates lambda with cells[id] + lambda contained in outer (just 0 for plain carriers).
  std::vector<QVector> translates_inside(std::size_t id, const Polytope& outer) const;

  friend bool operator==(const Carrier& a, const Carrier& b) {
    return a.ambient_dim == b.ambient_dim && a.lattice == b.lattice && a.cells == b.cells;
  }
};

using CarrierPtr = std::shared_ptr<const Carrier>;

/// Sum of weight * delta_cell: each delta is the push-out of lattice-normalized
/// Lebesgue measure on its cell (counting measure on points).
class PolytopalMeasure {
 public:
  using Term = std::pair<std::size_t, Rat>;

  /// Throws UnknownCell for ids outside the carrier, BadParams for negative
  /// weights. Repeated ids are merged and zero weights dropped.
  PolytopalMeasure(CarrierPtr carrier, std::vector<Term> terms);

  const CarrierPtr& carrier() const { return carrier_; }
  const std::vector<Term>& terms() const { return terms_; }
  Rat weight(std::size_t id) const;
  Rat mass() const;

 private:
  CarrierPtr carrier_;
  std::vector<Term> terms_;
};

PolytopalMeasure delta(std::size_t cell, const CarrierPtr& carrier);
/// Throws UnknownCell if sigma is not a carrier cell.
PolytopalMeasure delta(const Polytope& sigma, const CarrierPtr& carrier);

/// Throws CarrierMismatch unless every measure lives on the same carrier, BadParams on negative coefficients.
PolytopalMeasure combine(const std::vector<std::pair<Rat, PolytopalMeasure>>& parts);

/// Carrier of all products of cells; cell i of the first and j of the second give id i * |C2| + j.
CarrierPtr product_carrier(const Carrier& a, const Carrier& b);
PolytopalMeasure product_measure(const PolytopalMeasure& a, const PolytopalMeasure& b);
/// N-fold product of mu restricted to its positive-weight cells.
PolytopalMeasure power_measure(const PolytopalMeasure& mu, std::size_t N);

/// Re-expresses the measure (mass w * vol(piece)) of an injective affine image on the target.
/// Throws NonInjectivePiece, TargetNotSubdivisional.
void transport_piece(const Polytope& piece, const Rat& weight, const AffineMap& g, const Carrier& target,
                     std::map<std::size_t, Rat>& out);

/// Throws NonInjectivePiece if a positive-weight cell collapses, DomainNotCovered
/// if the map's domains miss part of a cell, TargetNotSubdivisional if an image
/// is not a union of target cells.
PolytopalMeasure pushforward_exact(const PolytopalMeasure& mu, const PiecewiseAffineMap& f, const CarrierPtr& target);

struct SupportPiece {
  std::size_t source_cell;
  Polytope image;
  std::size_t dim;
};
using SupportImage = std::vector<SupportPiece>;

SupportImage pushforward_support(const PolytopalMeasure& mu, const PiecewiseAffineMap& f);

struct StrictSupport {
  std::size_t cell;  // id in the decomposition
  Rat epsilon;
  friend bool operator==(const StrictSupport&, const StrictSupport&) = default;
};

/// Coefficients of mu on the decomposition sigma; throws NotExpressible if
/// some positive-weight cell is not a union of cells of sigma.
std::map<std::size_t, Rat> reexpress(const PolytopalMeasure& mu, const Carrier& sigma);

/// Cells with positive coefficient after re-expression, sorted by id, with the coefficient as witness.
std::vector<StrictSupport> strict_supports(const PolytopalMeasure& mu, const Carrier& sigma);

/// Refines sigma0 along the facet and equation hyperplanes of every image
/// (periodically when sigma0 has a lattice).
CarrierPtr make_subdivisional(const Carrier& sigma0, const std::vector<Polytope>& images);

struct SkeletonProvenance {
  SkeletonModel skeleton;
  FaffTable fmaps;
  NondegData nondeg;
};

struct TropSubvariety {
  CarrierPtr carrier;
  std::vector<std::size_t> support;  // carrier ids of the maximal support cells
  std::optional<PolytopalMeasure> measure;
  int dim = 0;
  bool stabilizer_trivial = false;
  std::optional<SkeletonProvenance> provenance;

  bool is_point() const;
};

/// Weights default to 1 on every non-degenerate simplex when the table is empty.
/// Throws DegenerateWeighted, MissingWeight, EmptySupport, NotSubdivisional,
/// BadParams (non-positive weight) and the errors of nondegenerate_set.
TropSubvariety assemble_canonical(const SkeletonModel& sk, const NondegData& nd, const std::map<std::string, Rat>& weights,
                                  const FaffTable& fmaps, const CarrierPtr& sigma);

}  // namespace tropkit
