#pragma once

#include <optional>
#include <vector>

#include "tropkit/periodic_complex.hpp"

namespace tropkit {

/// u' |-> M u' + c with M integral and c in Gamma^n.
class ExponentMap {
 public:
  /// Throws BadParams if M is not integral, NotGammaRational if some c_i is
  /// outside gamma, DimensionMismatch if c does not match the rows of M.
  ExponentMap(QMatrix m, QVector c, const ValueGroup& gamma = ValueGroup::rationals());

  const QMatrix& matrix() const { return m_; }
  const QVector& constants() const { return c_; }
  std::size_t source_dim() const { return m_.cols(); }
  std::size_t target_dim() const { return m_.rows(); }
  AffineMap affine() const { return AffineMap(m_, c_); }

 private:
  QMatrix m_;
  QVector c_;
};

QVector eval_faff(const ExponentMap& e, const QVector& u);
std::size_t rank_faff(const ExponentMap& e);
Polytope image_faff(const ExponentMap& e, const Polytope& p);

/// Linear map R^{n1} -> R^{n2} together with source and target lattices.
struct TropicalHom {
  QMatrix linear;
  Lattice source;
  Lattice target;
};

/// The map it induces on R^{n1}/Lambda1 -> R^{n2}/Lambda2.
class QuotientMap {
 public:
  const TropicalHom& hom() const { return hom_; }
  QuotientPoint operator()(const QuotientPoint& x) const;
  /// Lattice coordinates of L: B2^{-1} L B1 (integral).
  QMatrix lattice_matrix() const;
  /// Number of preimages of each point when L is invertible, otherwise nullopt.
  std::optional<Int> fiber_size() const;
  bool is_finite_surjective() const { return fiber_size().has_value(); }

 private:
  explicit QuotientMap(TropicalHom h) : hom_(std::move(h)) {}
  friend QuotientMap induced_quotient_map(const TropicalHom& h);
  TropicalHom hom_;
};

/// Throws LatticeNotPreserved unless L Lambda1 is contained in Lambda2.
QuotientMap induced_quotient_map(const TropicalHom& h);

TropicalHom product_hom(const TropicalHom& a, const TropicalHom& b);

/// Composition second after first.
TropicalHom compose(const TropicalHom& first, const TropicalHom& second);

/// (x_1, ..., x_N) |-> (x_2 - x_1, ..., x_N - x_{N-1}) on (R^n/Lambda)^N. Throws BadParams if N < 2.
TropicalHom alpha_map(std::size_t n, const Lattice& lat, std::size_t N);

/// Lattice Lambda^N.
Lattice power_lattice(const Lattice& lat, std::size_t N);

/// True iff the linear part is injective on span(P - P).
bool is_injective_on(const AffineMap& m, const Polytope& p);

/// Dimension of the image of P under m.
std::size_t image_dim(const AffineMap& m, const Polytope& p);

/// A map given by affine pieces on polytopal domains; a piece without a
/// domain applies everywhere.
class PiecewiseAffineMap {
 public:
  struct Piece {
    std::optional<Polytope> domain;
    AffineMap map;
  };

  /// Throws InconsistentOnFaces if two pieces disagree where their domains
  /// meet, DimensionMismatch on mismatched sizes.
  explicit PiecewiseAffineMap(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t source_dim() const { return pieces_.front().map.source_dim(); }
  std::size_t target_dim() const { return pieces_.front().map.target_dim(); }
  /// Throws NotCovered if no piece's domain contains x.
  QVector operator()(const QVector& x) const;
  /// Affine piece valid on all of p, if some domain contains p.
  std::optional<AffineMap> restrict_to(const Polytope& p) const;

 private:
  std::vector<Piece> pieces_;
};

}  // namespace tropkit
