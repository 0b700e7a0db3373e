#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tropkit/linalg.hpp"
#include "tropkit/rational.hpp"

namespace tropkit {

/// The value group: either all of Q, or the discrete group Z * generator.
class ValueGroup {
 public:
  enum class Kind { FullRationals, Discrete };

  static ValueGroup rationals() { return ValueGroup(Kind::FullRationals, Rat(0)); }
  static ValueGroup discrete(const Rat& generator);

  Kind kind() const { return kind_; }
  const Rat& generator() const { return generator_; }
  bool contains(const Rat& x) const;

  friend bool operator==(const ValueGroup&, const ValueGroup&) = default;

 private:
  ValueGroup(Kind k, Rat g) : kind_(k), generator_(std::move(g)) {}
  Kind kind_;
  Rat generator_;
};

/// {u : normal . u >= constant}. Canonical form has a primitive integer normal.
struct Halfspace {
  IntVector normal;
  Rat constant;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// {u : normal . u == constant}.
struct Hyperplane {
  IntVector normal;
  Rat constant;
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

struct AffineMap {
  QMatrix linear;    // m x n
  QVector translate; // length m

  AffineMap(QMatrix l, QVector t);
  static AffineMap identity(std::size_t n);
  static AffineMap linear_only(QMatrix l);

  std::size_t source_dim() const { return linear.cols(); }
  std::size_t target_dim() const { return linear.rows(); }
  QVector operator()(const QVector& x) const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// first after second.
AffineMap compose(const AffineMap& first, const AffineMap& second);

/// Bounded convex polytope with exact rational coordinates.
///
/// Vertices are minimal and sorted lexicographically. The H-representation is
/// canonical: the affine span is cut out by the primitive integer rows of the
/// reduced null space of the direction space, and facets are written in the
/// pivot-coordinate chart of that span with primitive integer normals. Two
/// polytopes are equal iff their vertex sets are.
class Polytope {
 public:
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return dim_; }
  const std::vector<QVector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<Hyperplane>& equations() const { return equations_; }
  /// Coordinates that chart the affine span injectively.
  const std::vector<std::size_t>& chart() const { return chart_; }
  /// Basis of span(P - P) in reduced echelon form.
  const std::vector<QVector>& directions() const { return directions_; }

  /// Lattice-normalized dim(P)-volume; cached after the first call.
  const Rat& volume() const;

  bool contains(const QVector& x) const;

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_;
  }

  friend Polytope polytope_from_vertices(std::vector<QVector> points);
  friend Polytope product(const Polytope& a, const Polytope& b);
  friend Polytope translate(const Polytope& p, const QVector& shift);

 private:
  struct VolumeCache;

  Polytope() = default;

  std::size_t ambient_dim_ = 0;
  std::size_t dim_ = 0;
  std::vector<QVector> vertices_;
  std::vector<Halfspace> halfspaces_;
  std::vector<Hyperplane> equations_;
  std::vector<std::size_t> chart_;
  std::vector<QVector> directions_;
  std::shared_ptr<VolumeCache> cache_;
};

/// Convex hull; throws DimensionMismatch on empty or ragged input.
Polytope polytope_from_vertices(std::vector<QVector> points);

/// Throws Unbounded or Empty. Halfspace normals may be any nonzero integer vectors.
Polytope polytope_from_halfspaces(std::size_t ambient_dim, const std::vector<Halfspace>& hs,
                                  const std::vector<Hyperplane>& eqs = {});

/// Rational-coefficient variant used internally for pulled-back systems; zero
/// rows are allowed and read as 0 >= c (or 0 == c).
Polytope polytope_from_system(std::size_t ambient_dim,
                              const std::vector<std::pair<QVector, Rat>>& inequalities,
                              const std::vector<std::pair<QVector, Rat>>& equalities);

/// All closed k-faces, sorted. Throws BadDimension unless k <= dim(P).
std::vector<Polytope> faces(const Polytope& p, std::size_t k);

/// Every nonempty closed face of every dimension (P included), sorted by (dim, vertices).
std::vector<Polytope> all_faces(const Polytope& p);

/// Vertex lists of every nonempty face, P first; cheaper than all_faces when many are duplicates.
std::vector<std::vector<QVector>> face_vertex_lists(const Polytope& p);

bool relint_contains(const Polytope& p, const QVector& x);
QVector rational_relint_point(const Polytope& p);
std::optional<Polytope> intersect(const Polytope& p, const Polytope& q);
Polytope apply_affine(const AffineMap& m, const Polytope& p);
Rat normalized_volume(const Polytope& p);
bool is_gamma_rational(const Polytope& p, const ValueGroup& g);

Polytope product(const Polytope& a, const Polytope& b);
Polytope translate(const Polytope& p, const QVector& shift);
bool is_subset(const Polytope& inner, const Polytope& outer);
/// True iff f is a face of p (including p itself).
bool is_face_of(const Polytope& f, const Polytope& p);

/// Total order used for deterministic sorting: (dim, vertices).
bool cell_less(const Polytope& a, const Polytope& b);

/// Stable text key of the vertex list, e.g. "[[0,1/2],[1,0]]".
std::string vertex_key(const Polytope& p);
std::string to_string(const QVector& v);

namespace detail {
/// Extreme rays of the pointed cone {x : a x >= 0} in Q^d, primitive integral
/// and sorted. Requires rank(a) == d.
std::vector<QVector> extreme_rays(const std::vector<QVector>& a, std::size_t d);
}  // namespace detail

}  // namespace tropkit
