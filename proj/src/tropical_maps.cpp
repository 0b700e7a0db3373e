#include "tropkit/tropical_maps.hpp"

namespace tropkit {

ExponentMap::ExponentMap(QMatrix m, QVector c, const ValueGroup& gamma) : m_(std::move(m)), c_(std::move(c)) {
  if (c_.size() != m_.rows()) throw Error(Errc::DimensionMismatch, "constants do not match the rows of M");
  if (!m_.is_integral()) throw Error(Errc::BadParams, "exponent matrix must be integral");
  for (const auto& x : c_) {
    if (!gamma.contains(x)) throw Error(Errc::NotGammaRational, "constant " + to_string(x) + " is not in the value group");
  }
}

QVector eval_faff(const ExponentMap& e, const QVector& u) {
  if (u.size() != e.source_dim()) throw Error(Errc::DimensionMismatch, "point does not match the exponent map");
  return e.matrix() * u + e.constants();
}

std::size_t rank_faff(const ExponentMap& e) { return rank(e.matrix()); }

Polytope image_faff(const ExponentMap& e, const Polytope& p) {
  if (p.ambient_dim() != e.source_dim()) throw Error(Errc::DimensionMismatch, "polytope does not match the exponent map");
  return apply_affine(e.affine(), p);
}

QuotientPoint QuotientMap::operator()(const QuotientPoint& x) const {
  return QuotientPoint(hom_.target, hom_.linear * x.representative());
}

QMatrix QuotientMap::lattice_matrix() const {
  return *inverse(hom_.target.basis()) * hom_.linear * hom_.source.basis();
}

std::optional<Int> QuotientMap::fiber_size() const {
  QMatrix t = lattice_matrix();
  if (t.rows() != t.cols()) return std::nullopt;
  Rat d = abs(determinant(t));
  if (d == 0) return std::nullopt;
  return num(d);
}

QuotientMap induced_quotient_map(const TropicalHom& h) {
  if (h.linear.cols() != h.source.rank() || h.linear.rows() != h.target.rank())
    throw Error(Errc::DimensionMismatch, "linear part does not match the lattices");
  for (std::size_t j = 0; j < h.source.rank(); ++j) {
    QVector image = h.linear * h.source.basis_vector(j);
    if (!h.target.contains(image)) {
      throw Error(Errc::LatticeNotPreserved,
                  "basis vector " + std::to_string(j) + " maps to " + to_string(image) + ", outside the target lattice");
    }
  }
  return QuotientMap(h);
}

TropicalHom product_hom(const TropicalHom& a, const TropicalHom& b) {
  return {block_diagonal(a.linear, b.linear), a.source.direct_sum(b.source), a.target.direct_sum(b.target)};
}

TropicalHom compose(const TropicalHom& first, const TropicalHom& second) {
  if (!first.target.same_lattice(second.source))
    throw Error(Errc::LatticeMismatch, "intermediate lattices differ");
  return {second.linear * first.linear, first.source, second.target};
}

Lattice power_lattice(const Lattice& lat, std::size_t N) {
  Lattice out = lat;
  for (std::size_t i = 1; i < N; ++i) out = out.direct_sum(lat);
  return out;
}

TropicalHom alpha_map(std::size_t n, const Lattice& lat, std::size_t N) {
  if (N < 2) throw Error(Errc::BadParams, "alpha map needs N >= 2");
  if (lat.rank() != n) throw Error(Errc::DimensionMismatch, "lattice rank differs from n");
  QMatrix l((N - 1) * n, N * n);
  for (std::size_t k = 0; k + 1 < N; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      l(k * n + i, k * n + i) = -1;
      l(k * n + i, (k + 1) * n + i) = 1;
    }
  return {std::move(l), power_lattice(lat, N), power_lattice(lat, N - 1)};
}

std::size_t image_dim(const AffineMap& m, const Polytope& p) {
  if (p.ambient_dim() != m.source_dim()) throw Error(Errc::DimensionMismatch, "polytope does not match the map");
  std::vector<QVector> images;
  for (const auto& d : p.directions()) images.push_back(m.linear * d);
  return images.empty() ? 0 : rank(images, m.target_dim());
}

bool is_injective_on(const AffineMap& m, const Polytope& p) { return image_dim(m, p) == p.dim(); }

PiecewiseAffineMap::PiecewiseAffineMap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(Errc::BadParams, "piecewise map without pieces");
  for (const auto& pc : pieces_) {
    if (pc.map.source_dim() != source_dim() || pc.map.target_dim() != target_dim() ||
        (pc.domain && pc.domain->ambient_dim() != source_dim()))
      throw Error(Errc::DimensionMismatch, "pieces of different shapes");
  }
  for (std::size_t a = 0; a < pieces_.size(); ++a)
    for (std::size_t b = a + 1; b < pieces_.size(); ++b) {
      const auto& pa = pieces_[a];
      const auto& pb = pieces_[b];
      std::vector<QVector> probe;
      if (pa.domain && pb.domain) {
        auto x = intersect(*pa.domain, *pb.domain);
        if (x) probe = x->vertices();
      } else if (pa.domain || pb.domain) {
        probe = (pa.domain ? *pa.domain : *pb.domain).vertices();
      } else if (!(pa.map == pb.map)) {
        throw Error(Errc::InconsistentOnFaces, "two global pieces differ");
      }
      for (const auto& v : probe) {
        if (pa.map(v) != pb.map(v)) {
          throw Error(Errc::InconsistentOnFaces, "pieces " + std::to_string(a) + " and " + std::to_string(b) +
                                                     " disagree at " + to_string(v));
        }
      }
    }
}

QVector PiecewiseAffineMap::operator()(const QVector& x) const {
  for (const auto& pc : pieces_) {
    if (!pc.domain || pc.domain->contains(x)) return pc.map(x);
  }
  throw Error(Errc::NotCovered, "no piece contains " + to_string(x));
}

std::optional<AffineMap> PiecewiseAffineMap::restrict_to(const Polytope& p) const {
  for (const auto& pc : pieces_) {
    if (!pc.domain || is_subset(p, *pc.domain)) return pc.map;
  }
  return std::nullopt;
}

}  // namespace tropkit
