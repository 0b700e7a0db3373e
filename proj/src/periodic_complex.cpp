#include "tropkit/periodic_complex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropkit {

// ------------------------------------------------------------------- Lattice

Lattice::Lattice(QMatrix basis) : basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols()) throw Error(Errc::BadParams, "lattice basis must be square");
  auto inv = inverse(basis_);
  if (!inv) throw Error(Errc::BadParams, "lattice basis is singular");
  inverse_ = std::move(*inv);
}

Lattice Lattice::from_vectors(const std::vector<QVector>& vectors) {
  return Lattice(QMatrix::from_rows(vectors, vectors.empty() ? 0 : vectors.front().size()).transpose());
}

Lattice Lattice::integer(std::size_t n) { return Lattice(QMatrix::identity(n)); }

Lattice Lattice::scaled(std::size_t n, const Rat& factor) {
  QMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) b(i, i) = factor;
  return Lattice(std::move(b));
}

QVector Lattice::coordinates(const QVector& x) const {
  if (x.size() != rank()) throw Error(Errc::DimensionMismatch, "point and lattice dimensions differ");
  return inverse_ * x;
}

bool Lattice::contains(const QVector& x) const {
  for (const auto& z : coordinates(x)) {
    if (!is_integer(z)) return false;
  }
  return true;
}

QVector Lattice::reduce(const QVector& x) const {
  QVector z = coordinates(x);
  for (auto& c : z) c -= Rat(floor_int(c));
  return basis_ * z;
}

Rat Lattice::covolume() const { return abs(determinant(basis_)); }

bool Lattice::same_lattice(const Lattice& other) const {
  if (rank() != other.rank()) return false;
  QMatrix t = inverse_ * other.basis_;
  return t.is_integral() && abs(determinant(t)) == 1;
}

Lattice Lattice::direct_sum(const Lattice& other) const { return Lattice(block_diagonal(basis_, other.basis_)); }

std::vector<QVector> Lattice::points_in_box(const std::vector<QVector>& pts) const {
  const std::size_t n = rank();
  if (pts.empty()) return {};
  std::vector<Int> lo(n), hi(n);
  bool first = true;
  std::vector<Rat> zmin(n), zmax(n);
  for (const auto& p : pts) {
    QVector z = coordinates(p);
    for (std::size_t i = 0; i < n; ++i) {
      if (first || z[i] < zmin[i]) zmin[i] = z[i];
      if (first || z[i] > zmax[i]) zmax[i] = z[i];
    }
    first = false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = ceil_int(zmin[i]);
    hi[i] = floor_int(zmax[i]);
    if (lo[i] > hi[i]) return {};
  }
  std::vector<QVector> out;
  std::vector<Int> cur = lo;
  while (true) {
    QVector z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = Rat(cur[i]);
    out.push_back(basis_ * z);
    std::size_t i = 0;
    while (i < n) {
      if (cur[i] < hi[i]) {
        cur[i] += 1;
        break;
      }
      cur[i] = lo[i];
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

std::vector<QVector> translations_meeting(const Polytope& a, const Polytope& b, const Lattice& lat) {
  std::vector<QVector> diffs;
  for (const auto& v : a.vertices())
    for (const auto& w : b.vertices()) diffs.push_back(v - w);
  return lat.points_in_box(diffs);
}

std::optional<QVector> containing_translation(const Polytope& inner, const Polytope& outer, const Lattice& lat) {
  if (inner.dim() > outer.dim()) return std::nullopt;
  const QVector& v0 = inner.vertices().front();
  std::vector<QVector> diffs;
  for (const auto& w : outer.vertices()) diffs.push_back(v0 - w);
  for (const auto& lambda : lat.points_in_box(diffs)) {
    if (is_subset(translate(inner, zeros(lambda.size()) - lambda), outer)) return lambda;
  }
  return std::nullopt;
}

Polytope canonical_cell(const Polytope& p, const Lattice& lat) {
  const QVector& v0 = p.vertices().front();
  return translate(p, lat.reduce(v0) - v0);
}

// ----------------------------------------------------------- PeriodicComplex

PeriodicComplex PeriodicComplex::unchecked(Lattice lat, ValueGroup gamma, std::vector<Polytope> cells) {
  for (const auto& c : cells) {
    if (c.ambient_dim() != lat.rank()) throw Error(Errc::DimensionMismatch, "cell and lattice dimensions differ");
  }
  return PeriodicComplex(std::move(lat), std::move(gamma), std::move(cells));
}

std::size_t QuotientComplex::count(std::size_t dim) const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [dim](const Polytope& p) { return p.dim() == dim; }));
}

namespace {

PeriodicViolation violation(Errc kind, std::string msg, std::vector<std::size_t> cells) {
  return {kind, std::move(msg), std::move(cells)};
}

std::string describe(const Polytope& p) { return "conv" + vertex_key(p); }

// Orbit classes of `cells`: key -> index of first member.
std::map<std::string, std::size_t> orbit_classes(const std::vector<Polytope>& cells, const Lattice& lat) {
  std::map<std::string, std::size_t> classes;
  for (std::size_t i = 0; i < cells.size(); ++i) classes.emplace(vertex_key(canonical_cell(cells[i], lat)), i);
  return classes;
}

}  // namespace

PeriodicValidation validate_periodic(std::vector<Polytope> cells, const Lattice& lat, const ValueGroup& gamma) {
  const std::size_t n = lat.rank();
  for (const auto& c : cells) {
    if (c.ambient_dim() != n) throw Error(Errc::DimensionMismatch, "cell and lattice dimensions differ");
  }
  PeriodicValidation out;

  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!is_gamma_rational(cells[i], gamma)) {
      out.violation = violation(Errc::NotGammaRational, "cell " + std::to_string(i) + " " + describe(cells[i]) +
                                                            " has a facet constant outside the value group",
                                {i});
      return out;
    }
  }

  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (const auto& lambda : translations_meeting(cells[i], cells[i], lat)) {
      if (is_zero(lambda)) continue;
      if (intersect(cells[i], translate(cells[i], lambda))) {
        out.violation = violation(Errc::LatticeOverlap,
                                  "cell " + std::to_string(i) + " " + describe(cells[i]) +
                                      " meets its translate by lattice vector " + to_string(lambda),
                                  {i});
        return out;
      }
    }
  }

  auto classes = orbit_classes(cells, lat);
  std::vector<std::size_t> reps;
  for (const auto& [key, idx] : classes) reps.push_back(idx);
  std::sort(reps.begin(), reps.end());

  for (auto i : reps) {
    for (const auto& f : all_faces(cells[i])) {
      if (!classes.count(vertex_key(canonical_cell(f, lat)))) {
        out.violation = violation(Errc::NotFaceClosed,
                                  "face " + describe(f) + " of cell " + std::to_string(i) + " is not a cell", {i});
        return out;
      }
    }
  }

  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a; b < reps.size(); ++b) {
      const auto& p = cells[reps[a]];
      const auto& q = cells[reps[b]];
      for (const auto& lambda : translations_meeting(p, q, lat)) {
        if (a == b && is_zero(lambda)) continue;
        Polytope shifted = translate(q, lambda);
        auto x = intersect(p, shifted);
        if (!x) continue;
        if (!is_face_of(*x, p) || !is_face_of(*x, shifted)) {
          out.violation = violation(Errc::BadPairwiseIntersection,
                                    "cells " + std::to_string(reps[a]) + " and " + std::to_string(reps[b]) +
                                        " (shifted by " + to_string(lambda) + ") meet in " + describe(*x) +
                                        ", which is not a common face",
                                    {reps[a], reps[b]});
          return out;
        }
      }
    }
  }

  Rat covered = 0;
  for (auto i : reps) {
    if (cells[i].dim() == n) covered += normalized_volume(cells[i]);
  }
  if (covered != lat.covolume()) {
    out.violation = violation(Errc::CoverageGap,
                              "top cells cover volume " + to_string(covered) + " of a fundamental domain of volume " +
                                  to_string(lat.covolume()),
                              {});
    return out;
  }

  out.complex = PeriodicComplex::unchecked(lat, gamma, std::move(cells));
  return out;
}

PeriodicComplex make_periodic(std::vector<Polytope> cells, const Lattice& lat, const ValueGroup& gamma) {
  auto v = validate_periodic(std::move(cells), lat, gamma);
  if (!v.ok()) throw Error(v.violation->kind, v.violation->message);
  return std::move(*v.complex);
}

QuotientComplex quotient(const PeriodicComplex& c) {
  std::map<std::string, std::pair<Polytope, std::size_t>> classes;
  for (std::size_t i = 0; i < c.cells().size(); ++i) {
    Polytope canon = canonical_cell(c.cells()[i], c.lattice());
    std::string key = vertex_key(canon);
    classes.emplace(std::move(key), std::make_pair(std::move(canon), i));
  }
  std::vector<std::pair<Polytope, std::size_t>> sorted;
  for (auto& [key, entry] : classes) sorted.push_back(std::move(entry));
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return cell_less(x.first, y.first); });
  std::vector<Polytope> cells;
  std::vector<std::size_t> reps;
  for (auto& [p, i] : sorted) {
    cells.push_back(std::move(p));
    reps.push_back(i);
  }
  return QuotientComplex(c, std::move(cells), std::move(reps));
}

// ----------------------------------------------------------------- refinement

CutFamily periodic_family(const Hyperplane& h, const Lattice& lat) {
  QVector normal = to_rational(h.normal);
  Rat step = 0;
  for (std::size_t j = 0; j < lat.rank(); ++j) step = rat_gcd(step, dot(normal, lat.basis_vector(j)));
  return {std::move(normal), h.constant, step};
}

std::vector<Polytope> split_by_cuts(const Polytope& p, const std::vector<CutFamily>& cuts) {
  std::vector<Polytope> pieces{p};
  for (const auto& cut : cuts) {
    if (cut.normal.size() != p.ambient_dim()) throw Error(Errc::DimensionMismatch, "cut normal length");
    std::vector<Polytope> next;
    for (const auto& piece : pieces) {
      Rat lo = dot(cut.normal, piece.vertices().front()), hi = lo;
      for (const auto& v : piece.vertices()) {
        Rat t = dot(cut.normal, v);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
      std::vector<Rat> values;
      if (cut.step == 0) {
        if (lo < cut.offset && cut.offset < hi) values.push_back(cut.offset);
      } else {
        Int k = floor_int((lo - cut.offset) / cut.step) + 1;
        for (Rat t = cut.offset + Rat(k) * cut.step; t < hi; t += cut.step) {
          if (t > lo) values.push_back(t);
        }
      }
      if (values.empty()) {
        next.push_back(piece);
        continue;
      }
      std::vector<Rat> bounds{lo};
      bounds.insert(bounds.end(), values.begin(), values.end());
      bounds.push_back(hi);
      std::vector<std::pair<QVector, Rat>> base_ineq, base_eq;
      for (const auto& h : piece.halfspaces()) base_ineq.emplace_back(to_rational(h.normal), h.constant);
      for (const auto& e : piece.equations()) base_eq.emplace_back(to_rational(e.normal), e.constant);
      for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
        auto ineq = base_ineq;
        ineq.emplace_back(cut.normal, bounds[s]);
        ineq.emplace_back(Rat(-1) * cut.normal, -bounds[s + 1]);
        Polytope slab = polytope_from_system(p.ambient_dim(), ineq, base_eq);
        if (slab.dim() == piece.dim()) next.push_back(std::move(slab));
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

PeriodicComplex refine(const PeriodicComplex& c, const std::vector<Hyperplane>& cuts) {
  std::vector<CutFamily> families;
  for (const auto& h : cuts) {
    if (h.normal.size() != c.ambient_dim()) throw Error(Errc::DimensionMismatch, "cut normal length");
    if (is_zero(to_rational(h.normal))) throw Error(Errc::BadParams, "cut with zero normal");
    auto fam = periodic_family(h, c.lattice());
    if (!c.gamma().contains(h.constant) || !c.gamma().contains(fam.step)) {
      throw Error(Errc::NotLatticeStable,
                  "translates of cut " + to_string(to_rational(h.normal)) + " = " + to_string(h.constant) +
                      " leave the value group");
    }
    families.push_back(std::move(fam));
  }
  if (families.empty()) return c;

  std::map<std::string, Polytope> cells;
  for (const auto& cell : c.cells()) {
    for (const auto& piece : split_by_cuts(cell, families)) {
      for (const auto& f : all_faces(piece)) {
        Polytope canon = canonical_cell(f, c.lattice());
        cells.emplace(vertex_key(canon), std::move(canon));
      }
    }
  }
  std::vector<Polytope> list;
  for (auto& [key, p] : cells) list.push_back(std::move(p));
  std::sort(list.begin(), list.end(), cell_less);
  return make_periodic(std::move(list), c.lattice(), c.gamma());
}

std::size_t locate(const QuotientComplex& qc, const QuotientPoint& x) {
  const QVector& rep = x.representative();
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < qc.cells().size(); ++i) {
    const auto& cell = qc.cells()[i];
    std::vector<QVector> diffs;
    for (const auto& v : cell.vertices()) diffs.push_back(rep - v);
    for (const auto& lambda : qc.lattice().points_in_box(diffs)) {
      if (relint_contains(cell, rep - lambda)) {
        hits.push_back(i);
        break;
      }
    }
  }
  if (hits.empty()) throw Error(Errc::NotCovered, "no cell contains " + to_string(rep));
  if (hits.size() > 1) throw Error(Errc::BadPairwiseIntersection, "several open cells contain " + to_string(rep));
  return hits.front();
}

QuotientComplex common_refinement(const QuotientComplex& a, const QuotientComplex& b) {
  if (!a.lattice().same_lattice(b.lattice())) throw Error(Errc::LatticeMismatch, "complexes use different lattices");
  const Lattice& lat = a.lattice();
  std::map<std::string, Polytope> cells;
  for (const auto& p : a.cells()) {
    for (const auto& q : b.cells()) {
      for (const auto& lambda : translations_meeting(p, q, lat)) {
        auto x = intersect(p, translate(q, lambda));
        if (!x) continue;
        Polytope canon = canonical_cell(*x, lat);
        cells.emplace(vertex_key(canon), std::move(canon));
      }
    }
  }
  std::vector<Polytope> list;
  for (auto& [key, p] : cells) list.push_back(std::move(p));
  std::sort(list.begin(), list.end(), cell_less);
  return quotient(PeriodicComplex::unchecked(lat, a.base().gamma(), std::move(list)));
}

}  // namespace tropkit
