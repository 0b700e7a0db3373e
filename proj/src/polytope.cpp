#include "tropkit/polytope.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

#include "tropkit/error.hpp"

namespace tropkit {

// ---------------------------------------------------------------- ValueGroup

ValueGroup ValueGroup::discrete(const Rat& generator) {
  if (generator <= 0) throw Error(Errc::BadParams, "value group generator must be positive");
  return ValueGroup(Kind::Discrete, generator);
}

bool ValueGroup::contains(const Rat& x) const {
  if (kind_ == Kind::FullRationals) return true;
  return is_integer(x / generator_);
}

// ----------------------------------------------------------------- AffineMap

AffineMap::AffineMap(QMatrix l, QVector t) : linear(std::move(l)), translate(std::move(t)) {
  if (linear.rows() != translate.size()) throw Error(Errc::DimensionMismatch, "affine map translate length");
}

AffineMap AffineMap::identity(std::size_t n) { return AffineMap(QMatrix::identity(n), zeros(n)); }

AffineMap AffineMap::linear_only(QMatrix l) {
  auto rows = l.rows();
  return AffineMap(std::move(l), zeros(rows));
}

QVector AffineMap::operator()(const QVector& x) const { return linear * x + translate; }

AffineMap compose(const AffineMap& first, const AffineMap& second) {
  // x -> second(first(x))
  if (second.source_dim() != first.target_dim()) throw Error(Errc::DimensionMismatch, "composition");
  return AffineMap(second.linear * first.linear, second.linear * first.translate + second.translate);
}

// ---------------------------------------------------------- double description

namespace detail {

namespace {

using Bits = boost::dynamic_bitset<>;

QVector primitive(const QVector& v) { return to_rational(primitive_integer(v)); }

}  // namespace

std::vector<QVector> extreme_rays(const std::vector<QVector>& input, std::size_t d) {
  std::vector<QVector> a;
  for (const auto& row : input) {
    if (row.size() != d) throw Error(Errc::DimensionMismatch, "cone constraint length");
    if (!is_zero(row)) a.push_back(row);
  }
  const std::size_t m = a.size();

  // Seed with d independent rows; their cone is simplicial.
  std::vector<std::size_t> seed;
  std::vector<QVector> seed_rows;
  for (std::size_t i = 0; i < m && seed.size() < d; ++i) {
    seed_rows.push_back(a[i]);
    if (rank(seed_rows, d) == seed_rows.size()) {
      seed.push_back(i);
    } else {
      seed_rows.pop_back();
    }
  }
  if (seed.size() < d) throw std::logic_error("extreme_rays: cone is not pointed");

  auto kinv = inverse(QMatrix::from_rows(seed_rows, d));
  std::vector<QVector> rays;
  std::vector<Bits> tight;
  Bits processed(m);
  for (auto i : seed) processed.set(i);
  for (std::size_t j = 0; j < d; ++j) {
    rays.push_back(primitive(kinv->col(j)));
    Bits t(m);
    for (std::size_t s = 0; s < d; ++s) {
      if (s != j) t.set(seed[s]);
    }
    tight.push_back(std::move(t));
  }

  for (std::size_t idx = 0; idx < m; ++idx) {
    if (processed.test(idx)) continue;
    std::vector<Rat> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a[idx], rays[r]);
      if (val[r] > 0) {
        pos.push_back(r);
      } else if (val[r] < 0) {
        neg.push_back(r);
      } else {
        zer.push_back(r);
      }
    }
    processed.set(idx);
    if (neg.empty()) {
      for (auto r : zer) tight[r].set(idx);
      continue;
    }
    std::vector<QVector> next;
    std::vector<Bits> next_tight;
    for (auto r : pos) {
      next.push_back(rays[r]);
      next_tight.push_back(tight[r]);
    }
    for (auto r : zer) {
      next.push_back(rays[r]);
      Bits t = tight[r];
      t.set(idx);
      next_tight.push_back(std::move(t));
    }
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = tight[p] & tight[q];
        if (d >= 2 && common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(tight[r])) adjacent = false;
        }
        if (!adjacent) continue;
        next.push_back(primitive(val[p] * rays[q] - val[q] * rays[p]));
        common.set(idx);
        next_tight.push_back(std::move(common));
      }
    }
    rays = std::move(next);
    tight = std::move(next_tight);
  }
  std::sort(rays.begin(), rays.end());
  return rays;
}

}  // namespace detail

// ------------------------------------------------------------------ Polytope

struct Polytope::VolumeCache {
  std::once_flag once;
  Rat value;
};

namespace {

bool halfspace_less(const Halfspace& a, const Halfspace& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  return a.constant < b.constant;
}

bool hyperplane_less(const Hyperplane& a, const Hyperplane& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  return a.constant < b.constant;
}

std::size_t affine_rank(const std::vector<QVector>& pts, const std::vector<std::size_t>& idx) {
  if (idx.size() <= 1) return 0;
  std::vector<QVector> rows;
  for (std::size_t i = 1; i < idx.size(); ++i) rows.push_back(pts[idx[i]] - pts[idx[0]]);
  return rank(rows, pts[idx[0]].size());
}

IntVector sign_normalized(IntVector v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    break;
  }
  return v;
}

}  // namespace

Polytope polytope_from_vertices(std::vector<QVector> points) {
  if (points.empty()) throw Error(Errc::DimensionMismatch, "empty point list");
  const std::size_t n = points.front().size();
  for (const auto& p : points) {
    if (p.size() != n) throw Error(Errc::DimensionMismatch, "points of different dimensions");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Polytope out;
  out.ambient_dim_ = n;
  out.cache_ = std::make_shared<Polytope::VolumeCache>();
  const QVector& p0 = points.front();

  std::vector<QVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - p0);
  QMatrix dmat = diffs.empty() ? QMatrix(0, n) : QMatrix::from_rows(diffs, n);
  auto ech = rref(dmat);
  const std::size_t k = ech.pivots.size();
  out.dim_ = k;
  out.chart_ = ech.pivots;
  for (std::size_t i = 0; i < k; ++i) out.directions_.push_back(ech.reduced.row(i));

  for (const auto& e : nullspace(ech.reduced)) {
    IntVector normal = sign_normalized(primitive_integer(e));
    Rat c = dot(normal, p0);
    out.equations_.push_back({std::move(normal), std::move(c)});
  }
  std::sort(out.equations_.begin(), out.equations_.end(), hyperplane_less);

  if (k == 0) {
    out.vertices_ = {p0};
    return out;
  }

  // Facets of the projected full-dimensional polytope: extreme rays (a, b) of
  // the cone {a . y_i - b >= 0 for all i}, with a != 0.
  std::vector<QVector> proj(points.size(), QVector(k));
  std::vector<QVector> cone_rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) proj[i][j] = points[i][out.chart_[j]];
    QVector row = proj[i];
    row.push_back(Rat(-1));
    cone_rows.push_back(std::move(row));
  }
  std::vector<std::pair<IntVector, Rat>> chart_facets;
  for (const auto& ray : detail::extreme_rays(cone_rows, k + 1)) {
    QVector normal(ray.begin(), ray.begin() + static_cast<std::ptrdiff_t>(k));
    if (is_zero(normal)) continue;
    IntVector prim = primitive_integer(normal);
    std::size_t j = 0;
    while (normal[j] == 0) ++j;
    Rat scale = Rat(prim[j]) / normal[j];
    chart_facets.emplace_back(std::move(prim), scale * ray[k]);
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<QVector> tight_normals;
    for (const auto& [a, b] : chart_facets) {
      if (dot(a, proj[i]) == b) tight_normals.push_back(to_rational(a));
    }
    if (rank(tight_normals, k) == k) out.vertices_.push_back(points[i]);
  }

  for (auto& [a, b] : chart_facets) {
    IntVector normal(n, Int(0));
    for (std::size_t j = 0; j < k; ++j) normal[out.chart_[j]] = a[j];
    out.halfspaces_.push_back({std::move(normal), b});
  }
  std::sort(out.halfspaces_.begin(), out.halfspaces_.end(), halfspace_less);
  return out;
}

Polytope polytope_from_system(std::size_t n, const std::vector<std::pair<QVector, Rat>>& inequalities,
                              const std::vector<std::pair<QVector, Rat>>& equalities) {
  // Parametrize the affine solution set of the equalities: x = x0 + N y.
  QVector x0 = zeros(n);
  std::vector<QVector> ncols;
  if (equalities.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      QVector e = zeros(n);
      e[j] = 1;
      ncols.push_back(std::move(e));
    }
  } else {
    std::vector<QVector> rows;
    QVector rhs;
    for (const auto& [a, c] : equalities) {
      if (a.size() != n) throw Error(Errc::DimensionMismatch, "equation length");
      rows.push_back(a);
      rhs.push_back(c);
    }
    QMatrix e = QMatrix::from_rows(rows, n);
    auto sol = solve(e, rhs);
    if (!sol) throw Error(Errc::Empty, "inconsistent equations");
    x0 = *sol;
    ncols = nullspace(e);
  }
  const std::size_t p = ncols.size();
  auto lift = [&](const QVector& y) {
    QVector x = x0;
    for (std::size_t j = 0; j < p; ++j) {
      if (y[j] == 0) continue;
      for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * ncols[j][i];
    }
    return x;
  };

  std::vector<QVector> rows;
  QVector rhs;
  for (const auto& [a, c] : inequalities) {
    if (a.size() != n) throw Error(Errc::DimensionMismatch, "inequality length");
    QVector r(p);
    for (std::size_t j = 0; j < p; ++j) r[j] = dot(a, ncols[j]);
    Rat b = c - dot(a, x0);
    if (is_zero(r)) {
      if (b > 0) throw Error(Errc::Empty, "infeasible constant inequality");
      continue;
    }
    rows.push_back(std::move(r));
    rhs.push_back(std::move(b));
  }

  if (p == 0) return polytope_from_vertices({x0});
  if (rows.empty()) throw Error(Errc::Unbounded, "no inequality bounds the solution set");

  auto homogenized_rays = [&](const std::vector<QVector>& rs, std::size_t dim) {
    std::vector<QVector> cone;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      QVector row = rs[i];
      row.push_back(-rhs[i]);
      cone.push_back(std::move(row));
    }
    QVector t = zeros(dim + 1);
    t[dim] = 1;
    cone.push_back(std::move(t));
    return detail::extreme_rays(cone, dim + 1);
  };

  const std::size_t rk = rank(rows, p);
  if (rk < p) {
    // The system has a lineality space; the set is empty or unbounded. Decide
    // which on a complement of the lineality space.
    auto basis = rref(QMatrix::from_rows(rows, p)).reduced;
    std::vector<QVector> reduced_rows;
    for (const auto& r : rows) {
      QVector rr(rk);
      for (std::size_t j = 0; j < rk; ++j) rr[j] = dot(r, basis.row(j));
      reduced_rows.push_back(std::move(rr));
    }
    for (const auto& ray : homogenized_rays(reduced_rows, rk)) {
      if (ray[rk] > 0) throw Error(Errc::Unbounded, "solution set contains a line");
    }
    throw Error(Errc::Empty, "infeasible system");
  }

  std::vector<QVector> verts;
  bool recession = false;
  for (const auto& ray : homogenized_rays(rows, p)) {
    if (ray[p] > 0) {
      QVector y(ray.begin(), ray.begin() + static_cast<std::ptrdiff_t>(p));
      verts.push_back(lift(Rat(1) / ray[p] * y));
    } else {
      recession = true;
    }
  }
  if (verts.empty()) throw Error(Errc::Empty, "infeasible system");
  if (recession) throw Error(Errc::Unbounded, "solution set has a recession direction");
  return polytope_from_vertices(std::move(verts));
}

Polytope polytope_from_halfspaces(std::size_t n, const std::vector<Halfspace>& hs,
                                  const std::vector<Hyperplane>& eqs) {
  std::vector<std::pair<QVector, Rat>> ineq, eq;
  for (const auto& h : hs) {
    if (h.normal.size() != n) throw Error(Errc::DimensionMismatch, "halfspace normal length");
    QVector a = to_rational(h.normal);
    if (is_zero(a)) throw Error(Errc::BadParams, "halfspace with zero normal");
    ineq.emplace_back(std::move(a), h.constant);
  }
  for (const auto& h : eqs) {
    if (h.normal.size() != n) throw Error(Errc::DimensionMismatch, "equation normal length");
    QVector a = to_rational(h.normal);
    if (is_zero(a)) throw Error(Errc::BadParams, "equation with zero normal");
    eq.emplace_back(std::move(a), h.constant);
  }
  Polytope p = polytope_from_system(n, ineq, eq);
  for (const auto& v : p.vertices()) {
    for (const auto& h : hs) {
      if (dot(h.normal, v) < h.constant) throw std::logic_error("H/V cross-validation failed");
    }
    for (const auto& h : eqs) {
      if (dot(h.normal, v) != h.constant) throw std::logic_error("H/V cross-validation failed");
    }
  }
  return p;
}

bool Polytope::contains(const QVector& x) const {
  if (x.size() != ambient_dim_) throw Error(Errc::DimensionMismatch, "point dimension");
  for (const auto& e : equations_) {
    if (dot(e.normal, x) != e.constant) return false;
  }
  for (const auto& h : halfspaces_) {
    if (dot(h.normal, x) < h.constant) return false;
  }
  return true;
}

// -------------------------------------------------------------- face lattice

namespace {

struct FaceLattice {
  std::vector<boost::dynamic_bitset<>> sets;  // vertex-index sets
  std::vector<std::size_t> dims;
};

FaceLattice face_lattice(const Polytope& p) {
  const auto& vs = p.vertices();
  const std::size_t nv = vs.size();
  std::vector<boost::dynamic_bitset<>> facets;
  for (const auto& h : p.halfspaces()) {
    boost::dynamic_bitset<> s(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      if (dot(h.normal, vs[i]) == h.constant) s.set(i);
    }
    facets.push_back(std::move(s));
  }
  FaceLattice out;
  std::set<boost::dynamic_bitset<>> seen;
  std::deque<boost::dynamic_bitset<>> queue;
  boost::dynamic_bitset<> full(nv);
  full.set();
  seen.insert(full);
  queue.push_back(full);
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    out.sets.push_back(s);
    for (const auto& f : facets) {
      auto t = s & f;
      if (t.none() || t == s) continue;
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  for (const auto& s : out.sets) {
    std::vector<std::size_t> idx;
    for (auto i = s.find_first(); i != boost::dynamic_bitset<>::npos; i = s.find_next(i)) idx.push_back(i);
    out.dims.push_back(affine_rank(vs, idx));
  }
  return out;
}

std::vector<QVector> subset_points(const Polytope& p, const boost::dynamic_bitset<>& s) {
  std::vector<QVector> pts;
  for (auto i = s.find_first(); i != boost::dynamic_bitset<>::npos; i = s.find_next(i)) {
    pts.push_back(p.vertices()[i]);
  }
  return pts;
}

Rat factorial(std::size_t k) {
  Rat f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

Rat compute_volume(const Polytope& p) {
  const std::size_t k = p.dim();
  if (k == 0) return 1;
  const std::size_t n = p.ambient_dim();

  // Z-basis of the direction lattice Z^n intersected with span(P - P).
  std::vector<IntVector> eq_rows;
  for (const auto& e : p.equations()) eq_rows.push_back(e.normal);
  std::vector<IntVector> basis = eq_rows.empty() ? std::vector<IntVector>{} : integer_kernel(eq_rows, n);
  if (eq_rows.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      IntVector e(n, Int(0));
      e[j] = 1;
      basis.push_back(std::move(e));
    }
  }
  if (basis.size() != k) throw std::logic_error("direction lattice rank mismatch");
  const auto& chart = p.chart();
  QMatrix chart_basis(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) chart_basis(i, j) = Rat(basis[j][chart[i]]);
  Rat covolume = abs(determinant(chart_basis));

  // Pulling triangulation over the face lattice, volumes in chart coordinates.
  FaceLattice lat = face_lattice(p);
  const std::size_t nf = lat.sets.size();
  std::vector<std::vector<std::size_t>> facets_of(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t g = 0; g < nf; ++g) {
      if (lat.dims[g] + 1 == lat.dims[f] && lat.sets[g].is_subset_of(lat.sets[f])) facets_of[f].push_back(g);
    }
  }
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> memo;
  std::function<const std::vector<std::vector<std::size_t>>&(std::size_t)> triangulate =
      [&](std::size_t f) -> const std::vector<std::vector<std::size_t>>& {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<std::size_t>> simplices;
    std::size_t apex = lat.sets[f].find_first();
    if (lat.dims[f] == 0) {
      simplices.push_back({apex});
    } else {
      for (auto g : facets_of[f]) {
        if (lat.sets[g].test(apex)) continue;
        for (const auto& s : triangulate(g)) {
          auto t = s;
          t.push_back(apex);
          simplices.push_back(std::move(t));
        }
      }
    }
    return memo.emplace(f, std::move(simplices)).first->second;
  };

  auto proj = [&](const QVector& x) {
    QVector y(k);
    for (std::size_t j = 0; j < k; ++j) y[j] = x[chart[j]];
    return y;
  };
  Rat total = 0;
  // face 0 is the full polytope (first in BFS order)
  for (const auto& s : triangulate(0)) {
    QMatrix m(k, k);
    QVector base = proj(p.vertices()[s[0]]);
    for (std::size_t i = 1; i <= k; ++i) {
      QVector d = proj(p.vertices()[s[i]]) - base;
      for (std::size_t j = 0; j < k; ++j) m(i - 1, j) = d[j];
    }
    total += abs(determinant(m));
  }
  return total / factorial(k) / covolume;
}

}  // namespace

const Rat& Polytope::volume() const {
  std::call_once(cache_->once, [this] { cache_->value = compute_volume(*this); });
  return cache_->value;
}

std::vector<Polytope> all_faces(const Polytope& p) {
  FaceLattice lat = face_lattice(p);
  std::vector<Polytope> out;
  for (std::size_t f = 0; f < lat.sets.size(); ++f) {
    if (f == 0) {
      out.push_back(p);
    } else {
      out.push_back(polytope_from_vertices(subset_points(p, lat.sets[f])));
    }
  }
  std::sort(out.begin(), out.end(), cell_less);
  return out;
}

std::vector<std::vector<QVector>> face_vertex_lists(const Polytope& p) {
  FaceLattice lat = face_lattice(p);
  std::vector<std::vector<QVector>> out;
  for (const auto& s : lat.sets) out.push_back(subset_points(p, s));
  return out;
}

std::vector<Polytope> faces(const Polytope& p, std::size_t k) {
  if (k > p.dim()) throw Error(Errc::BadDimension, "face dimension exceeds polytope dimension");
  if (k == p.dim()) return {p};
  FaceLattice lat = face_lattice(p);
  std::vector<Polytope> out;
  for (std::size_t f = 0; f < lat.sets.size(); ++f) {
    if (lat.dims[f] == k) out.push_back(polytope_from_vertices(subset_points(p, lat.sets[f])));
  }
  std::sort(out.begin(), out.end(), cell_less);
  return out;
}

bool relint_contains(const Polytope& p, const QVector& x) {
  if (x.size() != p.ambient_dim()) throw Error(Errc::DimensionMismatch, "point dimension");
  for (const auto& e : p.equations()) {
    if (dot(e.normal, x) != e.constant) return false;
  }
  for (const auto& h : p.halfspaces()) {
    if (dot(h.normal, x) <= h.constant) return false;
  }
  return true;
}

QVector rational_relint_point(const Polytope& p) {
  QVector sum = zeros(p.ambient_dim());
  for (const auto& v : p.vertices()) sum = sum + v;
  return Rat(1, static_cast<long>(p.vertices().size())) * sum;
}

std::optional<Polytope> intersect(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw Error(Errc::DimensionMismatch, "intersection");
  std::vector<std::pair<QVector, Rat>> ineq, eq;
  for (const auto* poly : {&p, &q}) {
    for (const auto& h : poly->halfspaces()) ineq.emplace_back(to_rational(h.normal), h.constant);
    for (const auto& e : poly->equations()) eq.emplace_back(to_rational(e.normal), e.constant);
  }
  try {
    return polytope_from_system(p.ambient_dim(), ineq, eq);
  } catch (const Error& e) {
    if (e.code() == Errc::Empty) return std::nullopt;
    throw;
  }
}

Polytope apply_affine(const AffineMap& m, const Polytope& p) {
  if (m.source_dim() != p.ambient_dim()) throw Error(Errc::DimensionMismatch, "affine map source dimension");
  std::vector<QVector> image;
  image.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) image.push_back(m(v));
  return polytope_from_vertices(std::move(image));
}

Rat normalized_volume(const Polytope& p) { return p.volume(); }

bool is_gamma_rational(const Polytope& p, const ValueGroup& g) {
  for (const auto& e : p.equations()) {
    if (!g.contains(e.constant)) return false;
  }
  for (const auto& h : p.halfspaces()) {
    if (!g.contains(h.constant)) return false;
  }
  return true;
}

Polytope product(const Polytope& a, const Polytope& b) {
  const std::size_t n1 = a.ambient_dim_, n2 = b.ambient_dim_;
  Polytope out;
  out.ambient_dim_ = n1 + n2;
  out.dim_ = a.dim_ + b.dim_;
  for (const auto& va : a.vertices_)
    for (const auto& vb : b.vertices_) out.vertices_.push_back(concat(va, vb));
  out.chart_ = a.chart_;
  for (auto c : b.chart_) out.chart_.push_back(c + n1);
  for (const auto& d : a.directions_) out.directions_.push_back(concat(d, zeros(n2)));
  for (const auto& d : b.directions_) out.directions_.push_back(concat(zeros(n1), d));
  auto lift = [&](const IntVector& v, bool first) {
    IntVector out_v(n1 + n2, Int(0));
    for (std::size_t i = 0; i < v.size(); ++i) out_v[(first ? 0 : n1) + i] = v[i];
    return out_v;
  };
  for (const auto& e : a.equations_) out.equations_.push_back({lift(e.normal, true), e.constant});
  for (const auto& e : b.equations_) out.equations_.push_back({lift(e.normal, false), e.constant});
  for (const auto& h : a.halfspaces_) out.halfspaces_.push_back({lift(h.normal, true), h.constant});
  for (const auto& h : b.halfspaces_) out.halfspaces_.push_back({lift(h.normal, false), h.constant});
  std::sort(out.equations_.begin(), out.equations_.end(), hyperplane_less);
  std::sort(out.halfspaces_.begin(), out.halfspaces_.end(), halfspace_less);
  out.cache_ = std::make_shared<Polytope::VolumeCache>();
  Rat vol = a.volume() * b.volume();
  std::call_once(out.cache_->once, [&] { out.cache_->value = vol; });
  return out;
}

Polytope translate(const Polytope& p, const QVector& shift) {
  if (shift.size() != p.ambient_dim_) throw Error(Errc::DimensionMismatch, "translation length");
  Polytope out = p;
  for (auto& v : out.vertices_) v = v + shift;
  for (auto& e : out.equations_) e.constant += dot(e.normal, shift);
  for (auto& h : out.halfspaces_) h.constant += dot(h.normal, shift);
  return out;
}

bool is_subset(const Polytope& inner, const Polytope& outer) {
  if (inner.ambient_dim() != outer.ambient_dim()) throw Error(Errc::DimensionMismatch, "subset test");
  for (const auto& v : inner.vertices()) {
    if (!outer.contains(v)) return false;
  }
  return true;
}

bool is_face_of(const Polytope& f, const Polytope& p) {
  if (!is_subset(f, p)) return false;
  QVector x = rational_relint_point(f);
  std::vector<const Halfspace*> tight;
  for (const auto& h : p.halfspaces()) {
    if (dot(h.normal, x) == h.constant) tight.push_back(&h);
  }
  std::vector<QVector> face_vertices;
  for (const auto& v : p.vertices()) {
    bool on = true;
    for (const auto* h : tight) {
      if (dot(h->normal, v) != h->constant) {
        on = false;
        break;
      }
    }
    if (on) face_vertices.push_back(v);
  }
  return face_vertices == f.vertices();
}

bool cell_less(const Polytope& a, const Polytope& b) {
  if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim();
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return a.vertices() < b.vertices();
}

std::string to_string(const QVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + "]";
}

std::string vertex_key(const Polytope& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    if (i) s += ",";
    s += to_string(p.vertices()[i]);
  }
  return s + "]";
}

}  // namespace tropkit
