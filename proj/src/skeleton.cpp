#include "tropkit/skeleton.hpp"

#include <algorithm>
#include <numeric>

namespace tropkit {

Polytope standard_simplex(std::size_t r, const Rat& vpi) {
  if (vpi <= 0) throw Error(Errc::BadParams, "vpi must be positive");
  std::vector<QVector> pts{zeros(r)};
  for (std::size_t i = 0; i < r; ++i) {
    QVector v = zeros(r);
    v[i] = vpi;
    pts.push_back(std::move(v));
  }
  return polytope_from_vertices(std::move(pts));
}

const Stratum* SkeletonModel::find_stratum(const std::string& id) const {
  for (const auto& s : strata)
    if (s.id == id) return &s;
  return nullptr;
}

const CanonicalSimplex* SkeletonModel::find_simplex(const std::string& stratum_id) const {
  for (const auto& s : simplices)
    if (s.stratum_id == stratum_id) return &s;
  return nullptr;
}

const CanonicalSimplex& SkeletonModel::simplex(const std::string& stratum_id) const {
  const auto* s = find_simplex(stratum_id);
  if (!s) throw Error(Errc::UnknownCell, "no simplex for stratum " + stratum_id);
  return *s;
}

int SkeletonModel::stratum_dim(const std::string& stratum_id) const {
  const auto* s = find_stratum(stratum_id);
  if (!s) throw Error(Errc::UnknownCell, "unknown stratum " + stratum_id);
  return s->dim;
}

SkeletonReport validate_skeleton(const SkeletonModel& m) {
  SkeletonReport rep;
  auto report = [&](Errc k, std::string msg) { rep.violations.push_back({k, std::move(msg)}); };

  std::set<std::string> ids;
  for (const auto& s : m.strata) {
    if (!ids.insert(s.id).second) report(Errc::InvalidSkeleton, "duplicate stratum " + s.id);
    if (s.dim < 0) report(Errc::InvalidSkeleton, "stratum " + s.id + " has negative dimension");
  }
  std::set<std::string> seen;
  for (const auto& s : m.simplices) {
    const auto* st = m.find_stratum(s.stratum_id);
    if (!st) {
      report(Errc::UnknownCell, "simplex refers to unknown stratum " + s.stratum_id);
      continue;
    }
    if (!seen.insert(s.stratum_id).second) report(Errc::InvalidSkeleton, "two simplices for stratum " + s.stratum_id);
    if (s.r < 0) report(Errc::InvalidSkeleton, "simplex " + s.stratum_id + " has negative r");
    if (st->dim + s.r != m.d)
      report(Errc::InvalidSkeleton, "simplex " + s.stratum_id + ": dim S + r = " + std::to_string(st->dim + s.r) +
                                        " but d = " + std::to_string(m.d));
    if (s.vpi <= 0) report(Errc::InvalidSkeleton, "simplex " + s.stratum_id + " has non-positive vpi");
    else if (!m.gamma.contains(s.vpi))
      report(Errc::NotGammaRational, "simplex " + s.stratum_id + ": vpi " + to_string(s.vpi) + " is not in the value group");
  }

  auto usable = [&](const CanonicalSimplex* s) { return s && s->r >= 0 && s->vpi > 0; };
  std::map<std::string, std::vector<Polytope>> covered;
  for (const auto& e : m.incidence) {
    const auto* f = m.find_simplex(e.face);
    const auto* o = m.find_simplex(e.of);
    if (!f || !o) {
      report(Errc::UnknownCell, "incidence " + e.face + " < " + e.of + " names an unknown simplex");
      continue;
    }
    if (!usable(f) || !usable(o)) continue;
    if (f->r >= o->r) {
      report(Errc::InvalidSkeleton, "incidence " + e.face + " < " + e.of + " does not lower the simplex dimension");
      continue;
    }
    if (e.chart.source_dim() != static_cast<std::size_t>(f->r) || e.chart.target_dim() != static_cast<std::size_t>(o->r)) {
      report(Errc::DimensionMismatch, "chart of " + e.face + " < " + e.of + " has the wrong shape");
      continue;
    }
    Polytope image = apply_affine(e.chart, standard_simplex(f->r, f->vpi));
    Polytope outer = standard_simplex(o->r, o->vpi);
    if (image.dim() != static_cast<std::size_t>(f->r) || !is_face_of(image, outer)) {
      report(Errc::InvalidSkeleton, "chart of " + e.face + " < " + e.of + " is not onto a face");
      continue;
    }
    covered[e.of].push_back(image);
  }

  for (const auto& s : m.simplices) {
    if (!usable(&s) || s.r == 0) continue;
    auto& have = covered[s.stratum_id];
    for (const auto& facet : faces(standard_simplex(s.r, s.vpi), s.r - 1)) {
      if (std::find(have.begin(), have.end(), facet) == have.end())
        report(Errc::InvalidSkeleton, "facet " + vertex_key(facet) + " of simplex " + s.stratum_id + " is not in the model");
    }
  }

  if (!m.simplices.empty()) {
    std::map<std::string, std::string> parent;
    for (const auto& s : m.simplices) parent[s.stratum_id] = s.stratum_id;
    auto root = [&](std::string x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : m.incidence)
      if (parent.count(e.face) && parent.count(e.of)) parent[root(e.face)] = root(e.of);
    std::set<std::string> roots;
    for (const auto& s : m.simplices) roots.insert(root(s.stratum_id));
    if (roots.size() > 1)
      report(Errc::Disconnected, "skeleton has " + std::to_string(roots.size()) + " connected components");
  }
  return rep;
}

std::optional<Polytope> pullback_cell(const Polytope& p, const AffineMap& f, const Polytope& d, const QVector& lambda) {
  std::vector<std::pair<QVector, Rat>> ineq, eq;
  for (const auto& h : p.halfspaces()) ineq.emplace_back(to_rational(h.normal), h.constant);
  for (const auto& h : p.equations()) eq.emplace_back(to_rational(h.normal), h.constant);
  QMatrix mt = f.linear.transpose();
  auto pull = [&](const IntVector& normal, const Rat& constant) {
    QVector a = to_rational(normal);
    return std::make_pair(mt * a, constant + dot(a, lambda) - dot(a, f.translate));
  };
  for (const auto& h : d.halfspaces()) ineq.push_back(pull(h.normal, h.constant));
  for (const auto& h : d.equations()) eq.push_back(pull(h.normal, h.constant));
  try {
    return polytope_from_system(p.ambient_dim(), ineq, eq);
  } catch (const Error& e) {
    if (e.code() == Errc::Empty) return std::nullopt;
    throw;
  }
}

namespace {

void check_consistency(const SkeletonModel& m, const FaffTable& fmaps, const Lattice& lat) {
  for (const auto& e : m.incidence) {
    const auto& fs = fmaps.at(e.of);
    const auto& ft = fmaps.at(e.face);
    // f_S after chart must agree with f_T up to a lattice translation
    QMatrix lin = fs.matrix() * e.chart.linear;
    QVector off = fs.matrix() * e.chart.translate + fs.constants() - ft.constants();
    if (!(lin == ft.matrix()) || !lat.contains(off))
      throw Error(Errc::InconsistentOnFaces,
                  "exponent maps of " + e.face + " and " + e.of + " disagree along their incidence chart");
  }
}

}  // namespace

SubdividedSkeleton subdivide_skeleton(const SkeletonModel& m, const FaffTable& fmaps, const QuotientComplex& target) {
  const Lattice& lat = target.lattice();
  for (const auto& s : m.simplices) {
    auto it = fmaps.find(s.stratum_id);
    if (it == fmaps.end()) throw Error(Errc::MissingData, "no exponent map for simplex " + s.stratum_id);
    if (it->second.source_dim() != static_cast<std::size_t>(s.r) || it->second.target_dim() != lat.rank())
      throw Error(Errc::DimensionMismatch, "exponent map of " + s.stratum_id + " has the wrong shape");
  }
  check_consistency(m, fmaps, lat);

  SubdividedSkeleton out{m, {}, {}};
  for (const auto& s : m.simplices) {
    Polytope simplex = standard_simplex(s.r, s.vpi);
    AffineMap f = fmaps.at(s.stratum_id).affine();
    Polytope image = apply_affine(f, simplex);
    std::map<std::string, Polytope> cells;
    for (const auto& d : target.cells()) {
      for (const auto& lambda : translations_meeting(image, d, lat)) {
        auto cell = pullback_cell(simplex, f, d, lambda);
        if (!cell) continue;
        for (const auto& face : all_faces(*cell)) cells.emplace(vertex_key(face), face);
      }
    }
    auto& list = out.cells[s.stratum_id];
    for (auto& [key, c] : cells) list.push_back(std::move(c));
    std::sort(list.begin(), list.end(), cell_less);
    for (const auto& c : list) {
      if (c.dim() == 0 && relint_contains(simplex, c.vertices().front()))
        out.vertices.push_back({s.stratum_id, c.vertices().front()});
    }
  }
  return out;
}

std::optional<std::string> check_simplex_decomposition(const Polytope& simplex, const std::vector<Polytope>& cells) {
  Rat covered = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!is_subset(cells[i], simplex)) return "cell " + vertex_key(cells[i]) + " leaves the simplex";
    for (const auto& f : all_faces(cells[i]))
      if (std::find(cells.begin(), cells.end(), f) == cells.end()) return "face " + vertex_key(f) + " is missing";
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      auto x = intersect(cells[i], cells[j]);
      if (x && (!is_face_of(*x, cells[i]) || !is_face_of(*x, cells[j])))
        return "cells " + vertex_key(cells[i]) + " and " + vertex_key(cells[j]) + " overlap";
    }
    if (cells[i].dim() == simplex.dim()) covered += normalized_volume(cells[i]);
  }
  if (covered != normalized_volume(simplex)) return "cells cover volume " + to_string(covered);
  return std::nullopt;
}

std::vector<VertexStratum> vertex_stratum_table(const SubdividedSkeleton& s) {
  std::vector<VertexStratum> out;
  for (const auto& v : s.vertices) {
    int sd = s.base.stratum_dim(v.simplex);
    int r = s.base.simplex(v.simplex).r;
    out.push_back({v, sd, r, sd + r});
  }
  return out;
}

std::set<std::string> nondegenerate_set(const SkeletonModel& m, const NondegData& nd) {
  std::set<std::string> out;
  for (const auto& s : m.simplices) {
    auto it = nd.find(s.stratum_id);
    if (it == nd.end()) throw Error(Errc::MissingData, "no non-degeneracy data for simplex " + s.stratum_id);
    int sd = m.stratum_dim(s.stratum_id);
    const auto& e = it->second;
    if (e.image_dim < 0 || e.image_dim > s.r || e.abelian_image_dim < 0 || e.abelian_image_dim > sd)
      throw Error(Errc::BadParams, "non-degeneracy data of " + s.stratum_id + " is out of range");
    if (e.image_dim == s.r && e.abelian_image_dim == sd) out.insert(s.stratum_id);
  }
  return out;
}

std::map<std::string, int> computed_image_dims(const SkeletonModel& m, const FaffTable& fmaps) {
  std::map<std::string, int> out;
  for (const auto& s : m.simplices) {
    auto it = fmaps.find(s.stratum_id);
    if (it == fmaps.end()) throw Error(Errc::MissingData, "no exponent map for simplex " + s.stratum_id);
    out[s.stratum_id] = static_cast<int>(rank_faff(it->second));
  }
  return out;
}

}  // namespace tropkit
