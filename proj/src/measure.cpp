#include "tropkit/measure.hpp"

#include <algorithm>

namespace tropkit {

// ------------------------------------------------------------------ carriers

CarrierPtr Carrier::plain(std::size_t n, std::vector<Polytope> cells) {
  for (const auto& c : cells)
    if (c.ambient_dim() != n) throw Error(Errc::DimensionMismatch, "cell and carrier dimensions differ");
  return std::make_shared<const Carrier>(Carrier{n, std::nullopt, std::move(cells)});
}

CarrierPtr Carrier::periodic(const Lattice& lat, std::vector<Polytope> cells) {
  std::vector<Polytope> unique;
  std::set<std::string> seen;
  for (const auto& c : cells) {
    if (c.ambient_dim() != lat.rank()) throw Error(Errc::DimensionMismatch, "cell and lattice dimensions differ");
    Polytope canon = canonical_cell(c, lat);
    if (seen.insert(vertex_key(canon)).second) unique.push_back(std::move(canon));
  }
  return std::make_shared<const Carrier>(Carrier{lat.rank(), lat, std::move(unique)});
}

CarrierPtr Carrier::from_quotient(const QuotientComplex& qc) {
  return std::make_shared<const Carrier>(Carrier{qc.ambient_dim(), qc.lattice(), qc.cells()});
}

std::optional<std::size_t> Carrier::find(const Polytope& p) const {
  if (p.ambient_dim() != ambient_dim) return std::nullopt;
  Polytope key = lattice ? canonical_cell(p, *lattice) : p;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] == key) return i;
  return std::nullopt;
}

std::vector<QVector> Carrier::translates_inside(std::size_t id, const Polytope& outer) const {
  const Polytope& cell = cells.at(id);
  if (cell.dim() > outer.dim()) return {};
  if (!lattice) return is_subset(cell, outer) ? std::vector<QVector>{zeros(ambient_dim)} : std::vector<QVector>{};
  std::vector<QVector> diffs;
  for (const auto& w : outer.vertices()) diffs.push_back(w - cell.vertices().front());
  std::vector<QVector> out;
  for (auto& lambda : lattice->points_in_box(diffs)) {
    if (is_subset(translate(cell, lambda), outer)) out.push_back(std::move(lambda));
  }
  return out;
}

// ------------------------------------------------------------------ measures

PolytopalMeasure::PolytopalMeasure(CarrierPtr carrier, std::vector<Term> terms) : carrier_(std::move(carrier)) {
  std::map<std::size_t, Rat> merged;
  for (auto& [id, w] : terms) {
    if (id >= carrier_->cells.size()) throw Error(Errc::UnknownCell, "cell " + std::to_string(id) + " is not in the carrier");
    if (w < 0) throw Error(Errc::BadParams, "negative weight on cell " + std::to_string(id));
    merged[id] += w;
  }
  for (auto& [id, w] : merged)
    if (w != 0) terms_.emplace_back(id, std::move(w));
}

Rat PolytopalMeasure::weight(std::size_t id) const {
  for (const auto& [i, w] : terms_)
    if (i == id) return w;
  return 0;
}

Rat PolytopalMeasure::mass() const {
  Rat m = 0;
  for (const auto& [id, w] : terms_) m += w * normalized_volume(carrier_->cells[id]);
  return m;
}

PolytopalMeasure delta(std::size_t cell, const CarrierPtr& carrier) { return PolytopalMeasure(carrier, {{cell, Rat(1)}}); }

PolytopalMeasure delta(const Polytope& sigma, const CarrierPtr& carrier) {
  auto id = carrier->find(sigma);
  if (!id) throw Error(Errc::UnknownCell, "cell " + vertex_key(sigma) + " is not in the carrier");
  return delta(*id, carrier);
}

PolytopalMeasure combine(const std::vector<std::pair<Rat, PolytopalMeasure>>& parts) {
  if (parts.empty()) throw Error(Errc::BadParams, "nothing to combine");
  const CarrierPtr& carrier = parts.front().second.carrier();
  std::vector<PolytopalMeasure::Term> terms;
  for (const auto& [c, mu] : parts) {
    if (mu.carrier() != carrier && !(*mu.carrier() == *carrier))
      throw Error(Errc::CarrierMismatch, "measures live on different carriers");
    if (c < 0) throw Error(Errc::BadParams, "negative coefficient");
    for (const auto& [id, w] : mu.terms()) terms.emplace_back(id, c * w);
  }
  return PolytopalMeasure(carrier, std::move(terms));
}

CarrierPtr product_carrier(const Carrier& a, const Carrier& b) {
  if (a.lattice.has_value() != b.lattice.has_value())
    throw Error(Errc::CarrierMismatch, "cannot multiply a periodic and a plain carrier");
  std::vector<Polytope> cells;
  cells.reserve(a.cells.size() * b.cells.size());
  for (const auto& p : a.cells)
    for (const auto& q : b.cells) cells.push_back(product(p, q));
  std::optional<Lattice> lat;
  if (a.lattice) lat = a.lattice->direct_sum(*b.lattice);
  return std::make_shared<const Carrier>(Carrier{a.ambient_dim + b.ambient_dim, std::move(lat), std::move(cells)});
}

PolytopalMeasure product_measure(const PolytopalMeasure& a, const PolytopalMeasure& b) {
  auto carrier = product_carrier(*a.carrier(), *b.carrier());
  const std::size_t nb = b.carrier()->cells.size();
  std::vector<PolytopalMeasure::Term> terms;
  for (const auto& [i, w] : a.terms())
    for (const auto& [j, v] : b.terms()) terms.emplace_back(i * nb + j, w * v);
  return PolytopalMeasure(std::move(carrier), std::move(terms));
}

PolytopalMeasure power_measure(const PolytopalMeasure& mu, std::size_t N) {
  if (N < 1) throw Error(Errc::BadParams, "power needs N >= 1");
  std::vector<Polytope> cells;
  std::vector<PolytopalMeasure::Term> terms;
  for (const auto& [id, w] : mu.terms()) {
    terms.emplace_back(cells.size(), w);
    cells.push_back(mu.carrier()->cells[id]);
  }
  const auto& src = *mu.carrier();
  auto carrier = std::make_shared<const Carrier>(Carrier{src.ambient_dim, src.lattice, std::move(cells)});
  PolytopalMeasure base(carrier, std::move(terms));
  PolytopalMeasure out = base;
  for (std::size_t k = 1; k < N; ++k) out = product_measure(out, base);
  return out;
}

// -------------------------------------------------------------- push-forward

void transport_piece(const Polytope& piece, const Rat& weight, const AffineMap& g, const Carrier& target,
                     std::map<std::size_t, Rat>& out) {
  if (weight == 0) return;
  if (g.source_dim() != piece.ambient_dim() || g.target_dim() != target.ambient_dim)
    throw Error(Errc::DimensionMismatch, "map does not match source or target");
  if (!is_injective_on(g, piece))
    throw Error(Errc::NonInjectivePiece, "map collapses the positive-weight piece " + vertex_key(piece));
  Polytope image = apply_affine(g, piece);
  Rat density = weight * normalized_volume(piece) / normalized_volume(image);
  Rat covered = 0;
  std::map<std::size_t, Rat> add;
  for (std::size_t id = 0; id < target.cells.size(); ++id) {
    const auto& tau = target.cells[id];
    if (tau.dim() != image.dim()) continue;
    auto inside = target.translates_inside(id, image);
    if (inside.empty()) continue;
    Rat count(static_cast<long>(inside.size()));
    add[id] += density * count;
    covered += normalized_volume(tau) * count;
  }
  if (covered != normalized_volume(image))
    throw Error(Errc::TargetNotSubdivisional,
                "image " + vertex_key(image) + " is not a union of target cells (covered " + to_string(covered) + " of " +
                    to_string(normalized_volume(image)) + ")");
  for (auto& [id, w] : add) out[id] += w;
}

namespace {

// Full-dimensional pieces of sigma cut out by the map's domains, each with its affine map.
std::vector<std::pair<Polytope, AffineMap>> split_by_domains(const Polytope& sigma, const PiecewiseAffineMap& f) {
  std::vector<std::pair<Polytope, AffineMap>> out;
  for (const auto& pc : f.pieces()) {
    if (!pc.domain) {
      out.emplace_back(sigma, pc.map);
      break;
    }
    auto p = intersect(sigma, *pc.domain);
    if (!p || p->dim() != sigma.dim()) continue;
    // sigma inside a wall shared by several domains: the maps agree there, keep one copy
    QVector x = rational_relint_point(*p);
    bool seen = std::any_of(out.begin(), out.end(), [&](const auto& q) { return relint_contains(q.first, x); });
    if (!seen) out.emplace_back(std::move(*p), pc.map);
  }
  return out;
}

}  // namespace

PolytopalMeasure pushforward_exact(const PolytopalMeasure& mu, const PiecewiseAffineMap& f, const CarrierPtr& target) {
  if (f.source_dim() != mu.carrier()->ambient_dim || f.target_dim() != target->ambient_dim)
    throw Error(Errc::DimensionMismatch, "map does not match source or target");
  std::map<std::size_t, Rat> out;
  for (const auto& [id, w] : mu.terms()) {
    const Polytope& sigma = mu.carrier()->cells[id];
    auto pieces = split_by_domains(sigma, f);
    Rat covered = 0;
    for (const auto& [piece, g] : pieces) covered += normalized_volume(piece);
    if (covered != normalized_volume(sigma))
      throw Error(Errc::DomainNotCovered, "map domains cover volume " + to_string(covered) + " of cell " + vertex_key(sigma));
    for (const auto& [piece, g] : pieces) transport_piece(piece, w, g, *target, out);
  }
  return PolytopalMeasure(target, {out.begin(), out.end()});
}

SupportImage pushforward_support(const PolytopalMeasure& mu, const PiecewiseAffineMap& f) {
  SupportImage out;
  for (const auto& [id, w] : mu.terms()) {
    for (const auto& [piece, g] : split_by_domains(mu.carrier()->cells[id], f)) {
      Polytope image = apply_affine(g, piece);
      std::size_t d = image.dim();
      out.push_back({id, std::move(image), d});
    }
  }
  return out;
}

// ------------------------------------------------------------ strict support

std::map<std::size_t, Rat> reexpress(const PolytopalMeasure& mu, const Carrier& sigma) {
  const Carrier& src = *mu.carrier();
  std::map<std::size_t, Rat> coef;
  if (src == sigma) {
    for (const auto& [id, w] : mu.terms()) coef[id] = w;
    return coef;
  }
  if (src.ambient_dim != sigma.ambient_dim || src.lattice.has_value() != sigma.lattice.has_value() ||
      (src.lattice && !src.lattice->same_lattice(*sigma.lattice)))
    throw Error(Errc::CarrierMismatch, "decomposition lives on a different torus");
  for (const auto& [id, w] : mu.terms()) {
    const Polytope& cell = src.cells[id];
    Rat covered = 0;
    for (std::size_t t = 0; t < sigma.cells.size(); ++t) {
      if (sigma.cells[t].dim() != cell.dim()) continue;
      auto inside = sigma.translates_inside(t, cell);
      if (inside.empty()) continue;
      Rat count(static_cast<long>(inside.size()));
      coef[t] += w * count;
      covered += normalized_volume(sigma.cells[t]) * count;
    }
    if (covered != normalized_volume(cell))
      throw Error(Errc::NotExpressible, "cell " + vertex_key(cell) + " is not a union of decomposition cells");
  }
  return coef;
}

std::vector<StrictSupport> strict_supports(const PolytopalMeasure& mu, const Carrier& sigma) {
  std::vector<StrictSupport> out;
  for (const auto& [id, c] : reexpress(mu, sigma))
    if (c > 0) out.push_back({id, c});
  return out;
}

CarrierPtr make_subdivisional(const Carrier& sigma0, const std::vector<Polytope>& images) {
  std::vector<CutFamily> families;
  std::set<std::string> seen;
  auto add = [&](const IntVector& normal, const Rat& c) {
    if (is_zero(to_rational(normal))) return;
    Hyperplane h{normal, c};
    CutFamily fam = sigma0.lattice ? periodic_family(h, *sigma0.lattice) : CutFamily{to_rational(normal), c, 0};
    if (fam.step != 0) fam.offset -= Rat(floor_int(fam.offset / fam.step)) * fam.step;
    std::string key = to_string(fam.normal) + "|" + to_string(fam.offset) + "|" + to_string(fam.step);
    if (seen.insert(key).second) families.push_back(std::move(fam));
  };
  for (const auto& q : images) {
    if (q.ambient_dim() != sigma0.ambient_dim) throw Error(Errc::DimensionMismatch, "image dimension differs from carrier");
    for (const auto& h : q.equations()) add(h.normal, h.constant);
    for (const auto& h : q.halfspaces()) add(h.normal, h.constant);
  }
  std::map<std::string, Polytope> cells;
  std::set<std::string> built;
  for (std::size_t i = 0; i < sigma0.cells.size(); ++i) {
    const auto& c = sigma0.cells[i];
    // faces of a larger cell come back as faces of its pieces
    bool is_face = false;
    for (std::size_t j = 0; j < sigma0.cells.size() && !is_face; ++j)
      is_face = sigma0.cells[j].dim() > c.dim() && !sigma0.translates_inside(i, sigma0.cells[j]).empty();
    if (is_face) continue;
    for (const auto& piece : split_by_cuts(c, families)) {
      for (auto& vs : face_vertex_lists(piece)) {
        std::sort(vs.begin(), vs.end());
        std::string raw = to_string(vs[0]);
        for (std::size_t k = 1; k < vs.size(); ++k) raw += ";" + to_string(vs[k]);
        if (!built.insert(std::move(raw)).second) continue;
        Polytope f = polytope_from_vertices(vs);
        Polytope key = sigma0.lattice ? canonical_cell(f, *sigma0.lattice) : f;
        std::string k = vertex_key(key);
        cells.emplace(std::move(k), std::move(key));
      }
    }
  }
  std::vector<Polytope> list;
  for (auto& [k, p] : cells) list.push_back(std::move(p));
  std::sort(list.begin(), list.end(), cell_less);
  return std::make_shared<const Carrier>(Carrier{sigma0.ambient_dim, sigma0.lattice, std::move(list)});
}

// ---------------------------------------------------------------- assembly

bool TropSubvariety::is_point() const { return support.size() == 1 && carrier->cells[support.front()].dim() == 0; }

TropSubvariety assemble_canonical(const SkeletonModel& sk, const NondegData& nd, const std::map<std::string, Rat>& weights,
                                  const FaffTable& fmaps, const CarrierPtr& sigma) {
  auto nondeg = nondegenerate_set(sk, nd);
  std::map<std::string, Rat> w;
  if (weights.empty()) {
    for (const auto& s : nondeg) w[s] = 1;
  } else {
    for (const auto& [id, x] : weights) {
      if (!sk.find_simplex(id)) throw Error(Errc::UnknownCell, "weight for unknown simplex " + id);
      if (!nondeg.count(id)) throw Error(Errc::DegenerateWeighted, "weight supplied for degenerate simplex " + id);
      if (x <= 0) throw Error(Errc::BadParams, "weight of " + id + " must be positive");
    }
    for (const auto& s : nondeg) {
      auto it = weights.find(s);
      if (it == weights.end()) throw Error(Errc::MissingWeight, "no weight for non-degenerate simplex " + s);
      w[s] = it->second;
    }
  }
  if (nondeg.empty()) throw Error(Errc::EmptySupport, "no non-degenerate simplex");

  std::map<std::size_t, Rat> coef;
  for (const auto& [id, weight] : w) {
    const auto& s = sk.simplex(id);
    auto it = fmaps.find(id);
    if (it == fmaps.end()) throw Error(Errc::MissingData, "no exponent map for simplex " + id);
    try {
      transport_piece(standard_simplex(s.r, s.vpi), weight, it->second.affine(), *sigma, coef);
    } catch (const Error& e) {
      if (e.code() == Errc::TargetNotSubdivisional) throw Error(Errc::NotSubdivisional, "simplex " + id + ": " + e.what());
      throw;
    }
  }
  PolytopalMeasure raw(sigma, {coef.begin(), coef.end()});
  Rat total = raw.mass();
  std::vector<PolytopalMeasure::Term> terms;
  TropSubvariety out;
  out.carrier = sigma;
  for (const auto& [id, c] : raw.terms()) {
    terms.emplace_back(id, c / total);
    out.support.push_back(id);
    out.dim = std::max(out.dim, static_cast<int>(sigma->cells[id].dim()));
  }
  out.measure = PolytopalMeasure(sigma, std::move(terms));
  out.provenance = SkeletonProvenance{sk, fmaps, nd};
  return out;
}

}  // namespace tropkit
