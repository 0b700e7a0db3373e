#include "tropkit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace tropkit::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw ParseError(std::string("field \"") + key + "\" must be a list");
  return a;
}

std::string int_string(const Int& x) { return x.str(); }

}  // namespace

json read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw ParseError("cannot write " + p.string());
  out << dump(j);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Rat& x) { return to_string(x); }

Rat rat_from(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) throw ParseError("rational must be a \"p/q\" string or an integer");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::exception&) {
    throw ParseError("bad rational \"" + j.get<std::string>() + "\"");
  }
}

json to_json(const QVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

QVector vector_from(const json& j) {
  if (!j.is_array()) throw ParseError("vector must be a list");
  QVector v;
  for (const auto& x : j) v.push_back(rat_from(x));
  return v;
}

json to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

QMatrix matrix_from(const json& j, std::optional<std::size_t> cols) {
  if (!j.is_array()) throw ParseError("matrix must be a list of rows");
  std::vector<QVector> rows;
  for (const auto& r : j) rows.push_back(vector_from(r));
  std::size_t c = cols ? *cols : (rows.empty() ? 0 : rows.front().size());
  for (const auto& r : rows)
    if (r.size() != c) throw ParseError("matrix rows have different lengths");
  return rows.empty() ? QMatrix(0, c) : QMatrix::from_rows(rows, c);
}

json to_json(const Polytope& p) {
  json vs = json::array();
  for (const auto& v : p.vertices()) vs.push_back(to_json(v));
  return {{"ambient_dim", p.ambient_dim()}, {"vertices", vs}};
}

Polytope polytope_from(const json& j) {
  auto n = field(j, "ambient_dim").get<std::size_t>();
  std::vector<QVector> pts;
  for (const auto& v : array_field(j, "vertices")) {
    pts.push_back(vector_from(v));
    if (pts.back().size() != n) throw ParseError("vertex length differs from ambient_dim");
  }
  if (pts.empty()) throw ParseError("polytope without vertices");
  return polytope_from_vertices(std::move(pts));
}

json to_json(const Lattice& l) {
  json a = json::array();
  for (std::size_t i = 0; i < l.rank(); ++i) a.push_back(to_json(l.basis_vector(i)));
  return a;
}

Lattice lattice_from(const json& j) {
  if (!j.is_array()) throw ParseError("lattice must be a list of basis vectors");
  std::vector<QVector> vs;
  for (const auto& v : j) vs.push_back(vector_from(v));
  return Lattice::from_vectors(vs);
}

json to_json(const ValueGroup& g) {
  if (g.kind() == ValueGroup::Kind::FullRationals) return {{"kind", "rationals"}};
  return {{"kind", "discrete"}, {"generator", to_json(g.generator())}};
}

ValueGroup value_group_from(const json& j) {
  auto kind = field(j, "kind").get<std::string>();
  if (kind == "rationals") return ValueGroup::rationals();
  if (kind == "discrete") return ValueGroup::discrete(rat_from(field(j, "generator")));
  throw ParseError("unknown value group kind \"" + kind + "\"");
}

json to_json(const PeriodicComplex& c) {
  json cells = json::array();
  for (const auto& p : c.cells()) cells.push_back(to_json(p));
  return {{"lattice", to_json(c.lattice())}, {"gamma", to_json(c.gamma())}, {"cells", cells}};
}

ComplexData complex_from(const json& j) {
  ComplexData d{lattice_from(field(j, "lattice")), ValueGroup::rationals(), {}};
  if (j.contains("gamma")) d.gamma = value_group_from(j.at("gamma"));
  for (const auto& c : array_field(j, "cells")) d.cells.push_back(polytope_from(c));
  return d;
}

json to_json(const QuotientComplex& q) {
  json cells = json::array();
  for (const auto& p : q.cells()) cells.push_back(to_json(p));
  return {{"base", to_json(q.base())}, {"representatives", q.representative()}, {"cells", cells}};
}

QuotientComplex quotient_from(const json& j) {
  auto d = complex_from(field(j, "base"));
  return quotient(PeriodicComplex::unchecked(d.lattice, d.gamma, d.cells));
}

json to_json(const PeriodicViolation& v) {
  return {{"kind", std::string(to_string(v.kind))}, {"message", v.message}, {"cells", v.cells}};
}

json to_json(const Hyperplane& h) {
  json n = json::array();
  for (const auto& x : h.normal) n.push_back(int_string(x));
  return {{"normal", n}, {"constant", to_json(h.constant)}};
}

Hyperplane hyperplane_from(const json& j) {
  Hyperplane h;
  for (const auto& x : array_field(j, "normal")) {
    Rat r = rat_from(x);
    if (denominator(r) != 1) throw ParseError("hyperplane normal must be integral");
    h.normal.push_back(numerator(r));
  }
  h.constant = rat_from(field(j, "constant"));
  return h;
}

json to_json(const AffineMap& m) {
  return {{"A", to_json(m.linear)}, {"b", to_json(m.translate)}, {"source_dim", m.source_dim()}};
}

AffineMap affine_from(const json& j) {
  std::optional<std::size_t> cols;
  if (j.contains("source_dim")) cols = j.at("source_dim").get<std::size_t>();
  QMatrix a = matrix_from(field(j, "A"), cols);
  QVector b = vector_from(field(j, "b"));
  if (b.size() != a.rows()) throw ParseError("affine map: b does not match the rows of A");
  return AffineMap(a, b);
}

json to_json(const ExponentMap& e) {
  return {{"M", to_json(e.matrix())}, {"c", to_json(e.constants())}, {"source_dim", e.source_dim()}};
}

ExponentMap exponent_map_from(const json& j, const ValueGroup& gamma) {
  std::optional<std::size_t> cols;
  if (j.contains("source_dim")) cols = j.at("source_dim").get<std::size_t>();
  return ExponentMap(matrix_from(field(j, "M"), cols), vector_from(field(j, "c")), gamma);
}

json to_json(const PiecewiseAffineMap& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces())
    pieces.push_back({{"domain", p.domain ? to_json(*p.domain) : json(nullptr)}, {"map", to_json(p.map)}});
  return {{"pieces", pieces}};
}

PiecewiseAffineMap piecewise_from(const json& j) {
  std::vector<PiecewiseAffineMap::Piece> pieces;
  for (const auto& p : array_field(j, "pieces")) {
    std::optional<Polytope> dom;
    if (p.contains("domain") && !p.at("domain").is_null()) dom = polytope_from(p.at("domain"));
    pieces.push_back({dom, affine_from(field(p, "map"))});
  }
  if (pieces.empty()) throw ParseError("piecewise map without pieces");
  return PiecewiseAffineMap(std::move(pieces));
}

json to_json(const NondegData& nd) {
  json o = json::object();
  for (const auto& [id, e] : nd) o[id] = {{"image_dim", e.image_dim}, {"abelian_image_dim", e.abelian_image_dim}};
  return o;
}

NondegData nondeg_from(const json& j) {
  if (!j.is_object()) throw ParseError("nondeg data must be an object keyed by stratum id");
  NondegData nd;
  for (const auto& [id, e] : j.items())
    nd[id] = {field(e, "image_dim").get<int>(), field(e, "abelian_image_dim").get<int>()};
  return nd;
}

json to_json(const SkeletonBundle& s) {
  const auto& m = s.model;
  json strata = json::array(), simplices = json::array(), incidence = json::array();
  for (const auto& st : m.strata) {
    json o = {{"id", st.id}, {"dim", st.dim}};
    if (st.label) o["label"] = *st.label;
    strata.push_back(o);
  }
  for (const auto& sx : m.simplices) simplices.push_back({{"stratum_id", sx.stratum_id}, {"r", sx.r}, {"vpi", to_json(sx.vpi)}});
  for (const auto& e : m.incidence) incidence.push_back({{"face", e.face}, {"of", e.of}, {"chart", to_json(e.chart)}});
  json o = {{"d", m.d}, {"gamma", to_json(m.gamma)}, {"strata", strata}, {"simplices", simplices}, {"incidence", incidence}};
  if (!s.fmaps.empty()) {
    json f = json::object();
    for (const auto& [id, e] : s.fmaps) f[id] = to_json(e);
    o["fmaps"] = f;
  }
  if (s.nondeg) o["nondeg"] = to_json(*s.nondeg);
  return o;
}

SkeletonBundle skeleton_from(const json& j) {
  SkeletonBundle s;
  auto& m = s.model;
  m.d = field(j, "d").get<int>();
  if (j.contains("gamma")) m.gamma = value_group_from(j.at("gamma"));
  for (const auto& st : array_field(j, "strata")) {
    std::optional<std::string> label;
    if (st.contains("label")) label = st.at("label").get<std::string>();
    m.strata.push_back({field(st, "id").get<std::string>(), field(st, "dim").get<int>(), label});
  }
  for (const auto& sx : array_field(j, "simplices"))
    m.simplices.push_back({field(sx, "stratum_id").get<std::string>(), field(sx, "r").get<int>(), rat_from(field(sx, "vpi"))});
  if (j.contains("incidence"))
    for (const auto& e : j.at("incidence"))
      m.incidence.push_back({field(e, "face").get<std::string>(), field(e, "of").get<std::string>(), affine_from(field(e, "chart"))});
  if (j.contains("fmaps"))
    for (const auto& [id, e] : j.at("fmaps").items()) s.fmaps.emplace(id, exponent_map_from(e, m.gamma));
  if (j.contains("nondeg")) s.nondeg = nondeg_from(j.at("nondeg"));
  return s;
}

json to_json(const SkeletonReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations) vs.push_back({{"kind", std::string(to_string(v.kind))}, {"message", v.message}});
  return {{"valid", r.ok()}, {"violations", vs}};
}

json to_json(const Carrier& c) {
  json cells = json::array();
  for (const auto& p : c.cells) cells.push_back(to_json(p));
  json o = {{"ambient_dim", c.ambient_dim}, {"cells", cells}};
  if (c.lattice) o["lattice"] = to_json(*c.lattice);
  return o;
}

namespace {

// Carrier plus the id each listed cell received (periodic carriers merge translates).
std::pair<CarrierPtr, std::vector<std::size_t>> carrier_with_ids(const json& j) {
  std::vector<Polytope> cells;
  for (const auto& c : array_field(j, "cells")) cells.push_back(polytope_from(c));
  CarrierPtr out;
  if (j.contains("lattice")) {
    out = Carrier::periodic(lattice_from(j.at("lattice")), cells);
  } else {
    out = Carrier::plain(field(j, "ambient_dim").get<std::size_t>(), cells);
  }
  std::vector<std::size_t> ids;
  for (const auto& c : cells) ids.push_back(*out->find(c));
  return {out, ids};
}

std::vector<PolytopalMeasure::Term> terms_from(const json& j, const std::vector<std::size_t>& ids) {
  if (!j.is_array()) throw ParseError("measure terms must be a list");
  std::vector<PolytopalMeasure::Term> terms;
  for (const auto& t : j) {
    auto cell = field(t, "cell").get<std::size_t>();
    if (cell >= ids.size()) throw Error(Errc::UnknownCell, "measure term names cell " + std::to_string(cell));
    terms.emplace_back(ids[cell], rat_from(field(t, "weight")));
  }
  return terms;
}

json terms_json(const PolytopalMeasure& mu) {
  json terms = json::array();
  for (const auto& [id, w] : mu.terms()) terms.push_back({{"cell", id}, {"weight", to_json(w)}});
  return terms;
}

}  // namespace

CarrierPtr carrier_from(const json& j) { return carrier_with_ids(j).first; }

CarrierPtr carrier_from_any(const json& j) {
  if (j.contains("base")) return Carrier::from_quotient(quotient_from(j));
  if (j.contains("gamma") || (j.contains("lattice") && !j.contains("ambient_dim"))) {
    auto d = complex_from(j);
    return Carrier::from_quotient(quotient(PeriodicComplex::unchecked(d.lattice, d.gamma, d.cells)));
  }
  return carrier_from(j);
}

json to_json(const PolytopalMeasure& mu) { return {{"carrier", to_json(*mu.carrier())}, {"terms", terms_json(mu)}}; }

PolytopalMeasure measure_from(const json& j) {
  auto [c, ids] = carrier_with_ids(field(j, "carrier"));
  return PolytopalMeasure(c, terms_from(field(j, "terms"), ids));
}

json to_json(const std::vector<StrictSupport>& s) {
  json a = json::array();
  for (const auto& x : s) a.push_back({{"cell", x.cell}, {"epsilon", to_json(x.epsilon)}});
  return a;
}

json to_json(const TropSubvariety& x, const std::string& place) {
  json o = {{"carrier", to_json(*x.carrier)},
            {"support", x.support},
            {"dim", x.dim},
            {"stabilizer_trivial", x.stabilizer_trivial},
            {"measure", x.measure ? terms_json(*x.measure) : json(nullptr)}};
  if (!place.empty()) o["place"] = place;
  if (x.provenance) {
    SkeletonBundle b{x.provenance->skeleton, x.provenance->fmaps, x.provenance->nondeg};
    o["provenance"] = to_json(b);
  }
  return o;
}

PlaceTropData place_data_from(const json& j, const std::string& fallback_place) {
  PlaceTropData out;
  out.place = j.contains("place") ? j.at("place").get<std::string>() : fallback_place;
  auto [c, ids] = carrier_with_ids(field(j, "carrier"));
  auto& x = out.x;
  x.carrier = c;
  for (const auto& s : array_field(j, "support")) {
    auto id = s.get<std::size_t>();
    if (id >= ids.size()) throw Error(Errc::UnknownCell, "support names cell " + std::to_string(id));
    x.support.push_back(ids[id]);
  }
  std::sort(x.support.begin(), x.support.end());
  x.support.erase(std::unique(x.support.begin(), x.support.end()), x.support.end());
  x.dim = 0;
  for (auto id : x.support) x.dim = std::max(x.dim, static_cast<int>(c->cells[id].dim()));
  if (j.contains("dim") && j.at("dim").get<int>() != x.dim)
    throw Error(Errc::DimensionMismatch, "recorded dim differs from the support");
  x.stabilizer_trivial = j.value("stabilizer_trivial", false);
  if (j.contains("measure") && !j.at("measure").is_null()) x.measure = PolytopalMeasure(c, terms_from(j.at("measure"), ids));
  if (j.contains("provenance")) {
    auto b = skeleton_from(j.at("provenance"));
    if (!b.nondeg) throw ParseError("provenance without nondeg data");
    x.provenance = SkeletonProvenance{b.model, b.fmaps, *b.nondeg};
  }
  return out;
}

std::map<std::string, Rat> weights_from(const json& j) {
  if (!j.is_object()) throw ParseError("weights must be an object keyed by stratum id");
  std::map<std::string, Rat> w;
  for (const auto& [id, x] : j.items()) w[id] = rat_from(x);
  return w;
}

json to_json(const Verdict& v) {
  json o = {{"kind", std::string(to_string(v.kind))}, {"tag", v.tag}};
  if (v.witness) {
    const auto& w = *v.witness;
    o["witness"] = {{"place", w.place},     {"cell", to_json(w.cell)}, {"factors", w.factors},
                    {"dim_sigma", w.dim_sigma}, {"dim_alpha", w.dim_alpha}, {"N", w.N}};
  } else {
    o["witness"] = nullptr;
  }
  return o;
}

json to_json(const ConsistencyReport& r) {
  json fs = json::array();
  for (const auto& f : r.findings) {
    json o = {{"tag", f.tag}, {"message", f.message}, {"simplex", f.simplex}};
    o["cell"] = f.cell ? json(*f.cell) : json(nullptr);
    fs.push_back(o);
  }
  return {{"clean", r.clean()}, {"kind", std::string(to_string(r.verdict().kind))}, {"findings", fs}};
}

json to_json(const Inference& i) { return {{"is_point", i.is_point}, {"text", i.text}, {"tag", i.tag}}; }

json to_json(const AbelianProfile& p) {
  auto n = p.normalized();
  return {{"dim", n.dim}, {"simple", n.simple}, {"torus_rank", n.torus_rank}};
}

AbelianProfile profile_from(const json& j) {
  AbelianProfile p;
  p.dim = field(j, "dim").get<int>();
  p.simple = j.value("simple", false);
  if (j.contains("torus_rank"))
    for (const auto& [v, k] : j.at("torus_rank").items()) p.torus_rank[v] = k.get<int>();
  validate_profile(p);
  return p;
}

json to_json(const IsogenyDecomposition& d) {
  json fs = json::array();
  for (const auto& [p, m] : d.factors) fs.push_back({{"profile", to_json(p)}, {"multiplicity", m}});
  return {{"factors", fs}};
}

IsogenyDecomposition decomposition_from(const json& j) {
  IsogenyDecomposition d;
  for (const auto& f : array_field(j, "factors"))
    d.factors.push_back({profile_from(field(f, "profile")), f.value("multiplicity", 1)});
  return d;
}

json to_json(const ConjectureStatus& s) {
  json o = {{"ndr", s.ndr},
            {"status", s.kind == ConjectureStatus::Kind::HoldsByNdrLeq1 ? "HoldsByNdrLeq1" : "ReducedToNowhereDegenerate"},
            {"citation", s.citation},
            {"summary", s.summary()}};
  o["reduced_to"] = s.reduced_to ? to_json(*s.reduced_to) : json(nullptr);
  return o;
}

json to_json(const DualGraph& g) {
  json vs = json::array(), es = json::array();
  for (int x : g.genus) vs.push_back({{"genus", x}});
  for (const auto& [a, b] : g.edges) es.push_back({a, b});
  return {{"vertices", vs}, {"edges", es}};
}

DualGraph graph_from(const json& j) {
  DualGraph g;
  for (const auto& v : array_field(j, "vertices")) g.genus.push_back(v.is_number() ? v.get<int>() : field(v, "genus").get<int>());
  if (j.contains("edges"))
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair of vertex indices");
      g.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
    }
  return g;
}

json to_json(const CurveData& c) {
  json gs = json::object();
  for (const auto& [v, g] : c.graphs) gs[v] = to_json(g);
  return {{"g", c.g}, {"graphs", gs}};
}

CurveData curve_data_from(const json& j) {
  CurveData c;
  c.g = field(j, "g").get<int>();
  for (const auto& [v, g] : field(j, "graphs").items()) c.graphs[v] = graph_from(g);
  return c;
}

json to_json(const CurveStatus& s) {
  return {{"status", s.kind == CurveStatus::Kind::HoldsByThmA3 ? "HoldsByThmA3" : "Unresolved"},
          {"witness_place", s.witness_place ? json(*s.witness_place) : json(nullptr)},
          {"citation", s.citation},
          {"summary", s.summary()}};
}

}  // namespace tropkit::io
