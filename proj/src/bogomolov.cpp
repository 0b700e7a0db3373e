#include "tropkit/bogomolov.hpp"

#include <algorithm>

namespace tropkit {

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::TropicallyTrivial: return "TropicallyTrivial";
    case VerdictKind::ContradictionWitness: return "ContradictionWitness";
    case VerdictKind::Inconclusive: return "Inconclusive";
    case VerdictKind::InconsistentInput: return "InconsistentInput";
  }
  return "?";
}

bool is_tropically_trivial(const std::vector<PlaceTropData>& data) {
  return std::all_of(data.begin(), data.end(), [](const PlaceTropData& d) { return d.x.is_point(); });
}

namespace {

void require_stabilizer(const PlaceTropData& d) {
  if (!d.x.stabilizer_trivial)
    throw Error(Errc::StabilizerNotTrivial, "place " + d.place + ": pass data for X modulo its stabilizer");
}

}  // namespace

Verdict find_contradiction(const PlaceTropData& x, std::size_t N) {
  require_stabilizer(x);
  if (!x.x.measure) throw Error(Errc::NoMeasure, "place " + x.place + " has no measure");
  if (N < 2) throw Error(Errc::BadParams, "N must be at least 2");
  const auto& mu = *x.x.measure;
  const std::size_t n = mu.carrier()->ambient_dim;
  const std::size_t m = mu.terms().size();
  Verdict out{VerdictKind::Inconclusive, std::nullopt, "Thm6.2/Eq.6.2.1"};
  if (m == 0) return out;

  auto power = power_measure(mu, N);
  const auto& cells = power.carrier()->cells;
  // only cells P x ... x P meet the diagonal: distinct cells have disjoint relative interiors
  std::vector<std::pair<std::size_t, std::size_t>> diagonal;  // (index into terms, product id)
  for (const auto& s : strict_supports(power, *power.carrier())) {
    std::size_t id = s.cell, first = id % m;
    bool same = true;
    for (std::size_t k = 0; k < N; ++k, id /= m) same = same && id % m == first;
    if (same) diagonal.emplace_back(first, s.cell);
  }
  std::sort(diagonal.begin(), diagonal.end(), [&](const auto& a, const auto& b) {
    auto da = cells[a.second].dim(), db = cells[b.second].dim();
    return da != db ? da > db : a.second < b.second;
  });

  Lattice lat = mu.carrier()->lattice.value_or(Lattice::integer(n));
  auto alpha = AffineMap::linear_only(alpha_map(n, lat, N).linear);
  for (const auto& [term, id] : diagonal) {
    const Polytope& sigma = cells[id];
    std::size_t ds = sigma.dim(), da = image_dim(alpha, sigma);
    if (da < ds) {
      out.kind = VerdictKind::ContradictionWitness;
      out.witness = Witness{x.place, sigma, std::vector<std::size_t>(N, mu.terms()[term].first), ds, da, N};
      return out;
    }
  }
  return out;
}

Verdict bogomolov_check(const std::vector<PlaceTropData>& data, std::size_t N) {
  for (const auto& d : data) require_stabilizer(d);
  if (is_tropically_trivial(data)) return {VerdictKind::TropicallyTrivial, std::nullopt, "Def6.1"};
  Verdict last{VerdictKind::Inconclusive, std::nullopt, "Thm6.2/Eq.6.2.1"};
  for (const auto& d : data) {
    if (d.x.is_point()) continue;
    auto v = find_contradiction(d, N);
    if (v.kind == VerdictKind::ContradictionWitness) return v;
  }
  return last;
}

Verdict ConsistencyReport::verdict() const {
  if (clean()) return {VerdictKind::Inconclusive, std::nullopt, ""};
  return {VerdictKind::InconsistentInput, std::nullopt, findings.front().tag};
}

ConsistencyReport validate_nondeg_consistency(const TropSubvariety& x, const Carrier& sigma, const NondegData& nd) {
  if (!x.provenance) throw Error(Errc::MissingData, "no skeleton provenance");
  if (!x.measure) throw Error(Errc::MissingData, "no measure");
  const auto& sk = x.provenance->skeleton;
  const auto& fmaps = x.provenance->fmaps;
  ConsistencyReport rep;

  std::set<std::string> nondeg;
  try {
    nondeg = nondegenerate_set(sk, nd);
  } catch (const Error& e) {
    rep.findings.push_back({"NondegData", "", std::nullopt, e.what()});
    return rep;
  }

  struct Img {
    std::string id;
    int r;
    Polytope image;
    int dim;
  };
  std::vector<Img> images;
  for (const auto& s : sk.simplices) {
    auto it = fmaps.find(s.stratum_id);
    if (it == fmaps.end()) throw Error(Errc::MissingData, "no exponent map for simplex " + s.stratum_id);
    Polytope q = image_faff(it->second, standard_simplex(s.r, s.vpi));
    int computed = static_cast<int>(rank_faff(it->second));
    if (nd.at(s.stratum_id).image_dim != computed)
      rep.findings.push_back({"Remark4.3", s.stratum_id, std::nullopt,
                              "recorded image dimension " + std::to_string(nd.at(s.stratum_id).image_dim) +
                                  " differs from the exponent map rank " + std::to_string(computed)});
    images.push_back({s.stratum_id, s.r, q, static_cast<int>(q.dim())});
  }

  auto strict = strict_supports(*x.measure, sigma);
  std::set<std::size_t> strict_ids;
  for (const auto& s : strict) strict_ids.insert(s.cell);
  auto covers = [&](const Img& im, std::size_t cell) {
    return im.dim == static_cast<int>(sigma.cells[cell].dim()) && !sigma.translates_inside(cell, im.image).empty();
  };

  for (const auto& s : strict) {
    bool nondeg_cover = false;
    for (const auto& im : images) {
      if (!covers(im, s.cell)) continue;
      int recorded = nd.at(im.id).image_dim;
      if (im.dim != im.r || recorded != im.r)
        rep.findings.push_back({"Prop5.12", im.id, s.cell,
                                "strict support " + std::to_string(s.cell) + " lies in the image of " + im.id +
                                    " of equal dimension, but the simplex has dimension " + std::to_string(im.r) +
                                    " and recorded image dimension " + std::to_string(recorded)});
      if (nondeg.count(im.id)) nondeg_cover = true;
    }
    if (!nondeg_cover)
      rep.findings.push_back({"Lemma5.10", "", s.cell,
                              "strict support " + std::to_string(s.cell) +
                                  " is not covered by a non-degenerate simplex of equal image dimension"});
  }
  for (const auto& im : images) {
    if (!nondeg.count(im.id)) continue;
    for (std::size_t c = 0; c < sigma.cells.size(); ++c)
      if (covers(im, c) && !strict_ids.count(c))
        rep.findings.push_back({"Lemma5.10", im.id, c,
                                "cell " + std::to_string(c) + " in the image of non-degenerate " + im.id +
                                    " is not a strict support"});
  }
  return rep;
}

ConsistencyReport validate_nondeg_consistency(const TropSubvariety& x) {
  if (!x.provenance) throw Error(Errc::MissingData, "no skeleton provenance");
  return validate_nondeg_consistency(x, *x.carrier, x.provenance->nondeg);
}

Inference simple_degenerate_inference(const AbelianProfile& profile, const PlaceTropData& x) {
  if (!profile.simple) throw Error(Errc::NotSimple, "profile is not marked simple");
  if (profile.n(x.place) <= 0) throw Error(Errc::NotDegenerateHere, "torus rank at " + x.place + " is 0");
  if (x.x.is_point()) return {true, "X is a single point", "Lemma7.14"};
  return {false, "no inference", "Lemma7.14"};
}

}  // namespace tropkit
