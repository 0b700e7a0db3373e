#include "tropkit/rank_calculus.hpp"

#include <numeric>
#include <set>

namespace tropkit {

int AbelianProfile::n(const std::string& place) const {
  auto it = torus_rank.find(place);
  return it == torus_rank.end() ? 0 : it->second;
}

AbelianProfile AbelianProfile::normalized() const {
  AbelianProfile out{dim, {}, simple};
  for (const auto& [v, k] : torus_rank)
    if (k != 0) out.torus_rank.emplace(v, k);
  return out;
}

bool operator==(const AbelianProfile& a, const AbelianProfile& b) {
  auto x = a.normalized();
  auto y = b.normalized();
  return x.dim == y.dim && x.torus_rank == y.torus_rank && x.simple == y.simple;
}

void validate_profile(const AbelianProfile& p) {
  if (p.dim < 0) throw Error(Errc::BadParams, "negative dimension");
  for (const auto& [v, k] : p.torus_rank)
    if (k < 0 || k > p.dim) throw Error(Errc::BadParams, "torus rank at " + v + " outside [0, dim]");
}

int abelian_rank(const AbelianProfile& p, const std::string& place) { return p.dim - p.n(place); }

AbelianProfile product_profile(const AbelianProfile& a, const AbelianProfile& b) {
  AbelianProfile out{a.dim + b.dim, a.torus_rank, false};
  for (const auto& [v, k] : b.torus_rank) out.torus_rank[v] += k;
  // a point factor changes nothing
  if (a.dim == 0) out.simple = b.simple;
  if (b.dim == 0) out.simple = a.simple;
  return out.normalized();
}

AbelianProfile trivial_profile() { return {}; }

namespace {

std::set<std::string> places(std::initializer_list<const AbelianProfile*> ps) {
  std::set<std::string> out;
  for (const auto* p : ps)
    for (const auto& [v, k] : p->torus_rank) out.insert(v);
  return out;
}

}  // namespace

bool check_exact_sequence(const AbelianProfile& p1, const AbelianProfile& p2, const AbelianProfile& p3) {
  if (p2.dim != p1.dim + p3.dim) return false;
  for (const auto& v : places({&p1, &p2, &p3})) {
    if (p2.n(v) != p1.n(v) + p3.n(v)) return false;
    if (abelian_rank(p2, v) != abelian_rank(p1, v) + abelian_rank(p3, v)) return false;
  }
  return true;
}

bool check_isogeny_invariant(const AbelianProfile& a, const AbelianProfile& b) {
  if (a.dim != b.dim) return false;
  for (const auto& v : places({&a, &b}))
    if (a.n(v) != b.n(v)) return false;
  return true;
}

bool is_nowhere_degenerate(const AbelianProfile& p) {
  for (const auto& [v, k] : p.torus_rank)
    if (k != 0) return false;
  return true;
}

AbelianProfile total_profile(const IsogenyDecomposition& d) {
  AbelianProfile out = trivial_profile();
  for (const auto& [p, m] : d.factors)
    for (int k = 0; k < m; ++k) out = product_profile(out, p);
  return out;
}

IsogenyDecomposition concat(const IsogenyDecomposition& a, const IsogenyDecomposition& b) {
  IsogenyDecomposition out = a;
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  return out;
}

namespace {

void check_factors(const IsogenyDecomposition& d) {
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const auto& [p, m] = d.factors[i];
    validate_profile(p);
    if (!p.simple) throw Error(Errc::NotSimpleFactor, "factor " + std::to_string(i) + " is not marked simple");
    if (m < 1) throw Error(Errc::BadParams, "factor " + std::to_string(i) + " has multiplicity below 1");
  }
}

}  // namespace

int ndr(const IsogenyDecomposition& d) {
  check_factors(d);
  int out = 0;
  for (const auto& [p, m] : d.factors)
    if (is_nowhere_degenerate(p)) out += m * p.dim;
  return out;
}

AbelianProfile max_nowhere_degenerate_profile(const IsogenyDecomposition& d) {
  check_factors(d);
  IsogenyDecomposition good;
  for (const auto& f : d.factors)
    if (is_nowhere_degenerate(f.first)) good.factors.push_back(f);
  return total_profile(good);
}

bool check_surjection_ndr(const IsogenyDecomposition& source, const IsogenyDecomposition& target) {
  return ndr(source) >= ndr(target);
}

std::string ConjectureStatus::summary() const {
  std::string k = kind == Kind::HoldsByNdrLeq1 ? "HoldsByNdrLeq1" : "ReducedToNowhereDegenerate";
  return "ndr=" + std::to_string(ndr) + "; " + k + " (" + citation + ")";
}

ConjectureStatus conjecture_status(const IsogenyDecomposition& d) {
  int r = ndr(d);
  if (r <= 1) return {ConjectureStatus::Kind::HoldsByNdrLeq1, r, std::nullopt, "Cor 7.9"};
  return {ConjectureStatus::Kind::ReducedToNowhereDegenerate, r, max_nowhere_degenerate_profile(d), "Thm 7.11"};
}

int jacobian_torus_rank(const DualGraph& g) {
  const std::size_t n = g.genus.size();
  if (n == 0) throw Error(Errc::BadParams, "graph without vertices");
  for (int x : g.genus)
    if (x < 0) throw Error(Errc::BadParams, "negative vertex genus");
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const auto& [a, b] : g.edges) {
    if (a >= n || b >= n) throw Error(Errc::BadParams, "edge names a missing vertex");
    auto ra = root(a), rb = root(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  if (components != 1) throw Error(Errc::Disconnected, "dual graph has " + std::to_string(components) + " components");
  return static_cast<int>(g.edges.size()) - static_cast<int>(n) + 1;
}

std::string CurveStatus::summary() const {
  if (kind == Kind::HoldsByThmA3) return "HoldsByThmA3 at " + *witness_place + " (" + citation + ")";
  return "Unresolved (" + citation + ")";
}

CurveStatus curve_status(const std::map<std::string, DualGraph>& graphs, int g) {
  std::optional<std::string> witness;
  for (const auto& [place, graph] : graphs) {
    int rank = jacobian_torus_rank(graph);
    int total = std::accumulate(graph.genus.begin(), graph.genus.end(), 0) + rank;
    if (total != g)
      throw Error(Errc::GenusMismatch, "graph at " + place + " has genus " + std::to_string(total) + ", expected " +
                                           std::to_string(g));
    if (rank > 0 && !witness) witness = place;
  }
  if (witness) return {CurveStatus::Kind::HoldsByThmA3, witness, "Thm A.3"};
  return {CurveStatus::Kind::Unresolved, std::nullopt, "Conjecture 7.12"};
}

}  // namespace tropkit
