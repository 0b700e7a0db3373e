#include <random>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace tropkit;
using namespace testutil;

namespace {

const ValueGroup Q = ValueGroup::rationals();

std::vector<Polytope> with_faces(const std::vector<Polytope>& tops) {
  std::vector<Polytope> out;
  for (const auto& t : tops)
    for (const auto& f : all_faces(t)) out.push_back(f);
  std::sort(out.begin(), out.end(), cell_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CarrierPtr plain_line(std::initializer_list<const char*> cuts) {
  std::vector<const char*> c(cuts);
  std::vector<Polytope> tops;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) tops.push_back(segment(c[i], c[i + 1]));
  return Carrier::plain(1, with_faces(tops));
}

std::size_t id_of(const CarrierPtr& c, const Polytope& p) {
  auto id = c->find(p);
  REQUIRE(id);
  return *id;
}

AffineMap scale1(const char* a, const char* b = "0") { return AffineMap(QMatrix::from_rows({q({a})}, 1), q({b})); }

PiecewiseAffineMap global(AffineMap m) { return PiecewiseAffineMap({{std::nullopt, std::move(m)}}); }

std::set<std::size_t> ids(const std::vector<StrictSupport>& s) {
  std::set<std::size_t> out;
  for (const auto& x : s) out.insert(x.cell);
  return out;
}

}  // namespace

TEST_CASE("delta examples") {
  auto c = Carrier::plain(2, {hull({{"0", "0"}, {"1", "0"}}), point({"3", "3"}), hull({{"0", "0"}, {"2", "2"}})});
  CHECK(delta(0, c).mass() == 1);
  CHECK(delta(1, c).mass() == 1);
  // the diagonal from (0,0) to (2,2) contains 3 lattice points, so 2 lattice steps
  int steps = 0;
  for (int t = 1; t <= 2; ++t) steps += c->cells[2].contains(QVector{Rat(t), Rat(t)});
  CHECK(delta(2, c).mass() == steps);
  CHECK(code_of([&] { delta(7, c); }) == Errc::UnknownCell);
  CHECK(code_of([&] { delta(segment("0", "1"), c); }) == Errc::UnknownCell);
}

TEST_CASE("combine examples") {
  auto c = plain_line({"0", "1", "2"});
  auto s = id_of(c, segment("0", "1"));
  auto t = id_of(c, segment("1", "2"));
  auto mu = combine({{Rat(1), delta(s, c)}, {Rat(1, 2), delta(t, c)}});
  CHECK(combine({{Rat(1), mu}}).terms() == mu.terms());
  auto nu = delta(t, c);
  CHECK(combine({{Rat(0), mu}, {Rat(1), nu}}).terms() == nu.terms());
  CHECK(combine({{Rat(2), delta(s, c)}, {Rat(3), delta(s, c)}}).terms() ==
        std::vector<PolytopalMeasure::Term>{{s, Rat(5)}});
  auto other = plain_line({"0", "3"});
  CHECK(code_of([&] { combine({{Rat(1), mu}, {Rat(1), delta(0, other)}}); }) == Errc::CarrierMismatch);
}

TEST_CASE("product_measure examples") {
  auto c = plain_line({"0", "1"});
  auto s = id_of(c, segment("0", "1"));
  auto sq = product_measure(delta(s, c), delta(s, c));
  REQUIRE(sq.terms().size() == 1);
  CHECK(sq.carrier()->cells[sq.terms()[0].first] == box(q({"0", "0"}), q({"1", "1"})));
  CHECK(sq.mass() == 1);

  auto two = plain_line({"0", "1", "3"});
  auto a = id_of(two, segment("0", "1"));
  auto b = id_of(two, segment("1", "3"));
  auto p = product_measure(combine({{Rat(2), delta(a, two)}}), combine({{Rat(3), delta(b, two)}}));
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms()[0].second == 6);
  CHECK(p.carrier()->cells[p.terms()[0].first] == box(q({"0", "1"}), q({"1", "3"})));

  auto prob1 = combine({{Rat(1, 3), delta(b, two)}, {Rat(1, 3), delta(a, two)}});
  CHECK(prob1.mass() == 1);
  CHECK(product_measure(prob1, prob1).mass() == 1);
  CHECK(power_measure(prob1, 3).mass() == 1);
}

TEST_CASE("pushforward_exact examples") {
  auto c = plain_line({"0", "1/2", "1"});
  auto mu = combine({{Rat(1), delta(id_of(c, segment("0", "1/2")), c)}, {Rat(3), delta(id_of(c, segment("1/2", "1")), c)}});
  auto same = pushforward_exact(mu, global(AffineMap::identity(1)), c);
  CHECK(same.terms() == mu.terms());

  auto unit = plain_line({"0", "1"});
  auto target = plain_line({"0", "2"});
  auto pushed = pushforward_exact(delta(id_of(unit, segment("0", "1")), unit), global(scale1("2")), target);
  REQUIRE(pushed.terms().size() == 1);
  CHECK(pushed.terms()[0].second == Rat(1, 2));
  CHECK(pushed.mass() == 1);

  auto sqc = Carrier::plain(2, {box(q({"0", "0"}), q({"1", "1"}))});
  auto proj = global(AffineMap::linear_only(QMatrix::from_rows({q({"1", "0"})}, 2)));
  CHECK(code_of([&] { pushforward_exact(delta(0, sqc), proj, unit); }) == Errc::NonInjectivePiece);

  CHECK(code_of([&] { pushforward_exact(delta(id_of(unit, segment("0", "1")), unit), global(scale1("2")), c); }) ==
        Errc::TargetNotSubdivisional);
  PiecewiseAffineMap half({{segment("0", "1/2"), AffineMap::identity(1)}});
  CHECK(code_of([&] { pushforward_exact(delta(id_of(unit, segment("0", "1")), unit), half, unit); }) ==
        Errc::DomainNotCovered);
}

TEST_CASE("pushforward_exact on the torus counts wrapped translates") {
  // [0,1] doubled onto R/Z covers the circle twice
  auto circle = Carrier::periodic(Lattice::integer(1), with_faces({segment("0", "1/2"), segment("1/2", "1")}));
  auto unit = plain_line({"0", "1"});
  auto mu = delta(id_of(unit, segment("0", "1")), unit);
  auto pushed = pushforward_exact(mu, global(scale1("2")), circle);
  CHECK(pushed.mass() == 1);
  CHECK(pushed.weight(id_of(circle, segment("0", "1/2"))) == 1);
  CHECK(pushed.weight(id_of(circle, segment("1/2", "1"))) == 1);
}

TEST_CASE("piecewise push-forward conserves mass") {
  // [0,1] -> [0,1] and [1,2] -> [1,3]
  PiecewiseAffineMap f({{segment("0", "1"), AffineMap::identity(1)}, {segment("1", "2"), scale1("2", "-1")}});
  auto mu = delta(0, Carrier::plain(1, {segment("0", "2")}));
  auto target = make_subdivisional(*Carrier::plain(1, {segment("0", "5")}), {segment("0", "1"), segment("1", "3")});
  auto pushed = pushforward_exact(mu, f, target);
  CHECK(pushed.mass() == mu.mass());
  CHECK(pushed.weight(id_of(target, segment("1", "3"))) == Rat(1, 2));
  CHECK(pushed.weight(id_of(target, segment("0", "1"))) == 1);
}

TEST_CASE("cells on a wall between domains are transported once") {
  PiecewiseAffineMap f({{segment("0", "1"), AffineMap::identity(1)}, {segment("1", "2"), scale1("2", "-1")}});
  auto src = Carrier::plain(1, with_faces({segment("0", "1"), segment("1", "2")}));
  auto mu = combine({{Rat(1), delta(point({"1"}), src)}, {Rat(1, 2), delta(segment("0", "1"), src)}});
  auto target = make_subdivisional(*Carrier::plain(1, with_faces({segment("-1", "4")})), {segment("0", "1")});
  auto pushed = pushforward_exact(mu, f, target);
  CHECK(pushed.mass() == mu.mass());
  CHECK(pushed.weight(id_of(target, point({"1"}))) == 1);
}

TEST_CASE("pushforward_support examples") {
  auto sqc = Carrier::plain(2, {box(q({"0", "0"}), q({"1", "1"})), hull({{"0", "0"}, {"1", "1"}})});
  auto proj = global(AffineMap::linear_only(QMatrix::from_rows({q({"1", "0"})}, 2)));
  auto s = pushforward_support(delta(0, sqc), proj);
  REQUIRE(s.size() == 1);
  CHECK(s[0].image == segment("0", "1"));
  CHECK(s[0].dim == 1);

  auto id = pushforward_support(combine({{Rat(1), delta(0, sqc)}, {Rat(1), delta(1, sqc)}}), global(AffineMap::identity(2)));
  REQUIRE(id.size() == 2);
  CHECK(id[0].image == sqc->cells[0]);
  CHECK(id[1].dim == 1);

  auto alpha = alpha_map(1, Lattice::integer(1), 2);
  auto diag = pushforward_support(delta(1, sqc), global(AffineMap::linear_only(alpha.linear)));
  REQUIRE(diag.size() == 1);
  CHECK(diag[0].dim == 0);
}

TEST_CASE("strict_supports examples") {
  auto c = plain_line({"0", "1", "2"});
  auto s1 = id_of(c, segment("0", "1"));
  auto s2 = id_of(c, segment("1", "2"));
  auto mu = PolytopalMeasure(c, {{s1, Rat(2)}, {s2, Rat(0)}});
  auto ss = strict_supports(mu, *c);
  CHECK(ss == std::vector<StrictSupport>{{s1, Rat(2)}});

  auto unit = plain_line({"0", "1"});
  auto halves = plain_line({"0", "1/2", "1"});
  auto re = strict_supports(delta(id_of(unit, segment("0", "1")), unit), *halves);
  CHECK(re == std::vector<StrictSupport>{{id_of(halves, segment("0", "1/2")), Rat(1)},
                                         {id_of(halves, segment("1/2", "1")), Rat(1)}});
  CHECK(code_of([&] { strict_supports(delta(id_of(halves, segment("0", "1/2")), halves), *plain_line({"0", "1"})); }) ==
        Errc::NotExpressible);
}

TEST_CASE("strict supports of a product grid agree with the brute-force search") {
  auto circle = Carrier::periodic(Lattice::scaled(1, 2), with_faces({segment("0", "1"), segment("1", "2")}));
  auto a = id_of(circle, segment("0", "1"));
  auto b = id_of(circle, segment("1", "2"));
  auto mu = combine({{Rat(1), delta(a, circle)}, {Rat(2), delta(b, circle)}});
  auto prod = product_measure(mu, mu);
  const Carrier& grid = *prod.carrier();
  auto ss = strict_supports(prod, grid);
  CHECK(ids(ss) == oracle::strict_supports_by_search(prod, grid));
  for (const auto& s : ss) CHECK(grid.cells[s.cell].dim() == 2);
  CHECK(ss.size() == 4);

  // products of strict supports, both directions
  auto factor = ids(strict_supports(mu, *circle));
  std::set<std::size_t> expected;
  for (auto i : factor)
    for (auto j : factor) expected.insert(i * circle->cells.size() + j);
  CHECK(ids(ss) == expected);
}

TEST_CASE("make_subdivisional examples") {
  auto s0 = Carrier::plain(1, with_faces({segment("0", "2")}));
  auto s = make_subdivisional(*s0, {segment("0", "1")});
  CHECK(s->cells == with_faces({segment("0", "1"), segment("1", "2")}));

  CHECK(make_subdivisional(*s, {segment("1", "2")})->cells == s->cells);

  auto two = make_subdivisional(*s0, {segment("1/2", "3/2"), segment("1", "2")});
  CHECK(two->cells == with_faces({segment("0", "1/2"), segment("1/2", "1"), segment("1", "3/2"), segment("3/2", "2")}));

  // overlapping squares: every overlay cell of the two images is a union of output cells
  auto big = Carrier::plain(2, with_faces({box(q({"0", "0"}), q({"3", "3"}))}));
  auto r = box(q({"0", "0"}), q({"2", "2"}));
  auto t = box(q({"1", "1"}), q({"3", "3"}));
  auto sub = make_subdivisional(*big, {r, t});
  auto overlap = *intersect(r, t);
  for (const auto& img : {r, t, overlap}) {
    Rat covered = 0;
    for (std::size_t i = 0; i < sub->cells.size(); ++i)
      if (sub->cells[i].dim() == 2 && is_subset(sub->cells[i], img)) covered += normalized_volume(sub->cells[i]);
    CHECK(covered == normalized_volume(img));
  }
  std::size_t tops = 0;
  for (const auto& c : sub->cells) tops += c.dim() == 2;
  CHECK(tops == 9);
}

TEST_CASE("assemble_canonical examples") {
  SkeletonModel seg;
  seg.d = 1;
  seg.strata = {{"S", 0, {}}};
  seg.simplices = {{"S", 1, 1}};
  FaffTable f{{"S", ExponentMap(QMatrix::from_rows({q({"1"})}, 1), q({"0"}))}};
  auto target = Carrier::periodic(Lattice::scaled(1, 2), with_faces({segment("0", "1"), segment("1", "2")}));
  auto x = assemble_canonical(seg, {{"S", {1, 0}}}, {}, f, target);
  REQUIRE(x.support.size() == 1);
  CHECK(target->cells[x.support[0]] == segment("0", "1"));
  CHECK(x.measure->mass() == 1);
  CHECK(x.dim == 1);

  // two simplices with equal weights onto the same segment
  SkeletonModel pair;
  pair.d = 1;
  pair.strata = {{"A", 0, {}}, {"B", 0, {}}};
  pair.simplices = {{"A", 1, 1}, {"B", 1, 1}};
  FaffTable g{{"A", ExponentMap(QMatrix::from_rows({q({"1"})}, 1), q({"0"}))},
              {"B", ExponentMap(QMatrix::from_rows({q({"-1"})}, 1), q({"1"}))}};
  auto base = assemble_canonical(seg, {{"S", {1, 0}}}, {{"S", Rat(5)}}, f, target);
  auto both = assemble_canonical(pair, {{"A", {1, 0}}, {"B", {1, 0}}}, {{"A", Rat(5)}, {"B", Rat(5)}}, g, target);
  std::map<std::size_t, Rat> unnormalized;
  for (const auto& [id, w] : both.measure->terms()) unnormalized[id] = w * 10;  // total mass 10 before normalizing
  CHECK(unnormalized[x.support[0]] == 2 * 5);
  CHECK(both.measure->terms() == base.measure->terms());

  // only an r = 0 simplex is non-degenerate
  SkeletonModel node;
  node.d = 1;
  node.strata = {{"S0", 0, {}}, {"S1", 1, {}}, {"S2", 1, {}}};
  node.simplices = {{"S0", 1, 1}, {"S1", 0, 1}, {"S2", 0, 1}};
  node.incidence = {{"S1", "S0", AffineMap(QMatrix(1, 0), q({"0"}))}, {"S2", "S0", AffineMap(QMatrix(1, 0), q({"1"}))}};
  FaffTable h{{"S0", ExponentMap(QMatrix(1, 1), q({"0"}))},
              {"S1", ExponentMap(QMatrix(1, 0), q({"0"}))},
              {"S2", ExponentMap(QMatrix(1, 0), q({"0"}))}};
  auto dirac = assemble_canonical(node, {{"S0", {0, 0}}, {"S1", {0, 1}}, {"S2", {0, 0}}}, {}, h, target);
  CHECK(dirac.is_point());
  CHECK(dirac.measure->mass() == 1);

  CHECK(code_of([&] { assemble_canonical(node, {{"S0", {0, 0}}, {"S1", {0, 1}}, {"S2", {0, 0}}}, {{"S2", Rat(1)}}, h,
                                         target); }) == Errc::DegenerateWeighted);
  CHECK(code_of([&] { assemble_canonical(pair, {{"A", {1, 0}}, {"B", {1, 0}}}, {{"A", Rat(1)}}, g, target); }) ==
        Errc::MissingWeight);
  CHECK(code_of([&] { assemble_canonical(seg, {{"S", {0, 0}}}, {}, f, target); }) == Errc::EmptySupport);
  auto coarse = Carrier::periodic(Lattice::scaled(1, 2), with_faces({segment("0", "1/2"), segment("1/2", "2")}));
  CHECK(code_of([&] { assemble_canonical(seg, {{"S", {1, 0}}}, {}, f, coarse); }) == Errc::NotSubdivisional);
}

TEST_CASE("property: mass conservation, oracle agreement and re-expression invariance") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> small(1, 3);
  for (int t = 0; t < 20; ++t) {
    // random triangle in the plane pushed by a random invertible integer map
    std::vector<QVector> pts;
    while (true) {
      pts.clear();
      for (int k = 0; k < 3; ++k) pts.push_back(QVector{Rat(small(rng), 2), Rat(small(rng) - 2, 3)});
      if (polytope_from_vertices(pts).dim() == 2) break;
    }
    Polytope tri = polytope_from_vertices(pts);
    QMatrix a(2, 2);
    do {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) a(i, j) = small(rng) - 2;
    } while (determinant(a) == 0);
    AffineMap g(a, QVector{Rat(1, 3), Rat(0)});
    auto src = Carrier::plain(2, with_faces({tri}));
    auto mu = delta(tri, src);
    Polytope img = apply_affine(g, tri);
    std::vector<QVector> corners;
    for (const auto& v : img.vertices()) corners.push_back(v);
    auto frame = Carrier::plain(2, with_faces({box(q({"-6", "-6"}), q({"6", "6"}))}));
    auto target = make_subdivisional(*frame, {img});
    auto pushed = pushforward_exact(mu, global(g), target);
    CHECK(pushed.mass() == mu.mass());

    auto ss = strict_supports(pushed, *target);
    CHECK(ids(ss) == oracle::strict_supports_by_search(pushed, *target));

    // finer subdivision: the union of strict supports is unchanged
    auto finer = make_subdivisional(*target, {box(q({"0", "0"}), q({"1", "1"}))});
    Rat before = 0, after = 0;
    for (const auto& s : ss) before += normalized_volume(target->cells[s.cell]);
    for (const auto& s : strict_supports(pushed, *finer)) after += normalized_volume(finer->cells[s.cell]);
    CHECK(before == after);
    CHECK(before == normalized_volume(img));
  }
}
