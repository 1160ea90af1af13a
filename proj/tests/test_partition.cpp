#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "binhk/hk.hpp"
#include "binhk/partition.hpp"

using namespace binhk;

namespace {

AffElem elem(ZVec free) {
  AffElem e;
  e.free = std::move(free);
  return e;
}

AffineMonoid planar(std::vector<std::pair<long, long>> gens) {
  std::vector<AffElem> g;
  for (auto [x, y] : gens) g.push_back(elem({Int(x), Int(y)}));
  return make_affine_monoid(2, {}, std::move(g));
}

AffineMonoid numerical(std::vector<long> gens) {
  std::vector<AffElem> g;
  for (long x : gens) g.push_back(elem({Int(x)}));
  return make_affine_monoid(1, {}, std::move(g));
}

// Independent oracle: connectivity of a component under q-scaled
// generator moves, by label propagation over its point list. Joins of two
// generators can sit above the component window, so the oracle enumerates
// its own, larger point list and widens it if needed.
bool connected_points(const AffineMonoid &m, Coord q,
                      const std::vector<AffElem> &pts);

bool component_connected(const AffineMonoid &m, const QComponent &c) {
  if (c.points.empty()) return true;
  Int window = 0;
  for (const AffElem &p : c.points)
    window = std::max(window, aff_level(m, p));
  LatticeCoords lc = diff_lattice_coords(m);
  const AffElem &p0 = c.points.front();
  for (int grow = 0; grow < 2; ++grow) {
    window *= 2;
    std::vector<AffElem> pts;
    for (const AffElem &x : enumerate_members(m, window)) {
      ZVec diff(m.d);
      for (std::size_t i = 0; i < m.d; ++i) diff[i] = x.free[i] - p0.free[i];
      auto coords = lattice_coordinates(lc.basis, diff);
      bool same = coords.has_value();
      if (same)
        for (const Int &r : *coords)
          if (r % Int((long)c.q) != 0) same = false;
      if (same) pts.push_back(x);
    }
    if (connected_points(m, c.q, pts)) return true;
  }
  return false;
}

bool connected_points(const AffineMonoid &m, Coord q,
                      const std::vector<AffElem> &points) {
  if (points.empty()) return true;
  std::map<AffElem, int> index;
  for (const AffElem &p : points) index.emplace(p, (int)index.size());
  std::vector<int> parent(points.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = (int)i;
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const AffElem &p : points) {
    for (const AffElem &g : m.generators) {
      AffElem s;
      s.free.resize(m.d);
      for (std::size_t i = 0; i < m.d; ++i)
        s.free[i] = p.free[i] + Int((long)q) * g.free[i];
      auto it = index.find(s);
      if (it == index.end()) continue;
      parent[find(index.at(p))] = find(it->second);
    }
  }
  int root = find(0);
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (find((int)i) != root) return false;
  return true;
}

}  // namespace

TEST_CASE("free planar monoid splits into q^2 free components") {
  AffineMonoid m = planar({{1, 0}, {0, 1}});
  auto comps = components(m, 3);
  CHECK(comps.size() == 9);
  for (const QComponent &c : comps) {
    CHECK(c.minimal_generators.size() == 1);
    // The single generator is the anchor itself.
    CHECK(c.minimal_generators[0].free == c.anchor);
  }
  IsoClassReport r = iso_classes(comps);
  CHECK(r.classes.size() == 1);
  CHECK(r.classes[0].multiplicity == 9);
  CHECK(!r.ambiguous);
}

TEST_CASE("numerical semigroup components carry q n1 generators") {
  AffineMonoid m = numerical({2, 3});
  auto comps = components(m, 5);
  CHECK(comps.size() == 5);
  long long total = 0;
  for (const QComponent &c : comps) total += c.minimal_generators.size();
  CHECK(total == 10);
  CHECK(hkf_via_generators(m, 5) == hkf(m, {elem({Int(2)}), elem({Int(3)})}, 5));
  // All components are isomorphic to the normalization here.
  IsoClassReport r = iso_classes(comps);
  for (const IsoClass &c : r.classes) CHECK(c.generator_count == 2);
}

TEST_CASE("component of zero in the planar example matches the normalization") {
  // For even q the q-contracted chart of the component of 0 looks like
  // all of the plane quadrant (the normalization); for odd q the point
  // (1,0) of the chart is missing, because (q,0) is not in the monoid.
  AffineMonoid m = planar({{2, 0}, {3, 2}, {3, 3}, {2, 3}, {0, 2}});
  auto chart = [&](Coord q) {
    std::set<std::pair<long, long>> out;
    for (const QComponent &c : components(m, q)) {
      if (c.anchor != ZVec{Int(0), Int(0)}) continue;
      for (const AffElem &p : c.points) {
        Int a = p.free[0] / (long)q, b = p.free[1] / (long)q;
        if (a <= 2 && b <= 2) out.insert({a.get_si(), b.get_si()});
      }
    }
    return out;
  };
  std::set<std::pair<long, long>> full;
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; b <= 2; ++b) full.insert({a, b});
  CHECK(chart(4) == full);
  CHECK(chart(6) == full);
  auto odd = chart(5);
  CHECK(!odd.count({1, 0}));
}

TEST_CASE("generator census equals the Hilbert-Kunz function") {
  std::vector<AffineMonoid> catalog = {
      planar({{1, 0}, {0, 1}}),
      numerical({2, 3}),
      numerical({3, 7}),
      numerical({3, 4, 5}),
      planar({{2, 0}, {0, 2}, {1, 1}}),
      planar({{1, 0}, {1, 5}}),
  };
  for (const AffineMonoid &m : catalog) {
    std::vector<AffElem> np(m.generators.begin(), m.generators.end());
    for (Coord q : {2, 3, 7, 11}) {
      CHECK(hkf_via_generators(m, q) == hkf(m, np, q));
    }
  }
}

TEST_CASE("components are irreducible within the window") {
  std::vector<AffineMonoid> catalog = {
      numerical({2, 3}),
      planar({{2, 0}, {0, 2}, {1, 1}}),
      planar({{2, 0}, {3, 2}, {3, 3}, {2, 3}, {0, 2}}),
  };
  for (const AffineMonoid &m : catalog)
    for (Coord q : {2, 3}) {
      for (const QComponent &c : components(m, q))
        CHECK(component_connected(m, c));
    }
}

TEST_CASE("iso class count stays bounded in q") {
  AffineMonoid m = planar({{2, 0}, {0, 2}, {1, 1}});
  std::size_t max_classes = 0;
  for (Coord q : {8, 10, 12, 14, 16}) {
    IsoClassReport r = iso_classes(components(m, q));
    max_classes = std::max(max_classes, r.classes.size());
    long long total = 0;
    for (const IsoClass &c : r.classes) total += c.multiplicity;
    CHECK(total == (long long)components(m, q).size());
  }
  // The census stabilizes: a handful of types, never one per component.
  CHECK(max_classes <= 4);
}

TEST_CASE("generator coordinates stay inside the window bound") {
  AffineMonoid m = planar({{2, 0}, {3, 2}, {3, 3}, {2, 3}, {0, 2}});
  for (Coord q : {2, 3, 5}) {
    for (const QComponent &c : components(m, q))
      for (const AffElem &g : c.minimal_generators)
        for (const Int &x : g.free) CHECK(x <= Int((long)(30 * q)));
  }
}

TEST_CASE("gap formula in the equality case") {
  // The 3x3 block without the origin: all eight gaps primary, d = k + p.
  std::vector<ZVec> gaps;
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; b <= 2; ++b)
      if (a || b) gaps.push_back({Int(a), Int(b)});
  GapFormulaCheck r = gap_formula_check(2, gaps, 7);
  CHECK(r.p == 8);
  CHECK(r.d == 10);
  CHECK(r.d == 2 + r.p);
  CHECK(r.predicted == r.actual);
  CHECK(r.bounds_ok);
  GapFormulaCheck r2 = gap_formula_check(2, gaps, 11);
  CHECK(r2.predicted == r2.actual);
}

TEST_CASE("gap formula in the strict inequality case") {
  std::vector<ZVec> gaps = {{Int(1), Int(0)},
                            {Int(2), Int(0)},
                            {Int(0), Int(1)},
                            {Int(1), Int(1)},
                            {Int(0), Int(2)}};
  GapFormulaCheck r = gap_formula_check(2, gaps, 9);
  // Every one of the five gaps is primary by the definition: each
  // candidate difference of two distinct gaps is itself a gap.
  CHECK(r.p == 5);
  CHECK(r.d == 9);
  CHECK(2 + r.p < r.d);
  CHECK(r.d < 2 * (r.p + 1));
  CHECK(r.predicted == r.actual);
  CHECK(r.bounds_ok);
}

TEST_CASE("gap formula without gaps") {
  GapFormulaCheck r = gap_formula_check(2, {}, 5);
  CHECK(r.p == 0);
  CHECK(r.d == 2);
  CHECK(r.predicted == 25);
  CHECK(r.actual == 25);
  GapFormulaCheck r3 = gap_formula_check(3, {}, 3);
  CHECK(r3.actual == 27);
  CHECK(r3.d == 3);
}

TEST_CASE("gap input validation") {
  CHECK_THROWS_AS(gap_formula_check(2, {ZVec{Int(0), Int(0)}}, 5),
                  ValidationError);
  CHECK_THROWS_AS(gap_formula_check(2, {ZVec{Int(4), Int(0)}}, 3),
                  ValidationError);
}
