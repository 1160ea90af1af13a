#include "binhk/partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace binhk {

namespace {

Int zdot(const ZVec &a, const ZVec &b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int math_mod(const Int &a, const Int &q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r;
}

std::string zvec_str(const ZVec &v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

}  // namespace

std::vector<QComponent> components(const AffineMonoid &m, Coord q) {
  if (!m.torsion.empty())
    throw ValidationError("partition needs a torsion-free monoid");
  if (m.d == 0 || q < 1) throw ValidationError("bad partition input");

  // Window constant: conductor level plus the extremal levels of the
  // Hilbert basis and of the generators, all in the monoid grading.
  NormalizationResult nr = normalization(m);
  Int wc = aff_level(m, conductor_element(m));
  Int hb_max = 0, gen_max = 0;
  for (const HilbertWitness &w : nr.witnesses)
    hb_max = std::max(hb_max, zdot(m.grading, w.h.free));
  for (const AffElem &g : m.generators)
    gen_max = std::max(gen_max, aff_level(m, g));
  Int shape_cap = wc + hb_max + gen_max + 1;
  // Twice the generator window, so that the level-capped local shape of
  // every component sits strictly inside the enumerated region.
  Int window = 2 * shape_cap * Int((long)q);

  std::set<AffElem> members = enumerate_members(m, window);

  // Cosets of q times the difference lattice, not of q Z^d: for monoids
  // whose lattice is a proper sublattice the two gradings of residue
  // differ, and only the lattice one matches the irreducible components.
  LatticeCoords lc = diff_lattice_coords(m);

  Int qi((long)q);
  std::map<ZVec, QComponent> buckets;
  for (const AffElem &x : members) {
    auto coords = lattice_coordinates(lc.basis, x.free);
    if (!coords) throw ValidationError("internal: member outside the lattice");
    ZVec res(coords->size());
    for (std::size_t i = 0; i < res.size(); ++i)
      res[i] = math_mod((*coords)[i], qi);
    QComponent &c = buckets[res];
    c.q = q;
    if (c.anchor.empty()) {
      // Ambient representative of the coset, reduced into [0,q)^d.
      ZVec amb(m.d, Int(0));
      for (std::size_t i = 0; i < res.size(); ++i)
        for (std::size_t j = 0; j < m.d; ++j)
          amb[j] += res[i] * lc.basis[i][j];
      for (std::size_t j = 0; j < m.d; ++j) amb[j] = math_mod(amb[j], qi);
      c.anchor = std::move(amb);
    }
    c.grading = m.grading;
    c.shape_cap = shape_cap;
    c.points.push_back(x);
  }

  std::vector<QComponent> out;
  for (auto &[res, c] : buckets) {
    for (const AffElem &e : c.points) {
      bool minimal = true;
      for (const AffElem &g : m.generators) {
        AffElem d;
        d.free.resize(m.d);
        for (std::size_t i = 0; i < m.d; ++i)
          d.free[i] = e.free[i] - qi * g.free[i];
        if (aff_level(m, d) < 0) continue;
        // level(d) <= window, so the member set is authoritative.
        if (members.count(d)) {
          minimal = false;
          break;
        }
      }
      if (minimal) c.minimal_generators.push_back(e);
    }
    out.push_back(std::move(c));
  }
  return out;
}

long long hkf_via_generators(const AffineMonoid &m, Coord q) {
  long long total = 0;
  for (const QComponent &c : components(m, q))
    total += (long long)c.minimal_generators.size();
  return total;
}

IsoClassReport iso_classes(const std::vector<QComponent> &comps) {
  std::map<std::string, IsoClass> buckets;
  for (const QComponent &c : comps) {
    Int qi((long)c.q);
    std::size_t d = c.anchor.size();
    // Generators and points in the q-contracted chart of the component:
    // (x - anchor)/q is an integer vector for every point.
    std::vector<ZVec> gens_q;
    for (const AffElem &g : c.minimal_generators) {
      ZVec v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = (g.free[i] - c.anchor[i]) / qi;
      gens_q.push_back(std::move(v));
    }
    ZVec base = gens_q.empty() ? ZVec(d, Int(0)) : gens_q[0];
    for (const ZVec &v : gens_q)
      for (std::size_t i = 0; i < d; ++i) base[i] = std::min(base[i], v[i]);
    for (ZVec &v : gens_q)
      for (std::size_t i = 0; i < d; ++i) v[i] -= base[i];
    std::sort(gens_q.begin(), gens_q.end());
    // Lowest generator level after translation, the reference point of the
    // level cap below.
    Int gmin;
    bool have_gmin = false;
    for (const ZVec &v : gens_q) {
      Int lev = zdot(c.grading, v);
      if (!have_gmin || lev < gmin) {
        gmin = lev;
        have_gmin = true;
      }
    }
    if (!have_gmin) gmin = 0;
    // Bounded local shape: chart points whose translated level stays
    // within the cap. The criterion only involves level differences, so
    // it does not depend on the enumeration window.
    std::vector<ZVec> shape;
    for (const AffElem &p : c.points) {
      ZVec v(d);
      for (std::size_t i = 0; i < d; ++i)
        v[i] = (p.free[i] - c.anchor[i]) / qi - base[i];
      if (zdot(c.grading, v) <= gmin + c.shape_cap) shape.push_back(std::move(v));
    }
    std::sort(shape.begin(), shape.end());
    std::ostringstream sig;
    sig << "g:";
    for (const ZVec &v : gens_q) sig << zvec_str(v);
    sig << ";s:";
    for (const ZVec &v : shape) sig << zvec_str(v);
    IsoClass &cls = buckets[sig.str()];
    cls.signature = sig.str();
    cls.multiplicity += 1;
    cls.generator_count = c.minimal_generators.size();
  }
  IsoClassReport out;
  for (auto &[sig, cls] : buckets) out.classes.push_back(cls);
  for (std::size_t i = 0; i < out.classes.size() && !out.ambiguous; ++i)
    for (std::size_t j = i + 1; j < out.classes.size(); ++j)
      if (out.classes[i].generator_count == out.classes[j].generator_count) {
        out.ambiguous = true;
        break;
      }
  return out;
}

GapFormulaCheck gap_formula_check(int k, const std::vector<ZVec> &gaps,
                                  Coord q) {
  std::set<ZVec> gapset(gaps.begin(), gaps.end());
  if (gapset.count(ZVec(k, Int(0))))
    throw ValidationError("zero cannot be a gap");
  Int G = 0;
  for (const ZVec &g : gaps)
    for (const Int &x : g) {
      if (x < 0) throw ValidationError("negative gap coordinate");
      G = std::max(G, x);
    }
  if (Int((long)q) <= G)
    throw ValidationError("q must exceed every gap coordinate");

  auto in_N = [&](const ZVec &v) {
    for (const Int &x : v)
      if (x < 0) return false;
    return gapset.count(v) == 0;
  };
  auto is_zero = [&](const ZVec &v) {
    for (const Int &x : v)
      if (x != 0) return false;
    return true;
  };

  GapFormulaCheck out;
  long long n = (long long)gaps.size();

  // Primary gaps: b with no other gap a such that b - a lands in N \ {0}.
  for (const ZVec &b : gaps) {
    bool primary = true;
    for (const ZVec &a : gaps) {
      if (a == b) continue;
      ZVec diff(k);
      for (int i = 0; i < k; ++i) diff[i] = b[i] - a[i];
      if (!is_zero(diff) && in_N(diff)) {
        primary = false;
        break;
      }
    }
    if (primary) ++out.p;
  }

  // Generators of the punctured cone as an N-set: e != 0 such that no
  // nonzero v in N has v <= e and v != e. Any e with a coordinate of at
  // least 2(G+1) is reducible through (G+1) times a unit vector, so the
  // box [0, 2G+1]^k is exhaustive.
  {
    Int side = 2 * G + 2;
    ZVec e(k, Int(0));
    while (true) {
      if (!is_zero(e)) {
        bool minimal = true;
        ZVec v(k, Int(0));
        while (minimal) {
          bool done = true;
          for (int i = k - 1; i >= 0; --i) {
            if (v[i] < e[i]) {
              ++v[i];
              for (int j = i + 1; j < k; ++j) v[j] = 0;
              done = false;
              break;
            }
          }
          if (done) break;
          if (v != e && in_N(v)) minimal = false;
        }
        if (minimal) ++out.d;
      }
      int i = k - 1;
      for (; i >= 0; --i) {
        if (e[i] + 1 < side) {
          ++e[i];
          for (int j = i + 1; j < k; ++j) e[j] = 0;
          break;
        }
      }
      if (i < 0) break;
    }
  }

  // Actual census of N/[q]N_+. Survivors have every coordinate below
  // q(G+2): a larger coordinate admits the deduction of q(G+1) times a
  // unit vector inside N.
  {
    Int side = Int((long)q) * (G + 2);
    Int vside = (side / Int((long)q)) + 1;
    ZVec e(k, Int(0));
    while (true) {
      if (in_N(e)) {
        bool covered = false;
        ZVec v(k, Int(0));
        while (!covered) {
          bool done = true;
          for (int i = k - 1; i >= 0; --i) {
            if (v[i] + 1 < vside) {
              ++v[i];
              for (int j = i + 1; j < k; ++j) v[j] = 0;
              done = false;
              break;
            }
          }
          if (done) break;
          if (!in_N(v)) continue;
          ZVec rest(k);
          bool ok = true;
          for (int i = 0; i < k; ++i) {
            rest[i] = e[i] - Int((long)q) * v[i];
            if (rest[i] < 0) ok = false;
          }
          if (ok && in_N(rest)) covered = true;
        }
        if (!covered) ++out.actual;
      }
      int i = k - 1;
      for (; i >= 0; --i) {
        if (e[i] + 1 < side) {
          ++e[i];
          for (int j = i + 1; j < k; ++j) e[j] = 0;
          break;
        }
      }
      if (i < 0) break;
    }
  }

  long long qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;
  out.predicted = (out.p + 1) * (qk - n) + out.d * n;
  out.bounds_ok = (k + out.p <= out.d) && (out.d <= k * (out.p + 1));
  return out;
}

}  // namespace binhk
