#include "binhk/hk.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace binhk {

namespace {

bool zvec_zero(const ZVec &v) {
  for (const Int &x : v)
    if (x != 0) return false;
  return true;
}

Int zdot(const ZVec &a, const ZVec &b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string elem_str(const AffElem &e) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < e.free.size(); ++i)
    os << (i ? "," : "") << e.free[i].get_str();
  if (!e.tor.empty()) {
    os << "|";
    for (std::size_t i = 0; i < e.tor.size(); ++i)
      os << (i ? "," : "") << e.tor[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

long long hkf(const Presentation &p, const IdealSpec &i, Coord q,
              const BoxCaps &caps) {
  return box_quotient(p, i, q, caps).count;
}

long long hkf(const AffineMonoid &m, const std::vector<AffElem> &ideal_gens,
              Coord q) {
  if (ideal_gens.empty()) throw ValidationError("empty ideal");
  // The q-scaled ideal generators; torsion parts wrap around their moduli.
  std::vector<AffElem> qi;
  Int max_ideal_level = 0;
  for (const AffElem &a : ideal_gens) {
    AffElem s;
    s.free.resize(m.d);
    for (std::size_t j = 0; j < m.d; ++j) s.free[j] = Int((long)q) * a.free[j];
    s.tor.resize(m.torsion.size());
    for (std::size_t j = 0; j < m.torsion.size(); ++j)
      s.tor[j] = (a.tor[j] * q) % m.torsion[j];
    max_ideal_level = std::max(max_ideal_level, aff_level(m, a));
    qi.push_back(std::move(s));
  }
  Int max_gen_level = 0;
  for (const AffElem &g : m.generators)
    max_gen_level = std::max(max_gen_level, aff_level(m, g));

  // x survives iff x - q*a is never in M. Survivors are bounded in level
  // because the ideal is primary; the bound is certified by stability of
  // the census across a widened window (the same semi-decision the box
  // engine uses).
  Int stride = Int((long)q) * (max_ideal_level + max_gen_level + 1);
  Int bound = stride;
  long long prev = -1;
  for (int retry = 0; retry <= 8; ++retry) {
    std::set<AffElem> members = enumerate_members(m, bound);
    long long count = 0;
    for (const AffElem &x : members) {
      bool covered = false;
      for (const AffElem &a : qi) {
        if (aff_level(m, x) < aff_level(m, a)) continue;
        AffElem d;
        d.free.resize(m.d);
        for (std::size_t j = 0; j < m.d; ++j) d.free[j] = x.free[j] - a.free[j];
        d.tor.resize(m.torsion.size());
        for (std::size_t j = 0; j < m.torsion.size(); ++j)
          d.tor[j] = ((x.tor[j] - a.tor[j]) % m.torsion[j] + m.torsion[j]) %
                     m.torsion[j];
        // level(d) <= bound, so the member set decides membership exactly.
        if (members.count(d)) {
          covered = true;
          break;
        }
      }
      if (!covered) ++count;
    }
    if (count == prev) return count;
    prev = count;
    bound += stride;
  }
  throw BoxCapExceeded("affine hkf census did not stabilize");
}

std::string structural_signature(const Presentation &p, const IdealSpec &i) {
  std::ostringstream os;
  os << "r=" << p.r << ";";
  for (const Relation &rel : p.relations) {
    os << (rel.monomial ? "m:" : "b:");
    for (Coord c : rel.lhs) os << c << ",";
    os << "=";
    for (Coord c : rel.rhs) os << c << ",";
    os << ";";
  }
  os << "I:";
  for (const PVec &g : i.generators) {
    for (Coord c : g) os << c << ",";
    os << ";";
  }
  return os.str();
}

namespace {

std::mutex series_mutex;
std::map<std::string, long long> series_cache;

}  // namespace

HKSeries hkf_series(const Presentation &p, const IdealSpec &i,
                    const std::vector<Coord> &qs, const BoxCaps &caps) {
  std::string sig = structural_signature(p, i);
  HKSeries s;
  for (Coord q : qs) {
    std::string key = sig + "q=" + std::to_string(q);
    long long count;
    {
      std::lock_guard<std::mutex> lock(series_mutex);
      auto it = series_cache.find(key);
      if (it != series_cache.end()) {
        s.q_values.push_back(q);
        s.counts.push_back(it->second);
        continue;
      }
    }
    count = hkf(p, i, q, caps);
    {
      std::lock_guard<std::mutex> lock(series_mutex);
      series_cache[key] = count;
    }
    s.q_values.push_back(q);
    s.counts.push_back(count);
  }
  return s;
}

HKSeries hkf_series(const AffineMonoid &m,
                    const std::vector<AffElem> &ideal_gens,
                    const std::vector<Coord> &qs) {
  HKSeries s;
  for (Coord q : qs) {
    s.q_values.push_back(q);
    s.counts.push_back(hkf(m, ideal_gens, q));
  }
  return s;
}

EhkResult ehk_normal_volume(const AffineMonoid &m,
                            const std::vector<AffElem> &ideal_gens) {
  if (!m.torsion.empty())
    throw ValidationError("volume engine needs a torsion-free monoid");
  if (ideal_gens.empty()) throw ValidationError("empty ideal");
  if (ideal_gens.size() > 20)
    throw BoxCapExceeded("more than 20 ideal generators (2^t cap)");

  NormalizationResult nr = normalization(m);
  for (const HilbertWitness &w : nr.witnesses)
    if (!is_member(m, w.h))
      throw ValidationError("monoid is not normal: " + elem_str(w.h) +
                            " lies in the normalization only");

  // Work in coordinates of the difference lattice, so volumes are
  // normalized the same way the counting is.
  LatticeCoords lc = diff_lattice_coords(m);
  std::size_t n = lc.basis.size();
  if (n == 0) return {Rat(1), "volume", {"rank zero: e_HK = 1"}};
  ConeDescription cone = cone_of_points(lc.gens, n);

  ZMat ig;
  std::set<ZVec> ig_seen;
  for (const AffElem &a : ideal_gens) {
    auto c = lattice_coordinates(lc.basis, a.free);
    if (!c) throw ValidationError("ideal generator outside the lattice");
    if (ig_seen.insert(*c).second) ig.push_back(std::move(*c));
  }

  // Primality: B = C \ union(a_i + C) is bounded iff every extreme ray of
  // C has an ideal generator on its minimal face.
  for (const ZVec &r : cone.rays) {
    bool ok = false;
    for (const ZVec &a : ig) {
      bool on_face = true;
      for (const ZVec &f : cone.forms)
        if (zdot(f, r) == 0 && zdot(f, a) != 0) {
          on_face = false;
          break;
        }
      if (on_face) {
        ok = true;
        break;
      }
    }
    if (!ok)
      throw ValidationError(
          "ideal is not primary: an extreme ray of the cone escapes it");
  }

  // sigma_j(a_i), precomputed.
  std::size_t t = ig.size(), f = cone.forms.size();
  std::vector<std::vector<Int>> sig(t, std::vector<Int>(f));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < f; ++j) sig[i][j] = zdot(cone.forms[j], ig[i]);

  auto bounds_of = [&](std::uint32_t mask) {
    std::vector<Rat> b(f, Rat(0));
    for (std::size_t i = 0; i < t; ++i)
      if (mask & (1u << i))
        for (std::size_t j = 0; j < f; ++j)
          if (Rat(sig[i][j]) > b[j]) b[j] = Rat(sig[i][j]);
    return b;
  };

  // First pass over the 2^t intersection polyhedra: the level of every
  // vertex, to pick a truncation height past all of them.
  Rat max_level = 0;
  for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
    HPolyhedron h{n, cone.forms, bounds_of(mask)};
    for (const QVec &v : polyhedron_vertices(h)) {
      Rat lev = 0;
      for (std::size_t j = 0; j < n; ++j) lev += Rat(lc.grading[j]) * v[j];
      if (lev > max_level) max_level = lev;
    }
  }
  Int mb = max_level.get_num() / max_level.get_den() + 1;
  Rat mbound(mb);

  ZVec neg_grading(n);
  for (std::size_t j = 0; j < n; ++j) neg_grading[j] = -lc.grading[j];

  Rat vol = 0;
  for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
    HPolyhedron h{n, cone.forms, bounds_of(mask)};
    h.forms.push_back(neg_grading);
    h.bounds.push_back(-mbound);
    Rat v = polytope_volume(vertex_enumeration(h));
    if (__builtin_popcount(mask) % 2)
      vol -= v;
    else
      vol += v;
  }

  EhkResult out;
  out.value = vol;
  out.method = "volume";
  out.trace.push_back("inclusion-exclusion over " + std::to_string(t) +
                      " ideal generators, truncated at level " + mb.get_str());
  return out;
}

namespace {

// Extended maximal ideal: the distinct nonzero generator free parts.
std::vector<AffElem> free_part_ideal(const AffineMonoid &m) {
  std::vector<AffElem> ideal;
  std::set<ZVec> seen;
  for (const AffElem &g : m.generators) {
    if (zvec_zero(g.free)) continue;
    if (!seen.insert(g.free).second) continue;
    AffElem e;
    e.free = g.free;
    ideal.push_back(std::move(e));
  }
  return ideal;
}

}  // namespace

EhkResult ehk(const Presentation &p) {
  validate(p);
  if (p.r == 0) {
    return {Rat(1), "pipeline", {"trivial binoid: e_HK = 1"}};
  }
  for (const NilpotentWitness &w : bounded_nilpotence_scan(p, 6)) {
    if (w.already_infinite) continue;
    throw RefusedError(
        "nilpotent element found: the multiplicity need not exist and only "
        "hkf(q) <= C*q^d is available");
  }
  SpecPoset sp = spectrum(p);
  int d = rank_dimension(p, sp);
  EhkResult out;
  out.method = "pipeline";
  out.value = 0;
  for (const PrimeIdeal &prime : minimal_primes(sp)) {
    Presentation qp = quotient_by_prime(p, prime);
    int dq = qp.r == 0 ? 0 : rank_dimension(qp, spectrum(qp));
    std::string pname = "{";
    for (std::size_t k = 0; k < prime.members.size(); ++k)
      pname += (k ? " " : "") + p.gen_names[prime.members[k]];
    pname += "}";
    if (dq != d) {
      out.trace.push_back("prime " + pname + ": dimension " +
                          std::to_string(dq) + " < " + std::to_string(d) +
                          ", no contribution");
      continue;
    }
    if (qp.r == 0) {
      out.value += 1;
      out.trace.push_back("prime " + pname + ": point component, +1");
      continue;
    }
    AffineConversion conv = presentation_to_affine(qp);
    if (!conv.report.cancellative)
      throw RefusedError("quotient by " + pname +
                         " is not cancellative: " + conv.report.witness);
    TorsionFree tf = torsion_freefication(conv.monoid);
    NormalizationResult nrm = normalization(tf.monoid);
    EhkResult vol = ehk_normal_volume(nrm.monoid, free_part_ideal(conv.monoid));
    out.value += Rat(tf.t_order) * vol.value;
    out.trace.push_back("prime " + pname + ": |T| = " + tf.t_order.get_str() +
                        ", vol = " + Rat(vol.value).get_str() + ", +" +
                        Rat(Rat(tf.t_order) * vol.value).get_str());
  }
  out.value.canonicalize();
  return out;
}

EhkResult ehk(const AffineMonoid &m) {
  TorsionFree tf = torsion_freefication(m);
  NormalizationResult nrm = normalization(tf.monoid);
  EhkResult vol = ehk_normal_volume(nrm.monoid, free_part_ideal(m));
  EhkResult out;
  out.method = "pipeline";
  out.value = Rat(tf.t_order) * vol.value;
  out.value.canonicalize();
  out.trace.push_back("|T| = " + tf.t_order.get_str() +
                      ", vol = " + vol.value.get_str());
  for (const std::string &line : vol.trace) out.trace.push_back(line);
  return out;
}

FitResult fit_leading_coefficient(const HKSeries &s, int d) {
  if (s.q_values.size() < 4)
    throw ValidationError("need at least 4 sample points for the fit");
  Coord maxq = *std::max_element(s.q_values.begin(), s.q_values.end());
  if (maxq < 8LL * d)
    throw ValidationError("largest q must be at least 8*dimension");
  // Least squares for y ~ c*x^d + c2*x^(d-1); exact normal equations.
  Rat a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  std::vector<Rat> xd, xd1;
  for (std::size_t i = 0; i < s.q_values.size(); ++i) {
    Int q((long)s.q_values[i]);
    Int qd = 1, qd1 = 1;
    for (int k = 0; k < d; ++k) qd *= q;
    for (int k = 0; k + 1 < d; ++k) qd1 *= q;
    if (d == 0) qd1 = 0;  // constant model only
    xd.push_back(Rat(qd));
    xd1.push_back(Rat(qd1));
    Rat y((long)s.counts[i]);
    a11 += Rat(qd) * Rat(qd);
    a12 += Rat(qd) * Rat(qd1);
    a22 += Rat(qd1) * Rat(qd1);
    b1 += y * Rat(qd);
    b2 += y * Rat(qd1);
  }
  Rat det = a11 * a22 - a12 * a12;
  Rat c, c2;
  if (det == 0) {
    // degenerate second column (d = 0); fall back to one parameter
    c = b1 / a11;
    c2 = 0;
  } else {
    c = (b1 * a22 - b2 * a12) / det;
    c2 = (a11 * b2 - a12 * b1) / det;
  }
  c.canonicalize();
  c2.canonicalize();
  FitResult out;
  out.leading = c;
  out.subleading = c2;
  for (std::size_t i = 0; i < s.q_values.size(); ++i) {
    Rat fit = c * xd[i] + c2 * xd1[i];
    Rat resid = Rat((long)s.counts[i]) - fit;
    double denom = std::max(1.0, (double)s.counts[i]);
    double rel = std::abs(resid.get_d()) / denom;
    out.max_rel_residual = std::max(out.max_rel_residual, rel);
  }
  return out;
}

}  // namespace binhk
