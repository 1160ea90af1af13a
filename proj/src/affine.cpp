#include "binhk/affine.hpp"

#include <algorithm>
#include <map>

#include "binhk/box.hpp"

namespace binhk {

bool operator==(const AffElem &a, const AffElem &b) {
  return a.free == b.free && a.tor == b.tor;
}

bool operator<(const AffElem &a, const AffElem &b) {
  if (a.free != b.free) return a.free < b.free;
  return a.tor < b.tor;
}

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

AffElem aff_zero(const AffineMonoid &m) {
  AffElem z;
  z.free.assign(m.d, 0);
  z.tor.assign(m.torsion.size(), 0);
  return z;
}

}  // namespace

AffineMonoid make_affine_monoid(std::size_t d, std::vector<long long> torsion,
                                std::vector<AffElem> generators) {
  for (long long k : torsion)
    if (k < 1) throw ValidationError("torsion moduli must be positive");
  if (generators.empty())
    throw ValidationError("affine monoid needs at least one generator");
  AffineMonoid m;
  m.d = d;
  m.torsion = std::move(torsion);
  for (AffElem &g : generators) {
    if (g.free.size() != d || g.tor.size() != m.torsion.size())
      throw ValidationError("generator has the wrong shape");
    for (std::size_t i = 0; i < m.torsion.size(); ++i)
      g.tor[i] = ((g.tor[i] % m.torsion[i]) + m.torsion[i]) % m.torsion[i];
    bool tor_zero = true;
    for (long long t : g.tor)
      if (t != 0) tor_zero = false;
    if (zvec_zero(g.free) && tor_zero)
      throw ValidationError("zero generator is not allowed");
  }
  {
    std::set<AffElem> seen;
    for (const AffElem &g : generators)
      if (!seen.insert(g).second)
        throw ValidationError("duplicate generator");
  }
  m.generators = std::move(generators);
  ZMat free_parts;
  for (const AffElem &g : m.generators)
    if (!zvec_zero(g.free)) free_parts.push_back(g.free);
  if (free_parts.empty()) {
    m.grading.assign(d, 0);
  } else {
    auto grading = strictly_positive_grading(free_parts, d);
    if (!grading)
      throw ValidationError("no strictly positive grading exists");
    m.grading = *grading;
  }
  return m;
}

AffineMonoid affine_from_input(const AffineInput &in) {
  std::vector<AffElem> gens;
  for (const auto &[f, t] : in.gens) {
    AffElem g;
    for (long long x : f) g.free.push_back(Int((long)x));
    g.tor = t;
    gens.push_back(std::move(g));
  }
  return make_affine_monoid((std::size_t)in.d, in.torsion, std::move(gens));
}

AffElem aff_add(const AffineMonoid &m, const AffElem &a, const AffElem &b) {
  AffElem s;
  s.free.resize(m.d);
  for (std::size_t i = 0; i < m.d; ++i) s.free[i] = a.free[i] + b.free[i];
  s.tor.resize(m.torsion.size());
  for (std::size_t i = 0; i < m.torsion.size(); ++i)
    s.tor[i] = (a.tor[i] + b.tor[i]) % m.torsion[i];
  return s;
}

Int aff_level(const AffineMonoid &m, const AffElem &e) {
  return zdot(m.grading, e.free);
}

std::set<AffElem> enumerate_members(const AffineMonoid &m, const Int &bound) {
  std::set<AffElem> members;
  std::set<std::pair<Int, AffElem>> frontier;
  frontier.insert({Int(0), aff_zero(m)});
  while (!frontier.empty()) {
    auto [lev, e] = *frontier.begin();
    frontier.erase(frontier.begin());
    if (!members.insert(e).second) continue;
    for (const AffElem &g : m.generators) {
      AffElem n = aff_add(m, e, g);
      Int nl = aff_level(m, n);
      if (nl <= bound && !members.count(n)) frontier.insert({nl, n});
    }
  }
  return members;
}

bool is_member(const AffineMonoid &m, const AffElem &e) {
  Int lev = aff_level(m, e);
  if (lev < 0) return false;
  return enumerate_members(m, lev).count(e) > 0;
}

AffineConversion presentation_to_affine(const Presentation &p,
                                        Coord check_bound) {
  validate(p);
  if (p.r == 0) throw ValidationError("empty presentation");
  for (const Relation &rel : p.relations)
    if (rel.monomial)
      throw ValidationError("monomial relation: presentation is not integral");

  std::size_t r = p.r, s = p.relations.size();
  ZMat a(r, ZVec(s, 0));
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < r; ++i)
      a[i][j] = Int((long)(p.relations[j].lhs[i] - p.relations[j].rhs[i]));
  SmithResult snf = smith_normal_form(a);
  std::size_t rank = snf.rank;

  std::vector<std::size_t> tor_rows, free_rows;
  std::vector<long long> moduli;
  for (std::size_t i = 0; i < rank; ++i) {
    if (snf.d[i][i] > 1) {
      if (!snf.d[i][i].fits_slong_p())
        throw ValidationError("torsion modulus too large");
      tor_rows.push_back(i);
      moduli.push_back(snf.d[i][i].get_si());
    }
  }
  for (std::size_t i = rank; i < r; ++i) free_rows.push_back(i);

  auto image = [&](const PVec &x) {
    AffElem e;
    for (std::size_t i : free_rows) {
      Int v = 0;
      for (std::size_t j = 0; j < r; ++j) v += snf.u[i][j] * Int((long)x[j]);
      e.free.push_back(v);
    }
    for (std::size_t k = 0; k < tor_rows.size(); ++k) {
      std::size_t i = tor_rows[k];
      Int v = 0;
      for (std::size_t j = 0; j < r; ++j) v += snf.u[i][j] * Int((long)x[j]);
      Int mk((long)moduli[k]);
      Int md = ((v % mk) + mk) % mk;
      e.tor.push_back(md.get_si());
    }
    return e;
  };

  // Distinct generators can share an image (that is exactly the
  // non-cancellative case); the image monoid deduplicates them.
  std::vector<AffElem> gens;
  std::set<AffElem> gen_seen;
  for (std::size_t j = 0; j < r; ++j) {
    PVec ej(r, 0);
    ej[j] = 1;
    AffElem g = image(ej);
    if (gen_seen.insert(g).second) gens.push_back(std::move(g));
  }

  AffineConversion out;
  // moduli stays live: the image lambda below still reads it.
  out.monoid = make_affine_monoid(free_rows.size(), moduli, std::move(gens));

  // Cancellativity on a bounded box: distinct closure classes must have
  // distinct images. A conflict is re-examined on a doubled box because
  // the closure may simply not have converged on the small one.
  auto find_conflict =
      [&](Coord b) -> std::optional<std::pair<PVec, PVec>> {
    std::vector<Coord> bounds(p.r, b);
    QuotientTable t = box_closure(p, {}, 1, bounds, false);
    std::map<AffElem, std::pair<long long, PVec>> seen;
    for (long long idx = 0; idx < t.size(); ++idx) {
      PVec pt = t.point_of(idx);
      AffElem key = image(pt);
      long long root = t.find(idx);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, std::make_pair(root, pt));
      } else if (it->second.first != root) {
        return std::make_pair(it->second.second, pt);
      }
    }
    return std::nullopt;
  };
  out.report.bound = check_bound;
  auto c1 = find_conflict(check_bound);
  if (c1) {
    out.report.bound = 2 * check_bound;
    auto c2 = find_conflict(2 * check_bound);
    if (c2) {
      out.report.cancellative = false;
      std::string w = "identified points with equal images:";
      for (Coord x : c2->first) w += " " + std::to_string(x);
      w += " vs";
      for (Coord x : c2->second) w += " " + std::to_string(x);
      out.report.witness = w;
      return out;
    }
  }
  out.report.cancellative = true;
  return out;
}

DiffGroup difference_group(const AffineMonoid &m) {
  std::size_t l = m.torsion.size();
  ZMat rows;
  for (const AffElem &g : m.generators) {
    ZVec row(m.d + l);
    for (std::size_t i = 0; i < m.d; ++i) row[i] = g.free[i];
    for (std::size_t i = 0; i < l; ++i) row[m.d + i] = Int((long)g.tor[i]);
    rows.push_back(std::move(row));
  }
  ZMat krows;
  for (std::size_t i = 0; i < l; ++i) {
    ZVec row(m.d + l, 0);
    row[m.d + i] = Int((long)m.torsion[i]);
    krows.push_back(row);
    rows.push_back(std::move(row));
  }
  ZMat basis = lattice_row_basis(rows);
  ZMat coeff;
  for (const ZVec &k : krows) {
    auto c = lattice_coordinates(basis, k);
    if (!c) throw ValidationError("internal: torsion row outside lattice");
    coeff.push_back(std::move(*c));
  }
  DiffGroup out;
  if (coeff.empty()) {
    out.rank = basis.size();
    return out;
  }
  SmithResult snf = smith_normal_form(coeff);
  out.rank = basis.size() - snf.rank;
  for (const Int &inv : snf.invariants)
    if (inv > 1) {
      out.invariants.push_back(inv);
      out.torsion_order *= inv;
    }
  return out;
}

TorsionFree torsion_freefication(const AffineMonoid &m) {
  std::vector<AffElem> gens;
  std::set<ZVec> seen;
  for (const AffElem &g : m.generators) {
    if (zvec_zero(g.free)) continue;
    if (!seen.insert(g.free).second) continue;
    AffElem e;
    e.free = g.free;
    gens.push_back(std::move(e));
  }
  TorsionFree out;
  out.monoid = make_affine_monoid(m.d, {}, std::move(gens));
  out.t_order = difference_group(m).torsion_order;
  return out;
}

ConeDescription supporting_forms(const AffineMonoid &m) {
  ZMat free_parts;
  for (const AffElem &g : m.generators)
    if (!zvec_zero(g.free)) free_parts.push_back(g.free);
  return cone_of_points(free_parts, m.d);
}

LatticeCoords diff_lattice_coords(const AffineMonoid &m) {
  ZMat free_parts;
  for (const AffElem &g : m.generators)
    if (!zvec_zero(g.free)) free_parts.push_back(g.free);
  LatticeCoords lc;
  lc.basis = lattice_row_basis(free_parts);
  for (const ZVec &v : free_parts) {
    auto c = lattice_coordinates(lc.basis, v);
    if (!c) throw ValidationError("internal: generator outside its lattice");
    lc.gens.push_back(std::move(*c));
  }
  for (const ZVec &b : lc.basis) lc.grading.push_back(zdot(b, m.grading));
  return lc;
}

namespace {

// Inverse of a square rational matrix by Gauss-Jordan elimination.
std::vector<QVec> qinverse(std::vector<QVec> a) {
  std::size_t n = a.size();
  std::vector<QVec> inv(n, QVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw GeometryError("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat f = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= f;
      inv[col][j] /= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat g = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= g * a[col][j];
        inv[r][j] -= g * inv[col][j];
      }
    }
  }
  return inv;
}

// Integer solution c with c * gens = target (row convention); exists
// whenever target lies in the row lattice of gens.
std::optional<ZVec> integer_combination(const ZMat &gens, const ZVec &target) {
  SmithResult snf = smith_normal_form(gens);
  std::size_t n = gens.size(), d = gens.empty() ? 0 : gens[0].size();
  // c * G = t  with  U G V = D  becomes  y D = t V,  c = y U.
  ZVec tv(d, 0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) tv[j] += target[i] * snf.v[i][j];
  ZVec y(n, 0);
  for (std::size_t i = 0; i < std::min(n, d); ++i) {
    if (snf.d[i][i] == 0) {
      if (tv[i] != 0) return std::nullopt;
      continue;
    }
    if (tv[i] % snf.d[i][i] != 0) return std::nullopt;
    y[i] = tv[i] / snf.d[i][i];
  }
  for (std::size_t i = n < d ? n : d; i < d; ++i)
    if (tv[i] != 0) return std::nullopt;
  ZVec c(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) c[j] += y[i] * snf.u[i][j];
  return c;
}

// Hilbert basis of cone(gens) in Z^m for a pointed full-dimensional cone:
// candidates from the fundamental zonotopes of a triangulation into
// simplicial subcones, then reduction to irreducibles.
std::vector<ZVec> hilbert_basis(const ZMat &gens, const ZVec &lvec,
                                std::size_t m) {
  ConeDescription cd = cone_of_points(gens, m);
  const ZMat &rays = cd.rays;
  std::set<ZVec> candidates(rays.begin(), rays.end());

  // Triangulate via the cross-section at grading level one.
  std::size_t drop = 0;
  while (drop < m && lvec[drop] == 0) ++drop;
  if (drop == m) throw GeometryError("grading vanishes on the cone");
  std::vector<QVec> section;
  for (const ZVec &r : rays) {
    Int lev = zdot(lvec, r);
    if (lev <= 0) throw GeometryError("grading not positive on a ray");
    QVec p;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == drop) continue;
      Rat x = Rat(r[j]) / Rat(lev);
      x.canonicalize();
      p.push_back(std::move(x));
    }
    section.push_back(std::move(p));
  }
  std::vector<std::vector<int>> simplices =
      fan_triangulation(section, (int)m - 1);
  if (simplices.empty() && rays.size() == m) {
    // Simplicial cone: the section is a single (m-1)-simplex; for m = 1
    // the section is a point.
    std::vector<int> all;
    for (std::size_t i = 0; i < m; ++i) all.push_back((int)i);
    simplices.push_back(std::move(all));
  }

  for (const auto &sx : simplices) {
    std::vector<QVec> rmat;
    for (int i : sx) {
      QVec row;
      for (std::size_t j = 0; j < m; ++j) row.push_back(Rat(rays[i][j]));
      rmat.push_back(std::move(row));
    }
    std::vector<QVec> rinv = qinverse(rmat);
    // Bounding box of the zonotope spanned by the simplex rays.
    ZVec lo(m, 0), hi(m, 0);
    for (int i : sx)
      for (std::size_t j = 0; j < m; ++j) {
        if (rays[i][j] < 0) lo[j] += rays[i][j];
        if (rays[i][j] > 0) hi[j] += rays[i][j];
      }
    ZVec x(lo);
    for (;;) {
      // lambda = x * rinv must lie in [0,1]^m.
      bool inside = true;
      for (std::size_t i = 0; i < m && inside; ++i) {
        Rat lam = 0;
        for (std::size_t j = 0; j < m; ++j) lam += Rat(x[j]) * rinv[j][i];
        lam.canonicalize();
        if (lam < 0 || lam > 1) inside = false;
      }
      if (inside && !zvec_zero(x)) candidates.insert(x);
      std::size_t k = m;
      bool done = false;
      while (k > 0) {
        --k;
        if (++x[k] <= hi[k]) break;
        x[k] = lo[k];
        if (k == 0) done = true;
      }
      if (done) break;
    }
  }

  auto in_cone = [&](const ZVec &v) {
    for (const ZVec &f : cd.forms)
      if (zdot(f, v) < 0) return false;
    return true;
  };
  std::vector<ZVec> hb;
  for (const ZVec &h : candidates) {
    bool reducible = false;
    for (const ZVec &h2 : candidates) {
      if (h2 == h) continue;
      ZVec diff(m);
      for (std::size_t j = 0; j < m; ++j) diff[j] = h[j] - h2[j];
      if (zvec_zero(diff)) continue;
      if (in_cone(diff)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) hb.push_back(h);
  }
  std::sort(hb.begin(), hb.end());
  return hb;
}

}  // namespace

NormalizationResult normalization(const AffineMonoid &m) {
  if (!m.torsion.empty()) {
    // Normalize the free part and adjoin the full torsion subgroup of the
    // difference group.
    TorsionFree tf = torsion_freefication(m);
    NormalizationResult free_part = normalization(tf.monoid);
    std::size_t l = m.torsion.size();
    // Torsion subgroup: t with (0 | t) in the difference group, found by
    // membership in the lifted lattice.
    ZMat rows;
    for (const AffElem &g : m.generators) {
      ZVec row(m.d + l);
      for (std::size_t i = 0; i < m.d; ++i) row[i] = g.free[i];
      for (std::size_t i = 0; i < l; ++i) row[m.d + i] = Int((long)g.tor[i]);
      rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < l; ++i) {
      ZVec row(m.d + l, 0);
      row[m.d + i] = Int((long)m.torsion[i]);
      rows.push_back(std::move(row));
    }
    ZMat basis = lattice_row_basis(rows);
    std::vector<AffElem> gens;
    for (const AffElem &h : free_part.monoid.generators) {
      AffElem g;
      g.free = h.free;
      g.tor.assign(l, 0);
      gens.push_back(std::move(g));
    }
    std::vector<long long> t(l, 0);
    for (;;) {
      std::size_t k = l;
      bool done = (l == 0);
      while (k > 0) {
        --k;
        if (++t[k] < m.torsion[k]) break;
        t[k] = 0;
        if (k == 0) done = true;
      }
      if (done) break;
      ZVec lift(m.d + l, 0);
      for (std::size_t i = 0; i < l; ++i) lift[m.d + i] = Int((long)t[i]);
      if (lattice_coordinates(basis, lift)) {
        AffElem g;
        g.free.assign(m.d, 0);
        g.tor = t;
        gens.push_back(std::move(g));
      }
    }
    NormalizationResult out;
    out.monoid = make_affine_monoid(m.d, m.torsion, std::move(gens));
    return out;
  }

  LatticeCoords lc = diff_lattice_coords(m);
  std::size_t rank = lc.basis.size();
  std::vector<ZVec> hb = hilbert_basis(lc.gens, lc.grading, rank);

  ZMat gen_mat;
  for (const AffElem &g : m.generators) gen_mat.push_back(g.free);

  NormalizationResult out;
  std::vector<AffElem> gens;
  for (const ZVec &h : hb) {
    ZVec amb(m.d, 0);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < m.d; ++j) amb[j] += h[i] * lc.basis[i][j];
    AffElem ge;
    ge.free = amb;
    gens.push_back(ge);

    auto c = integer_combination(gen_mat, amb);
    if (!c)
      throw ValidationError("internal: Hilbert basis element outside the "
                            "difference lattice");
    HilbertWitness w;
    w.h = ge;
    w.a.free.assign(m.d, 0);
    w.b.free.assign(m.d, 0);
    for (std::size_t j = 0; j < gen_mat.size(); ++j) {
      for (std::size_t i = 0; i < m.d; ++i) {
        if ((*c)[j] > 0) w.a.free[i] += (*c)[j] * gen_mat[j][i];
        if ((*c)[j] < 0) w.b.free[i] -= (*c)[j] * gen_mat[j][i];
      }
    }
    out.witnesses.push_back(std::move(w));
  }
  out.monoid = make_affine_monoid(m.d, {}, std::move(gens));
  out.monoid.grading = m.grading;
  return out;
}

AffElem conductor_element(const AffineMonoid &m) {
  if (!m.torsion.empty())
    throw ValidationError("conductor requires a torsion-free monoid");
  NormalizationResult nr = normalization(m);
  AffElem cond = aff_zero(m);
  for (const HilbertWitness &w : nr.witnesses)
    cond = aff_add(m, cond, w.b);
  for (const HilbertWitness &w : nr.witnesses)
    if (!is_member(m, aff_add(m, cond, w.h)))
      throw ValidationError("internal: conductor verification failed");
  return cond;
}

GapReport gaps_and_primary_gaps(const AffineMonoid &m, const Int &bound) {
  if (!m.torsion.empty())
    throw ValidationError("gap scan requires a torsion-free monoid");
  NormalizationResult nr = normalization(m);
  AffineMonoid hat = nr.monoid;
  hat.grading = m.grading;  // measure levels consistently

  std::set<AffElem> in_m = enumerate_members(m, bound);
  std::set<AffElem> in_hat = enumerate_members(hat, bound);

  GapReport out;
  for (const AffElem &x : in_hat)
    if (!in_m.count(x)) out.gaps.push_back(x);

  for (const AffElem &b : out.gaps) {
    bool primary = true;
    for (const AffElem &a : out.gaps) {
      if (a == b) continue;
      AffElem diff;
      diff.free.resize(m.d);
      for (std::size_t i = 0; i < m.d; ++i)
        diff.free[i] = b.free[i] - a.free[i];
      if (zvec_zero(diff.free)) continue;
      if (aff_level(m, diff) < 0) continue;
      if (is_member(m, diff)) {
        primary = false;
        break;
      }
    }
    if (primary) out.primary_gaps.push_back(b);
  }

  AffElem cond = conductor_element(m);
  Int max_gen_level = 0;
  for (const AffElem &g : m.generators)
    max_gen_level = std::max(max_gen_level, aff_level(m, g));
  out.complete = bound >= aff_level(m, cond) + max_gen_level;
  return out;
}

}  // namespace binhk
