#include "binhk/dd.hpp"

#include <algorithm>
#include <set>

namespace binhk {

namespace {

Int zdot(const ZVec &a, const ZVec &b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void zprimitive(ZVec &v) {
  Int g = 0;
  for (const Int &x : v) g = gcd(g, x);
  if (g > 1)
    for (Int &x : v) x /= g;
}

// ca * a + cb * b
ZVec zcomb(const Int &ca, const ZVec &a, const Int &cb, const ZVec &b) {
  ZVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ca * a[i] + cb * b[i];
  return out;
}

bool zis_zero(const ZVec &v) {
  for (const Int &x : v)
    if (x != 0) return false;
  return true;
}

struct DDState {
  std::size_t d = 0;
  std::vector<ZVec> lin;
  std::vector<ZVec> rays;
  ZMat inserted;
};

// Two extreme rays of the current cone are adjacent when the constraints
// tight at both have rank (pointed dimension) - 2.
bool dd_adjacent(const DDState &s, const ZVec &p, const ZVec &n) {
  if (s.d < s.lin.size() + 2) return false;
  ZMat tight;
  for (const ZVec &row : s.inserted)
    if (zdot(row, p) == 0 && zdot(row, n) == 0) tight.push_back(row);
  return zmat_rank(tight) == s.d - s.lin.size() - 2;
}

void dd_insert(DDState &s, const ZVec &a) {
  // If the halfspace cuts the lineality space, one lineality vector turns
  // into a ray and everything else is reduced to lie on the hyperplane.
  for (std::size_t i = 0; i < s.lin.size(); ++i) {
    Int da = zdot(a, s.lin[i]);
    if (da == 0) continue;
    ZVec l = s.lin[i];
    s.lin.erase(s.lin.begin() + i);
    if (da < 0) {
      for (Int &x : l) x = -x;
      da = -da;
    }
    for (ZVec &l2 : s.lin) {
      Int d2 = zdot(a, l2);
      if (d2 != 0) {
        l2 = zcomb(da, l2, -d2, l);
        zprimitive(l2);
      }
    }
    for (ZVec &r : s.rays) {
      Int dr = zdot(a, r);
      if (dr != 0) {
        r = zcomb(da, r, -dr, l);
        zprimitive(r);
      }
    }
    zprimitive(l);
    s.rays.push_back(std::move(l));
    s.inserted.push_back(a);
    return;
  }

  std::vector<ZVec> pos, zero, neg;
  std::vector<Int> dpos, dneg;
  for (ZVec &r : s.rays) {
    Int dr = zdot(a, r);
    if (dr > 0) {
      pos.push_back(std::move(r));
      dpos.push_back(std::move(dr));
    } else if (dr < 0) {
      neg.push_back(std::move(r));
      dneg.push_back(std::move(dr));
    } else {
      zero.push_back(std::move(r));
    }
  }
  std::vector<ZVec> next(pos.begin(), pos.end());
  next.insert(next.end(), zero.begin(), zero.end());
  std::set<ZVec> seen(next.begin(), next.end());
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < neg.size(); ++j) {
      if (!dd_adjacent(s, pos[i], neg[j])) continue;
      ZVec c = zcomb(dpos[i], neg[j], -dneg[j], pos[i]);
      zprimitive(c);
      if (!zis_zero(c) && seen.insert(c).second) next.push_back(std::move(c));
    }
  s.rays = std::move(next);
  s.inserted.push_back(a);
}

}  // namespace

ConeDD cone_from_inequalities(const ZMat &rows, std::size_t d) {
  DDState s;
  s.d = d;
  for (std::size_t i = 0; i < d; ++i) {
    ZVec e(d, 0);
    e[i] = 1;
    s.lin.push_back(std::move(e));
  }
  for (const ZVec &row : rows)
    if (!zis_zero(row)) dd_insert(s, row);
  ConeDD out;
  out.lineality = std::move(s.lin);
  out.rays = std::move(s.rays);
  std::sort(out.rays.begin(), out.rays.end());
  std::sort(out.lineality.begin(), out.lineality.end());
  return out;
}

ConeDescription cone_of_points(const ZMat &generators, std::size_t d) {
  ConeDD dual = cone_from_inequalities(generators, d);
  if (!dual.lineality.empty())
    throw GeometryError("cone is not full-dimensional");
  ConeDescription out;
  out.forms = dual.rays;
  ConeDD primal = cone_from_inequalities(out.forms, d);
  out.rays = primal.rays;
  // A non-pointed cone keeps both directions of each lineality vector as
  // generators so that cone(rays) is still the whole cone.
  for (const ZVec &l : primal.lineality) {
    out.rays.push_back(l);
    ZVec m(l);
    for (Int &x : m) x = -x;
    out.rays.push_back(std::move(m));
  }
  std::sort(out.rays.begin(), out.rays.end());
  return out;
}

namespace {

std::vector<QVec> vertices_impl(const HPolyhedron &h, bool allow_unbounded) {
  std::size_t d = h.d;
  ZMat rows;
  for (std::size_t i = 0; i < h.forms.size(); ++i) {
    // form * x >= p/q becomes (q*form, -p) * (x, t) >= 0 with q > 0.
    Int p = h.bounds[i].get_num(), q = h.bounds[i].get_den();
    ZVec row(d + 1);
    for (std::size_t j = 0; j < d; ++j) row[j] = q * h.forms[i][j];
    row[d] = -p;
    rows.push_back(std::move(row));
  }
  ZVec trow(d + 1, 0);
  trow[d] = 1;
  rows.push_back(std::move(trow));
  ConeDD c = cone_from_inequalities(rows, d + 1);
  if (!c.lineality.empty()) {
    if (allow_unbounded) return {};
    throw UnboundedError("polyhedron contains a line");
  }
  std::vector<QVec> vertices;
  for (const ZVec &r : c.rays) {
    if (r[d] == 0) {
      if (allow_unbounded) continue;
      throw UnboundedError("polyhedron has a nonzero recession ray");
    }
    QVec v(d);
    for (std::size_t j = 0; j < d; ++j) {
      v[j] = Rat(r[j]) / Rat(r[d]);
      v[j].canonicalize();
    }
    vertices.push_back(std::move(v));
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()),
                 vertices.end());
  return vertices;
}

}  // namespace

std::vector<QVec> vertex_enumeration(const HPolyhedron &h) {
  return vertices_impl(h, false);
}

std::vector<QVec> polyhedron_vertices(const HPolyhedron &h) {
  return vertices_impl(h, true);
}

namespace {

Rat qdet(std::vector<QVec> m) {
  std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] / m[col][col];
      for (std::size_t c2 = col; c2 < n; ++c2) m[r][c2] -= f * m[col][c2];
    }
  }
  det.canonicalize();
  return det;
}

// Simplices (as index tuples) of a fan triangulation of conv(pts), where
// pts is expected to span affine dimension k; lower-dimensional input
// yields no simplices. Facets not containing pts[0] are triangulated
// recursively after projecting out one coordinate of their hyperplane.
std::vector<std::vector<int>> triangulate_points(const std::vector<QVec> &pts,
                                                 int k) {
  std::vector<std::vector<int>> out;
  if (pts.empty()) return out;
  if (k == 0) {
    out.push_back({0});
    return out;
  }
  // Homogenize to integer cone generators (p, 1) scaled by denominators.
  ZMat gens;
  for (const QVec &p : pts) {
    Int lcm = 1;
    for (const Rat &x : p) lcm = lcm / gcd(lcm, x.get_den()) * x.get_den();
    ZVec g(k + 1);
    for (int j = 0; j < k; ++j) {
      Rat s = p[j] * Rat(lcm);
      s.canonicalize();
      g[j] = s.get_num();
    }
    g[k] = lcm;
    gens.push_back(std::move(g));
  }
  ConeDescription cd;
  try {
    cd = cone_of_points(gens, k + 1);
  } catch (const GeometryError &) {
    return out;  // affine span is too small: zero k-volume
  }
  auto eval = [&](const ZVec &f, const QVec &p) {
    Rat s = Rat(f[k]);
    for (int j = 0; j < k; ++j) s += Rat(f[j]) * p[j];
    s.canonicalize();
    return s;
  };
  for (const ZVec &f : cd.forms) {
    if (eval(f, pts[0]) == 0) continue;  // facet contains the apex
    int drop = -1;
    for (int j = 0; j < k; ++j)
      if (f[j] != 0) drop = j;
    if (drop < 0) continue;
    std::vector<int> w;
    std::vector<QVec> facet_pts;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (eval(f, pts[i]) != 0) continue;
      w.push_back((int)i);
      QVec proj;
      for (int j = 0; j < k; ++j)
        if (j != drop) proj.push_back(pts[i][j]);
      facet_pts.push_back(std::move(proj));
    }
    for (const auto &sub : triangulate_points(facet_pts, k - 1)) {
      std::vector<int> simplex;
      simplex.push_back(0);
      for (int idx : sub) simplex.push_back(w[idx]);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> fan_triangulation(const std::vector<QVec> &points,
                                                int k) {
  return triangulate_points(points, k);
}

Rat polytope_volume(const std::vector<QVec> &vertices) {
  if (vertices.empty()) return Rat(0);
  int d = (int)vertices[0].size();
  std::vector<QVec> pts(vertices);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Rat vol = 0;
  Int dfact = 1;
  for (int i = 2; i <= d; ++i) dfact *= i;
  for (const auto &simplex : triangulate_points(pts, d)) {
    std::vector<QVec> edges;
    for (std::size_t m = 1; m < simplex.size(); ++m) {
      QVec e(d);
      for (int j = 0; j < d; ++j)
        e[j] = pts[simplex[m]][j] - pts[simplex[0]][j];
      edges.push_back(std::move(e));
    }
    Rat det = qdet(edges);
    if (det < 0) det = -det;
    vol += det / Rat(dfact);
  }
  vol.canonicalize();
  return vol;
}

std::optional<ZVec> strictly_positive_grading(const ZMat &generators,
                                              std::size_t d) {
  ZMat rows;
  for (const ZVec &v : generators) {
    ZVec row(d + 1);
    for (std::size_t j = 0; j < d; ++j) row[j] = v[j];
    row[d] = -1;  // l(v) >= 1, homogenized
    rows.push_back(std::move(row));
  }
  ZVec trow(d + 1, 0);
  trow[d] = 1;
  rows.push_back(std::move(trow));
  ConeDD c = cone_from_inequalities(rows, d + 1);

  std::vector<QVec> candidates;
  for (const ZVec &r : c.rays) {
    if (r[d] <= 0) continue;
    QVec v(d);
    for (std::size_t j = 0; j < d; ++j) {
      v[j] = Rat(r[j]) / Rat(r[d]);
      v[j].canonicalize();
    }
    candidates.push_back(std::move(v));
  }
  if (candidates.empty()) {
    // No vertices: a lineality vector with nonzero homogenizing
    // coordinate still gives a feasible point.
    for (const ZVec &l : c.lineality) {
      if (l[d] == 0) continue;
      QVec v(d);
      for (std::size_t j = 0; j < d; ++j) {
        v[j] = Rat(l[j]) / Rat(l[d]);
        v[j].canonicalize();
      }
      candidates.push_back(std::move(v));
      break;
    }
  }
  if (candidates.empty()) return std::nullopt;
  QVec best = *std::min_element(candidates.begin(), candidates.end());
  Int lcm = 1;
  for (const Rat &x : best) lcm = lcm / gcd(lcm, x.get_den()) * x.get_den();
  ZVec out(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rat s = best[j] * Rat(lcm);
    s.canonicalize();
    out[j] = s.get_num();
  }
  zprimitive(out);
  return out;
}

}  // namespace binhk
