#include "binhk/zmat.hpp"

#include <cassert>
#include <cstdlib>
#include <stdexcept>

namespace binhk {

ZMat zmat_identity(std::size_t n) {
  ZMat m(n, ZVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMat zmat_mul(const ZMat &a, const ZMat &b) {
  if (a.empty() || b.empty()) return {};
  std::size_t m = a.size(), k = b.size(), n = b[0].size();
  assert(a[0].size() == k);
  ZMat c(m, ZVec(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

ZVec zmat_apply(const ZMat &a, const ZVec &x) {
  ZVec y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    assert(a[i].size() == x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

bool zmat_equal(const ZMat &a, const ZMat &b) { return a == b; }

Int zmat_det(ZMat a) {
  // Bareiss fraction-free elimination.
  std::size_t n = a.size();
  if (n == 0) return 1;
  assert(a[0].size() == n);
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

// Row/column elementary operations tracked in u (left) and v (right).
struct SnfWork {
  ZMat a, u, v;
  std::size_t m, n;

  void row_swap(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void col_swap(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    for (std::size_t r = 0; r < n; ++r) std::swap(v[r][i], v[r][j]);
  }
  void row_add(std::size_t dst, std::size_t src, const Int &c) {
    for (std::size_t j = 0; j < n; ++j) a[dst][j] += c * a[src][j];
    for (std::size_t j = 0; j < m; ++j) u[dst][j] += c * u[src][j];
  }
  void col_add(std::size_t dst, std::size_t src, const Int &c) {
    for (std::size_t r = 0; r < m; ++r) a[r][dst] += c * a[r][src];
    for (std::size_t r = 0; r < n; ++r) v[r][dst] += c * v[r][src];
  }
  void row_negate(std::size_t i) {
    for (auto &x : a[i]) x = -x;
    for (auto &x : u[i]) x = -x;
  }
};

}  // namespace

SmithResult smith_normal_form(const ZMat &a_in) {
  SnfWork w;
  w.a = a_in;
  w.m = w.a.size();
  w.n = w.m ? w.a[0].size() : 0;
  w.u = zmat_identity(w.m);
  w.v = zmat_identity(w.n);

  std::size_t s = 0;
  std::size_t lim = std::min(w.m, w.n);
  while (s < lim) {
    // Find a pivot of minimal absolute value in the trailing submatrix.
    std::size_t pi = s, pj = s;
    bool found = false;
    Int best = 0;
    for (std::size_t i = s; i < w.m; ++i)
      for (std::size_t j = s; j < w.n; ++j) {
        if (w.a[i][j] == 0) continue;
        Int v = abs(w.a[i][j]);
        if (!found || v < best) {
          best = v;
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;  // trailing submatrix is zero
    if (pi != s) w.row_swap(s, pi);
    if (pj != s) w.col_swap(s, pj);
    if (w.a[s][s] < 0) w.row_negate(s);

    // Clear the pivot row and column; a nonzero remainder becomes the new,
    // strictly smaller pivot on the next pass.
    bool dirty = false;
    for (std::size_t i = s + 1; i < w.m; ++i) {
      if (w.a[i][s] == 0) continue;
      Int qn;
      mpz_fdiv_q(qn.get_mpz_t(), w.a[i][s].get_mpz_t(), w.a[s][s].get_mpz_t());
      w.row_add(i, s, -qn);
      if (w.a[i][s] != 0) dirty = true;
    }
    for (std::size_t j = s + 1; j < w.n; ++j) {
      if (w.a[s][j] == 0) continue;
      Int qn;
      mpz_fdiv_q(qn.get_mpz_t(), w.a[s][j].get_mpz_t(), w.a[s][s].get_mpz_t());
      w.col_add(j, s, -qn);
      if (w.a[s][j] != 0) dirty = true;
    }
    if (dirty) continue;

    // Enforce the divisibility chain: if some entry below-right is not a
    // multiple of the pivot, fold its column into column s and start over.
    bool divides = true;
    for (std::size_t i = s + 1; i < w.m && divides; ++i)
      for (std::size_t j = s + 1; j < w.n && divides; ++j)
        if (w.a[i][j] % w.a[s][s] != 0) {
          w.col_add(s, j, 1);
          divides = false;
        }
    if (!divides) continue;
    ++s;
  }

  SmithResult r;
  r.u = std::move(w.u);
  r.v = std::move(w.v);
  r.d = std::move(w.a);
  r.rank = s;
  for (std::size_t i = 0; i < s; ++i) r.invariants.push_back(r.d[i][i]);
  return r;
}

std::size_t zmat_rank(const ZMat &a) {
  if (a.empty()) return 0;
  // Fraction-free Gaussian elimination on a copy.
  ZMat b = a;
  std::size_t m = b.size(), n = b[0].size(), rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t p = rank;
    while (p < m && b[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(b[rank], b[p]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      if (b[i][col] == 0) continue;
      Int g = gcd(b[i][col], b[rank][col]);
      Int ci = b[rank][col] / g, cr = b[i][col] / g;
      for (std::size_t j = col; j < n; ++j)
        b[i][j] = b[i][j] * ci - b[rank][j] * cr;
    }
    ++rank;
  }
  return rank;
}

ZMat lattice_row_basis(const ZMat &a) {
  if (a.empty()) return {};
  SmithResult s = smith_normal_form(a);
  // u * a * v = d  =>  rows of d * v^{-1} span the same lattice as rows of a.
  // Equivalently the first `rank` rows of u^{-1}... easier: rows of u*a span
  // the row lattice of a (u unimodular), and u*a = d*v^{-1} has its nonzero
  // rows among the first `rank` rows.
  ZMat ua = zmat_mul(s.u, a);
  ZMat basis;
  for (const auto &row : ua) {
    bool nz = false;
    for (const auto &x : row)
      if (x != 0) {
        nz = true;
        break;
      }
    if (nz) basis.push_back(row);
  }
  return basis;
}

std::optional<ZVec> lattice_coordinates(const ZMat &basis, const ZVec &target) {
  if (basis.empty()) {
    for (const auto &x : target)
      if (x != 0) return std::nullopt;
    return ZVec{};
  }
  // Solve x * basis = target via SNF of basis: u*basis*v = d, so
  // x*basis = target  <=>  (x*u^{-1}) d = target*v  <=>  y d = t.
  SmithResult s = smith_normal_form(basis);
  std::size_t m = basis.size(), n = basis[0].size();
  assert(target.size() == n);
  ZVec t(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) t[j] += target[i] * s.v[i][j];
  ZVec y(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (t[i] % s.d[i][i] != 0) return std::nullopt;
      y[i] = t[i] / s.d[i][i];
    }
  }
  for (std::size_t j = m; j < n; ++j)
    if (t[j] != 0) return std::nullopt;
  for (std::size_t j = s.rank; j < std::min(m, n); ++j)
    if (t[j] != 0) return std::nullopt;
  // x = y * u
  ZVec x(m, 0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) x[j] += y[i] * s.u[i][j];
  return x;
}

}  // namespace binhk
