#include "binhk/spectrum.hpp"

#include <algorithm>
#include <bit>

#include "binhk/zmat.hpp"

namespace binhk {

namespace {

std::uint32_t support_mask(const PVec &v) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > 0) m |= (1u << i);
  return m;
}

}  // namespace

bool prime_consistent(const Presentation &p, std::uint32_t mask) {
  for (const Relation &rel : p.relations) {
    bool lhs_meets = (support_mask(rel.lhs) & mask) != 0;
    if (rel.monomial) {
      if (!lhs_meets) return false;
    } else {
      bool rhs_meets = (support_mask(rel.rhs) & mask) != 0;
      if (lhs_meets != rhs_meets) return false;
    }
  }
  return true;
}

SpecPoset spectrum(const Presentation &p) {
  validate(p);
  if (p.r > 24)
    throw ValidationError("spectrum enumeration supports at most 24 "
                          "generators");
  SpecPoset s;
  for (std::uint32_t mask = 0; mask < (1u << p.r); ++mask) {
    if (!prime_consistent(p, mask)) continue;
    PrimeIdeal prime;
    prime.mask = mask;
    for (int i = 0; i < p.r; ++i)
      if (mask & (1u << i)) prime.members.push_back(i);
    s.primes.push_back(std::move(prime));
  }
  std::sort(s.primes.begin(), s.primes.end(),
            [](const PrimeIdeal &a, const PrimeIdeal &b) {
              return a.members < b.members;
            });
  s.contained_in.resize(s.primes.size());
  for (std::size_t i = 0; i < s.primes.size(); ++i)
    for (std::size_t j = 0; j < s.primes.size(); ++j) {
      if (i == j) continue;
      std::uint32_t a = s.primes[j].mask, b = s.primes[i].mask;
      if ((a & b) == a && a != b) s.contained_in[i].push_back((int)j);
    }
  return s;
}

int combinatorial_dimension(const SpecPoset &s) {
  // Longest chain, counted in edges; primes are in an inclusion-compatible
  // order only after sorting by popcount, so process in that order.
  std::vector<int> order(s.primes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::popcount(s.primes[a].mask) < std::popcount(s.primes[b].mask);
  });
  std::vector<int> longest(s.primes.size(), 0);
  int best = 0;
  for (int i : order) {
    for (int j : s.contained_in[i])
      longest[i] = std::max(longest[i], longest[j] + 1);
    best = std::max(best, longest[i]);
  }
  return best;
}

std::vector<PrimeIdeal> minimal_primes(const SpecPoset &s) {
  std::vector<PrimeIdeal> out;
  for (std::size_t i = 0; i < s.primes.size(); ++i)
    if (s.contained_in[i].empty()) out.push_back(s.primes[i]);
  return out;
}

Presentation quotient_by_prime(const Presentation &p, const PrimeIdeal &prime) {
  Presentation q;
  q.name = p.name + "/p";
  std::vector<int> new_index(p.r, -1);
  for (int i = 0; i < p.r; ++i) {
    if (prime.mask & (1u << i)) continue;
    new_index[i] = q.r++;
    q.gen_names.push_back(i < (int)p.gen_names.size() ? p.gen_names[i]
                                                      : "g" + std::to_string(i));
  }
  auto project = [&](const PVec &v) {
    PVec w(q.r, 0);
    for (int i = 0; i < p.r; ++i)
      if (new_index[i] >= 0) w[new_index[i]] = v[i];
    return w;
  };
  for (const Relation &rel : p.relations) {
    if (support_mask(rel.lhs) & prime.mask) continue;
    if (!rel.monomial && (support_mask(rel.rhs) & prime.mask)) continue;
    if (rel.monomial) continue;  // cannot happen for a consistent prime
    Relation t;
    t.lhs = project(rel.lhs);
    t.rhs = project(rel.rhs);
    if (t.lhs == t.rhs) continue;  // relation became trivial
    q.relations.push_back(std::move(t));
  }
  return q;
}

int rank_dimension(const Presentation &p, const SpecPoset &s) {
  int best = 0;
  for (const PrimeIdeal &prime : s.primes) {
    Presentation q = quotient_by_prime(p, prime);
    ZMat rel_vectors;
    for (const Relation &rel : q.relations) {
      ZVec v(q.r);
      for (int i = 0; i < q.r; ++i)
        v[i] = Int((long)(rel.lhs[i] - rel.rhs[i]));
      rel_vectors.push_back(std::move(v));
    }
    int dim = q.r - (int)zmat_rank(rel_vectors);
    best = std::max(best, dim);
  }
  return best;
}

Presentation simplicial_binoid(const SimplicialComplexInput &c) {
  int n = (int)c.vertices.size();
  if (n > 24)
    throw ValidationError("simplicial complexes support at most 24 vertices");
  Presentation p;
  p.name = c.name;
  p.r = n;
  p.gen_names = c.vertices;
  std::vector<std::uint32_t> facet_masks;
  std::size_t max_facet = 0;
  for (const auto &f : c.facets) {
    std::uint32_t m = 0;
    for (int v : f) m |= (1u << v);
    facet_masks.push_back(m);
    max_facet = std::max(max_facet, f.size());
  }
  auto is_face = [&](std::uint32_t m) {
    for (std::uint32_t f : facet_masks)
      if ((m & f) == m) return true;
    return false;
  };
  // Minimal non-faces have at most (largest facet size + 1) vertices.
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    if ((std::size_t)std::popcount(m) > max_facet + 1) continue;
    if (is_face(m)) continue;
    bool minimal = true;
    for (int v = 0; v < n && minimal; ++v)
      if ((m & (1u << v)) && !is_face(m & ~(1u << v))) minimal = false;
    if (!minimal) continue;
    Relation rel;
    rel.monomial = true;
    rel.lhs.assign(n, 0);
    for (int v = 0; v < n; ++v)
      if (m & (1u << v)) rel.lhs[v] = 1;
    p.relations.push_back(std::move(rel));
  }
  return p;
}

int maximal_facet_count(const SimplicialComplexInput &c) {
  std::size_t maxdim = 0;
  for (const auto &f : c.facets) maxdim = std::max(maxdim, f.size());
  int count = 0;
  for (const auto &f : c.facets)
    if (f.size() == maxdim) ++count;
  return count;
}

}  // namespace binhk
