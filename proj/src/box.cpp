#include "binhk/box.hpp"

#include <algorithm>
#include <cassert>

namespace binhk {

QuotientTable::QuotientTable(Coord q, std::vector<Coord> bounds,
                             const BoxCaps &caps)
    : q_(q), bounds_(std::move(bounds)) {
  long long size = 1;
  for (Coord b : bounds_) {
    assert(b >= 1);
    if (size > caps.point_cap / b)
      throw BoxCapExceeded("box exceeds the point cap");
    size *= b;
  }
  size_ = size;
  strides_.assign(bounds_.size(), 1);
  for (int i = (int)bounds_.size() - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * bounds_[i + 1];
  parent_.resize(size_ + 1);
  for (long long i = 0; i <= size_; ++i) parent_[i] = i;
  weight_.assign(size_ + 1, 1);
}

long long QuotientTable::index_of(const PVec &p) const {
  long long idx = 0;
  for (std::size_t i = 0; i < bounds_.size(); ++i) idx += p[i] * strides_[i];
  return idx;
}

PVec QuotientTable::point_of(long long idx) const {
  PVec p(bounds_.size());
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    p[i] = idx / strides_[i];
    idx %= strides_[i];
  }
  return p;
}

bool QuotientTable::contains(const PVec &p) const {
  for (std::size_t i = 0; i < bounds_.size(); ++i)
    if (p[i] < 0 || p[i] >= bounds_[i]) return false;
  return true;
}

long long QuotientTable::find(long long i) const {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];  // path halving
    i = parent_[i];
  }
  return i;
}

bool QuotientTable::unite(long long a, long long b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  // The infinity class is a fixed root; otherwise union by weight.
  if (a == size_ || (b != size_ && weight_[a] >= weight_[b])) {
    parent_[b] = a;
    weight_[a] += weight_[b];
  } else {
    parent_[a] = b;
    weight_[b] += weight_[a];
  }
  return true;
}

long long QuotientTable::class_count() const {
  long long count = 0;
  for (long long i = 0; i < size_; ++i)
    if (find(i) == i) ++count;
  return count;
}

namespace {

// Iterate all box points p with p >= base, calling f(p, idx).
template <typename F>
void for_dominated(const QuotientTable &t, const PVec &base, F &&f) {
  const auto &b = t.bounds();
  std::size_t r = b.size();
  for (std::size_t i = 0; i < r; ++i)
    if (base[i] >= b[i]) return;
  PVec p(base);
  for (;;) {
    f(p, t.index_of(p));
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (++p[i] < b[i]) break;
      p[i] = base[i];
      if (i == 0) return;
    }
    if (r == 0) return;  // r = 0: single point, done after one visit
  }
}

// One full sweep of all relation translates; returns the number of unions.
long long sweep_relations(const Presentation &pr, QuotientTable &t,
                          bool escape_to_inf) {
  long long unions = 0;
  for (const Relation &rel : pr.relations) {
    if (rel.monomial) {
      for_dominated(t, rel.lhs, [&](const PVec &, long long idx) {
        if (t.unite(idx, t.inf())) ++unions;
      });
      continue;
    }
    auto one_side = [&](const PVec &u, const PVec &v) {
      for_dominated(t, u, [&](const PVec &p, long long idx) {
        PVec partner(p);
        bool inside = true;
        for (std::size_t i = 0; i < partner.size(); ++i) {
          partner[i] += v[i] - u[i];
          if (partner[i] >= t.bounds()[i]) inside = false;
        }
        if (inside) {
          if (t.unite(idx, t.index_of(partner))) ++unions;
        } else if (escape_to_inf) {
          if (t.unite(idx, t.inf())) ++unions;
        }
      });
    };
    one_side(rel.lhs, rel.rhs);
    one_side(rel.rhs, rel.lhs);
  }
  return unions;
}

}  // namespace

QuotientTable box_closure(const Presentation &p,
                          const std::vector<PVec> &inf_marks, Coord q,
                          const std::vector<Coord> &bounds, bool escape_to_inf,
                          const BoxCaps &caps) {
  QuotientTable t(q, bounds, caps);
  for (const PVec &g : inf_marks)
    for_dominated(t, g, [&](const PVec &, long long idx) {
      t.unite(idx, t.inf());
    });
  // Re-sweep to a fixpoint: a sweep that makes no union is final.
  while (sweep_relations(p, t, escape_to_inf) > 0) {
  }
  return t;
}

bool ideal_closure_member(const Presentation &p,
                          const std::vector<PVec> &ideal_gens, const PVec &pt,
                          Coord padding, const BoxCaps &caps) {
  // Fast path: direct domination by a generator.
  for (const PVec &g : ideal_gens)
    if (dominates(pt, g)) return true;
  if (p.relations.empty()) return false;
  std::vector<Coord> bounds(p.r);
  for (int i = 0; i < p.r; ++i) bounds[i] = pt[i] + padding + 1;
  QuotientTable t =
      box_closure(p, ideal_gens, 1, bounds, /*escape_to_inf=*/false, caps);
  return t.is_inf(t.index_of(pt));
}

PrimaryCertificates is_primary(const Presentation &p, const IdealSpec &i,
                               Coord bound, const BoxCaps &caps) {
  validate(p, i);
  Coord maxcoord = 1;
  for (const Relation &rel : p.relations) {
    for (Coord x : rel.lhs) maxcoord = std::max(maxcoord, x);
    for (Coord x : rel.rhs) maxcoord = std::max(maxcoord, x);
  }
  for (const PVec &g : i.generators)
    for (Coord x : g) maxcoord = std::max(maxcoord, x);

  PrimaryCertificates result;
  result.certs.assign(p.r, 0);
  for (int k = 0; k < p.r; ++k) {
    bool found = false;
    for (Coord c = 1; c <= bound && !found; ++c) {
      PVec pt(p.r, 0);
      pt[k] = c;
      if (ideal_closure_member(p, i.generators, pt, 2 * maxcoord + 2, caps)) {
        result.certs[k] = c;
        found = true;
      }
    }
    if (!found) return PrimaryCertificates{};  // unknown
  }
  result.known = true;
  return result;
}

namespace {

bool is_maximal_ideal(const Presentation &p, const IdealSpec &i) {
  if ((int)i.generators.size() != p.r) return false;
  std::vector<char> seen(p.r, 0);
  for (const PVec &g : i.generators) {
    int nz = -1;
    for (int j = 0; j < p.r; ++j) {
      if (g[j] == 0) continue;
      if (nz >= 0 || g[j] != 1) return false;
      nz = j;
    }
    if (nz < 0 || seen[nz]) return false;
    seen[nz] = 1;
  }
  return true;
}

std::vector<PVec> scaled_generators(const IdealSpec &i, Coord q) {
  std::vector<PVec> out;
  for (const PVec &g : i.generators) out.push_back(scale(g, q));
  return out;
}

PrimaryCertificates require_certificates(const Presentation &p,
                                         const IdealSpec &i,
                                         const BoxCaps &caps) {
  for (Coord bound : {16, 64}) {
    PrimaryCertificates c = is_primary(p, i, bound, caps);
    if (c.known) return c;
  }
  throw ValidationError("ideal '" + i.name +
                        "' is not certified N_+-primary within the bound");
}

}  // namespace

BoxQuotientResult box_quotient(const Presentation &p, const IdealSpec &i,
                               Coord q, const BoxCaps &caps) {
  if (q < 1) throw ValidationError("q must be a positive integer");
  if (p.r == 0) {
    // Trivial binoid {0, inf}: one class.
    QuotientTable t(q, {}, caps);
    return BoxQuotientResult{std::move(t), {}, 1, 0};
  }
  PrimaryCertificates certs = require_certificates(p, i, caps);
  std::vector<Coord> bounds(p.r);
  for (int k = 0; k < p.r; ++k) bounds[k] = q * certs.certs[k];
  std::vector<PVec> marks = scaled_generators(i, q);

  QuotientTable t = box_closure(p, marks, q, bounds, true, caps);
  long long count = t.class_count();
  int retries = 0;
  if (!is_maximal_ideal(p, i)) {
    // Escape-frontier loop: the count must be stable under one extra
    // q-stride of padding (certificates make escapes sound, but congruence
    // chains might need room; a changing count means the box was too small).
    for (;;) {
      std::vector<Coord> padded(bounds);
      for (Coord &b : padded) b += q;
      QuotientTable t2 = box_closure(p, marks, q, padded, true, caps);
      long long count2 = t2.class_count();
      if (count2 == count) break;
      if (++retries > caps.box_retries)
        throw BoxCapExceeded("box retry cap exceeded; last counts " +
                             std::to_string(count) + " vs " +
                             std::to_string(count2));
      bounds = padded;
      t = std::move(t2);
      count = count2;
    }
  }
  return BoxQuotientResult{std::move(t), certs.certs, count, retries};
}

IdealSpec ideal_sum(const IdealSpec &i, const IdealSpec &j) {
  IdealSpec s;
  s.name = i.name + "+" + j.name;
  s.owner = i.owner;
  for (const PVec &a : i.generators)
    for (const PVec &b : j.generators) s.generators.push_back(add(a, b));
  return s;
}

long long count_relative_quotient(const Presentation &p, SubsetKind kind,
                                  const IdealSpec *i, const IdealSpec *i2,
                                  const IdealSpec &j, Coord q,
                                  const BoxCaps &caps) {
  if (q < 1) throw ValidationError("q must be a positive integer");
  if (kind != SubsetKind::WholeBinoid && i == nullptr)
    throw ValidationError("subset ideal required for this census kind");
  if (p.r == 0) return kind == SubsetKind::WholeBinoid ? 1 : 0;
  const IdealSpec &jj = (kind == SubsetKind::Intersection && i2 != nullptr)
                            ? *i2
                            : j;

  PrimaryCertificates certs = require_certificates(p, j, caps);
  std::vector<Coord> bounds(p.r);
  for (int k = 0; k < p.r; ++k) bounds[k] = q * certs.certs[k];
  std::vector<PVec> marks = scaled_generators(j, q);

  auto census = [&](const std::vector<Coord> &bds) -> long long {
    QuotientTable t = box_closure(p, marks, q, bds, true, caps);
    // Per-class flags: does the class meet the ideal point sets?
    std::vector<char> meets_i(t.size() + 1, 0), meets_j(t.size() + 1, 0);
    for (long long idx = 0; idx < t.size(); ++idx) {
      PVec pt = t.point_of(idx);
      long long root = t.find(idx);
      if (i != nullptr && !meets_i[root])
        for (const PVec &g : i->generators)
          if (dominates(pt, g)) {
            meets_i[root] = 1;
            break;
          }
      if (kind == SubsetKind::Intersection && !meets_j[root])
        for (const PVec &g : jj.generators)
          if (dominates(pt, g)) {
            meets_j[root] = 1;
            break;
          }
    }
    long long count = 0;
    for (long long idx = 0; idx < t.size(); ++idx) {
      if (t.find(idx) != idx) continue;  // count each non-inf root once
      switch (kind) {
        case SubsetKind::WholeBinoid:
          ++count;
          break;
        case SubsetKind::Ideal:
          if (meets_i[idx]) ++count;
          break;
        case SubsetKind::ReesQuotient:
          if (!meets_i[idx]) ++count;
          break;
        case SubsetKind::Intersection:
          if (meets_i[idx] && meets_j[idx]) ++count;
          break;
      }
    }
    return count;
  };

  long long count = census(bounds);
  // Stability loop: censuses of proper subsets depend on in-box membership
  // witnesses, so require agreement with a q-stride of padding.
  int retries = 0;
  for (;;) {
    std::vector<Coord> padded(bounds);
    for (Coord &b : padded) b += q;
    long long count2 = census(padded);
    if (count2 == count) break;
    if (++retries > caps.box_retries)
      throw BoxCapExceeded("census retry cap exceeded");
    bounds = padded;
    count = count2;
  }
  return count;
}

std::vector<NilpotentWitness> bounded_nilpotence_scan(const Presentation &p,
                                                      Coord bound,
                                                      const BoxCaps &caps) {
  std::vector<NilpotentWitness> witnesses;
  if (p.r == 0) return witnesses;
  bool has_monomial = false;
  for (const Relation &rel : p.relations)
    if (rel.monomial) has_monomial = true;
  if (!has_monomial) return witnesses;  // infinity class is empty in N

  std::vector<Coord> bounds(p.r, bound + 1);
  QuotientTable t = box_closure(p, {}, 1, bounds, /*escape_to_inf=*/false,
                                caps);
  const std::size_t witness_cap = 64;
  for (long long idx = 1; idx < t.size(); ++idx) {
    PVec a = t.point_of(idx);
    if (is_zero(a)) continue;
    for (Coord n = 1; n <= bound; ++n) {
      PVec na = scale(a, n);
      if (!t.contains(na)) break;
      if (t.is_inf(t.index_of(na))) {
        NilpotentWitness w;
        w.point = a;
        w.n = n;
        w.already_infinite = t.is_inf(idx);
        witnesses.push_back(std::move(w));
        break;
      }
    }
    if (witnesses.size() >= witness_cap) break;
  }
  return witnesses;
}

}  // namespace binhk
