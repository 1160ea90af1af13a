#pragma once

// Exact finite quotients N/[q]I via congruence closure over a box of lattice
// points. Points outside the certified box are provably infinity (every
// coordinate bound is q * certificate), so relation translates leaving the
// box collapse their inside endpoint to the infinity class.

#include <cstdint>
#include <optional>
#include <vector>

#include "binhk/presentation.hpp"

namespace binhk {

struct BoxCaps {
  int box_retries = 8;            // escape-frontier retry cap
  long long point_cap = 10000000; // refuse boxes with more points than this
};

struct BoxCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Union-find table over the points of a box, plus one distinguished
// infinity class. Index layout is mixed radix with the last coordinate
// fastest; the infinity class is the extra index `size()`.
class QuotientTable {
 public:
  QuotientTable(Coord q, std::vector<Coord> bounds, const BoxCaps &caps);

  Coord q() const { return q_; }
  const std::vector<Coord> &bounds() const { return bounds_; }
  long long size() const { return size_; }
  long long inf() const { return size_; }

  long long index_of(const PVec &p) const;
  PVec point_of(long long idx) const;
  bool contains(const PVec &p) const;

  long long find(long long i) const;
  bool unite(long long a, long long b);  // true if two classes merged
  bool is_inf(long long i) const { return find(i) == size_; }

  // Number of classes other than infinity (computed on demand).
  long long class_count() const;

 private:
  Coord q_;
  std::vector<Coord> bounds_, strides_;
  long long size_;
  mutable std::vector<long long> parent_;
  std::vector<long long> weight_;
};

// Result of the bounded certificate search for N_+-primality.
struct PrimaryCertificates {
  bool known = false;
  std::vector<Coord> certs;  // c_i with c_i * e_i in the closure of I
};

// Smallest c <= bound with c*e_i in the congruence closure of the ideal,
// per generator; `known` is false when some search exhausts the bound.
PrimaryCertificates is_primary(const Presentation &p, const IdealSpec &i,
                               Coord bound, const BoxCaps &caps = {});

// Membership of a lattice point in the congruence closure of
// union(g + N^r) over the ideal generators; sound semi-decision (a `true`
// answer is certified by an in-box congruence chain).
bool ideal_closure_member(const Presentation &p,
                          const std::vector<PVec> &ideal_gens, const PVec &pt,
                          Coord padding, const BoxCaps &caps = {});

// Full box closure. `inf_marks` are vectors g: every box point >= g is
// joined with infinity (callers pass the [q]-scaled ideal generators).
// When `escape_to_inf` is set, relation translates leaving the box join
// the inside endpoint with infinity (sound only for certified bounds).
QuotientTable box_closure(const Presentation &p,
                          const std::vector<PVec> &inf_marks,
                          Coord q, const std::vector<Coord> &bounds,
                          bool escape_to_inf, const BoxCaps &caps = {});

struct BoxQuotientResult {
  QuotientTable table;
  std::vector<Coord> certificates;
  long long count = 0;  // = table.class_count()
  int retries_used = 0;
};

// #N/[q]I on the certified box, with the stability retry loop for general
// primary ideals (the count must agree on a box enlarged by one q-stride).
BoxQuotientResult box_quotient(const Presentation &p, const IdealSpec &i,
                               Coord q, const BoxCaps &caps = {});

enum class SubsetKind { WholeBinoid, Ideal, ReesQuotient, Intersection };

// #S/([q]J + S) where S is N, the ideal `i`, the Rees quotient N/i, or an
// intersection of ideals; computed by restricting the class census of the
// [q]J box closure to classes meeting the point set of S. For the
// Intersection kind the subset is i cap i2 (i2 defaults to J itself when
// null), while j stays the collapse ideal.
long long count_relative_quotient(const Presentation &p, SubsetKind kind,
                                  const IdealSpec *i, const IdealSpec *i2,
                                  const IdealSpec &j, Coord q,
                                  const BoxCaps &caps = {});

inline long long count_relative_quotient(const Presentation &p,
                                         SubsetKind kind, const IdealSpec *i,
                                         const IdealSpec &j, Coord q,
                                         const BoxCaps &caps = {}) {
  return count_relative_quotient(p, kind, i, nullptr, j, q, caps);
}

// The ideal I + J = {a + b : a in I, b in J}, generated by pairwise sums.
IdealSpec ideal_sum(const IdealSpec &i, const IdealSpec &j);

struct NilpotentWitness {
  PVec point;
  Coord n = 1;                  // n * point is infinity
  bool already_infinite = false;  // the point itself maps to infinity
};

// Bounded semi-decision scan for nilpotent elements. An empty result is not
// a proof of reducedness. Witnesses with already_infinite = false are
// genuine nilpotents (nonzero n*a = inf with a itself not inf).
std::vector<NilpotentWitness> bounded_nilpotence_scan(
    const Presentation &p, Coord bound, const BoxCaps &caps = {});

}  // namespace binhk
