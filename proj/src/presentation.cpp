#include "binhk/presentation.hpp"

namespace binhk {

bool is_zero(const PVec &v) {
  for (Coord x : v)
    if (x != 0) return false;
  return true;
}

PVec add(const PVec &a, const PVec &b) {
  PVec c(a);
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

PVec scale(const PVec &v, Coord c) {
  PVec w(v);
  for (Coord &x : w) x *= c;
  return w;
}

bool dominates(const PVec &a, const PVec &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

void validate(const Presentation &p) {
  if (p.r < 0) throw ValidationError("negative generator count");
  if ((int)p.gen_names.size() != p.r && !p.gen_names.empty())
    throw ValidationError("generator name list does not match r");
  for (const Relation &rel : p.relations) {
    if ((int)rel.lhs.size() != p.r)
      throw ValidationError("relation vector has wrong length");
    for (Coord x : rel.lhs)
      if (x < 0) throw ValidationError("negative relation entry");
    if (rel.monomial) {
      if (!rel.rhs.empty()) throw ValidationError("monomial relation with rhs");
      if (is_zero(rel.lhs))
        throw ValidationError("relation 0 = inf defines the zero binoid");
    } else {
      if ((int)rel.rhs.size() != p.r)
        throw ValidationError("relation vector has wrong length");
      for (Coord x : rel.rhs)
        if (x < 0) throw ValidationError("negative relation entry");
      if (rel.lhs == rel.rhs)
        throw ValidationError("trivial relation a = a");
      if (is_zero(rel.lhs) || is_zero(rel.rhs))
        throw ValidationError(
            "zero-sided binomial relation destroys positivity");
    }
  }
}

void validate(const Presentation &p, const IdealSpec &i) {
  validate(p);
  if (i.generators.empty()) throw ValidationError("ideal without generators");
  for (const PVec &g : i.generators) {
    if ((int)g.size() != p.r)
      throw ValidationError("ideal generator has wrong length");
    for (Coord x : g)
      if (x < 0) throw ValidationError("negative ideal generator entry");
    if (is_zero(g)) throw ValidationError("ideal generator 0 is not allowed");
  }
}

IdealSpec maximal_ideal(const Presentation &p) {
  if (p.r < 1)
    throw ValidationError("trivial binoid has no generators for N_+");
  IdealSpec i;
  i.name = "N+";
  i.owner = p.name;
  for (int k = 0; k < p.r; ++k) {
    PVec e(p.r, 0);
    e[k] = 1;
    i.generators.push_back(e);
  }
  return i;
}

IdealSpec frobenius_power(const IdealSpec &i, Coord n) {
  if (n < 1) throw ValidationError("Frobenius exponent must be positive");
  IdealSpec j;
  j.name = "[" + std::to_string(n) + "]" + i.name;
  j.owner = i.owner;
  for (const PVec &g : i.generators) j.generators.push_back(scale(g, n));
  return j;
}

Presentation smash(const Presentation &a, const Presentation &b) {
  Presentation s;
  s.name = a.name + "^" + b.name;
  s.r = a.r + b.r;
  for (const auto &n : a.gen_names) s.gen_names.push_back(n + ".l");
  for (const auto &n : b.gen_names) s.gen_names.push_back(n + ".r");
  auto pad_left = [&](const PVec &v) {
    PVec w(v);
    w.resize(s.r, 0);
    return w;
  };
  auto pad_right = [&](const PVec &v) {
    PVec w(a.r, 0);
    w.insert(w.end(), v.begin(), v.end());
    return w;
  };
  for (const Relation &rel : a.relations) {
    Relation t;
    t.monomial = rel.monomial;
    t.lhs = pad_left(rel.lhs);
    if (!rel.monomial) t.rhs = pad_left(rel.rhs);
    s.relations.push_back(std::move(t));
  }
  for (const Relation &rel : b.relations) {
    Relation t;
    t.monomial = rel.monomial;
    t.lhs = pad_right(rel.lhs);
    if (!rel.monomial) t.rhs = pad_right(rel.rhs);
    s.relations.push_back(std::move(t));
  }
  return s;
}

}  // namespace binhk
