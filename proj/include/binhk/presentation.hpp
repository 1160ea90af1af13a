#pragma once

// Finitely presented binoids: generators x_0..x_{r-1}, binomial relations
// lhs = rhs and monomial relations lhs = inf on (N^r)^inf, plus ideals given
// by generator vectors. r = 0 denotes the trivial binoid {0, inf}.

#include <stdexcept>
#include <string>
#include <vector>

namespace binhk {

using Coord = long long;
using PVec = std::vector<Coord>;  // point of N^r

struct Relation {
  bool monomial = false;  // lhs = inf
  PVec lhs, rhs;          // rhs empty for monomial relations
};

struct Presentation {
  std::string name;
  int r = 0;
  std::vector<std::string> gen_names;  // size r
  std::vector<Relation> relations;
};

struct IdealSpec {
  std::string name;
  std::string owner;             // name of the presentation it belongs to
  std::vector<PVec> generators;  // nonempty, each nonzero, length r
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws ValidationError on ill-formed input (wrong vector lengths, a = a
// relations, zero-sided binomials, empty or zero ideal generators).
void validate(const Presentation &p);
void validate(const Presentation &p, const IdealSpec &i);

// The maximal ideal N_+ = <e_1,...,e_r>. Requires r >= 1.
IdealSpec maximal_ideal(const Presentation &p);

// [n]I = <n*g : g generator of I>.
IdealSpec frobenius_power(const IdealSpec &i, Coord n);

// Generators of both presentations side by side, relations padded with zeros.
Presentation smash(const Presentation &a, const Presentation &b);

bool is_zero(const PVec &v);
PVec add(const PVec &a, const PVec &b);
PVec scale(const PVec &v, Coord c);
bool dominates(const PVec &a, const PVec &b);  // a >= b componentwise

}  // namespace binhk
