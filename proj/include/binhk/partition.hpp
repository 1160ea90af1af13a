#pragma once

// Partition of an affine monoid N, viewed as an N-set through the
// multiplication-by-q action, into its irreducible components: one per
// residue class of q times the ambient lattice. Minimal generator counts
// per component recover the Hilbert-Kunz function, and components are
// bucketed into finitely many isomorphism classes by a translated
// signature.

#include <string>
#include <vector>

#include "binhk/affine.hpp"

namespace binhk {

struct QComponent {
  Coord q = 1;
  ZVec anchor;                              // representative in [0,q)^d
  std::vector<AffElem> points;              // members inside the window
  std::vector<AffElem> minimal_generators;  // e with e - q*v_j never in N
  // Carried along for window-independent signatures: the monoid grading
  // and the q-free level cap used when comparing local shapes.
  ZVec grading;
  Int shape_cap = 0;
};

// Residue-class partition of the members of a positive torsion-free
// affine monoid. The working window is the level bound
// (conductor level + max Hilbert basis level + max generator level) * q,
// a concrete instance of the uniform generator-coordinate bound.
std::vector<QComponent> components(const AffineMonoid &m, Coord q);

// Sum of minimal generator counts over all components; equals
// hkf(M, N_+, q).
long long hkf_via_generators(const AffineMonoid &m, Coord q);

struct IsoClass {
  std::string signature;
  long long multiplicity = 0;
  std::size_t generator_count = 0;
};

struct IsoClassReport {
  std::vector<IsoClass> classes;
  // Classes that agree on the generator count but differ in the signature
  // cannot be told apart with certainty inside the window; they are
  // flagged rather than merged.
  bool ambiguous = false;
};

IsoClassReport iso_classes(const std::vector<QComponent> &comps);

struct GapFormulaCheck {
  long long p = 0;          // primary gap count
  long long d = 0;          // generator count of the punctured positive cone
  long long predicted = 0;  // (p+1)(q^k - n) + d*n
  long long actual = 0;     // hkf of the gap monoid at q
  bool bounds_ok = false;   // k + p <= d <= k(p+1)
};

// The gap monoid N = (natural numbers)^k minus a finite gap set, handled
// by direct complement enumeration; q must exceed every gap coordinate.
GapFormulaCheck gap_formula_check(int k, const std::vector<ZVec> &gaps,
                                  Coord q);

}  // namespace binhk
