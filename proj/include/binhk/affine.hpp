#pragma once

// Cancellative integral binoids as affine monoids inside Z^d x T, with T a
// finite product of cyclic groups. Difference groups, torsion
// freefication, graded membership enumeration, supporting forms,
// normalization through Hilbert bases, conductor elements and gaps.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "binhk/dd.hpp"
#include "binhk/parser.hpp"
#include "binhk/presentation.hpp"
#include "binhk/zmat.hpp"

namespace binhk {

struct AffElem {
  ZVec free;
  std::vector<long long> tor;
};

bool operator==(const AffElem &a, const AffElem &b);
bool operator<(const AffElem &a, const AffElem &b);

struct AffineMonoid {
  std::size_t d = 0;
  std::vector<long long> torsion;  // moduli of T
  std::vector<AffElem> generators;
  // Integer form with grading(free part) >= 1 for every generator with a
  // nonzero free part; pure torsion generators sit at level 0.
  ZVec grading;
};

// Validates and fixes the grading; throws ValidationError when the
// generators admit no strictly positive grading.
AffineMonoid make_affine_monoid(std::size_t d, std::vector<long long> torsion,
                                std::vector<AffElem> generators);

AffineMonoid affine_from_input(const AffineInput &in);

AffElem aff_add(const AffineMonoid &m, const AffElem &a, const AffElem &b);
Int aff_level(const AffineMonoid &m, const AffElem &e);

// Image of the presentation in Z^r / (relation lattice), decomposed by
// Smith normal form into free and torsion coordinates. Cancellativity of
// the presentation is checked on a bounded box: distinct congruence
// classes must have distinct images.
struct CancellativityReport {
  bool cancellative = false;
  Coord bound = 0;        // verified-up-to bound (box side length)
  std::string witness;    // human-readable witness when not cancellative
};

struct AffineConversion {
  AffineMonoid monoid;
  CancellativityReport report;
};

AffineConversion presentation_to_affine(const Presentation &p,
                                        Coord check_bound = 4);

struct DiffGroup {
  std::size_t rank = 0;
  std::vector<Int> invariants;  // nontrivial invariant factors
  Int torsion_order = 1;
};

DiffGroup difference_group(const AffineMonoid &m);

struct TorsionFree {
  AffineMonoid monoid;
  Int t_order = 1;
};

TorsionFree torsion_freefication(const AffineMonoid &m);

// All elements with grading level <= level_bound.
std::set<AffElem> enumerate_members(const AffineMonoid &m, const Int &bound);

// Exact membership: decided by enumeration up to the element's level.
bool is_member(const AffineMonoid &m, const AffElem &e);

// Facet forms of the cone of the generators' free parts in the ambient
// lattice; throws GeometryError when the cone is not full-dimensional.
ConeDescription supporting_forms(const AffineMonoid &m);

// Coordinates with respect to a basis of the lattice generated by the
// free parts; the cone is always full-dimensional in these coordinates.
struct LatticeCoords {
  ZMat basis;    // rows: basis of the difference lattice in Z^d
  ZMat gens;     // generator free parts in basis coordinates
  ZVec grading;  // the monoid grading transported to basis coordinates
};

LatticeCoords diff_lattice_coords(const AffineMonoid &m);

struct HilbertWitness {
  AffElem h;     // Hilbert basis element (ambient coordinates)
  AffElem a, b;  // h = a - b with a, b in M
};

struct NormalizationResult {
  AffineMonoid monoid;
  std::vector<HilbertWitness> witnesses;
};

// Hilbert basis of (cone of M) intersected with the difference lattice.
// With torsion present the free part is normalized and the full torsion
// subgroup of diff M is adjoined.
NormalizationResult normalization(const AffineMonoid &m);

// m with m + normalization(M) contained in M, built as the sum of the
// witness subtrahends; verified by membership checks against every
// Hilbert basis element.
AffElem conductor_element(const AffineMonoid &m);

struct GapReport {
  std::vector<AffElem> gaps;
  std::vector<AffElem> primary_gaps;
  bool complete = false;
};

// Gaps = (normalization \ M) up to the level bound; a gap is primary when
// it is not a gap plus a nonzero element of M. The report is complete
// when the bound covers conductor level + max generator level.
GapReport gaps_and_primary_gaps(const AffineMonoid &m, const Int &bound);

}  // namespace binhk
