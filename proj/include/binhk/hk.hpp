#pragma once

// Hilbert-Kunz functions and multiplicities. Counting runs on either
// engine: the box engine for finitely presented binoids, or direct graded
// lattice enumeration for affine monoids. The multiplicity e_HK comes out
// as an exact rational, either from the volume of the region
// B = C \ union(a_i + C) for normal monoids, or through the full
// reduction pipeline (minimal primes, torsion split, normalization).

#include <string>
#include <vector>

#include "binhk/affine.hpp"
#include "binhk/box.hpp"
#include "binhk/presentation.hpp"
#include "binhk/spectrum.hpp"

namespace binhk {

// Thrown when the pipeline declines to compute e_HK (nilpotents found, or
// cancellativity of a quotient could not be verified). Callers fall back
// to reporting the counting series only.
struct RefusedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Box engine: #N/[q]I for a presented binoid.
long long hkf(const Presentation &p, const IdealSpec &i, Coord q,
              const BoxCaps &caps = {});

// Lattice engine: elements of M outside union(q*a + M) over the ideal
// generators, counted by graded enumeration with a shell stability check.
// Torsion components of the elements are part of the count.
long long hkf(const AffineMonoid &m, const std::vector<AffElem> &ideal_gens,
              Coord q);

struct HKSeries {
  std::vector<Coord> q_values;
  std::vector<long long> counts;
};

// Name-independent serialization of a counting problem, used as the cache
// key both for the in-memory series cache and the on-disk sidecar.
std::string structural_signature(const Presentation &p, const IdealSpec &i);

HKSeries hkf_series(const Presentation &p, const IdealSpec &i,
                    const std::vector<Coord> &qs, const BoxCaps &caps = {});
HKSeries hkf_series(const AffineMonoid &m,
                    const std::vector<AffElem> &ideal_gens,
                    const std::vector<Coord> &qs);

struct EhkResult {
  Rat value;
  std::string method;  // "volume", "pipeline" or "fit"
  std::vector<std::string> trace;
};

// vol(B) for a torsion-free normal affine monoid and a primary ideal,
// B = C \ union(a_i + C), by inclusion-exclusion over the ideal
// generators. Volumes are normalized to the difference lattice, so the
// value is the counting limit hkf(q)/q^rank. At most 20 generators.
EhkResult ehk_normal_volume(const AffineMonoid &m,
                            const std::vector<AffElem> &ideal_gens);

// The full pipeline for a presented binoid: spectrum, minimal primes of
// maximal rank dimension, per prime the affine image, torsion split,
// normalization and the volume of the extended maximal ideal; the
// contributions |T| * vol are summed.
EhkResult ehk(const Presentation &p);

// Pipeline entry for affine input (possibly with torsion).
EhkResult ehk(const AffineMonoid &m);

struct FitResult {
  Rat leading;       // coefficient of q^d
  Rat subleading;    // coefficient of q^{d-1}
  double max_rel_residual = 0.0;
};

// Least squares fit counts ~ c*q^d + c'*q^{d-1}, exact normal equations.
// Needs at least 4 sample points and max q >= 8d.
FitResult fit_leading_coefficient(const HKSeries &s, int d);

}  // namespace binhk
