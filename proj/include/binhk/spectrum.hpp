#pragma once

// Prime spectrum of a finitely presented binoid by brute-force enumeration
// of consistent generator subsets, with both dimension notions, minimal
// primes, quotients by primes, and simplicial binoids.

#include <vector>

#include "binhk/parser.hpp"
#include "binhk/presentation.hpp"

namespace binhk {

struct PrimeIdeal {
  std::vector<int> members;  // generator indices, strictly increasing
  std::uint32_t mask = 0;
};

struct SpecPoset {
  std::vector<PrimeIdeal> primes;  // sorted lexicographically by member list
  // covers[i] lists indices j with primes[j] strictly contained in primes[i]
  std::vector<std::vector<int>> contained_in;
};

// A subset P is consistent when every monomial relation has support meeting
// P and every binomial relation has both supports meeting P or neither.
bool prime_consistent(const Presentation &p, std::uint32_t mask);

SpecPoset spectrum(const Presentation &p);  // requires r <= 24

int combinatorial_dimension(const SpecPoset &s);

std::vector<PrimeIdeal> minimal_primes(const SpecPoset &s);

// Drop the generators in the prime; keep relations whose supports avoid it.
Presentation quotient_by_prime(const Presentation &p, const PrimeIdeal &prime);

// max over primes of (#generators outside p) - rank(relation lattice of N/p).
int rank_dimension(const Presentation &p, const SpecPoset &s);

Presentation simplicial_binoid(const SimplicialComplexInput &c);

// Facet count of maximal dimension (used for the e_HK of M_Delta).
int maximal_facet_count(const SimplicialComplexInput &c);

}  // namespace binhk
