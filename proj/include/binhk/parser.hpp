#pragma once

// Parser for .bnd files. Blocks:
//
//   binoid <name> { gens: x y ; rel: 1x+1y = 2y ; rel: 3x = inf ; }
//   ideal <name> of <binoid> { gen: 2x ; gen: y ; }
//   simplicial <name> { vertices: a b c ; facet: a b ; facet: b c ; }
//   affine <name> { dim: 2 ; torsion: 2 ; gen: 2 1 | 1 ; gen: 3 0 | 0 ; }
//
// '#' starts a comment running to end of line. Coefficient 1 may be omitted
// in linear combinations.

#include <map>
#include <string>
#include <vector>

#include "binhk/presentation.hpp"

namespace binhk {

struct SimplicialComplexInput {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<std::vector<int>> facets;  // vertex indices
};

struct AffineInput {
  std::string name;
  int d = 0;
  std::vector<long long> torsion;  // moduli k_1..k_l
  // generator = free part (length d) plus torsion tuple (length l)
  std::vector<std::pair<std::vector<long long>, std::vector<long long>>> gens;
};

struct Document {
  std::map<std::string, Presentation> binoids;
  std::map<std::string, IdealSpec> ideals;
  std::map<std::string, SimplicialComplexInput> simplicial;
  std::map<std::string, AffineInput> affine;
};

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string &msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) +
                           ", column " + std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

Document parse_document(const std::string &text);
Presentation parse_presentation(const std::string &text);  // first binoid block

}  // namespace binhk
