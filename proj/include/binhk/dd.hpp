#pragma once

// Exact rational polyhedral geometry: the double description method for
// cones given by inequalities, dualization between rays and facet forms,
// vertex enumeration of bounded polyhedra by homogenization, and polytope
// volumes by fan triangulation. Everything is over exact rationals.

#include <optional>
#include <stdexcept>
#include <vector>

#include "binhk/zmat.hpp"

namespace binhk {

using QVec = std::vector<Rat>;

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundedError : GeometryError {
  using GeometryError::GeometryError;
};

// Minimal generating description of {x : row * x >= 0}: a lineality basis
// plus primitive extreme rays of the pointed part.
struct ConeDD {
  ZMat lineality;
  ZMat rays;
};

ConeDD cone_from_inequalities(const ZMat &rows, std::size_t d);

// Irredundant facet forms and extreme rays of cone(generators). The cone
// must be full-dimensional, otherwise the dual has lineality and there is
// no facet description in the ambient lattice.
struct ConeDescription {
  ZMat forms;
  ZMat rays;
};

ConeDescription cone_of_points(const ZMat &generators, std::size_t d);

// form * x >= bound, rationals stored exactly.
struct HPolyhedron {
  std::size_t d = 0;
  ZMat forms;
  std::vector<Rat> bounds;
};

// All vertices of a bounded polyhedron, sorted lexicographically; throws
// UnboundedError when the recession cone is nontrivial.
std::vector<QVec> vertex_enumeration(const HPolyhedron &h);

// Vertices of a possibly unbounded polyhedron (recession rays are simply
// ignored); empty when the polyhedron contains a line.
std::vector<QVec> polyhedron_vertices(const HPolyhedron &h);

// Exact d-volume of conv(vertices); 0 for lower-dimensional input.
Rat polytope_volume(const std::vector<QVec> &vertices);

// Simplices of a triangulation of conv(points) fanned from the first
// point, as index tuples of size k+1; empty when the affine span has
// dimension below k.
std::vector<std::vector<int>> fan_triangulation(const std::vector<QVec> &points,
                                                int k);

// An integer form l with l(v) >= 1 for every generator v, chosen as the
// lexicographically smallest vertex of {l : l(v_j) >= 1} (any feasible
// point if that polyhedron has no vertices); nullopt when infeasible.
std::optional<ZVec> strictly_positive_grading(const ZMat &generators,
                                              std::size_t d);

}  // namespace binhk
