#pragma once
// Newton polygon of a p-adic power series with unit constant term: the lower
// convex hull of the points (i, v(c_i)), with exact rational slopes.
//
// Finite precision is handled honestly rather than optimistically.  A
// coefficient that is zero at working precision only gives the lower bound
// v >= prec; such a point is omitted from the hull, and afterwards we check
// that the bound keeps it on or above the hull.  If it does not -- the hull
// would need to know digits beyond working precision -- the polygon is not
// determined and a PrecisionError is thrown instead of a guess returned.
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qspec/padic.hpp"
#include "qspec/series.hpp"

namespace qspec {

// Exact rational, normalized with den > 0.  Slopes of desk-size polygons are
// tiny, so plain long long cross-multiplication never overflows.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n, long long d);
  static Rat of_int(long long n) { return Rat(n, 1); }

  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rat& o) const { return num * o.den <= o.num * den; }
  std::string str() const;
};

struct NewtonPolygon {
  // Hull vertices (abscissa, valuation) in increasing abscissa, starting at
  // the constant term (0, 0).
  std::vector<std::pair<int, int>> vertices;
  // Ascending slopes with multiplicities; multiplicities sum to settled_length.
  std::vector<std::pair<Rat, int>> slopes;
  // Largest abscissa with an exactly known valuation; the polygon is only
  // asserted up to here.
  int settled_length = 0;

  // Number of roots (with multiplicity) of valuation <= -... : total
  // multiplicity of polygon slopes <= alpha.
  int multiplicity_leq(const Rat& alpha) const;
  // True when the polygon has a vertex at abscissa d, i.e. the slope
  // multiplicities split cleanly there.
  bool breaks_at(int d) const;
  // Valuation of the hull at integer abscissa x (exact rational floor),
  // as a Rat; x must be within [0, settled_length].
  Rat hull_at(int x) const;
};

// Polygon of f = 1 + c_1 T + ...; requires v(c_0) = 0 exactly.
NewtonPolygon newton_polygon(const TruncSeries<PadicScalar>& f);

// Core routine on raw points: exact (index, valuation) pairs plus censored
// indices known only as v >= floor.  Exposed for testing against an
// independent hull oracle.
NewtonPolygon newton_polygon_of_points(const std::vector<std::pair<int, int>>& exact,
                                       const std::vector<std::pair<int, int>>& censored_floors);

}  // namespace qspec
