#include "qspec/newton.hpp"

#include <algorithm>
#include <numeric>

namespace qspec {

Rat::Rat(long long n, long long d) {
  if (d == 0) throw std::domain_error("rat: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

int NewtonPolygon::multiplicity_leq(const Rat& alpha) const {
  int total = 0;
  for (const auto& [s, m] : slopes)
    if (s <= alpha) total += m;
  return total;
}

bool NewtonPolygon::breaks_at(int d) const {
  if (d == 0) return true;
  int acc = 0;
  for (const auto& [s, m] : slopes) {
    acc += m;
    if (acc == d) return true;
    if (acc > d) return false;
  }
  return false;  // beyond the settled polygon
}

Rat NewtonPolygon::hull_at(int x) const {
  if (x < 0 || x > settled_length) throw std::domain_error("newton: abscissa out of range");
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const auto [x0, y0] = vertices[i];
    const auto [x1, y1] = vertices[i + 1];
    if (x >= x0 && x <= x1)
      return Rat((long long)y0 * (x1 - x0) + (long long)(y1 - y0) * (x - x0), x1 - x0);
  }
  return Rat::of_int(vertices.empty() ? 0 : vertices.back().second);
}

namespace {

// cross(o->a, o->b) sign; > 0 keeps the hull strictly convex from below.
long long cross(const std::pair<int, int>& o, const std::pair<int, int>& a,
                const std::pair<int, int>& b) {
  return (long long)(a.first - o.first) * (b.second - o.second) -
         (long long)(a.second - o.second) * (b.first - o.first);
}

}  // namespace

NewtonPolygon newton_polygon_of_points(const std::vector<std::pair<int, int>>& exact,
                                       const std::vector<std::pair<int, int>>& censored_floors) {
  if (exact.empty() || exact.front().first != 0)
    throw std::domain_error("newton: need an exact point at abscissa 0");
  std::vector<std::pair<int, int>> pts = exact;
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i].first == pts[i + 1].first) throw std::domain_error("newton: duplicate abscissa");

  // Monotone-chain lower hull.
  std::vector<std::pair<int, int>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0)
      hull.pop_back();
    hull.push_back(pt);
  }

  NewtonPolygon out;
  out.vertices = hull;
  out.settled_length = pts.back().first;

  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const auto [x0, y0] = hull[i];
    const auto [x1, y1] = hull[i + 1];
    out.slopes.emplace_back(Rat(y1 - y0, x1 - x0), x1 - x0);
  }

  // A censored point (v >= floor) inside the settled range must not be able
  // to dip below the hull; otherwise the polygon is precision-limited.
  for (const auto& [x, floor] : censored_floors) {
    if (x <= 0 || x > out.settled_length) continue;  // beyond the polygon: no claim made
    const Rat h = out.hull_at(x);
    if (Rat::of_int(floor) < h)
      throw PrecisionError("newton: polygon not determined at working precision (abscissa " +
                           std::to_string(x) + ": only v >= " + std::to_string(floor) +
                           " known, hull needs " + h.str() + ")");
  }
  return out;
}

NewtonPolygon newton_polygon(const TruncSeries<PadicScalar>& f) {
  if (f.len() == 0) throw std::domain_error("newton: empty series");
  const auto v0 = f.coeff(0).valuation();
  if (!v0.exact || v0.v != 0)
    throw std::domain_error("newton: constant term must be a unit");
  std::vector<std::pair<int, int>> exact, censored;
  for (std::size_t i = 0; i < f.len(); ++i) {
    const auto val = f.coeff(i).valuation();
    if (val.exact)
      exact.emplace_back((int)i, val.v);
    else
      censored.emplace_back((int)i, val.v);
  }
  return newton_polygon_of_points(exact, censored);
}

}  // namespace qspec
