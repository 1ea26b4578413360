#pragma once
// Finite-flat spectral charts over a weight disc: the degree-d factor of the
// two-variable characteristic series together with the induced action of the
// commuting operators on the rank-d module, plus fiberwise point extraction
// and classification.
//
// A chart at slope cut alpha is built by conjugating the family matrix into
// block form: the disc-center fiber is split with the fixed-weight slope
// machinery, and the splitting is lifted order by order in w through Sylvester
// solves against the center blocks (the gauge fixes the pivot rows of the
// chart basis, which keeps the lift integral up to the bounded denominator
// defect of the family twist). The build is certified at the end, not by the
// construction: the conjugated lower block must be censored at working
// precision, and the characteristic series of the chart matrix must reproduce
// the Weierstrass factor of the full series computed independently.
#include <cstdint>
#include <string>
#include <vector>

#include "qspec/fredholm.hpp"
#include "qspec/iwasawa.hpp"
#include "qspec/matrix.hpp"
#include "qspec/newton.hpp"
#include "qspec/slope.hpp"
#include "qspec/weierstrass.hpp"

namespace qspec {

struct ChartProvenance {
  int block = 0;        // corner size the family matrices were built at
  int pprec = 0;        // p-adic working precision of the inputs
  int wtrunc = 0;       // weight-disc truncation order
  std::uint64_t seed = 0;
};

struct SpectralChart {
  std::uint32_t prime;
  int degree;                     // rank d of the chart module
  Rat cut;                        // largest slope kept (a polygon vertex cut)
  std::vector<IwasawaElement> q;  // degree-d factor, q[0] = 1, length d+1
  DenseMat<IwasawaElement> u_chart;  // compact operator on the chart module
  std::vector<std::string> labels;   // one label per commuting operator
  std::vector<DenseMat<IwasawaElement>> hecke_images;
  DenseMat<IwasawaElement> basis;  // corner coordinates of the module, B x d
  int certified_prec;
  ChartProvenance provenance;
};

// U and hecke are square family matrices on the same corner basis; labels
// name the hecke entries ("T3", "U2", ...). series_len bounds the number of
// characteristic-series terms used to locate the cut vertex. check_weights
// are forwarded to the factorization's fiber-uniformity check.
// Throws domain_error when the cut keeps nothing (degree-0 chart) or is not
// a vertex of the center polygon; PrecisionError when the lift or its
// certificates are starved.
SpectralChart build_chart(const DenseMat<IwasawaElement>& U,
                          const std::vector<std::string>& labels,
                          const std::vector<DenseMat<IwasawaElement>>& hecke, Rat cut,
                          int series_len, const std::vector<long long>& check_weights = {},
                          std::uint64_t seed = 0);

struct ChartPoint {
  long long weight_k = 0;    // arithmetic weight when is_arithmetic
  bool is_arithmetic = false;
  Rat slope{0, 1};
  int local_degree = 1;
  bool split_certified = true;      // false: kept as one factor at precision
  std::vector<PadicScalar> u_factor;  // factor of Q at the fiber, constant 1
  std::vector<std::string> labels;
  std::vector<std::vector<PadicScalar>> hecke_char;  // per label, constant 1
  std::vector<PadicScalar> hecke_value;  // per label, only when local_degree 1
  int certified_prec = 0;
};

// Specializes the chart at w = z1 (v(z1) >= 1), splits the fiber factor by
// polygon slopes and then by simple unit roots, and compresses every
// operator image to each generalized eigenspace. Local degrees sum to d.
std::vector<ChartPoint> fiber_points(const SpectralChart& chart, const PadicScalar& z1);
// Arithmetic fiber at w = (1+p)^k - 1; stamps weight_k on the points.
std::vector<ChartPoint> fiber_points_at_weight(const SpectralChart& chart, long long k);

enum class PointClass { classical_by_slope, special_point, undetermined };

// The control criterion: slope < k-1 certifies classicality; the weight-2
// point with T_l = l+1, U_l = 1 for l | disc and eigenvalue p is singled out
// as the special point; everything else stays undetermined (slope >= k-1
// never proves non-classicality).
PointClass classify_classical(const ChartPoint& pt, long long disc);

std::string point_class_name(PointClass c);

}  // namespace qspec
