#include "qspec/chart.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace qspec {

namespace {

using PMat = DenseMat<PadicScalar>;
using IwMat = DenseMat<IwasawaElement>;
using Poly = std::vector<PadicScalar>;  // index = power of the variable

template <class M>
M block_of(const M& m, int r0, int c0, int nr, int nc) {
  M out(m.e[0].zero_like(), nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
  return out;
}

PMat center_fiber(const IwMat& A) {
  PMat out(A.e[0].numerator_coeff(0).zero_like(), A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) out.at(i, j) = A.at(i, j).coeff(0);
  return out;
}

IwMat promote(const PMat& A, int wtrunc) {
  IwMat out(IwasawaElement::from_scalar(A.e[0].zero_like(), wtrunc), A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      out.at(i, j) = IwasawaElement::from_scalar(A.at(i, j), wtrunc);
  return out;
}

PMat scale_mat(const PMat& A, int t) {
  PMat out = A;
  for (auto& x : out.e) x = x.mul_p_pow(t);
  return out;
}

// Kronecker form of X -> E*X - X*A on n x d blocks, vector index r*d + c.
PMat sylvester_matrix(const PMat& E, const PMat& A) {
  const int n = E.rows, d = A.rows;
  const auto z = A.e.empty() ? E.e[0].zero_like() : A.e[0].zero_like();
  PMat M(z, n * d, n * d);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < d; ++c) {
      const int row = r * d + c;
      for (int rp = 0; rp < n; ++rp)
        M.at(row, rp * d + c) = M.at(row, rp * d + c) + E.at(r, rp);
      for (int cp = 0; cp < d; ++cp)
        M.at(row, r * d + cp) = M.at(row, r * d + cp) - A.at(cp, c);
    }
  return M;
}

bool block_censored(const IwMat& A, int r0, int c0, int nr, int nc) {
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j)
      if (!A.at(r0 + i, c0 + j).is_zero_at_prec()) return false;
  return true;
}

PadicScalar poly_eval(const Poly& f, const PadicScalar& x) {
  PadicScalar acc = f.back();
  for (std::size_t i = f.size() - 1; i-- > 0;) acc = acc * x + f[i];
  return acc;
}

Poly poly_derivative(const Poly& f) {
  Poly out(std::max<std::size_t>(f.size() - 1, 1), f[0].zero_like());
  for (std::size_t i = 1; i < f.size(); ++i)
    out[i - 1] = f[i] * f[0].from_int_like((long long)i);
  return out;
}

// division by a monic divisor; remainder must be censored for exactness
void poly_divmod_monic(const Poly& num, const Poly& den, Poly& q, Poly& r) {
  const std::size_t dn = den.size() - 1;
  r = num;
  if (r.size() <= dn) {
    q = Poly{num[0].zero_like()};
    return;
  }
  q.assign(r.size() - dn, num[0].zero_like());
  for (std::size_t i = r.size(); i-- > dn;) {
    const PadicScalar c = r[i];
    q[i - dn] = q[i - dn] + c;
    for (std::size_t j = 0; j <= dn; ++j) r[i - dn + j] = r[i - dn + j] - c * den[j];
  }
  r.resize(std::max<std::size_t>(dn, 1), num[0].zero_like());
}

PMat companion_of_monic(const Poly& f) {
  const int n = (int)f.size() - 1;
  PMat C(f[0].zero_like(), n, n);
  for (int i = 0; i + 1 < n; ++i) C.at(i + 1, i) = f[0].one_like();
  for (int i = 0; i < n; ++i) C.at(i, n - 1) = -f[(std::size_t)i];
  return C;
}

PMat matrix_poly_eval(const Poly& f, const PMat& A) {
  const int n = A.rows;
  PMat acc(A.e[0].zero_like(), n, n);
  for (int i = 0; i < n; ++i) acc.at(i, i) = f.back();
  for (std::size_t t = f.size() - 1; t-- > 0;) {
    acc = acc.mul(A);
    for (int i = 0; i < n; ++i) acc.at(i, i) = acc.at(i, i) + f[t];
  }
  return acc;
}

// compression of h to the column span of the echelonized E (pivot reads);
// the residual must be invisible at working precision
PMat compress_to(const PMat& h, const PMat& E, const std::vector<int>& piv,
                 const std::string& what, int& cert) {
  const int n = E.rows, m = E.cols;
  const auto z = E.e[0].zero_like();
  PMat H(z, m, m);
  PMat img = h.mul(E);
  for (int j = 0; j < m; ++j) {
    std::vector<PadicScalar> v((std::size_t)n, z);
    for (int r = 0; r < n; ++r) v[(std::size_t)r] = img.at(r, j);
    for (int c = 0; c < m; ++c) {
      const PadicScalar coeff = v[(std::size_t)piv[(std::size_t)c]];
      H.at(c, j) = coeff;
      for (int r = 0; r < n; ++r) v[(std::size_t)r] -= coeff * E.at(r, c);
    }
    for (const auto& rest : v) {
      if (!rest.is_zero_at_prec())
        throw PrecisionError(what + " does not preserve the fiber eigenspace at precision");
      cert = std::min(cert, rest.prec());
    }
  }
  return H;
}

}  // namespace

SpectralChart build_chart(const IwMat& U, const std::vector<std::string>& labels,
                          const std::vector<IwMat>& hecke, Rat cut, int series_len,
                          const std::vector<long long>& check_weights, std::uint64_t seed) {
  if (U.rows != U.cols || U.rows == 0)
    throw std::domain_error("chart: family matrix must be square and nonempty");
  if (labels.size() != hecke.size())
    throw std::domain_error("chart: one label per commuting operator");
  for (const auto& H : hecke)
    if (H.rows != U.rows || H.cols != U.cols)
      throw std::domain_error("chart: operator shape mismatch");
  const int B = U.rows;
  const IwasawaElement& proto = U.e[0];
  const int Wt = proto.wtrunc();
  if (series_len < 1 || series_len > B)
    throw std::domain_error("chart: characteristic series length out of range");

  // two-variable characteristic series; the disc-center polygon fixes the
  // degree kept by the cut
  const auto P = fredholm_series_family(U, series_len);
  Poly f0c;
  f0c.reserve(P.len());
  for (std::size_t i = 0; i < P.len(); ++i) f0c.push_back(P.coeff(i).coeff(0));
  const auto np0 = newton_polygon(TruncSeries<PadicScalar>::from_coeffs(std::move(f0c)));
  const int d = np0.multiplicity_leq(cut);
  if (d == 0)
    throw std::domain_error("chart: no finite-slope part at this cut (degree-0 chart)");
  auto fac = weierstrass_factor(P, d, check_weights);

  // split the center fiber with the fixed-weight machinery
  const PMat U0 = center_fiber(U);
  auto fm0 = finite_hecke_module(U0, {}, cut);
  if (fm0.dim != d) throw std::logic_error("chart: center fiber dimension mismatch");
  const int n = B - d;

  // unimodular completion of the center basis by the non-pivot axes
  std::vector<char> is_piv((std::size_t)B, 0);
  for (int r : fm0.pivot_rows) is_piv[(std::size_t)r] = 1;
  PMat G0(U0.e[0].zero_like(), B, B);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < B; ++r) G0.at(r, c) = fm0.basis.at(r, c);
  for (int r = 0, c = d; r < B; ++r)
    if (!is_piv[(std::size_t)r]) G0.at(r, c++) = U0.e[0].one_like();
  const PMat G0i = invert_unit_matrix(G0);

  const IwMat G0w = promote(G0, Wt);
  const IwMat G0iw = promote(G0i, Wt);
  const IwMat At = G0iw.mul(U).mul(G0w);

  // exact center blocks in the adapted coordinates
  const PMat A0 = G0i.mul(U0).mul(G0);
  const PMat a0 = block_of(A0, 0, 0, d, d);
  const PMat b0 = block_of(A0, 0, d, d, n);
  const PMat e0 = block_of(A0, d, d, n, n);

  // the family twist forces bounded denominators on the matrix entries; the
  // gauge lift runs on p^dm-scaled integral coefficient matrices
  int dm = 0;
  for (const auto& x : At.e) dm = std::max(dm, x.dpow());
  const PadicScalar pz = U0.e[0].zero_like();
  auto order_block = [&](int j, int r0, int c0, int nr, int nc) {
    PMat out(pz, nr, nc);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c) {
        const auto& x = At.at(r0 + r, c0 + c);
        out.at(r, c) = x.numerator_coeff(j).mul_p_pow(dm - x.dpow());
      }
    return out;
  };
  const PadicScalar minus_one = pz.from_int_like(-1);
  const PMat Syl = sylvester_matrix(e0, a0);
  const PMat b0s = scale_mat(b0, dm);

  // order-by-order gauge lift: YS[j] = p^dm * (w^j block of the gauge)
  std::vector<PMat> YS;
  YS.push_back(PMat(pz, n, d));
  for (int j = 1; j < Wt && n > 0; ++j) {
    // right-hand side at scale p^{2dm}
    PMat rhs = scale_mat(order_block(j, d, 0, n, d), dm);
    for (auto& x : rhs.e) x = -x;
    for (int i = 1; i < j; ++i) {
      rhs = rhs.add_scaled(order_block(j - i, d, d, n, n).mul(YS[(std::size_t)i]), minus_one);
      rhs = rhs.add_scaled(YS[(std::size_t)i].mul(order_block(j - i, 0, 0, d, d)),
                           pz.one_like());
    }
    // bilinear part summed at scale p^{3dm}, divided once
    PMat bil(pz, n, d);
    bool any_bil = false;
    for (int i = 1; i < j; ++i)
      for (int u = 1; i + u <= j; ++u) {
        const int t = j - i - u;
        const PMat mid = (t == 0) ? b0s : order_block(t, 0, d, d, n);
        bil = bil.add_scaled(YS[(std::size_t)i].mul(mid).mul(YS[(std::size_t)u]),
                             pz.one_like());
        any_bil = true;
      }
    if (any_bil) {
      try {
        for (auto& x : bil.e) x = x.div_exact_p_pow(dm);
      } catch (const std::domain_error&) {
        throw PrecisionError("chart lift: bilinear term carries unexpected denominators");
      }
      rhs = rhs.add_scaled(bil, pz.one_like());
    }
    std::vector<PadicScalar> rv;
    rv.reserve((std::size_t)n * (std::size_t)d);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < d; ++c) rv.push_back(rhs.at(r, c));
    std::vector<PadicScalar> x;
    try {
      x = solve_integral(Syl, rv);
    } catch (const PrecisionError& e) {
      throw PrecisionError(std::string("chart lift (w-order ") + std::to_string(j) +
                           "): " + e.what());
    }
    PMat sj(pz, n, d);
    try {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < d; ++c)
          sj.at(r, c) = x[(std::size_t)(r * d + c)].div_exact_p_pow(dm);
    } catch (const std::domain_error&) {
      throw PrecisionError("chart lift: gauge block carries unexpected denominators");
    }
    YS.push_back(std::move(sj));
  }

  // assemble the unipotent gauge over the family ring
  IwMat Sfull = IwMat::identity(proto.zero_like(), B);
  IwMat Sinv = Sfull;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < d; ++c) {
      std::vector<PadicScalar> wc((std::size_t)Wt, pz);
      bool any = false;
      for (int j = 1; j < (int)YS.size(); ++j) {
        wc[(std::size_t)j] = YS[(std::size_t)j].at(r, c);
        any = any || !wc[(std::size_t)j].is_zero_at_prec();
      }
      const auto el = IwasawaElement::from_scalar_coeffs(Wt, std::move(wc), any ? dm : 0);
      Sfull.at(d + r, c) = el;
      Sinv.at(d + r, c) = -el;
    }

  const IwMat Tt = Sinv.mul(At).mul(Sfull);
  if (!block_censored(Tt, d, 0, n, d))
    throw PrecisionError("chart: conjugation residual visible at working precision");
  IwMat u_chart = block_of(Tt, 0, 0, d, d);

  // independent certificate: the chart matrix must reproduce the factor
  const auto cs = fredholm_series_family(u_chart, d);
  for (int i = 0; i <= d; ++i)
    if (!(cs.coeff((std::size_t)i) - fac.low[(std::size_t)i]).is_zero_at_prec())
      throw PrecisionError(
          "chart: characteristic series of the chart matrix disagrees with the factor");

  std::vector<IwMat> images;
  images.reserve(hecke.size());
  for (std::size_t t = 0; t < hecke.size(); ++t) {
    const IwMat Ht = Sinv.mul(G0iw.mul(hecke[t]).mul(G0w)).mul(Sfull);
    if (!block_censored(Ht, d, 0, n, d))
      throw PrecisionError("chart: operator " + labels[t] +
                           " does not preserve the chart module at working precision");
    images.push_back(block_of(Ht, 0, 0, d, d));
  }
  const IwasawaElement iw_minus_one = proto.from_int_like(-1);
  auto commute = [&](const IwMat& X, const IwMat& Y) {
    const IwMat C = X.mul(Y).add_scaled(Y.mul(X), iw_minus_one);
    return block_censored(C, 0, 0, d, d);
  };
  for (std::size_t t = 0; t < images.size(); ++t) {
    if (!commute(images[t], u_chart))
      throw PrecisionError("chart: image of " + labels[t] +
                           " fails to commute with the compact operator at precision");
    for (std::size_t u = t + 1; u < images.size(); ++u)
      if (!commute(images[t], images[u]))
        throw PrecisionError("chart: images of " + labels[t] + " and " + labels[u] +
                             " fail to commute at precision");
  }

  const IwMat basis = block_of(G0w.mul(Sfull), 0, 0, B, d);
  int cert = fac.certified_prec;
  for (const auto& x : u_chart.e) cert = std::min(cert, x.prec());
  for (const auto& im : images)
    for (const auto& x : im.e) cert = std::min(cert, x.prec());
  for (const auto& x : fac.low) cert = std::min(cert, x.prec());

  return SpectralChart{proto.prime(),
                       d,
                       fac.cut,
                       fac.low,
                       std::move(u_chart),
                       labels,
                       std::move(images),
                       basis,
                       cert,
                       ChartProvenance{B, proto.prec(), Wt, seed}};
}

std::vector<ChartPoint> fiber_points(const SpectralChart& chart, const PadicScalar& z1) {
  const int d = chart.degree;
  const int Wt = chart.provenance.wtrunc;
  const auto vz = z1.valuation();
  const int vzi = vz.exact ? vz.v : z1.prec();
  if (vzi < 1)
    throw std::domain_error("fiber: weight point must lie in the open disc (v >= 1)");
  auto spec = [&](const IwasawaElement& x) {
    try {
      return x.specialize(z1, Wt * vzi - x.dpow());
    } catch (const std::domain_error&) {
      throw PrecisionError("fiber: chart data does not specialize integrally at this weight");
    }
  };

  Poly qk;
  qk.reserve(chart.q.size());
  for (const auto& qi : chart.q) qk.push_back(spec(qi));
  const auto qk_series = TruncSeries<PadicScalar>::from_coeffs(qk);
  const auto np = newton_polygon(qk_series);
  if (np.settled_length < d)
    throw PrecisionError("fiber: polygon not settled across the chart degree");

  const PadicScalar pz = qk[0].zero_like();
  PMat u_k(pz, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) u_k.at(i, j) = spec(chart.u_chart.at(i, j));
  std::vector<PMat> h_k;
  h_k.reserve(chart.hecke_images.size());
  for (const auto& H : chart.hecke_images) {
    PMat M(pz, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M.at(i, j) = spec(H.at(i, j));
    h_k.push_back(std::move(M));
  }
  {
    const auto cs = fredholm_series(u_k);
    for (int i = 0; i <= d; ++i)
      if (!(cs.coeff((std::size_t)i) - qk[(std::size_t)i]).is_zero_at_prec())
        throw PrecisionError("fiber: specialized matrix disagrees with the specialized factor");
  }

  // monic reversal and its companion drive the slope-group splitting
  Poly rev((std::size_t)d + 1, pz);
  for (int i = 0; i <= d; ++i) rev[(std::size_t)i] = qk[(std::size_t)(d - i)];
  const PMat comp = companion_of_monic(rev);

  std::vector<ChartPoint> pts;
  Poly prev_char{pz.one_like()};
  int assigned = 0;
  for (const auto& [sg, mg] : np.slopes) {
    // cumulative factor from the slope machinery, then divide the previous one
    const auto Scum = slope_subspace(comp, sg);
    if (Scum.dim != assigned + mg)
      throw std::logic_error("fiber: slope peel and polygon disagree");
    Poly cum((std::size_t)d + 1, pz);
    for (std::size_t i = 0; i < Scum.char_series.len(); ++i) cum[i] = Scum.char_series.coeff(i);
    Poly prev_pad((std::size_t)d + 1, pz);
    for (std::size_t i = 0; i < prev_char.size(); ++i) prev_pad[i] = prev_char[i];
    const auto g_ser = TruncSeries<PadicScalar>::from_coeffs(cum) *
                       TruncSeries<PadicScalar>::from_coeffs(prev_pad).inverse();
    Poly g((std::size_t)mg + 1, pz);
    for (int i = 0; i <= mg; ++i) g[(std::size_t)i] = g_ser.coeff((std::size_t)i);
    for (std::size_t i = (std::size_t)mg + 1; i < g_ser.len(); ++i)
      if (!g_ser.coeff(i).is_zero_at_prec())
        throw PrecisionError("fiber: slope-group factor has visible overflow terms");
    prev_char = cum;
    assigned += mg;

    // split the group factor into simple unit-root pieces where possible
    std::vector<Poly> facs;        // factors with constant term 1
    std::vector<bool> split_flag;  // true: certified linear piece
    if (sg.den == 1) {
      const long long a = sg.num;
      Poly ghat((std::size_t)mg + 1, pz);
      ghat[0] = pz.one_like();
      try {
        for (int i = 1; i <= mg; ++i)
          ghat[(std::size_t)i] = g[(std::size_t)i].div_exact_p_pow(a * i);
      } catch (const std::domain_error&) {
        throw PrecisionError("fiber: slope-group factor dips under its slope line");
      }
      // monic unit-root polynomial, low-to-high
      Poly Ghat((std::size_t)mg + 1, pz);
      for (int i = 0; i <= mg; ++i) Ghat[(std::size_t)(mg - i)] = ghat[(std::size_t)i];
      const std::uint32_t p = pz.prime();
      bool found = true;
      while (found && Ghat.size() > 1) {
        found = false;
        for (std::uint32_t r = 1; r < p && !found; ++r) {
          const auto x0 = PadicScalar::from_int(p, pz.prec(), (long long)r);
          const auto fv = poly_eval(Ghat, x0).valuation();
          const bool is_root = !(fv.exact && fv.v == 0);
          if (!is_root) continue;
          const auto dv = poly_eval(poly_derivative(Ghat), x0).valuation();
          if (!(dv.exact && dv.v == 0)) continue;  // repeated mod p: leave whole
          // Newton lift of the simple residue root
          PadicScalar x = x0;
          const Poly Gd = poly_derivative(Ghat);
          for (int it = 0; it < 64; ++it) {
            const auto val = poly_eval(Ghat, x);
            if (val.is_zero_at_prec()) break;
            x = x - val.divide_by(poly_eval(Gd, x));
          }
          if (!poly_eval(Ghat, x).is_zero_at_prec())
            throw PrecisionError("fiber: root refinement stalled above precision floor");
          facs.push_back(Poly{pz.one_like(), -x.mul_p_pow((int)a)});
          split_flag.push_back(true);
          Poly q2, r2;
          poly_divmod_monic(Ghat, Poly{-x, pz.one_like()}, q2, r2);
          for (const auto& rc : r2)
            if (!rc.is_zero_at_prec())
              throw PrecisionError("fiber: root deflation left a visible remainder");
          Ghat = q2;
          found = true;
        }
      }
      if (Ghat.size() > 1) {
        // leftover without simple residue roots: keep as one factor
        const int rr = (int)Ghat.size() - 1;
        Poly fl((std::size_t)rr + 1, pz);
        for (int i = 0; i <= rr; ++i)
          fl[(std::size_t)i] = Ghat[(std::size_t)(rr - i)].mul_p_pow((int)(a * i));
        facs.push_back(std::move(fl));
        split_flag.push_back(false);
      }
    } else {
      facs.push_back(g);
      split_flag.push_back(false);
    }

    for (std::size_t fi = 0; fi < facs.size(); ++fi) {
      const Poly& f = facs[fi];
      const int m = (int)f.size() - 1;
      // generalized eigenspace of the monic reversal of the factor
      Poly fm((std::size_t)m + 1, pz);
      for (int i = 0; i <= m; ++i) fm[(std::size_t)(m - i)] = f[(std::size_t)i];
      PMat E = padic_kernel(matrix_poly_eval(fm, u_k), m);
      std::vector<int> piv = saturated_echelon(E);
      int cert = qk_series.min_prec();
      const PMat u_comp = compress_to(u_k, E, piv, "the compact operator", cert);
      {
        const auto cchk = fredholm_series(u_comp);
        for (int i = 0; i <= m; ++i)
          if (!(cchk.coeff((std::size_t)i) - f[(std::size_t)i]).is_zero_at_prec())
            throw PrecisionError("fiber: eigenspace characteristic factor mismatch");
      }
      std::vector<std::vector<PadicScalar>> hchar;
      std::vector<PadicScalar> hval;
      for (std::size_t t = 0; t < h_k.size(); ++t) {
        const PMat hc = compress_to(h_k[t], E, piv, "operator " + chart.labels[t], cert);
        const auto ser = fredholm_series(hc);
        std::vector<PadicScalar> cc;
        for (int i = 0; i <= m; ++i) cc.push_back(ser.coeff((std::size_t)i));
        for (const auto& c : cc) cert = std::min(cert, c.prec());
        hchar.push_back(std::move(cc));
        if (m == 1) hval.push_back(hc.at(0, 0));
      }
      for (const auto& c : f) cert = std::min(cert, c.prec());
      pts.push_back(ChartPoint{0, false, sg, m, split_flag[fi], f, chart.labels,
                               std::move(hchar), std::move(hval), cert});
    }
  }
  if (assigned != d) throw std::logic_error("fiber: local degrees do not sum to the degree");
  return pts;
}

std::vector<ChartPoint> fiber_points_at_weight(const SpectralChart& chart, long long k) {
  const auto z1 = weight_point_minus_one(chart.prime, std::max(chart.provenance.pprec, 2), k);
  auto pts = fiber_points(chart, z1);
  for (auto& pt : pts) {
    pt.weight_k = k;
    pt.is_arithmetic = true;
  }
  return pts;
}

PointClass classify_classical(const ChartPoint& pt, long long disc) {
  if (!pt.is_arithmetic) return PointClass::undetermined;
  const long long k = pt.weight_k;
  if (pt.slope < Rat::of_int(k - 1)) return PointClass::classical_by_slope;
  if (k == 2 && pt.slope == Rat::of_int(1) && pt.local_degree == 1) {
    const auto& one = pt.u_factor[0];
    const long long p = (long long)one.prime();
    bool special = (pt.u_factor[1] + one.from_int_like(p)).is_zero_at_prec();
    for (std::size_t t = 0; t < pt.labels.size() && special; ++t) {
      const std::string& lab = pt.labels[t];
      if (lab.size() < 2) continue;
      const char kind = lab[0];
      long long l = 0;
      try {
        l = std::stoll(lab.substr(1));
      } catch (...) {
        continue;
      }
      if (kind == 'T') {
        special = (pt.hecke_value[t] - one.from_int_like(l + 1)).is_zero_at_prec();
      } else if (kind == 'U') {
        if (l == p)
          special = (pt.hecke_value[t] - one.from_int_like(p)).is_zero_at_prec();
        else if (disc % l == 0)
          special = (pt.hecke_value[t] - one.one_like()).is_zero_at_prec();
      }
    }
    if (special) return PointClass::special_point;
  }
  return PointClass::undetermined;
}

std::string point_class_name(PointClass c) {
  switch (c) {
    case PointClass::classical_by_slope:
      return "classical-by-slope";
    case PointClass::special_point:
      return "special point";
    default:
      return "non-classical or undetermined";
  }
}

}  // namespace qspec
