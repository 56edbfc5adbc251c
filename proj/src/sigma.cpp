#include "padic/sigma.hpp"

#include <algorithm>

namespace padic {

namespace {

int floor_log(const Integer& p, int j) {
  int r = 0;
  Integer t = p;
  while (t <= j) {
    ++r;
    t *= p;
  }
  return r;
}

}  // namespace

Integer half_a1(const CurveQ& E, const Integer& p, int e) {
  Integer m = ipow(p, static_cast<unsigned long>(e));
  return mod(E.a1 * inv_mod(Integer(2), m), m);
}

ZModPN compute_c(const CurveQ& E, const ZModPN& e2) {
  ZModPN num(e2.modulus_ptr(), E.a1 * E.a1 + 4 * E.a2 - e2.value());
  return num * inv_mod_ppow(ZModPN(e2.modulus_ptr(), 12));
}

PadicSeries HSeries::lifted() const {
  ModulusPtr m = make_modulus(series.modulus().p, N - 2);
  std::vector<Integer> c = series.coeffs();
  c[0] = constant;
  return PadicSeries(m, std::move(c));
}

HSeries compute_h_hat(const CurveQ& E, const FormalGroupData& fg, const ZModPN& c) {
  const int N = fg.N;
  const ModulusPtr& m = fg.modulus;
  if (c.p() != m->p || c.N() != m->N) throw ModulusMismatch("c must be known mod p^(N-3)");
  const Integer& p = m->p;
  const int L = N + 1;

  HSeries h;
  h.N = N;

  // (x + c) omega with x + c = t^-2 (X + c t^2).
  std::vector<Integer> xc = fg.x_unit.coeffs();
  xc.resize(static_cast<std::size_t>(L));
  if (L > 2) xc[2] += c.value();
  h.xc_omega = series_mul(PadicSeries(m, std::move(xc), -2), fg.omega, L);

  Integration in = series_integrate(h.xc_omega);
  std::vector<Integer> ic = in.series.coeffs();
  // Stored index 1 of an offset -1 series is the constant term.
  ic[1] += half_a1(E, p, m->N);
  h.integral = PadicSeries(m, std::move(ic), -1);
  h.integral_loss = std::move(in.loss);

  PadicSeries prod = series_mul(fg.omega, h.integral, L);  // offset -1, order N
  if (ZModPN(m, prod[0]) != ZModPN(m, -1))
    throw InvariantViolated("t^-1 coefficient of omega times the integral is not -1");
  std::vector<Integer> hc(prod.coeffs().begin() + 1, prod.coeffs().end());
  for (auto& x : hc) x = -x;
  h.series = PadicSeries(m, std::move(hc));

  h.constant = half_a1(E, p, N - 2);
  h.precision.assign(static_cast<std::size_t>(N), 0);
  h.precision[0] = N - 2;
  for (int j = 1; j < N; ++j) h.precision[static_cast<std::size_t>(j)] = N - 3 - floor_log(p, j);
  return h;
}

BrentResult brent_solve(const PadicSeries& f, int n) {
  if (n < 1) throw InvalidArgument("brent_solve needs n >= 1");
  if (f.offset() != 0) throw InvalidArgument("brent_solve input must have offset 0");
  const ModulusPtr& mod = f.modulus_ptr();
  if (Integer(n) * n >= mod->pN)
    throw PreconditionViolated("brent_solve requires n < p^(k/2)");

  BrentResult r{PadicSeries::one(mod, 1), {}};
  r.iterates.push_back(r.F);
  int len = 1;
  while (len < n) {
    const int m = std::min(2 * len, n);
    PadicSeries F = r.F.truncated(m);
    PadicSeries q = series_mul(series_derivative(F), series_inv(F, m - 1), m - 1);
    PadicSeries g = q - f.truncated(m - 1);
    Integration G = series_integrate(g);  // offset 1, m - 1 terms
    std::vector<Integer> one_minus(static_cast<std::size_t>(m));
    one_minus[0] = 1;
    for (int i = 1; i < m; ++i) one_minus[static_cast<std::size_t>(i)] = -G.series[i - 1];
    r.F = series_mul(F, PadicSeries(mod, std::move(one_minus)), m);
    r.iterates.push_back(r.F);
    len = m;
  }
  return r;
}

namespace {

SigmaSeries trivial_sigma(const CurveQ& E, const Integer& p, int N) {
  std::vector<Integer> c(static_cast<std::size_t>(std::max(N, 1)));
  if (N > 1) c[1] = 1;
  if (N > 2) c[2] = half_a1(E, p, N - 2);
  return SigmaSeries{IdealSeries(p, N, std::move(c))};
}

}  // namespace

SigmaTrace compute_sigma_trace(const CurveQ& E, const Integer& p, int N, const ZModPN& e2) {
  if (N < 4) throw InvalidArgument("the sigma trace needs N >= 4");
  if (e2.p() != p) throw ModulusMismatch("E2 is over a different prime");
  if (e2.N() < N - 3) throw InvalidArgument("E2 must be known modulo p^(N-3)");

  ZModPN e2r = e2.truncate(N - 3);
  std::vector<PadicSeries> w_iter = compute_w_iterates(E, p, N);
  PadicSeries w_unit = w_iter.back().with_offset(3).shifted(-3).truncated(N + 1);
  FormalGroupData fg = compute_xy_omega(E, w_unit, N);
  ZModPN c = compute_c(E, e2r);
  HSeries h = compute_h_hat(E, fg, c);

  const int n = N - 1;
  BrentResult theta = brent_solve(h.lifted().truncated(n - 1), n);

  std::vector<Integer> coeffs(static_cast<std::size_t>(N));
  coeffs[1] = 1;
  coeffs[2] = half_a1(E, p, N - 2);
  for (int j = 3; j < N; ++j) coeffs[static_cast<std::size_t>(j)] = theta.F[j - 1];
  SigmaSeries sigma{IdealSeries(p, N, std::move(coeffs))};
  if (sigma.coeff(2) != mod(theta.F[1], ipow(p, static_cast<unsigned long>(N - 2))))
    throw InvariantViolated("t^2 coefficient of sigma differs from a1/2");

  return SigmaTrace{std::move(w_iter), std::move(fg), std::move(c), std::move(h),
                    std::move(theta), std::move(sigma)};
}

SigmaSeries compute_sigma(const CurveQ& E, const Integer& p, int N, const ZModPN* e2) {
  if (N < 1) throw InvalidArgument("sigma precision must be >= 1");
  if (N <= 3) return trivial_sigma(E, p, N);
  if (!e2) throw InvalidArgument("E2 is required for N >= 4");
  return compute_sigma_trace(E, p, N, *e2).sigma;
}

}  // namespace padic
