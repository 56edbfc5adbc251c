#include "padic/formal_group.hpp"

#include <algorithm>

namespace padic {

namespace {

void check_N(int N) {
  if (N < 4) throw InvalidArgument("formal group expansions need N >= 4");
}

}  // namespace

std::vector<PadicSeries> compute_w_iterates(const CurveQ& E, const Integer& p, int N) {
  check_N(N);
  ModulusPtr m = make_modulus(p, N - 3);
  const int target = N + 4;
  const Integer a1 = E.a1, a2 = E.a2, a3 = E.a3, a4 = E.a4, a6 = E.a6;

  std::vector<PadicSeries> iterates;
  int len = 4;
  PadicSeries w = PadicSeries::from_longs(m, {0, 0, 0, 1});
  iterates.push_back(w);

  while (len < target) {
    const int L = std::min(2 * len, target);
    PadicSeries wl = w.truncated(L);
    PadicSeries w2 = series_mul(wl, wl, L);
    PadicSeries w3 = series_mul(w2, wl, L);
    std::vector<Integer> num(static_cast<std::size_t>(L)), den(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) {
      const auto k = static_cast<std::size_t>(i);
      Integer n = -a3 * w2[i] - 2 * a6 * w3[i];
      Integer d = -2 * a3 * wl[i] - 3 * a6 * w2[i];
      if (i >= 1) {
        n -= a4 * w2[i - 1];
        d -= 2 * a4 * wl[i - 1];
      }
      num[k] = n;
      den[k] = d;
    }
    if (L > 3) num[3] += 1;
    den[0] += 1;
    if (L > 1) den[1] -= a1;
    if (L > 2) den[2] -= a2;
    PadicSeries numer(m, std::move(num)), denom(m, std::move(den));
    w = series_mul(numer, series_inv(denom, L), L);
    len = L;
    iterates.push_back(w);
  }
  return iterates;
}

PadicSeries compute_w(const CurveQ& E, const Integer& p, int N) {
  PadicSeries w = compute_w_iterates(E, p, N).back();
  return w.with_offset(3).shifted(-3).truncated(N + 1);
}

FormalGroupData compute_xy_omega(const CurveQ& E, const PadicSeries& w_unit, int N) {
  check_N(N);
  if (w_unit.offset() != 0 || w_unit.size() < N + 1)
    throw InvalidArgument("t^-3 w(t) must be known to O(t^(N+1))");
  const ModulusPtr& m = w_unit.modulus_ptr();
  const int L = N + 1;

  FormalGroupData fg{m, N, w_unit.truncated(L), PadicSeries::zero(m, 1),
                     PadicSeries::zero(m, 1), PadicSeries::zero(m, 1)};
  fg.x_unit = series_inv(fg.w_unit, L);
  fg.y_unit = -fg.x_unit;

  // With X = t^2 x: x' = t^-3 (t X' - 2X) and 2y + a1 x + a3 = t^-3 (-2X + a1 t X + a3 t^3).
  const PadicSeries& X = fg.x_unit;
  std::vector<Integer> num(static_cast<std::size_t>(L)), den(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) {
    const auto k = static_cast<std::size_t>(i);
    num[k] = (i - 2) * X[i];
    den[k] = -2 * X[i];
    if (i >= 1) den[k] += E.a1 * X[i - 1];
  }
  if (L > 3) den[3] += E.a3;
  fg.omega = series_mul(PadicSeries(m, std::move(num)), series_inv(PadicSeries(m, std::move(den)), L), L);
  return fg;
}

FormalGroupData compute_formal_group(const CurveQ& E, const Integer& p, int N) {
  return compute_xy_omega(E, compute_w(E, p, N), N);
}

}  // namespace padic
