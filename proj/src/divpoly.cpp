#include "padic/divpoly.hpp"

#include <algorithm>

namespace padic {

DivPolyContext::DivPolyContext(const CurveQ& E, const RationalPoint& Q, const Integer& R)
    : E_(E), Q_(Q), R_(R) {
  if (Q.is_infinity()) throw InvalidArgument("division polynomials need an affine point");
  if (R < 3) throw InvalidArgument("modulus R must be at least 3");
  if (mpz_even_p(R.get_mpz_t())) throw EvenModulus("modulus R must be odd");

  alpha_ = reduce(Q.alpha());
  beta_ = reduce(Q.beta());
  d_ = reduce(Q.d());
  const Integer d2 = reduce(d_ * d_), d3 = reduce(d2 * d_), d4 = reduce(d2 * d2),
                d6 = reduce(d3 * d3);
  a1_ = reduce(d_ * E.a1);
  a2_ = reduce(d2 * E.a2);
  a3_ = reduce(d3 * E.a3);
  a4_ = reduce(d4 * E.a4);
  a6_ = reduce(d6 * E.a6);

  b2_ = reduce(a1_ * a1_ + 4 * a2_);
  b4_ = reduce(a1_ * a3_ + 2 * a4_);
  b6_ = reduce(a3_ * a3_ + 4 * a6_);
  b8_ = reduce(a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_);

  const Integer& x = alpha_;
  const Integer x2 = reduce(x * x), x3 = reduce(x2 * x), x4 = reduce(x2 * x2);
  B4_ = reduce(6 * x2 + b2_ * x + b4_);
  B6_ = reduce(4 * x3 + b2_ * x2 + 2 * b4_ * x + b6_);
  B8_ = reduce(3 * x4 + b2_ * x3 + 3 * b4_ * x2 + 3 * b6_ * x + b8_);
  B6sq_ = reduce(B6_ * B6_);
  T_ = reduce(2 * beta_ + a1_ * alpha_ + a3_);

  memo_[0] = 0;
  memo_[1] = 1;
  memo_[2] = reduce(Integer(-1));
  memo_[3] = B8_;
  memo_[4] = reduce(B6sq_ - B4_ * B8_);
}

const Integer& DivPolyContext::a(int k) const {
  switch (k) {
    case 1: return a1_;
    case 2: return a2_;
    case 3: return a3_;
    case 4: return a4_;
    case 6: return a6_;
    default: throw InvalidArgument("no normalized a-invariant with that index");
  }
}

const Integer& DivPolyContext::b(int k) const {
  switch (k) {
    case 2: return b2_;
    case 4: return b4_;
    case 6: return b6_;
    case 8: return b8_;
    default: throw InvalidArgument("no normalized b-invariant with that index");
  }
}

const Integer& DivPolyContext::B(int k) const {
  switch (k) {
    case 4: return B4_;
    case 6: return B6_;
    case 8: return B8_;
    default: throw InvalidArgument("no B constant with that index");
  }
}

const Integer& DivPolyContext::g(std::uint64_t j) {
  auto it = memo_.find(j);
  if (it != memo_.end()) return it->second;

  const std::uint64_t n = j / 2;
  Integer v;
  if (j % 2 == 1) {
    const Integer gn = g(n), gn1 = g(n + 1), gn2 = g(n + 2), gm1 = g(n - 1);
    const Integer gn_cubed = gn * gn * gn, gn1_cubed = gn1 * gn1 * gn1;
    if (n % 2 == 0)
      v = B6sq_ * gn2 % R_ * gn_cubed - gm1 * gn1_cubed;
    else
      v = gn2 * gn_cubed - B6sq_ * gm1 % R_ * gn1_cubed;
  } else {
    const Integer gn = g(n), gn1 = g(n + 1), gn2 = g(n + 2), gm1 = g(n - 1), gm2 = g(n - 2);
    v = gn * ((gm2 * gn1 * gn1 - gn2 * gm1 * gm1) % R_);
  }
  ++evaluations_;
  return memo_.emplace(j, reduce(v)).first->second;
}

Integer DivPolyContext::psi(std::uint64_t j) {
  const Integer& gj = g(j);
  return j % 2 == 0 ? reduce(T_ * gj) : gj;
}

std::vector<std::uint64_t> DivPolyContext::computed_indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(memo_.size());
  for (const auto& [k, v] : memo_) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

DivPolyContext make_context(const CurveQ& E, const RationalPoint& Q, const Integer& R) {
  return DivPolyContext(E, Q, R);
}

namespace {

// Order of a torsion point (at most 12 over Q), or 0 for non-torsion points.
unsigned torsion_order(const CurveQ& E, const RationalPoint& Q) {
  RationalPoint acc = Q;
  for (unsigned k = 1; k <= 12; ++k) {
    if (acc.is_infinity()) return k;
    acc = point_add(E, acc, Q);
  }
  return 0;
}

}  // namespace

MultipleCoords multiple_coords(DivPolyContext& ctx, std::uint64_t m) {
  if (m < 2) throw InvalidArgument("multiple_coords needs m >= 2");
  const Integer& R = ctx.R();
  auto red = [&](const Integer& x) { return mod(x, R); };

  MultipleCoords out;
  for (std::uint64_t j = m - 2; j <= m + 2; ++j) ctx.g(j);
  out.psi_m_minus_1 = ctx.psi(m - 1);
  out.psi_m = ctx.psi(m);
  out.psi_m_plus_1 = ctx.psi(m + 1);

  if (out.psi_m == 0) {
    unsigned k = torsion_order(ctx.curve(), ctx.point());
    if (k != 0 && m % k == 0)
      throw TorsionCollapse("mQ is the identity: Q has order " + std::to_string(k));
  }

  const Integer& alpha = ctx.alpha();
  const Integer psi2 = red(out.psi_m * out.psi_m);
  out.theta_m = red(alpha * psi2 - out.psi_m_plus_1 * out.psi_m_minus_1);

  const Integer gm2 = ctx.g(m - 2), gm1 = ctx.g(m - 1), gp1 = ctx.g(m + 1), gp2 = ctx.g(m + 2);
  Integer inner = red(gm2 * gp1 * gp1 - gp2 * gm1 * gm1);
  if (m % 2 == 1) inner = red(ctx.T() * inner);
  Integer sum = inner + out.psi_m * red(ctx.a(1) * out.theta_m + ctx.a(3) * psi2);
  const Integer minus_half = red(-inv_mod(Integer(2), R));
  out.omega_m = red(minus_half * sum);

  out.alpha = out.theta_m;
  out.beta = out.omega_m;
  out.d = red(out.psi_m * ctx.d());
  return out;
}

std::string format_multiple(const MultipleCoords& mc, const Integer& R) {
  Integer beta = mc.beta, d = mc.d;
  if (2 * beta > R) {
    beta = mod(-beta, R);
    d = mod(-d, R);
  }
  return "alpha=" + mc.alpha.get_str() + " beta=±" + beta.get_str() + " d=±" + d.get_str();
}

}  // namespace padic
