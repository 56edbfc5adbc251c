#include "padic/height.hpp"

#include "padic/frobenius.hpp"

namespace padic {

namespace {

void validate(const HeightJob& job) {
  if (job.p < 5 || mpz_probab_prime_p(job.p.get_mpz_t(), 30) == 0)
    throw InvalidArgument("p must be a prime ≥ 5");
  if (!mpz_fits_ulong_p(job.p.get_mpz_t())) throw InvalidArgument("p is too large to count points");
  if (job.M < 2) throw InvalidArgument("target precision M must be at least 2");
  if (job.n2 < 1) throw InvalidArgument("Tamagawa LCM must be a positive integer");
  if (job.P.is_infinity()) throw TorsionPoint("the point at infinity has height zero");
  if (!on_curve(job.E, job.P)) throw InvalidArgument("point is not on the curve");
}

}  // namespace

PrecisionLedger precision_ledger(const HeightJob& job) {
  validate(job);
  const unsigned long pl = mpz_get_ui(job.p.get_mpz_t());
  if (mpz_divisible_p(job.E.disc.get_mpz_t(), job.p.get_mpz_t()))
    throw NotGoodOrdinary("p divides the discriminant");
  PointCount pc = count_points(job.E, pl);
  if (mpz_divisible_p(pc.ap.get_mpz_t(), job.p.get_mpz_t()))
    throw NotGoodOrdinary("reduction at p is supersingular");

  PrecisionLedger L;
  L.n1 = pc.n1;
  mpz_lcm(L.n.get_mpz_t(), pc.n1.get_mpz_t(), job.n2.get_mpz_t());
  L.m = L.n / job.n2;
  L.v = padic_val(L.n, job.p);
  L.M_prime = job.M + 2 * L.v;
  L.N_sigma = L.M_prime + 1;
  L.N_e2 = L.N_sigma >= 4 ? L.M_prime - 2 : 0;
  L.R = ipow(job.p, static_cast<unsigned long>(L.M_prime));
  return L;
}

ZModPN evaluate_sigma_ratio(const SigmaSeries& sigma, const Triple& triple, const Integer& p,
                            int M_prime) {
  ModulusPtr m = make_modulus(p, M_prime);
  const Integer& R = m->pN;
  if (!mpz_divisible_p(triple.d.get_mpz_t(), p.get_mpz_t()))
    throw A1Violated("mQ does not reduce to the identity mod p (check n1 and n2)");
  if (mpz_divisible_p(triple.beta.get_mpz_t(), p.get_mpz_t()))
    throw InvariantViolated("beta(mQ) is not a unit mod p");

  const Integer ratio = mod(-triple.alpha * inv_mod(triple.beta, R), R);  // -alpha/beta
  const Integer t = mod(triple.d * ratio, R);
  Integer sum = 1, tk = 1;
  const int kmax = std::min(M_prime - 1, sigma.N() - 2);
  for (int k = 1; k <= kmax; ++k) {
    tk = mod(tk * t, R);
    sum += sigma.coeff(k + 1) * tk;
  }
  return ZModPN(m, ratio * sum);
}

HeightResult padic_height(const HeightJob& job) {
  PrecisionLedger L = precision_ledger(job);
  const CurveQ& E = job.E;
  const Integer& p = job.p;

  if (is_torsion(E, job.P)) throw TorsionPoint("P is a torsion point");

  HeightDiagnostics diag;
  diag.ledger = L;
  diag.n2 = job.n2;
  diag.n2_divisible_by_p = mpz_divisible_p(job.n2.get_mpz_t(), p.get_mpz_t()) != 0;

  RationalPoint Q = scalar_mul(E, job.n2, job.P);
  if (Q.is_infinity()) throw TorsionPoint("n2 P is the identity");
  for (const Integer& ell : prime_factors(E.disc))
    if (reduces_to_singular(E, Q, ell))
      throw A2Violated("n2 P reduces to a singular point mod " + ell.get_str() +
                       "; check the Tamagawa LCM n2");

  std::optional<ZModPN> e2;
  if (L.N_e2 > 0) {
    E2Options o;
    o.column_trick = job.column_trick;
    E2Result r = compute_e2_detailed(E, p, L.N_e2, o);
    e2 = r.e2;
    diag.e2 = r.e2.value();
    diag.e2_trace_checked = r.trace_checked;
  }
  SigmaSeries sigma = compute_sigma(E, p, L.N_sigma, e2 ? &*e2 : nullptr);

  Triple tr;
  if (L.m == 1) {
    tr = Triple{mod(Q.alpha(), L.R), mod(Q.beta(), L.R), mod(Q.d(), L.R)};
  } else {
    if (!mpz_fits_ulong_p(L.m.get_mpz_t())) throw InvalidArgument("multiplier m is too large");
    DivPolyContext ctx = make_context(E, Q, L.R);
    MultipleCoords mc = multiple_coords(ctx, mpz_get_ui(L.m.get_mpz_t()));
    tr = Triple{mc.alpha, mc.beta, mc.d};
  }
  diag.triple = tr;

  ZModPN u = evaluate_sigma_ratio(sigma, tr, p, L.M_prime);
  ZModPN lg = iwasawa_log(u);
  diag.log_argument = u.value();
  diag.log_value = lg.value();

  // n^2 = p^(2v) w with w a unit.
  Integer w = L.n * L.n;
  mpz_remove(w.get_mpz_t(), w.get_mpz_t(), p.get_mpz_t());
  ZModPN scaled = ZModPN(lg.modulus_ptr(), 2) * lg * inv_mod_ppow(ZModPN(lg.modulus_ptr(), w));
  int shift = -2 * L.v;
  Integer residue = scaled.value();
  if (job.normalization == Normalization::MST) {
    residue = mod(residue * inv_mod(Integer(2), L.R), L.R);
    shift -= 1;
  }

  HeightResult out;
  out.value = PadicNumber::from_residue(p, residue, L.M_prime, shift);
  out.precision = L.M_prime + shift;
  out.diagnostics = std::move(diag);
  return out;
}

}  // namespace padic
