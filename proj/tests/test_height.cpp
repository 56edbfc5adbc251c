#include <array>
#include <cstdio>
#include <memory>

#include <doctest.h>

#include "padic/frobenius.hpp"
#include "padic/height.hpp"
#include "padic/json_io.hpp"

using namespace padic;

namespace {

const CurveQ k214a1 = CurveQ::from_ainvariants(1, 0, 0, -12, 16);
const CurveQ k37a = CurveQ::from_ainvariants(0, 0, 1, -1, 0);
const CurveQ k92b1 = CurveQ::from_ainvariants(0, 0, 0, -1, 1);

HeightJob job214a1() {
  HeightJob j;
  j.E = k214a1;
  j.P = RationalPoint::from_affine(0, -4);
  j.p = 43;
  j.M = 6;
  j.n2 = 7;
  return j;
}

HeightJob job37a(int M = 5) {
  HeightJob j;
  j.E = k37a;
  j.P = RationalPoint::from_affine(0, 0);
  j.p = 5;
  j.M = M;
  return j;
}

bool same_up_to_sign(const Integer& x, const Integer& want, const Integer& R) {
  return x == mod(want, R) || x == mod(-want, R);
}

std::string run(const std::string& cmd) {
  std::array<char, 512> buf{};
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe.get())) out += buf.data();
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

}  // namespace

TEST_CASE("precision ledger for 214a1 at 43") {
  PrecisionLedger L = precision_ledger(job214a1());
  CHECK(L.n1 == 43);
  CHECK(L.n == 301);
  CHECK(L.m == 43);
  CHECK(L.v == 1);
  CHECK(L.M_prime == 8);
  CHECK(L.N_sigma == 9);
  CHECK(L.N_e2 == 6);
  CHECK(L.R == ipow(43, 8));
}

TEST_CASE("214a1 height at 43 with every intermediate value") {
  // 7 (0, 4) = (3/4, -25/8); the opposite point gives -Q, whose beta and
  // log argument differ because a1 != 0, but whose height is the same.
  HeightJob j = job214a1();
  j.P = RationalPoint::from_affine(0, 4);
  HeightResult r = padic_height(j);
  const HeightDiagnostics& d = r.diagnostics;
  const Integer R = ipow(43, 8);
  CHECK(d.e2 == Integer(5899790810L));
  CHECK(d.e2_trace_checked);
  CHECK(d.triple.alpha == Integer("9491762277279"));
  CHECK(same_up_to_sign(d.triple.beta, Integer("10171094217691"), R));
  CHECK(same_up_to_sign(d.triple.d, Integer("3360349669562"), R));
  CHECK(d.log_argument == Integer("1430987165464"));
  CHECK(d.log_value == 43 * Integer("44668563676"));
  CHECK(r.value == PadicNumber::from_residue(43, Integer("96127622779"), 7, -1));
  CHECK(r.to_string() == "6*43^-1 + 14 + 43 + 15*43^2 + 38*43^3 + 8*43^4 + 15*43^5 + O(43^6)");
  CHECK(r.precision == 6);

  HeightResult other = padic_height(job214a1());
  CHECK(other.value == r.value);
  CHECK(other.diagnostics.triple.alpha == d.triple.alpha);
  CHECK(other.diagnostics.log_value == d.log_value);
}

TEST_CASE("37a height at 5") {
  HeightResult r = padic_height(job37a());
  CHECK(r.to_string() == "4*5 + 3*5^2 + 3*5^3 + 4*5^4 + O(5^5)");
  CHECK(r.precision == 5);

  HeightJob neg = job37a();
  neg.P = point_neg(k37a, neg.P);
  CHECK(padic_height(neg).value == r.value);

  HeightJob mst = job37a();
  mst.normalization = Normalization::MST;
  HeightResult rm = padic_height(mst);
  CHECK(rm.precision == 4);
  CHECK(rm.value * PadicNumber::from_residue(5, 10, 20, 0) == r.value);
}

TEST_CASE("92b1 height and E2 at 5, precision 10") {
  HeightJob j;
  j.E = k92b1;
  j.P = RationalPoint::from_affine(1, 1);
  j.p = 5;
  j.M = 10;
  j.n2 = 3;
  HeightResult r = padic_height(j);
  CHECK(r.to_string() ==
        "3*5 + 3*5^2 + 2*5^3 + 5^4 + 2*5^5 + 2*5^6 + 3*5^7 + O(5^10)");
  CHECK(r.diagnostics.e2_trace_checked);
  CHECK(r.diagnostics.ledger.N_e2 == 8);
  CHECK(PadicNumber::from_residue(5, *r.diagnostics.e2, 8).to_string() ==
        "3 + 2*5 + 2*5^3 + 3*5^5 + 2*5^7 + O(5^8)");
  CHECK(PadicNumber::from_residue(5, compute_e2(k92b1, 5, 10).value(), 10).to_string() ==
        "3 + 2*5 + 2*5^3 + 3*5^5 + 2*5^7 + 2*5^9 + O(5^10)");
}

TEST_CASE("column trick gives the same height") {
  HeightJob j = job214a1();
  j.column_trick = true;
  CHECK(padic_height(j).value == padic_height(job214a1()).value);
}

TEST_CASE("height preconditions") {
  HeightJob j = job37a();
  j.p = 4;
  CHECK_THROWS_WITH_AS(padic_height(j), "p must be a prime ≥ 5", InvalidArgument);
  j.p = 37;
  CHECK_THROWS_AS(padic_height(j), NotGoodOrdinary);
  j.p = 17;  // a_17 = 0
  CHECK_THROWS_AS(padic_height(j), NotGoodOrdinary);

  HeightJob bad_n2 = job214a1();
  bad_n2.n2 = 1;
  CHECK_THROWS_AS(padic_height(bad_n2), A2Violated);

  HeightJob off = job37a();
  off.P = RationalPoint::from_affine(1, 1);
  CHECK_THROWS_AS(padic_height(off), InvalidArgument);

  HeightJob tors;
  tors.E = CurveQ::from_ainvariants(0, -1, 1, 0, 0);
  tors.P = RationalPoint::from_affine(0, 0);
  tors.p = 7;
  tors.M = 4;
  CHECK_THROWS_AS(padic_height(tors), TorsionPoint);

  HeightJob low = job37a();
  low.M = 1;
  CHECK_THROWS_AS(padic_height(low), InvalidArgument);
  low.M = 5;
  low.n2 = 0;
  CHECK_THROWS_AS(padic_height(low), InvalidArgument);
}

TEST_CASE("JSON output round-trips") {
  for (const HeightJob& j : {job37a(), job214a1()}) {
    HeightResult r = padic_height(j);
    PadicNumber back = padic_number_from_json(height_to_json(r));
    CHECK(back == r.value);
    CHECK(back.to_string() == r.to_string());
  }
  CHECK_THROWS_AS(padic_number_from_json("{"), InvalidArgument);
}

TEST_CASE("CLI JSON and text outputs describe the same number") {
  const std::string base = std::string(PADIC_CLI) +
                           " height --curve 1,0,0,-12,16 --point 0/1,-4/1 --p 43 --prec 6"
                           " --tamagawa-lcm 7";
  const std::string text = run(base);
  const std::string js = run(base + " --json");
  CHECK(text == "6*43^-1 + 14 + 43 + 15*43^2 + 38*43^3 + 8*43^4 + 15*43^5 + O(43^6)");
  CHECK(padic_number_from_json(js).to_string() == text);
}
