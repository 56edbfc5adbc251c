#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "padic/divpoly.hpp"

using namespace padic;

namespace {

const CurveQ k91b1 = CurveQ::from_ainvariants(0, 1, 1, -7, 5);

RationalPoint p91b1() { return RationalPoint::from_affine(Rational(5, 4), Rational(-3, 8)); }

}  // namespace

TEST_CASE("normalized constants for 91b1 mod 99") {
  DivPolyContext ctx(k91b1, p91b1(), 99);
  CHECK(ctx.alpha() == 5);
  CHECK(ctx.beta() == 96);
  CHECK(ctx.d() == 2);
  CHECK(ctx.a(1) == 0);
  CHECK(ctx.a(2) == 4);
  CHECK(ctx.a(3) == 8);
  CHECK(ctx.a(4) == 86);
  CHECK(ctx.a(6) == 23);
  CHECK(ctx.b(2) == 16);
  CHECK(ctx.b(4) == 73);
  CHECK(ctx.b(6) == 57);
  CHECK(ctx.b(8) == 59);
  CHECK(ctx.B(4) == 6);
  CHECK(ctx.B(6) == 4);
  CHECK(ctx.B(8) == 67);
  CHECK(ctx.T() == 2);
}

TEST_CASE("g values, psi, theta and omega for m = 101 mod 99") {
  DivPolyContext ctx(k91b1, p91b1(), 99);
  MultipleCoords mc = multiple_coords(ctx, 101);
  const std::vector<std::pair<std::uint64_t, long>> table{
      {0, 0},   {1, 1},   {2, 98},  {3, 67},  {4, 10},  {5, 37},  {6, 63},  {7, 98},  {8, 35},
      {9, 50},  {10, 73}, {11, 98}, {12, 0},  {13, 64}, {14, 71}, {15, 4},  {16, 1},  {22, 1},
      {23, 35}, {24, 0},  {25, 91}, {26, 17}, {27, 67}, {28, 46}, {48, 0},  {49, 1},  {50, 62},
      {51, 49}, {52, 46}, {53, 1},  {99, 49}, {100, 19}, {101, 82}, {102, 72}, {103, 98}};
  REQUIRE(table.size() == 35);
  std::vector<std::uint64_t> listed;
  for (const auto& [j, v] : table) {
    CAPTURE(j);
    CHECK(ctx.g(j) == v);
    listed.push_back(j);
  }
  CHECK(ctx.computed_indices() == listed);
  CHECK(mc.psi_m_minus_1 == 38);
  CHECK(mc.psi_m == 82);
  CHECK(mc.psi_m_plus_1 == 45);
  CHECK(mc.theta_m == 32);
  CHECK(mc.omega_m == 4);
  CHECK(mc.alpha == 32);
  CHECK(mc.beta == 4);
  CHECK(mc.d == 65);
  CHECK(format_multiple(mc, 99) == "alpha=32 beta=±4 d=±65");
}

TEST_CASE("multiples agree with exact scalar multiplication") {
  struct Case {
    CurveQ E;
    RationalPoint P;
  };
  const std::vector<Case> cases{
      {k91b1, p91b1()},
      {CurveQ::from_ainvariants(0, 0, 1, -1, 0), RationalPoint::from_affine(0, 0)},
      {CurveQ::from_ainvariants(1, 0, 0, -12, 16), RationalPoint::from_affine(Rational(3, 4), Rational(-25, 8))},
      {CurveQ::from_ainvariants(0, 1, 1, -2, 0), RationalPoint::from_affine(-1, 1)},
  };
  std::mt19937_64 rng(5);
  for (const Case& c : cases) {
    oracle::QPoint qp{false, c.P.x(), c.P.y()};
    for (int trial = 0; trial < 6; ++trial) {
      const std::uint64_t m = 2 + rng() % 120;
      const Integer R = ipow(std::vector<int>{3, 5, 7, 13}[rng() % 4], 1 + rng() % 6);
      DivPolyContext ctx(c.E, c.P, R);
      MultipleCoords mc = multiple_coords(ctx, m);
      oracle::Triple t = oracle::reduce_point(oracle::q_mul(c.E, m, qp), R);
      CAPTURE(m);
      CAPTURE(R);
      CHECK(mc.alpha == t.alpha);
      const bool plus = mc.beta == t.beta && mc.d == t.d;
      const bool minus = mc.beta == mod(-t.beta, R) && mc.d == mod(-t.d, R);
      CHECK((plus || minus));
    }
  }
}

TEST_CASE("evaluation count is logarithmic") {
  DivPolyContext ctx(k91b1, p91b1(), ipow(5, 8));
  multiple_coords(ctx, std::uint64_t(1) << 30);
  CHECK(ctx.evaluations() <= 8 * 30);
}

TEST_CASE("division polynomial preconditions") {
  CHECK_THROWS_AS(DivPolyContext(k91b1, p91b1(), 100), EvenModulus);
  CHECK_THROWS_AS(DivPolyContext(k91b1, p91b1(), 1), InvalidArgument);
  CHECK_THROWS_AS(DivPolyContext(k91b1, RationalPoint::infinity(), 99), InvalidArgument);
  DivPolyContext ctx(k91b1, p91b1(), 99);
  CHECK_THROWS_AS(multiple_coords(ctx, 1), InvalidArgument);
  CHECK_THROWS_AS(ctx.a(5), InvalidArgument);

  auto E11 = CurveQ::from_ainvariants(0, -1, 1, 0, 0);
  DivPolyContext t(E11, RationalPoint::from_affine(0, 0), 125);
  CHECK_THROWS_AS(multiple_coords(t, 5), TorsionCollapse);
  CHECK_THROWS_AS(multiple_coords(t, 10), TorsionCollapse);
  CHECK_NOTHROW(multiple_coords(t, 6));
}
