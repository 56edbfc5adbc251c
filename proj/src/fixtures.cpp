#include "padic/fixtures.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "padic/divpoly.hpp"
#include "padic/frobenius.hpp"
#include "padic/height.hpp"
#include "padic/sigma.hpp"

namespace padic {

namespace {

using nlohmann::json;

Integer to_integer(const json& v) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) return Integer(v.get<std::string>());
  throw InvalidArgument("expected an integer or a decimal string");
}

}  // namespace

CurveFixture parse_fixture(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed fixture: ") + e.what());
  }
  try {
    CurveFixture fx;
    fx.label = j.at("label").get<std::string>();
    const json& a = j.at("a_invariants");
    if (!a.is_array() || a.size() != 5) throw InvalidArgument("a_invariants needs five entries");
    fx.E = CurveQ::from_ainvariants(to_integer(a[0]), to_integer(a[1]), to_integer(a[2]),
                                    to_integer(a[3]), to_integer(a[4]));
    if (j.contains("generator") && !j["generator"].is_null()) {
      const json& g = j["generator"];
      if (!g.is_array() || g.size() != 4)
        throw InvalidArgument("generator needs [x_num, x_den, y_num, y_den]");
      Rational x(to_integer(g[0]), to_integer(g[1])), y(to_integer(g[2]), to_integer(g[3]));
      x.canonicalize();
      y.canonicalize();
      fx.generator = RationalPoint::from_affine(x, y);
      if (!on_curve(fx.E, *fx.generator)) throw InvalidArgument("generator is not on the curve");
    }
    if (j.contains("tamagawa_lcm")) fx.n2 = to_integer(j["tamagawa_lcm"]);
    if (fx.n2 < 1) throw InvalidArgument("tamagawa_lcm must be at least 1");
    for (const json& e : j.value("expected", json::array())) {
      GoldenExpectation ex;
      ex.stage = e.at("stage").get<std::string>();
      if (e.contains("p")) ex.p = to_integer(e["p"]);
      ex.prec = e.value("prec", 0);
      ex.value = e.at("value").get<std::string>();
      ex.prefix = e.value("match", std::string("exact")) == "prefix";
      if (e.contains("modulus")) ex.modulus = to_integer(e["modulus"]);
      ex.m = e.value("m", std::uint64_t{0});
      fx.expected.push_back(std::move(ex));
    }
    return fx;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed fixture: ") + e.what());
  }
}

std::string render_stage(const CurveFixture& fx, const GoldenExpectation& ex) {
  const CurveQ& E = fx.E;
  if (ex.stage == "e2") {
    ZModPN e2 = compute_e2(E, ex.p, ex.prec);
    return PadicNumber::from_residue(ex.p, e2.value(), ex.prec).to_string();
  }
  if (ex.stage == "frobenius") return compute_e2_detailed(E, ex.p, ex.prec).F.to_string();
  if (ex.stage == "count") {
    PointCount pc = count_points(E, mpz_get_ui(ex.p.get_mpz_t()));
    return "n1=" + pc.n1.get_str() + " ap=" + pc.ap.get_str();
  }
  if (ex.stage == "sigma") {
    if (ex.prec <= 3) return compute_sigma(E, ex.p, ex.prec, nullptr).to_string();
    ZModPN e2 = compute_e2(E, ex.p, ex.prec - 3);
    return compute_sigma(E, ex.p, ex.prec, e2).to_string();
  }
  if (!fx.generator) throw InvalidArgument("stage " + ex.stage + " needs a generator");
  if (ex.stage == "multiple") {
    DivPolyContext ctx(E, *fx.generator, ex.modulus);
    MultipleCoords mc = multiple_coords(ctx, ex.m);
    return format_multiple(mc, ex.modulus);
  }
  if (ex.stage == "height") {
    HeightJob job{E, *fx.generator, ex.p, ex.prec, fx.n2};
    return padic_height(job).to_string();
  }
  throw InvalidArgument("unknown stage " + ex.stage);
}

std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && s.compare(i, 3, " + ") == 0) {
      out.push_back(cur);
      cur.clear();
      i += 2;
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  return out;
}

namespace {

void check(const CurveFixture& fx, const GoldenExpectation& ex, GoldenReport& rep) {
  ++rep.checks;
  std::string actual;
  try {
    actual = render_stage(fx, ex);
  } catch (const Error& e) {
    rep.failures.push_back({fx.label, ex.stage, -1, ex.value, std::string(e.name()) + ": " + e.what()});
    return;
  }
  std::vector<std::string> want = split_terms(ex.value), got = split_terms(actual);
  if (ex.prefix && !want.empty() && want.back().rfind("O(", 0) == 0) want.pop_back();
  const std::size_t n = ex.prefix ? want.size() : std::max(want.size(), got.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::string w = i < want.size() ? want[i] : "";
    const std::string g = i < got.size() ? got[i] : "";
    if (w != g) {
      rep.failures.push_back({fx.label, ex.stage, static_cast<int>(i), w, g});
      return;
    }
  }
}

}  // namespace

GoldenReport run_golden_stream(std::istream& in) {
  GoldenReport rep;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    CurveFixture fx = parse_fixture(line);
    ++rep.records;
    for (const GoldenExpectation& ex : fx.expected) check(fx, ex, rep);
  }
  return rep;
}

GoldenReport run_golden_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return run_golden_stream(in);
}

}  // namespace padic
