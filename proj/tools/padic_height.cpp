#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padic/divpoly.hpp"
#include "padic/fixtures.hpp"
#include "padic/frobenius.hpp"
#include "padic/height.hpp"
#include "padic/json_io.hpp"
#include "padic/sigma.hpp"

using namespace padic;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Integer parse_integer(const std::string& s) {
  Integer v;
  if (s.empty() || v.set_str(s, 10) != 0) throw CLI::ValidationError("not an integer: " + s);
  return v;
}

CurveQ parse_curve(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 5) throw CLI::ValidationError("--curve needs a1,a2,a3,a4,a6");
  return CurveQ::from_ainvariants(parse_integer(parts[0]), parse_integer(parts[1]),
                                  parse_integer(parts[2]), parse_integer(parts[3]),
                                  parse_integer(parts[4]));
}

RationalPoint parse_point(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw CLI::ValidationError("--point needs x,y");
  Rational x, y;
  if (x.set_str(parts[0], 10) != 0 || y.set_str(parts[1], 10) != 0)
    throw CLI::ValidationError("--point coordinates must be rationals like 5/4");
  x.canonicalize();
  y.canonicalize();
  return RationalPoint::from_affine(x, y);
}

struct Common {
  std::string curve, point, p = "0";
  int N = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic heights of points on elliptic curves over Q"};
  app.require_subcommand(1);

  Common c;
  bool column_trick = false, as_json = false, mst = false;
  std::string n2 = "1", R = "0", golden_path;
  std::uint64_t m = 0;

  auto* e2 = app.add_subcommand("e2", "E2(E, omega) modulo p^N via Frobenius");
  e2->add_option("--curve", c.curve, "a1,a2,a3,a4,a6")->required();
  e2->add_option("--p", c.p)->required();
  e2->add_option("--prec", c.N)->required();
  e2->add_flag("--column-trick", column_trick, "compute one Frobenius column only");

  auto* fr = app.add_subcommand("frobenius", "Frobenius matrix on {dx/y, x dx/y} modulo p^N");
  fr->add_option("--curve", c.curve)->required();
  fr->add_option("--p", c.p)->required();
  fr->add_option("--prec", c.N)->required();

  auto* sg = app.add_subcommand("sigma", "coefficients of sigma_p(t) modulo I_N");
  sg->add_option("--curve", c.curve)->required();
  sg->add_option("--p", c.p)->required();
  sg->add_option("--prec", c.N)->required();

  auto* mu = app.add_subcommand("multiple", "(alpha, beta, d) of mQ modulo R");
  mu->add_option("--curve", c.curve)->required();
  mu->add_option("--point", c.point, "x,y")->required();
  mu->add_option("--m", m)->required();
  mu->add_option("--mod", R)->required();

  auto* ht = app.add_subcommand("height", "p-adic height of P modulo p^M");
  ht->add_option("--curve", c.curve)->required();
  ht->add_option("--point", c.point, "x,y")->required();
  ht->add_option("--p", c.p)->required();
  ht->add_option("--prec", c.N, "target precision M")->required();
  ht->add_option("--tamagawa-lcm", n2, "LCM of the Tamagawa numbers");
  ht->add_flag("--json", as_json);
  ht->add_flag("--mst-normalization", mst, "divide by 2p");
  ht->add_flag("--column-trick", column_trick);

  auto* gd = app.add_subcommand("golden", "check a JSON-lines fixture file");
  gd->add_option("path", golden_path)->required();

  auto* bn = app.add_subcommand("bench", "time sigma and multiple_coords at growing sizes");
  std::string bench_curve = "0,0,0,-1,1", bench_point = "1,1", bench_p = "5";
  std::vector<int> bench_N{250, 500, 1000};
  std::vector<int> bench_log_m{10, 20, 30};
  bn->add_option("--curve", bench_curve);
  bn->add_option("--point", bench_point, "a point satisfying (A2)");
  bn->add_option("--p", bench_p);
  bn->add_option("--sigma-prec", bench_N, "sigma precisions N")->expected(1, -1);
  bn->add_option("--log-m", bench_log_m, "multipliers 2^k")->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gd) {
      GoldenReport rep = run_golden_suite(golden_path);
      for (const GoldenFailure& f : rep.failures) {
        std::cout << "FAIL " << f.label << " stage=" << f.stage << " index=" << f.index
                  << "\n  expected: " << f.expected << "\n  actual:   " << f.actual << "\n";
      }
      std::cout << rep.records << " records, " << rep.checks << " checks, "
                << rep.failures.size() << " failures\n";
      return rep.ok() ? 0 : 1;
    }

    if (*bn) {
      const CurveQ E = parse_curve(bench_curve);
      const Integer p = parse_integer(bench_p);
      const int top = *std::max_element(bench_N.begin(), bench_N.end());
      auto t0 = std::chrono::steady_clock::now();
      const ZModPN e2 = compute_e2(E, p, top - 3);
      std::cout << "e2     N=" << top - 3 << "  " << seconds_since(t0) << " s\n";
      for (int N : bench_N) {
        t0 = std::chrono::steady_clock::now();
        compute_sigma(E, p, N, e2.truncate(N - 3));
        std::cout << "sigma  N=" << N << "  " << seconds_since(t0) << " s\n";
      }
      const RationalPoint Q = parse_point(bench_point);
      const Integer R = ipow(p, 8);
      for (int k : bench_log_m) {
        DivPolyContext ctx(E, Q, R);
        t0 = std::chrono::steady_clock::now();
        multiple_coords(ctx, std::uint64_t{1} << k);
        std::cout << "multiple m=2^" << k << "  " << seconds_since(t0) << " s  ("
                  << ctx.evaluations() << " evaluations)\n";
      }
      return 0;
    }

    const CurveQ E = parse_curve(c.curve);
    if (*mu) {
      DivPolyContext ctx(E, parse_point(c.point), parse_integer(R));
      std::cout << format_multiple(multiple_coords(ctx, m), ctx.R()) << "\n";
      return 0;
    }

    const Integer p = parse_integer(c.p);
    if (*e2) {
      ZModPN v = compute_e2(E, p, c.N, column_trick);
      std::cout << PadicNumber::from_residue(p, v.value(), c.N).to_string() << "\n";
    } else if (*fr) {
      std::cout << compute_e2_detailed(E, p, c.N).F.to_string() << "\n";
    } else if (*sg) {
      SigmaSeries s = c.N <= 3 ? compute_sigma(E, p, c.N, nullptr)
                               : compute_sigma(E, p, c.N, compute_e2(E, p, c.N - 3));
      for (int k = 1; k < s.N(); ++k)
        std::cout << "t^" << k << ": " << s.coeff(k) << " mod " << p << "^" << (s.N() - k) << "\n";
    } else if (*ht) {
      HeightJob job{E, parse_point(c.point), p, c.N, parse_integer(n2),
                    mst ? Normalization::MST : Normalization::Standard, column_trick};
      HeightResult r = padic_height(job);
      std::cout << (as_json ? height_to_json(r) : r.to_string()) << "\n";
    }
    return 0;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 1;
  }
}
