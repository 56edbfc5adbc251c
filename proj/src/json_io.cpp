#include "padic/json_io.hpp"

#include <json.hpp>

namespace padic {

using nlohmann::json;

std::string height_to_json(const HeightResult& r, bool with_diagnostics) {
  const PadicNumber& v = r.value;
  json j;
  j["p"] = mpz_get_ui(v.p().get_mpz_t());
  j["precision"] = v.absolute_precision();
  j["valuation"] = v.is_zero() ? v.absolute_precision() : v.valuation();
  json digs = json::array();
  if (!v.is_zero())
    for (const Integer& d : v.digits()) digs.push_back(mpz_get_ui(d.get_mpz_t()));
  j["digits"] = digs;
  j["text"] = v.to_string();
  if (with_diagnostics) {
    const HeightDiagnostics& d = r.diagnostics;
    json dj;
    dj["n1"] = d.ledger.n1.get_str();
    dj["n2"] = d.n2.get_str();
    dj["n"] = d.ledger.n.get_str();
    dj["m"] = d.ledger.m.get_str();
    dj["v"] = d.ledger.v;
    dj["M_prime"] = d.ledger.M_prime;
    dj["N_sigma"] = d.ledger.N_sigma;
    dj["N_e2"] = d.ledger.N_e2;
    dj["alpha"] = d.triple.alpha.get_str();
    dj["beta"] = d.triple.beta.get_str();
    dj["d"] = d.triple.d.get_str();
    dj["log_argument"] = d.log_argument.get_str();
    dj["log_value"] = d.log_value.get_str();
    dj["e2"] = d.e2 ? json(d.e2->get_str()) : json(nullptr);
    dj["e2_trace_checked"] = d.e2_trace_checked;
    dj["n2_divisible_by_p"] = d.n2_divisible_by_p;
    j["diagnostics"] = dj;
  }
  return j.dump();
}

PadicNumber padic_number_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed height JSON: ") + e.what());
  }
  const Integer p(std::to_string(j.at("p").get<std::uint64_t>()));
  const int prec = j.at("precision").get<int>();
  const int val = j.at("valuation").get<int>();
  const json& digs = j.at("digits");
  if (digs.empty()) return PadicNumber::zero(p, prec);
  Integer unit = 0, pk = 1;
  for (const json& d : digs) {
    unit += Integer(std::to_string(d.get<std::uint64_t>())) * pk;
    pk *= p;
  }
  return PadicNumber::from_residue(p, unit, prec - val, val);
}

}  // namespace padic
