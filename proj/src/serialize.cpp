#include "lienard/serialize.hpp"

#include "lienard/errors.hpp"

namespace lienard {

namespace {

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::InvalidInput, "bad rational '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<RingElem> coeff_list(const json& j, const char* name) {
  if (!j.contains(name)) throw Error(ErrorKind::InvalidInput, std::string("missing field '") + name + "'");
  const json& arr = j.at(name);
  if (!arr.is_array()) throw Error(ErrorKind::InvalidInput, std::string("field '") + name + "' must be an array");
  std::vector<RingElem> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    try {
      out.push_back(ring_from_json(arr[i]));
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidInput, std::string(name) + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

}  // namespace

json to_json(const RingElem& r) {
  json arr = json::array();
  for (const auto& t : r.terms()) arr.push_back({{"q", t.q.get_str()}, {"e", t.e}, {"p", t.p}});
  return arr;
}

RingElem ring_from_json(const json& j) {
  if (j.is_number_integer()) return RingElem(mpq_class(j.get<long>()));
  if (j.is_number()) return RingElem::from_double(j.get<double>());
  if (j.is_string()) return RingElem(parse_rational(j.get<std::string>()));
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "ring element must be a term list, number or \"num/den\"");
  std::vector<RingTerm> terms;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("q"))
      throw Error(ErrorKind::InvalidInput, "ring term must be an object with a \"q\" field");
    RingTerm term;
    const json& q = t.at("q");
    if (q.is_string()) {
      term.q = parse_rational(q.get<std::string>());
    } else if (q.is_number_integer()) {
      term.q = q.get<long>();
    } else if (q.is_number()) {
      mpq_set_d(term.q.get_mpq_t(), q.get<double>());
    } else {
      throw Error(ErrorKind::InvalidInput, "ring term \"q\" must be a string or number");
    }
    term.e = t.value("e", 0);
    term.p = t.value("p", 0);
    terms.push_back(term);
  }
  return ring_normalize(terms);
}

json to_json(const HalfPowerPoly& p) {
  json obj = json::object();
  for (const auto& [k, c] : p.coeffs()) obj[std::to_string(k)] = to_json(c);
  return obj;
}

HalfPowerPoly hp_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "half-power polynomial must be an object");
  HalfPowerPoly p;
  for (const auto& [key, val] : j.items()) {
    std::size_t pos = 0;
    int k = 0;
    try {
      k = std::stoi(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || k < 0) throw Error(ErrorKind::InvalidInput, "bad half-power key '" + key + "'");
    p.add(k, ring_from_json(val));
  }
  return p;
}

json to_json(const LienardSystem& sys) {
  auto list = [](const std::vector<RingElem>& v) {
    json arr = json::array();
    for (const auto& r : v) arr.push_back(to_json(r));
    return arr;
  };
  return json{{"case", std::string(to_string(sys.kase))},
              {"m", sys.m},
              {"n", sys.n},
              {"a0", list(sys.a0)},
              {"a1", list(sys.a1)},
              {"b0", list(sys.b0)},
              {"b1", list(sys.b1)},
              {"c", list(sys.c)},
              {"lambda", sys.lambda},
              {"eps", sys.eps}};
}

LienardSystem system_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "system document must be a JSON object");
  for (const char* key : {"case", "m", "n"})
    if (!j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  LienardSystem s;
  s.kase = parse_switch_case(j.at("case").get<std::string>());
  s.m = j.at("m").get<int>();
  s.n = j.at("n").get<int>();
  s.a0 = coeff_list(j, "a0");
  s.a1 = coeff_list(j, "a1");
  s.b0 = coeff_list(j, "b0");
  s.b1 = coeff_list(j, "b1");
  s.c = coeff_list(j, "c");
  s.lambda = j.value("lambda", 0.0);
  s.eps = j.value("eps", 0.0);
  s.validate();
  return s;
}

}  // namespace lienard
