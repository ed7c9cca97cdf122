#include "mahler/io.hpp"

#include "mahler/errors.hpp"

namespace mahler::io {

using mahler::to_string;

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InvalidInput(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(std::string("missing field '") + key + "'");
  return *it;
}

long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  return j.get<long>();
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw InvalidInput(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  return j;
}

std::vector<Rational> rationals(const Json& j, const char* what) {
  std::vector<Rational> out;
  for (const auto& x : array(j, what)) out.push_back(rational_from_json(x));
  return out;
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json unity_json(const std::vector<UnityOrder>& v) {
  Json out = Json::array();
  for (const auto& u : v) out.push_back({{"order", u.order}, {"multiplicity", u.multiplicity}, {"M", u.M}});
  return out;
}

std::vector<UnityOrder> unity_from_json(const Json& j, const char* what) {
  std::vector<UnityOrder> out;
  for (const auto& u : array(j, what)) {
    out.push_back({integer(field(u, "order"), "order"),
                   static_cast<unsigned>(integer(field(u, "multiplicity"), "multiplicity")),
                   integer(field(u, "M"), "M")});
  }
  return out;
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "REGULAR") return Verdict::regular;
  if (s == "NOT_REGULAR") return Verdict::not_regular;
  if (s == "INCONCLUSIVE") return Verdict::inconclusive;
  throw InvalidInput("unknown verdict '" + s + "'");
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

Json parse(std::string_view input) {
  try {
    return Json::parse(input);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Poly& p) { return rationals_json(p.coeffs()); }

Json to_json(const LaurentSeries& s) {
  return {{"valuation", s.valuation()}, {"order", s.order()}, {"coeffs", rationals_json(s.coeffs())}};
}

Json to_json(const MahlerEquation& eq) {
  Json coeffs = Json::array();
  for (const auto& a : eq.coeffs()) coeffs.push_back(to_json(a));
  return {{"k", eq.k()}, {"coeffs", coeffs}};
}

Json to_json(const LinearRepresentation& rep) {
  Json matrices = Json::array();
  for (const auto& m : rep.matrices) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(rationals_json(m.row(i)));
    matrices.push_back(rows);
  }
  return {{"k", rep.k}, {"dim", rep.dim()}, {"row", rationals_json(rep.row)}, {"matrices", matrices},
          {"col", rationals_json(rep.col)}};
}

Json to_json(const BeckerNormalization& n) {
  Json j = {{"k", n.k},
            {"set_A", unity_json(n.set_A)},
            {"fixed_type", unity_json(n.fixed_type)},
            {"N", n.N},
            {"gamma", n.gamma},
            {"c", to_json(n.c)},
            {"Q", to_json(n.Q)},
            {"P", to_json(n.P)},
            {"h", to_json(n.h)},
            {"a", to_json(n.a)},
            {"new_eq", to_json(n.new_eq)}};
  if (n.g_check) {
    j["g_check"] = {{"residual_order", n.g_check->residual_order},
                    {"propagated_order", n.g_check->propagated_order},
                    {"holds", n.g_check->holds()}};
  }
  return j;
}

Json to_json(const Certificate& c) {
  Json j = {{"verdict", to_string(c.verdict)}, {"criterion", c.criterion}, {"reason", c.reason}};
  if (c.order) j["order"] = *c.order;
  if (c.M) j["M"] = *c.M;
  if (c.equation) j["equation"] = to_json(*c.equation);
  if (!c.minimality.empty()) j["minimality"] = c.minimality;
  return j;
}

Json to_json(const Decomposition& d) {
  return {{"J", to_json(d.J)}, {"Gamma", to_json(d.Gamma)}, {"rho", to_json(d.rho)}, {"delta", d.delta},
          {"factors", d.factors}};
}

Json to_json(const CorpusItem& item) {
  Json expected = {{"verdict", to_string(item.expected.verdict)},
                   {"criterion", item.expected.criterion},
                   {"normalization", to_json(item.expected.normalization)}};
  expected["closure_dim"] = item.expected.closure_dim ? Json(*item.expected.closure_dim) : Json(nullptr);
  return {{"name", item.name}, {"k", item.k}, {"equation", to_json(item.equation)},
          {"prefix", to_json(item.prefix)}, {"expected", expected}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(text(j, "rational"));
}

Poly poly_from_json(const Json& j) { return Poly(rationals(j, "polynomial")); }

LaurentSeries series_from_json(const Json& j) {
  return guarded([&] {
    const long v = integer(field(j, "valuation"), "valuation");
    const long order = integer(field(j, "order"), "order");
    auto c = rationals(field(j, "coeffs"), "coeffs");
    if (v > order) throw InvalidInput("series valuation exceeds its order");
    if (static_cast<long>(c.size()) > order - v) throw InvalidInput("series has more coefficients than order - valuation");
    return LaurentSeries(v, std::move(c), order);
  });
}

MahlerEquation equation_from_json(const Json& j) {
  return guarded([&] {
    const long k = integer(field(j, "k"), "k");
    std::vector<Poly> coeffs;
    for (const auto& a : array(field(j, "coeffs"), "coeffs")) coeffs.push_back(poly_from_json(a));
    return MahlerEquation(static_cast<int>(k), std::move(coeffs));
  });
}

LinearRepresentation rep_from_json(const Json& j) {
  return guarded([&] {
    LinearRepresentation rep;
    rep.k = static_cast<int>(integer(field(j, "k"), "k"));
    rep.row = rationals(field(j, "row"), "row");
    rep.col = rationals(field(j, "col"), "col");
    const auto d = rep.row.size();
    if (j.contains("dim") && integer(j.at("dim"), "dim") != static_cast<long>(d)) {
      throw InvalidInput("representation dim disagrees with the row length");
    }
    for (const auto& m : array(field(j, "matrices"), "matrices")) {
      Matrix<Rational> a(d, d);
      if (array(m, "matrix").size() != d) throw InvalidInput("representation matrix has the wrong row count");
      for (std::size_t r = 0; r < d; ++r) {
        const auto row = rationals(m[r], "matrix row");
        if (row.size() != d) throw InvalidInput("representation matrix row has the wrong length");
        for (std::size_t c = 0; c < d; ++c) a(r, c) = row[c];
      }
      rep.matrices.push_back(std::move(a));
    }
    rep.validate();
    return rep;
  });
}

BeckerNormalization normalization_from_json(const Json& j) {
  return guarded([&] {
    BeckerNormalization n;
    n.k = static_cast<int>(integer(field(j, "k"), "k"));
    n.set_A = unity_from_json(field(j, "set_A"), "set_A");
    n.fixed_type = unity_from_json(field(j, "fixed_type"), "fixed_type");
    n.N = integer(field(j, "N"), "N");
    n.gamma = integer(field(j, "gamma"), "gamma");
    n.c = rational_from_json(field(j, "c"));
    n.Q = poly_from_json(field(j, "Q"));
    n.P = poly_from_json(field(j, "P"));
    n.h = poly_from_json(field(j, "h"));
    n.a = poly_from_json(field(j, "a"));
    n.new_eq = equation_from_json(field(j, "new_eq"));
    if (j.contains("g_check")) {
      const auto& g = j.at("g_check");
      n.g_check = Residual{integer(field(g, "residual_order"), "residual_order"),
                           integer(field(g, "propagated_order"), "propagated_order")};
    }
    return n;
  });
}

Certificate certificate_from_json(const Json& j) {
  return guarded([&] {
    Certificate c;
    c.verdict = verdict_from_string(text(field(j, "verdict"), "verdict"));
    c.criterion = text(field(j, "criterion"), "criterion");
    c.reason = text(field(j, "reason"), "reason");
    if (j.contains("order")) c.order = integer(j.at("order"), "order");
    if (j.contains("M")) c.M = integer(j.at("M"), "M");
    if (j.contains("equation")) c.equation = equation_from_json(j.at("equation"));
    if (j.contains("minimality")) c.minimality = text(j.at("minimality"), "minimality");
    return c;
  });
}

CorpusItem corpus_item_from_json(const Json& j) {
  return guarded([&] {
    CorpusItem item;
    item.name = text(field(j, "name"), "name");
    item.k = static_cast<int>(integer(field(j, "k"), "k"));
    item.equation = equation_from_json(field(j, "equation"));
    item.prefix = series_from_json(field(j, "prefix"));
    const auto& e = field(j, "expected");
    item.expected.verdict = verdict_from_string(text(field(e, "verdict"), "verdict"));
    item.expected.criterion = text(field(e, "criterion"), "criterion");
    const auto& dim = field(e, "closure_dim");
    if (!dim.is_null()) item.expected.closure_dim = static_cast<std::size_t>(integer(dim, "closure_dim"));
    item.expected.normalization = normalization_from_json(field(e, "normalization"));
    return item;
  });
}

Schema detect_schema(const Json& j) {
  if (!j.is_object()) throw InvalidInput("expected a JSON object");
  if (j.contains("name") && j.contains("expected")) return Schema::corpus_item;
  if (j.contains("verdict")) return Schema::certificate;
  if (j.contains("new_eq")) return Schema::normalization;
  if (j.contains("matrices")) return Schema::rep;
  if (j.contains("valuation")) return Schema::series;
  if (j.contains("coeffs") && j.contains("k")) return Schema::equation;
  throw InvalidInput("document matches no known schema");
}

std::string to_string(Schema s) {
  switch (s) {
    case Schema::equation: return "equation";
    case Schema::series: return "series";
    case Schema::rep: return "rep";
    case Schema::normalization: return "normalization";
    case Schema::certificate: return "certificate";
    case Schema::corpus_item: return "corpus_item";
  }
  return "unknown";
}

std::string canonicalize(const Json& j) {
  switch (detect_schema(j)) {
    case Schema::equation: return dump(to_json(equation_from_json(j)));
    case Schema::series: return dump(to_json(series_from_json(j)));
    case Schema::rep: return dump(to_json(rep_from_json(j)));
    case Schema::normalization: return dump(to_json(normalization_from_json(j)));
    case Schema::certificate: return dump(to_json(certificate_from_json(j)));
    case Schema::corpus_item: return dump(to_json(corpus_item_from_json(j)));
  }
  throw InvalidInput("document matches no known schema");
}

}  // namespace mahler::io
