#include "shbif/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>

namespace shbif::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string rational_str(const Rational& r) {
  std::string s = num_str(r);
  if (den_str(r) != "1") s += "/" + den_str(r);
  return s;
}

Rational rational_from_str(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return rational_from_parts(s, "1");
  return rational_from_parts(s.substr(0, slash), s.substr(slash + 1));
}

std::string dump(const ordered_json& doc, int indent) {
  return indent >= 0 ? doc.dump(indent) : doc.dump();
}

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T field(const ordered_json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(std::string("missing key \"") + key + "\"");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("key \"") + key + "\" has the wrong type");
  }
}

ordered_json term_entry(const Mode& m, const Rational& c) {
  ordered_json t;
  t["wave"] = wave_label(m.wave);
  t["k"] = m.k;
  t["num"] = num_str(c);
  t["den"] = den_str(c);
  return t;
}

Mode mode_from_entry(const ordered_json& t) {
  const auto wave = field<std::string>(t, "wave");
  const int k = field<int>(t, "k");
  if (wave == "const") {
    if (k != 0) throw FormatError("const term must have k = 0");
    return const_mode();
  }
  if (k < 1) throw FormatError("wave term must have k >= 1");
  if (wave == "sin") return sin_mode(k);
  if (wave == "cos") return cos_mode(k);
  throw FormatError("unknown wave \"" + wave + "\"");
}

Rational value_from_entry(const ordered_json& t) {
  try {
    return rational_from_parts(field<std::string>(t, "num"), field<std::string>(t, "den"));
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad rational entry: ") + e.what());
  }
}

template <class S>
ordered_json trig_terms(const TrigPoly<S>& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& [m, c] : p.terms()) arr.push_back(term_entry(m, Rational(c)));
  return arr;
}

TrigQ trig_terms_parse(const ordered_json& doc) {
  if (!doc.contains("terms") || !doc.at("terms").is_array()) {
    throw FormatError("missing \"terms\" array");
  }
  int maxk = TrigQ::default_trunc;
  for (const auto& t : doc.at("terms")) maxk = std::max(maxk, field<int>(t, "k"));
  TrigQ p(maxk);
  for (const auto& t : doc.at("terms")) p.add(mode_from_entry(t), value_from_entry(t));
  return p;
}

std::string kind_of(const ordered_json& doc) {
  const auto kind = field<std::string>(doc, "kind");
  if (kind != "rational" && kind != "float") {
    throw FormatError("unknown kind \"" + kind + "\"");
  }
  return kind;
}

ordered_json planar_terms(const PlanarPoly<Rational>& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    ordered_json t;
    t["a"] = m.a;
    t["b"] = m.b;
    t["num"] = num_str(c);
    t["den"] = den_str(c);
    arr.push_back(std::move(t));
  }
  return arr;
}

PlanarPoly<Rational> planar_terms_parse(const ordered_json& arr) {
  if (!arr.is_array()) throw FormatError("component must be an array of monomials");
  PlanarPoly<Rational> p;
  for (const auto& t : arr) {
    const int a = field<int>(t, "a");
    const int b = field<int>(t, "b");
    if (a < 0 || b < 0) throw FormatError("monomial exponents must be nonnegative");
    p.add({a, b}, value_from_entry(t));
  }
  return p;
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trig_json(const TrigQ& p, int indent) {
  ordered_json doc;
  doc["kind"] = "rational";
  doc["terms"] = trig_terms(p);
  return dump(doc, indent);
}

std::string trig_json(const TrigF& p, int indent) {
  for (const auto& [m, c] : p.terms()) {
    if (!std::isfinite(c)) {
      throw FormatError("non-finite coefficient on " + mode_label(m));
    }
  }
  ordered_json doc;
  doc["kind"] = "float";
  doc["terms"] = trig_terms(p);  // doubles are dyadic: num/den is exact
  return dump(doc, indent);
}

std::string trig_kind(const std::string& text) { return kind_of(parse(text)); }

TrigQ trig_rational_from_json(const std::string& text) {
  const ordered_json doc = parse(text);
  if (kind_of(doc) != "rational") throw FormatError("expected kind \"rational\"");
  return trig_terms_parse(doc);
}

TrigF trig_float_from_json(const std::string& text) {
  const ordered_json doc = parse(text);
  if (kind_of(doc) != "float") throw FormatError("expected kind \"float\"");
  return trig_terms_parse(doc).to_float();
}

std::string reduced_field_json(const ReducedVectorField& f, int indent) {
  ordered_json doc;
  doc["lambda"] = rational_str(f.lambda);
  doc["order"] = f.order;
  doc["form"] = to_string(f.form);
  doc["G1"] = planar_terms(f.g1);
  doc["G2"] = planar_terms(f.g2);
  return dump(doc, indent);
}

ReducedVectorField reduced_field_from_json(const std::string& text) {
  const ordered_json doc = parse(text);
  ReducedVectorField f;
  f.lambda = rational_from_str(field<std::string>(doc, "lambda"));
  f.order = field<int>(doc, "order");
  if (f.order < 1) throw FormatError("order must be >= 1");
  if (doc.contains("form")) {
    const auto form = field<std::string>(doc, "form");
    if (form == "ansatz") {
      f.form = FieldForm::Ansatz;
    } else if (form == "graph") {
      f.form = FieldForm::Graph;
    } else {
      throw FormatError("unknown form \"" + form + "\"");
    }
  }
  if (!doc.contains("G1") || !doc.contains("G2")) {
    throw FormatError("missing component \"G1\" or \"G2\"");
  }
  f.g1 = planar_terms_parse(doc.at("G1"));
  f.g2 = planar_terms_parse(doc.at("G2"));
  return f;
}

std::string manifold_json(const CenterManifoldMap& m, int indent) {
  ordered_json doc;
  doc["lambda0"] = rational_str(m.lambda0);
  doc["order"] = m.order;
  doc["trunc"] = m.terms.trunc();
  ordered_json psi = ordered_json::array();
  for (const auto& [mono, poly] : m.terms.terms()) {
    for (const auto& [mode, c] : poly.terms()) {
      ordered_json t;
      t["a"] = mono.a;
      t["b"] = mono.b;
      t["wave"] = wave_label(mode.wave);
      t["k"] = mode.k;
      t["num"] = num_str(c);
      t["den"] = den_str(c);
      psi.push_back(std::move(t));
    }
  }
  doc["psi"] = std::move(psi);
  return dump(doc, indent);
}

CenterManifoldMap manifold_from_json(const std::string& text) {
  const ordered_json doc = parse(text);
  const Rational lambda0 = rational_from_str(field<std::string>(doc, "lambda0"));
  const int order = field<int>(doc, "order");
  const int trunc = field<int>(doc, "trunc");
  if (trunc < 1) throw FormatError("trunc must be >= 1");
  if (!doc.contains("psi") || !doc.at("psi").is_array()) {
    throw FormatError("missing \"psi\" array");
  }
  StateExpansion<Rational> terms(trunc);
  for (const auto& t : doc.at("psi")) {
    const int a = field<int>(t, "a");
    const int b = field<int>(t, "b");
    if (a < 0 || b < 0) throw FormatError("monomial exponents must be nonnegative");
    TrigQ v(trunc);
    v.add(mode_from_entry(t), value_from_entry(t));
    terms.add({a, b}, v);
  }
  auto map = CenterManifoldMap::raw(lambda0, order, std::move(terms));
  map.validate();
  return map;
}

std::string classification_row_json(const BlockClassification& c,
                                    std::optional<double> r_star) {
  ordered_json doc;
  doc["lambda"] = c.lambda;
  doc["r"] = c.r;
  doc["verdict"] = to_string(c.verdict);
  if (r_star) {
    doc["r_star"] = *r_star;
  } else {
    doc["r_star"] = nullptr;
  }
  return doc.dump();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "lambda,dist_H,r_star_reduced,amplitude_newton,block_verdict,"
      "converged_count,escaped_count\n";
  const auto opt = [](const std::optional<double>& v) { return v ? fmt17(*v) : ""; };
  for (const auto& r : rows) {
    out += fmt17(r.lambda) + "," + opt(r.dist_h) + "," + opt(r.r_star) + "," +
           opt(r.amplitude_newton) + "," + r.verdict + "," +
           std::to_string(r.converged) + "," + std::to_string(r.escaped) + "\n";
  }
  return out;
}

std::string trajectory_csv(const PdeTrajectory& traj, double lambda) {
  std::string out = "t,norm,V\n";
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    out += fmt17(traj.times[i]) + "," + fmt17(l2_norm(traj.states[i])) + "," +
           fmt17(lyapunov_value(traj.states[i], lambda)) + "\n";
  }
  return out;
}

}  // namespace shbif::io
