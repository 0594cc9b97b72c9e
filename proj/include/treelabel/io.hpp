#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp" // vendored nlohmann/json

#include "treelabel/bounds.hpp"
#include "treelabel/error.hpp"
#include "treelabel/labelling.hpp"
#include "treelabel/linear.hpp"
#include "treelabel/solver.hpp"
#include "treelabel/tree.hpp"

namespace treelabel::io {

using json = nlohmann::json;

inline constexpr const char *kSchema = "treelabel/1";

inline json stats_json(const TreeStats &s) {
  return {{"schema", kSchema}, {"n", s.n}, {"delta", s.delta}, {"delta2", s.delta2},
          {"diam", s.diam}};
}

inline json interval_json(const std::optional<CircularInterval> &iv) {
  if (!iv)
    return nullptr;
  return json::array({iv->a, iv->b});
}

inline json certificate_json(const EleganceCertificate &cert, int modulus) {
  json intervals = json::array();
  for (const auto &iv : cert.intervals)
    intervals.push_back(interval_json(iv));
  return {{"modulus", modulus}, {"intervals", intervals}};
}

inline json labelling_json(const Labelling &f, const EleganceCertificate *cert = nullptr,
                           const std::string &source = {}) {
  json j{{"schema", kSchema}, {"mode", to_string(f.mode)}, {"ell", f.ell}, {"labels", f.labels}};
  if (cert)
    j["certificate"] = certificate_json(*cert, elegance_modulus(f));
  if (!source.empty())
    j["source"] = source;
  return j;
}

inline json construction_json(const Construction &c) {
  json j = labelling_json(c.labelling, &c.certificate, c.source);
  j["root"] = c.root;
  return j;
}

namespace detail {

inline const json &field(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int int_field(const json &j, const char *key) {
  const json &v = field(j, key);
  if (!v.is_number_integer())
    throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

inline void check_schema(const json &j) {
  if (j.is_object() && j.contains("schema") && j.at("schema") != kSchema)
    throw ParseError("unsupported schema " + j.at("schema").dump());
}

} // namespace detail

inline Labelling parse_labelling(const json &j) {
  detail::check_schema(j);
  Labelling f;
  const json &mode = detail::field(j, "mode");
  if (mode == "linear")
    f.mode = Mode::Linear;
  else if (mode == "cyclic")
    f.mode = Mode::Cyclic;
  else
    throw ParseError("mode must be \"linear\" or \"cyclic\"");
  f.ell = detail::int_field(j, "ell");
  const json &labels = detail::field(j, "labels");
  if (!labels.is_array())
    throw ParseError("labels must be an array");
  for (const json &x : labels) {
    if (!x.is_number_integer() || x.get<long long>() < 0)
      throw ParseError("labels must be nonnegative integers");
    f.labels.push_back(x.get<int>());
  }
  return f;
}

inline Labelling parse_labelling(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(e.what());
  }
  return parse_labelling(j);
}

inline Labelling parse_labelling(const char *text) { return parse_labelling(std::string(text)); }

/// Reads back the "certificate" field written by labelling_json.
inline std::optional<EleganceCertificate> parse_certificate(const json &j) {
  if (!j.contains("certificate"))
    return std::nullopt;
  const json &c = j.at("certificate");
  const int modulus = detail::int_field(c, "modulus");
  EleganceCertificate cert;
  for (const json &iv : detail::field(c, "intervals")) {
    if (iv.is_null()) {
      cert.intervals.emplace_back();
      continue;
    }
    if (!iv.is_array() || iv.size() != 2)
      throw ParseError("interval must be null or [a, b]");
    cert.intervals.push_back(CircularInterval{iv[0].get<int>(), iv[1].get<int>(), modulus});
  }
  return cert;
}

inline json violation_json(const Violation &v) {
  return {{"u", v.u}, {"v", v.v}, {"distance", v.distance}, {"required", v.required},
          {"actual", v.actual}};
}

inline json bounds_json(const BoundsReport &r) {
  json j{{"schema", kSchema}, {"quantity", to_string(r.quantity)}, {"applicable", r.applicable}};
  if (!r.applicable) {
    j["reason"] = r.reason;
    return j;
  }
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
  j["sources"] = r.sources;
  return j;
}

inline BoundsReport parse_bounds(const json &j) {
  detail::check_schema(j);
  BoundsReport r;
  const std::string q = detail::field(j, "quantity").get<std::string>();
  for (Quantity cand : {Quantity::Lambda, Quantity::LambdaStar, Quantity::Sigma,
                        Quantity::SigmaStar})
    if (to_string(cand) == q)
      r.quantity = cand;
  r.applicable = detail::field(j, "applicable").get<bool>();
  if (!r.applicable) {
    r.reason = j.value("reason", "");
    return r;
  }
  r.lower = detail::field(j, "lower").get<long long>();
  r.upper = detail::field(j, "upper").get<long long>();
  if (!detail::field(j, "exact").is_null())
    r.exact = j.at("exact").get<long long>();
  r.sources = detail::field(j, "sources").get<std::vector<std::string>>();
  return r;
}

inline json oracle_json(const OracleResult &r) {
  json j{{"schema", kSchema},
         {"quantity", to_string(r.quantity)},
         {"value", r.value ? json(*r.value) : json(nullptr)},
         {"lower", r.lower},
         {"nodes_explored", r.nodes_explored},
         {"budget_hit", r.budget_hit},
         {"minimality_searched", r.minimality_searched}};
  j["witness"] = r.witness ? labelling_json(*r.witness) : json(nullptr);
  return j;
}

inline OracleResult parse_oracle(const json &j) {
  detail::check_schema(j);
  OracleResult r;
  r.quantity = detail::field(j, "quantity") == "sigma" ? Quantity::Sigma : Quantity::Lambda;
  if (!detail::field(j, "value").is_null())
    r.value = j.at("value").get<int>();
  r.lower = detail::int_field(j, "lower");
  r.nodes_explored = detail::field(j, "nodes_explored").get<std::uint64_t>();
  r.budget_hit = detail::field(j, "budget_hit").get<bool>();
  r.minimality_searched = j.value("minimality_searched", false);
  if (!detail::field(j, "witness").is_null())
    r.witness = parse_labelling(j.at("witness"));
  return r;
}

/// Undirected DOT graph; each node shows its index and label.
inline std::string to_dot(const RootedTree &t, const Labelling *f = nullptr) {
  std::ostringstream os;
  os << "graph tree {\n";
  for (int v = 0; v < t.size(); ++v) {
    os << "  " << v;
    if (f)
      os << " [label=\"" << v << ": " << f->labels.at(v) << "\"]";
    os << ";\n";
  }
  for (int v = 1; v < t.size(); ++v)
    os << "  " << t.parent(v) << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

} // namespace treelabel::io
