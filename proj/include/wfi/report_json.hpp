#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "criteria.hpp"
#include "extreal.hpp"
#include "extremal.hpp"
#include "hardy.hpp"
#include "rational.hpp"
#include "verify.hpp"

namespace wfi {

using json = nlohmann::json;

// {"finiteness": "finite", "value": x} | {"finiteness": "infinite" | "indeterminate", "certificate": why}
inline json ext_json(const ExtReal& x) {
  json j;
  j["finiteness"] = to_string(x.state());
  if (x.is_finite()) {
    j["value"] = x.value();
    if (!x.reason().empty()) j["note"] = x.reason();
  } else {
    j["certificate"] = x.reason();
  }
  return j;
}

inline json ext_json(double x) {
  if (std::isnan(x)) return ext_json(ExtReal::indeterminate("not a number"));
  if (std::isinf(x)) return ext_json(ExtReal::infinite(x > 0 ? "overflow to +inf" : "overflow to -inf"));
  return ext_json(ExtReal::finite(x));
}

inline ExtReal ext_from_json(const json& j) {
  std::string f = j.at("finiteness").get<std::string>();
  if (f == "finite") return ExtReal::finite(j.at("value").get<double>(), j.value("note", std::string()));
  if (f == "infinite") return ExtReal::infinite(j.value("certificate", std::string()));
  if (f == "indeterminate") return ExtReal::indeterminate(j.value("certificate", std::string()));
  throw std::invalid_argument("unknown finiteness tag: " + f);
}

inline json config_json(const ExponentConfig& c) {
  json j = {{"p", c.p.str()}, {"q", c.q.str()}, {"d", c.d}};
  json derived;
  derived["p_prime"] = c.p_prime().str();
  if (c.q.inv() <= Rational(1)) derived["q_prime"] = c.q_prime().str();
  if (c.has_r()) derived["r"] = c.r().str();
  derived["p_sharp"] = c.p_sharp().str();
  derived["q_sharp"] = c.q_sharp().str();
  j["derived"] = derived;
  return j;
}

inline ExponentConfig config_from_json(const json& j) {
  return ExponentConfig::parse(j.at("p").get<std::string>(), j.at("q").get<std::string>(), j.at("d").get<int>());
}

inline Regime parse_regime(const std::string& s) {
  for (auto r : {Regime::I, Regime::II, Regime::III, Regime::IV, Regime::V, Regime::DegenerateQInf, Regime::DegenerateP1})
    if (s == to_string(r)) return r;
  throw std::invalid_argument("unknown regime: " + s);
}

inline Finiteness parse_finiteness(const std::string& s) {
  for (auto f : {Finiteness::Finite, Finiteness::Infinite, Finiteness::Indeterminate})
    if (s == to_string(f)) return f;
  throw std::invalid_argument("unknown finiteness tag: " + s);
}

inline json to_json(const CriterionReport& r) {
  json j;
  j["kind"] = "criteria";
  j["u"] = r.u;
  j["v"] = r.v;
  j["config"] = config_json(r.cfg);
  j["regime"] = to_string(r.regime);
  j["required"] = r.required;
  json cs = json::object();
  for (const auto& [k, v] : r.constants) cs[k] = ext_json(v);
  j["constants"] = cs;
  j["holds"] = r.holds;
  j["verdict"] = to_string(r.verdict);
  j["regime_constant"] = ext_json(r.regime_constant());
  j["cube"] = ext_json(r.cube);
  return j;
}

inline CriterionReport criterion_from_json(const json& j) {
  CriterionReport r;
  r.u = j.at("u").get<std::string>();
  r.v = j.at("v").get<std::string>();
  r.cfg = config_from_json(j.at("config"));
  r.regime = parse_regime(j.at("regime").get<std::string>());
  r.required = j.at("required").get<std::vector<std::string>>();
  for (const auto& [k, v] : j.at("constants").items()) r.constants[k] = ext_from_json(v);
  r.holds = j.at("holds").get<bool>();
  r.verdict = parse_finiteness(j.at("verdict").get<std::string>());
  r.cube = ext_from_json(j.at("cube"));
  return r;
}

inline json to_json(const ConstantBracket& b) {
  json j;
  j["kind"] = "bracket";
  j["u"] = b.u;
  j["v"] = b.v;
  j["config"] = config_json(b.cfg);
  j["regime"] = b.regime;
  j["lower"] = ext_json(b.lower);
  j["upper"] = ext_json(b.upper);
  j["ratio"] = ext_json(b.ratio);
  json ws = json::array();
  for (const auto& w : b.witnesses) ws.push_back({{"kind", w.kind}, {"ratio", ext_json(w.ratio)}, {"detail", w.detail}});
  j["witnesses"] = ws;
  json rs = json::array();
  for (const auto& [n, lo] : b.by_resolution) rs.push_back({{"N", n}, {"lower", ext_json(lo)}});
  j["by_resolution"] = rs;
  j["resolution_delta"] = ext_json(b.resolution_delta);
  return j;
}

inline double finite_or_throw(const json& j) {
  ExtReal x = ext_from_json(j);
  if (x.is_finite()) return x.value();
  if (x.is_infinite()) return std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

inline ConstantBracket bracket_from_json(const json& j) {
  ConstantBracket b;
  b.u = j.at("u").get<std::string>();
  b.v = j.at("v").get<std::string>();
  b.cfg = config_from_json(j.at("config"));
  b.regime = j.at("regime").get<std::string>();
  b.lower = finite_or_throw(j.at("lower"));
  b.upper = ext_from_json(j.at("upper"));
  b.ratio = ext_from_json(j.at("ratio"));
  for (const auto& w : j.at("witnesses"))
    b.witnesses.push_back({w.at("kind").get<std::string>(), finite_or_throw(w.at("ratio")), w.at("detail").get<std::string>()});
  for (const auto& r : j.at("by_resolution"))
    b.by_resolution.emplace_back(r.at("N").get<std::size_t>(), finite_or_throw(r.at("lower")));
  b.resolution_delta = finite_or_throw(j.at("resolution_delta"));
  return b;
}

struct HardyReport {
  HardyKind kind = HardyKind::HeadIntegral;
  Exponent p = Exponent::finite(2), q = Exponent::finite(2);
  ExtReal K = ExtReal::indeterminate("not computed");
  bool has_oracle = false;
  ExtReal oracle = ExtReal::indeterminate("not computed");
  std::uint64_t seed = 0;
};

inline json to_json(const HardyReport& h) {
  json j = {{"kind", "hardy"}, {"hardy_kind", to_string(h.kind)}, {"p", h.p.str()}, {"q", h.q.str()}, {"K", ext_json(h.K)}};
  if (h.has_oracle) {
    j["oracle"] = ext_json(h.oracle);
    j["seed"] = h.seed;
    ExtReal ratio = h.K.is_finite() && h.oracle.is_finite() && h.oracle.value() > 0
                        ? ExtReal::finite(h.K.value() / h.oracle.value())
                        : ExtReal::indeterminate("needs finite K and a positive oracle value");
    j["K_over_oracle"] = ext_json(ratio);
  }
  return j;
}

inline HardyReport hardy_from_json(const json& j) {
  HardyReport h;
  h.kind = parse_hardy_kind(j.at("hardy_kind").get<std::string>());
  h.p = Exponent::parse(j.at("p").get<std::string>());
  h.q = Exponent::parse(j.at("q").get<std::string>());
  h.K = ext_from_json(j.at("K"));
  if (j.contains("oracle")) {
    h.has_oracle = true;
    h.oracle = ext_from_json(j.at("oracle"));
    h.seed = j.at("seed").get<std::uint64_t>();
  }
  return h;
}

struct NormReport {
  std::string norm;
  std::vector<std::pair<std::string, ExtReal>> values;  // named outputs, e.g. {"value", x} or the expL pair
  std::vector<std::pair<std::string, std::string>> params;
};

inline json to_json(const NormReport& n) {
  json j = {{"kind", "norms"}, {"norm", n.norm}};
  json ps = json::object();
  for (const auto& [k, v] : n.params) ps[k] = v;
  j["params"] = ps;
  json vs = json::object();
  for (const auto& [k, v] : n.values) vs[k] = ext_json(v);
  j["values"] = vs;
  return j;
}

inline NormReport norm_from_json(const json& j) {
  NormReport n;
  n.norm = j.at("norm").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) n.params.emplace_back(k, v.get<std::string>());
  for (const auto& [k, v] : j.at("values").items()) n.values.emplace_back(k, ext_from_json(v));
  return n;
}

inline json to_json(const verify::SuiteResult& s) {
  json m = json::object();
  for (const auto& [k, v] : s.measured) m[k] = ext_json(v);
  return {{"id", s.id}, {"name", s.name}, {"passed", s.passed}, {"detail", s.detail}, {"measured", m},
          {"seconds", ext_json(s.seconds)}};
}

inline verify::SuiteResult suite_from_json(const json& j) {
  verify::SuiteResult s;
  s.id = j.at("id").get<int>();
  s.name = j.at("name").get<std::string>();
  s.passed = j.at("passed").get<bool>();
  s.detail = j.at("detail").get<std::string>();
  for (const auto& [k, v] : j.at("measured").items()) s.measured[k] = finite_or_throw(v);
  s.seconds = finite_or_throw(j.at("seconds"));
  return s;
}

// ---- plot data ----

struct PlotSeries {
  std::string file;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// t, U, xi, xi/U on a log grid; only rows where all entries are finite.
inline PlotSeries xi_over_U_series(const WeightSpec& u, const ExponentConfig& c, int points = 61) {
  PlotSeries s{"xi_over_U.csv", {"t", "U", "xi", "xi_over_U"}, {}};
  if (c.q.is_infinite() || !(c.q < Exponent::finite(2))) return s;
  StepFunction ustar = circ_profile(u.profile(), std::max(c.d, u.dim()));
  Fn U = U_of(ustar, c.q), xi = xi_of(ustar, c.q);
  if (U.is_infinite() || xi.is_infinite() || U.is_zero()) return s;
  for (int i = 0; i < points; ++i) {
    double t = std::pow(10.0, -6.0 + 12.0 * i / (points - 1));
    double a = U(t), b = xi(t);
    if (std::isfinite(a) && std::isfinite(b) && a > 0) s.rows.push_back({t, a, b, b / a});
  }
  return s;
}

inline PlotSeries ratio_vs_resolution_series(const ConstantBracket& b) {
  PlotSeries s{"ratio_vs_resolution.csv", {"N", "lower", "upper", "ratio"}, {}};
  double up = b.upper.is_finite()     ? b.upper.value()
              : b.upper.is_infinite() ? std::numeric_limits<double>::infinity()
                                      : std::numeric_limits<double>::quiet_NaN();
  for (const auto& [n, lo] : b.by_resolution) s.rows.push_back({static_cast<double>(n), lo, up, lo > 0 ? up / lo : up});
  return s;
}

// Writes every non-empty series into dir; returns the paths written.
inline std::vector<std::string> emit_plot_data(const std::vector<PlotSeries>& series, const std::string& dir) {
  std::vector<std::string> written;
  for (const auto& s : series) {
    if (s.rows.empty()) continue;
    std::filesystem::create_directories(dir);
    std::string path = (std::filesystem::path(dir) / s.file).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    for (std::size_t i = 0; i < s.columns.size(); ++i) out << (i ? "," : "") << s.columns[i];
    out << "\n";
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "");
        if (std::isnan(row[i])) out << "nan";
        else if (std::isinf(row[i])) out << (row[i] > 0 ? "inf" : "-inf");
        else out << row[i];
      }
      out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
    written.push_back(path);
  }
  return written;
}

}  // namespace wfi
