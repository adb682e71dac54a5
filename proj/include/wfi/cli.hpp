#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "criteria.hpp"
#include "extremal.hpp"
#include "hardy.hpp"
#include "norms.hpp"
#include "parallel.hpp"
#include "report_json.hpp"
#include "step_function.hpp"
#include "verify.hpp"
#include "weight.hpp"

namespace wfi::cli {

inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kValidation = 2;

inline constexpr const char* kSeedEnv = "WFI_SEED";

struct RunConfig {
  std::string command;
  std::string u = "pow(0)", v = "pow(0)";
  std::string p = "2", q = "2";
  int d = 1;
  std::size_t N = 4096;
  double L = 64.0;
  std::uint64_t seed = 7;
  int budget = 64;
  std::string out;
  std::string format = "json";
  // hardy
  std::string hardy_kind;
  bool oracle = false;
  // norms
  std::string norm_kind, f, phi, seq;
  bool double_star = false, single_star = false;
  // verify
  std::string suite = "all";
  // sweep
  std::string p_list, q_list;
};

inline std::uint64_t default_seed() {
  const char* s = std::getenv(kSeedEnv);
  if (!s || !*s) return 7;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(kSeedEnv) + " must be a non-negative integer, got '" + s + "'");
  }
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  if (out.empty()) throw std::invalid_argument("empty exponent list");
  return out;
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline HardyKind hardy_kind_of(const std::string& s) {
  std::string k = lower(s);
  if (k == "headsum" || k == "discrete") return HardyKind::HeadSum;
  if (k == "tailintegral" || k == "tail") return HardyKind::TailIntegral;
  if (k == "headintegral" || k == "head") return HardyKind::HeadIntegral;
  if (k == "reverse") return HardyKind::Reverse;
  return parse_hardy_kind(s);
}

inline bool is_csv(const std::string& s) { return s.size() > 4 && s.substr(s.size() - 4) == ".csv"; }

// A bare CSV path is read as a step function; anything else is a weight DSL string.
inline StepFunction profile_arg(const std::string& s, Role role) {
  if (is_csv(s)) return load_step_csv(s);
  return WeightSpec::parse(s, role).profile();
}

class Dispatcher {
 public:
  Dispatcher(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    RunConfig rc;
    try {
      rc.seed = default_seed();
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << "\n";
      return kValidation;
    }
    CLI::App app{"Weighted Fourier inequality toolkit"};
    app.require_subcommand(1, 1);

    auto weights = [&](CLI::App* c) {
      c->add_option("--u", rc.u, "weight on the Fourier side, e.g. pow(1/4)@d=1");
      c->add_option("--v", rc.v, "weight on the function side");
      c->add_option("--p", rc.p, "exponent p, e.g. 4/3 or inf");
      c->add_option("--q", rc.q, "exponent q");
      c->add_option("--d", rc.d, "dimension");
      c->add_flag("--json", "emit JSON (the default)");
      c->add_option("--format", rc.format, "json (report on stdout or --out file) or csv (plot data into --out dir)")
          ->check(CLI::IsMember({"json", "csv"}));
      c->add_option("--out", rc.out, "output file (json) or directory (csv)");
    };
    auto* crit = app.add_subcommand("criteria", "classify the exponents and evaluate the criteria constants");
    weights(crit);
    auto* hardy = app.add_subcommand("hardy", "closed-form Hardy constants");
    weights(hardy);
    hardy->add_option("--kind", rc.hardy_kind, "HeadSum, TailIntegral, HeadIntegral or Reverse")->required();
    hardy->add_flag("--oracle", rc.oracle, "also run the brute-force maximizer");
    hardy->add_option("--seed", rc.seed);
    auto* norms = app.add_subcommand("norms", "optimal and sequence norms");
    norms->add_option("--kind", rc.norm_kind)
        ->required()
        ->check(CLI::IsMember({"optimalY", "morrey", "expL", "theta", "gamma", "bochkarev", "blocks"}));
    norms->add_option("--f", rc.f, "step-function CSV");
    norms->add_option("--phi", rc.phi, "Morrey weight: CSV or DSL");
    norms->add_option("--seq", rc.seq, "sequence CSV (n,value)");
    norms->add_option("--u", rc.u);
    norms->add_option("--p", rc.p);
    norms->add_option("--q", rc.q);
    norms->add_option("--d", rc.d);
    norms->add_flag("--double-star", rc.double_star, "theta: use b** in place of b*");
    norms->add_flag("--single-star", rc.single_star, "gamma: use a* in place of a**");
    norms->add_flag("--json");
    norms->add_option("--out", rc.out);
    auto* est = app.add_subcommand("estimate", "bracket the best constant");
    weights(est);
    est->add_option("--N", rc.N);
    est->add_option("--L", rc.L);
    est->add_option("--seed", rc.seed);
    est->add_option("--budget", rc.budget);
    auto* ver = app.add_subcommand("verify", "run acceptance suites");
    ver->add_option("--suite", rc.suite, "suite name or all");
    ver->add_flag("--json");
    ver->add_option("--out", rc.out);
    auto* sweep = app.add_subcommand("sweep", "criteria over a grid of exponents");
    weights(sweep);
    sweep->add_option("--ps", rc.p_list, "comma-separated p values")->required();
    sweep->add_option("--qs", rc.q_list, "comma-separated q values")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kValidation;
    }
    rc.command = app.get_subcommands().front()->get_name();
    try {
      if (rc.command == "criteria") return criteria(rc);
      if (rc.command == "hardy") return hardy_cmd(rc);
      if (rc.command == "norms") return norms_cmd(rc);
      if (rc.command == "estimate") return estimate(rc);
      if (rc.command == "verify") return verify_cmd(rc);
      if (rc.command == "sweep") return sweep_cmd(rc);
      err_ << "error: unknown command " << rc.command << "\n";
      return kValidation;
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << "\n";
      return kValidation;
    } catch (const std::domain_error& e) {
      err_ << "error: " << e.what() << "\n";
      return kValidation;
    } catch (const std::exception& e) {
      err_ << "internal error: " << e.what() << "\n";
      return kInternal;
    }
  }

 private:
  ExponentConfig config(const RunConfig& rc) const { return ExponentConfig::parse(rc.p, rc.q, rc.d); }

  void emit(const RunConfig& rc, const json& j) {
    if (rc.out.empty()) {
      out_ << j.dump(2) << "\n";
      return;
    }
    std::ofstream f(rc.out);
    if (!f) throw std::runtime_error("cannot write " + rc.out);
    f << j.dump(2) << "\n";
  }

  int plots(const RunConfig& rc, const std::vector<PlotSeries>& s) {
    auto files = emit_plot_data(s, rc.out.empty() ? "." : rc.out);
    for (const auto& f : files) out_ << f << "\n";
    return kOk;
  }

  int criteria(const RunConfig& rc) {
    ExponentConfig c = config(rc);
    WeightSpec u = WeightSpec::parse(rc.u, Role::U), v = WeightSpec::parse(rc.v, Role::V);
    CriterionReport rep = evaluate(u, v, c);
    if (rc.format == "csv") return plots(rc, {xi_over_U_series(u, c)});
    emit(rc, to_json(rep));
    return kOk;
  }

  int hardy_cmd(const RunConfig& rc) {
    HardyProblem pr;
    pr.kind = hardy_kind_of(rc.hardy_kind);
    pr.p = Exponent::parse(rc.p);
    pr.q = Exponent::parse(rc.q);
    if (pr.kind == HardyKind::HeadSum) {
      pr.us = load_sequence_csv(rc.u);
      pr.vs = load_sequence_csv(rc.v);
    } else {
      pr.u = profile_arg(rc.u, Role::U);
      pr.v = profile_arg(rc.v, Role::V);
    }
    pr.validate();
    if (rc.format == "csv") return plots(rc, {});
    HardyReport h;
    h.kind = pr.kind;
    h.p = pr.p;
    h.q = pr.q;
    h.K = hardy_K(pr);
    if (rc.oracle) {
      h.has_oracle = true;
      h.seed = rc.seed;
      h.oracle = ExtReal::finite(brute_force_K(pr, problem_grid(pr, 6), 10, rc.seed, 8));
    }
    emit(rc, to_json(h));
    return kOk;
  }

  int norms_cmd(const RunConfig& rc) {
    NormReport n;
    n.norm = rc.norm_kind;
    auto need = [](const std::string& s, const char* what) {
      if (s.empty()) throw std::invalid_argument(std::string("norms --kind needs ") + what);
      return s;
    };
    const std::string& k = rc.norm_kind;
    if (k == "optimalY" || k == "morrey" || k == "expL") {
      StepFunction f = load_step_csv(need(rc.f, "--f <step csv>"));
      n.params.push_back({"f", rc.f});
      if (k == "optimalY") {
        n.params.push_back({"u", rc.u});
        n.params.push_back({"q", rc.q});
        n.values.push_back({"value", optimal_Y_norm(f, WeightSpec::parse(rc.u, Role::U), Exponent::parse(rc.q))});
      } else if (k == "morrey") {
        StepFunction phi = profile_arg(need(rc.phi, "--phi"), Role::U);
        n.params.push_back({"phi", rc.phi});
        n.params.push_back({"q", rc.q});
        n.params.push_back({"d", std::to_string(rc.d)});
        n.values.push_back({"value", morrey_optimal_norm(f, Exponent::parse(rc.q), phi, rc.d)});
      } else {
        n.params.push_back({"d", std::to_string(rc.d)});
        auto [lhs, rhs] = expL_pair(f, rc.d);
        n.values.push_back({"expL", lhs});
        n.values.push_back({"rhs", rhs});
      }
    } else {
      SequenceData a(load_sequence_csv(need(rc.seq, "--seq <n,value csv>")));
      n.params.push_back({"seq", rc.seq});
      if (k == "gamma") {
        n.params.push_back({"q", rc.q});
        n.params.push_back({"single_star", rc.single_star ? "true" : "false"});
        n.values.push_back({"value", gamma_norm(a, Exponent::parse(rc.q), !rc.single_star)});
      } else {
        Exponent p = Exponent::parse(rc.p);
        n.params.push_back({"p", rc.p});
        if (k == "theta") {
          n.params.push_back({"double_star", rc.double_star ? "true" : "false"});
          n.values.push_back({"value", theta_norm(a, p, rc.double_star)});
        } else if (k == "bochkarev") {
          n.values.push_back({"value", ExtReal::finite(bochkarev_norm(a, p))});
        } else {
          n.values.push_back({"value", dyadic_block_norms(a, p)});
        }
      }
    }
    emit(rc, to_json(n));
    return kOk;
  }

  int estimate(const RunConfig& rc) {
    ExponentConfig c = config(rc);
    if (c.d != 1) throw std::domain_error("estimate runs numerical Fourier experiments in d=1 only");
    if (rc.budget < 1) throw std::invalid_argument("budget must be positive");
    WeightSpec u = WeightSpec::parse(rc.u, Role::U), v = WeightSpec::parse(rc.v, Role::V);
    BracketOptions o;
    o.N = rc.N;
    o.L = rc.L;
    o.seed = rc.seed;
    o.budget = rc.budget;
    SampledSignal probe(o.N, o.L, std::vector<cplx>(o.N));  // validates N and L
    ConstantBracket b = bracket_constant(u, v, c, o);
    if (rc.format == "csv") return plots(rc, {ratio_vs_resolution_series(b)});
    emit(rc, to_json(b));
    return kOk;
  }

  int verify_cmd(const RunConfig& rc) {
    json arr = json::array();
    bool all = true, found = false;
    for (const auto& [name, fn] : verify::suites()) {
      if (rc.suite != "all" && rc.suite != name) continue;
      found = true;
      auto r = fn();
      err_ << verify::summary_line(r) << "\n";
      all = all && r.passed;
      arr.push_back(to_json(r));
    }
    if (!found) {
      std::string names;
      for (const auto& s : verify::suites()) names += " " + s.first;
      throw std::invalid_argument("unknown suite '" + rc.suite + "'; available: all" + names);
    }
    emit(rc, json{{"kind", "verify"}, {"suites", arr}, {"passed", all}});
    return all ? kOk : kInternal;
  }

  int sweep_cmd(const RunConfig& rc) {
    WeightSpec u = WeightSpec::parse(rc.u, Role::U), v = WeightSpec::parse(rc.v, Role::V);
    if (rc.format == "csv") return plots(rc, {});
    std::vector<ExponentConfig> cs;
    for (const auto& p : split_list(rc.p_list))
      for (const auto& q : split_list(rc.q_list)) cs.push_back(ExponentConfig::parse(p, q, rc.d));
    auto reps = parallel_map<CriterionReport>(cs.size(), [&](std::size_t i) { return evaluate(u, v, cs[i]); });
    json arr = json::array();
    for (const auto& r : reps) arr.push_back(to_json(r));
    emit(rc, json{{"kind", "sweep"}, {"u", u.str()}, {"v", v.str()}, {"entries", arr}});
    return kOk;
  }

  std::ostream& out_;
  std::ostream& err_;
};

inline int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Dispatcher(out, err).run(std::move(args));
}

inline int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Dispatcher(out, err).run(args);
}

}  // namespace wfi::cli
