// Copyright 2026 The Coupon BNE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve, verify, sweep, cases and epsilon.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coupon_bne/case_sampling.h"
#include "coupon_bne/config.h"
#include "coupon_bne/errors.h"
#include "coupon_bne/game.h"
#include "coupon_bne/oracle.h"
#include "coupon_bne/privacy.h"
#include "json.hpp"

namespace coupon_bne {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

struct Options {
  std::string config;
  std::string profile;
  std::string format = "text";
  std::string out;
  std::optional<double> grid;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  bool skip_infeasible = false;
  double p = 1.0;
  double q = 1.0;
  std::optional<int> samples;
  std::optional<std::string> sampler;
};

// Raised for usage problems found after argument parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadAll(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json ParseJsonFile(const std::string& path, const char* what) {
  if (path.empty()) throw UsageError(std::string("--") + what + " is required");
  const std::string text = ReadAll(path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw UsageError(std::string(what) + " file '" + path + "' is empty");
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string(what) + " file '" + path +
                     "' is not valid JSON: " + e.what());
  }
}

RunConfig LoadConfig(const Options& opt) {
  RunConfig cfg = RunConfigFromJson(ParseJsonFile(opt.config, "config"));
  if (opt.grid) {
    if (!(*opt.grid > 0.0) || *opt.grid > 1.0) {
      throw UsageError("--grid must lie in (0, 1]");
    }
    cfg.grid_step = *opt.grid;
  }
  if (opt.tol) {
    if (!(*opt.tol > 0.0)) throw UsageError("--tol must be > 0");
    cfg.tol = *opt.tol;
  }
  if (opt.seed) cfg.seed = *opt.seed;
  return cfg;
}

std::string Cell(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

std::string Cell(const std::optional<ExtendedReal>& v) {
  return v ? v->ToString() : std::string();
}

std::string DescribeA(const AStrategy& a) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ScoringReportPair>) {
          return "x0=" + FormatDouble(s.x0) + " x1=" + FormatDouble(s.x1);
        } else if constexpr (std::is_same_v<T, GuessPolicy>) {
          return "x=" + FormatDouble(s.x) + " y=" + FormatDouble(s.y);
        } else if constexpr (std::is_same_v<T, OptOutPolicy>) {
          return "x0=" + FormatDouble(s.x0) + " x1=" + FormatDouble(s.x1) +
                 " y0=" + FormatDouble(s.y0) + " y1=" + FormatDouble(s.y1);
        } else {
          return "none";
        }
      },
      a);
}

void RenderReportText(const EquilibriumReport& r, std::ostream& out) {
  out << "game: " << r.game << "\n";
  out << "case: " << r.case_label << "\n";
  out << "unique: " << (r.unique ? "true" : "false") << "\n";
  out << "b: p=" << FormatDouble(r.profile.b.p)
      << " q=" << FormatDouble(r.profile.b.q) << "\n";
  out << "a: " << DescribeA(r.profile.a) << "\n";
  if (r.profile.threshold) {
    out << "threshold: " << FormatDouble(*r.profile.threshold) << "\n";
  }
  out << "posteriors: y0="
      << (r.posteriors.y0 ? FormatDouble(*r.posteriors.y0) : "-")
      << " y1=" << (r.posteriors.y1 ? FormatDouble(*r.posteriors.y1) : "-")
      << "\n";
  out << "epsilon: " << (r.dp_epsilon ? r.dp_epsilon->ToString() : "-") << "\n";
  if (r.u_a) out << "u_a: " << FormatDouble(*r.u_a) << "\n";
  out << "u_b0: " << r.u_b0.ToString() << "\n";
  out << "u_b1: " << r.u_b1.ToString() << "\n";
  for (const auto& [k, v] : r.metrics) {
    out << k << ": " << FormatDouble(v) << "\n";
  }
  for (const auto& [k, v] : r.intervals) {
    out << k << " interval: [" << FormatDouble(v.lo) << ", "
        << FormatDouble(v.hi) << "]\n";
  }
  for (const Profile& alt : r.alternatives) {
    out << "alternative: p=" << FormatDouble(alt.b.p)
        << " q=" << FormatDouble(alt.b.q) << " " << DescribeA(alt.a) << "\n";
  }
  for (const std::string& n : r.notes) out << "note: " << n << "\n";
}

const std::vector<std::string>& MetricColumns(const std::string& game) {
  static const std::map<std::string, std::vector<std::string>> kColumns = {
      {"privacy_aware", {"Y", "p_star"}},
      {"scoring", {"posterior_epsilon", "a_profit", "benchmark_profit"}},
      {"identity", {"rr_epsilon"}},
      {"identity_continuous", {"y_star", "threshold"}},
      {"optout", {"rr", "rr_epsilon"}},
  };
  return kColumns.at(game);
}

std::string CsvHeader(const std::string& game, const std::string& lead) {
  std::string h = lead.empty() ? "" : lead + ",";
  h += "case,unique,p,q,epsilon,y0,y1,u_a,u_b0,u_b1";
  for (const std::string& m : MetricColumns(game)) h += "," + m;
  return h + "\n";
}

std::string CsvRow(const EquilibriumReport& r, const std::string& lead) {
  std::string row = lead.empty() ? "" : lead + ",";
  row += r.case_label + "," + (r.unique ? "true" : "false") + "," +
         FormatDouble(r.profile.b.p) + "," + FormatDouble(r.profile.b.q) + "," +
         Cell(r.dp_epsilon) + "," + Cell(r.posteriors.y0) + "," +
         Cell(r.posteriors.y1) + "," + Cell(r.u_a) + "," + r.u_b0.ToString() +
         "," + r.u_b1.ToString();
  for (const std::string& m : MetricColumns(r.game)) {
    auto it = r.metrics.find(m);
    row += "," +
           (it == r.metrics.end() ? std::string() : FormatDouble(it->second));
  }
  return row + "\n";
}

void Emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + opt.out + "'");
  f << text;
}

int CmdSolve(const Options& opt) {
  const RunConfig cfg = LoadConfig(opt);
  const EquilibriumReport r = Solve(cfg.game);
  std::ostringstream out;
  if (opt.format == "json") {
    json doc = ReportToJson(r);
    doc["config"] = GameSpecToJson(cfg.game);
    out << doc.dump(2) << "\n";
  } else if (opt.format == "csv") {
    out << CsvHeader(r.game, "game") << CsvRow(r, r.game);
  } else {
    RenderReportText(r, out);
  }
  Emit(opt, out.str());
  return kExitOk;
}

int CmdVerify(const Options& opt) {
  const RunConfig cfg = LoadConfig(opt);
  Profile profile;
  try {
    profile = ProfileFromJson(ParseJsonFile(opt.profile, "profile"));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const GapReport gaps = BestResponseGap(cfg.game, profile, cfg.grid_step);
  const bool pass = gaps.max_gap() <= cfg.tol;
  std::ostringstream out;
  if (opt.format == "json") {
    out << GapReportToJson(gaps, cfg.tol).dump(2) << "\n";
  } else if (opt.format == "csv") {
    out << "gap_a,gap_b0,gap_b1,max_gap,grid_step,tol,pass\n"
        << FormatDouble(gaps.gap_a) << "," << FormatDouble(gaps.gap_b0) << ","
        << FormatDouble(gaps.gap_b1) << "," << FormatDouble(gaps.max_gap())
        << "," << FormatDouble(gaps.grid_step) << "," << FormatDouble(cfg.tol)
        << "," << (pass ? "true" : "false") << "\n";
  } else {
    out << "gap_a: " << FormatDouble(gaps.gap_a) << "\n"
        << "gap_b0: " << FormatDouble(gaps.gap_b0) << "\n"
        << "gap_b1: " << FormatDouble(gaps.gap_b1) << "\n"
        << "max_gap: " << FormatDouble(gaps.max_gap()) << "\n"
        << "grid_step: " << FormatDouble(gaps.grid_step) << "\n"
        << "tol: " << FormatDouble(cfg.tol) << "\n"
        << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    if (!pass) {
      for (const std::string& d : gaps.argmax_deviations) {
        out << "deviation: " << d << "\n";
      }
    }
  }
  Emit(opt, out.str());
  return pass ? kExitOk : kExitFailure;
}

int CmdSweep(const Options& opt) {
  const RunConfig cfg = LoadConfig(opt);
  if (!cfg.sweep) throw UsageError("config has no 'sweep' section");
  const SweepSpec& sweep = *cfg.sweep;
  const std::string game = GameName(cfg.game);
  std::ostringstream out;
  json rows = json::array();
  if (opt.format != "json") out << CsvHeader(game, sweep.axis);
  for (int i = 0; i < sweep.steps; ++i) {
    const double value = sweep.ValueAt(i);
    EquilibriumReport r;
    try {
      r = Solve(WithAxisValue(cfg.game, sweep.axis, value));
    } catch (const Error& e) {
      if (!IsInfeasibility(e.code()) || !opt.skip_infeasible) throw;
      continue;
    }
    if (opt.format == "json") {
      rows.push_back({{"value", value}, {"report", ReportToJson(r)}});
    } else {
      out << CsvRow(r, FormatDouble(value));
    }
  }
  if (opt.format == "json") out << rows.dump(2) << "\n";
  Emit(opt, out.str());
  return kExitOk;
}

int CmdCases(const Options& opt) {
  CasesSpec spec;
  std::uint64_t seed = 0;
  if (!opt.config.empty()) {
    const json doc = ParseJsonFile(opt.config, "config");
    if (doc.contains("game")) {
      const RunConfig cfg = RunConfigFromJson(doc);
      if (cfg.cases) spec = *cfg.cases;
      seed = cfg.seed;
    } else {
      json wrapped = {{"game", "optout"}, {"d0", 0.5},  {"rho", 1.0},
                      {"m00", 1.0},       {"m01", 1.0}, {"m10", 1.0},
                      {"m11", 1.0}};
      for (const auto& [k, v] : doc.items()) wrapped[k] = v;
      const RunConfig cfg = RunConfigFromJson(wrapped);
      if (cfg.cases) spec = *cfg.cases;
      seed = cfg.seed;
    }
  }
  if (opt.samples) {
    if (*opt.samples < 1) throw UsageError("--samples must be >= 1");
    spec.samples = *opt.samples;
  }
  if (opt.sampler) spec.sampler = *opt.sampler;
  if (opt.seed) seed = *opt.seed;
  const CaseTally tally = TallyCases(spec, seed);
  std::ostringstream out;
  static const char* kLabels[] = {"Case1", "Case2", "Case3",   "Case4",
                                  "Case5", "Case6", "Boundary"};
  auto count = [&](const char* label) {
    auto it = tally.counts.find(label);
    return it == tally.counts.end() ? std::int64_t{0} : it->second;
  };
  if (opt.format == "json") {
    json counts = json::object();
    for (const char* l : kLabels) counts[l] = count(l);
    out << json{{"sampler", spec.sampler},
                {"seed", seed},
                {"samples", tally.samples},
                {"strawman_rejections", tally.strawman_rejections},
                {"counts", counts},
                {"exclusivity_failures", tally.exclusivity_failures},
                {"covering_failures", tally.covering_failures},
                {"inconsistencies", tally.inconsistencies()}}
               .dump(2)
        << "\n";
  } else if (opt.format == "csv") {
    out << "label,count\n";
    for (const char* l : kLabels) out << l << "," << count(l) << "\n";
    out << "ExclusivityFailure," << tally.exclusivity_failures << "\n"
        << "CoveringFailure," << tally.covering_failures << "\n";
  } else {
    out << "sampler: " << spec.sampler << "\n"
        << "seed: " << seed << "\n"
        << "samples: " << tally.samples << "\n"
        << "strawman_rejections: " << tally.strawman_rejections << "\n";
    for (const char* l : kLabels) out << l << ": " << count(l) << "\n";
    out << "exclusivity_failures: " << tally.exclusivity_failures << "\n"
        << "covering_failures: " << tally.covering_failures << "\n"
        << "inconsistencies: " << tally.inconsistencies() << "\n";
  }
  Emit(opt, out.str());
  return tally.inconsistencies() == 0 ? kExitOk : kExitFailure;
}

int CmdEpsilon(const Options& opt) {
  const BStrategy b(opt.p, opt.q);
  const ExtendedReal eps = DpEpsilon(b);
  const ExtendedReal x = XGame(b);
  const bool rr = IsRandomizedResponse(b, 0.0);
  std::ostringstream out;
  if (opt.format == "json") {
    out << json{{"p", b.p},
                {"q", b.q},
                {"epsilon", ExtendedToJson(eps)},
                {"x_game", ExtendedToJson(x)},
                {"randomized_response", rr}}
               .dump(2)
        << "\n";
  } else if (opt.format == "csv") {
    out << "p,q,epsilon,x_game,randomized_response\n"
        << FormatDouble(b.p) << "," << FormatDouble(b.q) << ","
        << eps.ToString() << "," << x.ToString() << ","
        << (rr ? "true" : "false") << "\n";
  } else {
    out << "epsilon: " << eps.ToString() << "\n"
        << "x_game: " << x.ToString() << "\n"
        << "randomized_response: " << (rr ? "true" : "false") << "\n";
  }
  Emit(opt, out.str());
  return kExitOk;
}

int ExitCodeFor(const Error& e) {
  if (IsInfeasibility(e.code())) return kExitInfeasible;
  switch (e.code()) {
    case ErrorCode::kConfigError:
    case ErrorCode::kDomainError:
    case ErrorCode::kInvalidRange:
    case ErrorCode::kInvalidDistribution:
    case ErrorCode::kNonSymmetricRule:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

int Run(int argc, char** argv) {
  CLI::App app{"Equilibrium solver and verifier for coupon signaling games"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", opt.out, "Write output to this file");
  };
  auto add_run = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config, "JSON config file")->required();
    cmd->add_option("--grid", opt.grid, "Oracle grid step");
    cmd->add_option("--tol", opt.tol, "Gap tolerance");
    cmd->add_option("--seed", opt.seed, "Seed");
    add_common(cmd);
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve the configured game");
  add_run(solve);
  CLI::App* verify = app.add_subcommand(
      "verify", "Check a profile with the best-response oracle");
  add_run(verify);
  verify->add_option("--profile", opt.profile, "Profile JSON ('-' for stdin)")
      ->required();
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one parameter");
  add_run(sweep);
  sweep->add_flag("--skip-infeasible", opt.skip_infeasible,
                  "Drop infeasible steps instead of failing");
  CLI::App* cases =
      app.add_subcommand("cases", "Sample opt-out parameters and tally cases");
  cases->add_option("--config", opt.config, "JSON config file");
  cases->add_option("--seed", opt.seed, "Seed");
  cases->add_option("--samples", opt.samples, "Number of feasible draws");
  cases->add_option("--sampler", opt.sampler, "uniform, case6 or boundary")
      ->check(CLI::IsMember({"uniform", "case6", "boundary"}));
  add_common(cases);
  CLI::App* epsilon =
      app.add_subcommand("epsilon", "Privacy level of a B strategy");
  epsilon->add_option("--p", opt.p, "P(signal 0 | type 0)")->required();
  epsilon->add_option("--q", opt.q, "P(signal 1 | type 1)")->required();
  add_common(epsilon);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return CmdSolve(opt);
    if (*verify) return CmdVerify(opt);
    if (*sweep) return CmdSweep(opt);
    if (*cases) return CmdCases(opt);
    return CmdEpsilon(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace
}  // namespace coupon_bne

int main(int argc, char** argv) { return coupon_bne::Run(argc, argv); }
