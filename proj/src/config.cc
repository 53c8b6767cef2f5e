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

#include "coupon_bne/config.h"

#include <cmath>
#include <set>
#include <utility>

#include "coupon_bne/errors.h"

namespace coupon_bne {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void Fail(const std::string& why) {
  throw Error(ErrorCode::kConfigError, why);
}

double Number(const json& doc, const char* key) {
  if (!doc.contains(key)) Fail(std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number()) Fail(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double NumberOr(const json& doc, const char* key, double fallback) {
  return doc.contains(key) ? Number(doc, key) : fallback;
}

void CheckKeys(const json& doc, const std::set<std::string>& allowed,
               const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) Fail("unknown field '" + key + "' in " + where);
  }
}

const std::set<std::string> kRunKeys = {"grid", "tol", "seed", "sweep",
                                        "cases"};

Prior PriorFromJson(const json& doc) {
  const bool has0 = doc.contains("d0"), has1 = doc.contains("d1");
  if (has0 && has1) return Prior(Number(doc, "d0"), Number(doc, "d1"));
  if (has0) return Prior(Number(doc, "d0"));
  if (has1) {
    const double d1 = Number(doc, "d1");
    return Prior(1.0 - d1, d1);
  }
  Fail("missing prior: give d0 or d1");
}

CouponValues CouponsFromJson(const json& doc) {
  if (doc.contains("rho")) {
    if (doc.contains("rho0") || doc.contains("rho1")) {
      Fail("give either rho or rho0/rho1, not both");
    }
    const double rho = Number(doc, "rho");
    return CouponValues(rho, rho);
  }
  return CouponValues(Number(doc, "rho0"), Number(doc, "rho1"));
}

ValuationDistribution DistributionFromJson(const json& doc) {
  if (!doc.is_object()) Fail("valuation must be an object");
  if (!doc.contains("family") || !doc.at("family").is_string()) {
    Fail("valuation needs a string 'family'");
  }
  const std::string family = doc.at("family").get<std::string>();
  ValuationDistribution out;
  if (family == "uniform") {
    CheckKeys(doc, {"family", "lo", "hi"}, "uniform valuation");
    out = UniformValuation{NumberOr(doc, "lo", 0.0), NumberOr(doc, "hi", 1.0)};
  } else if (family == "exponential") {
    CheckKeys(doc, {"family", "rate"}, "exponential valuation");
    out = ExponentialValuation{Number(doc, "rate")};
  } else if (family == "piecewise") {
    CheckKeys(doc, {"family", "knots"}, "piecewise valuation");
    if (!doc.contains("knots") || !doc.at("knots").is_array()) {
      Fail("piecewise valuation needs a 'knots' array of [x, cdf] pairs");
    }
    PiecewiseLinearValuation pw;
    for (const json& k : doc.at("knots")) {
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() ||
          !k[1].is_number()) {
        Fail("each knot must be a pair [x, cdf]");
      }
      pw.knots.emplace_back(k[0].get<double>(), k[1].get<double>());
    }
    out = pw;
  } else {
    Fail("unknown valuation family '" + family + "'");
  }
  ValidateDistribution(out);
  return out;
}

json DistributionToJson(const ValuationDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const UniformValuation& u) {
            return json{{"family", "uniform"}, {"lo", u.lo}, {"hi", u.hi}};
          },
          [](const ExponentialValuation& e) {
            return json{{"family", "exponential"}, {"rate", e.rate}};
          },
          [](const PiecewiseLinearValuation& pw) {
            json knots = json::array();
            for (const auto& [x, f] : pw.knots) knots.push_back({x, f});
            return json{{"family", "piecewise"}, {"knots", knots}};
          },
      },
      dist);
}

void PutPrior(const Prior& prior, json& doc) {
  doc["d0"] = prior.relabeled() ? prior.d1() : prior.d0();
  doc["d1"] = prior.relabeled() ? prior.d0() : prior.d1();
}

void PutCoupons(const CouponValues& c, json& doc) {
  doc["rho0"] = c.rho0;
  doc["rho1"] = c.rho1;
}

json IntervalToJson(const Interval& iv) {
  return json::array({ExtendedToJson(iv.lo), ExtendedToJson(iv.hi)});
}

json OptionalToJson(const std::optional<double>& v) {
  return v ? ExtendedToJson(*v) : json(nullptr);
}

}  // namespace

GameSpec GameSpecFromJson(const json& doc) {
  if (!doc.is_object()) Fail("config must be a JSON object");
  if (!doc.contains("game") || !doc.at("game").is_string()) {
    Fail("config needs a string field 'game'");
  }
  const std::string game = doc.at("game").get<std::string>();
  std::set<std::string> allowed = kRunKeys;
  allowed.insert({"game", "d0", "d1"});
  auto with = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) allowed.insert(k);
    CheckKeys(doc, allowed, "game '" + game + "'");
  };
  if (game == "privacy_aware") {
    with({"rho", "rho0", "rho1", "v"});
    PrivacyAwareGame g{PriorFromJson(doc), CouponsFromJson(doc),
                       Number(doc, "v")};
    PrivacyAwareParams(g.prior, g.coupons, g.v);
    return g;
  }
  if (game == "scoring") {
    with({"rho", "rho0", "rho1", "rule"});
    std::string rule = "quadratic";
    if (doc.contains("rule")) {
      if (!doc.at("rule").is_string()) Fail("'rule' must be a string");
      rule = doc.at("rule").get<std::string>();
    }
    return ScoringGame{PriorFromJson(doc), CouponsFromJson(doc),
                       MakeRule(rule)};
  }
  if (game == "identity") {
    with({"rho", "rho0", "rho1"});
    return IdentityGame{PriorFromJson(doc), CouponsFromJson(doc)};
  }
  if (game == "identity_continuous") {
    with({"valuation", "valuation0", "valuation1"});
    ValuationModel model{UniformValuation{}, UniformValuation{}};
    if (doc.contains("valuation")) {
      if (doc.contains("valuation0") || doc.contains("valuation1")) {
        Fail("give either valuation or valuation0/valuation1, not both");
      }
      model.type0 = model.type1 = DistributionFromJson(doc.at("valuation"));
    } else {
      if (!doc.contains("valuation0") || !doc.contains("valuation1")) {
        Fail("missing valuation: give valuation or valuation0/valuation1");
      }
      model.type0 = DistributionFromJson(doc.at("valuation0"));
      model.type1 = DistributionFromJson(doc.at("valuation1"));
    }
    return IdentityContinuousGame{PriorFromJson(doc), model};
  }
  if (game == "optout") {
    with({"rho", "rho0", "rho1", "m00", "m01", "m10", "m11"});
    return OptOutGame{PriorFromJson(doc), CouponsFromJson(doc),
                      PaymentMatrix(Number(doc, "m00"), Number(doc, "m01"),
                                    Number(doc, "m10"), Number(doc, "m11"))};
  }
  Fail("unknown game '" + game + "'");
}

json GameSpecToJson(const GameSpec& game) {
  json doc;
  doc["game"] = GameName(game);
  std::visit(Overloaded{
                 [&](const PrivacyAwareGame& g) {
                   PutPrior(g.prior, doc);
                   PutCoupons(g.coupons, doc);
                   doc["v"] = g.v;
                 },
                 [&](const ScoringGame& g) {
                   PutPrior(g.prior, doc);
                   PutCoupons(g.coupons, doc);
                   doc["rule"] = g.rule.name();
                 },
                 [&](const IdentityGame& g) {
                   PutPrior(g.prior, doc);
                   PutCoupons(g.coupons, doc);
                 },
                 [&](const IdentityContinuousGame& g) {
                   PutPrior(g.prior, doc);
                   doc["valuation0"] = DistributionToJson(g.valuations.type0);
                   doc["valuation1"] = DistributionToJson(g.valuations.type1);
                 },
                 [&](const OptOutGame& g) {
                   PutPrior(g.prior, doc);
                   PutCoupons(g.coupons, doc);
                   doc["m00"] = g.matrix.m00;
                   doc["m01"] = g.matrix.m01;
                   doc["m10"] = g.matrix.m10;
                   doc["m11"] = g.matrix.m11;
                 },
             },
             game);
  return doc;
}

double SweepSpec::ValueAt(int i) const {
  if (i == steps - 1) return to;
  const double t = static_cast<double>(i) / (steps - 1);
  return from * (1.0 - t) + to * t;
}

RunConfig RunConfigFromJson(const json& doc) {
  RunConfig cfg{GameSpecFromJson(doc), 1e-3,        1e-4, 0,
                std::nullopt,          std::nullopt};
  cfg.grid_step = NumberOr(doc, "grid", cfg.grid_step);
  if (!(cfg.grid_step > 0.0) || cfg.grid_step > 1.0) {
    Fail("grid must lie in (0, 1]");
  }
  cfg.tol = NumberOr(doc, "tol", cfg.tol);
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) Fail("tol must be > 0");
  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (!seed.is_number_unsigned() &&
        !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      Fail("seed must be an unsigned 64-bit integer");
    }
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    if (!s.is_object()) Fail("'sweep' must be an object");
    CheckKeys(s, {"axis", "from", "to", "steps"}, "sweep");
    SweepSpec sweep;
    if (!s.contains("axis") || !s.at("axis").is_string()) {
      Fail("sweep needs a string 'axis'");
    }
    sweep.axis = s.at("axis").get<std::string>();
    static const std::set<std::string> kAxes = {"rho", "rho0", "rho1", "v",
                                                "d0"};
    if (!kAxes.count(sweep.axis))
      Fail("unknown sweep axis '" + sweep.axis + "'");
    sweep.from = Number(s, "from");
    sweep.to = Number(s, "to");
    if (!s.contains("steps") || !s.at("steps").is_number_integer()) {
      Fail("sweep needs an integer 'steps'");
    }
    sweep.steps = s.at("steps").get<int>();
    if (sweep.steps < 2) Fail("sweep steps must be >= 2");
    cfg.sweep = sweep;
  }
  if (doc.contains("cases")) {
    const json& c = doc.at("cases");
    if (!c.is_object()) Fail("'cases' must be an object");
    CheckKeys(c, {"samples", "sampler"}, "cases");
    CasesSpec cases;
    if (c.contains("samples")) {
      if (!c.at("samples").is_number_integer()) {
        Fail("cases samples must be an integer");
      }
      cases.samples = c.at("samples").get<int>();
    }
    if (cases.samples < 1) Fail("cases samples must be >= 1");
    if (c.contains("sampler")) {
      if (!c.at("sampler").is_string()) Fail("sampler must be a string");
      cases.sampler = c.at("sampler").get<std::string>();
    }
    if (cases.sampler != "uniform" && cases.sampler != "case6" &&
        cases.sampler != "boundary") {
      Fail("unknown sampler '" + cases.sampler + "'");
    }
    cfg.cases = cases;
  }
  return cfg;
}

GameSpec WithAxisValue(const GameSpec& game, const std::string& axis,
                       double value) {
  return std::visit(
      [&](auto g) -> GameSpec {
        using T = std::decay_t<decltype(g)>;
        if (axis == "d0") {
          g.prior = Prior(value);
          return g;
        }
        if constexpr (std::is_same_v<T, PrivacyAwareGame>) {
          if (axis == "v") {
            g.v = value;
            PrivacyAwareParams(g.prior, g.coupons, g.v);
            return g;
          }
        }
        if constexpr (!std::is_same_v<T, IdentityContinuousGame>) {
          if (axis == "rho") {
            g.coupons = CouponValues(value, value);
            return g;
          }
          if (axis == "rho0") {
            g.coupons = CouponValues(value, g.coupons.rho1);
            return g;
          }
          if (axis == "rho1") {
            g.coupons = CouponValues(g.coupons.rho0, value);
            return g;
          }
        }
        Fail("axis '" + axis + "' does not apply to game '" + GameName(g) +
             "'");
      },
      game);
}

json ExtendedToJson(ExtendedReal value) {
  if (value.is_positive_infinity()) return "inf";
  if (value.is_negative_infinity()) return "-inf";
  return value.value();
}

ExtendedReal ExtendedFromJson(const json& value) {
  if (value.is_number()) return ExtendedReal(value.get<double>());
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s == "inf") return ExtendedReal::PositiveInfinity();
    if (s == "-inf") return ExtendedReal::NegativeInfinity();
  }
  Fail("expected a number, \"inf\" or \"-inf\"");
}

json ProfileToJson(const Profile& profile) {
  json doc;
  doc["b"] = {{"p", profile.b.p}, {"q", profile.b.q}};
  doc["a"] = std::visit(
      Overloaded{
          [](std::monostate) { return json(nullptr); },
          [](const ScoringReportPair& r) {
            return json{{"kind", "report"}, {"x0", r.x0}, {"x1", r.x1}};
          },
          [](const GuessPolicy& g) {
            return json{{"kind", "guess"}, {"x", g.x}, {"y", g.y}};
          },
          [](const OptOutPolicy& o) {
            return json{{"kind", "optout"},
                        {"x0", o.x0},
                        {"x1", o.x1},
                        {"y0", o.y0},
                        {"y1", o.y1}};
          },
      },
      profile.a);
  doc["threshold"] =
      profile.threshold ? json(*profile.threshold) : json(nullptr);
  return doc;
}

Profile ProfileFromJson(const json& input) {
  if (!input.is_object()) Fail("profile must be a JSON object");
  const json& doc = input.contains("profile") ? input.at("profile") : input;
  if (!doc.is_object() || !doc.contains("b") || !doc.at("b").is_object()) {
    Fail("profile needs an object 'b' with p and q");
  }
  Profile out;
  out.b = BStrategy(Number(doc.at("b"), "p"), Number(doc.at("b"), "q"));
  if (doc.contains("a") && !doc.at("a").is_null()) {
    const json& a = doc.at("a");
    if (!a.is_object() || !a.contains("kind") || !a.at("kind").is_string()) {
      Fail("A strategy needs a string 'kind'");
    }
    const std::string kind = a.at("kind").get<std::string>();
    if (kind == "report") {
      out.a = ScoringReportPair(Number(a, "x0"), Number(a, "x1"));
    } else if (kind == "guess") {
      out.a = GuessPolicy(Number(a, "x"), Number(a, "y"));
    } else if (kind == "optout") {
      out.a = OptOutPolicy(Number(a, "x0"), Number(a, "x1"), Number(a, "y0"),
                           Number(a, "y1"));
    } else {
      Fail("unknown A strategy kind '" + kind + "'");
    }
  }
  if (doc.contains("threshold") && !doc.at("threshold").is_null()) {
    out.threshold = Number(doc, "threshold");
  }
  return out;
}

json ReportToJson(const EquilibriumReport& report) {
  json doc;
  doc["game"] = report.game;
  doc["profile"] = ProfileToJson(report.profile);
  doc["posteriors"] = {{"y0", OptionalToJson(report.posteriors.y0)},
                       {"y1", OptionalToJson(report.posteriors.y1)}};
  doc["u_a"] = OptionalToJson(report.u_a);
  doc["u_b0"] = ExtendedToJson(report.u_b0);
  doc["u_b1"] = ExtendedToJson(report.u_b1);
  doc["epsilon"] =
      report.dp_epsilon ? ExtendedToJson(*report.dp_epsilon) : json(nullptr);
  doc["case"] = report.case_label;
  doc["unique"] = report.unique;
  doc["notes"] = report.notes;
  json metrics = json::object();
  for (const auto& [k, v] : report.metrics) metrics[k] = ExtendedToJson(v);
  doc["metrics"] = metrics;
  json intervals = json::object();
  for (const auto& [k, v] : report.intervals) intervals[k] = IntervalToJson(v);
  doc["intervals"] = intervals;
  json alternatives = json::array();
  for (const Profile& p : report.alternatives) {
    alternatives.push_back(ProfileToJson(p));
  }
  doc["alternatives"] = alternatives;
  return doc;
}

json GapReportToJson(const GapReport& gaps, double tol) {
  return json{{"gap_a", ExtendedToJson(gaps.gap_a)},
              {"gap_b0", ExtendedToJson(gaps.gap_b0)},
              {"gap_b1", ExtendedToJson(gaps.gap_b1)},
              {"max_gap", ExtendedToJson(gaps.max_gap())},
              {"grid_step", gaps.grid_step},
              {"tol", tol},
              {"pass", gaps.max_gap() <= tol},
              {"deviations", gaps.argmax_deviations}};
}

}  // namespace coupon_bne
