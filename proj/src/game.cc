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

#include "coupon_bne/game.h"

#include <cmath>
#include <utility>

#include "coupon_bne/errors.h"
#include "coupon_bne/optout_game.h"
#include "coupon_bne/scoring_game.h"

namespace coupon_bne {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Prior CanonicalPrior(const Prior& prior) { return Prior(prior.d0()); }

template <typename T>
const T& RequireA(const Profile& profile, const char* game) {
  if (const T* a = std::get_if<T>(&profile.a)) return *a;
  throw Error(
      ErrorCode::kConfigError,
      std::string("profile lacks the A strategy of the ") + game + " game");
}

struct ContinuousUtilities {
  BStrategy b;
  Utilities u;
};

// B plays the threshold strategy, A plays `a`.
ContinuousUtilities EvaluateContinuous(const Prior& prior,
                                       const ValuationModel& model, double t,
                                       const GuessPolicy& a) {
  const double p = 1.0 - Cdf(model.type0, t);
  const double q = 1.0 - Cdf(model.type1, t);
  ContinuousUtilities out{BStrategy(p, q), {}};
  out.u.u_a = IdentityUtilities(prior, CouponValues(1.0, 1.0), out.b, a).u_a;
  out.u.u_b0 = PartialMean(model.type0, t) - p * a.x + (1.0 - p) * (a.y - 1.0);
  out.u.u_b1 = PartialMean(model.type1, t) - q * a.y + (1.0 - q) * (a.x - 1.0);
  return out;
}

// Interval and metric names that refer to one label and their image under
// the label swap.
const std::pair<const char*, const char*> kSwappedNames[] = {
    {"x0", "x1"}, {"x", "y"}, {"b_p", "b_q"}, {"rr_p", "rr_q"}};

std::string SwappedName(const std::string& name) {
  for (const auto& [a, b] : kSwappedNames) {
    if (name == a) return b;
    if (name == b) return a;
  }
  return name;
}

EquilibriumReport RelabelReport(EquilibriumReport r, bool scoring) {
  r.profile = Relabel(r.profile);
  Posteriors post;
  if (r.posteriors.y1) post.y0 = 1.0 - *r.posteriors.y1;
  if (r.posteriors.y0) post.y1 = 1.0 - *r.posteriors.y0;
  r.posteriors = post;
  std::swap(r.u_b0, r.u_b1);
  if (r.case_label == "Corner10") {
    r.case_label = "Corner01";
  } else if (r.case_label == "Corner01") {
    r.case_label = "Corner10";
  }
  std::map<std::string, Interval> intervals;
  for (const auto& [name, iv] : r.intervals) {
    // Scoring reports are probabilities of type 1, so they also flip.
    intervals[SwappedName(name)] = scoring && (name == "x0" || name == "x1")
                                       ? Interval{1.0 - iv.hi, 1.0 - iv.lo}
                                       : iv;
  }
  r.intervals = std::move(intervals);
  std::map<std::string, double> metrics;
  for (const auto& [name, v] : r.metrics) metrics[SwappedName(name)] = v;
  r.metrics = std::move(metrics);
  for (Profile& alt : r.alternatives) alt = Relabel(alt);
  if (scoring && r.posteriors.y0 && r.posteriors.y1 &&
      r.metrics.count("posterior_epsilon")) {
    const double e = std::log(*r.posteriors.y1) - std::log(*r.posteriors.y0);
    r.metrics["posterior_epsilon"] = e;
    r.dp_epsilon = ExtendedReal(e);
  }
  r.notes.push_back(
      "types were relabeled so that D0 >= D1 during solving; all values are "
      "reported in the original labels");
  return r;
}

void FillPosteriorsAndEpsilon(const Prior& prior, EquilibriumReport& r) {
  r.posteriors = TryBayesPosteriors(prior, r.profile.b);
  if (!r.dp_epsilon) r.dp_epsilon = DpEpsilon(r.profile.b);
  if (!r.posteriors.y0)
    r.notes.push_back(
        "posterior after signal 0 is unconstrained (signal never sent)");
  if (!r.posteriors.y1)
    r.notes.push_back(
        "posterior after signal 1 is unconstrained (signal never sent)");
}

EquilibriumReport SolveCanonical(const PrivacyAwareGame& g) {
  const PrivacyAwareParams params(g.prior, g.coupons, g.v);
  const PrivacyAwareSolution sol = SolvePrivacyAware(params);
  EquilibriumReport r;
  r.profile.b = sol.b;
  r.u_b0 = r.u_b1 = sol.utility;
  r.unique = !sol.degenerate;
  if (!sol.note.empty()) r.notes.push_back(sol.note);
  r.case_label = sol.b.p == sol.b.q ? "RandomizedResponse"
                 : sol.b.p == 1.0   ? "Corner10"
                                    : "Corner01";
  r.metrics["Y"] = params.Y();
  if (auto p_star = PrivacyAwareInteriorPoint(params)) {
    r.metrics["p_star"] = *p_star;
  }
  FillPosteriorsAndEpsilon(g.prior, r);
  return r;
}

EquilibriumReport SolveCanonical(const ScoringGame& g) {
  const ScoringBne bne =
      g.coupons.rho0 == g.coupons.rho1
          ? SolveScoringBne(g.prior, g.coupons.rho0, g.rule)
          : SolveScoringBneAsymmetric(g.prior, g.coupons, g.rule);
  EquilibriumReport r;
  r.profile.b = bne.b;
  r.profile.a = bne.a;
  const Utilities u =
      ScoringUtilities(g.prior, g.coupons, g.rule, bne.b, bne.a);
  r.u_a = u.u_a;
  r.u_b0 = u.u_b0;
  r.u_b1 = u.u_b1;
  r.case_label = RegimeName(bne.regime);
  r.unique = bne.unique;
  r.notes = bne.notes;
  r.metrics["posterior_epsilon"] = bne.posterior_epsilon;
  r.metrics["dp_epsilon"] = DpEpsilon(bne.b).value();
  r.dp_epsilon = ExtendedReal(bne.posterior_epsilon);
  r.metrics["a_profit"] = bne.a_profit;
  r.metrics["benchmark_profit"] = bne.benchmark_profit;
  if (bne.x1_interval) r.intervals["x1"] = *bne.x1_interval;
  FillPosteriorsAndEpsilon(g.prior, r);
  return r;
}

EquilibriumReport SolveCanonical(const IdentityGame& g) {
  const IdentityBne bne = SolveIdentityBne(g.prior, g.coupons);
  EquilibriumReport r;
  r.profile.b = bne.b;
  r.profile.a = bne.a;
  const Utilities u = IdentityUtilities(g.prior, g.coupons, bne.b, bne.a);
  r.u_a = u.u_a;
  r.u_b0 = u.u_b0;
  r.u_b1 = u.u_b1;
  r.dp_epsilon = bne.dp_epsilon;
  r.case_label = IdentityCaseName(bne.identity_case);
  r.unique = bne.unique;
  r.notes = bne.notes;
  if (bne.y_interval) r.intervals["y"] = *bne.y_interval;
  if (bne.b_segment) {
    const auto& [from, to] = *bne.b_segment;
    r.intervals["b_p"] =
        Interval{std::min(from.p, to.p), std::max(from.p, to.p)};
    r.intervals["b_q"] =
        Interval{std::min(from.q, to.q), std::max(from.q, to.q)};
  }
  if (bne.rr_point) {
    r.metrics["rr_p"] = bne.rr_point->p;
    r.metrics["rr_q"] = bne.rr_point->q;
    r.metrics["rr_epsilon"] = DpEpsilon(*bne.rr_point).value();
  }
  for (const auto& [b, a] : bne.alternatives) {
    r.alternatives.push_back(Profile{b, a, std::nullopt});
  }
  FillPosteriorsAndEpsilon(g.prior, r);
  return r;
}

EquilibriumReport SolveCanonical(const IdentityContinuousGame& g) {
  const ContinuousThresholdBne bne =
      SolveContinuousThreshold(g.prior, g.valuations);
  EquilibriumReport r;
  r.profile = Profile{bne.induced_b, bne.a, bne.threshold.t};
  const ContinuousUtilities cu =
      EvaluateContinuous(g.prior, g.valuations, bne.threshold.t, bne.a);
  r.u_a = cu.u.u_a;
  r.u_b0 = cu.u.u_b0;
  r.u_b1 = cu.u.u_b1;
  r.case_label = bne.root_branch ? "ThresholdAtRoot" : "ThresholdAtOne";
  r.unique = bne.unique;
  r.notes = bne.notes;
  r.metrics["y_star"] = bne.y_star;
  r.metrics["y_star_max"] = bne.y_star_max;
  r.metrics["threshold"] = bne.threshold.t;
  r.metrics["cdf_b_at_1"] = g.valuations.CdfB(g.prior, 1.0);
  r.posteriors = TryBayesPosteriors(g.prior, r.profile.b);
  if (bne.dp_epsilon) {
    r.dp_epsilon = *bne.dp_epsilon;
  } else {
    r.notes.push_back(
        "types have different valuation laws; epsilon is not reported");
  }
  return r;
}

EquilibriumReport SolveCanonical(const OptOutGame& g) {
  const OptOutBne bne = SolveOptOutBne(g.prior, g.matrix, g.coupons);
  EquilibriumReport r;
  r.profile.b = bne.b;
  r.profile.a = bne.a;
  const Utilities u =
      OptOutUtilities(g.prior, g.matrix, g.coupons, bne.b, bne.a);
  r.u_a = u.u_a;
  r.u_b0 = u.u_b0;
  r.u_b1 = u.u_b1;
  r.dp_epsilon = bne.dp_epsilon;
  r.case_label = OptOutCaseName(bne.classification.label);
  r.unique = bne.unique;
  r.notes = bne.notes;
  r.metrics["rr"] = bne.rr ? 1.0 : 0.0;
  if (bne.rr_epsilon) r.metrics["rr_epsilon"] = *bne.rr_epsilon;
  for (size_t i = 1; i < bne.candidates.size(); ++i) {
    r.alternatives.push_back(
        Profile{bne.candidates[i].b, bne.candidates[i].a, std::nullopt});
  }
  FillPosteriorsAndEpsilon(g.prior, r);
  return r;
}

}  // namespace

std::string GameName(const GameSpec& game) {
  return std::visit(
      Overloaded{
          [](const PrivacyAwareGame&) { return std::string("privacy_aware"); },
          [](const ScoringGame&) { return std::string("scoring"); },
          [](const IdentityGame&) { return std::string("identity"); },
          [](const IdentityContinuousGame&) {
            return std::string("identity_continuous");
          },
          [](const OptOutGame&) { return std::string("optout"); },
      },
      game);
}

GameSpec Canonical(const GameSpec& game) {
  return std::visit(Overloaded{
                        [](PrivacyAwareGame g) -> GameSpec {
                          if (g.prior.relabeled())
                            g.coupons = Relabel(g.coupons);
                          g.prior = CanonicalPrior(g.prior);
                          return g;
                        },
                        [](ScoringGame g) -> GameSpec {
                          if (g.prior.relabeled())
                            g.coupons = Relabel(g.coupons);
                          g.prior = CanonicalPrior(g.prior);
                          return g;
                        },
                        [](IdentityGame g) -> GameSpec {
                          if (g.prior.relabeled())
                            g.coupons = Relabel(g.coupons);
                          g.prior = CanonicalPrior(g.prior);
                          return g;
                        },
                        [](IdentityContinuousGame g) -> GameSpec {
                          if (g.prior.relabeled()) {
                            std::swap(g.valuations.type0, g.valuations.type1);
                          }
                          g.prior = CanonicalPrior(g.prior);
                          return g;
                        },
                        [](OptOutGame g) -> GameSpec {
                          if (g.prior.relabeled()) {
                            g.coupons = Relabel(g.coupons);
                            g.matrix = Relabel(g.matrix);
                          }
                          g.prior = CanonicalPrior(g.prior);
                          return g;
                        },
                    },
                    game);
}

Profile Relabel(const Profile& profile) {
  Profile out = profile;
  out.b = Relabel(profile.b);
  out.a = std::visit(
      Overloaded{
          [](std::monostate) -> AStrategy { return std::monostate{}; },
          [](const auto& a) -> AStrategy { return Relabel(a); },
      },
      profile.a);
  return out;
}

static bool IsRelabeled(const GameSpec& game) {
  return std::visit([](const auto& g) { return g.prior.relabeled(); }, game);
}

ProfileUtilities EvaluateProfile(const GameSpec& game, const Profile& profile) {
  const GameSpec canonical = Canonical(game);
  const bool flip = IsRelabeled(game);
  const Profile pr = flip ? Relabel(profile) : profile;
  ProfileUtilities out = std::visit(
      Overloaded{
          [&](const PrivacyAwareGame& g) {
            const ExtendedReal u = PrivacyAwareUtility(
                PrivacyAwareParams(g.prior, g.coupons, g.v), pr.b);
            return ProfileUtilities{std::nullopt, u, u};
          },
          [&](const ScoringGame& g) {
            const Utilities u =
                ScoringUtilities(g.prior, g.coupons, g.rule, pr.b,
                                 RequireA<ScoringReportPair>(pr, "scoring"));
            return ProfileUtilities{u.u_a, u.u_b0, u.u_b1};
          },
          [&](const IdentityGame& g) {
            const Utilities u =
                IdentityUtilities(g.prior, g.coupons, pr.b,
                                  RequireA<GuessPolicy>(pr, "identity"));
            return ProfileUtilities{u.u_a, u.u_b0, u.u_b1};
          },
          [&](const IdentityContinuousGame& g) {
            if (!pr.threshold) {
              throw Error(ErrorCode::kConfigError,
                          "continuous-valuation profiles need a threshold");
            }
            const Utilities u =
                EvaluateContinuous(g.prior, g.valuations, *pr.threshold,
                                   RequireA<GuessPolicy>(pr, "identity"))
                    .u;
            return ProfileUtilities{u.u_a, u.u_b0, u.u_b1};
          },
          [&](const OptOutGame& g) {
            const Utilities u =
                OptOutUtilities(g.prior, g.matrix, g.coupons, pr.b,
                                RequireA<OptOutPolicy>(pr, "optout"));
            return ProfileUtilities{u.u_a, u.u_b0, u.u_b1};
          },
      },
      canonical);
  if (flip) std::swap(out.u_b0, out.u_b1);
  return out;
}

EquilibriumReport Solve(const GameSpec& game) {
  const GameSpec canonical = Canonical(game);
  EquilibriumReport r =
      std::visit([](const auto& g) { return SolveCanonical(g); }, canonical);
  r.game = GameName(game);
  if (IsRelabeled(game)) {
    r = RelabelReport(std::move(r), std::holds_alternative<ScoringGame>(game));
  }
  return r;
}

}  // namespace coupon_bne
