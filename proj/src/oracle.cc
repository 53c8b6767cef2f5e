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

#include "coupon_bne/oracle.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>
#include <utility>

#include "coupon_bne/errors.h"
#include "coupon_bne/optout_game.h"
#include "coupon_bne/privacy.h"
#include "coupon_bne/scoring_game.h"

namespace coupon_bne {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum Kind { kPrivacy = 0, kScoring, kIdentity, kContinuous, kOptOut };

int GridCount(double step) {
  if (!(step > 0.0) || step > 1.0 || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidRange, "grid step must lie in (0, 1]");
  }
  return std::max(1, static_cast<int>(std::lround(1.0 / step)));
}

// Gains below this are rounding noise and are not listed as deviations.
constexpr double kReportableGain = 1e-12;

double GridPoint(int i, int n) { return static_cast<double>(i) / n; }

double Weighted(double weight, double value) {
  return weight == 0.0 ? 0.0 : weight * value;
}

double Gain(double deviation, double current) {
  if (deviation == current) return 0.0;
  return std::max(0.0, deviation - current);
}

// Runs fn(begin, end) over contiguous chunks of [0, count), one per worker.
// The first exception (in chunk order) is rethrown.
template <typename Fn>
void ParallelChunks(int count, int workers, Fn fn) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    fn(0, count, 0);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    const int begin =
        static_cast<int>(static_cast<long long>(count) * w / workers);
    const int end =
        static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
    threads.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Choice of A after one signal. Guessing games: `first` is the probability
// of the guess that matches the signal (x after 0, y after 1). Opt-out game:
// probabilities of accusing type 0 and type 1. Scoring game: the report.
struct SignalChoice {
  double first = 0.0;
  double second = 0.0;
};

// Canonical-frame view of a game (D0 >= D1).
class Model {
 public:
  explicit Model(const GameSpec& game)
      : game_(Canonical(game)),
        flip_(std::visit([](const auto& g) { return g.prior.relabeled(); },
                         game)),
        kind_(static_cast<Kind>(game.index())),
        prior_(std::visit([](const auto& g) { return g.prior; }, game_)) {}

  Kind kind() const { return kind_; }
  bool flip() const { return flip_; }
  const Prior& prior() const { return prior_; }
  const GameSpec& game() const { return game_; }

  const PrivacyAwareGame& privacy() const {
    return std::get<PrivacyAwareGame>(game_);
  }
  const ScoringGame& scoring() const { return std::get<ScoringGame>(game_); }
  const IdentityContinuousGame& continuous() const {
    return std::get<IdentityContinuousGame>(game_);
  }

  Profile ToCanonical(const Profile& p) const { return flip_ ? Relabel(p) : p; }
  Profile ToUser(const Profile& p) const { return flip_ ? Relabel(p) : p; }

  // Pure actions available to A after a signal; the scoring game uses the
  // report grid with n cells.
  std::vector<SignalChoice> PureActions(int n) const {
    switch (kind_) {
      case kScoring: {
        std::vector<SignalChoice> out(n + 1);
        for (int i = 0; i <= n; ++i) out[i].first = GridPoint(i, n);
        return out;
      }
      case kOptOut:
        return {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
      default:
        return {{1.0, 0.0}, {0.0, 0.0}};
    }
  }

  // A's expected payoff contribution from one signal.
  double SignalValue(const BStrategy& b, int signal,
                     const SignalChoice& c) const {
    const double d0 = prior_.d0(), d1 = prior_.d1();
    const double t0 = signal == 0 ? d0 * b.p : d0 * (1.0 - b.p);
    const double t1 = signal == 0 ? d1 * (1.0 - b.q) : d1 * b.q;
    switch (kind_) {
      case kScoring: {
        const ScoringRule& rule = scoring().rule;
        return Weighted(t0, rule.f0(c.first)) + Weighted(t1, rule.f1(c.first));
      }
      case kOptOut: {
        const AccusationValues s = OptOutAccusationValues(
            prior_, std::get<OptOutGame>(game_).matrix, b, signal);
        return c.first * s.guess0 + c.second * s.guess1;
      }
      default: {
        const double match = signal == 0 ? t0 : t1;
        const double other = signal == 0 ? t1 : t0;
        return c.first * match + (1.0 - c.first) * other;
      }
    }
  }

  SignalChoice ChoiceOf(const AStrategy& a, int signal) const {
    switch (kind_) {
      case kScoring: {
        const auto& r = Require<ScoringReportPair>(a);
        return {signal == 0 ? r.x0 : r.x1, 0.0};
      }
      case kOptOut: {
        const auto& o = Require<OptOutPolicy>(a);
        return signal == 0 ? SignalChoice{o.x0, o.x1}
                           : SignalChoice{o.y0, o.y1};
      }
      default: {
        const auto& g = Require<GuessPolicy>(a);
        return {signal == 0 ? g.x : g.y, 0.0};
      }
    }
  }

  AStrategy Compose(const SignalChoice& c0, const SignalChoice& c1) const {
    switch (kind_) {
      case kPrivacy:
        return std::monostate{};
      case kScoring:
        return ScoringReportPair(c0.first, c1.first);
      case kOptOut:
        return OptOutPolicy(c0.first, c0.second, c1.first, c1.second);
      default:
        return GuessPolicy(c0.first, c1.first);
    }
  }

  // B's utilities for the affine games.
  std::pair<double, double> BUtilities(const BStrategy& b,
                                       const AStrategy& a) const {
    Utilities u;
    switch (kind_) {
      case kScoring: {
        const ScoringGame& g = scoring();
        u = ScoringUtilities(g.prior, g.coupons, g.rule, b,
                             Require<ScoringReportPair>(a));
        break;
      }
      case kIdentity: {
        const IdentityGame& g = std::get<IdentityGame>(game_);
        u = IdentityUtilities(g.prior, g.coupons, b, Require<GuessPolicy>(a));
        break;
      }
      case kOptOut: {
        const OptOutGame& g = std::get<OptOutGame>(game_);
        u = OptOutUtilities(g.prior, g.matrix, g.coupons, b,
                            Require<OptOutPolicy>(a));
        break;
      }
      default:
        throw Error(ErrorCode::kInternalInconsistency,
                    "B utilities requested for a non-affine game");
    }
    return {u.u_b0, u.u_b1};
  }

  ExtendedReal PrivacyUtility(const BStrategy& b) const {
    const PrivacyAwareGame& g = privacy();
    return PrivacyAwareUtility(PrivacyAwareParams(g.prior, g.coupons, g.v), b);
  }

  BStrategy InducedB(double t) const {
    const ValuationModel& m = continuous().valuations;
    return BStrategy(1.0 - Cdf(m.type0, t), 1.0 - Cdf(m.type1, t));
  }

  // Aggregate utility of B's type when it plays threshold t.
  double ThresholdUtility(int type, double t, const GuessPolicy& a) const {
    const ValuationModel& m = continuous().valuations;
    if (type == 0) {
      const double p = 1.0 - Cdf(m.type0, t);
      return PartialMean(m.type0, t) - p * a.x + (1.0 - p) * (a.y - 1.0);
    }
    const double q = 1.0 - Cdf(m.type1, t);
    return PartialMean(m.type1, t) - q * a.y + (1.0 - q) * (a.x - 1.0);
  }

  // Labels in the caller's frame.
  int UserType(int type) const { return flip_ ? 1 - type : type; }

 private:
  template <typename T>
  static const T& Require(const AStrategy& a) {
    if (const T* v = std::get_if<T>(&a)) return *v;
    throw Error(ErrorCode::kConfigError,
                "A strategy does not match the game variant");
  }

  GameSpec game_;
  bool flip_;
  Kind kind_;
  Prior prior_;
};

std::string DescribeA(const AStrategy& a) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ScoringReportPair>) {
          return "A reports x0=" + FormatDouble(s.x0) +
                 " x1=" + FormatDouble(s.x1);
        } else if constexpr (std::is_same_v<T, GuessPolicy>) {
          return "A guesses x=" + FormatDouble(s.x) + " y=" + FormatDouble(s.y);
        } else if constexpr (std::is_same_v<T, OptOutPolicy>) {
          return "A accuses x0=" + FormatDouble(s.x0) +
                 " x1=" + FormatDouble(s.x1) + " y0=" + FormatDouble(s.y0) +
                 " y1=" + FormatDouble(s.y1);
        } else {
          return "A has no move";
        }
      },
      a);
}

std::string DescribeB(int user_type, double value, double gain) {
  return "B type " + std::to_string(user_type) + ": " +
         (user_type == 0 ? "p=" : "q=") + FormatDouble(value) + " (gain " +
         FormatDouble(gain) + ")";
}

// A's best value after one signal over its pure actions.
struct BestAction {
  SignalChoice choice;
  double value = -kInf;
};

BestAction BestPure(const Model& model, const BStrategy& b, int signal,
                    const std::vector<SignalChoice>& actions) {
  BestAction best{actions.front(),
                  model.SignalValue(b, signal, actions.front())};
  for (size_t k = 1; k < actions.size(); ++k) {
    const double v = model.SignalValue(b, signal, actions[k]);
    if (v > best.value) best = {actions[k], v};
  }
  return best;
}

void AGap(const Model& model, const BStrategy& b, const AStrategy& a, int n,
          GapReport& report) {
  const std::vector<SignalChoice> actions = model.PureActions(n);
  SignalChoice chosen[2];
  double gain_total = 0.0;
  bool improved = false;
  for (int s = 0; s < 2; ++s) {
    chosen[s] = model.ChoiceOf(a, s);
    const double current = model.SignalValue(b, s, chosen[s]);
    const BestAction best = BestPure(model, b, s, actions);
    const double gain = Gain(best.value, current);
    if (gain > kReportableGain) {
      chosen[s] = best.choice;
      improved = true;
    }
    gain_total += gain;
  }
  report.gap_a = gain_total;
  if (improved) {
    Profile dev;
    dev.a = model.Compose(chosen[0], chosen[1]);
    report.argmax_deviations.push_back(DescribeA(model.ToUser(dev).a) +
                                       " (gain " + FormatDouble(gain_total) +
                                       ")");
  }
}

GapReport PrivacyGap(const Model& model, const Profile& pr, double step) {
  GapReport r;
  r.grid_step = step;
  const PrivacyAwareGame& g = model.privacy();
  const GridArgmax best =
      PrivacyAwareGridArgmax(PrivacyAwareParams(g.prior, g.coupons, g.v), step);
  const ExtendedReal current = model.PrivacyUtility(pr.b);
  const double gain = Gain(best.utility.value(), current.value());
  r.gap_b0 = r.gap_b1 = gain;
  if (gain > kReportableGain) {
    const BStrategy user = model.flip() ? Relabel(best.b) : best.b;
    r.argmax_deviations.push_back("B plays p=" + FormatDouble(user.p) +
                                  " q=" + FormatDouble(user.q) + " (gain " +
                                  FormatDouble(gain) + ")");
  }
  return r;
}

GapReport AffineGap(const Model& model, const Profile& pr, double step) {
  const int n = GridCount(step);
  GapReport r;
  r.grid_step = step;
  AGap(model, pr.b, pr.a, n, r);
  const auto [cur0, cur1] = model.BUtilities(pr.b, pr.a);
  double gains[2] = {0.0, 0.0};
  double argmax[2] = {pr.b.p, pr.b.q};
  for (int i = 0; i <= n; ++i) {
    const double x = GridPoint(i, n);
    const double g0 =
        Gain(model.BUtilities(BStrategy(x, pr.b.q), pr.a).first, cur0);
    const double g1 =
        Gain(model.BUtilities(BStrategy(pr.b.p, x), pr.a).second, cur1);
    if (g0 > gains[0]) gains[0] = g0, argmax[0] = x;
    if (g1 > gains[1]) gains[1] = g1, argmax[1] = x;
  }
  for (int t = 0; t < 2; ++t) {
    if (gains[t] > kReportableGain) {
      r.argmax_deviations.push_back(
          DescribeB(model.UserType(t), argmax[t], gains[t]));
    }
  }
  r.gap_b0 = gains[0];
  r.gap_b1 = gains[1];
  if (model.flip()) std::swap(r.gap_b0, r.gap_b1);
  return r;
}

GapReport ContinuousGap(const Model& model, const Profile& pr, double step) {
  if (!pr.threshold) {
    throw Error(ErrorCode::kConfigError,
                "continuous-valuation profiles need a threshold");
  }
  const int n = GridCount(step);
  const double t = *pr.threshold;
  const BStrategy b = model.InducedB(t);
  const AStrategy& a = pr.a;
  if (!std::holds_alternative<GuessPolicy>(a)) {
    throw Error(ErrorCode::kConfigError,
                "A strategy does not match the game variant");
  }
  const GuessPolicy& guess = std::get<GuessPolicy>(a);
  GapReport r;
  r.grid_step = step;
  AGap(model, b, a, n, r);
  std::vector<double> thresholds;
  for (int i = 0; i <= 2 * n; ++i) thresholds.push_back(GridPoint(i, n));
  thresholds.push_back(guess.x + guess.y - 1.0);
  double gains[2] = {0.0, 0.0};
  double argmax[2] = {t, t};
  for (int type = 0; type < 2; ++type) {
    const double current = model.ThresholdUtility(type, t, guess);
    for (double s : thresholds) {
      const double g = Gain(model.ThresholdUtility(type, s, guess), current);
      if (g > gains[type]) gains[type] = g, argmax[type] = s;
    }
    if (gains[type] > kReportableGain) {
      r.argmax_deviations.push_back(
          "B type " + std::to_string(model.UserType(type)) +
          ": threshold=" + FormatDouble(argmax[type]) + " (gain " +
          FormatDouble(gains[type]) + ")");
    }
  }
  r.gap_b0 = gains[0];
  r.gap_b1 = gains[1];
  if (model.flip()) std::swap(r.gap_b0, r.gap_b1);
  return r;
}

struct Hit {
  int point;        // Index into the B grid.
  Profile profile;  // Canonical frame.
};

// Mixtures over the tied actions of one signal, on an n-cell grid.
std::vector<SignalChoice> TiedChoices(const std::vector<SignalChoice>& tied,
                                      int n) {
  if (tied.size() == 1) return tied;
  std::vector<SignalChoice> out;
  if (tied.size() == 2) {
    for (int i = 0; i <= n; ++i) {
      const double w = GridPoint(i, n);
      out.push_back({w * tied[0].first + (1.0 - w) * tied[1].first,
                     w * tied[0].second + (1.0 - w) * tied[1].second});
    }
    return out;
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double w0 = GridPoint(i, n), w1 = GridPoint(j, n);
      const double w2 = std::max(0.0, 1.0 - w0 - w1);
      out.push_back(
          {w0 * tied[0].first + w1 * tied[1].first + w2 * tied[2].first,
           w0 * tied[0].second + w1 * tied[1].second + w2 * tied[2].second});
    }
  }
  return out;
}

// A's (approximate) best responses to b after one signal.
std::vector<SignalChoice> BestResponses(
    const Model& model, const BStrategy& b, int signal,
    const std::vector<SignalChoice>& actions, int n, double tol,
    long long& evals) {
  std::vector<double> values(actions.size());
  double best = -kInf;
  for (size_t k = 0; k < actions.size(); ++k) {
    values[k] = model.SignalValue(b, signal, actions[k]);
    best = std::max(best, values[k]);
  }
  evals += static_cast<long long>(actions.size());
  if (model.kind() == kScoring) {
    const double mass = signal == 0 ? SignalMass0(model.prior(), b)
                                    : SignalMass1(model.prior(), b);
    if (mass == 0.0) return actions;
    for (size_t k = 0; k < actions.size(); ++k) {
      if (values[k] == best) return {actions[k]};
    }
    return {actions.front()};
  }
  std::vector<SignalChoice> tied;
  for (size_t k = 0; k < actions.size(); ++k) {
    if (values[k] >= best - tol) tied.push_back(actions[k]);
  }
  return TiedChoices(tied, n);
}

void ThrowBudget() {
  throw Error(ErrorCode::kBudgetExceeded,
              "enumeration exceeds " + std::to_string(kEnumerationBudget) +
                  " grid evaluations; use a coarser grid");
}

// Scans the B grid (or the threshold grid) and returns the hits of one chunk.
std::vector<Hit> ScanChunk(const Model& model, int begin, int end, int n,
                           double tol, std::atomic<long long>& budget_used,
                           std::atomic<bool>& exceeded) {
  std::vector<Hit> hits;
  const std::vector<SignalChoice> actions = model.PureActions(n);
  for (int point = begin; point < end && !exceeded.load(); ++point) {
    long long evals = 0;
    BStrategy b;
    double threshold = 0.0;
    if (model.kind() == kContinuous) {
      threshold = GridPoint(point, n);
      b = model.InducedB(threshold);
    } else {
      b = BStrategy(GridPoint(point / (n + 1), n),
                    GridPoint(point % (n + 1), n));
    }
    const auto r0 = BestResponses(model, b, 0, actions, n, tol, evals);
    const auto r1 = BestResponses(model, b, 1, actions, n, tol, evals);
    for (const SignalChoice& c0 : r0) {
      for (const SignalChoice& c1 : r1) {
        const AStrategy a = model.Compose(c0, c1);
        double g0, g1;
        if (model.kind() == kContinuous) {
          const GuessPolicy& guess = std::get<GuessPolicy>(a);
          const double best_t = guess.x + guess.y - 1.0;
          g0 = Gain(model.ThresholdUtility(0, best_t, guess),
                    model.ThresholdUtility(0, threshold, guess));
          g1 = Gain(model.ThresholdUtility(1, best_t, guess),
                    model.ThresholdUtility(1, threshold, guess));
          evals += 4;
        } else {
          const auto [u0, u1] = model.BUtilities(b, a);
          const double d0 =
              std::max(model.BUtilities(BStrategy(0.0, b.q), a).first,
                       model.BUtilities(BStrategy(1.0, b.q), a).first);
          const double d1 =
              std::max(model.BUtilities(BStrategy(b.p, 0.0), a).second,
                       model.BUtilities(BStrategy(b.p, 1.0), a).second);
          g0 = Gain(d0, u0);
          g1 = Gain(d1, u1);
          evals += 5;
        }
        if (g0 <= tol && g1 <= tol) {
          Profile pr{b, a, std::nullopt};
          if (model.kind() == kContinuous) pr.threshold = threshold;
          hits.push_back({point, pr});
        }
      }
    }
    if (budget_used.fetch_add(evals) + evals > kEnumerationBudget) {
      exceeded.store(true);
    }
  }
  return hits;
}

std::vector<Hit> ScanPrivacy(const Model& model, int n, double tol) {
  const long long points = static_cast<long long>(n + 1) * (n + 1);
  if (points > kEnumerationBudget) ThrowBudget();
  std::vector<double> values(points);
  ParallelChunks(
      static_cast<int>(points), WorkerCount(), [&](int begin, int end, int) {
        for (int k = begin; k < end; ++k) {
          values[k] = model
                          .PrivacyUtility(BStrategy(GridPoint(k / (n + 1), n),
                                                    GridPoint(k % (n + 1), n)))
                          .value();
        }
      });
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<Hit> hits;
  for (int k = 0; k < static_cast<int>(points); ++k) {
    if (values[k] >= best - tol) {
      hits.push_back({k, Profile{BStrategy(GridPoint(k / (n + 1), n),
                                           GridPoint(k % (n + 1), n)),
                                 std::monostate{}, std::nullopt}});
    }
  }
  return hits;
}

struct UnionFind {
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int Find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void Join(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

std::vector<EquilibriumComponent> Cluster(const Model& model,
                                          const std::vector<Hit>& hits, int n) {
  // Distinct grid points, in scan order.
  std::vector<int> points;
  for (const Hit& h : hits) {
    if (points.empty() || points.back() != h.point) points.push_back(h.point);
  }
  const int width = model.kind() == kContinuous ? 1 : n + 1;
  auto coords = [&](int point) {
    return model.kind() == kContinuous
               ? std::pair<int, int>{point, 0}
               : std::pair<int, int>{point / width, point % width};
  };
  UnionFind uf(static_cast<int>(points.size()));
  for (size_t i = 0; i < points.size(); ++i) {
    const auto [pi, qi] = coords(points[i]);
    for (size_t j = i + 1; j < points.size(); ++j) {
      const auto [pj, qj] = coords(points[j]);
      if (pj - pi > 1) break;
      if (std::abs(qj - qi) <= 1)
        uf.Join(static_cast<int>(i), static_cast<int>(j));
    }
  }
  std::vector<int> root_to_component(points.size(), -1);
  std::vector<EquilibriumComponent> components;
  std::vector<std::vector<BStrategy>> b_points;
  size_t h = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    const int root = uf.Find(static_cast<int>(i));
    if (root_to_component[root] < 0) {
      root_to_component[root] = static_cast<int>(components.size());
      components.emplace_back();
      b_points.emplace_back();
    }
    EquilibriumComponent& c = components[root_to_component[root]];
    bool first_of_point = true;
    for (; h < hits.size() && hits[h].point == points[i]; ++h) {
      const Profile user = model.ToUser(hits[h].profile);
      if (first_of_point) {
        b_points[root_to_component[root]].push_back(user.b);
        first_of_point = false;
      }
      c.members.push_back(user);
    }
  }
  for (size_t k = 0; k < components.size(); ++k) {
    EquilibriumComponent& c = components[k];
    c.p_min = c.q_min = kInf;
    c.p_max = c.q_max = -kInf;
    double sp = 0.0, sq = 0.0;
    for (const BStrategy& b : b_points[k]) {
      c.p_min = std::min(c.p_min, b.p);
      c.p_max = std::max(c.p_max, b.p);
      c.q_min = std::min(c.q_min, b.q);
      c.q_max = std::max(c.q_max, b.q);
      sp += b.p;
      sq += b.q;
    }
    sp /= static_cast<double>(b_points[k].size());
    sq /= static_cast<double>(b_points[k].size());
    double best = kInf;
    for (const Profile& m : c.members) {
      const double d = std::hypot(m.b.p - sp, m.b.q - sq);
      if (d < best) {
        best = d;
        c.representative = m;
      }
    }
  }
  return components;
}

}  // namespace

double GapReport::max_gap() const { return std::max({gap_a, gap_b0, gap_b1}); }

GapReport BestResponseGap(const GameSpec& game, const Profile& profile,
                          double grid_step) {
  GridCount(grid_step);
  const Model model(game);
  const Profile pr = model.ToCanonical(profile);
  switch (model.kind()) {
    case kPrivacy:
      return PrivacyGap(model, pr, grid_step);
    case kContinuous:
      return ContinuousGap(model, pr, grid_step);
    default:
      return AffineGap(model, pr, grid_step);
  }
}

std::vector<EquilibriumComponent> EnumerateEquilibria(const GameSpec& game,
                                                      double grid_step,
                                                      double tol) {
  if (!(grid_step >= 1e-3 - 1e-15)) {
    throw Error(ErrorCode::kInvalidRange,
                "enumeration grid step must be at least 1e-3");
  }
  if (!(tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidRange, "tolerance must be >= 0");
  }
  const int n = GridCount(grid_step);
  const Model model(game);
  std::vector<Hit> hits;
  if (model.kind() == kPrivacy) {
    hits = ScanPrivacy(model, n, tol);
  } else {
    const long long points = model.kind() == kContinuous
                                 ? 2LL * n + 1
                                 : static_cast<long long>(n + 1) * (n + 1);
    if (points > kEnumerationBudget) ThrowBudget();
    const int workers = WorkerCount();
    std::vector<std::vector<Hit>> parts(
        std::max(1, std::min<int>(workers, static_cast<int>(points))));
    std::atomic<long long> used{0};
    std::atomic<bool> exceeded{false};
    ParallelChunks(
        static_cast<int>(points), workers, [&](int begin, int end, int w) {
          parts[w] = ScanChunk(model, begin, end, n, tol, used, exceeded);
        });
    if (exceeded.load()) ThrowBudget();
    for (auto& part : parts) {
      hits.insert(hits.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
    }
  }
  return Cluster(model, hits, n);
}

std::vector<SurfaceRow> UtilitySurface(const GameSpec& game, int resolution) {
  if (resolution < 1) {
    throw Error(ErrorCode::kInvalidRange, "surface resolution must be >= 1");
  }
  const Model model(game);
  if (model.kind() == kContinuous) {
    throw Error(ErrorCode::kUnsupported,
                "the continuous-valuation game has threshold strategies; no "
                "(p, q) surface");
  }
  const int n = resolution;
  const std::vector<SignalChoice> actions = model.PureActions(1000);
  std::vector<SurfaceRow> rows(static_cast<size_t>(n + 1) * (n + 1));
  ParallelChunks(static_cast<int>(rows.size()), WorkerCount(),
                 [&](int begin, int end, int) {
                   for (int k = begin; k < end; ++k) {
                     SurfaceRow& row = rows[k];
                     row.p = GridPoint(k / (n + 1), n);
                     row.q = GridPoint(k % (n + 1), n);
                     const BStrategy user(row.p, row.q);
                     const BStrategy b = model.flip() ? Relabel(user) : user;
                     if (model.kind() == kPrivacy) {
                       row.u_b0 = row.u_b1 = model.PrivacyUtility(b);
                       row.u_a_best = 0.0;
                       continue;
                     }
                     const BestAction a0 = BestPure(model, b, 0, actions);
                     const BestAction a1 = BestPure(model, b, 1, actions);
                     const AStrategy a = model.Compose(a0.choice, a1.choice);
                     auto [u0, u1] = model.BUtilities(b, a);
                     if (model.flip()) std::swap(u0, u1);
                     row.u_b0 = u0;
                     row.u_b1 = u1;
                     row.u_a_best = a0.value + a1.value;
                   }
                 });
  return rows;
}

GridArgmax PrivacyAwareGridArgmax(const PrivacyAwareParams& params,
                                  double grid_step) {
  const int n = GridCount(grid_step);
  const int rows = n + 1;
  const int workers = std::max(1, std::min(WorkerCount(), rows));
  std::vector<GridArgmax> best(
      workers, GridArgmax{BStrategy(), ExtendedReal::NegativeInfinity()});
  std::vector<char> found(workers, 0);
  ParallelChunks(rows, workers, [&](int begin, int end, int w) {
    for (int i = begin; i < end; ++i) {
      for (int j = 0; j <= n; ++j) {
        const BStrategy b(GridPoint(i, n), GridPoint(j, n));
        const ExtendedReal u = PrivacyAwareUtility(params, b);
        if (!found[w] || u > best[w].utility) {
          best[w] = {b, u};
          found[w] = 1;
        }
      }
    }
  });
  GridArgmax out = best[0];
  for (int w = 1; w < workers; ++w) {
    if (found[w] && best[w].utility > out.utility) out = best[w];
  }
  return out;
}

int WorkerCount() {
  if (const char* env = std::getenv("COUPON_BNE_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace coupon_bne
