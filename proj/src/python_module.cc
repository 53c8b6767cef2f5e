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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "coupon_bne/case_sampling.h"
#include "coupon_bne/config.h"
#include "coupon_bne/errors.h"
#include "coupon_bne/game.h"
#include "coupon_bne/optout_game.h"
#include "coupon_bne/oracle.h"
#include "coupon_bne/privacy.h"
#include "coupon_bne/scoring.h"

namespace py = pybind11;
using nlohmann::json;

namespace coupon_bne {
namespace {

std::string SolveJson(const std::string& config) {
  const GameSpec game = GameSpecFromJson(json::parse(config));
  json doc = ReportToJson(Solve(game));
  doc["config"] = GameSpecToJson(game);
  return doc.dump();
}

std::string VerifyJson(const std::string& config, const std::string& profile,
                       double grid_step, double tol) {
  const GameSpec game = GameSpecFromJson(json::parse(config));
  const GapReport gaps =
      BestResponseGap(game, ProfileFromJson(json::parse(profile)), grid_step);
  return GapReportToJson(gaps, tol).dump();
}

std::string EnumerateJson(const std::string& config, double grid_step,
                          double tol) {
  const GameSpec game = GameSpecFromJson(json::parse(config));
  json out = json::array();
  for (const EquilibriumComponent& c :
       EnumerateEquilibria(game, grid_step, tol)) {
    out.push_back({{"size", c.members.size()},
                   {"p", {c.p_min, c.p_max}},
                   {"q", {c.q_min, c.q_max}},
                   {"representative", ProfileToJson(c.representative)}});
  }
  return out.dump();
}

std::string ClassifyOptOut(double d0, double m00, double m01, double m10,
                           double m11, double rho0, double rho1) {
  const OptOutGame game = std::get<OptOutGame>(Canonical(OptOutGame{
      Prior(d0), CouponValues(rho0, rho1), PaymentMatrix(m00, m01, m10, m11)}));
  return OptOutCaseName(
      ClassifyCase(game.prior, game.matrix, game.coupons).label);
}

}  // namespace
}  // namespace coupon_bne

PYBIND11_MODULE(_core, m) {
  using namespace coupon_bne;
  m.doc() = "Equilibrium solvers for coupon signaling games";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const json::exception& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def("solve_json", &SolveJson, py::call_guard<py::gil_scoped_release>(),
        py::arg("config"),
        "Solve a game given as a JSON config; returns the report as JSON.");
  m.def("verify_json", &VerifyJson, py::call_guard<py::gil_scoped_release>(),
        py::arg("config"), py::arg("profile"), py::arg("grid_step") = 1e-3,
        py::arg("tol") = 1e-4,
        "Best-response gaps of a profile; returns the gap report as JSON.");
  m.def("enumerate_json", &EnumerateJson,
        py::call_guard<py::gil_scoped_release>(), py::arg("config"),
        py::arg("grid_step"), py::arg("tol"),
        "Approximate equilibrium components on a grid, as JSON.");
  m.def(
      "dp_epsilon",
      [](double p, double q) { return DpEpsilon(BStrategy(p, q)).value(); },
      py::arg("p"), py::arg("q"));
  m.def(
      "x_game",
      [](double p, double q) { return XGame(BStrategy(p, q)).value(); },
      py::arg("p"), py::arg("q"));
  m.def(
      "expected_payment",
      [](const std::string& rule, double mu, double x) {
        return MakeRule(rule).ExpectedPayment(mu, x);
      },
      py::arg("rule"), py::arg("mu"), py::arg("x"));
  m.def(
      "two_player_z_star",
      [](double rho, double v, bool indifference) {
        return TwoPlayerZStar(
            rho, v,
            indifference ? ZStarReading::kIndifference : ZStarReading::kStated);
      },
      py::arg("rho"), py::arg("v"), py::arg("indifference") = false);
  m.def("classify_optout", &ClassifyOptOut, py::arg("d0"), py::arg("m00"),
        py::arg("m01"), py::arg("m10"), py::arg("m11"), py::arg("rho0"),
        py::arg("rho1"));
  m.def(
      "tally_cases",
      [](int samples, const std::string& sampler, std::uint64_t seed) {
        const CaseTally t = TallyCases(CasesSpec{samples, sampler}, seed);
        py::dict out;
        out["samples"] = t.samples;
        out["counts"] = t.counts;
        out["exclusivity_failures"] = t.exclusivity_failures;
        out["covering_failures"] = t.covering_failures;
        return out;
      },
      py::arg("samples"), py::arg("sampler") = "uniform", py::arg("seed") = 0);
}
