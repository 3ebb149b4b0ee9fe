#include <cmath>

#include "doctest.h"
#include "qcqp/labels.hpp"
#include "qcqp/relax.hpp"
#include "qcqp/rng.hpp"

using qcqp::Matrix;
using qcqp::QcqpInstance;
using qcqp::Vector;
using qcqp::conic::RelaxationResult;
using qcqp::conic::SolveStatus;
using namespace qcqp::labels;

namespace {

RelaxationResult make_result(SolveStatus status, double objective = 0.0) {
  RelaxationResult r;
  r.status = status;
  r.objective = objective;
  return r;
}

}  // namespace

TEST_SUITE("labels") {

TEST_CASE("relative difference for finite pairs") {
  CHECK(delta_from_values(-5.0, -5.0) == 0.0);
  CHECK(delta_from_values(-1.0, -2.0) == 1.0 / 3.0);
  CHECK(delta_from_values(-2.0, -1.0) == -1.0 / 3.0);
  CHECK(delta_from_values(0.0, 0.0) == 0.0);
  CHECK(delta_from_values(4e-13, -4e-13) == 0.0);
}

TEST_CASE("relative difference stays in the unit interval") {
  qcqp::RngStream rng(52, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const double z1 = rng.uniform(-100.0, 100.0);
    const double z2 = rng.uniform(-100.0, 100.0);
    const double d = delta_from_values(z1, z2);
    CHECK(d >= -1.0);
    CHECK(d <= 1.0);
    CHECK(delta_from_values(z2, z1) == -d);
    for (double alpha : {0.25, 2.0, 1024.0})
      CHECK(delta_from_values(alpha * z1, alpha * z2) == d);
    CHECK(delta_from_values(3.0 * z1, 3.0 * z2) ==
          doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("status handling") {
  const auto opt = [](double z) { return make_result(SolveStatus::Optimal, z); };
  const auto unb = make_result(SolveStatus::Unbounded);

  auto out = compute_delta(opt(-1.0), opt(-2.0));
  REQUIRE(out.delta.has_value());
  CHECK(*out.delta == 1.0 / 3.0);
  CHECK(out.drop_reason.empty());

  out = compute_delta(opt(-1.0), unb);
  CHECK(*out.delta == 1.0);
  out = compute_delta(unb, opt(-1.0));
  CHECK(*out.delta == -1.0);
  out = compute_delta(unb, unb);
  CHECK(*out.delta == 0.0);

  for (SolveStatus bad : {SolveStatus::Infeasible, SolveStatus::NumericalFailure,
                          SolveStatus::IterationLimit}) {
    out = compute_delta(make_result(bad), opt(0.0));
    CHECK_FALSE(out.delta.has_value());
    CHECK(out.drop_reason.find(qcqp::conic::status_name(bad)) != std::string::npos);
    CHECK(out.drop_reason.find("optimal") != std::string::npos);
    out = compute_delta(opt(0.0), make_result(bad));
    CHECK_FALSE(out.delta.has_value());
  }
}

TEST_CASE("unbounded lifted relaxation against a finite box bound") {
  // Minimize -x^2 over [0, 1] with one linear side constraint. The product
  // rows cap the lifted diagonal, so the cheap relaxation stays finite while
  // the semidefinite one has no upper bound on the diagonal entry.
  QcqpInstance inst;
  inst.n = 1;
  inst.m = 1;
  inst.instance_id = "unbounded_probe";
  inst.A = {Matrix::Constant(1, 1, -1.0), Matrix::Zero(1, 1)};
  inst.b = {Vector::Zero(1), Vector::Constant(1, 0.5)};
  inst.c = {0.0, -1.0};
  inst.l = Vector::Zero(1);
  inst.u = Vector::Constant(1, 1.0);
  inst.bounds_exist = true;
  inst.family_tags = {"probe", "probe"};

  const auto lp = qcqp::conic::solve(qcqp::relax::build_lp(inst));
  const auto sdp = qcqp::conic::solve(qcqp::relax::build_sdp(inst));
  REQUIRE(lp.status == SolveStatus::Optimal);
  CHECK(lp.objective == doctest::Approx(-1.0).epsilon(1e-6));
  REQUIRE(sdp.status == SolveStatus::Unbounded);

  const auto out = compute_delta(lp, sdp);
  REQUIRE(out.delta.has_value());
  CHECK(*out.delta == 1.0);
}

TEST_CASE("classification label") {
  CHECK(classify_label(0.2, 0.0) == 1);
  CHECK(classify_label(-0.05, 0.1) == 1);
  CHECK(classify_label(-0.5, 0.1) == 0);
  CHECK(classify_label(0.0, 0.0) == 0);   // strict inequality at the boundary
  CHECK(classify_label(-0.1, 0.1) == 0);
  double prev = 0.0;
  for (double d = -1.0; d <= 1.0; d += 0.05) {
    const double cur = classify_label(d, 0.1);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("classification metrics") {
  SUBCASE("perfect") {
    const auto m = metrics_classification({1, 0, 1}, {1, 0, 1});
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
  }
  SUBCASE("all wrong") {
    const auto m = metrics_classification({1, 0}, {0, 1});
    CHECK(m.accuracy == 0.0);
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
  }
  SUBCASE("hand worked mix") {
    const auto m = metrics_classification({1, 1, 0, 0}, {1, 0, 0, 0});
    CHECK(m.accuracy == 0.75);
    CHECK(m.precision == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(m.recall == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(11.0 / 15.0).epsilon(1e-12));
  }
  SUBCASE("single class present") {
    const auto m = metrics_classification({1, 1}, {1, 1});
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
  }
  SUBCASE("undefined ratios fall back to zero") {
    const auto m = metrics_classification({0, 0}, {1, 1});
    CHECK(m.accuracy == 0.0);
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(metrics_classification({1}, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(metrics_classification({}, {}), std::invalid_argument);
  }
}

TEST_CASE("regression metrics") {
  SUBCASE("hand worked four points") {
    const Vector y{{-0.05, 0.5, -0.5, 0.0}};
    const Vector yhat{{0.3, 0.5, 0.3, -0.2}};
    const auto m = metrics_regression(y, yhat, 0.1);
    CHECK(m.mae == doctest::Approx(0.3375).epsilon(1e-12));
    CHECK(m.mse == doctest::Approx(0.200625).epsilon(1e-12));
    CHECK(m.rmse == doctest::Approx(std::sqrt(0.200625)).epsilon(1e-12));
    CHECK(m.r2 == doctest::Approx(1.0 - 0.8025 / 0.501875).epsilon(1e-12));
    CHECK(m.r_accuracy == 0.5);
  }
  SUBCASE("sign conventions") {
    CHECK(metrics_regression(Vector{{-0.05}}, Vector{{0.3}}, 0.1).r_accuracy == 1.0);
    CHECK(metrics_regression(Vector{{-0.5}}, Vector{{0.3}}, 0.1).r_accuracy == 0.0);
    CHECK(metrics_regression(Vector{{-0.1}}, Vector{{0.3}}, 0.1).r_accuracy == 0.0);
    CHECK(metrics_regression(Vector{{0.0}}, Vector{{0.1}}, 0.1).r_accuracy == 1.0);
    CHECK(metrics_regression(Vector{{0.0}}, Vector{{0.0}}, 0.1).r_accuracy == 1.0);
    CHECK(metrics_regression(Vector{{0.0}}, Vector{{-0.1}}, 0.1).r_accuracy == 0.0);
    CHECK(metrics_regression(Vector{{-0.05}}, Vector{{-0.2}}, 0.1).r_accuracy == 1.0);
  }
  SUBCASE("perfect fit") {
    const Vector y{{0.2, -0.4, 0.9}};
    const auto m = metrics_regression(y, y, 0.1);
    CHECK(m.mae == 0.0);
    CHECK(m.mse == 0.0);
    CHECK(m.rmse == 0.0);
    CHECK(m.r2 == 1.0);
    CHECK(m.r_accuracy == 1.0);
  }
  SUBCASE("constant target") {
    CHECK(metrics_regression(Vector{{2.0, 2.0}}, Vector{{2.0, 2.0}}, 0.1).r2 == 1.0);
    CHECK(metrics_regression(Vector{{2.0, 2.0}}, Vector{{1.0, 3.0}}, 0.1).r2 == 0.0);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(metrics_regression(Vector{{1.0}}, Vector::Zero(2), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(metrics_regression(Vector(), Vector(), 0.1),
                    std::invalid_argument);
  }
}

}  // TEST_SUITE
