#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <random>

#include "l0lms/error.hpp"
#include "l0lms/theory/steady_state.hpp"
#include "l0lms/theory/za_lms.hpp"

using namespace l0lms;
using namespace l0lms::theory;

TEST_SUITE("za_lms") {

TEST_CASE("closed form matches the root route") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const std::size_t L = 10 + g() % 2000, Q = g() % L;
    const double px = 0.5 + u(g), pv = std::pow(10.0, -4 + 3 * u(g));
    const double mu = (0.02 + 0.9 * u(g)) * mu_max(L, px);
    const double rho = std::pow(10.0, -9 + 5 * u(g));
    const auto r = za_steady_msd(L, Q, mu, rho, px, pv);
    CHECK(r.d_inf_za == approx(r.d_inf_root).epsilon(1e-8));
    CHECK(r.gamma >= 0.0);
  }
}

TEST_CASE("zero weight is LMS") {
  const auto r = za_steady_msd(1000, 100, 8e-4, 0.0, 1.0, 0.01);
  CHECK(r.d_inf_za == approx(lms_steady_msd(1000, 8e-4, 1.0, 0.01)).epsilon(1e-12));
}

TEST_CASE("optimal weight at experiment 1") {
  const auto r = za_steady_msd(1000, 100, 8e-4, 1e-6, 1.0, 0.01);
  CHECK(r.rho_opt == approx(2.2767e-6).epsilon(1e-3));
  const auto best = za_steady_msd(1000, 100, 8e-4, r.rho_opt, 1.0, 0.01);
  CHECK(best.d_inf_za == approx(3.169e-3).epsilon(1e-3));
  CHECK(best.d_inf_za < lms_steady_msd(1000, 8e-4, 1.0, 0.01));
}

TEST_CASE("optimal weight minimizes the closed form") {
  for (std::size_t Q : {0u, 10u, 100u, 400u}) {
    const double rho = za_optimal_rho(1000, Q, 8e-4, 1.0, 0.01);
    const double best = za_steady_msd(1000, Q, 8e-4, rho, 1.0, 0.01).d_inf_za;
    for (int i = 0; i < 100; ++i) {
      const double r = rho * std::pow(10.0, -1.0 + 2.0 * i / 99.0);
      CHECK(best <= za_steady_msd(1000, Q, 8e-4, r, 1.0, 0.01).d_inf_za * (1 + 1e-6));
    }
  }
}

TEST_CASE("optimal weight settles as alpha shrinks") {
  const double a = za_optimal_rho(1000, 100, 8e-4, 1.0, 0.01, 1e-4);
  const double b = za_optimal_rho(1000, 100, 8e-4, 1.0, 0.01, 1e-5);
  const double c = za_optimal_rho(1000, 100, 8e-4, 1.0, 0.01, 1e-6);
  CHECK(std::abs(c - b) <= std::abs(b - a) + 1e-15);
  CHECK(c == approx(b).epsilon(1e-6));
}

TEST_CASE("l0-LMS theory tends to ZA-LMS for small alpha") {
  const double alpha = 1e-5, rho = 2e-6;
  SystemProfile p;
  p.length = 1000;
  p.support = 100;
  p.alpha = alpha;
  p.strengths = {4.0 * alpha * alpha * 100.0, 0.0};
  p.energy = 100.0;
  const auto signal = SignalModel::from_powers(1.0, 0.01);
  const double l0 =
      l0_steady_msd(p, algorithms::AlgoParams::l0(8e-4, rho / (2 * alpha), alpha), signal).d_inf;
  CHECK(l0 == approx(za_steady_msd(1000, 100, 8e-4, rho, 1.0, 0.01).d_inf_za).epsilon(1e-4));
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(za_steady_msd(1000, 100, 8e-4, -1.0, 1.0, 0.01), PreconditionError);
  CHECK_THROWS_AS(za_steady_msd(1000, 100, 3e-3, 1e-6, 1.0, 0.01), StabilityError);
}

}  // TEST_SUITE
