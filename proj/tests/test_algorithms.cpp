#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "l0lms/algorithms/attractor.hpp"
#include "l0lms/algorithms/filter.hpp"
#include "l0lms/error.hpp"

using namespace l0lms;
using namespace l0lms::algorithms;

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> randn(std::mt19937_64& g, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = nd(g);
  return v;
}

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("attractor examples") {
  const AlgoParams l0 = AlgoParams::l0(1e-3, 1e-4, 10.0);
  CHECK(attractor(Variant::l0lms, 0.0, l0) == 0.0);
  CHECK(attractor(Variant::l0lms, 0.05, l0) == approx(-10.0).epsilon(1e-15));
  CHECK(attractor(Variant::l0lms, 0.2, l0) == 0.0);
  CHECK(attractor(Variant::zalms, -3.7, AlgoParams::za(1e-3, 1.0)) == 1.0);
  CHECK(attractor(Variant::rzalms, 0.1, AlgoParams::rza(1e-3, 1.0, 10.0)) ==
        approx(-0.5).epsilon(1e-15));
}

TEST_CASE("plain LMS has no attractor") {
  CHECK_THROWS_WITH_AS(attractor(Variant::lms, 0.3, AlgoParams::lms(1e-3)),
                       "no attractor for plain LMS", PreconditionError);
}

TEST_CASE("attractors are odd and finite") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const AlgoParams p[] = {AlgoParams::l0(1e-3, 1e-4, 3.0), AlgoParams::za(1e-3, 1.0),
                          AlgoParams::rza(1e-3, 1.0, 7.0)};
  for (int i = 0; i < 2000; ++i) {
    const double t = u(g);
    for (const auto& q : p) {
      const double a = attractor(q.variant, t, q);
      CHECK(std::isfinite(a));
      CHECK(attractor(q.variant, -t, q) == -a);
    }
  }
}

TEST_CASE("l0 attractor pulls toward zero inside the range only") {
  const double alpha = 4.0;
  for (double t = -1.0; t <= 1.0; t += 1.0 / 512) {
    const double g = l0_attractor(t, alpha);
    if (std::abs(t) <= 1.0 / alpha) {
      CHECK(g * t <= 0.0);
    } else {
      CHECK(g == 0.0);
    }
  }
  // Continuous at the range boundary.
  CHECK(std::abs(l0_attractor(0.25, alpha)) < 1e-15);
}

TEST_CASE("synth_output examples") {
  const std::vector<double> zero(4, 0.0), x{1.0, -2.0, 3.0, 0.5};
  CHECK(synth_output(zero, x, 0.3) == approx(0.3));
  CHECK(synth_output(std::vector<double>{1, 0, 0}, std::vector<double>{2, 5, 7}, 0.0) == 2.0);
  CHECK(synth_output(std::vector<double>{1, -1}, std::vector<double>{0.5, 0.5}, 0.1) ==
        approx(0.1));
  CHECK_THROWS_AS(synth_output(zero, std::vector<double>{1.0}, 0.0), DimensionError);
}

TEST_CASE("step examples") {
  SUBCASE("zero regressor") {
    const auto r = step(FilterState::zeros(3), std::vector<double>(3, 0.0), 1.0, AlgoParams::lms(0.1));
    CHECK(r.error == 1.0);
    CHECK(r.state.w == std::vector<double>(3, 0.0));
    CHECK(r.state.n == 1);
  }
  SUBCASE("attractor-only update") {
    FilterState st{{0.05}, 0};
    const auto r = step(st, std::vector<double>{0.0}, 0.0, AlgoParams::l0(1e-3, 1e-4, 10.0));
    CHECK(r.error == 0.0);
    CHECK(r.state.w[0] == approx(0.049).epsilon(1e-14));
    CHECK(st.w[0] == 0.05);  // input untouched
  }
  SUBCASE("plain gradient step") {
    FilterState st{{0.5, -0.25}, 7};
    const std::vector<double> x{2.0, 4.0};
    const auto r = step(st, x, 1.0, AlgoParams::lms(0.01));
    // e = 1 - (1 - 1) = 1
    CHECK(r.error == approx(1.0));
    CHECK(r.state.w[0] == approx(0.52));
    CHECK(r.state.w[1] == approx(-0.21));
    CHECK(r.state.n == 8);
  }
}

TEST_CASE("step rejects bad input") {
  const auto p = AlgoParams::lms(0.01);
  CHECK_THROWS_AS(step(FilterState::zeros(2), std::vector<double>{1.0}, 0.0, p), DimensionError);
  CHECK_THROWS_AS(step(FilterState::zeros(1), std::vector<double>{NAN}, 0.0, p), NumericInputError);
  CHECK_THROWS_AS(step(FilterState::zeros(1), std::vector<double>{1.0}, INFINITY, p),
                  NumericInputError);
  CHECK_THROWS_AS(step(FilterState::zeros(1), std::vector<double>{1.0}, 0.0, AlgoParams::lms(0.0)),
                  PreconditionError);
  CHECK_THROWS_AS(step(FilterState::zeros(1), std::vector<double>{1.0}, 0.0,
                       AlgoParams::l0(0.01, -1.0, 1.0)),
                  PreconditionError);
}

TEST_CASE("zero attraction weight reproduces LMS bit for bit") {
  std::mt19937_64 g(3);
  const std::size_t L = 37;
  FilterState lms{randn(g, L, 0.2), 0};
  FilterState l0 = lms, za = lms, rza = lms;
  const auto pl = AlgoParams::lms(0.01);
  const auto p0 = AlgoParams::l0(0.01, 0.0, 5.0);
  const auto pz = AlgoParams::za(0.01, 0.0);
  const auto pr = AlgoParams::rza(0.01, 0.0, 3.0);
  for (int n = 0; n < 200; ++n) {
    const auto x = randn(g, L);
    const double d = randn(g, 1)[0];
    auto a = step(lms, x, d, pl);
    auto b = step(l0, x, d, p0);
    auto c = step(za, x, d, pz);
    auto e = step(rza, x, d, pr);
    CHECK(bit_equal(a.state.w, b.state.w));
    CHECK(bit_equal(a.state.w, c.state.w));
    CHECK(bit_equal(a.state.w, e.state.w));
    CHECK(a.error == b.error);
    lms = a.state;
    l0 = b.state;
    za = c.state;
    rza = e.state;
  }
}

TEST_CASE("fields of other variants are ignored") {
  std::mt19937_64 g(4);
  FilterState st{randn(g, 8, 0.1), 0};
  const auto x = randn(g, 8);
  AlgoParams a = AlgoParams::lms(0.02);
  AlgoParams b = a;
  b.kappa = 5.0;
  b.rho = 9.0;
  b.alpha = 123.0;
  b.epsilon = -1.0;  // invalid for rzalms, irrelevant for lms
  CHECK(bit_equal(step(st, x, 0.4, a).state.w, step(st, x, 0.4, b).state.w));
}

TEST_CASE("l0 update tends to the ZA update as alpha shrinks with 2 alpha kappa fixed") {
  std::mt19937_64 g(5);
  const std::size_t L = 16;
  const double rho = 1e-4;
  const auto w = randn(g, L, 0.3);
  const auto x = randn(g, L);
  const auto za = step({w, 0}, x, 0.2, AlgoParams::za(1e-3, rho)).state.w;
  double prev = INFINITY;
  for (double alpha : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double kappa = rho / (2.0 * alpha);
    const auto l0 = step({w, 0}, x, 0.2, AlgoParams::l0(1e-3, kappa, alpha)).state.w;
    double diff = 0.0;
    for (std::size_t k = 0; k < L; ++k) diff = std::max(diff, std::abs(l0[k] - za[k]));
    CHECK(diff < prev);
    prev = diff;
  }
  // The residual is 2 alpha^2 kappa |w| = rho alpha |w| per tap.
  double wmax = 0.0;
  for (double v : w) wmax = std::max(wmax, std::abs(v));
  CHECK(prev <= rho * 1e-4 * wmax * (1 + 1e-6) + 1e-15);
}

TEST_CASE("variant names round trip") {
  for (Variant v : {Variant::lms, Variant::l0lms, Variant::zalms, Variant::rzalms}) {
    CHECK(parse_variant(to_string(v)) == v);
  }
  CHECK(parse_variant("L0-LMS") == Variant::l0lms);
  CHECK_THROWS_AS(parse_variant("nlms"), PreconditionError);
}

TEST_CASE("sparse system bookkeeping") {
  const auto s = SparseSystem::from_coefficients({0.0, 1.5, 0.0, -2.0});
  CHECK(s.support == 2);
  CHECK(s.length() == 4);
  CHECK(s.energy() == approx(6.25));
}

}  // TEST_SUITE
