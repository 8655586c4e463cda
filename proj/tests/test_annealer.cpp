#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <vector>

#include "cesdp/annealer.hpp"

using namespace cesdp;

namespace {

const Interval kSphere{-5.12, 5.12};

}  // namespace

TEST_CASE("temperature schedule") {
  const AnnealParams p;
  CHECK(visiting_temperature(p, 1) == doctest::Approx(0.1).epsilon(1e-15));
  for (std::size_t k = 1; k < 50; ++k) {
    const double direct = 0.1 * (std::pow(2.0, 1.62) - 1.0) / (std::pow(1.0 + k, 1.62) - 1.0);
    CHECK(visiting_temperature(p, k) == doctest::Approx(direct).epsilon(1e-13));
    CHECK(visiting_temperature(p, k + 1) < visiting_temperature(p, k));
  }
}

TEST_CASE("reflection stays inside the interval") {
  const Interval iv{-2.0, 3.0};
  CHECK(reflect_into(1.25, iv) == 1.25);
  CHECK(reflect_into(3.5, iv) == doctest::Approx(2.5));
  CHECK(reflect_into(-2.75, iv) == doctest::Approx(-1.25));
  CHECK(reflect_into(9.0, iv) == doctest::Approx(-1.0));
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double x = 1e6 * std::tan(3.14159 * (rng.uniform01() - 0.5));
    const double r = reflect_into(x, iv);
    REQUIRE(iv.contains(r));
  }
  CHECK(iv.contains(reflect_into(1e300, iv)));
  CHECK(iv.contains(reflect_into(-1e300, iv)));
}

TEST_CASE("constant objective") {
  Rng rng(4);
  const auto r = anneal([](double) { return 7.0; }, {-1.0, 1.0}, AnnealParams{}, rng);
  CHECK(r.f_best == 7.0);
  CHECK(r.x_best >= -1.0);
  CHECK(r.x_best <= 1.0);
  CHECK(r.evaluations == 50);
}

TEST_CASE("evaluation budget and best-ever bookkeeping") {
  for (std::size_t omega : {1u, 3u}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      std::vector<std::pair<double, double>> log;
      auto f = [&](double x) {
        const double v = std::sin(3 * x) + 0.1 * x * x;
        log.emplace_back(x, v);
        return v;
      };
      AnnealParams p;
      p.outer_iterations = omega;
      p.inner_evaluations = 40;
      Rng rng(seed);
      const auto r = anneal(f, kSphere, p, rng);
      CHECK(r.evaluations == omega * 40);
      REQUIRE(log.size() == 1 + omega * 40);
      double running = std::numeric_limits<double>::infinity();
      for (const auto& [x, v] : log) {
        REQUIRE(kSphere.contains(x));
        const double next = std::min(running, v);
        REQUIRE(next <= running);
        running = next;
      }
      CHECK(r.f_best == running);
      const auto hit = std::find_if(log.begin(), log.end(),
                                    [&](const auto& e) { return e.second == r.f_best; });
      CHECK(hit->first == r.x_best);
    }
  }
}

TEST_CASE("same seed, same result") {
  const auto f = [](double x) { return std::abs(x - 1.0); };
  Rng a(99), b(99);
  const auto ra = anneal(f, {-10, 10}, AnnealParams{}, a);
  const auto rb = anneal(f, {-10, 10}, AnnealParams{}, b);
  CHECK(ra.x_best == rb.x_best);
  CHECK(ra.f_best == rb.f_best);
}

TEST_CASE("sphere slice success rate") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const auto r = anneal([](double x) { return x * x; }, kSphere, AnnealParams{}, rng);
    if (std::abs(r.x_best) < 0.5) ++hits;
  }
  std::cout << "sphere slice |x_best| < 0.5 rate: " << hits / 1000.0 << '\n';
  // Recorded rate for this stream and step law is 0.944.
  CHECK(hits >= 940);
}

TEST_CASE("non-finite objective aborts") {
  Rng rng(2);
  CHECK_THROWS_AS(anneal([](double) { return std::nan(""); }, kSphere, AnnealParams{}, rng),
                  AnnealAbort);
  int calls = 0;
  auto f = [&](double) { return ++calls > 10 ? std::numeric_limits<double>::infinity() : 1.0; };
  CHECK_THROWS_AS(anneal(f, kSphere, AnnealParams{}, rng), AnnealAbort);
}

TEST_CASE("parameter validation") {
  Rng rng(0);
  const auto f = [](double x) { return x; };
  AnnealParams p;
  p.initial_temperature = 0.0;
  CHECK_THROWS_AS(anneal(f, kSphere, p, rng), std::invalid_argument);
  p = {};
  p.visiting = 1.0;
  CHECK_THROWS_AS(anneal(f, kSphere, p, rng), std::invalid_argument);
  p = {};
  p.outer_iterations = 0;
  CHECK_THROWS_AS(anneal(f, kSphere, p, rng), std::invalid_argument);
  p = {};
  p.inner_evaluations = 0;
  CHECK_THROWS_AS(anneal(f, kSphere, p, rng), std::invalid_argument);
}
