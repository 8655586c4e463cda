#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cesdp/agent.hpp"

using namespace cesdp;

namespace {

const ArtifactNetwork kLone(1, {});

Agent lone_agent(ObjectiveKind kind, EstimateType type, std::uint64_t seed) {
  Rng rng(seed);
  Agent a = init_agent(0, kLone, kind, 0.0, EstimationMethod::kFuture, rng);
  a.estimate_type = type;
  refresh_report(a, {});
  return a;
}

}  // namespace

TEST_CASE("estimate type assignment") {
  Rng net_rng(1);
  const auto net = generate_network(50, 2, 0.5, net_rng);
  Rng rng(2);
  for (NodeId i = 0; i < 50; ++i) {
    CHECK(init_agent(i, net, ObjectiveKind::kSphere, 0.9, EstimationMethod::kCurrentOnly, rng)
              .estimate_type == EstimateType::kCurrent);
    CHECK(init_agent(i, net, ObjectiveKind::kSphere, 1.0, EstimationMethod::kFuture, rng)
              .estimate_type == EstimateType::kFuture);
    CHECK(init_agent(i, net, ObjectiveKind::kSphere, 0.0, EstimationMethod::kFuture, rng)
              .estimate_type == EstimateType::kCurrent);
  }
}

TEST_CASE("future share concentrates at p_e") {
  Rng rng(3);
  int future = 0;
  for (int i = 0; i < 10000; ++i) {
    if (init_agent(0, kLone, ObjectiveKind::kLevy, 0.5, EstimationMethod::kFuture, rng)
            .estimate_type == EstimateType::kFuture)
      ++future;
  }
  CHECK(std::abs(future / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("initial design") {
  Rng net_rng(5);
  const auto net = generate_network(30, 2, 0.0, net_rng);
  Rng rng(6);
  for (ObjectiveKind k : kAllObjectives) {
    for (NodeId i = 0; i < 30; ++i) {
      const Agent a = init_agent(i, net, k, 0.5, EstimationMethod::kFuture, rng);
      CHECK(domain(k).contains(a.x_actual));
      CHECK(a.x_reported == a.x_actual);
      CHECK(std::vector<NodeId>(net.neighbors(i).begin(), net.neighbors(i).end()) == a.neighbors);
    }
  }
  CHECK(parse_estimation_method("current-only") == EstimationMethod::kCurrentOnly);
  CHECK(parse_estimation_method("future") == EstimationMethod::kFuture);
  CHECK_THROWS_AS(parse_estimation_method("past"), std::invalid_argument);
}

TEST_CASE("future agents report the new design") {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Agent a = lone_agent(ObjectiveKind::kAckley, EstimateType::kFuture, seed);
    a.neighbors = {1, 2};
    const std::vector<double> reports{3.0, -4.5};
    design_step(a, reports, AnnealParams{}, rng);
    CHECK(a.x_reported == a.x_actual);
  }
}

TEST_CASE("current agents report the cycle-start design") {
  Rng rng(9);
  for (ObjectiveKind k : kAllObjectives) {
    Agent a = lone_agent(k, EstimateType::kCurrent, 1);
    a.x_actual = 0.3;
    a.neighbors = {4};
    design_step(a, std::vector<double>{1.0}, AnnealParams{}, rng);
    CHECK(a.x_reported == 0.3);
    double previous = a.x_actual;
    for (int cycle = 0; cycle < 5; ++cycle) {
      design_step(a, std::vector<double>{1.0}, AnnealParams{}, rng);
      CHECK(a.x_reported == previous);
      previous = a.x_actual;
    }
  }
}

TEST_CASE("step keeps designs in range and reports recomputable") {
  Rng rng(10);
  for (ObjectiveKind k : kAllObjectives) {
    const Interval dom = domain(k);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Agent a = lone_agent(k, seed % 2 ? EstimateType::kFuture : EstimateType::kCurrent, seed);
      a.neighbors = {1, 2, 3};
      const std::vector<double> reports{rng.uniform(dom.lo, dom.hi), rng.uniform(dom.lo, dom.hi),
                                        rng.uniform(dom.lo, dom.hi)};
      const SliceObjective slice(k, reports);
      const double before = slice(a.x_actual);
      design_step(a, reports, AnnealParams{}, rng);
      CHECK(dom.contains(a.x_actual));
      CHECK(dom.contains(a.x_reported));
      std::vector<double> full{a.x_reported};
      full.insert(full.end(), reports.begin(), reports.end());
      CHECK(a.y_reported == evaluate(k, full));
      CHECK(slice(a.x_actual) <= before);
    }
  }
}

TEST_CASE("isolated sphere agent descends") {
  std::vector<double> ys;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Agent a = lone_agent(ObjectiveKind::kSphere, EstimateType::kFuture, seed);
    Rng rng(seed + 100000);
    for (int cycle = 0; cycle < 5; ++cycle) design_step(a, {}, AnnealParams{}, rng);
    ys.push_back(a.y_reported);
  }
  std::nth_element(ys.begin(), ys.begin() + 250, ys.end());
  CHECK(ys[250] < 0.01);
}

TEST_CASE("report size must match the neighbor list") {
  Agent a = lone_agent(ObjectiveKind::kSphere, EstimateType::kFuture, 0);
  a.neighbors = {1, 2};
  Rng rng(0);
  CHECK_THROWS_AS(design_step(a, std::vector<double>{1.0}, AnnealParams{}, rng),
                  std::invalid_argument);
}
