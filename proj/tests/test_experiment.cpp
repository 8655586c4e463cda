#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

#include "cesdp/experiment.hpp"
#include "cesdp/json_io.hpp"

using namespace cesdp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cesdp_test_" + std::to_string(Rng(std::random_device{}()).next_u64()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// 6 combinations: two objectives x three thresholds.
SweepSpec small_spec() {
  SweepSpec s;
  s.objectives = {ObjectiveKind::kSphere, ObjectiveKind::kLevy};
  s.n = {30};
  s.p_t = {0.5};
  s.epsilon = {0.05, 0.5, 5.0};
  s.p_e = {0.5};
  s.replications = 5;
  s.master_seed = 12;
  return s;
}

std::vector<RunRecord> sorted(std::vector<RunRecord> v) {
  std::sort(v.begin(), v.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::pair(a.combo_index, a.replication_index) < std::pair(b.combo_index, b.replication_index);
  });
  return v;
}

void check_same(const std::vector<RunRecord>& a, const std::vector<RunRecord>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].same_payload(b[i]));
}

void check_unique_pairs(const std::vector<RunRecord>& rs) {
  std::set<std::pair<std::size_t, std::size_t>> keys;
  for (const auto& r : rs) keys.emplace(r.combo_index, r.replication_index);
  CHECK(keys.size() == rs.size());
}

}  // namespace

TEST_CASE("grid cardinality") {
  const SweepSpec full = SweepSpec::table1();
  CHECK(combination_count(full) == 13552);
  CHECK(combination_count(full) * full.replications == 1355200);
  CHECK(enumerate_combinations(full).size() == 13552);
  const SweepSpec desk = SweepSpec::desk();
  CHECK(combination_count(desk) * desk.replications == 6480);

  SweepSpec one = small_spec();
  one.objectives = {ObjectiveKind::kAckley};
  one.epsilon = {0.1};
  CHECK(combination_count(one) == 1);
  SweepSpec product = one;
  product.n = {50, 100};
  product.epsilon = {0.01, 0.1, 1.0};
  CHECK(combination_count(product) == 6);
}

TEST_CASE("lexicographic enumeration") {
  SweepSpec s = small_spec();
  s.n = {50, 100};
  s.p_e = {0.0, 1.0};
  const auto combos = enumerate_combinations(s);
  REQUIRE(combos.size() == 24);
  CHECK(combos[0].objective == ObjectiveKind::kSphere);
  CHECK(combos[0].n == 50);
  CHECK(combos[0].epsilon == 0.05);
  CHECK(combos[0].p_e == 0.0);
  CHECK(combos[1].p_e == 1.0);
  CHECK(combos[2].epsilon == 0.5);
  CHECK(combos[6].n == 100);
  CHECK(combos[12].objective == ObjectiveKind::kLevy);
  CHECK(combos[23].n == 100);
  CHECK(combos[23].epsilon == 5.0);
  for (const auto& c : combos) CHECK_NOTHROW(c.validate());

  const auto table = enumerate_combinations(SweepSpec::table1());
  CHECK(table.front().objective == ObjectiveKind::kAbsoluteSum);
  CHECK(table.back().objective == ObjectiveKind::kAckley);
  CHECK(table.back().n == 1000);
  CHECK(table.back().p_e == 1.0);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(5, 10, 3) == derive_seed(5, 10, 3));
  CHECK(derive_seed(5, 10, 3) != derive_seed(5, 3, 10));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1 << 21);
  for (std::size_t c = 0; c < 10000; ++c)
    for (std::size_t r = 0; r < 100; ++r) seen.insert(derive_seed(0, c, r));
  CHECK(seen.size() == 1000000);
}

TEST_CASE("fractional subsampling is deterministic") {
  SweepSpec s = SweepSpec::table1();
  s.fraction = 0.1;
  std::size_t kept = 0;
  for (std::size_t c = 0; c < 13552; ++c) {
    const bool a = combination_selected(s, c);
    CHECK(a == combination_selected(s, c));
    kept += a;
  }
  CHECK(kept > 1200);
  CHECK(kept < 1500);
  s.fraction = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("csv header and records round-trip") {
  CHECK(std::string(kRecordCsvHeader) ==
        "combo_index,replication_index,objective,n,p_t,epsilon,p_e,h,d,tau,rho,omega,n_inner,"
        "estimation_method,seed,N,F_final,converged,wall_time_ms");
  Rng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    RunRecord r;
    r.combo_index = rng.below(20000);
    r.replication_index = rng.below(100);
    r.config.objective = kAllObjectives[rng.below(4)];
    r.config.n = 3 + rng.below(2000);
    r.config.p_t = rng.uniform01();
    r.config.epsilon = std::ldexp(rng.uniform01(), -static_cast<int>(rng.below(30)));
    r.config.p_e = rng.uniform01();
    r.config.estimation_method = rng.bernoulli(0.5) ? EstimationMethod::kFuture : EstimationMethod::kCurrentOnly;
    r.config.seed = rng.next_u64();
    r.cycles = 4 + rng.below(97);
    r.f_final = rng.uniform(0, 1e6);
    r.converged = rng.bernoulli(0.5);
    r.wall_time_ms = rng.uniform(0, 1000);
    const RunRecord back = parse_record(format_record(r));
    REQUIRE(back.same_payload(r));
    REQUIRE(back.wall_time_ms == r.wall_time_ms);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK_THROWS_AS(parse_record("1,2,3"), std::invalid_argument);
}

TEST_CASE("records match direct executions") {
  const SweepSpec s = small_spec();
  const RunRecord r = run_record(s, 4, 2);
  SystemConfig c = enumerate_combinations(s)[4];
  c.seed = derive_seed(s.master_seed, 4, 2);
  CHECK(r.config == c);
  const auto direct = run_execution(c);
  CHECK(r.cycles == direct.cycles);
  CHECK(r.f_final == direct.f_final);
  CHECK(r.converged == direct.converged);
}

TEST_CASE("sweep output is independent of parallelism") {
  TempDir dir;
  const SweepSpec s = small_spec();
  const auto sum1 = run_sweep(s, dir.path / "p1.csv", {.parallelism = 1});
  const auto sum16 = run_sweep(s, dir.path / "p16.csv", {.parallelism = 16});
  CHECK(sum1.planned == 30);
  CHECK(sum1.records_written == 30);
  CHECK(sum16.records_written == 30);
  CHECK(sum1.failures == 0);
  const auto a = sorted(read_records(dir.path / "p1.csv"));
  const auto b = sorted(read_records(dir.path / "p16.csv"));
  CHECK(a.size() == 30);
  check_unique_pairs(a);
  check_same(a, b);
  for (const auto& r : a) {
    CHECK(r.cycles >= 4);
    CHECK(r.cycles <= r.config.d);
    if (!r.converged) CHECK(r.cycles == r.config.d);
  }
  std::ifstream in(dir.path / "p1.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == kRecordCsvHeader);
}

TEST_CASE("interrupted sweeps resume without duplicates") {
  TempDir dir;
  const SweepSpec s = small_spec();
  run_sweep(s, dir.path / "ref.csv", {.parallelism = 4});
  const auto reference = sorted(read_records(dir.path / "ref.csv"));

  const fs::path out = dir.path / "resume.csv";
  const auto first = run_sweep(s, out, {.parallelism = 3, .max_new_records = 12});
  CHECK(first.records_written == 12);
  CHECK(read_records(out).size() == 12);

  // Simulate a writer killed mid-row.
  {
    std::ofstream app(out, std::ios::app);
    app << "3,4,sphere,30,0.5";
  }
  const auto second = run_sweep(s, out, {.parallelism = 3});
  CHECK(second.already_present == 12);
  CHECK(second.records_written == 18);
  const auto merged = sorted(read_records(out));
  check_unique_pairs(merged);
  check_same(merged, reference);

  const auto third = run_sweep(s, out, {.parallelism = 2});
  CHECK(third.records_written == 0);
  CHECK(third.already_present == 30);
}

TEST_CASE("unwritable output raises IoError") {
  CHECK_THROWS_AS(run_sweep(small_spec(), "/nonexistent_dir/x/out.csv"), IoError);
}

TEST_CASE("sweep spec json") {
  const SweepSpec s = small_spec();
  const SweepSpec back = sweep_spec_from_json(to_json(s));
  CHECK(to_json(back) == to_json(s));
  CHECK(combination_count(back) == 6);
  CHECK_THROWS_AS(sweep_spec_from_json(Json::parse(R"({"bogus": 1})")), ConfigError);
  CHECK_THROWS_AS(sweep_spec_from_json(Json::parse(R"({"n": 5})")), ConfigError);
  CHECK_THROWS_AS(sweep_spec_from_json(Json::parse(R"({"objectives": ["cubic"]})")), ConfigError);
}
