#include "cesdp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

namespace cesdp {

namespace {

// Grid order of the objectives.
const std::vector<ObjectiveKind> kTableObjectives = {
    ObjectiveKind::kAbsoluteSum, ObjectiveKind::kSphere, ObjectiveKind::kLevy,
    ObjectiveKind::kAckley};

std::vector<double> tenths() {
  std::vector<double> v;
  for (int i = 0; i <= 10; ++i) v.push_back(i / 10.0);
  return v;
}

template <typename T>
void require_levels(const std::vector<T>& levels, const char* field) {
  if (levels.empty()) throw ConfigError(field, "needs at least one level");
}

SystemConfig base_config(const SweepSpec& spec) {
  SystemConfig c;
  c.h = spec.h;
  c.d = spec.d;
  c.tau = spec.tau;
  c.rho = spec.rho;
  c.omega = spec.omega;
  c.n_inner = spec.n_inner;
  c.estimation_method = spec.estimation_method;
  return c;
}

SystemConfig combination_at(const SweepSpec& spec, std::size_t index) {
  SystemConfig c = base_config(spec);
  c.p_e = spec.p_e[index % spec.p_e.size()];
  index /= spec.p_e.size();
  c.epsilon = spec.epsilon[index % spec.epsilon.size()];
  index /= spec.epsilon.size();
  c.p_t = spec.p_t[index % spec.p_t.size()];
  index /= spec.p_t.size();
  c.n = spec.n[index % spec.n.size()];
  index /= spec.n.size();
  c.objective = spec.objectives.at(index);
  return c;
}

template <typename T>
T parse_number(std::string_view field, const char* name) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(std::string("malformed ") + name + " field '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// Drops a torn final row left by an interrupted writer. Returns whether the
// file held any bytes.
bool repair_tail(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return false;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat " + path.string() + ": " + ec.message());
  if (size == 0) return false;

  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content.back() == '\n') return true;
  const std::size_t keep = content.rfind('\n');
  const std::size_t new_size = keep == std::string::npos ? 0 : keep + 1;
  in.close();
  std::filesystem::resize_file(path, new_size, ec);
  if (ec) throw IoError("cannot truncate torn row in " + path.string() + ": " + ec.message());
  return new_size > 0;
}

}  // namespace

void SweepSpec::validate() const {
  require_levels(objectives, "objectives");
  require_levels(n, "n");
  require_levels(p_t, "p_t");
  require_levels(epsilon, "epsilon");
  require_levels(p_e, "p_e");
  if (replications < 1) throw ConfigError("replications", "must be at least 1");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("fraction", "must lie in (0, 1]");
  // Every level combination must form a valid execution.
  SystemConfig c = base_config(*this);
  for (std::size_t v : n) {
    c.n = v;
    c.validate();
  }
  for (double v : p_t) {
    c.p_t = v;
    c.validate();
  }
  for (double v : epsilon) {
    c.epsilon = v;
    c.validate();
  }
  for (double v : p_e) {
    c.p_e = v;
    c.validate();
  }
}

SweepSpec SweepSpec::table1() {
  SweepSpec s;
  s.objectives = kTableObjectives;
  s.n = {50, 100, 500, 1000};
  s.p_t = tenths();
  s.epsilon = {0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 10.0};
  s.p_e = tenths();
  s.replications = 100;
  return s;
}

SweepSpec SweepSpec::desk() {
  SweepSpec s;
  s.objectives = kTableObjectives;
  s.n = {50, 100, 500};
  s.p_t = {0.0, 0.5, 1.0};
  s.epsilon = {0.01, 1.0, 10.0};
  s.p_e = {0.0, 0.5, 1.0};
  s.replications = 20;
  return s;
}

std::size_t combination_count(const SweepSpec& spec) {
  return spec.objectives.size() * spec.n.size() * spec.p_t.size() * spec.epsilon.size() *
         spec.p_e.size();
}

std::vector<SystemConfig> enumerate_combinations(const SweepSpec& spec) {
  spec.validate();
  std::vector<SystemConfig> out;
  out.reserve(combination_count(spec));
  for (std::size_t i = 0, total = combination_count(spec); i < total; ++i) {
    out.push_back(combination_at(spec, i));
  }
  return out;
}

bool combination_selected(const SweepSpec& spec, std::size_t combo_index) {
  if (spec.fraction >= 1.0) return true;
  Rng rng = Rng::substream(spec.master_seed, StreamTag::kSubsample, combo_index);
  return rng.uniform01() < spec.fraction;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t combo_index,
                          std::size_t replication_index) {
  return hash_words({master_seed, combo_index, replication_index});
}

bool RunRecord::same_payload(const RunRecord& other) const {
  return combo_index == other.combo_index && replication_index == other.replication_index &&
         config == other.config && cycles == other.cycles && f_final == other.f_final &&
         converged == other.converged;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

std::string format_record(const RunRecord& r) {
  const SystemConfig& c = r.config;
  std::ostringstream os;
  os << r.combo_index << ',' << r.replication_index << ',' << to_string(c.objective) << ',' << c.n
     << ',' << format_double(c.p_t) << ',' << format_double(c.epsilon) << ','
     << format_double(c.p_e) << ',' << c.h << ',' << c.d << ',' << format_double(c.tau) << ','
     << format_double(c.rho) << ',' << c.omega << ',' << c.n_inner << ','
     << to_string(c.estimation_method) << ',' << c.seed << ',' << r.cycles << ','
     << format_double(r.f_final) << ',' << (r.converged ? "true" : "false") << ','
     << format_double(r.wall_time_ms);
  return os.str();
}

RunRecord parse_record(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split_fields(line);
  if (f.size() != 19) {
    throw std::invalid_argument("expected 19 fields, found " + std::to_string(f.size()));
  }
  RunRecord r;
  r.combo_index = parse_number<std::size_t>(f[0], "combo_index");
  r.replication_index = parse_number<std::size_t>(f[1], "replication_index");
  SystemConfig& c = r.config;
  c.objective = parse_objective(f[2]);
  c.n = parse_number<std::size_t>(f[3], "n");
  c.p_t = parse_number<double>(f[4], "p_t");
  c.epsilon = parse_number<double>(f[5], "epsilon");
  c.p_e = parse_number<double>(f[6], "p_e");
  c.h = parse_number<std::size_t>(f[7], "h");
  c.d = parse_number<std::size_t>(f[8], "d");
  c.tau = parse_number<double>(f[9], "tau");
  c.rho = parse_number<double>(f[10], "rho");
  c.omega = parse_number<std::size_t>(f[11], "omega");
  c.n_inner = parse_number<std::size_t>(f[12], "n_inner");
  c.estimation_method = parse_estimation_method(f[13]);
  c.seed = parse_number<std::uint64_t>(f[14], "seed");
  r.cycles = parse_number<std::size_t>(f[15], "N");
  r.f_final = parse_number<double>(f[16], "F_final");
  if (f[17] == "true") {
    r.converged = true;
  } else if (f[17] == "false") {
    r.converged = false;
  } else {
    throw std::invalid_argument("malformed converged field '" + std::string(f[17]) + "'");
  }
  r.wall_time_ms = parse_number<double>(f[18], "wall_time_ms");
  return r;
}

std::vector<RunRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordCsvHeader) throw IoError(path.string() + ": unexpected CSV header");
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_record(line));
  }
  return out;
}

RunRecord run_record(const SweepSpec& spec, std::size_t combo_index, std::size_t replication_index) {
  RunRecord r;
  r.combo_index = combo_index;
  r.replication_index = replication_index;
  r.config = combination_at(spec, combo_index);
  r.config.seed = derive_seed(spec.master_seed, combo_index, replication_index);

  const auto start = std::chrono::steady_clock::now();
  const ExecutionResult result = run_execution(r.config);
  r.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.cycles = result.cycles;
  r.f_final = result.f_final;
  r.converged = result.converged;
  return r;
}

SweepSummary run_sweep(const SweepSpec& spec, const std::filesystem::path& output_path,
                       const SweepOptions& options) {
  spec.validate();
  SweepSummary summary;

  std::set<std::pair<std::size_t, std::size_t>> present;
  const bool has_content = repair_tail(output_path);
  if (has_content) {
    for (const RunRecord& r : read_records(output_path)) {
      present.emplace(r.combo_index, r.replication_index);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> work;
  const std::size_t combos = combination_count(spec);
  for (std::size_t c = 0; c < combos; ++c) {
    if (!combination_selected(spec, c)) continue;
    for (std::size_t rep = 0; rep < spec.replications; ++rep) {
      ++summary.planned;
      if (present.contains({c, rep})) {
        ++summary.already_present;
      } else {
        work.emplace_back(c, rep);
      }
    }
  }
  if (options.max_new_records && work.size() > *options.max_new_records) {
    work.resize(*options.max_new_records);
  }

  std::ofstream out(output_path, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot open " + output_path.string() + " for writing");
  if (!has_content) {
    out << kRecordCsvHeader << '\n';
    out.flush();
    if (!out) throw IoError("write failed on " + output_path.string());
  }

  std::mutex mu;  // guards out, summary and the log
  std::atomic<std::size_t> next{0};
  bool io_failed = false;

  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= work.size()) return;
      const auto [combo, rep] = work[k];
      std::string row;
      std::string error;
      try {
        row = format_record(run_record(spec, combo, rep));
      } catch (const std::exception& e) {
        error = e.what();
      }
      std::lock_guard lock(mu);
      if (!error.empty()) {
        ++summary.failures;
        if (options.log) {
          *options.log << "execution failed: combo_index=" << combo << " replication_index=" << rep
                       << ": " << error << '\n';
        }
        continue;
      }
      if (io_failed) return;
      out << row << '\n';
      out.flush();
      if (!out) {
        io_failed = true;
        next.store(work.size());
        return;
      }
      ++summary.records_written;
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(options.parallelism, work.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (io_failed) {
    throw IoError("write failed on " + output_path.string() + " after " +
                  std::to_string(summary.records_written) +
                  " new records; rerun the same command to resume");
  }
  return summary;
}

}  // namespace cesdp
