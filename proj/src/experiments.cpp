#include "mcpac/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace mcpac {

namespace {

// ---------------------------------------------------------------------------
// Config text format

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidInputError("config value for " + key + " is not an integer: '" + value + "'");
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    if (!value.empty() && value[0] != '-') {
      std::uint64_t v = std::stoull(value, &pos);
      if (pos == value.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw InvalidInputError("config value for " + key + " is not an unsigned integer: '" +
                          value + "'");
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidInputError("config value for " + key + " is not a number: '" + value + "'");
}

std::vector<int> parse_grid(const std::string& value, const std::string& key) {
  std::vector<int> grid;
  if (trim(value).empty()) return grid;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    grid.push_back(parse_int(trim(item), key));
  }
  return grid;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

FamilyKind parse_family(const std::string& value) {
  if (value == "cantor") return FamilyKind::CANTOR;
  if (value == "cantor_explicit") return FamilyKind::CANTOR_EXPLICIT;
  throw InvalidInputError("unknown family '" + value + "' (want cantor | cantor_explicit)");
}

LearnerKind parse_learner(const std::string& value) {
  if (value == "erm") return LearnerKind::ERM;
  if (value == "erm_bad") return LearnerKind::ERM_BAD;
  throw InvalidInputError("unknown learner '" + value + "' (want erm | erm_bad)");
}

SplitterKind parse_splitter(const std::string& value) {
  if (value == "none") return SplitterKind::NONE;
  if (value == "hanneke") return SplitterKind::HANNEKE;
  if (value == "bagging") return SplitterKind::BAGGING;
  if (value == "three") return SplitterKind::THREE;
  throw InvalidInputError("unknown splitter '" + value +
                          "' (want none | hanneke | bagging | three)");
}

TiePolicy parse_tie_policy(const std::string& value) {
  if (value == "idk") return TiePolicy::IDK;
  if (value == "first_voter") return TiePolicy::FIRST_VOTER;
  if (value == "label_order") return TiePolicy::LABEL_ORDER;
  throw InvalidInputError("unknown tie_policy '" + value +
                          "' (want idk | first_voter | label_order)");
}

std::string family_name(FamilyKind k) {
  return k == FamilyKind::CANTOR ? "cantor" : "cantor_explicit";
}

std::string learner_name(LearnerKind k) { return k == LearnerKind::ERM ? "erm" : "erm_bad"; }

std::string splitter_name(SplitterKind k) {
  switch (k) {
    case SplitterKind::NONE: return "none";
    case SplitterKind::HANNEKE: return "hanneke";
    case SplitterKind::BAGGING: return "bagging";
    case SplitterKind::THREE: return "three";
  }
  throw InvalidInputError("unknown splitter kind");
}

std::string tie_policy_name(TiePolicy p) {
  switch (p) {
    case TiePolicy::IDK: return "idk";
    case TiePolicy::FIRST_VOTER: return "first_voter";
    case TiePolicy::LABEL_ORDER: return "label_order";
  }
  throw InvalidInputError("unknown tie policy");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInputError("config line " + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "family") {
      config.family = parse_family(value);
    } else if (key == "d") {
      config.d = parse_int(value, key);
    } else if (key == "epsilon") {
      config.epsilon = parse_double(value, key);
    } else if (key == "domain_size") {
      config.domain_size = parse_int(value, key);
    } else if (key == "learner") {
      config.learner = parse_learner(value);
    } else if (key == "splitter") {
      config.splitter = parse_splitter(value);
    } else if (key == "rho") {
      config.rho = parse_double(value, key);
    } else if (key == "delta") {
      config.delta = parse_double(value, key);
    } else if (key == "bag_delta") {
      config.bag_delta = parse_double(value, key);
    } else if (key == "tie_policy") {
      config.tie_policy = parse_tie_policy(value);
    } else if (key == "m_grid") {
      config.m_grid = parse_grid(value, key);
    } else if (key == "trials") {
      config.trials = parse_int(value, key);
    } else if (key == "seed") {
      config.seed = parse_u64(value, key);
    } else if (key == "out") {
      config.out = value;
    } else {
      throw InvalidInputError("config line " + std::to_string(lineno) + ": unknown key '" +
                              key + "'");
    }
  }
  validate_config(config);
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "family=" << family_name(config.family) << '\n';
  out << "d=" << config.d << '\n';
  out << "epsilon=" << fmt_double(config.epsilon) << '\n';
  if (config.domain_size) out << "domain_size=" << *config.domain_size << '\n';
  out << "learner=" << learner_name(config.learner) << '\n';
  out << "splitter=" << splitter_name(config.splitter) << '\n';
  out << "rho=" << fmt_double(config.rho) << '\n';
  out << "delta=" << fmt_double(config.delta) << '\n';
  if (config.bag_delta) out << "bag_delta=" << fmt_double(*config.bag_delta) << '\n';
  out << "tie_policy=" << tie_policy_name(config.tie_policy) << '\n';
  out << "m_grid=";
  for (std::size_t i = 0; i < config.m_grid.size(); ++i) {
    if (i > 0) out << ',';
    out << config.m_grid[i];
  }
  out << '\n';
  out << "trials=" << config.trials << '\n';
  out << "seed=" << config.seed << '\n';
  out << "out=" << config.out << '\n';
  return out.str();
}

void validate_config(const ExperimentConfig& config) {
  if (config.d < 1) throw InvalidInputError("d must be >= 1");
  if (!(config.epsilon > 0.0) || config.epsilon >= 1.0) {
    throw InvalidInputError("epsilon must lie in (0, 1)");
  }
  if (config.domain_size && *config.domain_size < 1) {
    throw InvalidInputError("domain_size must be >= 1");
  }
  if (config.rho < 0.02 || config.rho > 1.0) {
    throw InvalidInputError("rho must lie in [0.02, 1]");
  }
  if (!(config.delta > 0.0) || config.delta >= 1.0) {
    throw InvalidInputError("delta must lie in (0, 1)");
  }
  if (config.bag_delta && (!(*config.bag_delta > 0.0) || *config.bag_delta >= 1.0)) {
    throw InvalidInputError("bag_delta must lie in (0, 1)");
  }
  for (std::size_t i = 0; i < config.m_grid.size(); ++i) {
    if (config.m_grid[i] < 0) throw InvalidInputError("m_grid entries must be >= 0");
    if (i > 0 && config.m_grid[i] <= config.m_grid[i - 1]) {
      throw InvalidInputError("m_grid must be strictly increasing");
    }
  }
  if (config.trials < 1) throw InvalidInputError("trials must be >= 1");
}

// ---------------------------------------------------------------------------
// Instances and trials

ExperimentInstance build_instance(const ExperimentConfig& config) {
  validate_config(config);
  CantorInstance ci = config.domain_size
                          ? cantor_instance_sized(config.d, *config.domain_size)
                          : cantor_instance(config.d, config.epsilon);
  if (config.family == FamilyKind::CANTOR) {
    Learner learner;
    if (config.learner == LearnerKind::ERM) {
      auto family = ci.family;
      learner.name = "erm_consistent";
      learner.proper = true;
      learner.fn = [family](const TrainingSequence& sample) {
        auto h = family->find_consistent(sample);
        if (!h) throw NoConsistentHypothesisError("no family member fits the sample");
        return *h;
      };
    } else {
      learner = make_bad_cantor_learner(ci.params, ci.space);
    }
    return ExperimentInstance{ci.space, ci.family, ci.target, ci.hard, std::move(learner)};
  }
  auto cls = cantor_explicit(config.d, ci.params.domain_size);
  Hypothesis target = cls->at(0);  // the all-star hypothesis comes first
  LabeledDistribution dist =
      LabeledDistribution::uniform_over(cls->domain_size(), target);
  Learner learner = config.learner == LearnerKind::ERM
                        ? make_erm_learner(cls)
                        : make_bad_cantor_learner(ci.params, cls->space());
  return ExperimentInstance{cls->space(), cls, std::move(target), std::move(dist),
                            std::move(learner)};
}

namespace {

SplitPlan make_plan(const ExperimentConfig& config, int m, RandomSource& rng) {
  switch (config.splitter) {
    case SplitterKind::NONE: return single_split(m);
    case SplitterKind::HANNEKE: return hanneke_split(m);
    case SplitterKind::THREE: return three_split(m);
    case SplitterKind::BAGGING:
      return bagging_split(m, config.rho, config.bag_delta.value_or(config.delta), rng);
  }
  throw InvalidInputError("unknown splitter kind");
}

}  // namespace

TrialRecord run_trial(const ExperimentInstance& instance, const ExperimentConfig& config,
                      int m, int trial_index) {
  if (m < 0) throw InvalidInputError("m must be >= 0");
  if (trial_index < 0) throw InvalidInputError("trial index must be >= 0");
  RandomSource rng = RandomSource(config.seed, static_cast<std::uint64_t>(m))
                         .fork(static_cast<std::uint64_t>(trial_index));
  TrainingSequence sample;
  sample.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) sample.push_back(instance.dist.sample(rng));
  SplitPlan plan = make_plan(config, m, rng);
  std::vector<TrainingSequence> subs = materialize(plan, sample);
  std::vector<Hypothesis> voters;
  voters.reserve(subs.size());
  for (const auto& sub : subs) voters.push_back(instance.learner.fn(sub));
  TrialRecord r;
  r.m = m;
  r.trial = trial_index;
  r.majority_error =
      majority_error_exact(*instance.space, voters, instance.dist, config.tie_policy);
  r.half_vote_error = half_vote_error_exact(voters, instance.dist);
  r.list_error = list_error_exact(voters, instance.dist);
  r.bottom_rate = bottom_rate_exact(*instance.space, voters, instance.dist);
  return r;
}

// ---------------------------------------------------------------------------
// Grid sweeps

namespace {

MetricAggregate aggregate(std::vector<double> values, double epsilon) {
  MetricAggregate a;
  double sum = 0.0;
  int exceed = 0;
  for (double v : values) {
    sum += v;
    if (v > epsilon) ++exceed;
  }
  std::size_t n = values.size();
  a.mean = sum / static_cast<double>(n);
  std::sort(values.begin(), values.end());
  a.median = (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  a.prob_exceed_epsilon = static_cast<double>(exceed) / static_cast<double>(n);
  return a;
}

void summarize(ExperimentResult& result) {
  const ExperimentConfig& config = result.config;
  std::size_t trials = static_cast<std::size_t>(config.trials);
  result.per_m.clear();
  for (std::size_t g = 0; g < config.m_grid.size(); ++g) {
    std::vector<double> maj, half, list, bottom;
    maj.reserve(trials);
    half.reserve(trials);
    list.reserve(trials);
    bottom.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      const TrialRecord& r = result.records[g * trials + t];
      maj.push_back(r.majority_error);
      half.push_back(r.half_vote_error);
      list.push_back(r.list_error);
      bottom.push_back(r.bottom_rate);
    }
    GridPointSummary s;
    s.m = config.m_grid[g];
    s.majority_error = aggregate(std::move(maj), config.epsilon);
    s.half_vote_error = aggregate(std::move(half), config.epsilon);
    s.list_error = aggregate(std::move(list), config.epsilon);
    s.bottom_rate = aggregate(std::move(bottom), config.epsilon);
    s.c_hat = s.majority_error.median * static_cast<double>(s.m) /
              static_cast<double>(config.d);
    result.per_m.push_back(s);
  }
}

}  // namespace

ExperimentResult run_grid(const ExperimentConfig& config, int threads) {
  validate_config(config);
  if (config.m_grid.empty()) throw InvalidInputError("m_grid must be nonempty");
  ExperimentInstance instance = build_instance(config);
  ExperimentResult result;
  result.config = config;
  std::size_t trials = static_cast<std::size_t>(config.trials);
  std::size_t total = config.m_grid.size() * trials;
  result.records.resize(total);
  auto work = [&](std::size_t slot) {
    int m = config.m_grid[slot / trials];
    int t = static_cast<int>(slot % trials);
    result.records[slot] = run_trial(instance, config, m, t);
  };
  if (threads <= 1 || total <= 1) {
    for (std::size_t slot = 0; slot < total; ++slot) work(slot);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    auto worker = [&] {
      while (true) {
        std::size_t slot = next.fetch_add(1);
        if (slot >= total) return;
        try {
          work(slot);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          next.store(total);
          return;
        }
      }
    };
    std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(threads), total);
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  summarize(result);
  return result;
}

LowerBoundThresholds lower_bound_thresholds(int d, double epsilon, double delta) {
  if (d < 1) throw InvalidInputError("thresholds need d >= 1");
  if (!(epsilon > 0.0) || epsilon >= 1.0) throw InvalidInputError("thresholds need epsilon in (0, 1)");
  if (!(delta > 0.0) || delta >= 1.0) throw InvalidInputError("thresholds need delta in (0, 1)");
  LowerBoundThresholds th;
  th.majority_m = static_cast<int>(std::floor(static_cast<double>(d) / (16.0 * epsilon)));
  th.single_delta_m = static_cast<int>(std::floor(std::log(1.0 / delta) / (8.0 * epsilon)));
  double inner = 1.0 / (8.0 * std::exp(std::sqrt(2.0)) * epsilon);
  th.single_log_m =
      static_cast<int>(std::floor(static_cast<double>(d) * std::log(inner) / (4.0 * epsilon)));
  return th;
}

ExperimentResult run_lower_bound(const ExperimentConfig& config, int threads) {
  ExperimentConfig c = config;
  if (c.m_grid.empty()) {
    LowerBoundThresholds th = lower_bound_thresholds(c.d, c.epsilon, c.delta);
    std::vector<int> grid = {th.majority_m, th.single_delta_m, th.single_log_m};
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    grid.erase(std::remove_if(grid.begin(), grid.end(), [](int m) { return m < 1; }),
               grid.end());
    if (grid.empty()) {
      throw InvalidInputError("no usable sample size: all thresholds are below 1");
    }
    c.m_grid = std::move(grid);
  }
  return run_grid(c, threads);
}

ExperimentResult run_upper_bound(const ExperimentConfig& config, int threads) {
  ExperimentConfig c = config;
  if (c.m_grid.empty()) {
    c.m_grid = {16 * c.d, 32 * c.d, 64 * c.d, 128 * c.d};
  }
  return run_grid(c, threads);
}

CouponStats run_coupon(const ExperimentConfig& config) {
  validate_config(config);
  CantorInstance ci = config.domain_size
                          ? cantor_instance_sized(config.d, *config.domain_size)
                          : cantor_instance(config.d, config.epsilon);
  CouponStats stats;
  stats.domain_size = ci.params.domain_size;
  stats.budget = ci.params.budget;
  stats.trials = config.trials;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < config.trials; ++t) {
    RandomSource rng = RandomSource(config.seed, 0).fork(static_cast<std::uint64_t>(t));
    auto draws = static_cast<double>(coupon_trial(stats.domain_size, stats.budget, rng));
    sum += draws;
    sum_sq += draws * draws;
  }
  double n = static_cast<double>(config.trials);
  stats.empirical_mean = sum / n;
  stats.empirical_variance =
      config.trials > 1 ? (sum_sq - sum * sum / n) / (n - 1.0) : 0.0;
  stats.exact_mean = coupon_exact_mean(stats.domain_size, stats.budget);
  stats.mean_lower_bound = coupon_mean_lower_bound(stats.domain_size, stats.budget);
  stats.exact_variance = coupon_exact_variance(stats.domain_size, stats.budget);
  stats.variance_bound = coupon_variance_bound(stats.domain_size, stats.budget);
  return stats;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

nlohmann::ordered_json metric_json(const MetricAggregate& a) {
  nlohmann::ordered_json j;
  j["mean"] = a.mean;
  j["median"] = a.median;
  j["prob_exceed_epsilon"] = a.prob_exceed_epsilon;
  return j;
}

}  // namespace

void emit_report(const ExperimentResult& result, const std::string& dir) {
  if (dir.empty()) throw IoError("report directory path is empty");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create report directory '" + dir + "': " + ec.message());
  }
  fs::path csv_path = fs::path(dir) / "records.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw IoError("cannot open " + csv_path.string() + " for writing");
  csv << "m,trial,metric,value\n";
  for (const TrialRecord& r : result.records) {
    csv << r.m << ',' << r.trial << ",majority_error," << fmt_double(r.majority_error) << '\n';
    csv << r.m << ',' << r.trial << ",half_vote_error," << fmt_double(r.half_vote_error) << '\n';
    csv << r.m << ',' << r.trial << ",list_error," << fmt_double(r.list_error) << '\n';
    csv << r.m << ',' << r.trial << ",bottom_rate," << fmt_double(r.bottom_rate) << '\n';
  }
  csv.flush();
  if (!csv) throw IoError("failed writing " + csv_path.string());

  nlohmann::ordered_json j;
  j["config"] = serialize_config(result.config);
  j["seed"] = result.config.seed;
  nlohmann::ordered_json per_m = nlohmann::ordered_json::array();
  for (const GridPointSummary& s : result.per_m) {
    nlohmann::ordered_json entry;
    entry["m"] = s.m;
    entry["majority_error"] = metric_json(s.majority_error);
    entry["half_vote_error"] = metric_json(s.half_vote_error);
    entry["list_error"] = metric_json(s.list_error);
    entry["bottom_rate"] = metric_json(s.bottom_rate);
    entry["c_hat"] = s.c_hat;
    per_m.push_back(entry);
  }
  j["per_m"] = per_m;
  fs::path json_path = fs::path(dir) / "summary.json";
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw IoError("cannot open " + json_path.string() + " for writing");
  js << j.dump(2) << '\n';
  js.flush();
  if (!js) throw IoError("failed writing " + json_path.string());
}

}  // namespace mcpac
