// Command-line front end: dimension computation, split-plan inspection,
// class-file generation, properness numbers, and the Monte Carlo runners.
//
// Exit codes: 0 success, 2 invalid configuration or input, 3 capped search
// exceeded its cap, 1 any other failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcpac/class_io.hpp"
#include "mcpac/constructions.hpp"
#include "mcpac/core.hpp"
#include "mcpac/dimensions.hpp"
#include "mcpac/experiments.hpp"
#include "mcpac/properness.hpp"
#include "mcpac/splitting.hpp"

namespace {

using nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json dimension_json(const mcpac::DimensionResult& result, const mcpac::LabelSpace& space) {
  ordered_json j;
  j["value"] = result.value;
  ordered_json witness;
  witness["points"] = result.witness.points;
  ordered_json anchors = ordered_json::array();
  for (mcpac::LabelId id : result.witness.anchors) anchors.push_back(space.name(id));
  witness["anchors"] = anchors;
  witness["family"] = result.witness.family;
  j["witness"] = witness;
  return j;
}

mcpac::ExperimentConfig load_config(const std::string& path, const std::string& overrides) {
  std::string base;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw mcpac::InvalidInputError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    base = ss.str();
  } else {
    base = mcpac::serialize_config(mcpac::ExperimentConfig{});
  }
  return mcpac::parse_config_text(base + "\n" + overrides);
}

ordered_json result_json(const mcpac::ExperimentResult& result) {
  ordered_json j;
  j["config"] = mcpac::serialize_config(result.config);
  ordered_json per_m = ordered_json::array();
  for (const mcpac::GridPointSummary& s : result.per_m) {
    ordered_json entry;
    entry["m"] = s.m;
    entry["majority_error_mean"] = s.majority_error.mean;
    entry["majority_error_median"] = s.majority_error.median;
    entry["prob_exceed_epsilon"] = s.majority_error.prob_exceed_epsilon;
    entry["list_error_mean"] = s.list_error.mean;
    entry["bottom_rate_mean"] = s.bottom_rate.mean;
    entry["c_hat"] = s.c_hat;
    per_m.push_back(entry);
  }
  j["per_m"] = per_m;
  return j;
}

void add_dims(CLI::App& app) {
  auto* sub = app.add_subcommand("dims", "Dimensions of an explicit class file");
  auto class_path = std::make_shared<std::string>();
  auto which = std::make_shared<std::string>("all");
  auto caps = std::make_shared<mcpac::DimensionCaps>();
  sub->add_option("--class", *class_path, "explicit class file")->required();
  sub->add_option("--which", *which, "vc | graph | ds | all")
      ->check(CLI::IsMember({"vc", "graph", "ds", "all"}));
  sub->add_option("--max-domain", caps->max_domain, "largest searchable domain");
  sub->add_option("--max-subset", caps->max_subset, "largest searchable subset size");
  sub->callback([class_path, which, caps] {
    auto cls = mcpac::read_class_file(*class_path);
    ordered_json out;
    if (*which == "graph" || *which == "all") {
      out["graph"] = dimension_json(mcpac::graph_dimension(*cls, *caps), *cls->space());
    }
    if (*which == "ds" || *which == "all") {
      out["ds"] = dimension_json(mcpac::ds_dimension(*cls, *caps), *cls->space());
    }
    if (*which == "vc" || (*which == "all" && cls->space()->size() == 2)) {
      out["vc"] = dimension_json(mcpac::vc_dimension(*cls, *caps), *cls->space());
    }
    std::cout << out.dump(2) << "\n";
  });
}

void add_split(CLI::App& app) {
  auto* sub = app.add_subcommand("split", "Print an index-splitting plan");
  auto scheme = std::make_shared<std::string>();
  auto m = std::make_shared<int>(0);
  auto rho = std::make_shared<double>(0.5);
  auto delta = std::make_shared<double>(0.01);
  auto seed = std::make_shared<std::uint64_t>(0);
  sub->add_option("--scheme", *scheme, "hanneke | bagging | three")
      ->required()
      ->check(CLI::IsMember({"hanneke", "bagging", "three"}));
  sub->add_option("--m", *m, "training sequence length")->required();
  sub->add_option("--rho", *rho, "bagging subsample fraction");
  sub->add_option("--delta", *delta, "bagging failure budget");
  sub->add_option("--seed", *seed, "bagging index stream seed");
  sub->callback([scheme, m, rho, delta, seed] {
    mcpac::SplitPlan plan;
    if (*scheme == "hanneke") {
      plan = mcpac::hanneke_split(*m);
    } else if (*scheme == "three") {
      plan = mcpac::three_split(*m);
    } else {
      mcpac::RandomSource rng(*seed, 0);
      plan = mcpac::bagging_split(*m, *rho, *delta, rng);
    }
    ordered_json out;
    out["scheme"] = plan.scheme;
    out["m"] = plan.m;
    out["count"] = plan.index_sequences.size();
    if (plan.scheme == "bagging") {
      out["rho"] = plan.rho;
      out["delta"] = plan.delta;
    }
    out["sequences"] = plan.index_sequences;
    std::cout << out.dump(2) << "\n";
  });
}

void add_make_class(CLI::App& app) {
  auto* sub = app.add_subcommand("make-class", "Write an explicit class file");
  auto family = std::make_shared<std::string>();
  auto d = std::make_shared<int>(1);
  auto domain = std::make_shared<int>(0);
  auto epsilon = std::make_shared<double>(0.0);
  auto out_path = std::make_shared<std::string>();
  auto max_members = std::make_shared<std::size_t>(0);
  sub->add_option("--family", *family, "cantor | witness | two-const")
      ->required()
      ->check(CLI::IsMember({"cantor", "witness", "two-const"}));
  sub->add_option("--d", *d, "budget (cantor) or domain size (witness)");
  sub->add_option("--domain-size", *domain, "domain size");
  sub->add_option("--epsilon", *epsilon, "sets the cantor domain size when --domain-size is absent");
  sub->add_option("--out", *out_path, "output file; stdout when absent");
  sub->add_option("--max-members", *max_members, "enumeration cap override");
  sub->callback([family, d, domain, epsilon, out_path, max_members] {
    std::shared_ptr<mcpac::ExplicitClass> cls;
    if (*family == "cantor") {
      int n = *domain;
      if (n == 0) {
        if (*epsilon <= 0.0) {
          throw mcpac::InvalidInputError("cantor needs --domain-size or --epsilon");
        }
        n = mcpac::cantor_instance(*d, *epsilon).params.domain_size;
      }
      cls = *max_members > 0 ? mcpac::cantor_explicit(*d, n, *max_members)
                             : mcpac::cantor_explicit(*d, n);
    } else if (*family == "witness") {
      cls = *max_members > 0 ? mcpac::properness_witness(*d, *max_members).cls
                             : mcpac::properness_witness(*d).cls;
    } else {
      if (*domain < 1) throw mcpac::InvalidInputError("two-const needs --domain-size");
      cls = mcpac::two_constant_class(*domain);
    }
    if (out_path->empty()) {
      mcpac::write_class(*cls, std::cout);
    } else {
      mcpac::write_class_file(*cls, *out_path);
    }
  });
}

void add_properness(CLI::App& app) {
  auto* sub = app.add_subcommand("properness", "Minimum cover of a function by a class");
  auto class_path = std::make_shared<std::string>();
  auto fn_path = std::make_shared<std::string>();
  sub->add_option("--class", *class_path, "explicit class file")->required();
  sub->add_option("--function", *fn_path, "class file with exactly one hypothesis")->required();
  sub->callback([class_path, fn_path] {
    auto cls = mcpac::read_class_file(*class_path);
    std::ifstream in(*fn_path);
    if (!in) throw mcpac::InvalidInputError("cannot open function file '" + *fn_path + "'");
    auto fn_cls = mcpac::read_class(in, cls->space());
    if (fn_cls->size() != 1) {
      throw mcpac::InvalidInputError("function file must hold exactly one hypothesis, got " +
                                     std::to_string(fn_cls->size()));
    }
    mcpac::PropernessResult result = mcpac::properness_exact(fn_cls->at(0), *cls);
    ordered_json out;
    if (result.value) {
      out["value"] = *result.value;
    } else {
      out["value"] = nullptr;
    }
    out["cover"] = result.cover;
    std::cout << out.dump(2) << "\n";
  });
}

struct RunFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string out;
  int d = 0;
  double epsilon = 0.0;
  int domain = 0;
  std::string learner;
  std::string splitter;
  std::string m_grid;
  int threads = 1;
};

std::shared_ptr<RunFlags> add_run_flags(CLI::App* sub, bool with_splitter) {
  auto flags = std::make_shared<RunFlags>();
  sub->add_option("--config", flags->config_path, "flat key=value config file");
  sub->add_option("--seed", flags->seed, "master seed");
  sub->add_option("--trials", flags->trials, "trials per grid point");
  sub->add_option("--out", flags->out, "report directory");
  sub->add_option("--d", flags->d, "family budget");
  sub->add_option("--epsilon", flags->epsilon, "target accuracy");
  sub->add_option("--domain-size", flags->domain, "domain size override");
  if (with_splitter) {
    sub->add_option("--learner", flags->learner, "erm | erm_bad")
        ->check(CLI::IsMember({"erm", "erm_bad"}));
    sub->add_option("--splitter", flags->splitter, "none | hanneke | bagging | three")
        ->check(CLI::IsMember({"none", "hanneke", "bagging", "three"}));
    sub->add_option("--m-grid", flags->m_grid, "comma-separated sample sizes");
  }
  sub->add_option("--threads", flags->threads, "worker threads");
  return flags;
}

mcpac::ExperimentConfig config_from_flags(const CLI::App* sub, const RunFlags& flags) {
  auto given = [sub](const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  std::string overrides;
  if (given("--seed")) overrides += "seed=" + std::to_string(flags.seed) + "\n";
  if (given("--trials")) overrides += "trials=" + std::to_string(flags.trials) + "\n";
  if (given("--out")) overrides += "out=" + flags.out + "\n";
  if (given("--d")) overrides += "d=" + std::to_string(flags.d) + "\n";
  if (given("--epsilon")) overrides += "epsilon=" + fmt_double(flags.epsilon) + "\n";
  if (given("--domain-size")) {
    overrides += "domain_size=" + std::to_string(flags.domain) + "\n";
  }
  if (given("--learner")) overrides += "learner=" + flags.learner + "\n";
  if (given("--splitter")) overrides += "splitter=" + flags.splitter + "\n";
  if (given("--m-grid")) overrides += "m_grid=" + flags.m_grid + "\n";
  return load_config(flags.config_path, overrides);
}

void add_coupon(CLI::App& app) {
  auto* sub = app.add_subcommand("coupon", "Draws-until-coverage statistics on the hard instance");
  auto flags = add_run_flags(sub, false);
  sub->callback([sub, flags] {
    mcpac::ExperimentConfig config = config_from_flags(sub, *flags);
    mcpac::CouponStats stats = mcpac::run_coupon(config);
    ordered_json out;
    out["domain_size"] = stats.domain_size;
    out["budget"] = stats.budget;
    out["trials"] = stats.trials;
    out["empirical_mean"] = stats.empirical_mean;
    out["empirical_variance"] = stats.empirical_variance;
    out["exact_mean"] = stats.exact_mean;
    out["mean_lower_bound"] = stats.mean_lower_bound;
    out["exact_variance"] = stats.exact_variance;
    out["variance_bound"] = stats.variance_bound;
    std::cout << out.dump(2) << "\n";
  });
}

void add_lower_bound(CLI::App& app) {
  auto* sub = app.add_subcommand("lower-bound", "Hard-instance failure probabilities over m");
  auto flags = add_run_flags(sub, true);
  sub->callback([sub, flags] {
    mcpac::ExperimentConfig config = config_from_flags(sub, *flags);
    mcpac::ExperimentResult result = mcpac::run_lower_bound(config, flags->threads);
    if (!result.config.out.empty()) mcpac::emit_report(result, result.config.out);
    ordered_json out = result_json(result);
    mcpac::LowerBoundThresholds th =
        mcpac::lower_bound_thresholds(config.d, config.epsilon, config.delta);
    out["thresholds"] = {{"majority_m", th.majority_m},
                         {"single_delta_m", th.single_delta_m},
                         {"single_log_m", th.single_log_m}};
    std::cout << out.dump(2) << "\n";
  });
}

void add_upper_bound(CLI::App& app) {
  auto* sub = app.add_subcommand("upper-bound", "Ensemble error decay over a doubling m-grid");
  auto flags = add_run_flags(sub, true);
  sub->callback([sub, flags] {
    mcpac::ExperimentConfig config = config_from_flags(sub, *flags);
    mcpac::ExperimentResult result = mcpac::run_upper_bound(config, flags->threads);
    if (!result.config.out.empty()) mcpac::emit_report(result, result.config.out);
    std::cout << result_json(result).dump(2) << "\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiclass PAC learning toolkit"};
  app.require_subcommand(1);
  add_dims(app);
  add_split(app);
  add_make_class(app);
  add_properness(app);
  add_coupon(app);
  add_lower_bound(app);
  add_upper_bound(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const mcpac::OverCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mcpac::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
