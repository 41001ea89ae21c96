// Command-line laboratory for softmax policy gradient with linear features:
// certify instances, run the exact and sampled optimizers, reproduce the
// worked experiments, and sweep configurations.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "linspg/diagnostics.hpp"
#include "linspg/exact.hpp"
#include "linspg/instances.hpp"
#include "linspg/parallel.hpp"
#include "linspg/stochastic.hpp"

namespace fs = std::filesystem;
using namespace linspg;

namespace {

struct InstanceSource {
  std::string registry_id;
  std::string file_path;
};

ProblemInstance resolve_instance(const InstanceSource& src) {
  const bool has_reg = !src.registry_id.empty();
  const bool has_file = !src.file_path.empty();
  if (has_reg == has_file)
    throw CLI::ValidationError("instance", "need exactly one of --registry or --file");
  if (has_reg) return registry_entry(src.registry_id).instance;
  std::ifstream f(src.file_path);
  if (!f) throw CLI::ValidationError("instance", "cannot read " + src.file_path);
  std::stringstream buf;
  buf << f.rdbuf();
  return ProblemInstance::from_json(buf.str());
}

fs::path ensure_out_dir(std::string flag_value) {
  if (flag_value.empty()) {
    if (const char* env = std::getenv("LINSPG_OUT")) flag_value = env;
  }
  if (flag_value.empty()) flag_value = ".";
  fs::path dir(flag_value);
  fs::create_directories(dir);
  return dir;
}

Vector parse_vector(const std::string& text, Eigen::Index want) {
  if (text.empty()) return Vector::Zero(want);
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  if (static_cast<Eigen::Index>(vals.size()) != want)
    throw CLI::ValidationError("theta", "expected " + std::to_string(want) + " entries");
  Vector v(want);
  for (Eigen::Index i = 0; i < want; ++i) v(i) = vals[static_cast<std::size_t>(i)];
  return v;
}

LearningRate make_rate(double eta, double eta_frac) {
  if (eta > 0.0) return LearningRate::explicit_rate(eta);
  return LearningRate::bound_fraction(eta_frac);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

std::optional<NoiseFamily> parse_noise_flag(const std::string& name, double sigma,
                                            double concentration) {
  if (name.empty() || name == "none") return std::nullopt;
  return NoiseFamily::parse(name, sigma, concentration);
}

void print_report(const ConditionReport& rep) {
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  std::cout << "Assumption 1 (unique rewards):      " << verdict(rep.assumption1) << '\n';
  std::cout << "Assumption 2 (ordering witness):    " << verdict(rep.ordering_witness.feasible)
            << "  margin=" << rep.ordering_witness.margin;
  if (rep.ordering_witness.feasible) {
    std::cout << "  w=[";
    for (Eigen::Index i = 0; i < rep.ordering_witness.w.size(); ++i)
      std::cout << (i ? "," : "") << rep.ordering_witness.w(i);
    std::cout << ']';
  }
  std::cout << '\n';
  if (rep.k3_condition_value)
    std::cout << "Assumption 3 (three-arm value):     " << *rep.k3_condition_value << " ("
              << verdict(*rep.k3_condition_value > 0) << ")\n";
  std::cout << "Assumption 4 (feature triples):     " << verdict(rep.assumption4.holds);
  if (rep.assumption4.violation)
    std::cout << "  first violation at actions (" << (*rep.assumption4.violation)[0] << ","
              << (*rep.assumption4.violation)[1] << "," << (*rep.assumption4.violation)[2]
              << ") value=" << rep.assumption4.violation_value;
  std::cout << '\n';
  std::cout << "eps_approx = " << rep.eps_approx << '\n';
  const auto& c = rep.constants;
  std::cout << "lambda_min=" << c.lambda_min << " lambda_max=" << c.lambda_max
            << " kappa=" << c.kappa << " delta=" << c.delta << " r_max=" << c.r_max << '\n';
  std::cout << "smoothness_L=" << c.smoothness_L << " sgc_rho=" << c.sgc_rho << '\n';
  std::cout << "eta_exact_bound=" << c.eta_exact_bound
            << " eta_stochastic_bound=" << c.eta_stochastic_bound << '\n';
}

nlohmann::json run_summary(const Trajectory& traj) {
  nlohmann::json j;
  j["final_expected_reward"] = traj.final_expected_reward();
  j["final_suboptimality"] = traj.final_suboptimality();
  j["optimal_reward"] = traj.optimal_reward;
  j["learning_rate"] = traj.learning_rate;
  j["steps"] = traj.step_rewards.size() - 1;
  j["aborted"] = traj.aborted;
  if (traj.aborted) j["abort_reason"] = traj.abort_reason;
  Eigen::Index argmax = 0;
  traj.final_state.policy.maxCoeff(&argmax);
  j["final_argmax"] = argmax;
  j["final_pi_max"] = traj.final_state.policy.maxCoeff();
  return j;
}

// --------------------------------------------------------------------------
// reproduce scenarios

int reproduce_fig1(const fs::path& out) {
  nlohmann::json summary;
  for (const char* id : {"example-1", "example-2"}) {
    ExactRunConfig cfg;
    cfg.theta_init = (Vector(2) << 3, 3).finished();
    cfg.rate = LearningRate::explicit_rate(0.2);
    cfg.horizon = 10000;
    cfg.record_stride = 10;
    const auto traj = run_exact(registry_entry(id).instance, cfg);
    write_trajectory_csv(traj, (out / (std::string(id) + "-trajectory.csv")).string());
    summary[id] = run_summary(traj);
  }
  const double r1 = summary["example-1"]["final_expected_reward"].get<double>();
  const double r2 = summary["example-2"]["final_expected_reward"].get<double>();
  const bool pass = r1 >= 8.9 && r2 >= 7.9 && r2 <= 8.05;
  summary["pass"] = pass;
  summary["thresholds"] = {{"example-1", ">= 8.9"}, {"example-2", "[7.9, 8.05]"}};
  write_file(out / "fig1-summary.json", summary.dump(2));
  std::cout << "fig1: example-1 -> " << r1 << ", example-2 -> " << r2 << " => "
            << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? 0 : 1;
}

int reproduce_fig2(const fs::path& out, std::int64_t horizon) {
  nlohmann::json summary;

  ExactRunConfig ok_cfg;
  ok_cfg.theta_init = Vector::Zero(2);
  ok_cfg.rate = LearningRate::bound_fraction(0.9);
  ok_cfg.horizon = horizon;
  ok_cfg.record_stride = std::max<std::int64_t>(1, horizon / 1000);
  const auto good = run_exact(registry_entry("example-3").instance, ok_cfg);
  write_trajectory_csv(good, (out / "example-3-trajectory.csv").string());
  summary["example-3"] = run_summary(good);

  const auto trap =
      run_ordering_counterexample(horizon, std::max<std::int64_t>(1, horizon / 1000));
  write_trajectory_csv(trap.trajectory, (out / "example-4-trajectory.csv").string());
  summary["example-4"] = run_summary(trap.trajectory);
  summary["example-4"]["zeta"] = trap.zeta;
  summary["example-4"]["final_pi_best"] = trap.trajectory.final_state.policy(0);

  const bool pass =
      good.final_suboptimality() < 0.01 && trap.trajectory.final_state.policy(0) < 0.5;
  summary["pass"] = pass;
  write_file(out / "fig2-summary.json", summary.dump(2));
  std::cout << "fig2: aligned gap=" << good.final_suboptimality()
            << ", trapped pi(best)=" << trap.trajectory.final_state.policy(0) << " => "
            << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? 0 : 1;
}

int reproduce_prop2(const fs::path& out, std::int64_t horizon) {
  const auto run =
      run_ordering_counterexample(horizon, std::max<std::int64_t>(1, horizon / 1000));
  write_trajectory_csv(run.trajectory, (out / "prop2-trajectory.csv").string());
  nlohmann::json summary = run_summary(run.trajectory);
  summary["zeta"] = run.zeta;
  summary["final_pi_best"] = run.trajectory.final_state.policy(0);
  const bool pass = run.trajectory.final_state.policy(0) < 0.5;
  summary["pass"] = pass;
  write_file(out / "prop2-summary.json", summary.dump(2));
  std::cout << "prop2: final pi(best)=" << run.trajectory.final_state.policy(0)
            << " (zeta=" << run.zeta << ") => " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? 0 : 1;
}

int reproduce_appendixf_exact(const fs::path& out, int runs, std::int64_t horizon,
                              unsigned jobs) {
  std::vector<double> final_gap(static_cast<std::size_t>(runs));
  std::vector<std::string> errors(static_cast<std::size_t>(runs));
  std::mutex io;
  parallel_for(
      static_cast<std::size_t>(runs),
      [&](std::size_t i) {
        try {
          GeneratorSpec spec;
          spec.num_actions = 6;
          spec.dim = 3;
          spec.require = {Condition::kUniqueRewards, Condition::kOrderingWitness,
                          Condition::kFeatureTriples};
          spec.seed = rng::derive_key(1001, i);
          const auto inst = generate(spec);
          ExactRunConfig cfg;
          cfg.theta_init = Vector::Zero(3);
          cfg.rate = LearningRate::bound_fraction(0.9);
          cfg.horizon = horizon;
          cfg.record_stride = std::max<std::int64_t>(1, horizon / 200);
          const auto traj = run_exact(inst, cfg);
          final_gap[i] = traj.final_suboptimality();
          std::lock_guard<std::mutex> lock(io);
          write_trajectory_csv(traj,
                               (out / ("exact-run-" + std::to_string(i) + ".csv")).string());
        } catch (const std::exception& e) {
          final_gap[i] = std::numeric_limits<double>::quiet_NaN();
          errors[i] = e.what();
        }
      },
      jobs);

  int ok = 0;
  double worst = 0.0;
  for (double g : final_gap) {
    if (g < 1e-3) ++ok;
    worst = std::max(worst, g);
  }
  const bool pass = ok == runs;
  nlohmann::json summary;
  summary["runs"] = runs;
  summary["converged_below_1e-3"] = ok;
  summary["worst_final_suboptimality"] = worst;
  summary["pass"] = pass;
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) summary["errors"][std::to_string(i)] = errors[i];
  write_file(out / "appendixF-exact-summary.json", summary.dump(2));
  std::cout << "appendixF-exact: " << ok << "/" << runs << " below 1e-3 (worst " << worst
            << ") => " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? 0 : 1;
}

int reproduce_appendixf_stochastic(const fs::path& out, int runs, std::int64_t horizon,
                                   unsigned jobs) {
  const char* families[] = {"bernoulli", "truncated-gaussian", "beta"};
  nlohmann::json summary;
  std::ofstream csv(out / "appendixF-stochastic.csv");
  csv << "noise,seed,final_suboptimality\n";
  csv.precision(17);
  bool pass = true;
  for (const char* family : families) {
    const ProblemInstance inst =
        conditioned_benchmark(1.0, NoiseFamily::parse(family, 0.2, 8.0));
    std::vector<double> gaps(static_cast<std::size_t>(runs));
    parallel_for(
        static_cast<std::size_t>(runs),
        [&](std::size_t i) {
          StochasticRunConfig cfg;
          cfg.theta_init = Vector::Zero(3);
          cfg.rate = LearningRate::bound_fraction(1.0);
          cfg.horizon = horizon;
          cfg.seed = rng::derive_key(777, i);
          cfg.record_stride = horizon;
          gaps[i] = run_stochastic(inst, cfg).trajectory.final_suboptimality();
        },
        jobs);
    int ok = 0;
    for (int i = 0; i < runs; ++i) {
      if (gaps[static_cast<std::size_t>(i)] < 0.05) ++ok;
      csv << family << ',' << i << ',' << gaps[static_cast<std::size_t>(i)] << '\n';
    }
    const bool family_pass = 100 * ok >= 80 * runs;
    pass = pass && family_pass;
    summary[family] = {{"converged_below_0.05", ok}, {"runs", runs}, {"pass", family_pass}};
    std::cout << "appendixF-stochastic[" << family << "]: " << ok << "/" << runs
              << " below 0.05 => " << (family_pass ? "PASS" : "FAIL") << '\n';
  }
  summary["pass"] = pass;
  write_file(out / "appendixF-stochastic-summary.json", summary.dump(2));
  return pass ? 0 : 1;
}

// --------------------------------------------------------------------------
// config file: a flat JSON document; command-line flags override it.

std::vector<std::string> merge_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
  }
  if (config_path.empty()) return args;

  std::ifstream f(config_path);
  if (!f) throw std::runtime_error("cannot read config file " + config_path);
  nlohmann::json doc = nlohmann::json::parse(f);

  const bool user_has_subcommand = !args.empty() && args.front().front() != '-';
  std::vector<std::string> merged;
  if (user_has_subcommand) {
    merged.push_back(args.front());
    args.erase(args.begin());
  } else if (doc.contains("subcommand")) {
    merged.push_back(doc["subcommand"].get<std::string>());
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "subcommand") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) merged.push_back("--" + key);
      continue;
    }
    merged.push_back("--" + key);
    merged.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  merged.insert(merged.end(), args.begin(), args.end());
  return merged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Softmax policy gradient with linear features: certification and experiments"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto* analyze_cmd = app.add_subcommand("analyze", "certify the conditions of an instance");
  InstanceSource an_src;
  std::string an_out;
  analyze_cmd->add_option("--registry", an_src.registry_id, "registry instance id");
  analyze_cmd->add_option("--file", an_src.file_path, "instance JSON path");
  analyze_cmd->add_option("--out", an_out, "output directory (default $LINSPG_OUT or .)");

  auto* exact_cmd = app.add_subcommand("run-exact", "gradient ascent with true mean rewards");
  InstanceSource ex_src;
  std::string ex_out, ex_theta, ex_name = "exact";
  double ex_eta = 0.0, ex_eta_frac = 0.9;
  double ex_T = 100000;
  std::int64_t ex_stride = 100;
  bool ex_dump_theta = false;
  exact_cmd->add_option("--registry", ex_src.registry_id, "registry instance id");
  exact_cmd->add_option("--file", ex_src.file_path, "instance JSON path");
  exact_cmd->add_option("--theta", ex_theta, "initial parameters, comma separated (default 0)");
  exact_cmd->add_option("--eta", ex_eta, "explicit learning rate");
  exact_cmd->add_option("--eta-frac", ex_eta_frac, "fraction of the safe bound (default 0.9)");
  exact_cmd->add_option("--T", ex_T, "number of updates (accepts 1e5 style)");
  exact_cmd->add_option("--stride", ex_stride, "recording stride");
  exact_cmd->add_option("--name", ex_name, "basename for output files");
  exact_cmd->add_option("--out", ex_out, "output directory");
  exact_cmd->add_flag("--theta-dump", ex_dump_theta, "also write recorded parameters as JSON");

  auto* sto_cmd = app.add_subcommand("run-stochastic", "on-policy sampled optimizer");
  InstanceSource st_src;
  std::string st_out, st_theta, st_name = "stochastic", st_noise;
  double st_eta = 0.0, st_eta_frac = 1.0, st_sigma = 0.2, st_conc = 8.0;
  double st_T = 1000000;
  std::int64_t st_stride = 1000;
  std::uint64_t st_seed = 0;
  bool st_track = false, st_log_all = false;
  sto_cmd->add_option("--registry", st_src.registry_id, "registry instance id");
  sto_cmd->add_option("--file", st_src.file_path, "instance JSON path");
  sto_cmd->add_option("--theta", st_theta, "initial parameters (default 0)");
  sto_cmd->add_option("--eta", st_eta, "explicit learning rate");
  sto_cmd->add_option("--eta-frac", st_eta_frac, "fraction of the safe bound (default 1.0)");
  sto_cmd->add_option("--T", st_T, "number of sampled steps (accepts 1e6 style)");
  sto_cmd->add_option("--seed", st_seed, "run seed");
  sto_cmd->add_option("--stride", st_stride, "recording stride");
  sto_cmd->add_option("--noise", st_noise,
                      "attach a noise family: bernoulli, truncated-gaussian, beta");
  sto_cmd->add_option("--sigma", st_sigma, "truncated-gaussian sigma");
  sto_cmd->add_option("--concentration", st_conc, "beta concentration");
  sto_cmd->add_option("--name", st_name, "basename for output files");
  sto_cmd->add_option("--out", st_out, "output directory");
  sto_cmd->add_flag("--track-pairs", st_track, "record progress/noise splits per arm pair");
  sto_cmd->add_flag("--log-every-step", st_log_all, "keep a step record for every iteration");

  auto* rep_cmd = app.add_subcommand("reproduce", "rerun a packaged experiment");
  std::string rep_id, rep_out;
  int rep_runs = 0;
  double rep_T = 0.0;
  unsigned rep_jobs = std::thread::hardware_concurrency();
  rep_cmd
      ->add_option("id", rep_id,
                   "one of fig1, fig2, appendixF-exact, appendixF-stochastic, prop2")
      ->required();
  rep_cmd->add_option("--runs", rep_runs, "number of runs (scenario default otherwise)");
  rep_cmd->add_option("--T", rep_T, "horizon override (accepts 1e6 style)");
  rep_cmd->add_option("--out", rep_out, "output directory");
  rep_cmd->add_option("--jobs", rep_jobs, "worker threads");

  auto* sweep_cmd = app.add_subcommand("sweep", "learning-rate x noise x seed grid");
  std::string sw_lrs = "0.01,0.1,1,10", sw_noises = "bernoulli,truncated-gaussian,beta";
  std::string sw_out;
  int sw_seeds = 5;
  double sw_T = 100000;
  std::uint64_t sw_master = 0;
  double sw_scale = 0.2;
  unsigned sw_jobs = std::thread::hardware_concurrency();
  sweep_cmd->add_option("--lrs", sw_lrs, "comma-separated learning rates");
  sweep_cmd->add_option("--noises", sw_noises, "comma-separated noise families");
  sweep_cmd->add_option("--seeds", sw_seeds, "seeds per cell");
  sweep_cmd->add_option("--T", sw_T, "steps per run (accepts 1e5 style)");
  sweep_cmd->add_option("--master-seed", sw_master, "master seed for child derivation");
  sweep_cmd->add_option("--feature-scale", sw_scale,
                        "rescale the benchmark features (default 0.2 keeps the whole "
                        "default rate grid in the convergent regime)");
  sweep_cmd->add_option("--out", sw_out, "output directory");
  sweep_cmd->add_option("--jobs", sw_jobs, "worker threads");

  auto* gen_cmd = app.add_subcommand("gen", "generate a conforming instance");
  std::int64_t g_K = 6, g_d = 3;
  std::string g_require = "A1,A2,A4", g_noise, g_out_file;
  std::uint64_t g_seed = 0;
  double g_lo = 0.0, g_hi = 1.0, g_gap = 0.05, g_shrink = 0.5, g_scale = 1.0;
  double g_sigma = 0.2, g_conc = 8.0;
  int g_max_rej = 1000;
  gen_cmd->add_option("--K", g_K, "number of actions");
  gen_cmd->add_option("--d", g_d, "feature dimension");
  gen_cmd->add_option("--require", g_require, "conditions to certify, e.g. A1,A2,A4");
  gen_cmd->add_option("--seed", g_seed, "generator seed");
  gen_cmd->add_option("--reward-lo", g_lo, "reward range low end");
  gen_cmd->add_option("--reward-hi", g_hi, "reward range high end");
  gen_cmd->add_option("--gap-floor", g_gap, "minimum consecutive reward gap (>= 0.05)");
  gen_cmd->add_option("--score-shrink", g_shrink, "per-direction score decay in (0, 1]");
  gen_cmd->add_option("--feature-scale", g_scale, "score magnitude scale");
  gen_cmd->add_option("--noise", g_noise, "noise family to attach");
  gen_cmd->add_option("--sigma", g_sigma, "truncated-gaussian sigma");
  gen_cmd->add_option("--concentration", g_conc, "beta concentration");
  gen_cmd->add_option("--max-rejections", g_max_rej, "rejection budget");
  gen_cmd->add_option("--out", g_out_file, "write instance JSON here (stdout otherwise)");

  std::vector<std::string> args;
  try {
    args = merge_config_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::vector<const char*> cargs;
  cargs.push_back(argv[0]);
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*analyze_cmd) {
      const auto inst = resolve_instance(an_src);
      const auto report = analyze(inst);
      print_report(report);
      const fs::path dir = ensure_out_dir(an_out);
      const std::string base = an_src.registry_id.empty()
                                   ? fs::path(an_src.file_path).stem().string()
                                   : an_src.registry_id;
      write_file(dir / (base + "-report.json"), report.to_json());
      return 0;
    }

    if (*exact_cmd) {
      const auto inst = resolve_instance(ex_src);
      ExactRunConfig cfg;
      cfg.theta_init = parse_vector(ex_theta, inst.dim());
      cfg.rate = make_rate(ex_eta, ex_eta_frac);
      cfg.horizon = static_cast<std::int64_t>(ex_T);
      cfg.record_stride = ex_stride;
      const auto traj = run_exact(inst, cfg);
      const fs::path dir = ensure_out_dir(ex_out);
      write_trajectory_csv(traj, (dir / (ex_name + "-trajectory.csv")).string());
      if (ex_dump_theta) write_theta_json(traj, (dir / (ex_name + "-theta.json")).string());
      write_file(dir / (ex_name + "-summary.json"), run_summary(traj).dump(2));
      std::cout << run_summary(traj).dump(2) << '\n';
      return traj.aborted ? 1 : 0;
    }

    if (*sto_cmd) {
      ProblemInstance inst = resolve_instance(st_src);
      if (const auto family = parse_noise_flag(st_noise, st_sigma, st_conc))
        inst = ProblemInstance(inst.features(), inst.mean_rewards(),
                               std::max(1.0, inst.reward_bound()), family);
      StochasticRunConfig cfg;
      cfg.theta_init = parse_vector(st_theta, inst.dim());
      cfg.rate = make_rate(st_eta, st_eta_frac);
      cfg.horizon = static_cast<std::int64_t>(st_T);
      cfg.seed = st_seed;
      cfg.record_stride = st_stride;
      cfg.track_pairs = st_track;
      cfg.log_every_step = st_log_all;
      const auto run = run_stochastic(inst, cfg);
      const fs::path dir = ensure_out_dir(st_out);
      write_trajectory_csv(run.trajectory, (dir / (st_name + "-trajectory.csv")).string());
      write_step_log_csv(run, (dir / (st_name + "-steps.csv")).string());
      for (const auto& ledger : run.ledgers)
        write_ledger_csv(ledger,
                         (dir / (st_name + "-ledger-" + std::to_string(ledger.first) + "-" +
                                 std::to_string(ledger.second) + ".csv"))
                             .string());
      write_file(dir / (st_name + "-summary.json"), run_summary(run.trajectory).dump(2));
      std::cout << run_summary(run.trajectory).dump(2) << '\n';
      return run.trajectory.aborted ? 1 : 0;
    }

    if (*rep_cmd) {
      const fs::path dir = ensure_out_dir(rep_out);
      const auto horizon_or = [&](std::int64_t dflt) {
        return rep_T > 0 ? static_cast<std::int64_t>(rep_T) : dflt;
      };
      if (rep_id == "fig1") return reproduce_fig1(dir);
      if (rep_id == "fig2") return reproduce_fig2(dir, horizon_or(100000));
      if (rep_id == "prop2") return reproduce_prop2(dir, horizon_or(100000));
      if (rep_id == "appendixF-exact")
        return reproduce_appendixf_exact(dir, rep_runs > 0 ? rep_runs : 50,
                                         horizon_or(1000000), rep_jobs);
      if (rep_id == "appendixF-stochastic")
        return reproduce_appendixf_stochastic(dir, rep_runs > 0 ? rep_runs : 25,
                                              horizon_or(1000000), rep_jobs);
      std::cerr << "unknown reproduction id: " << rep_id << '\n';
      return 2;
    }

    if (*sweep_cmd) {
      std::vector<double> lrs;
      {
        std::stringstream ss(sw_lrs);
        std::string tok;
        while (std::getline(ss, tok, ',')) lrs.push_back(std::stod(tok));
      }
      std::vector<std::string> noises;
      {
        std::stringstream ss(sw_noises);
        std::string tok;
        while (std::getline(ss, tok, ',')) noises.push_back(tok);
      }
      struct Row {
        double lr = 0.0;
        std::string noise;
        int seed = 0;
        double final_gap = 0.0;
        double auc = 0.0;
        std::string error;
      };
      std::vector<Row> rows(lrs.size() * noises.size() * static_cast<std::size_t>(sw_seeds));
      const std::int64_t horizon = static_cast<std::int64_t>(sw_T);
      parallel_for(
          rows.size(),
          [&](std::size_t idx) {
            const std::size_t per_lr = noises.size() * static_cast<std::size_t>(sw_seeds);
            const std::size_t li = idx / per_lr;
            const std::size_t ni = (idx % per_lr) / static_cast<std::size_t>(sw_seeds);
            const int si = static_cast<int>(idx % static_cast<std::size_t>(sw_seeds));
            Row& row = rows[idx];
            row.lr = lrs[li];
            row.noise = noises[ni];
            row.seed = si;
            try {
              const ProblemInstance inst =
                  conditioned_benchmark(sw_scale, NoiseFamily::parse(noises[ni], 0.2, 8.0));
              StochasticRunConfig cfg;
              cfg.theta_init = Vector::Zero(inst.dim());
              cfg.rate = LearningRate::explicit_rate(lrs[li]);
              cfg.horizon = horizon;
              cfg.seed = rng::derive_key(sw_master, idx);
              cfg.record_stride = horizon;
              const auto run = run_stochastic(inst, cfg);
              row.final_gap = run.trajectory.final_suboptimality();
              double acc = 0.0;
              for (double r : run.trajectory.step_rewards)
                acc += run.trajectory.optimal_reward - r;
              row.auc = acc / static_cast<double>(run.trajectory.step_rewards.size());
            } catch (const std::exception& e) {
              row.final_gap = std::numeric_limits<double>::quiet_NaN();
              row.auc = std::numeric_limits<double>::quiet_NaN();
              row.error = e.what();
            }
          },
          sw_jobs);

      const fs::path dir = ensure_out_dir(sw_out);
      std::ofstream csv(dir / "sweep.csv");
      csv << "lr,noise,seed,final_suboptimality,auc\n";
      csv.precision(17);
      nlohmann::json errors = nlohmann::json::object();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        csv << row.lr << ',' << row.noise << ',' << row.seed << ',' << row.final_gap << ','
            << row.auc << '\n';
        if (!row.error.empty()) errors[std::to_string(i)] = row.error;
      }
      nlohmann::json summary;
      summary["rows"] = rows.size();
      summary["errors"] = errors;
      write_file(dir / "sweep-summary.json", summary.dump(2));
      std::cout << "sweep: " << rows.size() << " rows -> " << (dir / "sweep.csv").string()
                << '\n';
      return 0;
    }

    if (*gen_cmd) {
      GeneratorSpec spec;
      spec.num_actions = g_K;
      spec.dim = g_d;
      spec.require.clear();
      {
        std::stringstream ss(g_require);
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.require.insert(parse_condition(tok));
      }
      spec.seed = g_seed;
      spec.reward_lo = g_lo;
      spec.reward_hi = g_hi;
      spec.reward_gap_floor = g_gap;
      spec.score_shrink = g_shrink;
      spec.feature_scale = g_scale;
      spec.max_rejections = g_max_rej;
      spec.noise = parse_noise_flag(g_noise, g_sigma, g_conc);
      const auto inst = generate(spec);
      if (g_out_file.empty()) {
        std::cout << inst.to_json() << '\n';
      } else {
        write_file(fs::path(g_out_file), inst.to_json());
        std::cout << "wrote " << g_out_file << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
