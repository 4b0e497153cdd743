// Copyright 2026 The sswnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sswnp/cli.hpp"

#include "sswnp/checkpoint.hpp"
#include "sswnp/config.hpp"
#include "sswnp/errors.hpp"
#include "sswnp/experiments.hpp"
#include "sswnp/manifest.hpp"
#include "sswnp/report.hpp"
#include "sswnp/step_check.hpp"
#include "sswnp/synth.hpp"
#include "sswnp/training.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace sswnp
{
namespace
{

namespace fs = std::filesystem;

struct Context
{
  std::string command;
  KeyValueConfig config;
  RunConfig run;
  fs::path out_dir;
  std::vector<std::string> artifacts;
  std::ostream * log;

  void write(const std::string & rel, const std::string & text)
  {
    std::ofstream file(out_dir / rel, std::ios::binary);
    file << text;
    if (!file) {
      throw ConfigError("cannot write '" + (out_dir / rel).string() + "'");
    }
    artifacts.push_back(rel);
  }

  void write_table(const std::string & rel, const Table & table, bool markdown)
  {
    std::ostringstream s;
    if (markdown) {
      write_markdown(table, s);
    } else {
      write_csv(table, s);
    }
    write(rel, s.str());
  }
};

Scene load_scene(const RunConfig & run)
{
  return run.data.empty() ? generate(run.synth) : load_corpus(run.data);
}

void cmd_synth(Context & ctx)
{
  std::ostringstream s;
  serialize(generate(ctx.run.synth), s);
  ctx.write("corpus.txt", s.str());
  *ctx.log << "wrote " << ctx.run.synth.agents << " " << family_name(ctx.run.synth.family)
           << " trajectories\n";
}

void write_lss_reports(Context & ctx, const TrainLog & log)
{
  const LambdaDiagnostic diag = lambda_diagnostic(log);
  ctx.write_table("lss_curve.csv", lss_curve(diag), false);
  std::ostringstream s;
  s << "L_ss convergence (lambda = " << format_exact(log.lambda) << ")\n\n";
  s << "monotone trend (fraction of decreasing epoch means): " << format_fixed(diag.trend) << "\n\n";
  write_markdown(lss_epoch_means(diag), s);
  ctx.write("lss_summary.md", s.str());
}

void cmd_train(Context & ctx)
{
  const Scene corpus = load_scene(ctx.run);
  const Scene train_scene = split_agents(corpus, ctx.run.holdout_fraction).first;
  TrainOptions options;
  options.checkpoint_path = (ctx.out_dir / "checkpoint.ckpt").string();
  const TrainResult result =
    train(ctx.run.train, train_scene, ctx.run.horizons, ctx.run.normalize, options);
  ctx.artifacts.push_back("checkpoint.ckpt");

  std::ostringstream s;
  write_train_log_csv(result.log, s);
  ctx.write("train_log.csv", s.str());
  if (ctx.run.train.mode == Mode::kFull) {
    write_lss_reports(ctx, result.log);
  }
  const StepRecord & last = result.log.records.back();
  *ctx.log << "trained " << mode_name(ctx.run.train.mode) << " for " << result.log.records.size()
           << " steps; final l_total " << format_exact(last.l_total) << "\n";
}

std::vector<TrajectorySample> eval_samples(const RunConfig & run, const Scene & corpus)
{
  if (run.eval_split == "all") {
    return prepare_samples(corpus, run.horizons, run.normalize);
  }
  const auto [train_scene, held_scene] = split_agents(corpus, run.holdout_fraction);
  if (run.eval_split == "train") {
    return prepare_samples(train_scene, run.horizons, run.normalize);
  }
  if (run.eval_split == "heldout") {
    return prepare_samples(held_scene, run.horizons, run.normalize);
  }
  throw ConfigError("eval_split must be heldout, train or all");
}

void cmd_eval(Context & ctx)
{
  if (ctx.run.checkpoint.empty()) {
    throw ConfigError("eval requires 'checkpoint'");
  }
  const ModelParams params = load_checkpoint(ctx.run.checkpoint);
  const auto samples = eval_samples(ctx.run, load_scene(ctx.run));
  const RobustnessReport report = evaluate_robustness(params, samples, ctx.run.eval_config());
  const Table table = robustness_summary(report);
  ctx.write_table("eval.csv", table, false);
  ctx.write_table("eval.md", table, true);
  write_markdown(table, *ctx.log);
}

void cmd_ablate(Context & ctx)
{
  const AblationTable ablation = run_ablation(ctx.run, load_scene(ctx.run));
  const Table summary = ablation_summary(ablation);
  ctx.write_table("ablation.csv", summary, false);
  ctx.write_table("ablation.md", summary, true);
  ctx.write_table("ablation_runs.csv", ablation_details(ablation), false);
  write_markdown(summary, *ctx.log);
}

void cmd_sweep(Context & ctx)
{
  const SweepTable sweep = noise_factor_sweep(ctx.run, load_scene(ctx.run), ctx.run.sweep_omegas);
  const Table summary = sweep_summary(sweep);
  ctx.write_table("sweep.csv", summary, false);
  ctx.write_table("sweep.md", summary, true);
  ctx.write_table("sweep_runs.csv", sweep_details(sweep), false);
  ctx.write_table("sweep_curve.csv", sweep_curve(sweep), false);
  write_markdown(summary, *ctx.log);
  *ctx.log << "argmin omega: " << format_exact(sweep.best_omega()) << "\n";
}

void cmd_report(Context & ctx)
{
  if (ctx.run.train_log.empty()) {
    throw ConfigError("report requires 'train_log'");
  }
  std::ifstream in(ctx.run.train_log);
  if (!in) {
    throw ConfigError("cannot open train log '" + ctx.run.train_log + "'");
  }
  const TrainLog log =
    read_train_log_csv(in, ctx.run.train.mode, ctx.run.train.effective_lambda());
  write_lss_reports(ctx, log);
  *ctx.log << "read " << log.records.size() << " training steps\n";
}

void cmd_grad_check(Context & ctx)
{
  const RunConfig & run = ctx.run;
  Table table;
  table.headers = {"graph", "mode", "batch", "parameter", "max_relative_error", "passed"};
  bool all_passed = true;
  double worst = 0.0;
  for (int g = 0; g < run.grad_check_graphs; ++g) {
    const StepCheckCase c =
      random_step_case(
      run.train.arch, run.grad_check_batch, run.train.seed + g, run.grad_check_random_widths);
    const GradCheckReport report = check_step_gradients(c, run.grad_check_h, run.grad_check_tol);
    for (const auto & p : report.parameters) {
      table.add_row({std::to_string(g), mode_name(c.config.mode), std::to_string(c.batch),
                     p.parameter, format_exact(p.max_relative_error), p.passed ? "1" : "0"});
    }
    all_passed = all_passed && report.passed;
    worst = std::max(worst, report.max_relative_error);
  }
  ctx.write_table("grad_check.csv", table, false);
  *ctx.log << "max relative error " << format_exact(worst) << " over " << run.grad_check_graphs
           << " graph(s)\n";
  if (!all_passed) {
    throw NumericalError(
      "gradient check failed: max relative error " + format_exact(worst) + " >= " +
      format_exact(run.grad_check_tol));
  }
}

}  // namespace

int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Self-supervised waypoint noise prediction toolkit", "sswnp"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::optional<std::int64_t> seed;

  const std::vector<std::pair<std::string, std::string>> commands{
    {"synth", "generate a synthetic corpus"},
    {"train", "train a model and write a checkpoint"},
    {"eval", "evaluate a checkpoint in clean and noisy environments"},
    {"ablate", "train and compare modes B, B+SC and B+SC+NP"},
    {"sweep", "train one model per noise factor"},
    {"report", "render L_ss convergence reports from a training log"},
    {"grad-check", "check gradients of random training-step objectives"},
  };
  for (const auto & [name, help] : commands) {
    CLI::App * sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_dir, "output directory (created if absent)")->required();
    sub->add_option("--set", overrides, "override key=value (repeatable)");
    sub->add_option("--seed", seed, "seed (synth.seed for synth, seed otherwise)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    std::ostringstream help_out;
    std::ostringstream error_out;
    const int code = app.exit(e, help_out, error_out);
    out << help_out.str();
    err << error_out.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Context ctx;
  ctx.command = command;
  ctx.log = &out;
  try {
    if (!config_path.empty()) {
      ctx.config.merge_file(config_path);
    }
    for (const auto & kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        err << "sswnp: --set expects key=value, got '" << kv << "'\n";
        return kExitUsage;
      }
      ctx.config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) {
      ctx.config.set(command == "synth" ? "synth.seed" : "seed", std::to_string(*seed));
    }
    ctx.run = ctx.config.resolve();
    ctx.out_dir = out_dir;
    fs::create_directories(ctx.out_dir);

    if (command == "synth") cmd_synth(ctx);
    else if (command == "train") cmd_train(ctx);
    else if (command == "eval") cmd_eval(ctx);
    else if (command == "ablate") cmd_ablate(ctx);
    else if (command == "sweep") cmd_sweep(ctx);
    else if (command == "report") cmd_report(ctx);
    else cmd_grad_check(ctx);

    write_manifest(ctx.out_dir, command, ctx.config, ctx.artifacts);
    return kExitOk;
  } catch (const NumericalError & e) {
    err << "sswnp " << command << ": numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception & e) {
    err << "sswnp " << command << ": " << e.what() << "\n";
    return kExitDataOrConfig;
  }
}

}  // namespace sswnp
