#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "ckl/version.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ckl -- Cesaro kernels of weighted orthogonal expansions on the sphere, ball, "
               "and simplex"};
  app.set_version_flag("--version", std::string(ckl::kVersion));
  app.require_subcommand(1);

  ckl::cli::CliOptions opt;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config_path, "experiment configuration file");
    if (needs_config) c->required();
    sub->add_option("--out", opt.out_dir, "output directory (default: .)");
    sub->add_option("--threads", opt.threads, "worker threads (default: logical cores)");
    sub->add_option("--seed", opt.seed, "sampling seed recorded in every report");
    sub->add_flag("--allow-nonconverged", opt.allow_nonconverged,
                  "exit 0 even when integrals did not converge");
    sub->add_flag("--emit-plot", opt.emit_plot, "write a gnuplot companion script");
  };

  auto* kernel = app.add_subcommand("kernel", "kernel values over (n, x, y) grids");
  add_common(kernel, true);
  auto* lebesgue = app.add_subcommand("lebesgue", "weighted L1 kernel norms and growth fits");
  add_common(lebesgue, true);
  auto* growth = app.add_subcommand("growth", "exponent fits of an existing CSV column");
  add_common(growth, true);
  auto* verify = app.add_subcommand("verify-bounds", "pointwise bound calibration sweeps");
  add_common(verify, true);
  auto* lower = app.add_subcommand("lower-bound", "lower-bound integrals and asymptotics");
  add_common(lower, true);
  auto* selftest = app.add_subcommand("selftest", "fast identity suite");
  add_common(selftest, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (kernel->parsed()) {
      opt.command = "kernel";
      return ckl::cli::cmd_kernel(opt);
    }
    if (lebesgue->parsed()) {
      opt.command = "lebesgue";
      return ckl::cli::cmd_lebesgue(opt);
    }
    if (growth->parsed()) {
      opt.command = "growth";
      return ckl::cli::cmd_growth(opt);
    }
    if (verify->parsed()) {
      opt.command = "verify-bounds";
      return ckl::cli::cmd_verify_bounds(opt);
    }
    if (lower->parsed()) {
      opt.command = "lower-bound";
      return ckl::cli::cmd_lower_bound(opt);
    }
    if (selftest->parsed()) {
      opt.command = "selftest";
      return ckl::cli::cmd_selftest(opt);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ckl: %s\n", e.what());
    return 1;
  }
  return 1;
}
