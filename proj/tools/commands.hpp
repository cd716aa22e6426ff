#pragma once

#include <cstdint>
#include <string>

namespace ckl::cli {

struct CliOptions {
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;  // 0: hardware concurrency
  std::uint64_t seed = 0;
  bool allow_nonconverged = false;
  bool emit_plot = false;
};

int cmd_kernel(CliOptions opt);
int cmd_lebesgue(CliOptions opt);
int cmd_growth(CliOptions opt);
int cmd_verify_bounds(CliOptions opt);
int cmd_lower_bound(CliOptions opt);
int cmd_selftest(CliOptions opt);

}  // namespace ckl::cli
