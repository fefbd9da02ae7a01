#pragma once

#include <string>
#include <vector>

namespace sgr::io {

// exit codes: 0 ok, 1 runtime/integration failure, 2 config/validation failure
int run_scenario(const std::string& config_path, const std::string& preset,
                 const std::string& out_dir, bool strict_bnv, bool fixed_step,
                 bool dense_grid);
int run_sweep(const std::string& config_path, const std::string& preset,
              const std::string& out_dir, bool strict_bnv, bool fixed_step,
              bool dense_grid);

// the whole CLI, callable in-process from tests; argv without the program name
int cli_main(const std::vector<std::string>& args);

} // namespace sgr::io
