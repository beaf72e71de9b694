#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "tableturn/config.hpp"
#include "tableturn/touchdown.hpp"

namespace tableturn {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // malformed config / IO failure
inline constexpr int kExitAssumption = 2;  // geometry assumptions fail
inline constexpr int kExitNoAngle = 3;     // solver verdict none_found

struct CommandOptions {
  std::string out_override;          // --out; empty = not given
  std::optional<TouchModel> model;   // --model; unset = command default
};

/// --out flag, then config [output] directory, then $TABLETURN_OUT, then ".".
std::string resolve_output_dir(const OutputConfig& output,
                               const std::string& out_override);

/// Checks the geometry assumptions and prints the report.
int run_validate(const ExperimentConfig& config, std::ostream& log);

/// Writes sweep.csv (and sweep.svg when requested) for N uniform angles.
int run_sweep(const ExperimentConfig& config, const CommandOptions& options,
              std::ostream& log);

/// Runs the stabilizing-angle search; writes solve.txt and roots.csv.
int run_solve(const ExperimentConfig& config, const CommandOptions& options,
              std::ostream& log);

/// Writes the Birkhoff-average convergence report (ergodic.csv, ergodic.txt).
int run_ergodic(const ExperimentConfig& config, const CommandOptions& options,
                std::ostream& log);

/// Re-runs the solver over seeds 1..n_seeds of the random terrain; writes
/// batch.csv and prints the aggregate success rate.
int run_batch(const ExperimentConfig& config, std::size_t n_seeds,
              const CommandOptions& options, std::ostream& log);

}  // namespace tableturn
