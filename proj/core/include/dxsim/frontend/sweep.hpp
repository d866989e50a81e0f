#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dxsim/engine/stats.hpp"
#include "dxsim/sim_config.hpp"
#include "dxsim/workloads/programs.hpp"

namespace dxsim::frontend {

struct SweepCell {
  double rbh = 0;
  bool chi = false;
  bool bgi = false;
  friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

/// Worst to best: rbh 0..1 in steps of 0.2 without interleaving, then full
/// row locality with channel interleaving, then with bank-group interleaving.
std::vector<SweepCell> default_cells();

struct SweepSpec {
  workloads::Kind kind = workloads::Kind::GatherFull;
  workloads::WorkloadSpec workload;
  std::vector<SweepCell> cells = default_cells();
};

/// Workload spec keys plus `kind` and `cells` ("rbh:chi:bgi" items separated by
/// spaces or semicolons, e.g. "0:off:off; 1:on:on").
SweepSpec sweep_spec_from_text(std::string_view text, const std::string& source);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepResult {
  SweepCell cell;
  engine::StatReport dx100;
  engine::StatReport baseline;
};

/// Runs every cell on the accelerator and on the baseline issuer, `jobs`
/// simulations at a time. Results come back in cell order regardless of jobs.
std::vector<SweepResult> run_sweep(const SweepSpec& spec, const SimConfig& cfg, unsigned jobs);

/// Header plus two rows per cell (dx100 first).
std::string sweep_csv(const std::vector<SweepResult>& results);

}  // namespace dxsim::frontend
