#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dxsim/sim_config.hpp"
#include "dxsim/workloads/programs.hpp"

namespace dxsim::frontend {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// `key = value` lines; `#` comments and blank lines are skipped. Throws
/// ConfigError on a malformed line or a repeated key.
std::vector<KeyValue> parse_key_values(std::string_view text, const std::string& source);

std::string read_text(const std::filesystem::path& path);

/// In strict mode every documented key must be present.
SimConfig config_from_text(std::string_view text, bool strict, const std::string& source);
SimConfig load_config(const std::filesystem::path& path, bool strict = true);

/// Applies DX_SIM_SEED when set.
void apply_env_overrides(SimConfig& cfg);

/// Workload spec keys (all optional): unique_indices, rows_per_bank, rbh, chi,
/// bgi, seed, chi_run, bgi_run, value_dtype, warm_indices, csr_rows,
/// csr_avg_nnz. Booleans accept on/off, true/false, 1/0.
workloads::WorkloadSpec workload_spec_from(const std::vector<KeyValue>& kvs,
                                          const std::string& source,
                                          std::vector<std::string> extra_keys = {});
workloads::WorkloadSpec load_workload_spec(const std::filesystem::path& path);

bool parse_bool(const std::string& key, const std::string& value);

}  // namespace dxsim::frontend
