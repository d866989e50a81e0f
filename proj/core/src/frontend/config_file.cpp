#include "dxsim/frontend/config_file.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace dxsim::frontend {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    if (used == v.size() && v[0] != '-') return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected an unsigned integer, got '" + v + "'");
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
}

}  // namespace

std::vector<KeyValue> parse_key_values(std::string_view text, const std::string& source) {
  std::vector<KeyValue> out;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(n) + ": expected 'key = value'");
    KeyValue kv{trim(std::string_view(line).substr(0, eq)),
                trim(std::string_view(line).substr(eq + 1)), n};
    if (kv.key.empty() || kv.value.empty())
      throw ConfigError(source + ":" + std::to_string(n) + ": expected 'key = value'");
    if (!seen.insert(kv.key).second)
      throw ConfigError(source + ":" + std::to_string(n) + ": key '" + kv.key + "' repeated");
    out.push_back(std::move(kv));
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

SimConfig config_from_text(std::string_view text, bool strict, const std::string& source) {
  SimConfig cfg;
  std::set<std::string> given;
  for (const auto& kv : parse_key_values(text, source)) {
    try {
      cfg.set(kv.key, kv.value);
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(kv.line) + ": " + e.what());
    }
    given.insert(kv.key);
  }
  if (strict)
    for (const auto& k : SimConfig::keys())
      if (!given.count(k)) throw ConfigError(source + ": missing config key '" + k + "'");
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path, bool strict) {
  return config_from_text(read_text(path), strict, path.string());
}

void apply_env_overrides(SimConfig& cfg) {
  if (const char* s = std::getenv("DX_SIM_SEED"); s && *s) cfg.seed = to_uint("DX_SIM_SEED", s);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected on/off, got '" + v + "'");
}

workloads::WorkloadSpec workload_spec_from(const std::vector<KeyValue>& kvs,
                                          const std::string& source,
                                          std::vector<std::string> extra_keys) {
  workloads::WorkloadSpec w;
  auto& p = w.pattern;
  for (const auto& kv : kvs) {
    const std::string& k = kv.key;
    const std::string& v = kv.value;
    try {
      if (k == "unique_indices") p.unique_indices = to_uint(k, v);
      else if (k == "rows_per_bank") p.rows_per_bank = static_cast<std::uint32_t>(to_uint(k, v));
      else if (k == "rbh") p.rbh_target = to_double(k, v);
      else if (k == "chi") p.chi = parse_bool(k, v);
      else if (k == "bgi") p.bgi = parse_bool(k, v);
      else if (k == "seed") p.seed = to_uint(k, v);
      else if (k == "chi_run") p.chi_run = static_cast<std::uint32_t>(to_uint(k, v));
      else if (k == "bgi_run") p.bgi_run = static_cast<std::uint32_t>(to_uint(k, v));
      else if (k == "value_dtype") {
        auto d = isa::parse_dtype(v);
        if (!d) throw ConfigError("key 'value_dtype': unknown dtype '" + v + "'");
        w.value_dtype = *d;
      } else if (k == "warm_indices") w.warm_indices = parse_bool(k, v);
      else if (k == "csr_rows") w.csr_rows = static_cast<std::uint32_t>(to_uint(k, v));
      else if (k == "csr_avg_nnz") w.csr_avg_nnz = static_cast<std::uint32_t>(to_uint(k, v));
      else if (std::find(extra_keys.begin(), extra_keys.end(), k) == extra_keys.end())
        throw ConfigError("unknown key '" + k + "'");
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(kv.line) + ": " + e.what());
    }
  }
  return w;
}

workloads::WorkloadSpec load_workload_spec(const std::filesystem::path& path) {
  return workload_spec_from(parse_key_values(read_text(path), path.string()), path.string());
}

}  // namespace dxsim::frontend
