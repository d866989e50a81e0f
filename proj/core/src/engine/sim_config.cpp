#include "dxsim/sim_config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

namespace dxsim {

namespace {

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out, 10);
  if (ec != std::errc() || p != end)
    throw ConfigError("config key '" + key + "': expected an unsigned integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != v.size() || !std::isfinite(out) || out < 0)
    throw ConfigError("config key '" + key + "': expected a non-negative number, got '" + v + "'");
  return out;
}

/// Nanosecond values are stored as picoseconds.
Tick parse_ns(const std::string& key, const std::string& v) {
  return static_cast<Tick>(std::llround(parse_double(key, v) * 1000.0));
}

std::string format_ns(Tick ps) {
  std::ostringstream os;
  os << static_cast<double>(ps) / 1000.0;
  return os.str();
}

struct Key {
  const char* name;
  std::function<void(SimConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

#define DX_UINT(NAME, EXPR)                                                                  \
  Key {                                                                                      \
    NAME,                                                                                    \
        [](SimConfig& c, const std::string& k, const std::string& v) {                       \
          c.EXPR = static_cast<std::remove_reference_t<decltype(c.EXPR)>>(parse_uint(k, v)); \
        },                                                                                   \
        [](const SimConfig& c) { return std::to_string(c.EXPR); }                            \
  }

#define DX_NS(NAME, EXPR)                                                                 \
  Key {                                                                                   \
    NAME, [](SimConfig& c, const std::string& k, const std::string& v) { c.EXPR = parse_ns(k, v); }, \
        [](const SimConfig& c) { return format_ns(c.EXPR); }                              \
  }

const std::vector<Key>& registry() {
  static const std::vector<Key> keys = {
      DX_UINT("dram.channels", dram.channels),
      DX_UINT("dram.ranks", dram.ranks),
      DX_UINT("dram.bank_groups", dram.bank_groups),
      DX_UINT("dram.banks_per_group", dram.banks_per_group),
      DX_UINT("dram.rows", dram.rows),
      DX_UINT("dram.columns_per_row", dram.columns_per_row),
      DX_UINT("dram.cacheline_bytes", dram.cacheline_bytes),
      DX_UINT("dram.burst_length", dram.burst_length),
      Key{"dram.tck_ps",
          [](SimConfig& c, const std::string& k, const std::string& v) { c.dram.tck = parse_uint(k, v); },
          [](const SimConfig& c) { return std::to_string(c.dram.tck); }},
      DX_NS("dram.trp_ns", dram.trp),
      DX_NS("dram.trcd_ns", dram.trcd),
      DX_NS("dram.tras_ns", dram.tras),
      DX_NS("dram.trtp_ns", dram.trtp),
      DX_NS("dram.tccd_s_ns", dram.tccd_s),
      DX_NS("dram.tccd_l_ns", dram.tccd_l),
      DX_UINT("dram.request_buffer_size", dram.request_buffer_size),
      Key{"dram.mapping",
          [](SimConfig& c, const std::string&, const std::string& v) {
            c.dram.mapping = dram::parse_mapping(v);
          },
          [](const SimConfig& c) { return dram::format_mapping(c.dram.mapping); }},
      DX_UINT("maa.clock_mhz", maa.clock_mhz),
      DX_UINT("maa.tiles", maa.tiles),
      DX_UINT("maa.tile_size", maa.tile_size),
      DX_UINT("maa.registers", maa.registers),
      DX_UINT("maa.row_table_rows", maa.row_table_rows),
      DX_UINT("maa.row_table_columns", maa.row_table_columns),
      DX_UINT("maa.request_table_size", maa.request_table_size),
      DX_UINT("maa.alu_lanes", maa.alu_lanes),
      DX_UINT("maa.scoreboard_entries", maa.scoreboard_entries),
      DX_UINT("maa.instr_issue_cycles", maa.instr_issue_cycles),
      DX_UINT("maa.spd_unit_latency", maa.spd_unit_latency),
      DX_UINT("maa.spd_core_latency", maa.spd_core_latency),
      DX_UINT("maa.fill_per_cycle", maa.fill_per_cycle),
      DX_UINT("maa.response_words_per_cycle", maa.response_words_per_cycle),
      DX_UINT("maa.rng_pairs_per_cycle", maa.rng_pairs_per_cycle),
      DX_UINT("maa.rng_cursor_reg", maa.rng_cursor_reg),
      DX_UINT("maa.deadlock_cycles", maa.deadlock_cycles),
      Key{"indirect.drain_policy",
          [](SimConfig& c, const std::string& k, const std::string& v) {
            if (v == "slice")
              c.maa.drain_policy = DrainPolicy::Slice;
            else if (v == "row")
              c.maa.drain_policy = DrainPolicy::Row;
            else
              throw ConfigError("config key '" + k + "': expected 'slice' or 'row', got '" + v + "'");
          },
          [](const SimConfig& c) {
            return std::string(c.maa.drain_policy == DrainPolicy::Slice ? "slice" : "row");
          }},
      DX_UINT("llc.size_bytes", llc.size_bytes),
      DX_UINT("llc.ways", llc.ways),
      DX_UINT("llc.latency_cycles", llc.latency_cycles),
      DX_UINT("llc.mshrs", llc.mshrs),
      DX_UINT("baseline.cores", baseline.cores),
      DX_UINT("baseline.max_outstanding", baseline.max_outstanding),
      DX_NS("baseline.one_way_latency_ns", baseline.one_way_latency),
      DX_UINT("seed", seed),
  };
  return keys;
}

#undef DX_UINT
#undef DX_NS

const Key& lookup(const std::string& key) {
  for (const auto& k : registry())
    if (key == k.name) return k;
  throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

const std::vector<std::string>& SimConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& k : registry()) out.emplace_back(k.name);
    return out;
  }();
  return names;
}

void SimConfig::set(const std::string& key, const std::string& value) {
  lookup(key).set(*this, key, value);
}

std::string SimConfig::get(const std::string& key) const { return lookup(key).get(*this); }

std::string SimConfig::to_text() const {
  std::ostringstream os;
  for (const auto& k : registry()) os << k.name << " = " << k.get(*this) << '\n';
  return os.str();
}

void SimConfig::validate() const {
  try {
    dram.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) throw ConfigError(std::string("config key '") + key + "': " + what);
  };
  require(maa.clock_mhz > 0, "maa.clock_mhz", "must be > 0");
  require(maa.tiles > 0 && maa.tiles <= 256, "maa.tiles", "must be in 1..256");
  require(maa.tile_size > 0, "maa.tile_size", "must be > 0");
  require(maa.registers > 0 && maa.registers <= 256, "maa.registers", "must be in 1..256");
  require(maa.row_table_rows > 0, "maa.row_table_rows", "must be > 0");
  require(maa.row_table_columns > 0, "maa.row_table_columns", "must be > 0");
  require(maa.request_table_size > 0, "maa.request_table_size", "must be > 0");
  require(maa.alu_lanes > 0, "maa.alu_lanes", "must be > 0");
  require(maa.scoreboard_entries > 0, "maa.scoreboard_entries", "must be > 0");
  require(maa.instr_issue_cycles > 0, "maa.instr_issue_cycles", "must be > 0");
  require(maa.fill_per_cycle > 0, "maa.fill_per_cycle", "must be > 0");
  require(maa.response_words_per_cycle > 0, "maa.response_words_per_cycle", "must be > 0");
  require(maa.rng_pairs_per_cycle > 0, "maa.rng_pairs_per_cycle", "must be > 0");
  require(maa.rng_cursor_reg + 1 < maa.registers, "maa.rng_cursor_reg",
          "needs two registers below maa.registers");
  require(maa.deadlock_cycles > 0, "maa.deadlock_cycles", "must be > 0");
  require(llc.ways > 0, "llc.ways", "must be > 0");
  require(llc.size_bytes >= std::uint64_t{llc.ways} * dram.cacheline_bytes &&
              llc.size_bytes % (std::uint64_t{llc.ways} * dram.cacheline_bytes) == 0,
          "llc.size_bytes", "must be a multiple of ways x cacheline");
  require(llc.mshrs > 0, "llc.mshrs", "must be > 0");
  require(baseline.cores > 0, "baseline.cores", "must be > 0");
  require(baseline.max_outstanding > 0, "baseline.max_outstanding", "must be > 0");
}

}  // namespace dxsim
