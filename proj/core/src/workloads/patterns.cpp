#include "dxsim/workloads/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include <fmt/format.h>

#include "dxsim/dram/address_map.hpp"

namespace dxsim::workloads {

std::string describe(const PatternSpec& s) {
  return fmt::format("rbh={:.2f} chi={} bgi={}", s.rbh_target, s.chi ? "on" : "off",
                     s.bgi ? "on" : "off");
}

std::uint64_t allmiss_array_length(const PatternSpec& spec, const dram::DramConfig& cfg,
                                   isa::DType dtype) {
  const std::uint64_t stripe = cfg.capacity_bytes() / cfg.rows;
  return spec.rows_per_bank * stripe / isa::width(dtype);
}

namespace {

struct Access {
  std::uint32_t row;
  std::uint32_t column;
};

// splitmix64 finalizer: word offsets depend on the line, not on the ordering.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Per-bank access list: runs of same-row accesses, rows round-robin between
// runs so every run start is a row miss.
std::vector<Access> bank_sequence(std::uint32_t lines, std::uint32_t rows, double rbh,
                                  std::mt19937_64& rng) {
  const std::uint32_t cols = lines / rows;
  const auto hits = static_cast<std::uint32_t>(std::llround(rbh * lines));
  const std::uint32_t runs = std::max(lines - std::min(hits, lines), rows);

  // Runs per row, then run lengths within a row, both as even as possible.
  std::vector<std::vector<std::vector<std::uint32_t>>> row_runs(rows);
  for (std::uint32_t r = 0; r < rows; ++r) {
    const std::uint32_t k = runs / rows + (r < runs % rows ? 1 : 0);
    std::vector<std::uint32_t> order(cols);
    for (std::uint32_t c = 0; c < cols; ++c) order[c] = c;
    std::shuffle(order.begin(), order.end(), rng);
    std::uint32_t at = 0;
    for (std::uint32_t j = 0; j < k; ++j) {
      const std::uint32_t len = cols / k + (j < cols % k ? 1 : 0);
      row_runs[r].emplace_back(order.begin() + at, order.begin() + at + len);
      at += len;
    }
  }
  std::vector<Access> out;
  out.reserve(lines);
  for (std::size_t round = 0;; ++round) {
    bool any = false;
    for (std::uint32_t r = 0; r < rows; ++r) {
      if (round >= row_runs[r].size()) continue;
      any = true;
      for (std::uint32_t c : row_runs[r][round]) out.push_back({r, c});
    }
    if (!any) break;
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> gen_allmiss(const PatternSpec& spec, const dram::DramConfig& cfg,
                                       isa::DType dtype) {
  if (spec.rbh_target < 0 || spec.rbh_target > 1)
    throw ConfigError("rbh_target must lie in [0, 1]");
  if (spec.rows_per_bank == 0 || spec.rows_per_bank > cfg.rows)
    throw ConfigError("rows_per_bank must lie in [1, dram.rows]");
  const std::uint32_t banks = cfg.total_banks();
  if (spec.unique_indices == 0 || spec.unique_indices % (std::uint64_t{banks} * spec.rows_per_bank))
    throw ConfigError(fmt::format(
        "unique_indices ({}) must be a positive multiple of banks x rows_per_bank ({})",
        spec.unique_indices, std::uint64_t{banks} * spec.rows_per_bank));
  const auto per_bank = static_cast<std::uint32_t>(spec.unique_indices / banks);
  if (per_bank / spec.rows_per_bank > cfg.columns_per_row)
    throw ConfigError(fmt::format(
        "unique_indices needs {} columns per row but a row has only {}",
        per_bank / spec.rows_per_bank, cfg.columns_per_row));
  if (spec.chi_run == 0 || spec.bgi_run == 0) throw ConfigError("chi_run and bgi_run must be positive");

  std::mt19937_64 rng(spec.seed);
  const dram::AddressMapper mapper(cfg);
  const std::uint32_t words = cfg.cacheline_bytes / isa::width(dtype);

  // bank index -> remaining accesses, in issue order
  std::vector<std::deque<Access>> per_bank_seq(banks);
  for (std::uint32_t b = 0; b < banks; ++b) {
    auto seq = bank_sequence(per_bank, spec.rows_per_bank, spec.rbh_target, rng);
    per_bank_seq[b].assign(seq.begin(), seq.end());
  }

  const std::uint32_t per_bg = cfg.banks_per_group * cfg.ranks;
  auto bank_of = [&](std::uint32_t ch, std::uint32_t bg, std::uint32_t k) {
    dram::DramCoord c;
    c.channel = ch;
    c.bank_group = bg;
    c.rank = k / cfg.banks_per_group;
    c.bank = k % cfg.banks_per_group;
    return c;
  };

  // Channel streams: bank groups alternate (bgi) or come in bgi_run blocks;
  // banks inside a bank group always round-robin.
  std::vector<std::vector<dram::DramCoord>> channel_stream(cfg.channels);
  for (std::uint32_t ch = 0; ch < cfg.channels; ++ch) {
    const std::uint64_t total = std::uint64_t{per_bank} * per_bg * cfg.bank_groups;
    std::vector<std::uint32_t> bank_rr(cfg.bank_groups, 0);
    std::vector<std::uint64_t> bg_left(cfg.bank_groups, std::uint64_t{per_bank} * per_bg);
    std::uint32_t bg = 0;
    std::uint32_t in_block = 0;
    for (std::uint64_t n = 0; n < total; ++n) {
      while (bg_left[bg] == 0) {
        bg = (bg + 1) % cfg.bank_groups;
        in_block = 0;
      }
      channel_stream[ch].push_back(bank_of(ch, bg, bank_rr[bg]));
      bank_rr[bg] = (bank_rr[bg] + 1) % per_bg;
      --bg_left[bg];
      ++in_block;
      if (spec.bgi || in_block == spec.bgi_run) {
        bg = (bg + 1) % cfg.bank_groups;
        in_block = 0;
      }
    }
  }

  std::vector<std::uint64_t> out;
  out.reserve(spec.unique_indices);
  std::vector<std::size_t> pos(cfg.channels, 0);
  std::uint32_t ch = 0;
  std::uint32_t in_block = 0;
  while (out.size() < spec.unique_indices) {
    while (pos[ch] == channel_stream[ch].size()) {
      ch = (ch + 1) % cfg.channels;
      in_block = 0;
    }
    dram::DramCoord c = channel_stream[ch][pos[ch]++];
    auto& q = per_bank_seq[mapper.bank_index(c)];
    const Access a = q.front();
    q.pop_front();
    c.row = a.row;
    c.column = a.column;
    const Addr line = mapper.compose(c);
    const std::uint32_t wo = static_cast<std::uint32_t>(mix(spec.seed ^ line) % words);
    out.push_back(line / isa::width(dtype) + wo);
    ++in_block;
    if (spec.chi || in_block == spec.chi_run) {
      ch = (ch + 1) % cfg.channels;
      in_block = 0;
    }
  }
  return out;
}

}  // namespace dxsim::workloads
