#include "dxsim/oracle/counters.hpp"

#include <set>
#include <unordered_set>

namespace dxsim::oracle {

namespace {

// Independent of AddressMapper: peel fields off the line number one radix at
// a time in mapping order.
struct Decoded {
  std::uint64_t bank;
  std::uint64_t row;
};

Decoded decode(Addr line_no, const dram::DramConfig& cfg) {
  std::uint64_t ch = 0, ra = 0, bg = 0, ba = 0, ro = 0;
  for (dram::AddrField f : cfg.mapping) {
    std::uint64_t radix = 1;
    std::uint64_t* slot = nullptr;
    switch (f) {
      case dram::AddrField::Channel: radix = cfg.channels; slot = &ch; break;
      case dram::AddrField::Rank: radix = cfg.ranks; slot = &ra; break;
      case dram::AddrField::BankGroup: radix = cfg.bank_groups; slot = &bg; break;
      case dram::AddrField::Bank: radix = cfg.banks_per_group; slot = &ba; break;
      case dram::AddrField::Row: radix = cfg.rows; slot = &ro; break;
      case dram::AddrField::Column: radix = cfg.columns_per_row; break;
    }
    if (slot) *slot = line_no % radix;
    line_no /= radix;
  }
  const std::uint64_t bank =
      ((ch * cfg.ranks + ra) * cfg.bank_groups + bg) * cfg.banks_per_group + ba;
  return {bank, ro};
}

}  // namespace

LineCount count_unique_lines(std::span<const std::uint64_t> indices, Addr base, isa::DType dtype,
                             const dram::DramConfig& cfg) {
  std::unordered_set<Addr> lines;
  std::map<std::uint32_t, std::set<std::uint64_t>> rows;
  for (std::uint64_t idx : indices) {
    const Addr line_no = (base + idx * isa::width(dtype)) / cfg.cacheline_bytes;
    if (!lines.insert(line_no).second) continue;
    const Decoded d = decode(line_no, cfg);
    rows[static_cast<std::uint32_t>(d.bank)].insert(d.row);
  }
  LineCount out;
  out.lines = lines.size();
  for (auto& [bank, set] : rows) out.rows_per_bank[bank] = set.size();
  return out;
}

std::vector<std::pair<std::uint32_t, std::int64_t>> enumerate_ranges(
    std::span<const std::int64_t> min, std::span<const std::int64_t> max,
    std::span<const std::uint8_t> cond, std::int64_t stride) {
  std::vector<std::pair<std::uint32_t, std::int64_t>> out;
  for (std::size_t i = 0; i < min.size(); ++i) {
    if (!cond.empty() && !cond[i]) continue;
    for (std::int64_t j = min[i]; j < max[i]; j += stride)
      out.emplace_back(static_cast<std::uint32_t>(i), j);
  }
  return out;
}

}  // namespace dxsim::oracle
