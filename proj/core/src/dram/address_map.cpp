#include "dxsim/dram/address_map.hpp"

#include <sstream>

namespace dxsim::dram {

std::string to_string(const DramCoord& c) {
  std::ostringstream os;
  os << "(ch=" << c.channel << ", ra=" << c.rank << ", bg=" << c.bank_group << ", ba=" << c.bank
     << ", ro=" << c.row << ", co=" << c.column << ", wo=" << c.word_offset << ")";
  return os.str();
}

AddressMapper::AddressMapper(const DramConfig& cfg)
    : cfg_(cfg),
      line_bytes_(cfg.cacheline_bytes),
      capacity_(cfg.capacity_bytes()),
      ranks_(cfg.ranks),
      bank_groups_(cfg.bank_groups),
      banks_(cfg.banks_per_group) {
  cfg_.validate();
}

std::uint32_t AddressMapper::extent(AddrField f) const {
  switch (f) {
    case AddrField::Channel: return cfg_.channels;
    case AddrField::Rank: return cfg_.ranks;
    case AddrField::BankGroup: return cfg_.bank_groups;
    case AddrField::Bank: return cfg_.banks_per_group;
    case AddrField::Row: return cfg_.rows;
    case AddrField::Column: return cfg_.columns_per_row;
  }
  return 1;
}

DramCoord AddressMapper::map(Addr addr) const {
  if (addr >= capacity_) {
    std::ostringstream os;
    os << "address 0x" << std::hex << addr << " is beyond DRAM capacity 0x" << capacity_;
    throw CapacityError(os.str());
  }
  DramCoord c;
  c.word_offset = static_cast<std::uint32_t>(addr % line_bytes_);
  std::uint64_t rest = addr / line_bytes_;
  for (auto f : cfg_.mapping) {
    const std::uint32_t n = extent(f);
    const auto v = static_cast<std::uint32_t>(rest % n);
    rest /= n;
    switch (f) {
      case AddrField::Channel: c.channel = v; break;
      case AddrField::Rank: c.rank = v; break;
      case AddrField::BankGroup: c.bank_group = v; break;
      case AddrField::Bank: c.bank = v; break;
      case AddrField::Row: c.row = v; break;
      case AddrField::Column: c.column = v; break;
    }
  }
  return c;
}

Addr AddressMapper::compose(const DramCoord& c) const {
  std::uint64_t line = 0;
  for (auto it = cfg_.mapping.rbegin(); it != cfg_.mapping.rend(); ++it) {
    std::uint32_t v = 0;
    switch (*it) {
      case AddrField::Channel: v = c.channel; break;
      case AddrField::Rank: v = c.rank; break;
      case AddrField::BankGroup: v = c.bank_group; break;
      case AddrField::Bank: v = c.bank; break;
      case AddrField::Row: v = c.row; break;
      case AddrField::Column: v = c.column; break;
    }
    line = line * extent(*it) + v;
  }
  return line * line_bytes_ + c.word_offset;
}

}  // namespace dxsim::dram
