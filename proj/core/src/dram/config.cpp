#include "dxsim/dram/config.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dxsim::dram {

namespace {

struct FieldName {
  AddrField field;
  const char* name;
};

constexpr FieldName kFieldNames[] = {
    {AddrField::Channel, "ch"}, {AddrField::Rank, "ra"},   {AddrField::BankGroup, "bg"},
    {AddrField::Bank, "ba"},    {AddrField::Row, "ro"},    {AddrField::Column, "co"},
};

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

MappingOrder parse_mapping(const std::string& text) {
  MappingOrder order{};
  std::size_t n = 0;
  std::istringstream in(text);
  std::string tok;
  bool seen[6] = {};
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    const FieldName* match = nullptr;
    for (const auto& f : kFieldNames)
      if (tok == f.name) match = &f;
    if (!match) throw ConfigError("unknown address field '" + tok + "' in mapping '" + text + "'");
    auto idx = static_cast<std::size_t>(match->field);
    if (seen[idx]) throw ConfigError("duplicate address field '" + tok + "' in mapping");
    if (n == order.size()) throw ConfigError("too many fields in mapping '" + text + "'");
    seen[idx] = true;
    order[n++] = match->field;
  }
  if (n != order.size())
    throw ConfigError("mapping '" + text + "' must list all six fields: ch,ra,bg,ba,ro,co");
  return order;
}

std::string format_mapping(const MappingOrder& order) {
  std::string out;
  for (auto f : order) {
    if (!out.empty()) out += ',';
    out += kFieldNames[static_cast<std::size_t>(f)].name;
  }
  return out;
}

void DramConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("dram: ") + what);
  };
  require(channels > 0, "channels must be > 0");
  require(ranks > 0, "ranks must be > 0");
  require(bank_groups > 0, "bank_groups must be > 0");
  require(banks_per_group > 0, "banks_per_group must be > 0");
  require(rows > 0, "rows must be > 0");
  require(columns_per_row > 0, "columns_per_row must be > 0");
  require(cacheline_bytes >= 8 && (cacheline_bytes & (cacheline_bytes - 1)) == 0,
          "cacheline_bytes must be a power of two >= 8");
  require(burst_length >= 2 && burst_length % 2 == 0, "burst_length must be even");
  require(tck > 0, "tck must be > 0");
  require(request_buffer_size > 0, "request_buffer_size must be > 0");
}

}  // namespace dxsim::dram
