#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "dxsim/engine/unit.hpp"
#include "dxsim/indirect/row_table.hpp"

namespace dxsim::indirect {

/// ILD / IST / IRMW. Three stages run every cycle:
///   fill      fill_per_cycle indices into the Row/Word Tables
///   request   one request per cycle, round-robin over slices with channel
///             varying fastest, then bank group, rank, bank
///   response  response_words_per_cycle words walked from the oldest response
class IndirectUnit final : public engine::Unit {
 public:
  explicit IndirectUnit(engine::UnitEnv env);
  std::string describe() const override;

  const RowTable& table() const { return table_; }

 protected:
  void begin() override;
  bool advance() override;

 private:
  struct Response {
    PendingColumn col;
    bool walked = false;
    std::vector<WordRef> words;
    std::size_t next = 0;
  };
  struct Write {
    Addr line;
    std::uint32_t slice;
    bool hit;
  };

  bool fill_stage();
  bool request_stage();
  bool response_stage();
  void drain(std::uint32_t slice, DrainReason reason, std::optional<std::uint32_t> row_entry);
  Addr line_of(const PendingColumn& c) const;
  std::uint64_t element_of(Addr line, std::uint32_t offset) const;

  RowTable table_;
  std::vector<dram::DramCoord> slice_coord_;
  std::vector<std::uint32_t> order_;
  std::vector<std::deque<PendingColumn>> pending_;
  std::size_t pending_total_ = 0;
  std::size_t rr_ = 0;
  std::deque<Response> responses_;
  std::deque<Write> writes_;
  std::uint32_t fill_ = 0;
  bool final_drained_ = false;
  std::uint64_t outstanding_ = 0;
};

}  // namespace dxsim::indirect
