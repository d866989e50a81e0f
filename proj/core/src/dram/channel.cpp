#include "dxsim/dram/channel.hpp"

#include <algorithm>

namespace dxsim::dram {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::ACT: return "ACT";
    case Command::PRE: return "PRE";
    case Command::RD: return "RD";
    case Command::WR: return "WR";
  }
  return "?";
}

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::Stream: return "stream";
    case Origin::Indirect: return "indirect";
    case Origin::Baseline: return "baseline";
    case Origin::LlcWriteback: return "llc_writeback";
  }
  return "?";
}

Tick earliest_issue(Command cmd, const DramCoord& coord, const ChannelState& state,
                    const DramConfig& cfg) {
  const BankState& bank = state.banks.at(state.bank_slot(cfg, coord));
  Tick t = 0;
  auto at_least = [&t](std::optional<Tick> base, Tick delta) {
    if (base) t = std::max(t, *base + delta);
  };
  at_least(state.last_command, cfg.tck);

  switch (cmd) {
    case Command::ACT:
      if (bank.open_row)
        throw ProtocolError("ACT to bank with open row " + std::to_string(*bank.open_row) + " at " +
                            to_string(coord));
      at_least(bank.last_pre, cfg.trp);
      break;
    case Command::PRE:
      if (!bank.open_row) throw ProtocolError("PRE to closed bank at " + to_string(coord));
      at_least(bank.last_act, cfg.tras);
      at_least(bank.last_rd_wr, cfg.trtp);
      break;
    case Command::RD:
    case Command::WR: {
      if (!bank.open_row || *bank.open_row != coord.row)
        throw ProtocolError(std::string(to_string(cmd)) + " to row that is not open at " +
                            to_string(coord));
      at_least(bank.last_act, cfg.trcd);
      at_least(state.last_column, cfg.tccd_s);
      at_least(state.last_column_in_group[state.group_slot(cfg, coord)], cfg.tccd_l);
      t = std::max(t, state.data_bus_free);
      break;
    }
  }
  return t;
}

Channel::Channel(const DramConfig& cfg, std::uint32_t id) : cfg_(cfg), id_(id), state_(cfg) {}

void Channel::settle(Tick now) {
  if (now > last_settle_) {
    counters_.occupancy_integral +=
        static_cast<long double>(queue_.size()) * static_cast<long double>(now - last_settle_);
    last_settle_ = now;
  }
}

long double Channel::occupancy_integral_at(Tick now) const {
  long double v = counters_.occupancy_integral;
  if (now > last_settle_)
    v += static_cast<long double>(queue_.size()) * static_cast<long double>(now - last_settle_);
  return v;
}

bool Channel::enqueue(const MemRequest& req) {
  settle(req.arrival);
  if (full()) {
    ++counters_.rejected;
    return false;
  }
  queue_.push_back(req);
  ++counters_.accepted;
  return true;
}

Command Channel::next_command(const MemRequest& r) const {
  const BankState& bank = state_.banks[state_.bank_slot(cfg_, r.coord)];
  if (!bank.open_row) return Command::ACT;
  if (*bank.open_row != r.coord.row) return Command::PRE;
  return r.is_write ? Command::WR : Command::RD;
}

std::optional<IssuedCommand> Channel::step(Tick now) {
  settle(now);

  // First ready: oldest row hit whose column command can go now.
  for (std::size_t i = 0; i < queue_.size(); ++i) {
    const MemRequest& r = queue_[i];
    if (r.arrival >= now) continue;
    const Command cmd = next_command(r);
    if (cmd != Command::RD && cmd != Command::WR) continue;
    if (earliest_issue(cmd, r.coord, state_, cfg_) <= now) return issue(i, cmd, now);
  }

  // Otherwise the oldest request whose row command can go now.
  for (std::size_t i = 0; i < queue_.size(); ++i) {
    const MemRequest& r = queue_[i];
    if (r.arrival >= now) continue;
    const Command cmd = next_command(r);
    if (cmd == Command::RD || cmd == Command::WR) continue;
    if (cmd == Command::PRE) {
      const auto open = state_.banks[state_.bank_slot(cfg_, r.coord)].open_row;
      const bool pending_hit = std::any_of(queue_.begin(), queue_.end(), [&](const MemRequest& o) {
        return o.coord.rank == r.coord.rank && o.coord.bank_group == r.coord.bank_group &&
               o.coord.bank == r.coord.bank && o.coord.row == *open;
      });
      if (pending_hit) continue;
    }
    if (earliest_issue(cmd, r.coord, state_, cfg_) <= now) return issue(i, cmd, now);
  }
  return std::nullopt;
}

IssuedCommand Channel::issue(std::size_t index, Command cmd, Tick now) {
  IssuedCommand out;
  out.cmd = cmd;
  out.at = now;
  out.request = queue_[index];
  out.coord = out.request.coord;

  BankState& bank = state_.banks[state_.bank_slot(cfg_, out.coord)];
  state_.last_command = now;
  switch (cmd) {
    case Command::ACT:
      bank.open_row = out.coord.row;
      bank.last_act = now;
      bank.accessed_since_act = false;
      ++counters_.acts;
      break;
    case Command::PRE:
      bank.open_row.reset();
      bank.last_pre = now;
      ++counters_.pres;
      break;
    case Command::RD:
    case Command::WR:
      out.row_hit = bank.accessed_since_act;
      bank.accessed_since_act = true;
      bank.last_rd_wr = now;
      state_.last_column = now;
      state_.last_column_in_group[state_.group_slot(cfg_, out.coord)] = now;
      state_.data_bus_free = now + cfg_.burst_time();
      out.data_done = now + cfg_.burst_time();
      if (cmd == Command::RD)
        ++counters_.reads;
      else
        ++counters_.writes;
      if (out.row_hit) ++counters_.row_hits;
      counters_.latency_sum += static_cast<long double>(*out.data_done - out.request.arrival);
      queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(index));
      break;
  }
  return out;
}

}  // namespace dxsim::dram
