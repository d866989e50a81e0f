#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "dxsim/common.hpp"
#include "dxsim/dram/request.hpp"

namespace dxsim {

enum class TraceKind : std::uint8_t { Command, Fill, Drain, Request, Respond, Retire };

enum class DrainReason : std::uint8_t { Capacity, Final };

/// One simulator event. Which fields are meaningful depends on `kind`:
///   Command: cmd, coord, origin, request_id
///   Fill:    iteration, slice, coord, new_column, hit
///   Drain:   slice, rows, columns, reason
///   Request: line, slice, hit, is_write, request_id
///   Respond: line, slice, columns (words walked)
///   Retire:  nothing beyond instr
struct TraceEvent {
  TraceKind kind = TraceKind::Command;
  Tick time = 0;
  std::int64_t instr = -1;

  dram::Command cmd = dram::Command::ACT;
  dram::DramCoord coord;
  dram::Origin origin = dram::Origin::Baseline;
  std::uint64_t request_id = 0;

  std::uint32_t iteration = 0;
  std::uint32_t slice = 0;
  std::uint32_t rows = 0;
  std::uint32_t columns = 0;
  DrainReason reason = DrainReason::Final;
  bool new_column = false;
  bool hit = false;
  bool is_write = false;
  Addr line = 0;
};

std::string to_json(const TraceEvent& e);
TraceEvent trace_event_from_json(const std::string& line);

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void record(const TraceEvent& e) = 0;
};

class VectorTrace final : public TraceSink {
 public:
  void record(const TraceEvent& e) override { events.push_back(e); }
  std::vector<TraceEvent> events;
};

/// Writes one JSON object per line.
class JsonlTraceWriter final : public TraceSink {
 public:
  explicit JsonlTraceWriter(const std::string& path);
  void record(const TraceEvent& e) override;

 private:
  std::ofstream out_;
};

std::vector<TraceEvent> read_trace(const std::string& path);

}  // namespace dxsim
