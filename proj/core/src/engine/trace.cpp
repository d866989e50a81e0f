#include "dxsim/trace.hpp"

#include <json.hpp>

namespace dxsim {

namespace {

using nlohmann::json;

constexpr const char* kKindNames[] = {"cmd", "fill", "drain", "req", "respond", "retire"};

TraceKind kind_from(const std::string& s) {
  for (std::size_t i = 0; i < std::size(kKindNames); ++i)
    if (s == kKindNames[i]) return static_cast<TraceKind>(i);
  throw ParseError("unknown trace event kind '" + s + "'");
}

dram::Command command_from(const std::string& s) {
  for (auto c : {dram::Command::ACT, dram::Command::PRE, dram::Command::RD, dram::Command::WR})
    if (s == dram::to_string(c)) return c;
  throw ParseError("unknown DRAM command '" + s + "'");
}

dram::Origin origin_from(const std::string& s) {
  for (auto o : {dram::Origin::Stream, dram::Origin::Indirect, dram::Origin::Baseline,
                 dram::Origin::LlcWriteback})
    if (s == dram::to_string(o)) return o;
  throw ParseError("unknown request origin '" + s + "'");
}

void put_coord(json& j, const dram::DramCoord& c) {
  j["ch"] = c.channel;
  j["ra"] = c.rank;
  j["bg"] = c.bank_group;
  j["ba"] = c.bank;
  j["ro"] = c.row;
  j["co"] = c.column;
}

dram::DramCoord get_coord(const json& j) {
  dram::DramCoord c;
  c.channel = j.at("ch");
  c.rank = j.at("ra");
  c.bank_group = j.at("bg");
  c.bank = j.at("ba");
  c.row = j.at("ro");
  c.column = j.at("co");
  return c;
}

}  // namespace

std::string to_json(const TraceEvent& e) {
  json j;
  j["ev"] = kKindNames[static_cast<std::size_t>(e.kind)];
  j["t"] = e.time;
  if (e.instr >= 0) j["instr"] = e.instr;
  switch (e.kind) {
    case TraceKind::Command:
      j["cmd"] = dram::to_string(e.cmd);
      put_coord(j, e.coord);
      j["origin"] = dram::to_string(e.origin);
      j["req"] = e.request_id;
      break;
    case TraceKind::Fill:
      j["i"] = e.iteration;
      j["slice"] = e.slice;
      put_coord(j, e.coord);
      j["new_col"] = e.new_column;
      j["h"] = e.hit;
      break;
    case TraceKind::Drain:
      j["slice"] = e.slice;
      j["rows"] = e.rows;
      j["cols"] = e.columns;
      j["reason"] = e.reason == DrainReason::Capacity ? "capacity" : "final";
      break;
    case TraceKind::Request:
      j["line"] = e.line;
      j["slice"] = e.slice;
      j["h"] = e.hit;
      j["write"] = e.is_write;
      j["req"] = e.request_id;
      break;
    case TraceKind::Respond:
      j["line"] = e.line;
      j["slice"] = e.slice;
      j["words"] = e.columns;
      break;
    case TraceKind::Retire:
      break;
  }
  return j.dump();
}

TraceEvent trace_event_from_json(const std::string& line) {
  const json j = json::parse(line);
  TraceEvent e;
  e.kind = kind_from(j.at("ev").get<std::string>());
  e.time = j.at("t");
  e.instr = j.value("instr", std::int64_t{-1});
  switch (e.kind) {
    case TraceKind::Command:
      e.cmd = command_from(j.at("cmd").get<std::string>());
      e.coord = get_coord(j);
      e.origin = origin_from(j.at("origin").get<std::string>());
      e.request_id = j.at("req");
      break;
    case TraceKind::Fill:
      e.iteration = j.at("i");
      e.slice = j.at("slice");
      e.coord = get_coord(j);
      e.new_column = j.at("new_col");
      e.hit = j.at("h");
      break;
    case TraceKind::Drain:
      e.slice = j.at("slice");
      e.rows = j.at("rows");
      e.columns = j.at("cols");
      e.reason = j.at("reason") == "capacity" ? DrainReason::Capacity : DrainReason::Final;
      break;
    case TraceKind::Request:
      e.line = j.at("line");
      e.slice = j.at("slice");
      e.hit = j.at("h");
      e.is_write = j.at("write");
      e.request_id = j.at("req");
      break;
    case TraceKind::Respond:
      e.line = j.at("line");
      e.slice = j.at("slice");
      e.columns = j.at("words");
      break;
    case TraceKind::Retire:
      break;
  }
  return e;
}

JsonlTraceWriter::JsonlTraceWriter(const std::string& path) : out_(path) {
  if (!out_) throw Error("cannot open trace file '" + path + "'");
}

void JsonlTraceWriter::record(const TraceEvent& e) { out_ << to_json(e) << '\n'; }

std::vector<TraceEvent> read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trace file '" + path + "'");
  std::vector<TraceEvent> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(trace_event_from_json(line));
  return out;
}

}  // namespace dxsim
