#include "dxsim/frontend/dsl.hpp"

#include <charconv>
#include <optional>
#include <sstream>

#include "dxsim/common.hpp"

namespace dxsim::frontend {

using isa::Instruction;
using isa::Opcode;

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      flush();
    } else if (c == '=') {
      flush();
      out.emplace_back("=");
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

struct LineError {
  std::string message;
};

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  bool neg = false;
  if (b != e && *b == '-') {
    neg = true;
    ++b;
  }
  int base = 10;
  if (e - b > 2 && b[0] == '0' && (b[1] == 'x' || b[1] == 'X')) {
    base = 16;
    b += 2;
  }
  std::uint64_t u = 0;
  auto [p, ec] = std::from_chars(b, e, u, base);
  if (ec != std::errc() || p != e || b == e) throw LineError{"expected an integer, got '" + s + "'"};
  v = static_cast<std::int64_t>(neg ? 0 - u : u);
  return v;
}

std::uint8_t operand(const std::string& s, char prefix, const char* what) {
  if (s.size() < 2 || s[0] != prefix)
    throw LineError{std::string("expected ") + what + " '" + prefix + "<k>', got '" + s + "'"};
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v > 255)
    throw LineError{std::string("bad ") + what + " '" + s + "'"};
  return static_cast<std::uint8_t>(v);
}

std::uint8_t tile(const std::string& s) { return operand(s, 't', "tile"); }
std::uint8_t reg(const std::string& s) { return operand(s, 'r', "register"); }

class LineParser {
 public:
  LineParser(std::vector<std::string> toks, isa::Program& prog) : t_(std::move(toks)), prog_(prog) {}

  void run() {
    const std::string& head = t_[0];
    if (head == "array") return array();
    if (head == "init") return init();
    if (head == "warm") return warm();
    if (head == "reg") return setreg();
    if (head == "WAIT") {
      expect_count(2);
      prog_.steps.push_back(isa::Wait{tile(t_[1])});
      return;
    }
    const auto op = isa::parse_opcode(head);
    if (!op) throw LineError{"unknown opcode or directive '" + head + "'"};
    instruction(*op);
  }

 private:
  const std::string& at(std::size_t k) {
    if (k >= t_.size()) throw LineError{"missing operand after '" + t_.back() + "'"};
    return t_[k];
  }
  void expect_count(std::size_t n) {
    if (t_.size() < n) throw LineError{"too few operands for '" + t_[0] + "'"};
    if (t_.size() > n) throw LineError{"unexpected '" + t_[n] + "'"};
  }
  void arrow(std::size_t k, const char* a) {
    if (at(k) != a) throw LineError{std::string("expected '") + a + "', got '" + t_[k] + "'"};
  }
  isa::DType dtype(std::size_t k) {
    auto d = isa::parse_dtype(at(k));
    if (!d) throw LineError{"unknown dtype '" + t_[k] + "'"};
    return *d;
  }
  isa::AluOp aluop(std::size_t k) {
    auto o = isa::parse_alu_op(at(k));
    if (!o) throw LineError{"unknown ALU op '" + t_[k] + "'"};
    return *o;
  }
  isa::ArrayId array_id(std::size_t k) {
    auto a = prog_.find_array(at(k));
    if (!a) throw LineError{"undeclared array '" + t_[k] + "'"};
    return *a;
  }

  void array() {
    expect_count(4);
    if (prog_.find_array(t_[1])) throw LineError{"array '" + t_[1] + "' declared twice"};
    const std::int64_t len = parse_int(t_[3]);
    if (len < 0) throw LineError{"array length must be non-negative"};
    prog_.arrays.push_back({t_[1], dtype(2), static_cast<std::uint64_t>(len)});
  }

  void init() {
    if (t_.size() < 3) throw LineError{"init needs an array and a kind"};
    isa::ArrayInit in;
    in.array = array_id(1);
    if (t_[2] == "zeros" || t_[2] == "iota") {
      expect_count(3);
      in.kind = t_[2] == "zeros" ? isa::ArrayInit::Kind::Zeros : isa::ArrayInit::Kind::Iota;
    } else if (t_[2] == "file") {
      expect_count(4);
      in.kind = isa::ArrayInit::Kind::File;
      in.path = t_[3];
    } else {
      throw LineError{"unknown init kind '" + t_[2] + "'"};
    }
    prog_.inits.push_back(in);
  }

  void warm() {
    expect_count(2);
    prog_.warm.push_back(array_id(1));
  }

  void setreg() {
    expect_count(4);
    if (t_[2] != "=") throw LineError{"expected '=' after register"};
    prog_.steps.push_back(isa::SetReg{reg(t_[1]), parse_int(t_[3])});
  }

  // Consumes an optional trailing "cond t<c>" and checks nothing else follows.
  void tail(Instruction& in, std::size_t k) {
    if (k < t_.size() && t_[k] == "cond") {
      in.tc = tile(at(k + 1));
      k += 2;
    }
    if (k < t_.size()) throw LineError{"unexpected '" + t_[k] + "'"};
  }

  void instruction(Opcode op) {
    Instruction in;
    in.opcode = op;
    std::size_t k = 1;
    switch (op) {
      case Opcode::SLD:
      case Opcode::SST:
        in.dtype = dtype(k++);
        in.base = array_id(k++);
        arrow(k++, op == Opcode::SLD ? "->" : "<-");
        (op == Opcode::SLD ? in.td : in.ts1) = tile(at(k++));
        in.rs1 = reg(at(k++));
        in.rs2 = reg(at(k++));
        in.rs3 = reg(at(k++));
        break;
      case Opcode::ILD:
        in.dtype = dtype(k++);
        in.base = array_id(k++);
        arrow(k++, "->");
        in.td = tile(at(k++));
        in.ts1 = tile(at(k++));
        break;
      case Opcode::IST:
      case Opcode::IRMW:
        in.dtype = dtype(k++);
        if (op == Opcode::IRMW) in.op = aluop(k++);
        in.base = array_id(k++);
        arrow(k++, "<-");
        in.ts1 = tile(at(k++));
        in.ts2 = tile(at(k++));
        break;
      case Opcode::ALUV:
      case Opcode::ALUS:
        in.dtype = dtype(k++);
        in.op = aluop(k++);
        in.td = tile(at(k++));
        arrow(k++, "<-");
        in.ts1 = tile(at(k++));
        if (op == Opcode::ALUV)
          in.ts2 = tile(at(k++));
        else
          in.rs1 = reg(at(k++));
        break;
      case Opcode::RNG:
        in.td = tile(at(k++));
        in.td2 = tile(at(k++));
        arrow(k++, "<-");
        in.ts1 = tile(at(k++));
        in.ts2 = tile(at(k++));
        in.rs1 = reg(at(k++));
        break;
    }
    tail(in, k);
    prog_.steps.push_back(in);
  }

  std::vector<std::string> t_;
  isa::Program& prog_;
};

std::string tname(const std::optional<isa::TileId>& t) { return "t" + std::to_string(*t); }
std::string rname(const std::optional<isa::RegId>& r) { return "r" + std::to_string(*r); }

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    try {
      LineParser(std::move(toks), out.program).run();
    } catch (const LineError& e) {
      out.diagnostics.push_back({line_no, e.message});
    } catch (const Error& e) {
      out.diagnostics.push_back({line_no, e.what()});
    }
  }
  return out;
}

isa::Program parse_or_throw(std::string_view text, const std::string& source) {
  ParseResult r = parse(text);
  if (r.ok()) return std::move(r.program);
  std::string msg;
  for (const auto& d : r.diagnostics) {
    if (!msg.empty()) msg += '\n';
    msg += source + ":" + std::to_string(d.line) + ": " + d.message;
  }
  throw ParseError(msg);
}

std::string print(const Instruction& in, const isa::Program& prog) {
  std::ostringstream os;
  auto base = [&] { return prog.arrays.at(*in.base).name; };
  os << isa::name(in.opcode);
  if (in.dtype) os << ' ' << isa::name(*in.dtype);
  switch (in.opcode) {
    case Opcode::SLD:
      os << ' ' << base() << " -> " << tname(in.td) << ", " << rname(in.rs1) << ", "
         << rname(in.rs2) << ", " << rname(in.rs3);
      break;
    case Opcode::SST:
      os << ' ' << base() << " <- " << tname(in.ts1) << ", " << rname(in.rs1) << ", "
         << rname(in.rs2) << ", " << rname(in.rs3);
      break;
    case Opcode::ILD: os << ' ' << base() << " -> " << tname(in.td) << ", " << tname(in.ts1); break;
    case Opcode::IST: os << ' ' << base() << " <- " << tname(in.ts1) << ", " << tname(in.ts2); break;
    case Opcode::IRMW:
      os << ' ' << isa::name(*in.op) << ' ' << base() << " <- " << tname(in.ts1) << ", "
         << tname(in.ts2);
      break;
    case Opcode::ALUV:
      os << ' ' << isa::name(*in.op) << ' ' << tname(in.td) << " <- " << tname(in.ts1) << ", "
         << tname(in.ts2);
      break;
    case Opcode::ALUS:
      os << ' ' << isa::name(*in.op) << ' ' << tname(in.td) << " <- " << tname(in.ts1) << ", "
         << rname(in.rs1);
      break;
    case Opcode::RNG:
      os << ' ' << tname(in.td) << ", " << tname(in.td2) << " <- " << tname(in.ts1) << ", "
         << tname(in.ts2) << ", " << rname(in.rs1);
      break;
  }
  if (in.tc) os << " cond " << tname(in.tc);
  return os.str();
}

std::string print(const isa::Program& prog) {
  std::ostringstream os;
  for (const auto& a : prog.arrays)
    os << "array " << a.name << ' ' << isa::name(a.dtype) << ' ' << a.length << '\n';
  for (const auto& i : prog.inits) {
    os << "init " << prog.arrays.at(i.array).name << ' ';
    switch (i.kind) {
      case isa::ArrayInit::Kind::Zeros: os << "zeros"; break;
      case isa::ArrayInit::Kind::Iota: os << "iota"; break;
      case isa::ArrayInit::Kind::File: os << "file " << i.path; break;
    }
    os << '\n';
  }
  for (auto a : prog.warm) os << "warm " << prog.arrays.at(a).name << '\n';
  for (const auto& s : prog.steps) {
    if (const auto* in = std::get_if<Instruction>(&s))
      os << print(*in, prog) << '\n';
    else if (const auto* r = std::get_if<isa::SetReg>(&s))
      os << "reg r" << int{r->reg} << " = " << r->value << '\n';
    else
      os << "WAIT t" << int{std::get<isa::Wait>(s).tile} << '\n';
  }
  return os.str();
}

}  // namespace dxsim::frontend
