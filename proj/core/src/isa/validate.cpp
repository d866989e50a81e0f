#include "dxsim/isa/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dxsim::isa {

std::optional<ArrayId> Program::find_array(const std::string& name) const {
  for (std::size_t k = 0; k < arrays.size(); ++k)
    if (arrays[k].name == name) return static_cast<ArrayId>(k);
  return std::nullopt;
}

std::size_t Program::instruction_count() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += std::holds_alternative<Instruction>(s);
  return n;
}

namespace {

std::string tile_name(TileId t) { return "t" + std::to_string(t); }

class Validator {
 public:
  Validator(const Program& prog, const ValidationLimits& limits) : prog_(prog), limits_(limits) {}

  std::vector<Diagnostic> run() {
    std::set<std::string> names;
    for (const auto& a : prog_.arrays)
      if (!names.insert(a.name).second) note(0, "array '" + a.name + "' declared twice");
    std::set<ArrayId> initialized;
    for (const auto& init : prog_.inits) {
      if (init.array >= prog_.arrays.size())
        note(0, "init of undeclared array #" + std::to_string(init.array));
      else if (!initialized.insert(init.array).second)
        note(0, "array '" + prog_.arrays[init.array].name + "' initialized twice");
    }
    for (auto w : prog_.warm)
      if (w >= prog_.arrays.size()) note(0, "warm of undeclared array #" + std::to_string(w));

    for (step_ = 0; step_ < prog_.steps.size(); ++step_) {
      const Step& s = prog_.steps[step_];
      if (const auto* i = std::get_if<Instruction>(&s)) {
        instruction(*i);
      } else if (const auto* r = std::get_if<SetReg>(&s)) {
        if (r->reg >= limits_.registers) note(step_, "register r" + std::to_string(r->reg) + " out of range");
      } else if (const auto* w = std::get_if<Wait>(&s)) {
        if (w->tile >= limits_.tiles)
          note(step_, tile_name(w->tile) + " out of range");
        else if (!produced_.count(w->tile))
          note(step_, "WAIT on " + tile_name(w->tile) + " which no instruction produces");
      }
    }
    return std::move(diags_);
  }

 private:
  void note(std::size_t step, std::string msg) { diags_.push_back({step, std::move(msg)}); }

  void read_tile(TileId t, const char* role) {
    if (t >= limits_.tiles) {
      note(step_, std::string(role) + " " + tile_name(t) + " out of range");
      return;
    }
    if (!produced_.count(t))
      note(step_, std::string(role) + " " + tile_name(t) + ": tile read before produce");
  }

  void require_integer_tile(TileId t, const char* role) {
    auto it = produced_.find(t);
    if (it != produced_.end() && is_float(it->second))
      note(step_, std::string(role) + " " + tile_name(t) + " holds " +
                      std::string(name(it->second)) + ", expected an integer dtype");
  }

  void instruction(const Instruction& i) {
    for (const auto& p : operand_problems(i)) note(step_, std::string(name(i.opcode)) + ": " + p);

    if (i.base) {
      if (*i.base >= prog_.arrays.size()) {
        note(step_, "reference to undeclared array #" + std::to_string(*i.base));
      } else if (i.dtype && prog_.arrays[*i.base].dtype != *i.dtype) {
        const auto& a = prog_.arrays[*i.base];
        note(step_, "dtype " + std::string(name(*i.dtype)) + " does not match array '" + a.name +
                        "' (" + std::string(name(a.dtype)) + ")");
      }
    }
    for (auto r : source_registers(i))
      if (r >= limits_.registers) note(step_, "register r" + std::to_string(r) + " out of range");

    if (i.op && i.dtype) {
      if (!op_defined_for(*i.op, *i.dtype))
        note(step_, std::string(name(*i.op)) + " is not defined for " + std::string(name(*i.dtype)));
      if (i.opcode == Opcode::IRMW && !is_rmw_eligible(*i.op))
        note(step_, "IRMW op " + std::string(name(*i.op)) + " is not associative and commutative");
    }

    if (i.ts1) read_tile(*i.ts1, "source");
    if (i.ts2) read_tile(*i.ts2, "source");
    if (i.tc) read_tile(*i.tc, "condition");

    if (is_indirect(i.opcode) && i.ts1) require_integer_tile(*i.ts1, "index tile");
    if (i.opcode == Opcode::RNG) {
      if (i.ts1) require_integer_tile(*i.ts1, "range minimum");
      if (i.ts2) require_integer_tile(*i.ts2, "range maximum");
    }

    for (auto t : destination_tiles(i))
      if (t >= limits_.tiles) note(step_, "destination " + tile_name(t) + " out of range");
    if (i.td && i.td2 && *i.td == *i.td2) note(step_, "RNG outputs must be distinct tiles");
    const auto srcs = source_tiles(i);
    for (auto t : destination_tiles(i))
      if (std::find(srcs.begin(), srcs.end(), t) != srcs.end())
        note(step_, "destination " + tile_name(t) + " is also a source");

    switch (i.opcode) {
      case Opcode::ILD:
      case Opcode::SLD:
        if (i.td && i.dtype) produced_[*i.td] = *i.dtype;
        break;
      case Opcode::ALUV:
      case Opcode::ALUS:
        if (i.td && i.dtype && i.op) produced_[*i.td] = result_dtype(*i.op, *i.dtype);
        break;
      case Opcode::RNG: {
        DType inner = DType::I64;
        if (i.ts1) {
          auto it = produced_.find(*i.ts1);
          if (it != produced_.end() && is_integer(it->second)) inner = it->second;
        }
        if (i.td) produced_[*i.td] = DType::U32;
        if (i.td2) produced_[*i.td2] = inner;
        break;
      }
      default: break;
    }
  }

  const Program& prog_;
  ValidationLimits limits_;
  std::size_t step_ = 0;
  std::map<TileId, DType> produced_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> validate_program(const Program& prog, const ValidationLimits& limits) {
  return Validator(prog, limits).run();
}

}  // namespace dxsim::isa
