#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dxsim/isa/program.hpp"

namespace dxsim::frontend {

struct LineDiagnostic {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct ParseResult {
  isa::Program program;
  std::vector<LineDiagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

/// Parses the line-oriented `.dx` text format:
///
///   array <name> <dtype> <len>        init <name> zeros|iota|file <path>
///   warm <name>                       reg r<k> = <int>
///   SLD <dtype> <base> -> t<d>, r<min>, r<max>, r<stride> [cond t<c>]
///   SST <dtype> <base> <- t<s>, r<min>, r<max>, r<stride> [cond t<c>]
///   ILD <dtype> <base> -> t<d>, t<idx> [cond t<c>]
///   IST <dtype> <base> <- t<idx>, t<val> [cond t<c>]
///   IRMW <dtype> <op> <base> <- t<idx>, t<val> [cond t<c>]
///   ALUV <dtype> <op> t<d> <- t<a>, t<b> [cond t<c>]
///   ALUS <dtype> <op> t<d> <- t<a>, r<s> [cond t<c>]
///   RNG t<outer>, t<inner> <- t<min>, t<max>, r<stride> [cond t<c>]
///   WAIT t<k>
///
/// `#` starts a comment. Every bad line yields one diagnostic.
ParseResult parse(std::string_view text);

/// Throws ParseError listing every diagnostic as "<source>:<line>: <msg>".
isa::Program parse_or_throw(std::string_view text, const std::string& source = "<input>");

/// Canonical text; parse(print(p)) reproduces p.
std::string print(const isa::Program& prog);

std::string print(const isa::Instruction& in, const isa::Program& prog);

}  // namespace dxsim::frontend
