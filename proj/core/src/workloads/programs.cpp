#include "dxsim/workloads/programs.hpp"

#include <algorithm>
#include <random>

#include "dxsim/engine/engine.hpp"

namespace dxsim::workloads {

using isa::DType;
using isa::Instruction;
using isa::Opcode;

std::string_view name(Kind k) {
  switch (k) {
    case Kind::GatherSpd: return "gather_spd";
    case Kind::GatherFull: return "gather_full";
    case Kind::Scatter: return "scatter";
    case Kind::Rmw: return "rmw";
    case Kind::Csr: return "csr";
  }
  return "?";
}

std::optional<Kind> parse_kind(std::string_view s) {
  for (Kind k : kAllKinds)
    if (name(k) == s) return k;
  return std::nullopt;
}

std::vector<engine::BaselineAccess> index_trace(const std::vector<std::uint64_t>& indices,
                                                const engine::ArrayInfo& array,
                                                std::uint32_t line_bytes) {
  std::vector<engine::BaselineAccess> out;
  out.reserve(indices.size());
  for (std::uint64_t i : indices) {
    const Addr a = array.address_of(i);
    out.push_back({a - a % line_bytes, false});
  }
  return out;
}

namespace {

Instruction sld(DType t, isa::ArrayId base, isa::TileId td) {
  Instruction in;
  in.opcode = Opcode::SLD;
  in.dtype = t;
  in.base = base;
  in.td = td;
  in.rs1 = 0;
  in.rs2 = 1;
  in.rs3 = 2;
  return in;
}

Instruction sst(DType t, isa::ArrayId base, isa::TileId ts) {
  Instruction in = sld(t, base, 0);
  in.opcode = Opcode::SST;
  in.td.reset();
  in.ts1 = ts;
  return in;
}

Instruction indirect(Opcode op, DType t, isa::ArrayId base, isa::TileId idx,
                     std::optional<isa::TileId> td, std::optional<isa::TileId> val) {
  Instruction in;
  in.opcode = op;
  in.dtype = t;
  in.base = base;
  in.ts1 = idx;
  in.td = td;
  in.ts2 = val;
  if (op == Opcode::IRMW) in.op = isa::AluOp::ADD;
  return in;
}

// Streams element positions of `array` in [lo, hi) as line accesses, one per
// line touched.
void stream_lines(std::vector<engine::BaselineAccess>& out, const engine::ArrayInfo& a,
                  std::uint64_t lo, std::uint64_t hi, bool write, std::uint32_t line) {
  Addr last = ~Addr{0};
  for (std::uint64_t i = lo; i < hi; ++i) {
    const Addr l = a.address_of(i) - a.address_of(i) % line;
    if (l != last) out.push_back({l, write});
    last = l;
  }
}

Workload tiled(Kind kind, const WorkloadSpec& spec, const SimConfig& cfg) {
  Workload w;
  isa::Program& p = w.program;
  const DType vt = spec.value_dtype;
  w.indices = gen_allmiss(spec.pattern, cfg.dram, vt);
  const std::uint64_t n = w.indices.size();

  p.arrays.push_back({"A", vt, allmiss_array_length(spec.pattern, cfg.dram, vt)});
  p.arrays.push_back({"B", DType::U32, n});
  const bool has_c = kind != Kind::GatherSpd;
  if (has_c) p.arrays.push_back({"C", vt, n});
  p.inits.push_back({0, isa::ArrayInit::Kind::Iota, {}});
  p.inits.push_back({1, isa::ArrayInit::Kind::File, "B.img"});
  if (has_c)
    p.inits.push_back({2, kind == Kind::GatherFull ? isa::ArrayInit::Kind::Zeros
                                                   : isa::ArrayInit::Kind::Iota,
                       {}});
  if (spec.warm_indices) p.warm.push_back(1);

  const std::uint32_t T = cfg.maa.tile_size;
  p.steps.push_back(isa::SetReg{2, 1});
  std::vector<isa::TileId> last;
  for (std::uint64_t lo = 0, k = 0; lo < n; lo += T, ++k) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + T, n);
    const auto b = static_cast<isa::TileId>((k % 2) * 4);
    const isa::TileId t_idx = b, t_val = b + 1, t_dst = b + 2;
    p.steps.push_back(isa::SetReg{0, static_cast<std::int64_t>(lo)});
    p.steps.push_back(isa::SetReg{1, static_cast<std::int64_t>(hi)});
    p.steps.push_back(sld(DType::U32, 1, t_idx));
    switch (kind) {
      case Kind::GatherSpd:
        p.steps.push_back(indirect(Opcode::ILD, vt, 0, t_idx, t_dst, std::nullopt));
        break;
      case Kind::GatherFull:
        p.steps.push_back(indirect(Opcode::ILD, vt, 0, t_idx, t_dst, std::nullopt));
        p.steps.push_back(sst(vt, 2, t_dst));
        break;
      case Kind::Scatter:
      case Kind::Rmw:
        p.steps.push_back(sld(vt, 2, t_val));
        p.steps.push_back(indirect(kind == Kind::Scatter ? Opcode::IST : Opcode::IRMW, vt, 0,
                                   t_idx, std::nullopt, t_val));
        break;
      case Kind::Csr: break;
    }
    last.push_back(kind == Kind::Scatter || kind == Kind::Rmw ? t_val : t_dst);
  }
  const std::size_t keep = std::min<std::size_t>(2, last.size());
  for (std::size_t k = last.size() - keep; k < last.size(); ++k) p.steps.push_back(isa::Wait{last[k]});

  w.image = MemoryImage::from_program(
      [&] {
        isa::Program q = p;
        q.inits.erase(q.inits.begin() + 1);
        return q;
      }());
  ArrayData& B = w.image.at(1);
  for (std::uint64_t i = 0; i < n; ++i) B.set(i, w.indices[i]);

  const auto arrays = engine::place_arrays(p, cfg.dram);
  const std::uint32_t line = cfg.dram.cacheline_bytes;
  for (std::uint64_t lo = 0; lo < n; lo += T) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + T, n);
    const std::uint32_t per_line = line / isa::width(vt);
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (i % (line / 4) == 0) stream_lines(w.baseline, arrays[1], i, i + 1, false, line);
      if (kind == Kind::Scatter || kind == Kind::Rmw)
        if (i % per_line == 0) stream_lines(w.baseline, arrays[2], i, i + 1, false, line);
      const Addr a = arrays[0].address_of(w.indices[i]);
      if (kind != Kind::Scatter) w.baseline.push_back({a - a % line, false});
      if (kind == Kind::Scatter || kind == Kind::Rmw) w.baseline.push_back({a - a % line, true});
      if (kind == Kind::GatherFull && i % per_line == 0)
        stream_lines(w.baseline, arrays[2], i, i + 1, true, line);
    }
  }
  return w;
}

// CSR SpMV: y[i] += val[j] * x[col[j]] for j in [rowptr[i], rowptr[i+1]).
Workload csr(const WorkloadSpec& spec, const SimConfig& cfg) {
  Workload w;
  isa::Program& p = w.program;
  std::mt19937_64 rng(spec.pattern.seed);
  const std::uint32_t rows = spec.csr_rows;
  if (rows == 0 || rows > cfg.maa.tile_size)
    throw ConfigError("csr_rows must lie in [1, maa.tile_size]");
  const std::uint32_t xlen = rows * 4;
  std::vector<std::uint32_t> rowptr(rows + 1, 0);
  for (std::uint32_t i = 0; i < rows; ++i)
    rowptr[i + 1] = rowptr[i] + static_cast<std::uint32_t>(rng() % (2 * spec.csr_avg_nnz + 1));
  const std::uint32_t nnz = rowptr[rows];

  p.arrays = {{"rowptr", DType::U32, rows + 1ull},
              {"col", DType::U32, std::max(nnz, 1u)},
              {"val", DType::F64, std::max(nnz, 1u)},
              {"x", DType::F64, xlen},
              {"y", DType::F64, rows}};
  p.inits = {{0, isa::ArrayInit::Kind::File, "rowptr.img"},
             {1, isa::ArrayInit::Kind::File, "col.img"},
             {2, isa::ArrayInit::Kind::Iota, {}},
             {3, isa::ArrayInit::Kind::Iota, {}},
             {4, isa::ArrayInit::Kind::Zeros, {}}};
  p.steps.push_back(isa::SetReg{0, 0});
  p.steps.push_back(isa::SetReg{1, rows});
  p.steps.push_back(isa::SetReg{2, 1});
  p.steps.push_back(sld(DType::U32, 0, 0));  // t0 = rowptr[0..rows)
  p.steps.push_back(isa::SetReg{0, 1});
  p.steps.push_back(isa::SetReg{1, rows + 1ll});
  p.steps.push_back(sld(DType::U32, 0, 1));  // t1 = rowptr[1..rows]
  const std::uint32_t T = cfg.maa.tile_size;
  const std::uint32_t rounds = std::max(1u, (nnz + T - 1) / T);
  for (std::uint32_t r = 0; r < rounds; ++r) {
    Instruction rng_in;
    rng_in.opcode = Opcode::RNG;
    rng_in.td = 2;
    rng_in.td2 = 3;
    rng_in.ts1 = 0;
    rng_in.ts2 = 1;
    rng_in.rs1 = 2;
    p.steps.push_back(rng_in);
    p.steps.push_back(indirect(Opcode::ILD, DType::U32, 1, 3, 4, std::nullopt));
    p.steps.push_back(indirect(Opcode::ILD, DType::F64, 2, 3, 5, std::nullopt));
    p.steps.push_back(indirect(Opcode::ILD, DType::F64, 3, 4, 6, std::nullopt));
    Instruction mul;
    mul.opcode = Opcode::ALUV;
    mul.dtype = DType::F64;
    mul.op = isa::AluOp::MUL;
    mul.td = 7;
    mul.ts1 = 5;
    mul.ts2 = 6;
    p.steps.push_back(mul);
    p.steps.push_back(indirect(Opcode::IRMW, DType::F64, 4, 2, std::nullopt, 7));
  }
  p.steps.push_back(isa::Wait{7});

  isa::Program q = p;
  q.inits = {{2, isa::ArrayInit::Kind::Iota, {}}, {3, isa::ArrayInit::Kind::Iota, {}}};
  w.image = MemoryImage::from_program(q);
  for (std::uint32_t i = 0; i <= rows; ++i) w.image.at(0).set(i, rowptr[i]);
  for (std::uint32_t j = 0; j < nnz; ++j) {
    const auto c = static_cast<std::uint32_t>(rng() % xlen);
    w.image.at(1).set(j, c);
    w.indices.push_back(c);
  }

  const auto arrays = engine::place_arrays(p, cfg.dram);
  const std::uint32_t line = cfg.dram.cacheline_bytes;
  for (std::uint32_t i = 0; i < rows; ++i) {
    stream_lines(w.baseline, arrays[0], i, i + 2, false, line);
    for (std::uint32_t j = rowptr[i]; j < rowptr[i + 1]; ++j) {
      stream_lines(w.baseline, arrays[1], j, j + 1, false, line);
      stream_lines(w.baseline, arrays[2], j, j + 1, false, line);
      stream_lines(w.baseline, arrays[3], w.indices[j], w.indices[j] + 1, false, line);
    }
    stream_lines(w.baseline, arrays[4], i, i + 1, true, line);
  }
  return w;
}

}  // namespace

Workload gen_program(Kind kind, const WorkloadSpec& spec, const SimConfig& cfg) {
  return kind == Kind::Csr ? csr(spec, cfg) : tiled(kind, spec, cfg);
}

}  // namespace dxsim::workloads
