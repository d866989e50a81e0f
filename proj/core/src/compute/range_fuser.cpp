#include "dxsim/compute/range_fuser.hpp"

#include "dxsim/common.hpp"

namespace dxsim::compute {

std::uint64_t range_length(std::int64_t lo, std::int64_t hi, std::int64_t stride) {
  if (stride < 1) throw DispatchError("RNG stride must be >= 1");
  if (lo >= hi) return 0;
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  return (span + static_cast<std::uint64_t>(stride) - 1) / static_cast<std::uint64_t>(stride);
}

RangeOutput range_fuse(std::span<const std::int64_t> min, std::span<const std::int64_t> max,
                       std::span<const std::uint8_t> cond, std::int64_t stride,
                       RangeCursor start, std::size_t capacity) {
  if (min.size() != max.size()) throw DispatchError("RNG min and max tiles differ in size");
  if (!cond.empty() && cond.size() < min.size())
    throw DispatchError("RNG condition tile shorter than range tiles");
  RangeOutput out;
  std::uint64_t i = start.resume_i;
  std::uint64_t k = start.resume_j;
  while (i < min.size()) {
    const bool on = cond.empty() || cond[i];
    const std::uint64_t len = on ? range_length(min[i], max[i], stride) : 0;
    if (k >= len) {
      ++i;
      k = 0;
      continue;
    }
    if (out.outer.size() == capacity) {
      out.cursor = RangeCursor{i, k};
      return out;
    }
    out.outer.push_back(static_cast<std::uint32_t>(i));
    out.inner.push_back(min[i] + static_cast<std::int64_t>(k) * stride);
    ++k;
  }
  return out;
}

}  // namespace dxsim::compute

namespace dxsim::compute {

void RangeFuserUnit::begin() {
  i_ = job_->cursor_i;
  k_ = job_->cursor_j;
  emitted_ = 0;
}

std::string RangeFuserUnit::describe() const {
  return "rng i=" + std::to_string(i_) + "/" + std::to_string(job_->count) +
         " emitted=" + std::to_string(emitted_);
}

bool RangeFuserUnit::advance() {
  const isa::Instruction& in = job_->instr;
  spd::Scratchpad& spd = *env_.spd;
  const isa::DType bound = spd.tile(*in.ts1).dtype;
  const std::uint32_t capacity = spd.tile_size();
  const auto stride = static_cast<std::int64_t>(job_->r1);
  bool progressed = false;

  auto finish = [&](std::uint64_t ci, std::uint64_t cj) {
    job_->sizes = {{*in.td, emitted_}, {*in.td2, emitted_}};
    job_->cursor_out = {ci, cj};
    done_ = true;
  };

  for (std::uint32_t step = 0; step < env_.cfg->maa.rng_pairs_per_cycle; ++step) {
    if (i_ >= job_->count) {
      finish(0, 0);
      return true;
    }
    const auto i = static_cast<std::uint32_t>(i_);
    if (in.tc && !spd.finished(*in.tc, i)) break;
    bool on = true;
    if (in.tc) on = isa::truthy(spd.read_word(*in.tc, i), spd.tile(*in.tc).dtype);
    std::uint64_t len = 0;
    std::int64_t lo = 0;
    if (on) {
      if (!spd.finished(*in.ts1, i) || !spd.finished(*in.ts2, i)) break;
      lo = isa::as_int(spd.read_word(*in.ts1, i), bound);
      len = range_length(lo, isa::as_int(spd.read_word(*in.ts2, i), bound), stride);
    }
    progressed = true;
    if (k_ >= len) {
      ++i_;
      k_ = 0;
      continue;
    }
    if (emitted_ == capacity) {
      finish(i_, k_);
      return true;
    }
    spd.write_word(*in.td, emitted_, i);
    spd.write_word(*in.td2, emitted_,
                   isa::from_int(lo + static_cast<std::int64_t>(k_) * stride, bound));
    ++emitted_;
    ++k_;
  }
  if (i_ >= job_->count) finish(0, 0);
  return progressed || done_;
}

}  // namespace dxsim::compute
