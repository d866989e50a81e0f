#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dxsim/engine/unit.hpp"

namespace dxsim::compute {

/// Resume point of a truncated range expansion. `resume_j` counts the inner
/// values of row `resume_i` already emitted (an ordinal, not a value), so
/// {0, 0} always means "start from scratch".
struct RangeCursor {
  std::uint64_t resume_i = 0;
  std::uint64_t resume_j = 0;
  friend bool operator==(const RangeCursor&, const RangeCursor&) = default;
};

/// Number of j in [lo, hi) stepping by `stride`; empty when lo >= hi.
std::uint64_t range_length(std::int64_t lo, std::int64_t hi, std::int64_t stride);

struct RangeOutput {
  std::vector<std::uint32_t> outer;
  std::vector<std::int64_t> inner;
  /// Set when the expansion stopped at `capacity` with pairs left over.
  std::optional<RangeCursor> cursor;
};

/// Flattens rows i (with cond[i] true, or all rows when `cond` is empty) of
/// [min[i], max[i]) step `stride` into (i, j) pairs in lexicographic order,
/// starting at `start`, stopping after `capacity` pairs.
RangeOutput range_fuse(std::span<const std::int64_t> min, std::span<const std::int64_t> max,
                       std::span<const std::uint8_t> cond, std::int64_t stride,
                       RangeCursor start, std::size_t capacity);

/// RNG: `rng_pairs_per_cycle` steps per cycle, resuming from the job cursor.
/// Output sizes are only known at retire.
class RangeFuserUnit final : public engine::Unit {
 public:
  using Unit::Unit;
  std::string describe() const override;

 protected:
  void begin() override;
  bool advance() override;

 private:
  std::uint64_t i_ = 0;
  std::uint64_t k_ = 0;
  std::uint32_t emitted_ = 0;
};

}  // namespace dxsim::compute
