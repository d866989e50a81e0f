#pragma once

#include <cstdint>
#include <string>

#include "dxsim/engine/unit.hpp"

namespace dxsim::stream {

/// Iteration count of a strided loop over [lo, hi); zero when hi <= lo.
std::uint64_t stream_iterations(std::int64_t lo, std::int64_t hi, std::int64_t stride);

/// SLD / SST. Each cycle packs the next run of iterations that fall in one
/// cacheline into a Request Table entry and sends it to the LLC. A run is only
/// sent once it is closed (the following iteration lands in another line, or
/// the loop ends), so every line owns at most one entry.
class StreamUnit final : public engine::Unit {
 public:
  using Unit::Unit;
  std::string describe() const override;
  std::uint32_t entries() const { return entries_; }

 protected:
  void begin() override { next_ = 0; }
  bool advance() override;

 private:
  std::uint32_t next_ = 0;
  std::uint32_t entries_ = 0;
};

}  // namespace dxsim::stream
