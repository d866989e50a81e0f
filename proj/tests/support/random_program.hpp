#pragma once

#include <cstdint>
#include <random>

#include "dxsim/isa/program.hpp"
#include "dxsim/memory_image.hpp"
#include "dxsim/sim_config.hpp"

namespace dxsim::testing {

struct RandomProgram {
  isa::Program program;
  MemoryImage image;
};

/// Machine used for the randomized corpus: default timing, small tiles so
/// that RNG truncation and resume actually happen.
SimConfig corpus_config();

/// A random straight-line program over every opcode, with duplicate-heavy
/// index arrays and random condition tiles. The result always runs to
/// completion on the oracle (candidates that do not are regenerated).
RandomProgram random_program(std::mt19937_64& rng, const SimConfig& cfg);

}  // namespace dxsim::testing
