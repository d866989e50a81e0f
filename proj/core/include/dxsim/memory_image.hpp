#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dxsim/isa/program.hpp"
#include "dxsim/isa/types.hpp"

namespace dxsim {

/// Contents of one declared array, little-endian.
struct ArrayData {
  std::string name;
  isa::DType dtype = isa::DType::U32;
  std::vector<std::uint8_t> bytes;

  std::uint64_t length() const { return bytes.size() / isa::width(dtype); }
  isa::Word get(std::uint64_t i) const;
  void set(std::uint64_t i, isa::Word w);

  friend bool operator==(const ArrayData&, const ArrayData&) = default;
};

/// The functional memory: one ArrayData per program array, in declaration
/// order.
///
/// File layout (little-endian):
///   "DXIM" u32 version(1) u32 count
///   count x { u16 name_len, name bytes, u8 dtype, u64 length, length*width bytes }
class MemoryImage {
 public:
  MemoryImage() = default;

  /// Allocates every declared array and applies the program's initializers.
  /// File initializers are resolved relative to `base_dir`.
  static MemoryImage from_program(const isa::Program& prog,
                                  const std::filesystem::path& base_dir = {});

  static MemoryImage load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::vector<std::uint8_t> serialize() const;

  ArrayData& at(std::size_t k) { return arrays_.at(k); }
  const ArrayData& at(std::size_t k) const { return arrays_.at(k); }
  const ArrayData* find(const std::string& name) const;
  ArrayData* find(const std::string& name);
  std::size_t size() const { return arrays_.size(); }
  void add(ArrayData a) { arrays_.push_back(std::move(a)); }

  friend bool operator==(const MemoryImage&, const MemoryImage&) = default;

 private:
  std::vector<ArrayData> arrays_;
};

}  // namespace dxsim
