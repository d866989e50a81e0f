#include "dxsim/memory_image.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

#include "dxsim/common.hpp"

namespace dxsim {

isa::Word ArrayData::get(std::uint64_t i) const {
  const std::uint32_t w = isa::width(dtype);
  isa::Word v = 0;
  for (std::uint32_t b = 0; b < w; ++b) v |= isa::Word{bytes[i * w + b]} << (8 * b);
  return v;
}

void ArrayData::set(std::uint64_t i, isa::Word v) {
  const std::uint32_t w = isa::width(dtype);
  for (std::uint32_t b = 0; b < w; ++b) bytes[i * w + b] = static_cast<std::uint8_t>(v >> (8 * b));
}

namespace {

constexpr char kMagic[4] = {'D', 'X', 'I', 'M'};

template <typename T>
void put(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t b = 0; b < sizeof(T); ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

class Reader {
 public:
  Reader(const std::vector<std::uint8_t>& data, std::string what)
      : data_(data), what_(std::move(what)) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T v = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) v |= static_cast<T>(T{data_[pos_ + b]} << (8 * b));
    pos_ += sizeof(T);
    return v;
  }
  void bytes(void* dst, std::size_t n) {
    need(n);
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > data_.size()) throw ParseError(what_ + ": truncated memory image");
  }
  const std::vector<std::uint8_t>& data_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::vector<std::uint8_t> MemoryImage::serialize() const {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(arrays_.size()));
  for (const auto& a : arrays_) {
    put<std::uint16_t>(out, static_cast<std::uint16_t>(a.name.size()));
    out.insert(out.end(), a.name.begin(), a.name.end());
    put<std::uint8_t>(out, static_cast<std::uint8_t>(a.dtype));
    put<std::uint64_t>(out, a.length());
    out.insert(out.end(), a.bytes.begin(), a.bytes.end());
  }
  return out;
}

void MemoryImage::save(const std::filesystem::path& path) const {
  const auto data = serialize();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

MemoryImage MemoryImage::load(const std::filesystem::path& path) {
  const auto data = read_file(path);
  Reader r(data, path.string());
  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw ParseError(path.string() + ": not a memory image");
  if (const auto version = r.get<std::uint32_t>(); version != 1)
    throw ParseError(path.string() + ": unsupported image version " + std::to_string(version));
  const auto count = r.get<std::uint32_t>();
  MemoryImage img;
  for (std::uint32_t k = 0; k < count; ++k) {
    ArrayData a;
    a.name.resize(r.get<std::uint16_t>());
    r.bytes(a.name.data(), a.name.size());
    const auto dt = r.get<std::uint8_t>();
    if (dt > 5) throw ParseError(path.string() + ": bad dtype code for '" + a.name + "'");
    a.dtype = static_cast<isa::DType>(dt);
    const auto length = r.get<std::uint64_t>();
    a.bytes.resize(length * isa::width(a.dtype));
    r.bytes(a.bytes.data(), a.bytes.size());
    img.arrays_.push_back(std::move(a));
  }
  if (!r.done()) throw ParseError(path.string() + ": trailing bytes in memory image");
  return img;
}

MemoryImage MemoryImage::from_program(const isa::Program& prog,
                                      const std::filesystem::path& base_dir) {
  MemoryImage img;
  for (const auto& decl : prog.arrays) {
    ArrayData a;
    a.name = decl.name;
    a.dtype = decl.dtype;
    a.bytes.assign(decl.length * isa::width(decl.dtype), 0);
    img.arrays_.push_back(std::move(a));
  }
  for (const auto& init : prog.inits) {
    ArrayData& a = img.arrays_.at(init.array);
    switch (init.kind) {
      case isa::ArrayInit::Kind::Zeros: break;
      case isa::ArrayInit::Kind::Iota:
        for (std::uint64_t i = 0; i < a.length(); ++i)
          a.set(i, isa::from_int(static_cast<std::int64_t>(i), a.dtype));
        break;
      case isa::ArrayInit::Kind::File: {
        const auto src = MemoryImage::load(base_dir / init.path);
        const ArrayData* found = src.find(a.name);
        if (!found && src.size() == 1) found = &src.at(0);
        if (!found)
          throw Error("image '" + init.path + "' has no array named '" + a.name + "'");
        if (found->dtype != a.dtype || found->length() != a.length())
          throw Error("image '" + init.path + "' array '" + found->name +
                      "' does not match the declaration of '" + a.name + "'");
        a.bytes = found->bytes;
        break;
      }
    }
  }
  return img;
}

const ArrayData* MemoryImage::find(const std::string& name) const {
  for (const auto& a : arrays_)
    if (a.name == name) return &a;
  return nullptr;
}

ArrayData* MemoryImage::find(const std::string& name) {
  for (auto& a : arrays_)
    if (a.name == name) return &a;
  return nullptr;
}

}  // namespace dxsim
