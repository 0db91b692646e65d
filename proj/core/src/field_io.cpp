#include "fracwave/field_io.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "fracwave/error.hpp"

namespace fracwave {
namespace {

constexpr std::array<char, 4> kMagic = {'F', 'W', 'F', '1'};

template <typename T>
void put_le(std::string& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

class Reader {
 public:
  Reader(const std::string& data, std::size_t start, const std::string& path)
      : data_(data), path_(path), pos_(start) {}

  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > data_.size()) {
      throw Error(ErrorCode::IoError, "truncated field file " + path_);
    }
    std::array<unsigned char, sizeof(T)> bytes{};
    std::memcpy(bytes.data(), data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(bytes.begin(), bytes.end());
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
  }

  bool done() const { return pos_ == data_.size(); }

 private:
  const std::string& data_;
  const std::string& path_;
  std::size_t pos_;
};

}  // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move output into place at " + path);
  }
}

void write_field(const std::string& path, const Field& field) {
  const Grid& g = field.grid();
  std::string out;
  out.reserve(64 + field.size() * 16);
  out.append(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.points(a)));
  for (int a = 0; a < g.dim(); ++a) put_le<double>(out, g.extent(a));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(field.domain()));
  for (const cplx& v : field.samples()) {
    put_le<double>(out, v.real());
    put_le<double>(out, v.imag());
  }
  write_file_atomic(path, out);
}

Field read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open field file " + path);
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < 4 || std::memcmp(data.data(), kMagic.data(), 4) != 0) {
    throw Error(ErrorCode::IoError, path + " is not a field file (bad magic)");
  }
  Reader r(data, kMagic.size(), path);
  const auto dim = r.get<std::uint32_t>();
  if (dim < 1 || dim > 3) throw Error(ErrorCode::IoError, "bad dimension in " + path);
  std::vector<int> points(dim);
  std::vector<double> extent(dim);
  for (auto& n : points) {
    const auto v = r.get<std::uint32_t>();
    if (v > (1u << 24)) throw Error(ErrorCode::IoError, "implausible point count in " + path);
    n = static_cast<int>(v);
  }
  for (auto& L : extent) L = r.get<double>();
  const auto tag = r.get<std::uint8_t>();
  if (tag > 1) throw Error(ErrorCode::IoError, "bad domain tag in " + path);
  Grid grid = [&] {
    try {
      return Grid(static_cast<int>(dim), points, extent);
    } catch (const Error& e) {
      throw Error(ErrorCode::IoError, std::string("invalid grid in ") + path + ": " + e.what());
    }
  }();
  std::vector<cplx> samples(grid.size());
  for (auto& v : samples) {
    const double re = r.get<double>();
    const double im = r.get<double>();
    v = {re, im};
  }
  if (!r.done()) throw Error(ErrorCode::IoError, "trailing bytes in " + path);
  return Field(std::move(grid), static_cast<Domain>(tag), std::move(samples));
}

}  // namespace fracwave
