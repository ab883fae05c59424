#include "lpflow/snapshot_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "lpflow/error.hpp"

namespace lpflow {
namespace {

constexpr char kMagic[6] = {'L', 'P', 'S', 'V', '1', '\0'};

template <class T>
void put(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get(std::istream& in, const std::string& path) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) fail(ErrorKind::Io, path + ": truncated LPSV1 file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_lpsv(const std::string& path, double time, std::span<const Field> components) {
  if (components.empty()) fail(ErrorKind::InvalidArgument, "nothing to write");
  const TorusGrid& g = components.front().grid();
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, path + ": cannot open for writing");
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, 2);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n));
  put<double>(out, g.length);
  put<double>(out, time);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(components.size()));
  for (const Field& c : components) {
    if (!(c.grid() == g)) fail(ErrorKind::InvalidArgument, "components live on different grids");
    for (double x : c.physical()) put<double>(out, x);
  }
  if (!out) fail(ErrorKind::Io, path + ": write failed");
}

SnapshotFile read_lpsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, path + ": cannot open");
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    fail(ErrorKind::Io, path + ": bad magic, not an LPSV1 file");
  const auto dim = get<std::uint32_t>(in, path);
  if (dim != 2) fail(ErrorKind::Io, path + ": dimension " + std::to_string(dim) + " unsupported (expected 2)");
  const auto n = get<std::uint32_t>(in, path);
  const auto length = get<double>(in, path);
  SnapshotFile f;
  try {
    f.grid = TorusGrid(static_cast<int>(n), length);
  } catch (const Error& e) {
    fail(ErrorKind::Io, path + ": " + e.what());
  }
  f.time = get<double>(in, path);
  const auto count = get<std::uint32_t>(in, path);
  if (count == 0 || count > 16) fail(ErrorKind::Io, path + ": implausible component count");
  for (std::uint32_t c = 0; c < count; ++c) {
    std::vector<double> s(f.grid.points());
    for (auto& x : s) x = get<double>(in, path);
    f.components.push_back(Field::from_physical(f.grid, std::move(s)));
  }
  return f;
}

VecField as_velocity(const SnapshotFile& f) {
  if (f.components.size() != 2) fail(ErrorKind::Io, "snapshot does not hold a two-component velocity");
  return {{f.components[0], f.components[1]}};
}

}  // namespace lpflow
