#include "panoslam/depth/depth_map.hpp"

#include <cstring>
#include <fstream>

namespace panoslam::depth {

namespace {
constexpr char kMagic[4] = {'P', 'S', 'D', 'G'};

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}
}  // namespace

void save_depth_map(const DenseDepthMap& map, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_depth_map: cannot open " + path);
  os.write(kMagic, 4);
  write_u32(os, static_cast<std::uint32_t>(map.width()));
  write_u32(os, static_cast<std::uint32_t>(map.height()));
  os.write(reinterpret_cast<const char*>(map.depths().data()),
           static_cast<std::streamsize>(map.depths().size() * sizeof(double)));
  const std::size_t n = map.validity().size();
  std::vector<std::uint8_t> bits((n + 7) / 8, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (map.validity()[i]) bits[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  os.write(reinterpret_cast<const char*>(bits.data()),
           static_cast<std::streamsize>(bits.size()));
  if (!os) throw std::runtime_error("save_depth_map: write failed: " + path);
}

DenseDepthMap load_depth_map(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_depth_map: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_depth_map: bad magic in " + path);
  const std::uint32_t w = read_u32(is);
  const std::uint32_t h = read_u32(is);
  if (!is || w == 0 || h == 0 || w > (1u << 16) || h > (1u << 16))
    throw std::runtime_error("load_depth_map: bad dimensions in " + path);
  DenseDepthMap map(static_cast<int>(w), static_cast<int>(h));
  is.read(reinterpret_cast<char*>(map.depths().data()),
          static_cast<std::streamsize>(map.depths().size() * sizeof(double)));
  const std::size_t n = map.validity().size();
  std::vector<std::uint8_t> bits((n + 7) / 8, 0);
  is.read(reinterpret_cast<char*>(bits.data()),
          static_cast<std::streamsize>(bits.size()));
  if (!is) throw std::runtime_error("load_depth_map: truncated file " + path);
  for (std::size_t i = 0; i < n; ++i)
    map.validity()[i] = (bits[i / 8] >> (i % 8)) & 1u;
  return map;
}

std::vector<std::uint8_t> overlap_region(const SparseDepthMap& sparse,
                                         int radius) {
  if (radius < 0) throw std::invalid_argument("overlap_region: radius < 0");
  const int w = sparse.width();
  const int h = sparse.height();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 0);
  const int r2 = radius * radius;
  for (const auto& e : sparse.entries()) {
    for (int dy = -radius; dy <= radius; ++dy) {
      const int y = e.y + dy;
      if (y < 0 || y >= h) continue;
      for (int dx = -radius; dx <= radius; ++dx) {
        if (dx * dx + dy * dy > r2) continue;
        const int x = e.x + dx;
        if (x < 0 || x >= w) continue;
        mask[static_cast<std::size_t>(y) * w + x] = 1;
      }
    }
  }
  return mask;
}

}  // namespace panoslam::depth
