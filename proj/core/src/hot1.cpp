#include "hotk/hot1.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace hotk {

namespace {

constexpr char kMagic[4] = {'H', 'O', 'T', '1'};

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_f64(std::vector<unsigned char>& out, double d) {
  const auto bits = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_hot1(const std::filesystem::path& path, const DenseTensor& t) {
  if (t.empty()) throw ValueError("write_hot1: empty tensor");
  std::vector<unsigned char> buf;
  buf.reserve(6 + 4 * t.order() + 8 * t.numel() * (t.is_complex() ? 2 : 1));
  buf.insert(buf.end(), kMagic, kMagic + 4);
  buf.push_back(static_cast<unsigned char>(t.order()));
  for (std::size_t d : t.dims()) {
    if (d > 0xffffffffu) throw ValueError("write_hot1: dimension exceeds u32");
    put_u32(buf, static_cast<std::uint32_t>(d));
  }
  buf.push_back(t.is_complex() ? 1 : 0);
  if (t.is_complex()) {
    for (const Complex& v : t.cdata()) {
      put_f64(buf, v.real());
      put_f64(buf, v.imag());
    }
  } else {
    for (double v : t.rdata()) put_f64(buf, v);
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("write_hot1: cannot open " + path.string());
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!os) throw FormatError("write_hot1: short write to " + path.string());
}

DenseTensor read_hot1(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("read_hot1: cannot open " + path.string());
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)),
                                 std::istreambuf_iterator<char>());
  if (buf.size() < 6) throw FormatError("read_hot1: truncated header in " + path.string());
  if (std::memcmp(buf.data(), kMagic, 4) != 0)
    throw FormatError("read_hot1: bad magic in " + path.string());
  const std::size_t m = buf[4];
  if (m < 2 || m > 8) throw FormatError("read_hot1: unsupported order in " + path.string());
  if (buf.size() < 5 + 4 * m + 1) throw FormatError("read_hot1: truncated dims in " + path.string());
  Dims dims(m);
  for (std::size_t i = 0; i < m; ++i) {
    dims[i] = get_u32(buf.data() + 5 + 4 * i);
    if (dims[i] == 0) throw FormatError("read_hot1: zero dimension in " + path.string());
  }
  const unsigned char code = buf[5 + 4 * m];
  if (code > 1) throw FormatError("read_hot1: unknown scalar code in " + path.string());
  const std::size_t n = checked_numel(dims);
  const std::size_t scalars = code == 1 ? 2 * n : n;
  const std::size_t off = 6 + 4 * m;
  if (buf.size() != off + 8 * scalars)
    throw FormatError("read_hot1: payload size mismatch in " + path.string());
  if (code == 1) {
    std::vector<Complex> vals(n);
    for (std::size_t i = 0; i < n; ++i)
      vals[i] = Complex(get_f64(buf.data() + off + 16 * i), get_f64(buf.data() + off + 16 * i + 8));
    return DenseTensor::from_complex(std::move(dims), std::move(vals));
  }
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = get_f64(buf.data() + off + 8 * i);
  return DenseTensor::from_real(std::move(dims), std::move(vals));
}

}  // namespace hotk
