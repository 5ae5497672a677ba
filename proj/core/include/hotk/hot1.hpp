#pragma once

#include <filesystem>

#include "hotk/tensor.hpp"

namespace hotk {

// HOT1 binary tensor format (little endian):
//   bytes 0..3   magic "HOT1"
//   byte  4      order m (2..8)
//   next 4*m     dims as u32
//   next byte    scalar code: 0 real float64, 1 complex float64 (re, im pairs)
//   payload      entries in column-major order, first index fastest
// Writing and re-reading a tensor is bitwise lossless.

void write_hot1(const std::filesystem::path& path, const DenseTensor& t);
DenseTensor read_hot1(const std::filesystem::path& path);

}  // namespace hotk
