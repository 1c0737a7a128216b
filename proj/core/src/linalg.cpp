// Copyright 2026 The vqls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqls/linalg.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace vqls {

static_assert(std::endian::native == std::endian::little,
              "dump encoding assumes a little-endian host");

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

namespace {

template <typename T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T get(const std::string& in, std::size_t offset) {
  T value;
  std::memcpy(&value, in.data() + offset, sizeof(T));
  return value;
}

}  // namespace

std::string encode_dump(const ComplexMatrix& m) {
  std::string out;
  out.reserve(16 + 16 * static_cast<std::size_t>(m.size()));
  out.append(kDumpMagic, 4);
  put<std::uint32_t>(out, kDumpVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.rows()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      put<double>(out, m(r, c).real());
      put<double>(out, m(r, c).imag());
    }
  }
  return out;
}

ComplexMatrix decode_dump(const std::string& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kDumpMagic, 4) != 0) {
    throw std::runtime_error("decode_dump: bad magic");
  }
  if (get<std::uint32_t>(bytes, 4) != kDumpVersion) {
    throw std::runtime_error("decode_dump: unsupported version");
  }
  const auto rows = get<std::uint32_t>(bytes, 8);
  const auto cols = get<std::uint32_t>(bytes, 12);
  const std::size_t expected =
      16 + 16 * static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (bytes.size() != expected) {
    throw std::runtime_error("decode_dump: truncated payload");
  }
  ComplexMatrix m(rows, cols);
  std::size_t offset = 16;
  for (std::uint32_t c = 0; c < cols; ++c) {
    for (std::uint32_t r = 0; r < rows; ++r) {
      const double re = get<double>(bytes, offset);
      const double im = get<double>(bytes, offset + 8);
      m(r, c) = Complex(re, im);
      offset += 16;
    }
  }
  return m;
}

void write_dump(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  const std::string bytes = encode_dump(m);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

ComplexMatrix read_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode_dump(ss.str());
}

std::uint64_t matrix_hash(const ComplexMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : encode_dump(m)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace vqls
