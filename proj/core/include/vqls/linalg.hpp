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

#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace vqls {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& message)
      : std::runtime_error(message) {}
};

// Largest |a_ij - b_ij|. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest absolute entry.
double max_abs(const ComplexMatrix& a);

// Matrix/vector dump format. 16-byte header followed by column-major
// (re, im) pairs, all little-endian:
//   bytes 0..3   magic "VQCM"
//   bytes 4..7   uint32 format version (1)
//   bytes 8..11  uint32 rows
//   bytes 12..15 uint32 cols
// Vectors are stored with cols == 1.
inline constexpr char kDumpMagic[4] = {'V', 'Q', 'C', 'M'};
inline constexpr std::uint32_t kDumpVersion = 1;

std::string encode_dump(const ComplexMatrix& m);
ComplexMatrix decode_dump(const std::string& bytes);

void write_dump(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_dump(const std::filesystem::path& path);

// FNV-1a over the dump encoding; used as a reference-matrix fingerprint.
std::uint64_t matrix_hash(const ComplexMatrix& m);

}  // namespace vqls
