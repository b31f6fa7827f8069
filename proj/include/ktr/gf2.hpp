// Copyright 2026 The ktr Authors
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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ktr {

using BitVector = std::vector<std::uint8_t>;

/// Dense matrix over GF(2) stored as row-major 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);
  BitVector row(std::size_t r) const;
  bool row_is_zero(std::size_t r) const;

  // Row r_dst ^= row r_src.
  void add_row(std::size_t r_src, std::size_t r_dst);
  void swap_rows(std::size_t a, std::size_t b);

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  void check(std::size_t r, std::size_t c) const;
  std::uint64_t* row_ptr(std::size_t r) { return data_.data() + r * words_; }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

struct RrefResult {
  BitMatrix matrix;
  std::vector<std::size_t> pivots;  // strictly increasing column indices
  std::size_t rank() const noexcept { return pivots.size(); }
};

RrefResult rref(BitMatrix m);

}  // namespace ktr
