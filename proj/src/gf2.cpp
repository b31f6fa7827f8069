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

#include "ktr/gf2.hpp"

#include <string>
#include <utility>

#include "ktr/errors.hpp"

namespace ktr {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void BitMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw DimensionMismatch("bit (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  check(r, c);
  return (data_[r * words_ + c / 64] >> (c % 64)) & 1;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  check(r, c);
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  std::uint64_t& w = data_[r * words_ + c / 64];
  w = value ? (w | bit) : (w & ~bit);
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = get(r, c);
  return v;
}

bool BitMatrix::row_is_zero(std::size_t r) const {
  check(r, 0);
  for (std::size_t w = 0; w < words_; ++w) {
    if (data_[r * words_ + w] != 0) return false;
  }
  return true;
}

void BitMatrix::add_row(std::size_t r_src, std::size_t r_dst) {
  if (r_src >= rows_ || r_dst >= rows_) throw DimensionMismatch("row index out of range");
  const std::uint64_t* src = data_.data() + r_src * words_;
  std::uint64_t* dst = row_ptr(r_dst);
  for (std::size_t w = 0; w < words_; ++w) dst[w] ^= src[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a >= rows_ || b >= rows_) throw DimensionMismatch("row index out of range");
  if (a == b) return;
  for (std::size_t w = 0; w < words_; ++w) std::swap(data_[a * words_ + w], data_[b * words_ + w]);
}

RrefResult rref(BitMatrix m) {
  RrefResult out;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, lead);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != lead && m.get(r, c)) m.add_row(lead, r);
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.matrix = std::move(m);
  return out;
}

}  // namespace ktr
