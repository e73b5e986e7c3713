#pragma once

#include <cstdint>
#include <vector>

#include "q2r/core.hpp"

namespace q2r {

/// Square bit matrix over GF(2) with bit-packed rows.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  explicit Gf2Matrix(std::size_t n);

  static Gf2Matrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1U; }
  void set(std::size_t r, std::size_t c, bool value);
  void toggle(std::size_t r, std::size_t c) { row_mut(r)[c >> 6] ^= std::uint64_t{1} << (c & 63); }

  /// this * rhs
  Gf2Matrix operator*(const Gf2Matrix& rhs) const;
  /// this * x, where x uses the configuration's bit encoding.
  Configuration apply(const Configuration& x) const;

  bool operator==(const Gf2Matrix&) const = default;

 private:
  const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * stride_; }
  std::uint64_t* row_mut(std::size_t r) { return bits_.data() + r * stride_; }

  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace q2r
