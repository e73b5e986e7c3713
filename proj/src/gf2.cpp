#include "q2r/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace q2r {

Gf2Matrix::Gf2Matrix(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * stride_, 0) {}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  Gf2Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool value) {
  auto& w = row_mut(r)[c >> 6];
  auto mask = std::uint64_t{1} << (c & 63);
  w = value ? (w | mask) : (w & ~mask);
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("matrix size mismatch");
  Gf2Matrix out(n_);
  // Row r of the product is the XOR of rhs rows selected by row r of this.
  for (std::size_t r = 0; r < n_; ++r) {
    std::uint64_t* dst = out.row_mut(r);
    const std::uint64_t* sel = row(r);
    for (std::size_t w = 0; w < stride_; ++w) {
      std::uint64_t bits = sel[w];
      while (bits) {
        std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint64_t* src = rhs.row(k);
        for (std::size_t j = 0; j < stride_; ++j) dst[j] ^= src[j];
      }
    }
  }
  return out;
}

Configuration Gf2Matrix::apply(const Configuration& x) const {
  if (x.size() != n_) throw std::invalid_argument("vector size mismatch");
  Configuration y(n_);
  auto xw = x.words();
  for (std::size_t r = 0; r < n_; ++r) {
    std::uint64_t acc = 0;
    const std::uint64_t* rw = row(r);
    for (std::size_t w = 0; w < stride_; ++w) acc ^= rw[w] & xw[w];
    if (std::popcount(acc) & 1) y.flip(static_cast<NodeId>(r));
  }
  return y;
}

}  // namespace q2r
