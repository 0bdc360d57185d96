#include "shabound/fp_matrix.hpp"

#include <stdexcept>
#include <utility>

#include "shabound/errors.hpp"

namespace shabound {

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

std::uint32_t inverse_mod_p(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("not invertible mod p");
  return reduce(t, p);
}

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (p < 2) throw ValidationError("p", "modulus must be at least 2");
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows,
                             std::size_t cols) {
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ValidationError("rows", "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  entries_.at(r * cols_ + c) = reduce(value, p_);
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = at(r, c);
  t.row_labels = col_labels;
  t.col_labels = row_labels;
  return t;
}

FpVector FpMatrix::apply(const FpVector& v) const {
  if (v.size() != cols_) throw ValidationError("v", "vector length does not match column count");
  FpVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = (acc + std::uint64_t{at(r, c)} * v[c]) % p_;
    out[r] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

EchelonForm rref(const FpMatrix& m) {
  FpMatrix a = m;
  const std::uint32_t p = a.p();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  auto& e = a.entries_;
  const std::size_t cols = a.cols();
  for (std::size_t col = 0; col < cols && row < a.rows(); ++col) {
    std::size_t pr = row;
    while (pr < a.rows() && e[pr * cols + col] == 0) ++pr;
    if (pr == a.rows()) continue;
    if (pr != row)
      for (std::size_t c = 0; c < cols; ++c) std::swap(e[pr * cols + c], e[row * cols + c]);
    const std::uint64_t inv = inverse_mod_p(e[row * cols + col], p);
    for (std::size_t c = 0; c < cols; ++c) e[row * cols + c] = static_cast<std::uint32_t>(e[row * cols + c] * inv % p);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      const std::uint64_t f = e[r * cols + col];
      if (f == 0) continue;
      for (std::size_t c = 0; c < cols; ++c)
        e[r * cols + c] = static_cast<std::uint32_t>((e[r * cols + c] + (p - f) * e[row * cols + c]) % p);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const FpMatrix& m) { return rref(m).pivots.size(); }

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
  const auto ech = rref(m);
  const std::uint32_t p = m.p();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<FpVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FpVector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      const std::uint32_t entry = ech.matrix.at(i, free);
      v[ech.pivots[i]] = entry == 0 ? 0 : p - entry;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace shabound
