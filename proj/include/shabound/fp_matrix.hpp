#pragma once

// Dense linear algebra over F_p.

#include <cstdint>
#include <string>
#include <vector>

namespace shabound {

using FpVector = std::vector<std::uint32_t>;

struct EchelonForm;

class FpMatrix {
 public:
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);
  /// Entries are reduced mod p; every row must have `cols` entries.
  static FpMatrix from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows,
                            std::size_t cols);

  std::uint32_t p() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint32_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value);
  const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  FpMatrix transpose() const;
  FpVector apply(const FpVector& v) const;

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  friend EchelonForm rref(const FpMatrix& m);
  std::uint32_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> entries_;
};

struct EchelonForm {
  FpMatrix matrix;
  std::vector<std::size_t> pivots;
};

EchelonForm rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);

/// Basis of {v : M v = 0}: one vector per free column in increasing column
/// order, that free coordinate set to 1 and the other free ones to 0.
std::vector<FpVector> kernel_basis(const FpMatrix& m);

std::uint32_t inverse_mod_p(std::uint32_t a, std::uint32_t p);

}  // namespace shabound
