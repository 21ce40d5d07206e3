#pragma once

// Dense matrices over a single cyclotomic field, with exact elimination.

#include <cstddef>
#include <vector>

#include "ttpybo/cyclo.hpp"

namespace ttpybo {

class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(std::size_t rows, std::size_t cols, int modulus);

  static CycMatrix identity(std::size_t n, int modulus);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int modulus() const { return modulus_; }

  CycNum& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycNum& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  CycMatrix operator*(const CycMatrix& rhs) const;
  CycMatrix operator+(const CycMatrix& rhs) const;
  CycMatrix operator-(const CycMatrix& rhs) const;
  CycMatrix scaled(const CycNum& c) const;
  bool operator==(const CycMatrix& rhs) const;

  // Number of nonzero entries.
  std::size_t nnz() const;

  std::size_t rank() const;
  std::size_t nullity() const { return cols_ - rank(); }
  CycNum determinant() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int modulus_ = 1;
  std::vector<CycNum> data_;
};

CycMatrix kron(const CycMatrix& a, const CycMatrix& b);

}  // namespace ttpybo
