#include "ttpybo/matrix.hpp"

namespace ttpybo {

CycMatrix::CycMatrix(std::size_t rows, std::size_t cols, int modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, CycNum(modulus)) {}

CycMatrix CycMatrix::identity(std::size_t n, int modulus) {
  CycMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CycNum(modulus, 1L);
  return m;
}

CycMatrix CycMatrix::operator*(const CycMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ValidationError("matrix shape mismatch in product");
  CycMatrix out(rows_, rhs.cols_, compatible_modulus(modulus_, rhs.modulus_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const CycNum& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const CycNum& b = rhs.at(k, j);
        if (!b.is_zero()) out.at(i, j) += a * b;
      }
    }
  return out;
}

CycMatrix CycMatrix::operator+(const CycMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ValidationError("matrix shape mismatch");
  CycMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  out.modulus_ = compatible_modulus(modulus_, rhs.modulus_);
  return out;
}

CycMatrix CycMatrix::operator-(const CycMatrix& rhs) const { return *this + rhs.scaled(CycNum(1, -1L)); }

CycMatrix CycMatrix::scaled(const CycNum& c) const {
  CycMatrix out = *this;
  for (auto& x : out.data_)
    if (!x.is_zero()) x *= c;
  out.modulus_ = compatible_modulus(modulus_, c.modulus());
  return out;
}

bool CycMatrix::operator==(const CycMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!(data_[i] == rhs.data_[i])) return false;
  return true;
}

std::size_t CycMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& x : data_) n += !x.is_zero();
  return n;
}

std::size_t CycMatrix::rank() const {
  std::vector<CycNum> a = data_;
  auto A = [&](std::size_t r, std::size_t c) -> CycNum& { return a[r * cols_ + c]; };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t piv = rank;
    while (piv < rows_ && A(piv, c).is_zero()) ++piv;
    if (piv == rows_) continue;
    if (piv != rank)
      for (std::size_t j = c; j < cols_; ++j) std::swap(A(piv, j), A(rank, j));
    CycNum inv = A(rank, c).inverse();
    for (std::size_t j = c; j < cols_; ++j)
      if (!A(rank, j).is_zero()) A(rank, j) *= inv;
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      if (A(r, c).is_zero()) continue;
      CycNum f = A(r, c);
      for (std::size_t j = c; j < cols_; ++j)
        if (!A(rank, j).is_zero()) A(r, j) -= f * A(rank, j);
    }
    ++rank;
  }
  return rank;
}

CycNum CycMatrix::determinant() const {
  if (rows_ != cols_) throw ValidationError("determinant of a non-square matrix");
  std::vector<CycNum> a = data_;
  const std::size_t n = rows_;
  auto A = [&](std::size_t r, std::size_t c) -> CycNum& { return a[r * n + c]; };
  CycNum det(modulus_, 1L);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && A(piv, c).is_zero()) ++piv;
    if (piv == n) return CycNum(modulus_);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(c, j));
      det = -det;
    }
    det *= A(c, c);
    CycNum inv = A(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (A(r, c).is_zero()) continue;
      CycNum f = A(r, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!A(c, j).is_zero()) A(r, j) -= f * A(c, j);
    }
  }
  return det;
}

CycMatrix kron(const CycMatrix& a, const CycMatrix& b) {
  CycMatrix out(a.rows() * b.rows(), a.cols() * b.cols(),
                compatible_modulus(a.modulus(), b.modulus()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b.at(k, l).is_zero()) out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    }
  return out;
}

}  // namespace ttpybo
