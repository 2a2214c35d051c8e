#pragma once

#include <cassert>
#include <vector>

namespace adiff {

// Dense matrix over a (possibly noncommutative) exact ring. T must provide
// +, * and ==; `zero` is the additive identity used to fill new entries.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& zero) : rows_(rows), cols_(cols), zero_(zero), data_(std::size_t(rows) * cols, zero) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const T& zero() const { return zero_; }
  T& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  Matrix operator*(const Matrix& o) const {
    assert(cols_ == o.rows_);
    Matrix r(rows_, o.cols_, zero_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == zero_) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const T& b = o(k, j);
          if (b == zero_) continue;
          r(i, j) = r(i, j) + a * b;
        }
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] + o.data_[i];
    return r;
  }

  bool isZero() const {
    for (const T& x : data_)
      if (!(x == zero_)) return false;
    return true;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    Matrix<U> r(rows_, cols_, f(zero_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  T zero_{};
  std::vector<T> data_;
};

}  // namespace adiff
