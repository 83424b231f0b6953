#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "subdivqi/errors.hpp"

namespace subdivqi {

/// Exact rational scalar for mask algebra whose inputs are rational. All
/// intermediates go through 128-bit products; overflow throws rather than
/// wrapping.
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Frac() = default;
  Frac(std::int64_t n) : num(n), den(1) {}
  Frac(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error(ErrorCode::SingularSystem, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw Error(ErrorCode::SingularSystem, "rational overflow");
    return static_cast<std::int64_t>(v);
  }

  friend Frac operator+(const Frac& a, const Frac& b) {
    __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return raw(checked(n), checked(d));
  }
  friend Frac operator-(const Frac& a, const Frac& b) { return a + Frac(-b.num, b.den); }
  friend Frac operator*(const Frac& a, const Frac& b) {
    __int128 n = static_cast<__int128>(a.num) * b.num;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return raw(checked(n), checked(d));
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.num == 0) throw Error(ErrorCode::SingularSystem, "rational division by zero");
    return a * Frac(b.den, b.num);
  }
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

private:
  static Frac raw(std::int64_t n, std::int64_t d) {
    Frac f;
    f.num = n;
    f.den = d;
    if (f.den < 0) {
      f.num = -f.num;
      f.den = -f.den;
    }
    return f;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }
};

struct FracMat {
  int rows = 0;
  int cols = 0;
  std::vector<Frac> data;

  FracMat() = default;
  FracMat(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c) {}

  Frac& operator()(int r, int c) { return data[std::size_t(r) * cols + c]; }
  const Frac& operator()(int r, int c) const { return data[std::size_t(r) * cols + c]; }

  friend FracMat operator*(const FracMat& a, const FracMat& b) {
    if (a.cols != b.rows)
      throw Error(ErrorCode::InvalidMesh, "rational matrix shape mismatch");
    FracMat out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
      for (int k = 0; k < a.cols; ++k) {
        if (a(i, k).num == 0) continue;
        for (int j = 0; j < b.cols; ++j) {
          if (b(k, j).num == 0) continue;
          out(i, j) = out(i, j) + a(i, k) * b(k, j);
        }
      }
    return out;
  }
  friend bool operator==(const FracMat& a, const FracMat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }

  FracMat kron(const FracMat& other) const {
    FracMat out(rows * other.rows, cols * other.cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        for (int k = 0; k < other.rows; ++k)
          for (int l = 0; l < other.cols; ++l)
            out(i * other.rows + k, j * other.cols + l) = (*this)(i, j) * other(k, l);
    return out;
  }

  Eigen::MatrixXd to_double() const {
    Eigen::MatrixXd out(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) out(i, j) = (*this)(i, j).value();
    return out;
  }
};

}  // namespace subdivqi
