#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"

// Dense matrices and univariate polynomials over a finite field. Support
// code for the linear-system analysis; not one of the top-level domains.
namespace fdslab::linalg {

struct Matrix {
  const ff::FieldSpec* field = nullptr;
  unsigned rows = 0, cols = 0;
  std::vector<uint8_t> a;  // row-major

  static Matrix zero(const ff::FieldSpec& k, unsigned r, unsigned c) {
    return Matrix{&k, r, c, std::vector<uint8_t>(size_t(r) * c, 0)};
  }
  static Matrix identity(const ff::FieldSpec& k, unsigned n) {
    Matrix m = zero(k, n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = k.one();
    return m;
  }

  uint8_t& at(unsigned r, unsigned c) { return a[size_t(r) * cols + c]; }
  uint8_t at(unsigned r, unsigned c) const { return a[size_t(r) * cols + c]; }
  bool is_square() const { return rows == cols; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const {
    return field == o.field && rows == o.rows && cols == o.cols && a == o.a;
  }
};

unsigned rank(Matrix m);  // by value: eliminates on its own copy
Matrix mat_pow(const Matrix& m, unsigned long long e);

// Univariate polynomial, little-endian coefficients, no trailing zeros.
struct UPoly {
  const ff::FieldSpec* field = nullptr;
  std::vector<uint8_t> c;

  static UPoly zero(const ff::FieldSpec& k) { return UPoly{&k, {}}; }
  static UPoly from(const ff::FieldSpec& k, std::vector<uint8_t> coeffs);
  static UPoly x(const ff::FieldSpec& k) { return from(k, {0, k.one()}); }

  int degree() const { return int(c.size()) - 1; }  // zero polynomial: -1
  bool is_zero() const { return c.empty(); }
  bool is_constant() const { return c.size() <= 1; }
  uint8_t lead() const { return c.back(); }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(uint8_t s) const;
  UPoly monic() const;

  bool operator==(const UPoly& o) const {
    return field == o.field && c == o.c;
  }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  std::string str(const std::string& var = "x") const;
};

// num = q * den + r with deg r < deg den. DivisionByZero on a zero divisor.
void divmod(const UPoly& num, const UPoly& den, UPoly& q, UPoly& r);
bool divides(const UPoly& den, const UPoly& num);

// Diagonal of the Smith normal form of xI - A over k[x]: n monic entries in
// divisibility order (units normalized to 1). ShapeError unless A is square.
std::vector<UPoly> smith_diagonal(const Matrix& A);

// Characteristic polynomial by Hessenberg reduction; an oracle independent
// of the Smith form path.
UPoly charpoly_hessenberg(const Matrix& A);

}  // namespace fdslab::linalg
