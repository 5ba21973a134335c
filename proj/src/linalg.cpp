#include "fdslab/linalg.hpp"

#include <algorithm>

namespace fdslab::linalg {

namespace {
const ff::FieldSpec& same(const Matrix& a, const Matrix& b) {
  if (a.field != b.field) throw FieldMismatch("matrices over different fields");
  return *a.field;
}
}  // namespace

Matrix Matrix::operator*(const Matrix& o) const {
  const auto& k = same(*this, o);
  if (cols != o.rows) throw ShapeError("inner dimensions do not match");
  Matrix r = zero(k, rows, o.cols);
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned t = 0; t < cols; ++t) {
      uint8_t v = at(i, t);
      if (!v) continue;
      for (unsigned j = 0; j < o.cols; ++j)
        r.at(i, j) = k.add(r.at(i, j), k.mul(v, o.at(t, j)));
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  const auto& k = same(*this, o);
  if (rows != o.rows || cols != o.cols) throw ShapeError("shape mismatch");
  Matrix r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = k.add(r.a[i], o.a[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  const auto& k = same(*this, o);
  if (rows != o.rows || cols != o.cols) throw ShapeError("shape mismatch");
  Matrix r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = k.sub(r.a[i], o.a[i]);
  return r;
}

unsigned rank(Matrix m) {
  const auto& k = *m.field;
  unsigned rk = 0;
  for (unsigned col = 0; col < m.cols && rk < m.rows; ++col) {
    unsigned piv = rk;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rk)
      for (unsigned j = 0; j < m.cols; ++j)
        std::swap(m.at(piv, j), m.at(rk, j));
    uint8_t inv = k.inv(m.at(rk, col));
    for (unsigned i = rk + 1; i < m.rows; ++i) {
      uint8_t f = k.mul(m.at(i, col), inv);
      if (!f) continue;
      for (unsigned j = col; j < m.cols; ++j)
        m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(rk, j)));
    }
    ++rk;
  }
  return rk;
}

Matrix mat_pow(const Matrix& m, unsigned long long e) {
  if (!m.is_square()) throw ShapeError("powers need a square matrix");
  Matrix acc = Matrix::identity(*m.field, m.rows);
  Matrix base = m;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

UPoly UPoly::from(const ff::FieldSpec& k, std::vector<uint8_t> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return UPoly{&k, std::move(coeffs)};
}

UPoly UPoly::operator+(const UPoly& o) const {
  const auto& k = *field;
  std::vector<uint8_t> r(std::max(c.size(), o.c.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = k.add(i < c.size() ? c[i] : 0, i < o.c.size() ? o.c[i] : 0);
  return from(k, std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
  const auto& k = *field;
  std::vector<uint8_t> r(std::max(c.size(), o.c.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = k.sub(i < c.size() ? c[i] : 0, i < o.c.size() ? o.c[i] : 0);
  return from(k, std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  const auto& k = *field;
  if (is_zero() || o.is_zero()) return zero(k);
  std::vector<uint8_t> r(c.size() + o.c.size() - 1, 0);
  for (size_t i = 0; i < c.size(); ++i) {
    if (!c[i]) continue;
    for (size_t j = 0; j < o.c.size(); ++j)
      r[i + j] = k.add(r[i + j], k.mul(c[i], o.c[j]));
  }
  return from(k, std::move(r));
}

UPoly UPoly::scaled(uint8_t s) const {
  const auto& k = *field;
  std::vector<uint8_t> r(c.size());
  for (size_t i = 0; i < c.size(); ++i) r[i] = k.mul(c[i], s);
  return from(k, std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field->inv(lead()));
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  const auto& k = *field;
  std::string out;
  for (size_t i = c.size(); i-- > 0;) {
    if (!c[i]) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += k.literal(c[i]);
      continue;
    }
    std::string t = var;
    if (i > 1) t += "^" + std::to_string(i);
    out += (c[i] == k.one()) ? t : k.literal(c[i]) + "*" + t;
  }
  return out;
}

void divmod(const UPoly& num, const UPoly& den, UPoly& q, UPoly& r) {
  if (den.is_zero()) throw DivisionByZero("polynomial division by zero");
  const auto& k = *num.field;
  if (num.field != den.field)
    throw FieldMismatch("polynomials over different fields");
  q = UPoly::zero(k);
  r = num;
  uint8_t dinv = k.inv(den.lead());
  while (!r.is_zero() && r.degree() >= den.degree()) {
    size_t shift = size_t(r.degree() - den.degree());
    uint8_t f = k.mul(r.lead(), dinv);
    std::vector<uint8_t> qc(shift + 1, 0);
    qc[shift] = f;
    UPoly t = UPoly::from(k, std::move(qc));
    q = q + t;
    r = r - t * den;
  }
}

bool divides(const UPoly& den, const UPoly& num) {
  if (num.is_zero()) return true;
  if (den.is_zero()) return false;
  UPoly q = UPoly::zero(*num.field), r = UPoly::zero(*num.field);
  divmod(num, den, q, r);
  return r.is_zero();
}

std::vector<UPoly> smith_diagonal(const Matrix& A) {
  if (!A.is_square()) throw ShapeError("Smith form needs a square matrix");
  const auto& k = *A.field;
  const unsigned n = A.rows;
  // M = xI - A as a matrix of univariate polynomials.
  std::vector<std::vector<UPoly>> M(n, std::vector<UPoly>(n, UPoly::zero(k)));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      std::vector<uint8_t> cs{k.neg(A.at(i, j))};
      if (i == j) cs.push_back(k.one());
      M[i][j] = UPoly::from(k, std::move(cs));
    }

  for (unsigned t = 0; t < n; ++t) {
    for (;;) {
      // Pivot: minimal-degree nonzero entry of the trailing submatrix.
      int pi = -1, pj = -1, best = -1;
      for (unsigned i = t; i < n; ++i)
        for (unsigned j = t; j < n; ++j)
          if (!M[i][j].is_zero() &&
              (best < 0 || M[i][j].degree() < best)) {
            best = M[i][j].degree();
            pi = int(i);
            pj = int(j);
          }
      if (best < 0) break;  // submatrix is zero
      std::swap(M[t], M[size_t(pi)]);
      for (unsigned i = 0; i < n; ++i) std::swap(M[i][t], M[i][size_t(pj)]);

      bool reduced = true;
      for (unsigned i = t + 1; i < n; ++i) {
        if (M[i][t].is_zero()) continue;
        UPoly q = UPoly::zero(k), r = UPoly::zero(k);
        divmod(M[i][t], M[t][t], q, r);
        for (unsigned j = t; j < n; ++j) M[i][j] = M[i][j] - q * M[t][j];
        if (!r.is_zero()) reduced = false;
      }
      for (unsigned j = t + 1; j < n; ++j) {
        if (M[t][j].is_zero()) continue;
        UPoly q = UPoly::zero(k), r = UPoly::zero(k);
        divmod(M[t][j], M[t][t], q, r);
        for (unsigned i = t; i < n; ++i) M[i][j] = M[i][j] - q * M[i][t];
        if (!r.is_zero()) reduced = false;
      }
      if (!reduced) continue;  // a remainder dropped the minimal degree

      bool off = false;
      for (unsigned i = t + 1; i < n && !off; ++i)
        if (!M[i][t].is_zero()) off = true;
      for (unsigned j = t + 1; j < n && !off; ++j)
        if (!M[t][j].is_zero()) off = true;
      if (off) continue;

      // Pivot must divide every remaining entry; if not, pull the offending
      // row up and keep reducing.
      bool fixed = true;
      for (unsigned i = t + 1; i < n && fixed; ++i)
        for (unsigned j = t + 1; j < n && fixed; ++j)
          if (!divides(M[t][t], M[i][j])) {
            for (unsigned jj = t; jj < n; ++jj)
              M[t][jj] = M[t][jj] + M[i][jj];
            fixed = false;
          }
      if (fixed) break;
    }
  }

  std::vector<UPoly> diag;
  diag.reserve(n);
  for (unsigned t = 0; t < n; ++t) {
    UPoly d = M[t][t];
    diag.push_back(d.is_zero() ? d : d.monic());
  }
  return diag;
}

UPoly charpoly_hessenberg(const Matrix& A) {
  if (!A.is_square()) throw ShapeError("charpoly needs a square matrix");
  const auto& k = *A.field;
  const unsigned n = A.rows;
  Matrix H = A;
  // Similarity reduction to upper Hessenberg form.
  for (unsigned j = 0; j + 2 < n; ++j) {
    unsigned piv = j + 1;
    while (piv < n && H.at(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (unsigned c = 0; c < n; ++c) std::swap(H.at(piv, c), H.at(j + 1, c));
      for (unsigned r = 0; r < n; ++r) std::swap(H.at(r, piv), H.at(r, j + 1));
    }
    uint8_t inv = k.inv(H.at(j + 1, j));
    for (unsigned i = j + 2; i < n; ++i) {
      uint8_t f = k.mul(H.at(i, j), inv);
      if (!f) continue;
      for (unsigned c = 0; c < n; ++c)
        H.at(i, c) = k.sub(H.at(i, c), k.mul(f, H.at(j + 1, c)));
      for (unsigned r = 0; r < n; ++r)
        H.at(r, j + 1) = k.add(H.at(r, j + 1), k.mul(f, H.at(r, i)));
    }
  }
  // p_0 = 1; p_m built from the leading principal minors of xI - H.
  std::vector<UPoly> p;
  p.push_back(UPoly::from(k, {k.one()}));
  for (unsigned m = 1; m <= n; ++m) {
    UPoly xm = UPoly::from(k, {k.neg(H.at(m - 1, m - 1)), k.one()});
    UPoly pm = xm * p[m - 1];
    uint8_t beta = k.one();
    for (unsigned i = 1; i < m; ++i) {
      beta = k.mul(beta, H.at(m - i, m - i - 1));
      uint8_t coef = k.mul(H.at(m - i - 1, m - 1), beta);
      pm = pm - p[m - i - 1].scaled(coef);
    }
    p.push_back(pm);
  }
  return p[n];
}

}  // namespace fdslab::linalg
