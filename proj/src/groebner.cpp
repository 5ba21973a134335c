#include "fdslab/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fdslab::groebner {

namespace {

uint8_t eval_monomial(const ff::FieldSpec& f, const poly::Monomial& m,
                      const std::vector<uint8_t>& pt) {
  uint8_t v = f.one();
  for (size_t i = 0; i < m.e.size(); ++i)
    if (m.e[i]) v = f.mul(v, f.pow_small(pt[i], m.e[i]));
  return v;
}

bool divisible_by_any(const poly::Monomial& m,
                      const std::vector<poly::Monomial>& lts) {
  for (const auto& l : lts)
    if (l.divides(m)) return true;
  return false;
}

}  // namespace

PointSet PointSet::make(const ff::FieldSpec& field, unsigned n,
                        std::vector<std::vector<uint8_t>> points) {
  for (const auto& p : points) {
    if (p.size() != n) throw ArityError("point length differs from n");
    for (uint8_t x : p)
      if (x >= field.q()) throw FieldMismatch("point entry outside the field");
  }
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InconsistentData("duplicate point in point set");
  return PointSet{&field, n, std::move(points)};
}

IdealOfPoints ideal_of_points(const PointSet& ps,
                              const poly::TermOrder& order) {
  if (ps.field == nullptr || ps.points.empty())
    throw EmptyData("ideal of an empty point set");
  const ff::FieldSpec& f = *ps.field;
  const unsigned n = ps.n;
  const unsigned q = f.q();
  const size_t r = ps.points.size();

  struct OrdLess {
    const poly::TermOrder* ord;
    bool operator()(const poly::Monomial& a, const poly::Monomial& b) const {
      return ord->less(a, b);
    }
  };
  std::set<poly::Monomial, OrdLess> queue{OrdLess{&order}};
  queue.insert(poly::Monomial{std::vector<uint8_t>(n, 0)});

  IdealOfPoints out;
  out.order = order;
  out.points = ps;
  std::vector<poly::Monomial> lts;

  while (!queue.empty()) {
    poly::Monomial m = *queue.begin();
    queue.erase(queue.begin());
    if (divisible_by_any(m, lts)) continue;

    std::vector<uint8_t> v(r);
    for (size_t j = 0; j < r; ++j) v[j] = eval_monomial(f, m, ps.points[j]);
    std::vector<uint8_t> expr(out.standard_monomials.size(), f.zero());
    for (size_t k = 0; k < out.rows.size(); ++k) {
      uint8_t c = v[out.pivots[k]];
      if (c == f.zero()) continue;
      for (size_t j = 0; j < r; ++j)
        v[j] = f.sub(v[j], f.mul(c, out.rows[k][j]));
      for (size_t t = 0; t < out.exprs[k].size(); ++t)
        expr[t] = f.sub(expr[t], f.mul(c, out.exprs[k][t]));
    }
    size_t piv = r;
    for (size_t j = 0; j < r; ++j)
      if (v[j] != f.zero()) {
        piv = j;
        break;
      }
    if (piv == r) {
      // Dependent: m + sum expr[k]*sm_k vanishes on every point and is
      // monic with tail among the standard monomials, so the collected
      // basis is automatically reduced.
      poly::Polynomial g = poly::Polynomial::term(f, n, m, f.one());
      for (size_t k = 0; k < expr.size(); ++k)
        if (expr[k] != f.zero())
          g = g + poly::Polynomial::term(f, n, out.standard_monomials[k],
                                         expr[k]);
      out.basis.push_back(std::move(g));
      lts.push_back(m);
    } else {
      uint8_t inv = f.inv(v[piv]);
      for (size_t j = 0; j < r; ++j) v[j] = f.mul(v[j], inv);
      for (size_t t = 0; t < expr.size(); ++t) expr[t] = f.mul(expr[t], inv);
      expr.push_back(inv);
      out.standard_monomials.push_back(m);
      out.rows.push_back(std::move(v));
      out.exprs.push_back(std::move(expr));
      out.pivots.push_back(piv);
      for (unsigned i = 0; i < n; ++i) {
        if (static_cast<unsigned>(m.e[i]) + 1 >= q) continue;
        poly::Monomial m2 = m;
        ++m2.e[i];
        if (!divisible_by_any(m2, lts)) queue.insert(std::move(m2));
      }
    }
    // Pad earlier expression rows so every row spans the current standard
    // monomial list.
    for (auto& e : out.exprs) e.resize(out.standard_monomials.size(), f.zero());
  }
  return out;
}

poly::Polynomial interpolate(const IdealOfPoints& ideal,
                             const std::vector<uint8_t>& values) {
  const ff::FieldSpec& f = *ideal.points.field;
  const size_t r = ideal.points.points.size();
  if (values.size() != r)
    throw ArityError("one value per point is required");
  for (uint8_t x : values)
    if (x >= f.q()) throw FieldMismatch("value outside the field");
  // Solve E c = values where E[j][k] = eval(sm_k, p_j).  The stored rows
  // are a row-reduction of E's columns; redo a small dense solve for
  // clarity, the sizes here are tiny.
  std::vector<std::vector<uint8_t>> a(r, std::vector<uint8_t>(r + 1));
  for (size_t j = 0; j < r; ++j) {
    for (size_t k = 0; k < r; ++k)
      a[j][k] =
          eval_monomial(f, ideal.standard_monomials[k], ideal.points.points[j]);
    a[j][r] = values[j];
  }
  for (size_t col = 0; col < r; ++col) {
    size_t piv = col;
    while (piv < r && a[piv][col] == f.zero()) ++piv;
    if (piv == r)
      throw Error("InternalError", "singular interpolation matrix");
    std::swap(a[col], a[piv]);
    uint8_t inv = f.inv(a[col][col]);
    for (size_t t = col; t <= r; ++t) a[col][t] = f.mul(a[col][t], inv);
    for (size_t row = 0; row < r; ++row) {
      if (row == col || a[row][col] == f.zero()) continue;
      uint8_t c = a[row][col];
      for (size_t t = col; t <= r; ++t)
        a[row][t] = f.sub(a[row][t], f.mul(c, a[col][t]));
    }
  }
  poly::Polynomial out = poly::Polynomial::zero(f, ideal.points.n);
  for (size_t k = 0; k < r; ++k)
    if (a[k][r] != f.zero())
      out = out + poly::Polynomial::term(f, ideal.points.n,
                                         ideal.standard_monomials[k], a[k][r]);
  return out;
}

poly::Polynomial interpolate(const ff::FieldSpec& field, unsigned n,
                             const std::vector<std::vector<uint8_t>>& points,
                             const std::vector<uint8_t>& values,
                             const poly::TermOrder& order) {
  if (points.size() != values.size())
    throw ArityError("one value per point is required");
  if (points.empty()) throw EmptyData("nothing to interpolate");
  std::map<std::vector<uint8_t>, uint8_t> dedup;
  for (size_t i = 0; i < points.size(); ++i) {
    auto it = dedup.find(points[i]);
    if (it == dedup.end()) {
      dedup.emplace(points[i], values[i]);
    } else if (it->second != values[i]) {
      throw InconsistentData("point " + poly::state_text(field, points[i]) +
                             " carries conflicting values");
    }
  }
  std::vector<std::vector<uint8_t>> pts;
  std::vector<uint8_t> vals;
  for (const auto& [p, v] : dedup) {
    pts.push_back(p);
    vals.push_back(v);
  }
  auto ideal = ideal_of_points(PointSet::make(field, n, std::move(pts)), order);
  return interpolate(ideal, vals);
}

poly::Polynomial normal_form(const poly::Polynomial& f,
                             const IdealOfPoints& ideal) {
  const ff::FieldSpec& fld = *ideal.points.field;
  if (&f.field() != &fld)
    throw FieldMismatch("polynomial and ideal over different fields");
  if (f.nvars() != ideal.points.n)
    throw ArityError("polynomial and ideal arity differ");
  poly::Polynomial g = f;
  for (;;) {
    // Largest term divisible by some basis leading term.
    const poly::Monomial* target = nullptr;
    const poly::Polynomial* reducer = nullptr;
    uint8_t coeff = fld.zero();
    for (const auto& [m, c] : g.terms()) {
      for (const auto& b : ideal.basis) {
        if (!b.leading_monomial(ideal.order).divides(m)) continue;
        if (target == nullptr || ideal.order.less(*target, m)) {
          target = &m;
          reducer = &b;
          coeff = c;
        }
        break;
      }
    }
    if (target == nullptr) return g;
    poly::Monomial quot =
        reducer->leading_monomial(ideal.order).quotient_of(*target);
    g = g - poly::Polynomial::term(fld, f.nvars(), quot, coeff) * *reducer;
  }
}

}  // namespace fdslab::groebner
