#include "fdslab/poly.hpp"

#include <algorithm>

namespace fdslab::poly {

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  const size_t n = a.e.size();
  auto var_at = [&](size_t k) { return perm.empty() ? k : size_t(perm[k]); };
  if (kind != OrderKind::lex) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
  }
  if (kind == OrderKind::degrevlex) {
    // Scan from the least significant position; a larger exponent there
    // makes the monomial smaller.
    for (size_t k = n; k-- > 0;) {
      uint8_t ea = a.e[var_at(k)], eb = b.e[var_at(k)];
      if (ea != eb) return ea > eb ? -1 : 1;
    }
    return 0;
  }
  for (size_t k = 0; k < n; ++k) {
    uint8_t ea = a.e[var_at(k)], eb = b.e[var_at(k)];
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

std::string TermOrder::kind_name() const {
  switch (kind) {
    case OrderKind::lex: return "lex";
    case OrderKind::deglex: return "deglex";
    case OrderKind::degrevlex: return "degrevlex";
  }
  return "?";
}

Polynomial Polynomial::constant(const ff::FieldSpec& k, unsigned n, uint8_t c) {
  Polynomial p(k, n);
  if (c != 0) p.terms_[Monomial{std::vector<uint8_t>(n, 0)}] = c;
  return p;
}

Polynomial Polynomial::variable(const ff::FieldSpec& k, unsigned n,
                                unsigned i) {
  if (i >= n) throw ArityError("variable index out of range");
  Monomial m{std::vector<uint8_t>(n, 0)};
  m.e[i] = 1;
  return term(k, n, std::move(m), k.one());
}

Polynomial Polynomial::term(const ff::FieldSpec& k, unsigned n, Monomial m,
                            uint8_t c) {
  if (m.e.size() != n) throw ArityError("monomial arity mismatch");
  Polynomial p(k, n);
  if (c != 0) p.terms_[std::move(m)] = c;
  return p;
}

Polynomial Polynomial::from_raw_terms(
    const ff::FieldSpec& k, unsigned n,
    const std::vector<std::pair<std::vector<unsigned long long>, uint8_t>>&
        raw) {
  Polynomial p(k, n);
  for (const auto& [exps, c] : raw) {
    if (exps.size() != n) throw ArityError("raw term arity mismatch");
    Monomial m{std::vector<uint8_t>(n, 0)};
    for (unsigned i = 0; i < n; ++i) m.e[i] = reduce_exponent(k.q(), exps[i]);
    p.add_term(m, c);
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

uint8_t Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  auto it = terms_.find(Monomial{std::vector<uint8_t>(n_, 0)});
  return it == terms_.end() ? 0 : it->second;
}

const ff::FieldSpec& Polynomial::same(const Polynomial& o) const {
  if (field_ != o.field_)
    throw FieldMismatch("polynomials over different fields");
  if (n_ != o.n_) throw ArityError("polynomials in different variable counts");
  return *field_;
}

void Polynomial::add_term(const Monomial& m, uint8_t c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second = field_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  same(o);
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  same(o);
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, field_->neg(c));
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*field_, n_);
  for (const auto& [m, c] : terms_) r.terms_[m] = field_->neg(c);
  return r;
}

Polynomial Polynomial::scaled(uint8_t c) const {
  Polynomial r(*field_, n_);
  if (c == 0) return r;
  for (const auto& [m, cc] : terms_) {
    uint8_t p = field_->mul(cc, c);
    if (p != 0) r.terms_[m] = p;
  }
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  same(o);
  const unsigned q = field_->q();
  Polynomial r(*field_, n_);
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      // Reduce exponents eagerly so every intermediate stays canonical.
      Monomial m{std::vector<uint8_t>(n_, 0)};
      for (unsigned i = 0; i < n_; ++i)
        m.e[i] = reduce_exponent(q, unsigned(m1.e[i]) + unsigned(m2.e[i]));
      r.add_term(m, field_->mul(c1, c2));
    }
  }
  return r;
}

Polynomial Polynomial::pow(unsigned long long e) const {
  Polynomial acc = constant(*field_, n_, field_->one());
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

uint8_t Polynomial::evaluate(const std::vector<uint8_t>& point) const {
  if (point.size() != n_) throw ArityError("evaluation point arity mismatch");
  uint8_t total = 0;
  for (const auto& [m, c] : terms_) {
    uint8_t v = c;
    for (unsigned i = 0; i < n_; ++i)
      if (m.e[i]) v = field_->mul(v, field_->pow_small(point[i], m.e[i]));
    total = field_->add(total, v);
  }
  return total;
}

ff::FieldElement Polynomial::evaluate(
    const std::vector<ff::FieldElement>& point) const {
  std::vector<uint8_t> raw;
  raw.reserve(point.size());
  for (const auto& x : point) {
    if (&x.field() != field_)
      throw FieldMismatch("evaluation point from a different field");
    raw.push_back(x.index());
  }
  return {*field_, evaluate(raw)};
}

bool Polynomial::depends_on(unsigned i) const {
  for (const auto& [m, c] : terms_)
    if (m.e[i]) return true;
  return false;
}

std::vector<unsigned> Polynomial::support_vars() const {
  std::vector<unsigned> vars;
  for (unsigned i = 0; i < n_; ++i)
    if (depends_on(i)) vars.push_back(i);
  return vars;
}

Monomial Polynomial::leading_monomial(const TermOrder& ord) const {
  if (terms_.empty()) throw EmptyData("leading monomial of zero polynomial");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : terms_)
    if (!best || ord.less(*best, m)) best = &m;
  return *best;
}

uint8_t Polynomial::leading_coeff(const TermOrder& ord) const {
  return terms_.at(leading_monomial(ord));
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  TermOrder ord = TermOrder::make(OrderKind::degrevlex);
  std::vector<const Monomial*> order;
  order.reserve(terms_.size());
  for (const auto& [m, c] : terms_) order.push_back(&m);
  std::sort(order.begin(), order.end(),
            [&](const Monomial* a, const Monomial* b) {
              return ord.less(*b, *a);
            });
  std::string out;
  for (const Monomial* m : order) {
    if (!out.empty()) out += " + ";
    uint8_t c = terms_.at(*m);
    std::string mono;
    for (unsigned i = 0; i < n_; ++i) {
      if (!m->e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (m->e[i] > 1) mono += "^" + std::to_string(int(m->e[i]));
    }
    if (mono.empty()) {
      out += field_->literal(c);
    } else if (c == field_->one()) {
      out += mono;
    } else {
      out += field_->literal(c) + "*" + mono;
    }
  }
  return out;
}

Polynomial elementary_symmetric(const ff::FieldSpec& k, unsigned n,
                                unsigned degree,
                                const std::vector<unsigned>& vars) {
  for (unsigned v : vars)
    if (v >= n) throw ArityError("variable index out of range");
  if (degree > vars.size()) return Polynomial::zero(k, n);
  std::vector<Polynomial> e;
  e.reserve(degree + 1);
  e.push_back(Polynomial::constant(k, n, k.one()));
  for (unsigned d = 1; d <= degree; ++d) e.push_back(Polynomial::zero(k, n));
  for (unsigned v : vars) {
    auto x = Polynomial::variable(k, n, v);
    for (unsigned d = degree; d >= 1; --d) e[d] = e[d] + e[d - 1] * x;
  }
  return e[degree];
}

BoolExprPtr bvar(unsigned i) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Kind::var;
  e->var = i;
  return e;
}

BoolExprPtr bconst(bool v) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Kind::constant;
  e->value = v;
  return e;
}

BoolExprPtr bnot(BoolExprPtr x) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Kind::negation;
  e->lhs = std::move(x);
  return e;
}

BoolExprPtr band(BoolExprPtr l, BoolExprPtr r) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Kind::conjunction;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

BoolExprPtr bor(BoolExprPtr l, BoolExprPtr r) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Kind::disjunction;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

Polynomial boolean_to_polynomial(const BoolExprPtr& expr,
                                 const ff::FieldSpec& k, unsigned n) {
  if (k.q() != 2)
    throw FieldMismatch("the Boolean translation needs the two-element field");
  if (!expr) throw EmptyData("empty Boolean expression");
  switch (expr->kind) {
    case BoolExpr::Kind::var:
      return Polynomial::variable(k, n, expr->var);
    case BoolExpr::Kind::constant:
      return Polynomial::constant(k, n, expr->value ? k.one() : 0);
    case BoolExpr::Kind::negation: {
      auto x = boolean_to_polynomial(expr->lhs, k, n);
      return x + Polynomial::constant(k, n, k.one());
    }
    case BoolExpr::Kind::conjunction: {
      auto x = boolean_to_polynomial(expr->lhs, k, n);
      auto y = boolean_to_polynomial(expr->rhs, k, n);
      return x * y;
    }
    case BoolExpr::Kind::disjunction: {
      auto x = boolean_to_polynomial(expr->lhs, k, n);
      auto y = boolean_to_polynomial(expr->rhs, k, n);
      return x + y + x * y;
    }
  }
  throw EmptyData("malformed Boolean expression");
}

std::string state_text(const ff::FieldSpec& k,
                       const std::vector<uint8_t>& state) {
  std::string out = "(";
  for (size_t i = 0; i < state.size(); ++i) {
    if (i) out += ",";
    out += k.literal(state[i]);
  }
  out += ")";
  return out;
}

}  // namespace fdslab::poly
