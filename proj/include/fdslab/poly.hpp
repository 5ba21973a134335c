#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"

namespace fdslab::poly {

// Exponent vector with every entry < q (canonically reduced).
struct Monomial {
  std::vector<uint8_t> e;

  unsigned nvars() const { return static_cast<unsigned>(e.size()); }
  unsigned degree() const {
    unsigned d = 0;
    for (uint8_t x : e) d += x;
    return d;
  }
  bool is_one() const {
    for (uint8_t x : e)
      if (x) return false;
    return true;
  }
  bool divides(const Monomial& m) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }
  // m / this, valid when divides(m).
  Monomial quotient_of(const Monomial& m) const {
    Monomial r = m;
    for (size_t i = 0; i < e.size(); ++i)
      r.e[i] = static_cast<uint8_t>(r.e[i] - e[i]);
    return r;
  }

  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
  // Storage order for map keys only; semantic comparison goes through
  // TermOrder.
  bool operator<(const Monomial& o) const { return e < o.e; }
};

// Fermat reduction of a single exponent: x^e == x^(((e-1) mod (q-1)) + 1)
// for e >= 1 and every x, including 0.
inline uint8_t reduce_exponent(unsigned q, unsigned long long e) {
  if (e == 0) return 0;
  return static_cast<uint8_t>((e - 1) % (q - 1) + 1);
}

enum class OrderKind { lex, deglex, degrevlex };

// Total multiplicative monomial order with 1 minimal. `perm[k]` names the
// variable (0-based) in significance position k; an empty perm is the
// identity.
struct TermOrder {
  OrderKind kind = OrderKind::degrevlex;
  std::vector<unsigned> perm;

  static TermOrder make(OrderKind k) { return TermOrder{k, {}}; }
  static TermOrder make(OrderKind k, std::vector<unsigned> p) {
    return TermOrder{k, std::move(p)};
  }

  // -1, 0, 1 for a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) < 0;
  }

  std::string kind_name() const;
};

// Sparse multivariate polynomial in canonical reduced form: all exponents
// < q, no zero coefficients. Structural equality therefore coincides with
// functional equality. Values are immutable in spirit; all operators return
// new polynomials.
class Polynomial {
public:
  Polynomial(const ff::FieldSpec& k, unsigned n) : field_(&k), n_(n) {}

  static Polynomial zero(const ff::FieldSpec& k, unsigned n) {
    return Polynomial(k, n);
  }
  static Polynomial constant(const ff::FieldSpec& k, unsigned n, uint8_t c);
  // x_{i+1} for 0-based i.
  static Polynomial variable(const ff::FieldSpec& k, unsigned n, unsigned i);
  // Single term with an already-reduced monomial.
  static Polynomial term(const ff::FieldSpec& k, unsigned n, Monomial m,
                         uint8_t c);
  // Canonical reduction of raw terms: arbitrary exponents, coefficients as
  // canonical field indices. Like terms are combined, zeros dropped.
  static Polynomial from_raw_terms(
      const ff::FieldSpec& k, unsigned n,
      const std::vector<std::pair<std::vector<unsigned long long>, uint8_t>>&
          raw);

  const ff::FieldSpec& field() const { return *field_; }
  unsigned nvars() const { return n_; }
  const std::map<Monomial, uint8_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The value at any point of a constant polynomial (0 for the zero one).
  uint8_t constant_value() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(uint8_t c) const;
  Polynomial pow(unsigned long long e) const;

  uint8_t evaluate(const std::vector<uint8_t>& point) const;
  ff::FieldElement evaluate(const std::vector<ff::FieldElement>& point) const;

  bool depends_on(unsigned i) const;
  std::vector<unsigned> support_vars() const;

  // Requires a nonzero polynomial.
  Monomial leading_monomial(const TermOrder& ord) const;
  uint8_t leading_coeff(const TermOrder& ord) const;

  // Deterministic printing: terms descending under degrevlex with the
  // identity permutation, syntax compatible with the parser.
  std::string str() const;

  bool operator==(const Polynomial& o) const {
    return field_ == o.field_ && n_ == o.n_ && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
  void add_term(const Monomial& m, uint8_t c);
  const ff::FieldSpec& same(const Polynomial& o) const;

  const ff::FieldSpec* field_;
  unsigned n_;
  std::map<Monomial, uint8_t> terms_;
};

// Sum over all degree-element subsets of the named variables of their
// products; the degree-0 value is 1 and the result is 0 when degree exceeds
// the variable count. `vars` holds 0-based variable indices into an
// n-variable ring.
Polynomial elementary_symmetric(const ff::FieldSpec& k, unsigned n,
                                unsigned degree,
                                const std::vector<unsigned>& vars);

// "(1,a,0)"-style rendering of a state vector via field literals.
std::string state_text(const ff::FieldSpec& k,
                       const std::vector<uint8_t>& state);

// Boolean expression tree for the F_2 translation.
struct BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

struct BoolExpr {
  enum class Kind { var, constant, negation, conjunction, disjunction };
  Kind kind;
  unsigned var = 0;  // 0-based
  bool value = false;
  BoolExprPtr lhs, rhs;
};

BoolExprPtr bvar(unsigned i);
BoolExprPtr bconst(bool v);
BoolExprPtr bnot(BoolExprPtr x);
BoolExprPtr band(BoolExprPtr l, BoolExprPtr r);
BoolExprPtr bor(BoolExprPtr l, BoolExprPtr r);

// x AND y -> xy, x OR y -> x+y+xy, NOT x -> x+1. FieldMismatch unless k is
// the two-element field.
Polynomial boolean_to_polynomial(const BoolExprPtr& expr,
                                 const ff::FieldSpec& k, unsigned n);

}  // namespace fdslab::poly
