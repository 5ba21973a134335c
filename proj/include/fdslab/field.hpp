#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdslab/errors.hpp"

namespace fdslab::ff {

// Exact arithmetic in F_p (p prime) or GF(4) = Z_2[a]/(a^2+a+1).
//
// Elements are canonical indices 0..q-1:
//   prime fields: index == residue value
//   GF(4):        0 -> 0, 1 -> a, 2 -> a^2, 3 -> a^3 = 1
// The nonzero GF(4) elements are indexed as powers of the generator a, so
// multiplication is addition of exponents mod 3.
//
// Specs are interned singletons; pointer equality identifies the field.
// All tables are built at construction and never change, so a FieldSpec is
// safe to share across threads.
class FieldSpec {
public:
  // q must be prime or exactly 4.
  static const FieldSpec& get(unsigned q);
  static const FieldSpec& get(unsigned p, unsigned m);

  unsigned q() const { return q_; }
  unsigned characteristic() const { return p_; }
  unsigned degree() const { return m_; }

  uint8_t zero() const { return 0; }
  uint8_t one() const { return one_; }
  uint8_t generator() const;  // the element a; only defined for GF(4)

  uint8_t add(uint8_t x, uint8_t y) const { return add_[x * q_ + y]; }
  uint8_t sub(uint8_t x, uint8_t y) const { return add_[x * q_ + neg_[y]]; }
  uint8_t mul(uint8_t x, uint8_t y) const { return mul_[x * q_ + y]; }
  uint8_t neg(uint8_t x) const { return neg_[x]; }
  uint8_t inv(uint8_t x) const;  // DivisionByZero on x == 0
  uint8_t div(uint8_t x, uint8_t y) const { return mul(x, inv(y)); }

  // x^e with the exponent of a nonzero base reduced mod (q-1).
  // Convention: x^0 = 1 for every x, including 0.
  uint8_t pow(uint8_t x, unsigned long long e) const;
  // Table lookup for e < q (enough for canonical monomial exponents).
  uint8_t pow_small(uint8_t x, uint8_t e) const { return pow_[x * q_ + e]; }

  // Embedding of the integers: v mod p times the identity.
  uint8_t from_int(long long v) const;

  // Text literals: decimal 0..p-1 for prime fields; 0, a, a^2, 1 for GF(4).
  std::string literal(uint8_t x) const;
  std::optional<uint8_t> parse_literal(std::string_view token) const;

  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

private:
  FieldSpec(unsigned p, unsigned m);

  unsigned p_, m_, q_;
  uint8_t one_;
  std::vector<uint8_t> add_, mul_, neg_, inv_, pow_;
};

// Value type pairing an element with its field; arithmetic checks that both
// operands come from the same FieldSpec.
class FieldElement {
public:
  FieldElement(const FieldSpec& k, uint8_t index) : k_(&k), v_(index) {}

  const FieldSpec& field() const { return *k_; }
  uint8_t index() const { return v_; }

  FieldElement operator+(const FieldElement& o) const {
    return {same(o), k_->add(v_, o.v_)};
  }
  FieldElement operator-(const FieldElement& o) const {
    return {same(o), k_->sub(v_, o.v_)};
  }
  FieldElement operator*(const FieldElement& o) const {
    return {same(o), k_->mul(v_, o.v_)};
  }
  FieldElement operator/(const FieldElement& o) const {
    return {same(o), k_->div(v_, o.v_)};
  }
  FieldElement operator-() const { return {*k_, k_->neg(v_)}; }
  FieldElement inverse() const { return {*k_, k_->inv(v_)}; }
  FieldElement pow(unsigned long long e) const { return {*k_, k_->pow(v_, e)}; }

  bool operator==(const FieldElement& o) const {
    return k_ == o.k_ && v_ == o.v_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string str() const { return k_->literal(v_); }

private:
  const FieldSpec& same(const FieldElement& o) const {
    if (k_ != o.k_)
      throw FieldMismatch("operands belong to different fields");
    return *k_;
  }

  const FieldSpec* k_;
  uint8_t v_;
};

}  // namespace fdslab::ff
