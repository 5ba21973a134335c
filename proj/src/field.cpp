#include "fdslab/field.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace fdslab::ff {

namespace {

bool is_prime(unsigned v) {
  if (v < 2) return false;
  for (unsigned d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// GF(4) on the basis {1, a}: bits (hi, lo) = hi*a + lo.
// Index order 0, a, a^2, 1 so that nonzero indices are powers of a.
constexpr uint8_t kGf4Bits[4] = {0b00, 0b10, 0b11, 0b01};

uint8_t gf4_from_bits(uint8_t bits) {
  for (uint8_t i = 0; i < 4; ++i)
    if (kGf4Bits[i] == bits) return i;
  return 0;  // unreachable
}

}  // namespace

FieldSpec::FieldSpec(unsigned p, unsigned m) : p_(p), m_(m), q_(1) {
  for (unsigned i = 0; i < m_; ++i) q_ *= p_;
  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  pow_.assign(q_ * q_, 0);

  if (m_ == 1) {
    one_ = 1;
    for (unsigned x = 0; x < q_; ++x) {
      neg_[x] = static_cast<uint8_t>((q_ - x) % q_);
      for (unsigned y = 0; y < q_; ++y) {
        add_[x * q_ + y] = static_cast<uint8_t>((x + y) % q_);
        mul_[x * q_ + y] = static_cast<uint8_t>((x * y) % q_);
      }
    }
  } else {
    // GF(4): addition is xor on the polynomial basis, multiplication adds
    // exponents of a (a^3 = 1).
    one_ = 3;
    for (unsigned x = 0; x < 4; ++x) {
      neg_[x] = static_cast<uint8_t>(x);  // characteristic 2
      for (unsigned y = 0; y < 4; ++y) {
        add_[x * 4 + y] = gf4_from_bits(kGf4Bits[x] ^ kGf4Bits[y]);
        mul_[x * 4 + y] =
            (x == 0 || y == 0)
                ? 0
                : static_cast<uint8_t>((x + y - 1) % 3 + 1);
      }
    }
  }

  for (unsigned x = 0; x < q_; ++x) {
    inv_[x] = 0;
    for (unsigned y = 0; y < q_; ++y)
      if (mul_[x * q_ + y] == one_) inv_[x] = static_cast<uint8_t>(y);
    uint8_t acc = one_;
    for (unsigned e = 0; e < q_; ++e) {
      pow_[x * q_ + e] = acc;
      acc = mul_[acc * q_ + x];
    }
  }
}

const FieldSpec& FieldSpec::get(unsigned q) {
  return q == 4 ? get(2, 2) : get(q, 1);
}

const FieldSpec& FieldSpec::get(unsigned p, unsigned m) {
  if (!is_prime(p))
    throw UnsupportedField("characteristic " + std::to_string(p) +
                           " is not prime");
  if (!(m == 1 || (m == 2 && p == 2)))
    throw UnsupportedField("only prime fields and GF(4) are supported");
  if (m == 1 && p > 251)
    throw UnsupportedField("prime fields are table based and limited to p <= 251");

  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FieldSpec>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, m}];
  if (!slot) slot.reset(new FieldSpec(p, m));
  return *slot;
}

uint8_t FieldSpec::generator() const {
  if (q_ != 4)
    throw UnsupportedField("generator element is only defined for GF(4)");
  return 1;
}

uint8_t FieldSpec::inv(uint8_t x) const {
  if (x == 0) throw DivisionByZero("inverse of zero");
  return inv_[x];
}

uint8_t FieldSpec::pow(uint8_t x, unsigned long long e) const {
  if (x == 0) return e == 0 ? one_ : 0;
  return pow_[x * q_ + static_cast<unsigned>(e % (q_ - 1))];
}

uint8_t FieldSpec::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  // r copies of the identity; for prime fields that is the residue itself.
  uint8_t acc = 0;
  for (long long i = 0; i < r; ++i) acc = add(acc, one_);
  return acc;
}

std::string FieldSpec::literal(uint8_t x) const {
  if (m_ == 1) return std::to_string(x);
  static const char* names[4] = {"0", "a", "a^2", "1"};
  return names[x];
}

std::optional<uint8_t> FieldSpec::parse_literal(std::string_view token) const {
  if (m_ == 2) {
    if (token == "0") return uint8_t{0};
    if (token == "a") return uint8_t{1};
    if (token == "a^2") return uint8_t{2};
    if (token == "1") return uint8_t{3};
    return std::nullopt;
  }
  if (token.empty() || token.size() > 3) return std::nullopt;
  unsigned v = 0;
  for (char c : token) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  if (v >= q_) return std::nullopt;
  return static_cast<uint8_t>(v);
}

}  // namespace fdslab::ff
