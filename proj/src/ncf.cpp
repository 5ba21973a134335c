#include "fdslab/ncf.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fdslab/field.hpp"

namespace fdslab::ncf {

namespace {

bool subfunction_constant(const BooleanFunctionTable& t,
                          const std::vector<unsigned>& live, unsigned var,
                          uint8_t value, const std::vector<uint8_t>& fixed,
                          uint8_t& out) {
  // Scan all assignments of the live variables other than var, with var
  // pinned to value and the dead variables pinned by fixed.
  std::vector<unsigned> rest;
  for (unsigned v : live)
    if (v != var) rest.push_back(v);
  unsigned base = 0;
  for (unsigned v = 1; v <= t.n; ++v)
    if (fixed[v]) base |= 1u << (v - 1);
  if (value) base |= 1u << (var - 1);
  bool first = true;
  for (unsigned m = 0; m < (1u << rest.size()); ++m) {
    unsigned input = base;
    for (size_t k = 0; k < rest.size(); ++k)
      if (m & (1u << k)) input |= 1u << (rest[k] - 1);
    uint8_t v = t.at(input);
    if (first) {
      out = v;
      first = false;
    } else if (v != out) {
      return false;
    }
  }
  return true;
}

bool ncf_search(const BooleanFunctionTable& t, std::vector<unsigned>& live,
                std::vector<uint8_t>& fixed, NcfCertificate& cert) {
  if (live.size() == 1) {
    // The two remaining values must disagree; a = 0 then witnesses with
    // b = f(..., 0, ...).
    unsigned var = live[0];
    uint8_t b0, b1;
    subfunction_constant(t, live, var, 0, fixed, b0);
    subfunction_constant(t, live, var, 1, fixed, b1);
    if (b0 == b1) return false;
    cert.order.push_back(var);
    cert.inputs.push_back(0);
    cert.outputs.push_back(b0);
    return true;
  }
  for (size_t idx = 0; idx < live.size(); ++idx) {
    unsigned var = live[idx];
    for (uint8_t a = 0; a <= 1; ++a) {
      uint8_t b;
      if (!subfunction_constant(t, live, var, a, fixed, b)) continue;
      cert.order.push_back(var);
      cert.inputs.push_back(a);
      cert.outputs.push_back(b);
      live.erase(live.begin() + idx);
      fixed[var] = static_cast<uint8_t>(1 - a);
      if (ncf_search(t, live, fixed, cert)) return true;
      fixed[var] = 0;
      live.insert(live.begin() + idx, var);
      cert.order.pop_back();
      cert.inputs.pop_back();
      cert.outputs.pop_back();
    }
  }
  return false;
}

}  // namespace

BooleanFunctionTable BooleanFunctionTable::make(unsigned n,
                                                std::vector<uint8_t> bits) {
  if (n == 0 || n > 24) throw ArityError("table arity must be 1..24");
  if (bits.size() != (size_t{1} << n))
    throw ShapeError("truth table needs 2^n entries");
  for (uint8_t b : bits)
    if (b > 1) throw ShapeError("truth table entries must be 0 or 1");
  return BooleanFunctionTable{n, std::move(bits)};
}

CoefficientVector anf_transform(const BooleanFunctionTable& t) {
  CoefficientVector out{t.n, t.bits};
  size_t size = out.c.size();
  for (size_t len = 1; len < size; len <<= 1)
    for (size_t block = 0; block < size; block += 2 * len)
      for (size_t j = 0; j < len; ++j)
        out.c[block + len + j] ^= out.c[block + j];
  return out;
}

BooleanFunctionTable anf_inverse(const CoefficientVector& c) {
  BooleanFunctionTable t{c.n, c.c};
  size_t size = t.bits.size();
  for (size_t len = 1; len < size; len <<= 1)
    for (size_t block = 0; block < size; block += 2 * len)
      for (size_t j = 0; j < len; ++j)
        t.bits[block + len + j] ^= t.bits[block + j];
  return t;
}

bool depends_on_all(const BooleanFunctionTable& t) {
  for (unsigned v = 0; v < t.n; ++v) {
    unsigned bit = 1u << v;
    bool essential = false;
    for (unsigned input = 0; input < t.bits.size(); ++input)
      if (!(input & bit) && t.bits[input] != t.bits[input | bit]) {
        essential = true;
        break;
      }
    if (!essential) return false;
  }
  return true;
}

std::vector<CanalyzingTriple> is_canalyzing(const BooleanFunctionTable& t) {
  std::vector<CanalyzingTriple> out;
  for (unsigned v = 1; v <= t.n; ++v) {
    unsigned bit = 1u << (v - 1);
    for (uint8_t a = 0; a <= 1; ++a) {
      bool constant = true;
      uint8_t w = 0;
      bool first = true;
      for (unsigned input = 0; input < t.bits.size(); ++input) {
        if (((input & bit) != 0) != (a != 0)) continue;
        if (first) {
          w = t.bits[input];
          first = false;
        } else if (t.bits[input] != w) {
          constant = false;
          break;
        }
      }
      if (constant) out.push_back({v, a, w});
    }
  }
  return out;
}

BooleanFunctionTable replay_certificate(const NcfCertificate& cert,
                                        unsigned n) {
  if (cert.order.size() != n || cert.inputs.size() != n ||
      cert.outputs.size() != n)
    throw ShapeError("certificate must cover all n variables");
  std::vector<uint8_t> bits(size_t{1} << n, 0);
  for (unsigned input = 0; input < bits.size(); ++input) {
    uint8_t value = static_cast<uint8_t>(cert.outputs.back() ^ 1);
    for (unsigned i = 0; i < n; ++i) {
      unsigned bit = 1u << (cert.order[i] - 1);
      uint8_t x = (input & bit) ? 1 : 0;
      if (x == cert.inputs[i]) {
        value = cert.outputs[i];
        break;
      }
    }
    bits[input] = value;
  }
  return BooleanFunctionTable::make(n, std::move(bits));
}

std::optional<NcfCertificate> is_ncf_by_definition(
    const BooleanFunctionTable& t) {
  if (!depends_on_all(t))
    throw NotEssentialArity("function does not depend on every variable");
  std::vector<unsigned> live(t.n);
  std::iota(live.begin(), live.end(), 1u);
  std::vector<uint8_t> fixed(t.n + 1, 0);
  NcfCertificate cert;
  if (!ncf_search(t, live, fixed, cert)) return std::nullopt;
  return cert;
}

bool is_ncf_by_coefficients(const CoefficientVector& c,
                            const std::vector<unsigned>& sigma) {
  unsigned n = c.n;
  if (c.c.size() != (size_t{1} << n))
    throw ShapeError("coefficient vector needs 2^n entries");
  if (sigma.size() != n) throw ArityError("permutation must cover [n]");
  std::vector<unsigned> seen(n + 1, 0);
  for (unsigned v : sigma) {
    if (v == 0 || v > n || seen[v]) throw ArityError("not a permutation of [n]");
    seen[v] = 1;
  }
  unsigned full = (1u << n) - 1;
  if (c.c[full] != 1) return false;
  // pos1[v] = 1-based position of variable v in sigma; prefix[r] = mask of
  // {sigma(1..r)}.
  std::vector<unsigned> pos1(n + 1, 0), prefix(n + 1, 0);
  for (unsigned i = 0; i < n; ++i) {
    pos1[sigma[i]] = i + 1;
    prefix[i + 1] = prefix[i] | (1u << (sigma[i] - 1));
  }
  for (unsigned S = 1; S < full; ++S) {
    unsigned r = 0;
    for (unsigned v = 1; v <= n; ++v)
      if (S & (1u << (v - 1))) r = std::max(r, pos1[v]);
    unsigned comp = prefix[r];
    uint8_t rhs = c.c[comp];
    for (unsigned i = 1; i <= r; ++i) {
      unsigned v = sigma[i - 1];
      if (!(S & (1u << (v - 1)))) rhs &= c.c[full ^ (1u << (v - 1))];
    }
    if (c.c[S] != rhs) return false;
  }
  return true;
}

NcfEnumeration enumerate_ncfs(unsigned n) {
  if (n == 0) throw ArityError("need at least one variable");
  if (n > 4) throw TooLarge("enumeration supported for n <= 4");
  unsigned full = (1u << n) - 1;
  std::vector<unsigned> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1u);
  std::set<std::vector<uint8_t>> vectors;
  do {
    std::vector<unsigned> pos1(n + 1, 0), prefix(n + 1, 0);
    for (unsigned i = 0; i < n; ++i) {
      pos1[sigma[i]] = i + 1;
      prefix[i + 1] = prefix[i] | (1u << (sigma[i] - 1));
    }
    // Free coordinates: the empty set, the proper prefixes {sigma(1..r)},
    // and the co-singletons [n] minus {sigma(i)} for i < n (their relations
    // are self-referential identities).  Everything else is determined.
    std::vector<unsigned> free_masks{0};
    std::set<unsigned> free_set{0, full};
    for (unsigned r = 1; r < n; ++r)
      if (free_set.insert(prefix[r]).second) free_masks.push_back(prefix[r]);
    for (unsigned i = 1; i < n; ++i) {
      unsigned m = full ^ (1u << (sigma[i - 1] - 1));
      if (free_set.insert(m).second) free_masks.push_back(m);
    }
    struct Determined {
      unsigned mask;
      unsigned base;                  // completion mask
      std::vector<unsigned> factors;  // co-singleton masks
    };
    std::vector<Determined> determined;
    for (unsigned S = 1; S < full; ++S) {
      if (free_set.count(S)) continue;
      unsigned r = 0;
      for (unsigned v = 1; v <= n; ++v)
        if (S & (1u << (v - 1))) r = std::max(r, pos1[v]);
      Determined d{S, prefix[r], {}};
      for (unsigned i = 1; i <= r; ++i) {
        unsigned v = sigma[i - 1];
        if (!(S & (1u << (v - 1)))) d.factors.push_back(full ^ (1u << (v - 1)));
      }
      determined.push_back(d);
    }
    size_t nfree = free_masks.size();
    std::vector<uint8_t> c(size_t{1} << n, 0);
    for (unsigned assign = 0; assign < (1u << nfree); ++assign) {
      std::fill(c.begin(), c.end(), 0);
      c[full] = 1;
      for (size_t k = 0; k < nfree; ++k)
        c[free_masks[k]] = (assign >> k) & 1u;
      for (const auto& d : determined) {
        uint8_t v = c[d.base];
        for (unsigned fm : d.factors) v &= c[fm];
        c[d.mask] = v;
      }
      vectors.insert(c);
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  NcfEnumeration out;
  out.n = n;
  for (const auto& v : vectors) out.functions.push_back({n, v});
  return out;
}

poly::Polynomial to_polynomial(const CoefficientVector& c) {
  const auto& f2 = ff::FieldSpec::get(2);
  poly::Polynomial p = poly::Polynomial::zero(f2, c.n);
  for (unsigned S = 0; S < c.c.size(); ++S) {
    if (!c.c[S]) continue;
    std::vector<uint8_t> e(c.n, 0);
    for (unsigned v = 0; v < c.n; ++v)
      if (S & (1u << v)) e[v] = 1;
    p = p + poly::Polynomial::term(f2, c.n, poly::Monomial{std::move(e)},
                                   f2.one());
  }
  return p;
}

CoefficientVector from_polynomial(const poly::Polynomial& p) {
  if (p.field().q() != 2)
    throw FieldMismatch("coefficient vectors live over the two-element field");
  unsigned n = p.nvars();
  if (n == 0 || n > 24) throw ArityError("polynomial arity must be 1..24");
  CoefficientVector out{n, std::vector<uint8_t>(size_t{1} << n, 0)};
  for (const auto& [m, coeff] : p.terms()) {
    unsigned S = 0;
    for (unsigned v = 0; v < n; ++v) {
      if (m.e[v] > 1)
        throw ShapeError("polynomial must be reduced");
      if (m.e[v]) S |= 1u << v;
    }
    out.c[S] = coeff == 0 ? 0 : 1;
  }
  return out;
}

}  // namespace fdslab::ncf
