#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fdslab/errors.hpp"
#include "fdslab/poly.hpp"

namespace fdslab::ncf {

// Truth table of a Boolean function in n variables. Inputs are indexed by
// the integer whose bit i-1 carries x_i, so x_1 is the least significant
// bit.
struct BooleanFunctionTable {
  unsigned n = 0;
  std::vector<uint8_t> bits;  // size 2^n, values 0/1

  static BooleanFunctionTable make(unsigned n, std::vector<uint8_t> bits);
  uint8_t at(unsigned input) const { return bits[input]; }
};

// Algebraic normal form coefficients c_S indexed by the subset mask of S
// (bit i-1 of the mask carries membership of i). This is the binary-counter
// subset order.
struct CoefficientVector {
  unsigned n = 0;
  std::vector<uint8_t> c;  // size 2^n, values 0/1

  bool operator==(const CoefficientVector& o) const {
    return n == o.n && c == o.c;
  }
  bool operator<(const CoefficientVector& o) const { return c < o.c; }
};

// Moebius transform over F_2; the same butterfly is its own inverse, so the
// round trip table -> coefficients -> table is the identity.
CoefficientVector anf_transform(const BooleanFunctionTable& t);
BooleanFunctionTable anf_inverse(const CoefficientVector& c);

bool depends_on_all(const BooleanFunctionTable& t);

struct CanalyzingTriple {
  unsigned variable;  // 1-based
  uint8_t input;      // canalyzing value
  uint8_t output;     // canalyzed value
  bool operator==(const CanalyzingTriple& o) const {
    return variable == o.variable && input == o.input && output == o.output;
  }
};

// Every (variable, input, output) with f(..., x_i = input, ...) constantly
// equal to output. Empty means not canalyzing.
std::vector<CanalyzingTriple> is_canalyzing(const BooleanFunctionTable& t);

struct NcfCertificate {
  std::vector<unsigned> order;   // variables, 1-based, outermost first
  std::vector<uint8_t> inputs;   // canalyzing values a_i
  std::vector<uint8_t> outputs;  // canalyzed values b_i
};

// Rebuild the truth table described by a certificate's case analysis (the
// final case yields outputs.back() + 1).
BooleanFunctionTable replay_certificate(const NcfCertificate& cert,
                                        unsigned n);

// Recursive detection: strip one canalyzing variable, recurse on the
// subfunction at the non-canalyzing input. NotEssentialArity unless the
// table depends on all n variables.
std::optional<NcfCertificate> is_ncf_by_definition(
    const BooleanFunctionTable& t);

// Coefficient relation check for one variable order sigma (1-based
// permutation, outermost first): c_[n] = 1 and, for every proper nonempty
// S, c_S equals c of the completion of S times the product of the
// co-singleton coefficients over the completion minus S.
bool is_ncf_by_coefficients(const CoefficientVector& c,
                            const std::vector<unsigned>& sigma);

struct NcfEnumeration {
  unsigned n = 0;
  std::vector<CoefficientVector> functions;  // deduplicated, sorted
  size_t count() const { return functions.size(); }
};

// Union over all n! variable orders of the coefficient-relation solution
// sets. TooLarge for n > 4.
NcfEnumeration enumerate_ncfs(unsigned n);

// ANF as a reduced polynomial over the two-element field, and back.
poly::Polynomial to_polynomial(const CoefficientVector& c);
CoefficientVector from_polynomial(const poly::Polynomial& p);

}  // namespace fdslab::ncf
