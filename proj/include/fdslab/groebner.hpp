#pragma once

#include <cstdint>
#include <vector>

#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"
#include "fdslab/poly.hpp"

namespace fdslab::groebner {

// A set of pairwise distinct points in k^n.
struct PointSet {
  const ff::FieldSpec* field = nullptr;
  unsigned n = 0;
  std::vector<std::vector<uint8_t>> points;

  static PointSet make(const ff::FieldSpec& field, unsigned n,
                       std::vector<std::vector<uint8_t>> points);
  size_t size() const { return points.size(); }
};

// Vanishing ideal of a point set: reduced Groebner basis, the complementary
// standard monomials, and enough factorization state to interpolate cheaply.
struct IdealOfPoints {
  poly::TermOrder order;
  std::vector<poly::Polynomial> basis;
  std::vector<poly::Monomial> standard_monomials;
  PointSet points;

  // Row-reduced standard monomial evaluation data kept from the
  // Buchberger-Moeller run; rows[k] is the reduced evaluation vector whose
  // combination is recorded in exprs[k], pivots[k] its pivot column.
  std::vector<std::vector<uint8_t>> rows;
  std::vector<std::vector<uint8_t>> exprs;
  std::vector<size_t> pivots;
};

// Buchberger-Moeller over the reduced-monomial function ring: enumerate
// monomials in increasing order, keep those with independent evaluation
// vectors as standard monomials, turn each dependent one into a monic basis
// element with tail supported on the standard monomials.
IdealOfPoints ideal_of_points(const PointSet& ps, const poly::TermOrder& order);

// Unique polynomial supported on the ideal's standard monomials taking the
// given value at each point.
poly::Polynomial interpolate(const IdealOfPoints& ideal,
                             const std::vector<uint8_t>& values);

// Convenience: deduplicates equal (point, value) pairs, rejects conflicting
// ones, builds the ideal, interpolates.
poly::Polynomial interpolate(const ff::FieldSpec& field, unsigned n,
                             const std::vector<std::vector<uint8_t>>& points,
                             const std::vector<uint8_t>& values,
                             const poly::TermOrder& order);

// Remainder of f under multivariate division by the ideal's basis: no term
// divisible by a basis leading term remains, and the value at every point of
// the ideal is preserved.
poly::Polynomial normal_form(const poly::Polynomial& f,
                             const IdealOfPoints& ideal);

}  // namespace fdslab::groebner
