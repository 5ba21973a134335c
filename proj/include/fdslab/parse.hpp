#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fdslab/control.hpp"
#include "fdslab/dynamics.hpp"
#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"
#include "fdslab/inference.hpp"
#include "fdslab/linalg.hpp"
#include "fdslab/poly.hpp"

namespace fdslab::parse {

// Whole file as a string; IOError when unreadable.
std::string read_file(const std::string& path);

// One polynomial from text. Grammar: sums and differences of products;
// products written with `*` or juxtaposition; `^` for powers; integer
// coefficients (embedded mod p) plus the literal `a` over GF(4); variables
// x1..xn; parentheses. ParseError carries line and column; the offsets shift
// reported positions when `text` is a slice of a larger source.
poly::Polynomial polynomial(std::string_view text, const ff::FieldSpec& field,
                            unsigned n, unsigned line_offset = 0,
                            unsigned col_offset = 0);

// System file: one coordinate polynomial per non-empty line, optionally
// prefixed "f<k> =" with k matching the line's position. `#` starts a
// comment. n is the number of equations.
dynamics::FiniteDynamicalSystem system_file(const std::string& text,
                                            const ff::FieldSpec& field);

// Matrix of field literals, one row per line, entries split on spaces or
// commas.
linalg::Matrix matrix_file(const std::string& text,
                           const ff::FieldSpec& field);

// Time-series CSV: header x1,..,xn; one state per line as field literals;
// blank lines split segments; the header may repeat after a blank line.
inference::TimeSeries time_series_csv(const std::string& text,
                                      const ff::FieldSpec& field);

// Same layout with real-valued entries, for discretization.
std::vector<std::vector<std::vector<double>>> real_csv(
    const std::string& text);

// 331 whitespace-separated GF(4) literals in cell-id order.
control::GridState grid_state(const std::string& text);

}  // namespace fdslab::parse
