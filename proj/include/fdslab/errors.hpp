#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fdslab {

// Base class for all library errors. `kind()` is a stable machine-readable
// name; the what() string is "<kind>: <detail>".
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define FDSLAB_ERROR_CLASS(Name)                                     \
  class Name : public Error {                                        \
  public:                                                            \
    explicit Name(const std::string& detail) : Error(#Name, detail) {} \
  }

FDSLAB_ERROR_CLASS(DivisionByZero);
FDSLAB_ERROR_CLASS(FieldMismatch);
FDSLAB_ERROR_CLASS(ArityError);
FDSLAB_ERROR_CLASS(TooLarge);
FDSLAB_ERROR_CLASS(InconsistentData);
FDSLAB_ERROR_CLASS(IllegalControl);
FDSLAB_ERROR_CLASS(InadmissibleStart);
FDSLAB_ERROR_CLASS(NotEssentialArity);
FDSLAB_ERROR_CLASS(EmptyData);
FDSLAB_ERROR_CLASS(ShapeError);
FDSLAB_ERROR_CLASS(EmptyRanking);
FDSLAB_ERROR_CLASS(UnsupportedField);
FDSLAB_ERROR_CLASS(IOError);

#undef FDSLAB_ERROR_CLASS

// Parse failures carry a 1-based source position.
class ParseError : public Error {
public:
  ParseError(unsigned line, unsigned col, const std::string& detail)
      : Error("ParseError",
              "line " + std::to_string(line) + ", col " + std::to_string(col) +
                  ": " + detail),
        line_(line), col_(col) {}

  unsigned line() const noexcept { return line_; }
  unsigned col() const noexcept { return col_; }

private:
  unsigned line_;
  unsigned col_;
};

}  // namespace fdslab
