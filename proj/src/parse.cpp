#include "fdslab/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fdslab::parse {

namespace {

// Character-level cursor with 1-based line/column tracking.
struct Cursor {
  std::string_view text;
  size_t pos = 0;
  unsigned line = 1, col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_space() {
    while (!done() && (peek() == ' ' || peek() == '\t')) take();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line, col, what);
  }
};

struct PolyParser {
  Cursor cur;
  const ff::FieldSpec& field;
  unsigned n;

  PolyParser(std::string_view text, const ff::FieldSpec& f, unsigned nvars,
             unsigned line_offset, unsigned col_offset)
      : cur{text}, field(f), n(nvars) {
    cur.line += line_offset;
    cur.col += col_offset;
  }

  bool starts_factor() {
    cur.skip_space();
    if (cur.done()) return false;
    char c = cur.peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' ||
           c == 'a' || c == '(';
  }

  unsigned long long integer() {
    cur.skip_space();
    if (cur.done() || !std::isdigit(static_cast<unsigned char>(cur.peek())))
      cur.fail("expected a number");
    unsigned long long v = 0;
    unsigned digits = 0;
    while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      if (++digits > 18) cur.fail("number too long");
      v = v * 10 + static_cast<unsigned long long>(cur.take() - '0');
    }
    return v;
  }

  poly::Polynomial atom() {
    cur.skip_space();
    if (cur.done()) cur.fail("expected a term");
    char c = cur.peek();
    if (c == '(') {
      cur.take();
      auto e = expr();
      cur.skip_space();
      if (cur.done() || cur.peek() != ')') cur.fail("expected )");
      cur.take();
      return e;
    }
    if (c == 'x') {
      cur.take();
      if (cur.done() || !std::isdigit(static_cast<unsigned char>(cur.peek())))
        cur.fail("expected a variable index after x");
      unsigned long long idx = integer();
      if (idx == 0 || idx > n)
        cur.fail("variable x" + std::to_string(idx) + " is outside x1..x" +
                 std::to_string(n));
      return poly::Polynomial::variable(field, n,
                                        static_cast<unsigned>(idx - 1));
    }
    if (c == 'a') {
      if (field.q() != 4)
        cur.fail("the literal a only makes sense over GF(4)");
      cur.take();
      return poly::Polynomial::constant(field, n, field.generator());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned long long v = integer();
      return poly::Polynomial::constant(
          field, n,
          field.from_int(static_cast<long long>(v % field.characteristic())));
    }
    cur.fail("unexpected character");
  }

  poly::Polynomial factor() {
    auto base = atom();
    cur.skip_space();
    if (!cur.done() && cur.peek() == '^') {
      cur.take();
      unsigned long long e = integer();
      return base.pow(e);
    }
    return base;
  }

  poly::Polynomial term() {
    auto acc = factor();
    for (;;) {
      cur.skip_space();
      if (!cur.done() && cur.peek() == '*') {
        cur.take();
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  poly::Polynomial expr() {
    cur.skip_space();
    bool negate = false;
    if (!cur.done() && (cur.peek() == '-' || cur.peek() == '+')) {
      negate = cur.take() == '-';
    }
    auto acc = term();
    if (negate) acc = -acc;
    for (;;) {
      cur.skip_space();
      if (cur.done()) return acc;
      char c = cur.peek();
      if (c == '+') {
        cur.take();
        acc = acc + term();
      } else if (c == '-') {
        cur.take();
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  poly::Polynomial parse_all() {
    auto e = expr();
    cur.skip_space();
    if (!cur.done()) cur.fail("trailing characters after the polynomial");
    return e;
  }
};

// Strip a trailing comment and surrounding whitespace.
std::string clean_line(std::string line) {
  auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t'))
    line.pop_back();
  size_t start = line.find_first_not_of(" \t");
  return start == std::string::npos ? std::string() : line.substr(start);
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::string tok;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == ',' || c == ';') {
      if (!tok.empty()) out.push_back(std::move(tok));
      tok.clear();
    } else {
      tok.push_back(c);
    }
  }
  if (!tok.empty()) out.push_back(std::move(tok));
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IOError("cannot read " + path);
  return ss.str();
}

poly::Polynomial polynomial(std::string_view text, const ff::FieldSpec& field,
                            unsigned n, unsigned line_offset,
                            unsigned col_offset) {
  PolyParser p(text, field, n, line_offset, col_offset);
  return p.parse_all();
}

dynamics::FiniteDynamicalSystem system_file(const std::string& text,
                                            const ff::FieldSpec& field) {
  // First pass: count the equations to fix n. The cleaned text is a
  // contiguous slice of the raw line, so remembering where it starts keeps
  // error columns pointing into the original file.
  struct Line {
    unsigned no;
    unsigned front;  // column offset of the cleaned text in the raw line
    std::string text;
  };
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    unsigned no = 0;
    while (std::getline(in, raw)) {
      ++no;
      auto line = clean_line(raw);
      if (line.empty()) continue;
      auto front = static_cast<unsigned>(raw.find_first_not_of(" \t"));
      lines.push_back({no, front, std::move(line)});
    }
  }
  if (lines.empty()) throw EmptyData("system file has no equations");
  unsigned n = static_cast<unsigned>(lines.size());

  std::vector<poly::Polynomial> coords;
  for (unsigned i = 0; i < n; ++i) {
    const auto& [no, front, line] = lines[i];
    std::string body = line;
    unsigned col = front;
    // Optional "f<k> =" prefix; k must match the position.
    if (body.size() >= 2 && body[0] == 'f' &&
        std::isdigit(static_cast<unsigned char>(body[1]))) {
      size_t p = 1;
      unsigned long long k = 0;
      while (p < body.size() &&
             std::isdigit(static_cast<unsigned char>(body[p])))
        k = k * 10 + static_cast<unsigned long long>(body[p++] - '0');
      size_t eq = body.find_first_not_of(" \t", p);
      if (eq != std::string::npos && body[eq] == '=') {
        if (k != i + 1)
          throw ParseError(no, front + 1,
                           "equation f" + std::to_string(k) +
                               " found where f" + std::to_string(i + 1) +
                               " was expected");
        col += static_cast<unsigned>(eq + 1);
        body = body.substr(eq + 1);
      }
    }
    coords.push_back(polynomial(body, field, n, no - 1, col));
  }
  return dynamics::FiniteDynamicalSystem::make(field, std::move(coords));
}

linalg::Matrix matrix_file(const std::string& text,
                           const ff::FieldSpec& field) {
  std::vector<std::vector<uint8_t>> rows;
  std::istringstream in(text);
  std::string raw;
  unsigned no = 0;
  size_t width = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto line = clean_line(raw);
    if (line.empty()) continue;
    std::vector<uint8_t> row;
    for (const auto& tok : split_tokens(line)) {
      auto v = field.parse_literal(tok);
      if (!v)
        throw ParseError(no, 1, "bad field literal '" + tok + "'");
      row.push_back(*v);
    }
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw ParseError(no, 1, "row has " + std::to_string(row.size()) +
                                  " entries, expected " +
                                  std::to_string(width));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw EmptyData("matrix file has no rows");
  linalg::Matrix m = linalg::Matrix::zero(
      field, static_cast<unsigned>(rows.size()), static_cast<unsigned>(width));
  for (unsigned r = 0; r < m.rows; ++r)
    for (unsigned c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  return m;
}

namespace {

bool is_header(const std::vector<std::string>& toks) {
  if (toks.empty() || toks[0] != "x1") return false;
  for (size_t i = 0; i < toks.size(); ++i)
    if (toks[i] != "x" + std::to_string(i + 1)) return false;
  return true;
}

}  // namespace

inference::TimeSeries time_series_csv(const std::string& text,
                                      const ff::FieldSpec& field) {
  std::istringstream in(text);
  std::string raw;
  unsigned no = 0;
  unsigned n = 0;
  std::vector<std::vector<std::vector<uint8_t>>> segments;
  std::vector<std::vector<uint8_t>> current;
  bool saw_header = false;
  auto flush = [&] {
    if (!current.empty()) segments.push_back(std::move(current));
    current.clear();
  };
  while (std::getline(in, raw)) {
    ++no;
    auto line = clean_line(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    auto toks = split_tokens(line);
    if (is_header(toks)) {
      if (!saw_header) {
        n = static_cast<unsigned>(toks.size());
        saw_header = true;
      } else if (toks.size() != n) {
        throw ParseError(no, 1, "repeated header of different width");
      }
      flush();
      continue;
    }
    if (!saw_header)
      throw ParseError(no, 1, "expected a header line x1,...,xn");
    if (toks.size() != n)
      throw ParseError(no, 1, "state has " + std::to_string(toks.size()) +
                                  " entries, expected " + std::to_string(n));
    std::vector<uint8_t> state;
    for (const auto& tok : toks) {
      auto v = field.parse_literal(tok);
      if (!v) throw ParseError(no, 1, "bad field literal '" + tok + "'");
      state.push_back(*v);
    }
    current.push_back(std::move(state));
  }
  flush();
  if (!saw_header) throw EmptyData("time series file is empty");
  return inference::TimeSeries::make(field, n, std::move(segments));
}

std::vector<std::vector<std::vector<double>>> real_csv(
    const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  unsigned no = 0;
  size_t n = 0;
  bool saw_header = false;
  std::vector<std::vector<std::vector<double>>> segments;
  std::vector<std::vector<double>> current;
  auto flush = [&] {
    if (!current.empty()) segments.push_back(std::move(current));
    current.clear();
  };
  while (std::getline(in, raw)) {
    ++no;
    auto line = clean_line(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    auto toks = split_tokens(line);
    if (is_header(toks)) {
      if (!saw_header) {
        n = toks.size();
        saw_header = true;
      } else if (toks.size() != n) {
        throw ParseError(no, 1, "repeated header of different width");
      }
      flush();
      continue;
    }
    if (!saw_header)
      throw ParseError(no, 1, "expected a header line x1,...,xn");
    if (toks.size() != n)
      throw ParseError(no, 1, "row has " + std::to_string(toks.size()) +
                                  " entries, expected " + std::to_string(n));
    std::vector<double> row;
    for (const auto& tok : toks) {
      try {
        size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(no, 1, "bad number '" + tok + "'");
      }
    }
    current.push_back(std::move(row));
  }
  flush();
  if (segments.empty()) throw EmptyData("real series file is empty");
  return segments;
}

control::GridState grid_state(const std::string& text) {
  const auto& k = control::gf4();
  control::GridState state;
  std::istringstream in(text);
  std::string raw;
  unsigned no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto line = clean_line(raw);
    if (line.empty()) continue;
    for (const auto& tok : split_tokens(line)) {
      auto v = k.parse_literal(tok);
      if (!v) throw ParseError(no, 1, "bad GF(4) literal '" + tok + "'");
      state.push_back(*v);
    }
  }
  if (state.size() != 331)
    throw ShapeError("grid state has " + std::to_string(state.size()) +
                     " cells, expected 331");
  return state;
}

}  // namespace fdslab::parse
