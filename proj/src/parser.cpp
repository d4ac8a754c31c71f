#include "stlmon/parser.hpp"

#include <cctype>
#include <cstdlib>

namespace stlmon {
namespace {

struct Lexer {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) {
      throw ParseError(std::string("expected '") + c + "' " + what, pos);
    }
  }

  /* Word = maximal run of letters, optionally followed by digits (so that
   * variable names like x12 lex as one token). */
  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected a name", pos);
    return std::string(text.substr(start, pos - start));
  }

  int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected an integer", pos);
    return std::atoi(std::string(text.substr(start, pos - start)).c_str());
  }

  double real() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    if (pos == digits) throw ParseError("expected a number", pos);
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      ++pos;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
      size_t exp_start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == exp_start) throw ParseError("malformed exponent", pos);
    }
    return std::strtod(std::string(text.substr(start, pos - start)).c_str(), nullptr);
  }
};

struct Parser {
  Lexer lex;
  std::optional<int> dim;

  TimeWindow time_window() {
    lex.expect('[', "before time window");
    size_t a_pos = lex.pos;
    int a = lex.integer();
    lex.expect(',', "in time window");
    int b = lex.integer();
    lex.expect(']', "after time window");
    if (a > b) throw ParseError("reversed interval: " + std::to_string(a) + " > " + std::to_string(b), a_pos);
    return {a, b};
  }

  Region term() {
    if (lex.accept('!')) return Region::negation(term());
    if (lex.accept('(')) {
      Region r = pred_expr();
      lex.expect(')', "after predicate expression");
      return r;
    }
    lex.skip_ws();
    const size_t name_pos = lex.pos;
    std::string name = lex.word();
    if (name == "true") return Region::whole_space();
    if (name.size() < 2 || name[0] != 'x') {
      throw ParseError("unknown variable name '" + name + "'", name_pos);
    }
    for (size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
        throw ParseError("unknown variable name '" + name + "'", name_pos);
      }
    }
    int index = std::atoi(name.c_str() + 1);
    if (index < 1 || (dim && index > *dim)) {
      throw ParseError("dimension out of range: " + name, name_pos);
    }
    std::string kw = lex.word();
    if (kw != "in") throw ParseError("expected 'in' after variable", lex.pos);
    lex.expect('[', "before value interval");
    size_t lo_pos = lex.pos;
    double lo = lex.real();
    lex.expect(',', "in value interval");
    double hi = lex.real();
    lex.expect(']', "after value interval");
    if (lo > hi) {
      throw ParseError("reversed interval: lower bound exceeds upper bound", lo_pos);
    }
    return Region::axis_interval(index - 1, lo, hi);
  }

  Region pred_expr() {
    Region r = term();
    while (true) {
      if (lex.accept('&')) {
        r = Region::conjunction(std::move(r), term());
      } else if (lex.accept('|')) {
        r = Region::disjunction(std::move(r), term());
      } else {
        return r;
      }
    }
  }

  Region pred() {
    lex.expect('(', "to open a predicate");
    Region r = pred_expr();
    lex.expect(')', "to close the predicate");
    return r;
  }

  TemporalAtom temporal() {
    TemporalAtom atom;
    char c = lex.peek();
    if (c == 'G' || c == 'F') {
      ++lex.pos;
      atom.op = (c == 'G') ? TemporalOp::Always : TemporalOp::Eventually;
      atom.window = time_window();
      atom.region = pred();
      return atom;
    }
    atom.region = pred();
    lex.skip_ws();
    size_t op_pos = lex.pos;
    if (!lex.accept('U')) {
      throw ParseError("expected 'U' or \"U'\" after left predicate", op_pos);
    }
    atom.op = TemporalOp::Until;
    if (lex.pos < lex.text.size() && lex.text[lex.pos] == '\'') {
      ++lex.pos;
      atom.op = TemporalOp::UntilPrime;
    }
    atom.window = time_window();
    atom.region2 = pred();
    return atom;
  }

  Formula formula() {
    Formula f;
    f.atoms.push_back(temporal());
    while (lex.accept('&')) f.atoms.push_back(temporal());
    if (!lex.eof()) throw ParseError("unexpected trailing input", lex.pos);
    return f;
  }
};

}  // namespace

Formula parse_formula(std::string_view text, std::optional<int> dim) {
  Parser p{Lexer{text}, dim};
  if (p.lex.eof()) throw ParseError("empty formula", 0);
  return p.formula();
}

}  // namespace stlmon
