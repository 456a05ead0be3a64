#pragma once

#include <cctype>
#include <map>
#include <string>

#include "planefol/vectorfield.hpp"

namespace planefol {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail_parse {

// Intermediate value: scalar polynomial part plus dX/dY/dZ parts, all with
// rational coefficients and unrestricted (possibly non-homogeneous) monomials.
using RawPoly = std::map<Monomial, Rational>;
struct Val {
  RawPoly scal;
  std::array<RawPoly, 3> vec;
  bool has_vec = false;
};

inline void add_into(RawPoly& a, const RawPoly& b, int sign) {
  for (const auto& [m, c] : b) {
    auto& slot = a[m];
    slot += sign > 0 ? c : -c;
    if (sgn(slot) == 0) a.erase(m);
  }
}
inline RawPoly mul_raw(const RawPoly& a, const RawPoly& b) {
  RawPoly r;
  for (const auto& [m1, c1] : a)
    for (const auto& [m2, c2] : b) {
      Monomial m = {m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]};
      auto& slot = r[m];
      slot += c1 * c2;
      if (sgn(slot) == 0) r.erase(m);
    }
  return r;
}

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& str) : s(str) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos));
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  Val parse_expr() {
    Val v = parse_term();
    for (;;) {
      skip_ws();
      if (eat('+')) {
        Val t = parse_term();
        combine_add(v, t, +1);
      } else if (eat('-')) {
        Val t = parse_term();
        combine_add(v, t, -1);
      } else {
        return v;
      }
    }
  }

  Val parse_term() {
    Val v = parse_unary();
    for (;;) {
      skip_ws();
      if (eat('*')) {
        Val t = parse_unary();
        v = combine_mul(v, t);
      } else if (eat('/')) {
        Val t = parse_unary();
        v = combine_div(v, t);
      } else if (pos < s.size() &&
                 (std::isalnum((unsigned char)s[pos]) || s[pos] == '(')) {
        // juxtaposition, e.g. "X^2 dX" or "2X"
        Val t = parse_unary();
        v = combine_mul(v, t);
      } else {
        return v;
      }
    }
  }

  Val parse_unary() {
    skip_ws();
    int sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
      skip_ws();
    }
    Val v = parse_power();
    if (sign < 0) {
      Val neg;
      neg.scal[{0, 0, 0}] = Rational(-1);
      v = combine_mul(neg, v);
    }
    return v;
  }

  Val parse_power() {
    Val base = parse_atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected exponent");
      long e = 0;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
        e = e * 10 + (s[pos++] - '0');
      if (base.has_vec) fail("cannot exponentiate a differential");
      Val r;
      r.scal[{0, 0, 0}] = Rational(1);
      for (long i = 0; i < e; ++i) r.scal = mul_raw(r.scal, base.scal);
      return r;
    }
    return base;
  }

  Val parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Val v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      Val v;
      v.scal[{0, 0, 0}] = rat_parse(s.substr(start, pos - start));
      return v;
    }
    if (c == 'd') {
      if (pos + 1 >= s.size()) fail("dangling 'd'");
      char var = s[pos + 1];
      int idx = var == 'X' ? 0 : var == 'Y' ? 1 : var == 'Z' ? 2 : -1;
      if (idx < 0) fail("expected dX, dY or dZ");
      pos += 2;
      Val v;
      v.has_vec = true;
      v.vec[idx][{0, 0, 0}] = Rational(1);
      return v;
    }
    if (c == 'X' || c == 'Y' || c == 'Z') {
      ++pos;
      int idx = c == 'X' ? 0 : c == 'Y' ? 1 : 2;
      Val v;
      Monomial m = {0, 0, 0};
      m[idx] = 1;
      v.scal[m] = Rational(1);
      return v;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  static void combine_add(Val& a, const Val& b, int sign) {
    add_into(a.scal, b.scal, sign);
    for (int i = 0; i < 3; ++i) add_into(a.vec[i], b.vec[i], sign);
    a.has_vec = a.has_vec || b.has_vec;
  }
  Val combine_mul(const Val& a, const Val& b) {
    if (a.has_vec && b.has_vec) fail("product of two differentials");
    Val r;
    r.has_vec = a.has_vec || b.has_vec;
    if (!a.has_vec && !b.has_vec) {
      r.scal = mul_raw(a.scal, b.scal);
    } else {
      const Val& vv = a.has_vec ? a : b;
      const Val& sv = a.has_vec ? b : a;
      if (!sv.vec[0].empty() || !sv.vec[1].empty() || !sv.vec[2].empty())
        fail("product of two differentials");
      for (int i = 0; i < 3; ++i) r.vec[i] = mul_raw(sv.scal, vv.vec[i]);
      r.scal = mul_raw(sv.scal, vv.scal);
    }
    return r;
  }
  Val combine_div(const Val& a, const Val& b) {
    if (b.has_vec) fail("division by a differential");
    if (b.scal.size() != 1 || b.scal.begin()->first != Monomial{0, 0, 0})
      fail("division only by nonzero constants");
    Rational inv = Rational(1) / b.scal.begin()->second;
    Val c;
    c.scal[{0, 0, 0}] = inv;
    return combine_mul(a, c);
  }
};

inline HomogPoly raw_to_homog(const RawPoly& p, const NFPtr& F, const char* what) {
  if (p.empty()) return HomogPoly::zero(F, 0);
  int deg = -1;
  for (const auto& [m, c] : p) {
    int d = m[0] + m[1] + m[2];
    if (deg < 0) deg = d;
    if (d != deg)
      throw ParseError(std::string(what) + " is not homogeneous (degrees " +
                       std::to_string(deg) + " and " + std::to_string(d) + ")");
  }
  HomogPoly h(F, deg);
  for (const auto& [m, c] : p) h.terms[m] = FieldElement::from_rational(F, c);
  return h;
}

}  // namespace detail_parse

// Parse the CLI vector-field grammar, e.g. "Z^2*dX + X^2*dY + Y^2*dZ".
inline HomogVectorField parse_vector_field(const std::string& text) {
  using namespace detail_parse;
  Parser p(text);
  Val v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  if (!v.has_vec) throw ParseError("expression contains no dX/dY/dZ component");
  if (!v.scal.empty()) throw ParseError("expression has a stray scalar part");
  const NFPtr F = NumberField::rationals();
  HomogPoly A = raw_to_homog(v.vec[0], F, "dX component");
  HomogPoly B = raw_to_homog(v.vec[1], F, "dY component");
  HomogPoly C = raw_to_homog(v.vec[2], F, "dZ component");
  int d = -1;
  for (const HomogPoly* h : {&A, &B, &C})
    if (!h->is_zero()) {
      if (d >= 0 && h->d != d)
        throw ParseError("components have different degrees");
      d = h->d;
    }
  if (d < 0) throw ParseError("zero vector field");
  auto fix = [&](HomogPoly h) { return h.is_zero() ? HomogPoly::zero(F, d) : h; };
  return HomogVectorField(fix(A), fix(B), fix(C));
}

// Parse a plain homogeneous polynomial, e.g. a curve equation "X - Z".
inline HomogPoly parse_homog_poly(const std::string& text) {
  using namespace detail_parse;
  Parser p(text);
  Val v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  if (v.has_vec) throw ParseError("unexpected differential in polynomial");
  if (v.scal.empty()) throw ParseError("zero polynomial");
  return raw_to_homog(v.scal, NumberField::rationals(), "polynomial");
}

// Inverse of parse_vector_field for fields over Q (CLI "gen" output format).
inline std::string render_vector_field(const HomogVectorField& v) {
  std::string out;
  const char* dv[3] = {"dX", "dY", "dZ"};
  bool first = true;
  for (int i = 0; i < 3; ++i) {
    const HomogPoly& h = v.comp(i);
    if (h.is_zero()) continue;
    std::string part;
    if (h.terms.size() == 1) {
      std::string ps = h.str();
      part = (ps == "1") ? std::string(dv[i]) : ps + "*" + dv[i];
      if (!first && !part.empty() && part[0] == '-') {
        out += " - " + part.substr(1);
        continue;
      }
    } else {
      part = "(" + h.str() + ")*" + dv[i];
    }
    out += first ? part : " + " + part;
    first = false;
  }
  return out.empty() ? "0" : out;
}

}  // namespace planefol
