#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "planefol/factorize.hpp"
#include "planefol/qpoly.hpp"

namespace planefol {

struct NotIrreducible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Q[t]/(m(t)) with m monic irreducible.  degree 1 means Q itself.
// No towers: every algebraic value in the library lives in one such field.
class NumberField {
 public:
  using Ptr = std::shared_ptr<const NumberField>;

  const QPoly min_poly;
  const int degree;
  const std::optional<unsigned long> cyclotomic_n;  // tag "cyclotomic(n)" when known

  static Ptr rationals() {
    static Ptr q =
        Ptr(new NumberField(QPoly({Rational(0), Rational(1)}), std::nullopt, true));
    return q;
  }

  // For n <= 2 the root of unity is rational, so the field is just Q.
  static Ptr cyclotomic(unsigned long n) {
    if (n <= 2) return rationals();
    static std::map<unsigned long, Ptr> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Ptr f = Ptr(new NumberField(cyclotomic_minpoly(n), n, /*checked=*/true));
    cache[n] = f;
    return f;
  }

  // User-supplied minimal polynomial: monicity and irreducibility are checked.
  static Ptr create(const QPoly& m, int degree_cap = 64) {
    if (m.deg() < 1) throw std::invalid_argument("min_poly must have degree >= 1");
    QPoly mm = m.monic();
    if (mm.deg() > 1 && !is_irreducible(mm, degree_cap))
      throw NotIrreducible("min_poly is not irreducible over Q");
    return Ptr(new NumberField(mm, std::nullopt, true));
  }

  // As above but tagging the field cyclotomic(n) (caller vouches m = Phi_n).
  static Ptr create_cyclotomic_tagged(const QPoly& m, unsigned long n) {
    return Ptr(new NumberField(m.monic(), n, true));
  }

  bool is_q() const { return degree == 1; }

  bool same_as(const NumberField& o) const {
    return this == &o || min_poly == o.min_poly;
  }

  // t^(degree + i) reduced mod min_poly, for i in [0, degree-2].
  const std::vector<std::vector<Rational>>& reduction_rows() const { return red_; }
  // Tr(t^i) for i in [0, 2*degree-2].
  const std::vector<Rational>& trace_powers() const { return tr_; }

  std::string str() const {
    if (is_q()) return "Q";
    std::string s = "Q[t]/(" + min_poly.str() + ")";
    if (cyclotomic_n) s += " [cyclotomic(" + std::to_string(*cyclotomic_n) + ")]";
    return s;
  }

 private:
  std::vector<std::vector<Rational>> red_;
  std::vector<Rational> tr_;

  NumberField(QPoly m, std::optional<unsigned long> cyc, bool)
      : min_poly(std::move(m)), degree(min_poly.deg()), cyclotomic_n(cyc) {
    const int n = degree;
    // reduction rows: t^(n+i) as vector in power basis
    std::vector<Rational> cur(n);  // t^n = -sum m_i t^i
    for (int i = 0; i < n; ++i) cur[i] = -min_poly.c[i];
    for (int i = 0; i <= n - 2; ++i) {
      red_.push_back(cur);
      // multiply by t
      std::vector<Rational> nxt(n, Rational(0));
      for (int j = 0; j < n - 1; ++j) nxt[j + 1] = cur[j];
      Rational top = cur[n - 1];
      if (sgn(top) != 0)
        for (int j = 0; j < n; ++j) nxt[j] += top * (-min_poly.c[j]);
      cur = std::move(nxt);
    }
    // Newton power sums: s_k + m_{n-1} s_{k-1} + ... + k*m_{n-k} = 0
    tr_.resize(2 * n - 1);
    tr_[0] = Rational(n);
    for (int k = 1; k <= 2 * n - 2; ++k) {
      Rational s(0);
      for (int i = 1; i < k; ++i)
        if (n - i >= 0) s += min_poly.coeff(n - i) * tr_[k - i];
      if (k <= n) s += Rational(k) * min_poly.coeff(n - k);
      tr_[k] = -s;
    }
  }
};

using NFPtr = NumberField::Ptr;

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(NFPtr f, std::vector<Rational> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    c_.resize(f_->degree, Rational(0));
    for (auto& a : c_) a.canonicalize();  // defend against raw mpq_class(n,d) inputs
  }
  static FieldElement from_rational(const NFPtr& f, const Rational& r) {
    std::vector<Rational> c(f->degree, Rational(0));
    c[0] = r;
    return FieldElement(f, std::move(c));
  }
  static FieldElement zero(const NFPtr& f) { return from_rational(f, Rational(0)); }
  static FieldElement one(const NFPtr& f) { return from_rational(f, Rational(1)); }
  // the generator t (requires degree >= 2)
  static FieldElement gen(const NFPtr& f) {
    std::vector<Rational> c(f->degree, Rational(0));
    if (f->degree < 2) throw std::invalid_argument("gen: field is Q");
    c[1] = Rational(1);
    return FieldElement(f, std::move(c));
  }

  const NFPtr& field() const { return f_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& a : c_)
      if (sgn(a) != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }
  Rational rational_value() const {
    if (!is_rational()) throw std::logic_error("FieldElement is not rational");
    return c_[0];
  }

  bool operator==(const FieldElement& o) const {
    check(o);
    return c_ == o.c_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement operator-() const {
    FieldElement r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  FieldElement operator+(const FieldElement& o) const {
    check(o);
    FieldElement r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  FieldElement operator-(const FieldElement& o) const { return *this + (-o); }
  FieldElement operator*(const FieldElement& o) const {
    check(o);
    const int n = f_->degree;
    if (n == 1) return from_rational(f_, c_[0] * o.c_[0]);
    std::vector<Rational> conv(2 * n - 1, Rational(0));
    for (int i = 0; i < n; ++i) {
      if (sgn(c_[i]) == 0) continue;
      for (int j = 0; j < n; ++j) conv[i + j] += c_[i] * o.c_[j];
    }
    const auto& red = f_->reduction_rows();
    std::vector<Rational> out(conv.begin(), conv.begin() + n);
    for (int i = 0; i <= n - 2; ++i) {
      if (sgn(conv[n + i]) == 0) continue;
      for (int j = 0; j < n; ++j) out[j] += conv[n + i] * red[i][j];
    }
    return FieldElement(f_, std::move(out));
  }
  FieldElement operator*(const Rational& r) const {
    FieldElement out = *this;
    for (auto& a : out.c_) a *= r;
    return out;
  }

  FieldElement inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero field element");
    if (f_->degree == 1) return from_rational(f_, Rational(1) / c_[0]);
    QPoly a{std::vector<Rational>(c_)};
    auto [g, u, w] = QPoly::xgcd(a, f_->min_poly);
    (void)w;
    if (g.deg() != 0) throw std::logic_error("min_poly not irreducible?");
    std::vector<Rational> out(f_->degree, Rational(0));
    for (int i = 0; i <= u.deg() && i < f_->degree; ++i) out[i] = u.c[i];
    return FieldElement(f_, std::move(out));
  }
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

  FieldElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement r = one(f_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // Trace down to Q (sum of conjugates).
  Rational trace() const {
    const auto& tp = f_->trace_powers();
    Rational s(0);
    for (size_t i = 0; i < c_.size(); ++i) s += c_[i] * tp[i];
    return s;
  }

  // Serialization "c0 + c1*t + ..."; rationals render bare.
  std::string str() const {
    if (f_->degree == 1) return rat_str(c_[0]);
    QPoly p{std::vector<Rational>(c_)};
    return p.str("t");
  }
  std::string str_with_field() const {
    if (f_->degree == 1) return str();
    return str() + " (mod " + f_->min_poly.str() + ")";
  }

 private:
  NFPtr f_;
  std::vector<Rational> c_;

  void check(const FieldElement& o) const {
    if (!f_ || !o.f_ || !f_->same_as(*o.f_))
      throw FieldMismatch("field elements from different number fields");
  }
};

// Ring homomorphism determined by t -> x: evaluate the power-basis coefficients.
// Used for cyclotomic embeddings and Galois conjugation.
inline FieldElement map_element(const FieldElement& a, const NFPtr& target,
                                const FieldElement& image_of_t) {
  FieldElement r = FieldElement::zero(target);
  const auto& c = a.coeffs();
  for (int i = (int)c.size() - 1; i >= 0; --i)
    r = r * image_of_t + FieldElement::from_rational(target, c[i]);
  return r;
}

// Multiplicative order of a, searched up to 'cap'; 0 when none found.
inline long element_order(const FieldElement& a, long cap) {
  FieldElement p = a;
  FieldElement one = FieldElement::one(a.field());
  for (long n = 1; n <= cap; ++n) {
    if (p == one) return n;
    p = p * a;
  }
  return 0;
}

}  // namespace planefol
