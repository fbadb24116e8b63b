#pragma once

// Sparse multivariate polynomials over GF(p) with canonical grevlex-descending
// term order, plus the text syntax used by session files.

#include <burch/ring.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace burch {

struct Term {
  Coef coef = 0;
  Monomial mono;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  /// Builds a canonical polynomial from arbitrary (unsorted, unmerged) terms.
  Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    canonicalize();
  }

  static Polynomial constant(RingPtr ring, std::int64_t c) {
    Coef v = ring->field.from_int(c);
    Polynomial p(ring);
    if (v != 0) p.terms_.push_back({v, ring->one()});
    return p;
  }

  static Polynomial monomial(RingPtr ring, const Monomial& m, Coef c = 1) {
    Polynomial p(ring);
    if (c != 0) p.terms_.push_back({c, m});
    return p;
  }

  static Polynomial variable(RingPtr ring, int i) { return monomial(ring, ring->var(i)); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Term& lead() const { return terms_.front(); }
  const Monomial& lead_monomial() const { return terms_.front().mono; }
  Coef lead_coef() const { return terms_.front().coef; }

  /// Total degree of the leading term; -1 for zero.
  int degree() const { return is_zero() ? -1 : static_cast<int>(terms_.front().mono.deg); }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.mono.deg != terms_.front().mono.deg) return false;
    return true;
  }

  /// Degree-0 part, i.e. the constant coefficient.
  Coef constant_coef() const {
    if (!is_zero() && terms_.back().mono.deg == 0) return terms_.back().coef;
    return 0;
  }

  Polynomial monic() const {
    if (is_zero() || lead_coef() == 1) return *this;
    return scaled(ring_->field.inv(lead_coef()));
  }

  Polynomial scaled(Coef c) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({ring_->field.mul(t.coef, c), t.mono});
    return r;
  }

  Polynomial times_monomial(const Monomial& m, Coef c = 1) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({ring_->field.mul(t.coef, c), t.mono * m});
    return r;
  }

  Polynomial operator-() const { return scaled(ring_->field.neg(1)); }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) { return f.axpy(1, g); }
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) {
    return f.axpy(f.field().neg(1), g);
  }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    require_same_ring(f.ring_, g.ring_);
    Polynomial acc(f.ring_);
    if (f.is_zero() || g.is_zero()) return acc;
    std::vector<Term> all;
    all.reserve(f.size() * g.size());
    const auto& F = f.field();
    for (const auto& a : f.terms_)
      for (const auto& b : g.terms_) all.push_back({F.mul(a.coef, b.coef), a.mono * b.mono});
    return Polynomial(f.ring_, std::move(all));
  }

  /// Returns this + c * g.
  Polynomial axpy(Coef c, const Polynomial& g) const {
    require_same_ring(ring_, g.ring_);
    const auto& F = field();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      Coef gc = F.mul(c, g.terms_[j].coef);
      if (i == terms_.size()) {
        if (gc) r.terms_.push_back({gc, g.terms_[j].mono});
        ++j;
        continue;
      }
      auto o = grevlex(terms_[i].mono, g.terms_[j].mono);
      if (o > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (o < 0) {
        if (gc) r.terms_.push_back({gc, g.terms_[j].mono});
        ++j;
      } else {
        Coef s = F.add(terms_[i].coef, gc);
        if (s) r.terms_.push_back({s, terms_[i].mono});
        ++i;
        ++j;
      }
    }
    return r;
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    if (f.terms_.size() != g.terms_.size()) return false;
    for (std::size_t i = 0; i < f.terms_.size(); ++i)
      if (f.terms_[i].coef != g.terms_[i].coef || !(f.terms_[i].mono == g.terms_[i].mono)) return false;
    return true;
  }

  const PrimeField& field() const { return ring_->field; }

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return grevlex(a.mono, b.mono) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    const auto& F = field();
    for (const auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coef = F.add(out.back().coef, t.coef);
      } else {
        out.push_back(t);
      }
      if (!out.empty() && out.back().coef == 0) out.pop_back();
    }
    terms_ = std::move(out);
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline std::string monomial_to_string(const Ring& ring, const Monomial& m) {
  std::string s;
  for (int i = 0; i < ring.nvars(); ++i) {
    if (m.exp[static_cast<std::size_t>(i)] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.vars[static_cast<std::size_t>(i)];
    if (m.exp[static_cast<std::size_t>(i)] > 1) s += '^' + std::to_string(m.exp[static_cast<std::size_t>(i)]);
  }
  return s.empty() ? "1" : s;
}

/// Canonical text form; coefficients use the symmetric residue.
inline std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const Ring& R = *f.ring();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::int64_t c = R.field.to_signed(t.coef);
    bool neg = c < 0;
    std::int64_t a = neg ? -c : c;
    if (neg) out += "-";
    else if (!first) out += "+";
    if (t.mono.is_one()) {
      out += std::to_string(a);
    } else {
      if (a != 1) out += std::to_string(a) + "*";
      out += monomial_to_string(R, t.mono);
    }
    first = false;
  }
  return out;
}

/// Parse failure with a 1-based column into the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text, int line, int col0)
      : ring_(ring), s_(text), line_(line), col0_(col0) {}

  Polynomial parse() {
    std::vector<Term> terms;
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      bool neg = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        neg = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      terms.push_back(parse_term(neg));
      first = false;
    }
    return Polynomial(ring_, std::move(terms));
  }

 private:
  Term parse_term(bool neg) {
    const auto& F = ring_->field;
    Coef c = neg ? F.neg(1) : 1;
    Monomial m = ring_->one();
    bool any = false;
    while (true) {
      skip();
      if (pos_ == s_.size()) fail("expected factor");
      char ch = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c = F.mul(c, F.from_int(read_int()));
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        int idx = -1;
        for (int i = 0; i < ring_->nvars(); ++i)
          if (ring_->vars[static_cast<std::size_t>(i)] == name) idx = i;
        if (idx < 0) fail("unknown variable '" + name + "'", start);
        std::int64_t e = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
          e = read_int();
        }
        if (e > 0xFFFF) fail("exponent exceeds 16-bit limit");
        m = m * Monomial::variable(ring_->nvars(), idx, static_cast<int>(e));
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      any = true;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return {c, m};
  }

  std::int64_t read_int() {
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (std::int64_t{1} << 40)) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError(msg, line_, col0_ + static_cast<int>(at) + 1);
  }

  const RingPtr& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
};

}  // namespace detail

/// Parses `coeff*x1^e1*x2^e2 +/- ...`. Multiplication must be explicit.
inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, int line = 1, int col0 = 0) {
  return detail::PolyParser(ring, text, line, col0).parse();
}

}  // namespace burch
