#pragma once

// Prime field scalars, monomials and the polynomial ring descriptor.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace burch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation exceeds a configured resource cap.
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

using Coef = std::uint32_t;

inline constexpr int kMaxVars = 16;
inline constexpr std::uint32_t kDefaultPrime = 32003;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic in GF(p). All inputs are assumed to be reduced residues.
struct PrimeField {
  std::uint32_t p = kDefaultPrime;

  Coef add(Coef a, Coef b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Coef>(s >= p ? s - p : s);
  }
  Coef sub(Coef a, Coef b) const { return a >= b ? a - b : a + p - b; }
  Coef neg(Coef a) const { return a == 0 ? 0 : p - a; }
  Coef mul(Coef a, Coef b) const {
    return static_cast<Coef>(std::uint64_t{a} * b % p);
  }
  Coef inv(Coef a) const {
    if (a == 0) throw Error("division by zero in GF(" + std::to_string(p) + ")");
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    return static_cast<Coef>(t < 0 ? t + p : t);
  }
  Coef div(Coef a, Coef b) const { return mul(a, inv(b)); }
  Coef from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<Coef>(r < 0 ? r + p : r);
  }
  /// Symmetric representative in (-p/2, p/2].
  std::int64_t to_signed(Coef a) const {
    return a > p / 2 ? static_cast<std::int64_t>(a) - p : a;
  }
};

/// Exponent vector with cached total degree. Unused slots stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t deg = 0;
  std::uint8_t nvars = 0;

  Monomial() = default;
  explicit Monomial(int n) : nvars(static_cast<std::uint8_t>(n)) {}

  static Monomial from_exponents(const std::vector<int>& e) {
    if (e.size() > static_cast<std::size_t>(kMaxVars))
      throw Error("too many variables (max " + std::to_string(kMaxVars) + ")");
    Monomial m(static_cast<int>(e.size()));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] > 0xFFFF) throw Error("exponent out of 16-bit range");
      m.exp[i] = static_cast<std::uint16_t>(e[i]);
      m.deg += static_cast<std::uint32_t>(e[i]);
    }
    return m;
  }

  static Monomial variable(int n, int i, int power = 1) {
    Monomial m(n);
    m.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(power);
    m.deg = static_cast<std::uint32_t>(power);
    return m;
  }

  bool is_one() const { return deg == 0; }

  bool divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exp[i] > o.exp[i]) return false;
    return true;
  }

  bool coprime(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exp[i] != 0 && o.exp[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg == b.deg && a.exp == b.exp;
  }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.nvars, b.nvars));
  for (int i = 0; i < kMaxVars; ++i) {
    std::uint32_t s = std::uint32_t{a.exp[i]} + b.exp[i];
    if (s > 0xFFFF) throw Error("exponent overflow (16-bit limit)");
    r.exp[i] = static_cast<std::uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  return r;
}

/// Quotient a / b; requires b | a.
inline Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.nvars, b.nvars));
  for (int i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
  r.deg = a.deg - b.deg;
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.nvars, b.nvars));
  for (int i = 0; i < kMaxVars; ++i) {
    r.exp[i] = std::max(a.exp[i], b.exp[i]);
    r.deg += r.exp[i];
  }
  return r;
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.nvars, b.nvars));
  for (int i = 0; i < kMaxVars; ++i) {
    r.exp[i] = std::min(a.exp[i], b.exp[i]);
    r.deg += r.exp[i];
  }
  return r;
}

/// Degree reverse lexicographic order with x1 > x2 > ... > xn.
inline std::strong_ordering grevlex(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg <=> b.deg;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.exp[i] != b.exp[i]) return b.exp[i] <=> a.exp[i];
  return std::strong_ordering::equal;
}

/// Checked comparison for monomials that must live in the same ring.
inline std::strong_ordering compare(const Monomial& a, const Monomial& b) {
  if (a.nvars != b.nvars) throw Error("monomial variable count mismatch");
  return grevlex(a, b);
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < kMaxVars; ++i) {
      h ^= m.exp[i];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Ambient polynomial ring k[x1..xn] over GF(p).
struct Ring {
  PrimeField field;
  std::vector<std::string> vars;

  int nvars() const { return static_cast<int>(vars.size()); }
  Monomial one() const { return Monomial(nvars()); }
  Monomial var(int i) const { return Monomial::variable(nvars(), i); }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.field.p == b.field.p && a.vars == b.vars;
  }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::uint32_t p, std::vector<std::string> vars) {
  if (!is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) throw Error("modulus must be below 2^31");
  if (vars.empty()) throw Error("ring needs at least one variable");
  if (vars.size() > static_cast<std::size_t>(kMaxVars))
    throw Error("too many variables (max " + std::to_string(kMaxVars) + ")");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Error("duplicate variable name '" + vars[i] + "'");
  auto r = std::make_shared<Ring>();
  r->field.p = p;
  r->vars = std::move(vars);
  return r;
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || a->field.p != b->field.p)
    throw Error("modulus mismatch between operands");
  if (a->vars != b->vars) throw Error("ring mismatch between operands");
}

/// Every monomial of total degree d in n variables, in descending grevlex order.
inline std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  // enumerate compositions of d into n parts
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[static_cast<std::size_t>(i)] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(i)] = k;
      self(self, i + 1, left - k);
    }
  };
  if (n > 0 && d >= 0) rec(rec, 0, d);
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return grevlex(a, b) > 0; });
  return out;
}

}  // namespace burch
