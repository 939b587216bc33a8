#pragma once

// Exact field scalars: arbitrary-precision rationals (GMP) and prime fields F_p.
// No floating point anywhere; every comparison is an exact identity.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace braidtower {

enum class ErrKind { config, refusal, instability };

class Error : public std::runtime_error {
public:
  ErrKind kind;
  Error(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail_config(const std::string& msg) {
  throw Error(ErrKind::config, msg);
}
[[noreturn]] inline void fail_refusal(const std::string& msg) {
  throw Error(ErrKind::refusal, msg);
}
[[noreturn]] inline void fail_instability(const std::string& msg) {
  throw Error(ErrKind::instability, msg);
}

// characteristic == 0 means the rationals, otherwise a prime p.
struct FieldInfo {
  unsigned long long characteristic = 0;

  bool prime_field() const { return characteristic != 0; }
  std::string str() const {
    return prime_field() ? "F" + std::to_string(characteristic) : "Q";
  }
  bool operator==(const FieldInfo&) const = default;
};

inline bool is_prime(unsigned long long p) {
  if (p < 2) return false;
  for (unsigned long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline FieldInfo rational_field() { return FieldInfo{0}; }

inline FieldInfo prime_field(unsigned long long p) {
  if (!is_prime(p)) fail_config("field characteristic " + std::to_string(p) + " is not prime");
  if (p > 0x7fffffffULL) fail_config("prime modulus too large");
  return FieldInfo{p};
}

class Rational {
  mpq_class v_;

public:
  Rational() : v_(0) {}
  Rational(int k) : v_(k) {}
  Rational(long k) : v_((signed long)k) {}
  Rational(long long k) : v_(0) {
    // mpq_class has no long long ctor; go through a decimal string
    v_ = mpq_class(std::to_string(k));
  }
  Rational(long num, long den) : v_((signed long)num, (signed long)den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  static Rational from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool seen_digit = false, seen_slash = false;
    for (; i < s.size(); ++i) {
      if (std::isdigit((unsigned char)s[i])) {
        seen_digit = true;
      } else if (s[i] == '/' && !seen_slash && seen_digit) {
        seen_slash = true;
        seen_digit = false;
      } else {
        throw std::invalid_argument("bad rational literal '" + s + "'");
      }
    }
    if (!seen_digit) throw std::invalid_argument("bad rational literal '" + s + "'");
    mpq_class q(s);
    if (seen_slash && q.get_den() == 0) throw std::domain_error("zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const { return v_ == 0; }
  std::string str() const { return v_.get_str(); }
  const mpq_class& raw() const { return v_; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
};

// Prime-field element carrying its modulus.  Elements built from bare integer
// literals (the generic code writes K(1), K(-2), ...) start unbound (p == 0)
// and adopt a modulus the first time they meet a bound element.
class Fp {
  long long v_;
  long long p_;

  void normalize() {
    if (p_ != 0) {
      v_ %= p_;
      if (v_ < 0) v_ += p_;
    }
  }

  static void check_same(long long a, long long b) {
    if (a != 0 && b != 0 && a != b)
      fail_refusal("mixed prime-field moduli " + std::to_string(a) + " and " + std::to_string(b));
  }

public:
  Fp() : v_(0), p_(0) {}
  Fp(int k) : v_(k), p_(0) {}
  Fp(long k) : v_(k), p_(0) {}
  Fp(long long k) : v_(k), p_(0) {}
  Fp(long long k, unsigned long long p) : v_(k), p_((long long)p) {
    if (p_ < 2) throw std::domain_error("modulus must be at least 2");
    normalize();
  }

  static Fp from_string(const std::string& s, unsigned long long p) {
    if (s.empty()) throw std::invalid_argument("empty scalar literal");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad scalar literal '" + s + "'");
    for (; i < s.size(); ++i)
      if (!std::isdigit((unsigned char)s[i]))
        throw std::invalid_argument("bad prime-field literal '" + s + "'");
    return Fp(std::stoll(s), p);
  }

  long long value() const { return v_; }
  long long modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  std::string str() const { return std::to_string(v_); }

  Fp bound_to(long long p) const {
    check_same(p_, p);
    if (p_ != 0 || p == 0) return *this;
    Fp r;
    r.v_ = v_;
    r.p_ = p;
    r.normalize();
    return r;
  }

  Fp operator-() const {
    Fp r = *this;
    r.v_ = -r.v_;
    r.normalize();
    return r;
  }
  Fp& operator+=(const Fp& o) {
    check_same(p_, o.p_);
    if (p_ == 0) p_ = o.p_;
    v_ += (p_ != 0 ? o.bound_to(p_).v_ : o.v_);
    normalize();
    return *this;
  }
  Fp& operator-=(const Fp& o) { return *this += -o; }
  Fp& operator*=(const Fp& o) {
    check_same(p_, o.p_);
    if (p_ == 0) p_ = o.p_;
    v_ *= (p_ != 0 ? o.bound_to(p_).v_ : o.v_);
    normalize();
    return *this;
  }
  Fp& operator/=(const Fp& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    check_same(p_, o.p_);
    if (p_ == 0 && o.p_ == 0) {
      // two unbound literals: allow exact integer division only
      if (o.v_ == 0 || v_ % o.v_ != 0) throw std::domain_error("inexact literal division");
      v_ /= o.v_;
      return *this;
    }
    long long p = p_ != 0 ? p_ : o.p_;
    Fp num = bound_to(p), den = o.bound_to(p);
    // inverse by extended Euclid
    long long t = 0, nt = 1, r = p, nr = den.v_;
    while (nr != 0) {
      long long q = r / nr;
      long long tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("non-invertible element mod " + std::to_string(p));
    if (t < 0) t += p;
    v_ = num.v_ * t;
    p_ = p;
    normalize();
    return *this;
  }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) {
    check_same(a.p_, b.p_);
    long long p = a.p_ != 0 ? a.p_ : b.p_;
    if (p == 0) return a.v_ == b.v_;
    return a.bound_to(p).v_ == b.bound_to(p).v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

template <class K>
concept Scalar = requires(K a, K b) {
  K();
  K(1);
  K(-1);
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.str() } -> std::convertible_to<std::string>;
};

template <Scalar K>
K parse_scalar(const std::string& s, const FieldInfo& fi);

template <>
inline Rational parse_scalar<Rational>(const std::string& s, const FieldInfo& fi) {
  if (fi.prime_field()) throw std::logic_error("field mismatch");
  return Rational::from_string(s);
}

template <>
inline Fp parse_scalar<Fp>(const std::string& s, const FieldInfo& fi) {
  if (!fi.prime_field()) throw std::logic_error("field mismatch");
  return Fp::from_string(s, fi.characteristic);
}

// Binds unbound literals to the field's modulus; no-op over the rationals.
inline Rational bind_scalar(const Rational& x, const FieldInfo&) { return x; }
inline Fp bind_scalar(const Fp& x, const FieldInfo& fi) {
  return fi.prime_field() ? x.bound_to((long long)fi.characteristic) : x;
}

}  // namespace braidtower
