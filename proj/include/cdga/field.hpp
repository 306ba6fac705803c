#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cdga {

// Error taxonomy shared by the whole library.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotDefinedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational scalar. et_off so every operator returns a materialized
// value; boost keeps the canonical form (gcd-reduced, positive denominator).
using Rational = boost::multiprecision::number<
    boost::multiprecision::cpp_rational_backend,
    boost::multiprecision::et_off>;

// Prime-field scalar. A default-constructed or int-constructed value is an
// "integer literal" (modulus 0) that adopts the modulus of the first modular
// operand it meets; this lets generic code write K(1), K(-1) without
// threading a field descriptor everywhere.
class Fp {
 public:
  Fp() = default;
  Fp(long long n) : v_(n) {}
  Fp(long long n, long long p) : p_(p) {
    if (p < 2) throw UsageError("Fp modulus must be >= 2");
    v_ = norm(n, p);
  }

  long long residue() const { return p_ ? v_ : v_; }
  long long modulus() const { return p_; }
  bool is_literal() const { return p_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    long long p = resolve(a, b);
    if (!p) return Fp(a.v_ + b.v_);
    return Fp(norm(a.v_, p) + norm(b.v_, p), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    long long p = resolve(a, b);
    if (!p) return Fp(a.v_ - b.v_);
    return Fp(norm(a.v_, p) - norm(b.v_, p), p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    long long p = resolve(a, b);
    if (!p) return Fp(a.v_ * b.v_);
    return Fp(norm(a.v_, p) * norm(b.v_, p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { return p_ ? Fp(p_ - v_, p_) : Fp(-v_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    long long p = resolve(a, b);
    if (!p) return a.v_ == b.v_;
    return norm(a.v_, p) == norm(b.v_, p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  Fp inverse() const {
    if (!p_) {
      if (v_ == 1 || v_ == -1) return *this;
      throw UsageError("cannot invert integer literal " + std::to_string(v_) +
                       " without a resolved modulus");
    }
    if (v_ == 0) throw UsageError("division by zero in F_p");
    // extended Euclid: a*v + b*p = 1
    long long a = 0, b = 1, g = p_, x = v_;
    while (x) {
      long long q = g / x;
      g -= q * x; std::swap(g, x);
      a -= q * b; std::swap(a, b);
    }
    return Fp(a, p_);
  }

  std::string str() const { return std::to_string(v_); }

 private:
  static long long norm(long long n, long long p) {
    long long r = n % p;
    return r < 0 ? r + p : r;
  }
  static long long resolve(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_)
      throw UsageError("mixing F_p scalars with different moduli");
    return a.p_ ? a.p_ : b.p_;
  }

  long long v_ = 0;
  long long p_ = 0;  // 0 = integer literal
};

inline std::string scalar_str(const Rational& x) { return x.str(); }
inline std::string scalar_str(const Fp& x) { return x.str(); }

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Ground-field descriptor; parsed from the CLI as "q" or "fp:P".
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  long long p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime_field(long long p) {
    if (!is_prime(p)) throw UsageError("field modulus must be prime, got " + std::to_string(p));
    if (p >= (1LL << 31)) throw UsageError("field modulus too large (need p < 2^31)");
    return {Kind::PrimeField, p};
  }
  static FieldSpec parse(const std::string& s) {
    if (s == "q" || s == "Q") return rationals();
    if (s.rfind("fp:", 0) == 0) return prime_field(std::stoll(s.substr(3)));
    throw UsageError("unrecognized field spec '" + s + "' (expected q or fp:P)");
  }
  std::string str() const {
    return kind == Kind::Rationals ? "q" : "fp:" + std::to_string(p);
  }
  bool operator==(const FieldSpec&) const = default;
};

// Uniform scalar construction/serialization over the two field kinds.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static Rational from_int(const FieldSpec&, long long n) { return Rational(n); }
  static Rational parse(const FieldSpec&, const std::string& s) { return Rational(s); }
  static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct FieldOps<Fp> {
  static Fp from_int(const FieldSpec& f, long long n) {
    if (f.kind != FieldSpec::Kind::PrimeField)
      throw UsageError("Fp scalar requested from a non-prime-field spec");
    return Fp(n, f.p);
  }
  static Fp parse(const FieldSpec& f, const std::string& s) {
    return from_int(f, std::stoll(s));
  }
  static std::string str(const Fp& x) { return x.str(); }
};

}  // namespace cdga
