#pragma once

// Exact coefficient fields. Every algorithm in the library is a template over
// one of these two types; a field object carries whatever runtime data the
// arithmetic needs (the modulus for GF(p), nothing for Q).

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace creg {

/// GF(p) for a runtime prime p < 2^31. Elements are canonical residues.
class PrimeField {
 public:
  using Elem = std::uint32_t;

  static constexpr std::uint32_t kDefaultModulus = 32003;

  explicit PrimeField(std::uint32_t p = kDefaultModulus);

  std::uint32_t modulus() const { return p_; }
  std::uint32_t characteristic() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (p_ - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// y <- y - a*x, the elimination kernel.
  void sub_mul(Elem& y, Elem a, Elem x) const { y = sub(y, mul(a, x)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool equal(Elem a, Elem b) const { return a == b; }

  std::string name() const;
  /// Symmetric representative in (-p/2, p/2].
  std::string format(Elem a) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals, via GMP. Elements are always canonical (lowest terms,
/// positive denominator); gmpxx arithmetic maintains that.
class RationalField {
 public:
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const { return Elem(static_cast<long>(v)); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const;

  void sub_mul(Elem& y, const Elem& a, const Elem& x) const { y -= a * x; }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "QQ"; }
  std::string format(const Elem& a) const { return a.get_str(); }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

bool is_prime(std::uint32_t p);

}  // namespace creg
