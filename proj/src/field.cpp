#include "creg/field.hpp"

#include "creg/errors.hpp"

namespace creg {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31)) throw InvalidInput("modulus must be below 2^31");
  if (!is_prime(p)) throw InvalidInput("modulus " + std::to_string(p) + " is not prime");
}

PrimeField::Elem PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw Error("division by zero in " + name());
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Elem>(t);
}

std::string PrimeField::name() const { return "GF(" + std::to_string(p_) + ")"; }

std::string PrimeField::format(Elem a) const {
  if (a > p_ / 2) return "-" + std::to_string(p_ - a);
  return std::to_string(a);
}

RationalField::Elem RationalField::inv(const Elem& a) const {
  if (sgn(a) == 0) throw Error("division by zero in QQ");
  return Elem(1) / a;
}

RationalField::Elem RationalField::div(const Elem& a, const Elem& b) const {
  if (sgn(b) == 0) throw Error("division by zero in QQ");
  return a / b;
}

}  // namespace creg
