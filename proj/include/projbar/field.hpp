#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace projbar {

using Coeff = std::uint32_t;

bool is_prime(std::uint64_t n);

/// Arithmetic in F_p for a prime p < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not a supported prime");
  }

  std::uint32_t characteristic() const { return p_; }

  Coeff reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Coeff>(r < 0 ? r + p_ : r);
  }
  Coeff add(Coeff a, Coeff b) const { return static_cast<Coeff>((std::uint64_t{a} + b) % p_); }
  Coeff sub(Coeff a, Coeff b) const { return static_cast<Coeff>((std::uint64_t{a} + p_ - b) % p_); }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const { return static_cast<Coeff>((std::uint64_t{a} * b) % p_); }
  Coeff inv(Coeff a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace projbar
