#pragma once

// Truncated Witt vectors W(F_q)/p^N, q = p^deg, presented as the unramified
// quotient (Z/p^N)[x]/(f) where f is a monic lift of an irreducible polynomial
// over F_p. Every element of a ring carries the same flat precision N.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dvg {

struct RingParams {
  std::uint64_t p = 2;
  int deg = 1;
  int precision = 1;

  friend bool operator==(const RingParams&, const RingParams&) = default;
};

namespace detail {
struct RingData;
}

class WittElem;

class WittRing {
 public:
  /// Builds the ring with the Conway polynomial for (p, deg) when the built-in
  /// table covers it (p <= 7, deg <= 8), otherwise with the least monic
  /// irreducible polynomial over F_p (coefficients compared from x^{deg-1} down).
  /// Throws NotPrime, PrecisionTooLarge (p^N must stay below 2^63).
  static WittRing make(const RingParams& params);

  /// Same, with an explicit defining polynomial (low-to-high coefficients,
  /// monic of degree deg, irreducible mod p). Throws MalformedInput otherwise.
  static WittRing make(const RingParams& params, std::vector<std::uint64_t> defining_poly);

  const RingParams& params() const;
  std::uint64_t p() const { return params().p; }
  int deg() const { return params().deg; }
  int precision() const { return params().precision; }
  /// p^N.
  std::uint64_t modulus() const;
  /// Low-to-high coefficients reduced mod p^N, length deg + 1, last entry 1.
  std::span<const std::uint64_t> defining_poly() const;

  WittElem zero() const;
  WittElem one() const;
  WittElem from_int(std::int64_t value) const;
  /// p^e, zero when e >= N.
  WittElem p_power(int e) const;
  /// The class of x in the power basis.
  WittElem generator() const;
  /// sigma(generator): the root of f congruent to x^p mod p.
  WittElem frobenius_image() const;
  /// Coefficients are reduced mod p^N.
  WittElem element(std::vector<std::uint64_t> coeffs) const;

  /// Same p, deg and defining polynomial (reduced), different precision.
  WittRing with_precision(int precision) const;
  /// The residue field F_q, i.e. this ring at precision 1.
  WittRing residue_field() const { return with_precision(1); }

  friend bool operator==(const WittRing& a, const WittRing& b);

 private:
  friend class WittElem;
  friend WittElem frobenius(const WittElem& a, std::int64_t power);
  friend WittElem change_precision(const WittElem& a, const WittRing& target);
  explicit WittRing(std::shared_ptr<const detail::RingData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::RingData> data_;
};

/// Element of a WittRing: deg coordinates in [0, p^N) in the basis 1, x, ..., x^{deg-1}.
class WittElem {
 public:
  WittElem() = default;

  WittRing ring() const { return WittRing(ring_); }
  std::span<const std::uint64_t> coeffs() const { return coeffs_; }
  bool is_zero() const;
  /// Valuation zero.
  bool is_unit() const;

  friend WittElem operator+(const WittElem& a, const WittElem& b);
  friend WittElem operator-(const WittElem& a, const WittElem& b);
  friend WittElem operator*(const WittElem& a, const WittElem& b);
  friend WittElem operator-(const WittElem& a);
  WittElem& operator+=(const WittElem& b) { return *this = *this + b; }
  WittElem& operator-=(const WittElem& b) { return *this = *this - b; }
  WittElem& operator*=(const WittElem& b) { return *this = *this * b; }

  /// Equal rings and equal coordinates.
  friend bool operator==(const WittElem& a, const WittElem& b);

  std::string to_string() const;

 private:
  friend class WittRing;
  friend WittElem frobenius(const WittElem& a, std::int64_t power);
  friend WittElem divide_by_p_power(const WittElem& a, int e);
  friend WittElem change_precision(const WittElem& a, const WittRing& target);
  WittElem(std::shared_ptr<const detail::RingData> ring, std::vector<std::uint64_t> coeffs)
      : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {}

  std::shared_ptr<const detail::RingData> ring_;
  std::vector<std::uint64_t> coeffs_;
};

/// p-adic valuation; std::nullopt means "at least N", i.e. zero at working precision.
std::optional<int> valuation(const WittElem& a);

/// Valuation with zero reported as N.
int valuation_capped(const WittElem& a);

/// sigma^power(a). Negative powers are inverse Frobenius (power taken mod deg).
WittElem frobenius(const WittElem& a, std::int64_t power = 1);

/// Inverse of a unit, exact mod p^N. Throws NotAUnit.
WittElem unit_inverse(const WittElem& a);

WittElem pow(const WittElem& a, std::uint64_t exponent);

/// A lift of a / p^e. Requires valuation(a) >= e; the result is determined mod p^{N-e}.
WittElem divide_by_p_power(const WittElem& a, int e);

/// Reduction (target precision lower) or canonical lift (higher) of a into a
/// ring with the same p, deg and defining polynomial. Throws RingMismatch.
WittElem change_precision(const WittElem& a, const WittRing& target);

}  // namespace dvg
