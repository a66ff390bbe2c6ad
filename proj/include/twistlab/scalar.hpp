#ifndef TWISTLAB_SCALAR_HPP
#define TWISTLAB_SCALAR_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "twistlab/error.hpp"

namespace twistlab {

/// Arbitrary-precision signed integer, sign-magnitude over base-10^9 limbs.
/// Only the operations the rational layer needs; everything is exact.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long value);

  static BigInt from_decimal(std::string_view text); // throws parse_error
  std::string to_decimal() const;

  bool is_zero() const { return sign_ == 0; }
  bool is_one() const;
  bool is_negative() const { return sign_ < 0; }

  BigInt negated() const;
  BigInt abs() const;

  int compare(const BigInt& other) const; // -1, 0, +1

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);

  // Truncated division: a = q*b + r with |r| < |b| and sign(r) = sign(a).
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

  static BigInt gcd(BigInt a, BigInt b); // nonnegative

  bool fits_u64() const;
  std::uint64_t to_u64() const; // requires nonnegative and in range

  bool operator==(const BigInt& other) const { return compare(other) == 0; }
  bool operator!=(const BigInt& other) const { return compare(other) != 0; }

private:
  static constexpr std::uint32_t kBase = 1000000000u;

  int sign_ = 0;                  // -1, 0, +1; zero iff limbs empty
  std::vector<std::uint32_t> limbs_; // little-endian, no leading zeros

  void trim();
  static int compare_magnitude(const std::vector<std::uint32_t>& a,
                               const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_magnitude(const std::vector<std::uint32_t>& a,
                                                  const std::vector<std::uint32_t>& b);
  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_magnitude(const std::vector<std::uint32_t>& a,
                                                  const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_magnitude(const std::vector<std::uint32_t>& a,
                                                  const std::vector<std::uint32_t>& b);
  static void divmod_magnitude(const std::vector<std::uint32_t>& a,
                               const std::vector<std::uint32_t>& b,
                               std::vector<std::uint32_t>& q,
                               std::vector<std::uint32_t>& r);
};

/// The coefficient field: the rationals, or a prime field GF(p).
struct FieldSpec {
  enum class Kind { rationals, prime_field };

  Kind kind = Kind::rationals;
  std::uint64_t modulus = 0; // 0 for the rationals

  static FieldSpec rationals() { return FieldSpec{Kind::rationals, 0}; }
  static FieldSpec prime_field(std::uint64_t p); // validates primality

  std::uint64_t characteristic() const {
    return kind == Kind::rationals ? 0 : modulus;
  }

  bool operator==(const FieldSpec&) const = default;

  std::string to_string() const;

  // Accepts "Q", "GF:p", "GF(p)" and "GF p".
  static FieldSpec parse(std::string_view text);
};

/// Exact field element in canonical form: a reduced fraction with positive
/// denominator over Q, or the residue 0..p-1 over GF(p). Arithmetic never
/// rounds and canonical forms are unique, so equality is plain comparison.
class Scalar {
public:
  static Scalar zero(const FieldSpec& field);
  static Scalar one(const FieldSpec& field);
  static Scalar from_int(const FieldSpec& field, long long value);
  static Scalar rational(BigInt numerator, BigInt denominator); // Q only
  static Scalar residue(const FieldSpec& field, const BigInt& value);

  // "a" or "a/b" over Q; optionally signed decimal residue over GF(p).
  static Scalar parse(const FieldSpec& field, std::string_view text);

  const FieldSpec& field() const { return field_; }
  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  Scalar negated() const;
  Scalar inverse() const; // throws not_invertible on zero

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  bool operator==(const Scalar& other) const;
  bool operator!=(const Scalar& other) const { return !(*this == other); }

  std::string to_string() const;

private:
  Scalar(FieldSpec field, BigInt num, BigInt den)
      : field_(field), num_(std::move(num)), den_(std::move(den)) {}

  void canonicalize_rational();

  FieldSpec field_;
  BigInt num_;
  BigInt den_; // always 1 over GF(p)

  static void require_same_field(const Scalar& a, const Scalar& b);
};

/// Deterministic 64-bit Miller-Rabin, used to validate prime moduli.
bool is_prime_u64(std::uint64_t n);

} // namespace twistlab

#endif
