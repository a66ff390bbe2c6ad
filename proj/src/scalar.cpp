#include "twistlab/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace twistlab {

// ---------------------------------------------------------------------------
// BigInt

BigInt::BigInt(long long value) {
  if (value == 0) return;
  sign_ = value < 0 ? -1 : 1;
  unsigned long long mag =
      value < 0 ? ~static_cast<unsigned long long>(value) + 1ULL
                : static_cast<unsigned long long>(value);
  while (mag != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(mag % kBase));
    mag /= kBase;
  }
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) sign_ = 0;
}

bool BigInt::is_one() const {
  return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1;
}

BigInt BigInt::negated() const {
  BigInt out = *this;
  out.sign_ = -out.sign_;
  return out;
}

BigInt BigInt::abs() const {
  BigInt out = *this;
  if (out.sign_ < 0) out.sign_ = 1;
  return out;
}

int BigInt::compare_magnitude(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

int BigInt::compare(const BigInt& other) const {
  if (sign_ != other.sign_) return sign_ < other.sign_ ? -1 : 1;
  int mag = compare_magnitude(limbs_, other.limbs_);
  return sign_ >= 0 ? mag : -mag;
}

std::vector<std::uint32_t> BigInt::add_magnitude(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    std::uint64_t sum = carry;
    if (i < a.size()) sum += a[i];
    if (i < b.size()) sum += b[i];
    out.push_back(static_cast<std::uint32_t>(sum % kBase));
    carry = sum / kBase;
  }
  if (carry) out.push_back(static_cast<std::uint32_t>(carry));
  return out;
}

std::vector<std::uint32_t> BigInt::sub_magnitude(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out = a;
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::int64_t cur = static_cast<std::int64_t>(out[i]) - borrow -
                       (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (cur < 0) {
      cur += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    out[i] = static_cast<std::uint32_t>(cur);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::mul_magnitude(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = acc[i + j] +
                          static_cast<std::uint64_t>(a[i]) * b[j] + carry;
      acc[i + j] = cur % kBase;
      carry = cur / kBase;
    }
    std::size_t k = i + b.size();
    while (carry) {
      std::uint64_t cur = acc[k] + carry;
      acc[k] = cur % kBase;
      carry = cur / kBase;
      ++k;
    }
  }
  std::vector<std::uint32_t> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    out[i] = static_cast<std::uint32_t>(acc[i]);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

namespace {

// magnitude * small, magnitude / small helpers for normalization
std::vector<std::uint32_t> mul_small(const std::vector<std::uint32_t>& a,
                                     std::uint32_t m) {
  constexpr std::uint64_t base = 1000000000ull;
  std::vector<std::uint32_t> out;
  out.reserve(a.size() + 1);
  std::uint64_t carry = 0;
  for (std::uint32_t limb : a) {
    std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
    out.push_back(static_cast<std::uint32_t>(cur % base));
    carry = cur / base;
  }
  while (carry) {
    out.push_back(static_cast<std::uint32_t>(carry % base));
    carry /= base;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> div_small(const std::vector<std::uint32_t>& a,
                                     std::uint32_t m, std::uint32_t* rem_out) {
  constexpr std::uint64_t base = 1000000000ull;
  std::vector<std::uint32_t> out(a.size(), 0);
  std::uint64_t rem = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    std::uint64_t cur = rem * base + a[i];
    out[i] = static_cast<std::uint32_t>(cur / m);
    rem = cur % m;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  if (rem_out) *rem_out = static_cast<std::uint32_t>(rem);
  return out;
}

} // namespace

void BigInt::divmod_magnitude(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b,
                              std::vector<std::uint32_t>& q,
                              std::vector<std::uint32_t>& r) {
  q.clear();
  r.clear();
  if (compare_magnitude(a, b) < 0) {
    r = a;
    return;
  }
  if (b.size() == 1) {
    std::uint32_t rem = 0;
    q = div_small(a, b[0], &rem);
    if (rem) r.push_back(rem);
    return;
  }

  // Knuth-style long division in base 1e9 after normalizing the divisor so
  // its top limb is at least base/2; quotient estimates then need at most
  // two corrections.
  std::uint32_t norm = static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(kBase) / 2 + b.back()) / (b.back() + 1) + 1);
  while (static_cast<std::uint64_t>(b.back()) * norm < kBase / 2) ++norm;

  std::vector<std::uint32_t> u = mul_small(a, norm);
  std::vector<std::uint32_t> v = mul_small(b, norm);
  const std::size_t n = v.size();
  u.resize(std::max(u.size(), a.size()) + 1, 0);
  const std::size_t m = u.size() - n; // quotient has at most m limbs
  q.assign(m, 0);

  for (std::size_t j = m; j-- > 0;) {
    std::uint64_t top = static_cast<std::uint64_t>(u[j + n]) * kBase + u[j + n - 1];
    std::uint64_t qhat = top / v[n - 1];
    std::uint64_t rhat = top % v[n - 1];
    while (qhat >= kBase ||
           (n >= 2 && qhat * v[n - 2] > rhat * kBase + u[j + n - 2])) {
      --qhat;
      rhat += v[n - 1];
      if (rhat >= kBase) break;
    }
    // multiply-subtract
    std::int64_t borrow = 0;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t p = qhat * v[i] + carry;
      carry = p / kBase;
      std::int64_t sub = static_cast<std::int64_t>(u[i + j]) -
                         static_cast<std::int64_t>(p % kBase) - borrow;
      if (sub < 0) {
        sub += kBase;
        borrow = 1;
      } else {
        borrow = 0;
      }
      u[i + j] = static_cast<std::uint32_t>(sub);
    }
    std::int64_t sub = static_cast<std::int64_t>(u[j + n]) -
                       static_cast<std::int64_t>(carry) - borrow;
    if (sub < 0) {
      // estimate was one too large: add back
      sub += kBase;
      --qhat;
      std::uint64_t carry2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t cur = static_cast<std::uint64_t>(u[i + j]) + v[i] + carry2;
        u[i + j] = static_cast<std::uint32_t>(cur % kBase);
        carry2 = cur / kBase;
      }
      sub += static_cast<std::int64_t>(carry2);
      if (sub >= static_cast<std::int64_t>(kBase)) sub -= kBase;
    }
    u[j + n] = static_cast<std::uint32_t>(sub);
    q[j] = static_cast<std::uint32_t>(qhat);
  }

  while (!q.empty() && q.back() == 0) q.pop_back();
  u.resize(n);
  while (!u.empty() && u.back() == 0) u.pop_back();
  r = div_small(u, norm, nullptr);
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  BigInt out;
  if (a.sign_ == b.sign_) {
    out.sign_ = a.sign_;
    out.limbs_ = BigInt::add_magnitude(a.limbs_, b.limbs_);
  } else {
    int cmp = BigInt::compare_magnitude(a.limbs_, b.limbs_);
    if (cmp == 0) return BigInt();
    if (cmp > 0) {
      out.sign_ = a.sign_;
      out.limbs_ = BigInt::sub_magnitude(a.limbs_, b.limbs_);
    } else {
      out.sign_ = b.sign_;
      out.limbs_ = BigInt::sub_magnitude(b.limbs_, a.limbs_);
    }
  }
  out.trim();
  return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.negated(); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt out;
  if (a.sign_ == 0 || b.sign_ == 0) return out;
  out.sign_ = a.sign_ * b.sign_;
  out.limbs_ = BigInt::mul_magnitude(a.limbs_, b.limbs_);
  out.trim();
  return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.sign_ == 0) fail(ErrorCode::invalid_argument, "division by zero");
  std::vector<std::uint32_t> qm, rm;
  divmod_magnitude(a.limbs_, b.limbs_, qm, rm);
  q = BigInt();
  r = BigInt();
  q.limbs_ = std::move(qm);
  r.limbs_ = std::move(rm);
  q.sign_ = q.limbs_.empty() ? 0 : a.sign_ * b.sign_;
  r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
  q.trim();
  r.trim();
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool BigInt::fits_u64() const {
  if (sign_ < 0) return false;
  if (limbs_.size() > 3) return false;
  if (limbs_.size() < 3) return true;
  // 2^64-1 = 18 446744073 709551615 in base 1e9
  if (limbs_[2] > 18u) return false;
  if (limbs_[2] < 18u) return true;
  if (limbs_[1] > 446744073u) return false;
  if (limbs_[1] < 446744073u) return true;
  return limbs_[0] <= 709551615u;
}

std::uint64_t BigInt::to_u64() const {
  if (!fits_u64())
    fail(ErrorCode::invalid_argument, "integer out of unsigned 64-bit range");
  std::uint64_t out = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) out = out * kBase + limbs_[i];
  return out;
}

BigInt BigInt::from_decimal(std::string_view text) {
  if (text.empty()) fail(ErrorCode::parse_error, "empty integer literal");
  BigInt out;
  std::size_t pos = 0;
  int sign = 1;
  if (text[0] == '-' || text[0] == '+') {
    sign = text[0] == '-' ? -1 : 1;
    pos = 1;
  }
  if (pos == text.size())
    fail(ErrorCode::parse_error, "integer literal has no digits");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      fail(ErrorCode::parse_error,
           "bad integer literal '" + std::string(text) + "'");
  }
  // consume 9 digits at a time from the most significant end
  std::size_t ndigits = text.size() - pos;
  std::size_t head = ndigits % 9;
  if (head == 0) head = 9;
  std::size_t cursor = pos;
  auto push_chunk = [&](std::size_t len) {
    std::uint32_t chunk = 0;
    for (std::size_t i = 0; i < len; ++i)
      chunk = chunk * 10 + static_cast<std::uint32_t>(text[cursor + i] - '0');
    cursor += len;
    out.limbs_ = mul_small(out.limbs_, 1000000000u);
    if (chunk) {
      std::vector<std::uint32_t> addend{chunk};
      out.limbs_ = add_magnitude(out.limbs_, addend);
    }
  };
  push_chunk(head);
  while (cursor < text.size()) push_chunk(9);
  out.sign_ = out.limbs_.empty() ? 0 : sign;
  out.trim();
  return out;
}

std::string BigInt::to_decimal() const {
  if (sign_ == 0) return "0";
  std::string out = sign_ < 0 ? "-" : "";
  out += std::to_string(limbs_.back());
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    std::string part = std::to_string(limbs_[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Primality (deterministic Miller-Rabin for 64-bit inputs)

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t out = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) out = mulmod_u64(out, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return out;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (!is_prime_u64(p))
    fail(ErrorCode::invalid_argument,
         "modulus " + std::to_string(p) + " is not prime");
  return FieldSpec{Kind::prime_field, p};
}

std::string FieldSpec::to_string() const {
  if (kind == Kind::rationals) return "Q";
  return "GF(" + std::to_string(modulus) + ")";
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q" || text == "q") return rationals();
  std::string_view body;
  if (text.substr(0, 3) == "GF:") {
    body = text.substr(3);
  } else if (text.substr(0, 3) == "GF(" && text.back() == ')') {
    body = text.substr(3, text.size() - 4);
  } else if (text.substr(0, 3) == "GF ") {
    body = text.substr(3);
  } else {
    fail(ErrorCode::parse_error, "bad field spec '" + std::string(text) + "'");
  }
  BigInt p = BigInt::from_decimal(body);
  if (!p.fits_u64())
    fail(ErrorCode::parse_error, "modulus out of range");
  return prime_field(p.to_u64());
}

// ---------------------------------------------------------------------------
// Scalar

void Scalar::require_same_field(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_))
    fail(ErrorCode::invalid_argument,
         "field mismatch: " + a.field_.to_string() + " vs " +
             b.field_.to_string());
}

Scalar Scalar::zero(const FieldSpec& field) {
  return Scalar(field, BigInt(0), BigInt(1));
}

Scalar Scalar::one(const FieldSpec& field) {
  return Scalar(field, BigInt(1), BigInt(1));
}

Scalar Scalar::from_int(const FieldSpec& field, long long value) {
  if (field.kind == FieldSpec::Kind::rationals)
    return Scalar(field, BigInt(value), BigInt(1));
  return residue(field, BigInt(value));
}

void Scalar::canonicalize_rational() {
  if (den_.is_zero())
    fail(ErrorCode::parse_error, "zero denominator");
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  if (den_.is_negative()) {
    num_ = num_.negated();
    den_ = den_.negated();
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (!g.is_one()) {
    BigInt q, r;
    BigInt::divmod(num_, g, q, r);
    num_ = q;
    BigInt::divmod(den_, g, q, r);
    den_ = q;
  }
}

Scalar Scalar::rational(BigInt numerator, BigInt denominator) {
  Scalar out(FieldSpec::rationals(), std::move(numerator), std::move(denominator));
  out.canonicalize_rational();
  return out;
}

Scalar Scalar::residue(const FieldSpec& field, const BigInt& value) {
  if (field.kind != FieldSpec::Kind::prime_field)
    fail(ErrorCode::invalid_argument, "residue constructor needs a prime field");
  BigInt p(static_cast<long long>(field.modulus));
  BigInt q, r;
  BigInt::divmod(value, p, q, r);
  if (r.is_negative()) r = r + p;
  return Scalar(field, std::move(r), BigInt(1));
}

bool Scalar::is_one() const { return num_.is_one() && den_.is_one(); }

Scalar Scalar::negated() const {
  if (field_.kind == FieldSpec::Kind::rationals)
    return Scalar(field_, num_.negated(), den_);
  if (num_.is_zero()) return *this;
  BigInt p(static_cast<long long>(field_.modulus));
  return Scalar(field_, p - num_, BigInt(1));
}

Scalar Scalar::inverse() const {
  if (is_zero())
    fail(ErrorCode::not_invertible, "zero has no inverse");
  if (field_.kind == FieldSpec::Kind::rationals) {
    Scalar out(field_, den_, num_);
    out.canonicalize_rational();
    return out;
  }
  // modular inverse via Fermat (modulus is prime)
  std::uint64_t inv = powmod_u64(num_.to_u64(), field_.modulus - 2, field_.modulus);
  return Scalar(field_, BigInt(static_cast<long long>(inv)), BigInt(1));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar::require_same_field(a, b);
  if (a.field_.kind == FieldSpec::Kind::rationals) {
    Scalar out(a.field_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    out.canonicalize_rational();
    return out;
  }
  std::uint64_t p = a.field_.modulus;
  std::uint64_t sum = a.num_.to_u64() + b.num_.to_u64();
  if (sum >= p) sum -= p;
  return Scalar::residue(a.field_, BigInt(static_cast<long long>(sum)));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + b.negated(); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar::require_same_field(a, b);
  if (a.field_.kind == FieldSpec::Kind::rationals) {
    Scalar out(a.field_, a.num_ * b.num_, a.den_ * b.den_);
    out.canonicalize_rational();
    return out;
  }
  std::uint64_t prod = mulmod_u64(a.num_.to_u64(), b.num_.to_u64(), a.field_.modulus);
  return Scalar::residue(a.field_, BigInt(static_cast<long long>(prod)));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool Scalar::operator==(const Scalar& other) const {
  return field_ == other.field_ && num_ == other.num_ && den_ == other.den_;
}

std::string Scalar::to_string() const {
  if (field_.kind == FieldSpec::Kind::prime_field || den_.is_one())
    return num_.to_decimal();
  return num_.to_decimal() + "/" + den_.to_decimal();
}

Scalar Scalar::parse(const FieldSpec& field, std::string_view text) {
  if (text.empty()) fail(ErrorCode::parse_error, "empty scalar");
  std::size_t slash = text.find('/');
  if (field.kind == FieldSpec::Kind::prime_field) {
    if (slash != std::string_view::npos)
      fail(ErrorCode::parse_error,
           "fractions are not valid over " + field.to_string());
    return residue(field, BigInt::from_decimal(text));
  }
  if (slash == std::string_view::npos)
    return rational(BigInt::from_decimal(text), BigInt(1));
  BigInt num = BigInt::from_decimal(text.substr(0, slash));
  BigInt den = BigInt::from_decimal(text.substr(slash + 1));
  if (den.is_zero())
    fail(ErrorCode::parse_error, "zero denominator in '" + std::string(text) + "'");
  return rational(std::move(num), std::move(den));
}

} // namespace twistlab
