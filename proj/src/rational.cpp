#include "polybern/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace polybern {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ParseError("malformed number: '" + std::string(whole) + "'");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

mpz_class scaled_quotient(const mpz_class& a, const mpz_class& den, long shift,
                          mpz_class& remainder, mpz_class& divisor) {
  mpz_class numer = a;
  divisor = den;
  if (shift >= 0) {
    numer <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    divisor <<= static_cast<mp_bitcnt_t>(-shift);
  }
  mpz_class quotient;
  mpz_fdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), numer.get_mpz_t(),
              divisor.get_mpz_t());
  return quotient;
}

// Nearest-even rounding of num/den to a Float with `digits` mantissa bits.
// Subnormal results may be rounded twice; masses here never get that small.
template <typename Float>
Float round_quotient(const mpz_class& num, const mpz_class& den) {
  constexpr long kBits = std::numeric_limits<Float>::digits;
  static_assert(kBits <= 64);
  mpz_class a = abs(num);
  if (a == 0) return Float(0);
  long magnitude = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
                   static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  long shift = kBits - magnitude;
  mpz_class remainder, divisor;
  mpz_class quotient = scaled_quotient(a, den, shift, remainder, divisor);
  if (static_cast<long>(mpz_sizeinbase(quotient.get_mpz_t(), 2)) > kBits) {
    --shift;
    quotient = scaled_quotient(a, den, shift, remainder, divisor);
  }
  mpz_class twice = remainder * 2;
  int c = cmp(twice, divisor);
  if (c > 0 || (c == 0 && mpz_odd_p(quotient.get_mpz_t()))) ++quotient;
  if (static_cast<long>(mpz_sizeinbase(quotient.get_mpz_t(), 2)) > kBits) {
    quotient >>= 1;  // carried into a new bit; the dropped bit is zero
    --shift;
  }
  auto mantissa = static_cast<Float>(mpz_get_ui(quotient.get_mpz_t()));
  Float result = std::ldexp(mantissa, static_cast<int>(-shift));
  return num < 0 ? -result : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw ParseError("malformed denominator: '" + std::string(text) + "'");
    }
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.size() > 12) {
      throw ParseError("more than 12 fractional digits: '" + std::string(text) + "'");
    }
    if (!frac_part.empty() && !all_digits(frac_part)) {
      throw ParseError("malformed decimal: '" + std::string(text) + "'");
    }
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::string_view unsigned_int = int_part;
    if (!unsigned_int.empty() && (unsigned_int.front() == '-' || unsigned_int.front() == '+')) {
      unsigned_int.remove_prefix(1);
    }
    if (unsigned_int.empty() && frac_part.empty()) {
      throw ParseError("malformed decimal: '" + std::string(text) + "'");
    }
    mpz_class whole = unsigned_int.empty() ? mpz_class(0) : parse_integer(unsigned_int, text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    mpz_class frac = frac_part.empty() ? mpz_class(0) : mpz_class(std::string(frac_part), 10);
    Rational r(whole * scale + frac, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& value) { return value.get_str(10); }

double to_double(const Rational& value) {
  return round_quotient<double>(value.get_num(), value.get_den());
}

long double to_long_double(const Rational& value) {
  return round_quotient<long double>(value.get_num(), value.get_den());
}

Rational pow(const Rational& base, unsigned exp) {
  Rational result(1);
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  result.canonicalize();
  return result;
}

}  // namespace polybern
