#include "projbar/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace projbar {

namespace {

// cpp_int reads a leading 0 as an octal prefix
std::string strip_leading_zeros(std::string_view s) {
  auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? std::string("0") : std::string(s.substr(first));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational::Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw std::invalid_argument("not a rational literal: '" + std::string(whole) + "'");
  Rational::Integer v{strip_leading_zeros(s)};
  return negative ? Rational::Integer(-v) : v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = Rational(Integer(num), Integer(den));
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den.is_zero()) throw std::domain_error("rational with zero denominator");
  value_ = den.sign() < 0 ? boost::multiprecision::cpp_rational(Integer(-num), Integer(-den))
                          : boost::multiprecision::cpp_rational(num, den);
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text))
      throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    Integer den{strip_leading_zeros(den_text)};
    if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    std::string digits = std::string(int_part) + std::string(frac_part);
    Integer num{strip_leading_zeros(digits)};
    Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_part.size()));
    if (negative) num = -num;
    return Rational(num, den);
  }

  return Rational(parse_integer(text, text), Integer(1));
}

Rational Rational::abs() const {
  Rational r;
  r.value_ = value_.sign() < 0 ? boost::multiprecision::cpp_rational(-value_) : value_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::to_string() const {
  Integer den = denominator();
  if (den == 1) return numerator().str();
  return numerator().str() + "/" + den.str();
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(numerator().str());
  return h ^ (std::hash<std::string>{}(denominator().str()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace projbar
