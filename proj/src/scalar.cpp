#include "jointensor/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <string>

#include "jointensor/error.hpp"

namespace jointensor {

const char* mode_name(Mode mode) noexcept {
  return mode == Mode::exact ? "exact" : "float";
}

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "float" || text == "approximate") return Mode::approximate;
  throw Error(Errc::parse_error, "unknown arithmetic mode '" + std::string(text) + "'");
}

std::string to_string(const mpq_class& value) { return value.get_str(); }

std::string to_string(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

bool parse_rational(std::string_view text, mpq_class& out) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) return false;

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return false;
    mpz_class p{std::string(num)}, q{std::string(den)};
    if (q == 0) return false;
    out = mpq_class(p, q);
    out.canonicalize();
    if (negative) out = -out;
    return true;
  }

  // decimal: digits[.digits][e[+-]digits]
  std::string_view mantissa = s, exponent;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    exponent = s.substr(e + 1);
  }
  std::string_view int_part = mantissa, frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return false;
  if (!int_part.empty() && !all_digits(int_part)) return false;
  if (!frac_part.empty() && !all_digits(frac_part)) return false;

  long exp10 = 0;
  if (!exponent.empty()) {
    bool exp_negative = false;
    if (exponent.front() == '+' || exponent.front() == '-') {
      exp_negative = exponent.front() == '-';
      exponent.remove_prefix(1);
    }
    if (!all_digits(exponent) || exponent.size() > 6) return false;
    exp10 = std::stol(std::string(exponent));
    if (exp_negative) exp10 = -exp10;
  }

  mpz_class digits(std::string(int_part) + std::string(frac_part) + (int_part.empty() && frac_part.empty() ? "0" : ""));
  exp10 -= static_cast<long>(frac_part.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  out = exp10 < 0 ? mpq_class(digits, scale) : mpq_class(digits * scale);
  out.canonicalize();
  if (negative) out = -out;
  return true;
}

}  // namespace jointensor
