#include "jointensor/valuation.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "jointensor/error.hpp"

namespace jointensor {

Number Number::parse(std::string_view text) {
  Number out;
  mpq_class q;
  if (parse_rational(text, q)) {
    out.approx = q.get_d();
    out.exact = std::move(q);
    return out;
  }
  std::string s(text);
  char* end = nullptr;
  out.approx = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw Error(Errc::parse_error, "not a number: '" + s + "'");
  return out;
}

std::string Number::str() const { return exact ? exact->get_str() : to_string(approx); }

Valuation Valuation::identity() { return Valuation(ValuationKind::identity); }

Valuation Valuation::constant(Number value) {
  Valuation v(ValuationKind::constant);
  v.parameter_ = std::move(value);
  return v;
}

Valuation Valuation::power(Number exponent) {
  Valuation v(ValuationKind::power);
  v.parameter_ = std::move(exponent);
  return v;
}

Valuation Valuation::reciprocal() { return Valuation(ValuationKind::reciprocal); }

Valuation Valuation::table(std::map<std::string, Number> values, std::string source) {
  Valuation v(ValuationKind::table);
  v.table_ = std::move(values);
  v.source_ = std::move(source);
  return v;
}

Valuation Valuation::load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open valuation table '" + path + "'");
  std::string line;
  std::map<std::string, Number> values;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw Error(Errc::parse_error, path + ":" + std::to_string(lineno) + ": expected 'element,value'");
    std::string key = line.substr(0, comma), value = line.substr(comma + 1);
    if (header) {
      header = false;
      if (key == "element" && value == "value") continue;
      throw Error(Errc::parse_error, path + ": missing header 'element,value'");
    }
    if (!values.emplace(key, Number::parse(value)).second)
      throw Error(Errc::parse_error, path + ": duplicate element '" + key + "'");
  }
  return table(std::move(values), path);
}

Valuation Valuation::parse(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view head = spec.substr(0, colon);
  std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "identity" && arg.empty()) return identity();
  if (head == "reciprocal" && arg.empty()) return reciprocal();
  if (head == "constant" && !arg.empty()) return constant(Number::parse(arg));
  if (head == "power" && !arg.empty()) return power(Number::parse(arg));
  if (head == "table" && !arg.empty()) return load_table(std::string(arg));
  throw Error(Errc::parse_error, "unknown valuation '" + std::string(spec) +
                                     "' (expected identity | constant:v | power:a | reciprocal | table:path)");
}

Valuation Valuation::scaled(Number factor) const {
  Valuation v = *this;
  if (scale_.exact && factor.exact)
    v.scale_.exact = *scale_.exact * *factor.exact;
  else
    v.scale_.exact.reset();
  v.scale_.approx = scale_.approx * factor.approx;
  return v;
}

mpz_class Valuation::numeric_key(const Lattice& lattice, const Element& x) const {
  auto v = lattice.numeric_value(x);
  if (!v) throw Error(Errc::bad_value, describe() + " requires numeric element keys, got '" + lattice.display(x) + "'");
  return *v;
}

const Number& Valuation::table_entry(const Lattice& lattice, const Element& x) const {
  auto it = table_.find(lattice.display(x));
  if (it == table_.end())
    throw Error(Errc::missing_valuation, "valuation table " + source_ + " has no value for '" + lattice.display(x) + "'");
  return it->second;
}

std::optional<mpq_class> Valuation::base_exact(const Lattice& lattice, const Element& x) const {
  switch (kind_) {
    case ValuationKind::identity:
      return mpq_class(numeric_key(lattice, x));
    case ValuationKind::constant:
      return parameter_.exact;
    case ValuationKind::reciprocal: {
      mpz_class k = numeric_key(lattice, x);
      if (sgn(k) == 0) throw Error(Errc::bad_value, "reciprocal of zero");
      mpq_class q(mpz_class(1), k);
      q.canonicalize();
      return q;
    }
    case ValuationKind::power: {
      if (!parameter_.exact || parameter_.exact->get_den() != 1) return std::nullopt;
      const mpz_class& e = parameter_.exact->get_num();
      if (!e.fits_slong_p()) throw Error(Errc::bad_value, "power exponent out of range");
      const long exp = e.get_si();
      mpz_class k = numeric_key(lattice, x);
      mpz_class p;
      mpz_pow_ui(p.get_mpz_t(), k.get_mpz_t(), static_cast<unsigned long>(std::labs(exp)));
      if (exp >= 0) return mpq_class(p);
      if (sgn(p) == 0) throw Error(Errc::bad_value, "negative power of zero");
      mpq_class q(mpz_class(1), p);
      q.canonicalize();
      return q;
    }
    case ValuationKind::table:
      return table_entry(lattice, x).exact;
  }
  return std::nullopt;
}

double Valuation::base_approx(const Lattice& lattice, const Element& x) const {
  switch (kind_) {
    case ValuationKind::identity:
      return numeric_key(lattice, x).get_d();
    case ValuationKind::constant:
      return parameter_.approx;
    case ValuationKind::reciprocal:
      return 1.0 / numeric_key(lattice, x).get_d();
    case ValuationKind::power:
      if (auto q = base_exact(lattice, x)) return q->get_d();
      return std::pow(numeric_key(lattice, x).get_d(), parameter_.approx);
    case ValuationKind::table:
      return table_entry(lattice, x).approx;
  }
  return 0.0;
}

std::optional<mpq_class> Valuation::exact(const Lattice& lattice, const Element& x) const {
  auto base = base_exact(lattice, x);
  if (!base || !scale_.exact) return std::nullopt;
  return mpq_class(*base * *scale_.exact);
}

double Valuation::approx(const Lattice& lattice, const Element& x) const {
  if (auto q = exact(lattice, x)) return q->get_d();
  return base_approx(lattice, x) * scale_.approx;
}

template <>
mpq_class Valuation::value<mpq_class>(const Lattice& lattice, const Element& x) const {
  auto q = exact(lattice, x);
  if (!q)
    throw Error(Errc::mode_mismatch, describe() + " has no exact value at '" + lattice.display(x) +
                                         "'; use float mode");
  return *std::move(q);
}

template <>
double Valuation::value<double>(const Lattice& lattice, const Element& x) const {
  return approx(lattice, x);
}

Mode Valuation::default_mode() const noexcept {
  if (!scale_.exact) return Mode::approximate;
  switch (kind_) {
    case ValuationKind::identity:
    case ValuationKind::reciprocal:
      return Mode::exact;
    case ValuationKind::constant:
      return parameter_.exact ? Mode::exact : Mode::approximate;
    case ValuationKind::power:
      return parameter_.exact && parameter_.exact->get_den() == 1 ? Mode::exact : Mode::approximate;
    case ValuationKind::table:
      for (const auto& [k, v] : table_)
        if (!v.exact) return Mode::approximate;
      return Mode::exact;
  }
  return Mode::approximate;
}

std::string Valuation::describe() const {
  std::string base;
  switch (kind_) {
    case ValuationKind::identity: base = "identity"; break;
    case ValuationKind::constant: base = "constant:" + parameter_.str(); break;
    case ValuationKind::power: base = "power:" + parameter_.str(); break;
    case ValuationKind::reciprocal: base = "reciprocal"; break;
    case ValuationKind::table: base = "table:" + source_; break;
  }
  if (scale_.exact && *scale_.exact == 1) return base;
  return scale_.str() + "*" + base;
}

}  // namespace jointensor
