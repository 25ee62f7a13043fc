#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace vmeander {

/// Integer Laurent polynomial in one variable. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
class LaurentPoly {
 public:
  using Coeff = std::int64_t;

  LaurentPoly() = default;
  static LaurentPoly constant(Coeff c) { return monomial(0, c); }
  static LaurentPoly monomial(int exponent, Coeff c = 1);

  const std::map<int, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coefficient(int exponent) const;

  void add_term(int exponent, Coeff c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly pow(unsigned n) const;
  /// Substitutes x -> x^-1.
  LaurentPoly inverted() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Canonical text: "e:c" pairs by increasing exponent joined with spaces;
  /// the zero polynomial is "0".
  std::string to_string() const;
  static LaurentPoly parse(std::string_view text);

 private:
  std::map<int, Coeff> terms_;
};

}  // namespace vmeander
