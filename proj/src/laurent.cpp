#include "vmeander/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace vmeander {

LaurentPoly LaurentPoly::monomial(int exponent, Coeff c) {
  LaurentPoly p;
  p.add_term(exponent, c);
  return p;
}

LaurentPoly::Coeff LaurentPoly::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

void LaurentPoly::add_term(int exponent, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result = constant(1);
  for (unsigned i = 0; i < n; ++i) result = result * *this;
  return result;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.add_term(-e, c);
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << ' ';
    os << e << ':' << c;
    first = false;
  }
  return os.str();
}

LaurentPoly LaurentPoly::parse(std::string_view text) {
  LaurentPoly p;
  std::istringstream is{std::string(text)};
  std::string tok;
  bool any = false;
  while (is >> tok) {
    any = true;
    if (tok == "0" && p.is_zero()) continue;
    const auto colon = tok.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("bad polynomial term '" + tok + "'");
    }
    try {
      std::size_t used = 0;
      const int e = std::stoi(tok.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(tok);
      const std::string rest = tok.substr(colon + 1);
      const long long c = std::stoll(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(tok);
      p.add_term(e, c);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad polynomial term '" + tok + "'");
    }
  }
  if (!any) throw std::invalid_argument("empty polynomial text");
  return p;
}

}  // namespace vmeander
