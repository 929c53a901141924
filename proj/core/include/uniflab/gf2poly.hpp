#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uniflab/term.hpp"

namespace uniflab {

// Polynomial in h over Z2, bits indexed by degree. The zero polynomial has
// no words; otherwise the top word is nonzero.
class GF2Poly {
 public:
  GF2Poly() = default;

  static GF2Poly zero() { return GF2Poly(); }
  static GF2Poly one() { return monomial(0); }
  static GF2Poly monomial(unsigned degree);
  static GF2Poly from_bits(std::uint64_t bits);  // degrees 0..63

  bool is_zero() const { return words_.empty(); }
  bool is_one() const { return words_.size() == 1 && words_[0] == 1; }
  // Degree of the zero polynomial is -1.
  int degree() const;
  bool bit(unsigned degree) const;
  void flip(unsigned degree);
  std::vector<unsigned> support() const;

  GF2Poly operator+(const GF2Poly& other) const;
  GF2Poly operator*(const GF2Poly& other) const;
  GF2Poly shifted(unsigned k) const;  // multiply by h^k

  // a = q*b + r with deg(r) < deg(b). Throws on division by zero.
  static void divmod(const GF2Poly& a, const GF2Poly& b, GF2Poly& q, GF2Poly& r);
  GF2Poly operator/(const GF2Poly& other) const;
  GF2Poly operator%(const GF2Poly& other) const;
  bool divides(const GF2Poly& other) const;  // this | other

  bool operator==(const GF2Poly& other) const = default;
  bool operator<(const GF2Poly& other) const;

  // "h^3 + h + 1" style; "0" for the zero polynomial.
  std::string str() const;

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

inline GF2Poly poly_divmod_quotient(const GF2Poly& a, const GF2Poly& b) {
  return a / b;
}

// Sum over the support of h^k applied to `base`, e.g. (h^2+1) at c gives
// h(h(c)) + c. Zero polynomial maps to the term 0.
Term poly_to_term(const GF2Poly& p, const Term& base, const Signature& sig);

}  // namespace uniflab
