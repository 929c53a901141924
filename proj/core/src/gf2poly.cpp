#include "uniflab/gf2poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace uniflab {

GF2Poly GF2Poly::monomial(unsigned degree) {
  GF2Poly p;
  p.words_.assign(degree / 64 + 1, 0);
  p.words_[degree / 64] = std::uint64_t(1) << (degree % 64);
  return p;
}

GF2Poly GF2Poly::from_bits(std::uint64_t bits) {
  GF2Poly p;
  if (bits) p.words_.push_back(bits);
  return p;
}

void GF2Poly::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

int GF2Poly::degree() const {
  if (words_.empty()) return -1;
  std::uint64_t top = words_.back();
  int bit = 63;
  while (!(top >> bit & 1)) --bit;
  return static_cast<int>((words_.size() - 1) * 64) + bit;
}

bool GF2Poly::bit(unsigned degree) const {
  std::size_t w = degree / 64;
  if (w >= words_.size()) return false;
  return words_[w] >> (degree % 64) & 1;
}

void GF2Poly::flip(unsigned degree) {
  std::size_t w = degree / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] ^= std::uint64_t(1) << (degree % 64);
  trim();
}

std::vector<unsigned> GF2Poly::support() const {
  std::vector<unsigned> out;
  for (std::size_t w = 0; w < words_.size(); ++w)
    for (int b = 0; b < 64; ++b)
      if (words_[w] >> b & 1) out.push_back(static_cast<unsigned>(w * 64 + b));
  return out;
}

GF2Poly GF2Poly::operator+(const GF2Poly& other) const {
  GF2Poly out;
  out.words_.resize(std::max(words_.size(), other.words_.size()), 0);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] ^= words_[i];
  for (std::size_t i = 0; i < other.words_.size(); ++i)
    out.words_[i] ^= other.words_[i];
  out.trim();
  return out;
}

GF2Poly GF2Poly::shifted(unsigned k) const {
  if (is_zero()) return GF2Poly();
  GF2Poly out;
  std::size_t wshift = k / 64;
  unsigned bshift = k % 64;
  out.words_.assign(words_.size() + wshift + 1, 0);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i + wshift] ^= words_[i] << bshift;
    if (bshift)
      out.words_[i + wshift + 1] ^= words_[i] >> (64 - bshift);
  }
  out.trim();
  return out;
}

GF2Poly GF2Poly::operator*(const GF2Poly& other) const {
  GF2Poly out;
  for (unsigned k : support()) out = out + other.shifted(k);
  return out;
}

void GF2Poly::divmod(const GF2Poly& a, const GF2Poly& b, GF2Poly& q,
                     GF2Poly& r) {
  if (b.is_zero()) throw std::domain_error("GF2Poly division by zero");
  q = GF2Poly();
  r = a;
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    unsigned shift = static_cast<unsigned>(r.degree() - db);
    q.flip(shift);
    r = r + b.shifted(shift);
  }
}

GF2Poly GF2Poly::operator/(const GF2Poly& other) const {
  GF2Poly q, r;
  divmod(*this, other, q, r);
  return q;
}

GF2Poly GF2Poly::operator%(const GF2Poly& other) const {
  GF2Poly q, r;
  divmod(*this, other, q, r);
  return r;
}

bool GF2Poly::divides(const GF2Poly& other) const {
  if (other.is_zero()) return true;
  if (is_zero()) return false;
  return (other % *this).is_zero();
}

bool GF2Poly::operator<(const GF2Poly& other) const {
  if (words_.size() != other.words_.size())
    return words_.size() < other.words_.size();
  for (std::size_t i = words_.size(); i-- > 0;)
    if (words_[i] != other.words_[i]) return words_[i] < other.words_[i];
  return false;
}

std::string GF2Poly::str() const {
  if (is_zero()) return "0";
  std::vector<unsigned> sup = support();
  std::ostringstream os;
  for (std::size_t i = sup.size(); i-- > 0;) {
    unsigned k = sup[i];
    if (k == 0) os << "1";
    else if (k == 1) os << "h";
    else os << "h^" << k;
    if (i) os << " + ";
  }
  return os.str();
}

Term poly_to_term(const GF2Poly& p, const Term& base, const Signature& sig) {
  std::vector<Term> parts;
  for (unsigned k : p.support()) {
    Term t = base;
    for (unsigned i = 0; i < k; ++i) t = Term::app("h", {std::move(t)});
    parts.push_back(std::move(t));
  }
  return canonicalize(Term::sum(std::move(parts)), sig);
}

}  // namespace uniflab
