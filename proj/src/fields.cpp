#include "pcode/fields.hpp"

#include <bit>
#include <stdexcept>

namespace pcode {

namespace gf2poly {

int degree(std::uint64_t p) {
  if (p == 0) return -1;
  return 63 - std::countl_zero(p);
}

std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  int da = degree(a);
  while (da >= dm) {
    a ^= m << (da - dm);
    da = degree(a);
  }
  return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
  }
  return mod(r, m);
}

bool irreducible(std::uint64_t m) {
  const int d = degree(m);
  if (d < 1) return false;
  if (d == 1) return true;
  if ((m & 1) == 0) return false;  // divisible by x
  // Trial division by every polynomial of degree 1..d/2.
  for (int k = 1; 2 * k <= d; ++k) {
    for (std::uint64_t f = (1ull << k); f < (1ull << (k + 1)); ++f) {
      // Divides iff remainder is zero.
      if (mod(m, f) == 0) return false;
    }
  }
  return true;
}

}  // namespace gf2poly

namespace {

// Primitive polynomials over GF(2) of degree 2n, alpha = class of x.
constexpr std::uint64_t kModulusTable[5] = {
    0,
    0x7,    // x^2 + x + 1
    0x13,   // x^4 + x + 1
    0x43,   // x^6 + x + 1
    0x11d,  // x^8 + x^4 + x^3 + x^2 + 1
};

}  // namespace

FieldTower::FieldTower(unsigned n) : n_(n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("FieldTower: no modulus configured for n=" +
                                std::to_string(n) + " (supported: 1..4)");
  modulus_ = kModulusTable[n];
  size_ = 1ull << (2 * n);
  subq_ = 1ull << n;

  if (!gf2poly::irreducible(modulus_))
    throw std::logic_error("FieldTower: modulus is not irreducible");

  // Discrete log tables from powers of x; doubles as the primitivity check.
  exp_.assign(2 * (size_ - 1), 0);
  log_.assign(size_, 0);
  std::uint64_t p = 1;
  for (std::uint64_t i = 0; i < size_ - 1; ++i) {
    if (p == 1 && i != 0)
      throw std::logic_error("FieldTower: alpha is not primitive");
    exp_[i] = p;
    exp_[i + size_ - 1] = p;
    log_[p] = i;
    p = gf2poly::mulmod(p, 2, modulus_);
  }
  if (p != 1) throw std::logic_error("FieldTower: multiplicative order broken");

  alpha_ = {2};
  s_ = add(alpha_, pow(alpha_, subq_));
  t_ = pow(alpha_, subq_ + 1);

  if (!in_subfield(s_) || !in_subfield(t_) || t_ == zero())
    throw std::logic_error("FieldTower: s,t not in F_q^* as required");
  // alpha^2 + s*alpha + t = 0
  if (add(add(mul(alpha_, alpha_), mul(s_, alpha_)), t_) != zero())
    throw std::logic_error("FieldTower: quadratic relation failed");
  // s != 0: otherwise x^2 + t would be a square, contradicting irreducibility.
  if (s_ == zero()) throw std::logic_error("FieldTower: trace coefficient vanished");

  for (std::uint64_t z = 0; z < size_; ++z)
    if (in_subfield({z})) subfield_.push_back({z});
  if (subfield_.size() != subq_)
    throw std::logic_error("FieldTower: subfield has wrong size");
}

FFElement FieldTower::element(std::uint64_t bits) const {
  if (bits >= size_)
    throw std::invalid_argument("FieldTower: element bits out of range");
  return {bits};
}

FFElement FieldTower::inv(FFElement a) const {
  if (a.bits == 0) throw std::domain_error("FieldTower: inverse of zero");
  return {exp_[(size_ - 1) - log_[a.bits]]};
}

FFElement FieldTower::pow(FFElement a, std::uint64_t e) const {
  if (a.bits == 0) return e == 0 ? one() : zero();
  const std::uint64_t ord = size_ - 1;
  return {exp_[(log_[a.bits] * (e % ord)) % ord]};
}

std::pair<FFElement, FFElement> FieldTower::decompose(FFElement z) const {
  // z = x + y*alpha; z + z^q = y * (alpha + alpha^q) = y*s.
  FFElement y = mul(add(z, pow(z, subq_)), inv(s_));
  FFElement x = add(z, mul(y, alpha_));
  if (!in_subfield(x) || !in_subfield(y))
    throw std::logic_error("FieldTower: decompose broke out of the subfield");
  return {x, y};
}

std::string FieldTower::to_hex(FFElement z) {
  if (z.bits == 0) return "0";
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::uint64_t v = z.bits; v; v >>= 4) out.insert(out.begin(), digits[v & 0xf]);
  return out;
}

FFElement FieldTower::from_hex(const std::string& s) const {
  if (s.empty()) throw std::invalid_argument("empty field element literal");
  std::uint64_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw std::invalid_argument("bad hex digit in field element literal");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return element(v);
}

}  // namespace pcode
