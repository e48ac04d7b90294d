#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pcode {

/// Element of GF(2^m), stored as a reduced polynomial over GF(2).
/// The bit-vector is always reduced modulo the tower modulus; ordering is
/// by integer value of the bits, which fixes iteration order everywhere
/// downstream.
struct FFElement {
  std::uint64_t bits = 0;

  friend constexpr auto operator<=>(const FFElement&, const FFElement&) = default;
};

/// The quadratic tower F_q < F_{q^2} with q = 2^n, built from a fixed
/// primitive polynomial of degree 2n. alpha is the residue class of x and
/// generates the multiplicative group; s = alpha + alpha^q and
/// t = alpha^{q+1} are the coefficients of the minimal polynomial of alpha
/// over F_q, so alpha^2 = s*alpha + t.
class FieldTower {
 public:
  explicit FieldTower(unsigned n);

  unsigned n() const { return n_; }
  unsigned degree() const { return 2 * n_; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t field_size() const { return size_; }       // 2^{2n}
  std::uint64_t subfield_size() const { return subq_; }    // q = 2^n

  FFElement zero() const { return {0}; }
  FFElement one() const { return {1}; }
  FFElement alpha() const { return alpha_; }
  FFElement s() const { return s_; }
  FFElement t() const { return t_; }

  /// Validated constructor from raw bits (must be < field_size).
  FFElement element(std::uint64_t bits) const;

  FFElement add(FFElement a, FFElement b) const { return {a.bits ^ b.bits}; }
  FFElement mul(FFElement a, FFElement b) const {
    if (a.bits == 0 || b.bits == 0) return {0};
    return {exp_[log_[a.bits] + log_[b.bits]]};
  }
  FFElement inv(FFElement a) const;
  FFElement pow(FFElement a, std::uint64_t e) const;

  /// True iff z lies in the index-2 subfield F_q, i.e. z^q = z.
  bool in_subfield(FFElement z) const { return pow(z, subq_) == z; }

  /// Unique decomposition z = x + y*alpha with x, y in F_q.
  std::pair<FFElement, FFElement> decompose(FFElement z) const;
  FFElement compose(FFElement x, FFElement y) const { return add(x, mul(y, alpha_)); }

  /// The q elements of F_q in increasing bit order.
  const std::vector<FFElement>& subfield_elements() const { return subfield_; }

  static std::string to_hex(FFElement z);
  FFElement from_hex(const std::string& s) const;

 private:
  unsigned n_;
  std::uint64_t modulus_;
  std::uint64_t size_;
  std::uint64_t subq_;
  FFElement alpha_, s_, t_;
  std::vector<std::uint64_t> exp_;   // length 2*(size-1), doubled for wraparound
  std::vector<std::uint64_t> log_;   // log_[z] defined for z != 0
  std::vector<FFElement> subfield_;
};

/// Polynomial arithmetic over GF(2), exposed for construction-time
/// verification and for oracle-style tests.
namespace gf2poly {
int degree(std::uint64_t p);
std::uint64_t mod(std::uint64_t a, std::uint64_t m);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
bool irreducible(std::uint64_t m);
}  // namespace gf2poly

}  // namespace pcode
