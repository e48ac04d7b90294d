#include "pcode/groups.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pcode {

std::string elem_hex(Elem a) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%llx", static_cast<unsigned long long>(a));
  return buf;
}

std::string Group::element_repr(Elem a) const { return elem_hex(a); }

// ---------------------------------------------------------------- TableGroup

TableGroup::TableGroup(std::vector<std::uint32_t> table, std::uint32_t order,
                       std::string name)
    : table_(std::move(table)), k_(order), name_(std::move(name)) {
  if (k_ == 0 || table_.size() != static_cast<std::size_t>(k_) * k_)
    throw std::invalid_argument("TableGroup: table size does not match order");
  validate();
  inv_.assign(k_, 0);
  for (std::uint32_t g = 0; g < k_; ++g) {
    bool found = false;
    for (std::uint32_t h = 0; h < k_; ++h)
      if (table_[g * k_ + h] == 0 && table_[h * k_ + g] == 0) {
        inv_[g] = h;
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("TableGroup: element without inverse");
  }
}

void TableGroup::validate() const {
  for (std::uint32_t g = 0; g < k_; ++g)
    for (std::uint32_t h = 0; h < k_; ++h)
      if (table_[g * k_ + h] >= k_)
        throw std::invalid_argument("TableGroup: entry out of range");
  for (std::uint32_t g = 0; g < k_; ++g)
    if (table_[0 * k_ + g] != g || table_[g * k_ + 0] != g)
      throw std::invalid_argument("TableGroup: index 0 is not the identity");
  // Latin-square rows and columns.
  std::vector<bool> seen(k_);
  for (std::uint32_t g = 0; g < k_; ++g) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint32_t h = 0; h < k_; ++h) {
      std::uint32_t v = table_[g * k_ + h];
      if (seen[v]) throw std::invalid_argument("TableGroup: repeated entry in row");
      seen[v] = true;
    }
  }
  // Associativity: exhaustive for small tables, sampled above.
  if (k_ <= 256) {
    for (std::uint32_t a = 0; a < k_; ++a)
      for (std::uint32_t b = 0; b < k_; ++b)
        for (std::uint32_t c = 0; c < k_; ++c)
          if (table_[table_[a * k_ + b] * k_ + c] != table_[a * k_ + table_[b * k_ + c]])
            throw std::invalid_argument("TableGroup: associativity failed");
  } else {
    std::mt19937_64 rng(0);
    for (int i = 0; i < 100000; ++i) {
      std::uint32_t a = rng() % k_, b = rng() % k_, c = rng() % k_;
      if (table_[table_[a * k_ + b] * k_ + c] != table_[a * k_ + table_[b * k_ + c]])
        throw std::invalid_argument("TableGroup: associativity failed");
    }
  }
}

std::shared_ptr<TableGroup> TableGroup::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open Cayley table file: " + path);
  std::uint64_t k = 0;
  if (!(in >> k) || k == 0 || k > 100000)
    throw std::invalid_argument("bad order line in Cayley table file");
  std::vector<std::uint32_t> table(k * k);
  for (auto& v : table)
    if (!(in >> v)) throw std::invalid_argument("truncated Cayley table file");
  return std::make_shared<TableGroup>(std::move(table), static_cast<std::uint32_t>(k),
                                      "table:" + path);
}

Elem TableGroup::mul(Elem a, Elem b) const {
  if (a >= k_ || b >= k_) throw std::invalid_argument("TableGroup: element out of range");
  return table_[a * k_ + b];
}

Elem TableGroup::inv(Elem a) const {
  if (a >= k_) throw std::invalid_argument("TableGroup: element out of range");
  return inv_[a];
}

void TableGroup::for_each(const ElemVisitor& fn) const {
  for (std::uint32_t g = 0; g < k_; ++g)
    if (!fn(g)) return;
}

// --------------------------------------------------------- PermutationGroup

namespace {
std::string perm_key(const std::vector<std::uint8_t>& p) {
  return std::string(p.begin(), p.end());
}
}  // namespace

PermutationGroup::PermutationGroup(std::vector<std::vector<std::uint8_t>> perms,
                                   std::string name)
    : perms_(std::move(perms)), name_(std::move(name)) {
  if (perms_.empty()) throw std::invalid_argument("PermutationGroup: empty set");
  deg_ = static_cast<unsigned>(perms_[0].size());
  for (const auto& p : perms_)
    if (p.size() != deg_) throw std::invalid_argument("PermutationGroup: mixed degree");
  std::sort(perms_.begin(), perms_.end());
  perms_.erase(std::unique(perms_.begin(), perms_.end()), perms_.end());
  for (Elem i = 0; i < perms_.size(); ++i) rank_[perm_key(perms_[i])] = i;

  std::vector<std::uint8_t> id(deg_);
  for (unsigned i = 0; i < deg_; ++i) id[i] = static_cast<std::uint8_t>(i);
  if (perms_[0] != id)
    throw std::invalid_argument("PermutationGroup: identity missing or not minimal");
  // Closure.
  std::vector<std::uint8_t> tmp(deg_);
  for (const auto& p : perms_)
    for (const auto& q : perms_) {
      for (unsigned i = 0; i < deg_; ++i) tmp[i] = p[q[i]];
      if (!rank_.count(perm_key(tmp)))
        throw std::invalid_argument("PermutationGroup: set not closed");
    }
}

Elem PermutationGroup::index_of(const std::vector<std::uint8_t>& p) const {
  auto it = rank_.find(perm_key(p));
  if (it == rank_.end())
    throw std::invalid_argument("PermutationGroup: permutation not in group");
  return it->second;
}

Elem PermutationGroup::mul(Elem a, Elem b) const {
  if (a >= perms_.size() || b >= perms_.size())
    throw std::invalid_argument("PermutationGroup: element out of range");
  const auto& p = perms_[a];
  const auto& q = perms_[b];
  std::vector<std::uint8_t> tmp(deg_);
  for (unsigned i = 0; i < deg_; ++i) tmp[i] = p[q[i]];
  return index_of(tmp);
}

Elem PermutationGroup::inv(Elem a) const {
  if (a >= perms_.size())
    throw std::invalid_argument("PermutationGroup: element out of range");
  const auto& p = perms_[a];
  std::vector<std::uint8_t> tmp(deg_);
  for (unsigned i = 0; i < deg_; ++i) tmp[p[i]] = static_cast<std::uint8_t>(i);
  return index_of(tmp);
}

void PermutationGroup::for_each(const ElemVisitor& fn) const {
  for (Elem i = 0; i < perms_.size(); ++i)
    if (!fn(i)) return;
}

std::string PermutationGroup::element_repr(Elem a) const {
  const auto& p = perms_[a];
  std::string out;
  std::vector<bool> used(deg_, false);
  for (unsigned i = 0; i < deg_; ++i) {
    if (used[i] || p[i] == i) continue;
    out += '(';
    unsigned j = i;
    while (!used[j]) {
      used[j] = true;
      out += static_cast<char>('1' + j);
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

Elem PermutationGroup::parse_cycles(const std::string& text) const {
  std::vector<std::uint8_t> p(deg_);
  for (unsigned i = 0; i < deg_; ++i) p[i] = static_cast<std::uint8_t>(i);
  if (text == "e" || text == "()") return index_of(p);
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '(')
      throw std::invalid_argument("bad cycle notation: " + text);
    ++i;
    std::vector<unsigned> cycle;
    while (i < text.size() && text[i] != ')') {
      char c = text[i];
      if (c < '1' || c >= static_cast<char>('1' + deg_))
        throw std::invalid_argument("cycle point out of range: " + text);
      cycle.push_back(static_cast<unsigned>(c - '1'));
      ++i;
    }
    if (i == text.size()) throw std::invalid_argument("unterminated cycle: " + text);
    ++i;  // ')'
    if (cycle.size() < 2) throw std::invalid_argument("cycle too short: " + text);
    for (std::size_t k = 0; k < cycle.size(); ++k)
      p[cycle[k]] = static_cast<std::uint8_t>(cycle[(k + 1) % cycle.size()]);
  }
  return index_of(p);
}

// -------------------------------------------------------------- AffineGroup

AffineGroup::AffineGroup(std::shared_ptr<const FieldTower> tower)
    : tower_(std::move(tower)) {
  q2_ = tower_->field_size();
  shift_ = tower_->degree();
}

std::uint64_t AffineGroup::order() const {
  const std::uint64_t Q = q2_;
  return Q * Q * ((Q * Q - 1) * (Q * Q - Q));
}

AffineElement AffineGroup::decode(Elem e) const {
  const std::uint64_t mask = q2_ - 1;
  AffineElement x;
  x.m22 = {e & mask};
  x.m21 = {(e >> shift_) & mask};
  x.m12 = {(e >> (2 * shift_)) & mask};
  x.m11 = {(e >> (3 * shift_)) & mask};
  x.a2 = {(e >> (4 * shift_)) & mask};
  x.a1 = {(e >> (5 * shift_)) & mask};
  return x;
}

Elem AffineGroup::encode(const AffineElement& x) const {
  return (((((x.a1.bits << shift_ | x.a2.bits) << shift_ | x.m11.bits) << shift_ |
            x.m12.bits)
           << shift_) |
          x.m21.bits)
             << shift_ |
         x.m22.bits;
}

AffineElement AffineGroup::aff_identity() const {
  AffineElement x{};
  x.m11 = tower_->one();
  x.m22 = tower_->one();
  return x;
}

FFElement AffineGroup::det(const AffineElement& x) const {
  const FieldTower& f = *tower_;
  return f.add(f.mul(x.m11, x.m22), f.mul(x.m12, x.m21));
}

bool AffineGroup::is_identity_matrix(const AffineElement& x) const {
  return x.m11 == tower_->one() && x.m22 == tower_->one() &&
         x.m12 == tower_->zero() && x.m21 == tower_->zero();
}

AffineElement AffineGroup::aff_mul(const AffineElement& x, const AffineElement& y) const {
  const FieldTower& f = *tower_;
  AffineElement r;
  r.a1 = f.add(x.a1, f.add(f.mul(x.m11, y.a1), f.mul(x.m12, y.a2)));
  r.a2 = f.add(x.a2, f.add(f.mul(x.m21, y.a1), f.mul(x.m22, y.a2)));
  r.m11 = f.add(f.mul(x.m11, y.m11), f.mul(x.m12, y.m21));
  r.m12 = f.add(f.mul(x.m11, y.m12), f.mul(x.m12, y.m22));
  r.m21 = f.add(f.mul(x.m21, y.m11), f.mul(x.m22, y.m21));
  r.m22 = f.add(f.mul(x.m21, y.m12), f.mul(x.m22, y.m22));
  return r;
}

AffineElement AffineGroup::aff_inv(const AffineElement& x) const {
  const FieldTower& f = *tower_;
  FFElement d = det(x);
  FFElement di = f.inv(d);  // throws for singular input
  AffineElement r;
  r.m11 = f.mul(di, x.m22);
  r.m12 = f.mul(di, x.m12);
  r.m21 = f.mul(di, x.m21);
  r.m22 = f.mul(di, x.m11);
  // translation: A^{-1} a (char 2 absorbs the sign)
  r.a1 = f.add(f.mul(r.m11, x.a1), f.mul(r.m12, x.a2));
  r.a2 = f.add(f.mul(r.m21, x.a1), f.mul(r.m22, x.a2));
  return r;
}

Elem AffineGroup::identity() const { return encode(aff_identity()); }

bool AffineGroup::valid(Elem e) const {
  if (e >> (6 * shift_)) return false;
  AffineElement x = decode(e);
  return det(x) != tower_->zero();
}

Elem AffineGroup::mul(Elem a, Elem b) const {
  if (!valid(a) || !valid(b))
    throw std::invalid_argument("AffineGroup: operand not a group element");
  return encode(aff_mul(decode(a), decode(b)));
}

Elem AffineGroup::inv(Elem a) const {
  if (!valid(a)) throw std::invalid_argument("AffineGroup: operand not a group element");
  return encode(aff_inv(decode(a)));
}

const std::vector<std::uint32_t>& AffineGroup::gl_codes() const {
  if (tower_->n() > 2)
    throw std::logic_error("AffineGroup: full enumeration forbidden for n >= 3");
  if (gl_codes_.empty()) {
    const std::uint64_t Q = q2_;
    gl_codes_.reserve((Q * Q - 1) * (Q * Q - Q));
    for (std::uint64_t code = 0; code < Q * Q * Q * Q; ++code) {
      AffineElement x = decode(code);  // translation digits zero
      if (det(x) != tower_->zero()) gl_codes_.push_back(static_cast<std::uint32_t>(code));
    }
  }
  return gl_codes_;
}

void AffineGroup::for_each(const ElemVisitor& fn) const {
  const auto& mats = gl_codes();
  const std::uint64_t Q = q2_;
  for (std::uint64_t a1 = 0; a1 < Q; ++a1)
    for (std::uint64_t a2 = 0; a2 < Q; ++a2) {
      const std::uint64_t hi = (a1 << shift_ | a2) << (4 * shift_);
      for (std::uint32_t m : mats)
        if (!fn(hi | m)) return;
    }
}

std::string AffineGroup::describe() const {
  return "agl:" + std::to_string(tower_->n());
}

std::string AffineGroup::element_repr(Elem e) const {
  AffineElement x = decode(e);
  return "(" + FieldTower::to_hex(x.a1) + "," + FieldTower::to_hex(x.a2) + ";" +
         FieldTower::to_hex(x.m11) + "," + FieldTower::to_hex(x.m12) + "," +
         FieldTower::to_hex(x.m21) + "," + FieldTower::to_hex(x.m22) + ")";
}

Elem AffineGroup::parse_literal(const std::string& text) const {
  auto semi = text.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("affine literal must be a1,a2;A11,A12,A21,A22");
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(part);
    return out;
  };
  auto va = split(text.substr(0, semi));
  auto vm = split(text.substr(semi + 1));
  if (va.size() != 2 || vm.size() != 4)
    throw std::invalid_argument("affine literal must be a1,a2;A11,A12,A21,A22");
  AffineElement x;
  x.a1 = tower_->from_hex(va[0]);
  x.a2 = tower_->from_hex(va[1]);
  x.m11 = tower_->from_hex(vm[0]);
  x.m12 = tower_->from_hex(vm[1]);
  x.m21 = tower_->from_hex(vm[2]);
  x.m22 = tower_->from_hex(vm[3]);
  if (det(x) == tower_->zero())
    throw std::invalid_argument("affine literal has a singular matrix");
  return encode(x);
}

// ------------------------------------------------------------ ExplicitSubgroup

ExplicitSubgroup::ExplicitSubgroup(std::shared_ptr<const Group> parent,
                                   std::vector<Elem> elems)
    : Subgroup(std::move(parent)) {
  sorted_ = std::move(elems);
  std::sort(sorted_.begin(), sorted_.end());
  sorted_.erase(std::unique(sorted_.begin(), sorted_.end()), sorted_.end());
  set_.insert(sorted_.begin(), sorted_.end());

  const Group& g = *parent_;
  if (sorted_.empty() || !set_.count(g.identity()))
    throw std::invalid_argument("subgroup must contain the identity");
  for (Elem a : sorted_) {
    if (!g.valid(a)) throw std::invalid_argument("subgroup element not in parent group");
    if (!set_.count(g.inv(a)))
      throw std::invalid_argument("subgroup not closed under inversion");
  }
  const std::uint64_t sz = sorted_.size();
  if (sz <= 2048) {
    for (Elem a : sorted_)
      for (Elem b : sorted_)
        if (!set_.count(g.mul(a, b)))
          throw std::invalid_argument("subgroup not closed under multiplication");
  } else {
    std::mt19937_64 rng(0);
    for (int i = 0; i < 200000; ++i)
      if (!set_.count(g.mul(sorted_[rng() % sz], sorted_[rng() % sz])))
        throw std::invalid_argument("subgroup not closed under multiplication");
  }
  if (g.order() % sz != 0)
    throw std::invalid_argument("subgroup size violates Lagrange");
}

void ExplicitSubgroup::for_each(const ElemVisitor& fn) const {
  for (Elem a : sorted_)
    if (!fn(a)) return;
}

std::string ExplicitSubgroup::describe() const {
  return "subgroup(order=" + std::to_string(sorted_.size()) + ")";
}

// ---------------------------------------------------------------- HqSubgroup

HqSubgroup::HqSubgroup(std::shared_ptr<const AffineGroup> agl)
    : Subgroup(agl), agl_(std::move(agl)) {}

std::uint64_t HqSubgroup::size() const {
  const std::uint64_t q = agl_->tower().subfield_size();
  return q * q;
}

bool HqSubgroup::contains(Elem e) const {
  if (!agl_->valid(e)) return false;
  const FieldTower& f = agl_->tower();
  AffineElement x = agl_->decode(e);
  return agl_->is_identity_matrix(x) && f.in_subfield(x.a1) && f.in_subfield(x.a2);
}

void HqSubgroup::for_each(const ElemVisitor& fn) const {
  AffineElement x = agl_->aff_identity();
  for (FFElement b1 : agl_->tower().subfield_elements())
    for (FFElement b2 : agl_->tower().subfield_elements()) {
      x.a1 = b1;
      x.a2 = b2;
      if (!fn(agl_->encode(x))) return;
    }
}

std::string HqSubgroup::describe() const {
  return "hq:" + std::to_string(agl_->tower().n());
}

// ------------------------------------------------------ HqNormalizerSubgroup

HqNormalizerSubgroup::HqNormalizerSubgroup(std::shared_ptr<const AffineGroup> agl)
    : Subgroup(agl), agl_(std::move(agl)) {
  const FieldTower& f = agl_->tower();
  const auto& sub = f.subfield_elements();
  for (FFElement m11 : sub)
    for (FFElement m12 : sub)
      for (FFElement m21 : sub)
        for (FFElement m22 : sub) {
          if (f.add(f.mul(m11, m22), f.mul(m12, m21)) == f.zero()) continue;
          std::uint32_t code = static_cast<std::uint32_t>(
              ((m11.bits << f.degree() | m12.bits) << f.degree() | m21.bits)
                  << f.degree() |
              m22.bits);
          glq_codes_.push_back(code);
        }
  const std::uint64_t q = f.subfield_size();
  glq_order_ = (q * q - 1) * (q * q - q);
  if (glq_codes_.size() != glq_order_)
    throw std::logic_error("HqNormalizerSubgroup: |GL_2(F_q)| mismatch");
}

std::uint64_t HqNormalizerSubgroup::size() const {
  const std::uint64_t Q = agl_->tower().field_size();
  return Q * Q * glq_order_;
}

bool HqNormalizerSubgroup::contains(Elem e) const {
  if (!agl_->valid(e)) return false;
  const FieldTower& f = agl_->tower();
  AffineElement x = agl_->decode(e);
  return f.in_subfield(x.m11) && f.in_subfield(x.m12) && f.in_subfield(x.m21) &&
         f.in_subfield(x.m22);
}

void HqNormalizerSubgroup::for_each(const ElemVisitor& fn) const {
  if (!enumerable())
    throw std::logic_error("HqNormalizerSubgroup: enumeration forbidden for n >= 4");
  const FieldTower& f = agl_->tower();
  const std::uint64_t Q = f.field_size();
  const unsigned shift = f.degree();
  for (std::uint64_t a1 = 0; a1 < Q; ++a1)
    for (std::uint64_t a2 = 0; a2 < Q; ++a2) {
      const std::uint64_t hi = (a1 << shift | a2) << (4 * shift);
      for (std::uint32_t m : glq_codes_)
        if (!fn(hi | m)) return;
    }
}

std::string HqNormalizerSubgroup::describe() const {
  return "normalizer(hq:" + std::to_string(agl_->tower().n()) + ")";
}

// ----------------------------------------------------------------- factories

namespace {

std::shared_ptr<Group> make_cyclic(std::uint32_t k, const std::string& spec) {
  if (k == 0 || k > 2048) throw std::invalid_argument("cyclic order out of range: " + spec);
  std::vector<std::uint32_t> t(static_cast<std::size_t>(k) * k);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) t[i * k + j] = (i + j) % k;
  return std::make_shared<TableGroup>(std::move(t), k, spec);
}

std::shared_ptr<Group> make_dihedral(std::uint32_t order, const std::string& spec) {
  if (order < 4 || order % 2 != 0 || order > 2048)
    throw std::invalid_argument("dihedral order must be even and >= 4: " + spec);
  const std::uint32_t k = order / 2;
  // element (i, j) = r^i s^j at index j*k + i
  std::vector<std::uint32_t> t(static_cast<std::size_t>(order) * order);
  for (std::uint32_t j1 = 0; j1 < 2; ++j1)
    for (std::uint32_t i1 = 0; i1 < k; ++i1)
      for (std::uint32_t j2 = 0; j2 < 2; ++j2)
        for (std::uint32_t i2 = 0; i2 < k; ++i2) {
          std::uint32_t i = j1 ? (i1 + k - i2 % k) % k : (i1 + i2) % k;
          std::uint32_t j = (j1 + j2) % 2;
          t[(j1 * k + i1) * order + (j2 * k + i2)] = j * k + i;
        }
  return std::make_shared<TableGroup>(std::move(t), order, spec);
}

std::shared_ptr<Group> make_quaternion8() {
  // index = 2*unit + sign, units 0:1 1:i 2:j 3:k
  static const int umul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int usgn[4][4] = {{+1, +1, +1, +1},
                                 {+1, -1, +1, -1},
                                 {+1, -1, -1, +1},
                                 {+1, +1, -1, -1}};
  std::vector<std::uint32_t> t(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, sa = a % 2 ? -1 : 1;
      int ub = b / 2, sb = b % 2 ? -1 : 1;
      int u = umul[ua][ub];
      int s = sa * sb * usgn[ua][ub];
      t[a * 8 + b] = static_cast<std::uint32_t>(2 * u + (s < 0 ? 1 : 0));
    }
  return std::make_shared<TableGroup>(std::move(t), 8, "quaternion:8");
}

bool perm_is_even(const std::vector<std::uint8_t>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0;
}

std::shared_ptr<Group> make_symmetric(unsigned k, bool even_only,
                                      const std::string& spec) {
  if (k < 1 || k > 5) throw std::invalid_argument("degree must be 1..5: " + spec);
  std::vector<std::uint8_t> p(k);
  for (unsigned i = 0; i < k; ++i) p[i] = static_cast<std::uint8_t>(i);
  std::vector<std::vector<std::uint8_t>> perms;
  do {
    if (!even_only || perm_is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return std::make_shared<PermutationGroup>(std::move(perms), spec);
}

}  // namespace

std::shared_ptr<Group> make_named(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("group spec must be kind:arg, got: " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  auto num = [&]() -> std::uint32_t {
    try {
      std::size_t pos = 0;
      unsigned long v = std::stoul(arg, &pos);
      if (pos != arg.size()) throw std::invalid_argument("");
      return static_cast<std::uint32_t>(v);
    } catch (...) {
      throw std::invalid_argument("bad numeric argument in group spec: " + spec);
    }
  };
  if (kind == "cyclic") return make_cyclic(num(), spec);
  if (kind == "dihedral") return make_dihedral(num(), spec);
  if (kind == "quaternion") {
    if (num() != 8) throw std::invalid_argument("only quaternion:8 is available");
    return make_quaternion8();
  }
  if (kind == "sym") return make_symmetric(num(), false, spec);
  if (kind == "alt") return make_symmetric(num(), true, spec);
  if (kind == "table") return TableGroup::from_file(arg);
  throw std::invalid_argument("unknown group kind: " + spec);
}

std::shared_ptr<AffineGroup> make_agl2(std::shared_ptr<const FieldTower> tower) {
  return std::make_shared<AffineGroup>(std::move(tower));
}

std::shared_ptr<HqSubgroup> make_hq(std::shared_ptr<const AffineGroup> agl) {
  return std::make_shared<HqSubgroup>(std::move(agl));
}

std::shared_ptr<ExplicitSubgroup> subgroup_closure(
    std::shared_ptr<const Group> parent, const std::vector<Elem>& generators,
    std::uint64_t max_size) {
  const Group& g = *parent;
  for (Elem a : generators)
    if (!g.valid(a)) throw std::invalid_argument("generator not in parent group");
  std::unordered_set<Elem> seen{g.identity()};
  std::vector<Elem> queue{g.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Elem x = queue[head];
    for (Elem s : generators) {
      for (Elem y : {g.mul(x, s), g.mul(x, g.inv(s))}) {
        if (seen.insert(y).second) {
          if (seen.size() > max_size)
            throw std::runtime_error("subgroup closure exceeded size bound");
          queue.push_back(y);
        }
      }
    }
  }
  return std::make_shared<ExplicitSubgroup>(parent,
                                            std::vector<Elem>(seen.begin(), seen.end()));
}

std::vector<std::shared_ptr<ExplicitSubgroup>> enumerate_subgroups(
    const std::shared_ptr<const Group>& parent, std::uint64_t max_order) {
  const Group& g = *parent;
  if (!g.enumerable() || g.order() > max_order)
    throw std::runtime_error("subgroup enumeration: group order exceeds bound");
  std::vector<Elem> elems;
  g.for_each([&](Elem x) {
    elems.push_back(x);
    return true;
  });

  std::map<std::vector<Elem>, std::shared_ptr<ExplicitSubgroup>> found;
  auto add = [&](const std::vector<Elem>& gens) {
    auto sg = subgroup_closure(parent, gens, max_order);
    found.emplace(sg->elements(), sg);
  };
  add({});
  for (Elem a : elems) add({a});
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) add({elems[i], elems[j]});
  // Join fixpoint.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<Elem>> snapshot;
    for (const auto& [k, v] : found) snapshot.push_back(k);
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        std::vector<Elem> gens = snapshot[i];
        gens.insert(gens.end(), snapshot[j].begin(), snapshot[j].end());
        auto sg = subgroup_closure(parent, gens, max_order);
        if (found.emplace(sg->elements(), sg).second) grew = true;
      }
  }
  std::vector<std::shared_ptr<ExplicitSubgroup>> out;
  for (const auto& [k, v] : found) out.push_back(v);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) {
                     if (a->size() != b->size()) return a->size() < b->size();
                     return a->elements() < b->elements();
                   });
  return out;
}

CosetPartition left_cosets(const Group& g, const Subgroup& h,
                           std::uint64_t max_group_size) {
  if (!g.enumerable()) throw std::invalid_argument("left_cosets: group not enumerable");
  if (g.order() > max_group_size)
    throw std::runtime_error("left_cosets: group order exceeds size bound");
  std::vector<Elem> members;
  members.reserve(h.size());
  h.for_each([&](Elem x) {
    members.push_back(x);
    return true;
  });

  CosetPartition part;
  part.coset_of.reserve(g.order());
  g.for_each([&](Elem x) {
    if (part.coset_of.count(x)) return true;
    std::uint32_t id = static_cast<std::uint32_t>(part.cells.size());
    std::vector<Elem> cell;
    cell.reserve(members.size());
    for (Elem m : members) {
      Elem y = g.mul(x, m);
      cell.push_back(y);
      part.coset_of.emplace(y, id);
    }
    std::sort(cell.begin(), cell.end());
    part.cells.push_back(std::move(cell));
    return true;
  });
  return part;
}

std::shared_ptr<Subgroup> normalizer(const std::shared_ptr<const Group>& g,
                                     const Subgroup& h) {
  if (auto agl = std::dynamic_pointer_cast<const AffineGroup>(g))
    if (dynamic_cast<const HqSubgroup*>(&h))
      return std::make_shared<HqNormalizerSubgroup>(agl);

  if (!g->enumerable())
    throw std::invalid_argument("normalizer: brute force needs an enumerable group");
  std::vector<Elem> members;
  h.for_each([&](Elem x) {
    members.push_back(x);
    return true;
  });
  std::vector<Elem> result;
  g->for_each([&](Elem x) {
    Elem xi = g->inv(x);
    for (Elem m : members)
      if (!h.contains(g->mul(g->mul(x, m), xi))) return true;
    result.push_back(x);
    return true;
  });
  return std::make_shared<ExplicitSubgroup>(g, std::move(result));
}

bool is_normal(const std::shared_ptr<const Group>& g, const Subgroup& h) {
  return normalizer(g, h)->size() == g->order();
}

bool is_2_group(const Subgroup& h) {
  std::uint64_t sz = h.size();
  return sz != 0 && (sz & (sz - 1)) == 0;
}

}  // namespace pcode
