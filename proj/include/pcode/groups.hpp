#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pcode/fields.hpp"

namespace pcode {

/// Canonical element index. Every backing maps its elements injectively onto
/// indices that are stable across runs.
using Elem = std::uint64_t;

using ElemVisitor = std::function<bool(Elem)>;  // return false to stop

/// Uniform finite-group contract. Enumeration, when supported, always visits
/// elements in increasing canonical index.
class Group {
 public:
  virtual ~Group() = default;

  virtual std::uint64_t order() const = 0;
  virtual Elem identity() const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
  virtual Elem inv(Elem a) const = 0;
  virtual bool valid(Elem a) const = 0;
  virtual bool enumerable() const = 0;
  virtual void for_each(const ElemVisitor& fn) const = 0;
  virtual std::string describe() const = 0;
  virtual std::string element_repr(Elem a) const;  // default: hex index
};

/// Group given by an explicit Cayley table; index 0 is the identity.
class TableGroup : public Group {
 public:
  TableGroup(std::vector<std::uint32_t> table, std::uint32_t order,
             std::string name);

  /// Line 1: order k; then k rows of k indices (row g, column h = g*h).
  static std::shared_ptr<TableGroup> from_file(const std::string& path);

  std::uint64_t order() const override { return k_; }
  Elem identity() const override { return 0; }
  Elem mul(Elem a, Elem b) const override;
  Elem inv(Elem a) const override;
  bool valid(Elem a) const override { return a < k_; }
  bool enumerable() const override { return true; }
  void for_each(const ElemVisitor& fn) const override;
  std::string describe() const override { return name_; }

 private:
  void validate() const;

  std::vector<std::uint32_t> table_;
  std::uint32_t k_;
  std::vector<std::uint32_t> inv_;
  std::string name_;
};

/// Permutation group on {0..deg-1}, materialized as the sorted list of its
/// permutations; canonical index = lexicographic rank within the group.
class PermutationGroup : public Group {
 public:
  PermutationGroup(std::vector<std::vector<std::uint8_t>> perms, std::string name);

  std::uint64_t order() const override { return perms_.size(); }
  Elem identity() const override { return 0; }
  Elem mul(Elem a, Elem b) const override;
  Elem inv(Elem a) const override;
  bool valid(Elem a) const override { return a < perms_.size(); }
  bool enumerable() const override { return true; }
  void for_each(const ElemVisitor& fn) const override;
  std::string describe() const override { return name_; }
  std::string element_repr(Elem a) const override;  // cycle notation

  unsigned degree() const { return deg_; }
  /// Parses cycle notation like "(12)(345)"; points are 1-based digits.
  Elem parse_cycles(const std::string& text) const;
  const std::vector<std::uint8_t>& perm(Elem a) const { return perms_[a]; }

 private:
  Elem index_of(const std::vector<std::uint8_t>& p) const;

  std::vector<std::vector<std::uint8_t>> perms_;
  std::unordered_map<std::string, Elem> rank_;
  unsigned deg_;
  std::string name_;
};

/// Element (a, A) of AGL(2,q^2): translation vector over F_{q^2} plus an
/// invertible 2x2 matrix (a,A)(b,B) = (a+Ab, AB).
struct AffineElement {
  FFElement a1, a2;            // translation
  FFElement m11, m12, m21, m22;  // matrix rows

  friend constexpr auto operator<=>(const AffineElement&, const AffineElement&) = default;
};

class AffineGroup : public Group, public std::enable_shared_from_this<AffineGroup> {
 public:
  explicit AffineGroup(std::shared_ptr<const FieldTower> tower);

  const FieldTower& tower() const { return *tower_; }
  std::shared_ptr<const FieldTower> tower_ptr() const { return tower_; }

  std::uint64_t order() const override;
  Elem identity() const override;
  Elem mul(Elem a, Elem b) const override;
  Elem inv(Elem a) const override;
  bool valid(Elem a) const override;
  bool enumerable() const override { return tower_->n() <= 2; }
  void for_each(const ElemVisitor& fn) const override;
  std::string describe() const override;
  std::string element_repr(Elem a) const override;

  // Struct-level arithmetic, shared with the reproduction scans.
  AffineElement decode(Elem a) const;
  Elem encode(const AffineElement& e) const;
  AffineElement aff_identity() const;
  AffineElement aff_mul(const AffineElement& x, const AffineElement& y) const;
  AffineElement aff_inv(const AffineElement& x) const;
  FFElement det(const AffineElement& x) const;
  bool is_identity_matrix(const AffineElement& x) const;

  /// Sorted packed codes (m11,m12,m21,m22 base-Q digits) of GL_2(F_{q^2}).
  /// Materialized lazily; only permitted for n <= 2.
  const std::vector<std::uint32_t>& gl_codes() const;

  /// Parses "a1,a2;A11,A12,A21,A22" with hex field elements.
  Elem parse_literal(const std::string& text) const;

 private:
  std::shared_ptr<const FieldTower> tower_;
  std::uint64_t q2_;  // field size = q^2
  unsigned shift_;    // bits per digit
  mutable std::vector<std::uint32_t> gl_codes_;
};

/// A subgroup of a parent group: membership oracle plus ordered enumeration.
class Subgroup {
 public:
  explicit Subgroup(std::shared_ptr<const Group> parent) : parent_(std::move(parent)) {}
  virtual ~Subgroup() = default;

  const Group& parent() const { return *parent_; }
  std::shared_ptr<const Group> parent_ptr() const { return parent_; }

  virtual std::uint64_t size() const = 0;
  virtual bool contains(Elem a) const = 0;
  virtual bool enumerable() const { return true; }
  virtual void for_each(const ElemVisitor& fn) const = 0;
  virtual std::string describe() const = 0;

  bool is_whole_group() const { return size() == parent().order(); }

 protected:
  std::shared_ptr<const Group> parent_;
};

/// Subgroup with an explicit element set; closure, identity, inverses and the
/// Lagrange condition are verified at construction.
class ExplicitSubgroup : public Subgroup {
 public:
  ExplicitSubgroup(std::shared_ptr<const Group> parent, std::vector<Elem> elems);

  std::uint64_t size() const override { return sorted_.size(); }
  bool contains(Elem a) const override { return set_.count(a) != 0; }
  void for_each(const ElemVisitor& fn) const override;
  std::string describe() const override;

  const std::vector<Elem>& elements() const { return sorted_; }

 private:
  std::vector<Elem> sorted_;
  std::unordered_set<Elem> set_;
};

/// H_q = { (b, I_2) : b over F_q }, as a closed-form view.
class HqSubgroup : public Subgroup {
 public:
  explicit HqSubgroup(std::shared_ptr<const AffineGroup> agl);

  std::uint64_t size() const override;
  bool contains(Elem a) const override;
  void for_each(const ElemVisitor& fn) const override;
  std::string describe() const override;

  const AffineGroup& affine() const { return *agl_; }

 private:
  std::shared_ptr<const AffineGroup> agl_;
};

/// N_{AGL(2,q^2)}(H_q) = { (a, A) : A over F_q }, as a closed-form view.
/// Membership is the subfield test on the four matrix entries; enumeration
/// streams translation vectors times GL_2(F_q).
class HqNormalizerSubgroup : public Subgroup {
 public:
  explicit HqNormalizerSubgroup(std::shared_ptr<const AffineGroup> agl);

  std::uint64_t size() const override;
  bool contains(Elem a) const override;
  bool enumerable() const override { return agl_->tower().n() <= 3; }
  void for_each(const ElemVisitor& fn) const override;
  std::string describe() const override;

  const AffineGroup& affine() const { return *agl_; }
  /// Sorted packed matrix codes of GL_2(F_q).
  const std::vector<std::uint32_t>& subfield_gl_codes() const { return glq_codes_; }

 private:
  std::shared_ptr<const AffineGroup> agl_;
  std::vector<std::uint32_t> glq_codes_;
  std::uint64_t glq_order_;
};

// ---- factories ----

/// Grammar: cyclic:<k> | dihedral:<2k> | quaternion:8 | sym:<k<=5> |
/// alt:<k<=5> | table:<path>.
std::shared_ptr<Group> make_named(const std::string& spec);

std::shared_ptr<AffineGroup> make_agl2(std::shared_ptr<const FieldTower> tower);
std::shared_ptr<HqSubgroup> make_hq(std::shared_ptr<const AffineGroup> agl);

/// Breadth-first closure of the generators; aborts above max_size elements.
std::shared_ptr<ExplicitSubgroup> subgroup_closure(
    std::shared_ptr<const Group> parent, const std::vector<Elem>& generators,
    std::uint64_t max_size = 1'000'000);

/// All subgroups of a small group: closures of <= 2-element generator sets,
/// then joins to a fixpoint. Complete for order <= 24; rejected above
/// max_order. Result ordered by (size, element list).
std::vector<std::shared_ptr<ExplicitSubgroup>> enumerate_subgroups(
    const std::shared_ptr<const Group>& parent, std::uint64_t max_order = 24);

// ---- cosets / normality ----

struct CosetPartition {
  std::vector<std::vector<Elem>> cells;  // each sorted; ordered by representative
  std::unordered_map<Elem, std::uint32_t> coset_of;

  Elem representative(std::uint32_t c) const { return cells[c].front(); }
};

/// Left cosets gH of H in G. Requires enumerable G of order <= max_group_size.
CosetPartition left_cosets(const Group& g, const Subgroup& h,
                           std::uint64_t max_group_size = 1'000'000);

/// Normalizer of H in G. Uses the closed form for (AGL(2,q^2), H_q); brute
/// force over enumerable G otherwise.
std::shared_ptr<Subgroup> normalizer(const std::shared_ptr<const Group>& g,
                                     const Subgroup& h);

bool is_normal(const std::shared_ptr<const Group>& g, const Subgroup& h);
bool is_2_group(const Subgroup& h);

std::string elem_hex(Elem a);

}  // namespace pcode
