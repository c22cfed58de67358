#pragma once

// The antisymmetric square of A: (A (x) A) / <x (x) y + y (x) x>.
//
// For A = (+)_i Z/d_i this is the direct sum of
//   Z/gcd(d_i, d_j)   for every pair i < j   (class of g_i (x) g_j)
//   Z/2               for every i with d_i even or zero (class of g_i (x) g_i)
// with gcd(0, x) = x. Diagonal classes x^x are 2-torsion but not zero.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "angled/abelian.hpp"

namespace angled {

struct Lambda2Slot {
  bool diagonal;
  std::size_t i;
  std::size_t j;  // == i for diagonal slots
  Integer order;  // 0 for an infinite slot
};

class Lambda2Basis {
 public:
  explicit Lambda2Basis(Group group) : group_(std::move(group)) {
    const std::size_t r = group_->rank();
    offdiag_index_.assign(r * r, kAbsent);
    diag_index_.assign(r, kAbsent);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        offdiag_index_[i * r + j] = slots_.size();
        slots_.push_back({false, i, j, gcd(group_->factor(i), group_->factor(j))});
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer& d = group_->factor(i);
      if (d.is_zero() || !bit_test(d, 0)) {
        diag_index_[i] = slots_.size();
        slots_.push_back({true, i, i, Integer(2)});
      }
    }
  }

  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  const Group& group() const { return group_; }
  const std::vector<Lambda2Slot>& slots() const { return slots_; }
  std::size_t size() const { return slots_.size(); }
  std::size_t offdiag_slot(std::size_t i, std::size_t j) const { return offdiag_index_[i * group_->rank() + j]; }
  std::size_t diag_slot(std::size_t i) const { return diag_index_[i]; }

  std::vector<Integer> slot_orders() const {
    std::vector<Integer> out;
    for (const auto& s : slots_) out.push_back(s.order);
    return out;
  }

 private:
  Group group_;
  std::vector<Lambda2Slot> slots_;
  std::vector<std::size_t> offdiag_index_;
  std::vector<std::size_t> diag_index_;
};

using Lambda2 = std::shared_ptr<const Lambda2Basis>;

/// Basis for `group`; the most recent one is reused per thread.
inline Lambda2 lambda2_basis(const Group& group) {
  thread_local Lambda2 cached;
  if (!cached || !same_group(cached->group(), group)) cached = std::make_shared<const Lambda2Basis>(group);
  return cached;
}

class Wedge2Element {
 public:
  explicit Wedge2Element(Lambda2 basis) : basis_(std::move(basis)), coords_(basis_->size()) {}
  explicit Wedge2Element(const Group& group) : Wedge2Element(lambda2_basis(group)) {}

  Wedge2Element(Lambda2 basis, std::vector<Integer> coords) : basis_(std::move(basis)), coords_(std::move(coords)) {
    if (coords_.size() != basis_->size()) throw Error(ErrorKind::MismatchedGroup, "wedge coordinate count");
    reduce();
  }

  const Lambda2& basis() const { return basis_; }
  const Group& group() const { return basis_->group(); }
  const std::vector<Integer>& coords() const { return coords_; }

  /// Coordinate of the class g_i ^ g_j (i < j), or of g_i ^ g_i when i == j
  /// (zero when that slot does not exist).
  Integer coord(std::size_t i, std::size_t j) const {
    std::size_t s = i == j ? basis_->diag_slot(i) : basis_->offdiag_slot(i, j);
    return s == Lambda2Basis::kAbsent ? Integer(0) : coords_[s];
  }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c.is_zero(); });
  }

  /// Nonzero slots as `d[i]=1` and `e[i^j]=c` (1-based factor indices),
  /// ordered by slot kind and then numerically by index; `0` when zero.
  std::string to_string() const {
    std::vector<std::tuple<char, std::size_t, std::size_t, std::string>> terms;
    for (std::size_t s = 0; s < coords_.size(); ++s) {
      if (coords_[s].is_zero()) continue;
      const auto& slot = basis_->slots()[s];
      if (slot.diagonal) {
        terms.emplace_back('d', slot.i, 0, "d[" + std::to_string(slot.i + 1) + "]=" + coords_[s].str());
      } else {
        terms.emplace_back('e', slot.i, slot.j,
                           "e[" + std::to_string(slot.i + 1) + "^" + std::to_string(slot.j + 1) + "]=" + coords_[s].str());
      }
    }
    if (terms.empty()) return "0";
    std::sort(terms.begin(), terms.end());
    std::string out;
    for (const auto& t : terms) out += (out.empty() ? "" : " ") + std::get<3>(t);
    return out;
  }

  Wedge2Element& operator+=(const Wedge2Element& other) {
    require_same(other);
    for (std::size_t s = 0; s < coords_.size(); ++s) coords_[s] += other.coords_[s];
    reduce();
    return *this;
  }

  Wedge2Element& operator-=(const Wedge2Element& other) {
    require_same(other);
    for (std::size_t s = 0; s < coords_.size(); ++s) coords_[s] -= other.coords_[s];
    reduce();
    return *this;
  }

  friend Wedge2Element operator+(Wedge2Element a, const Wedge2Element& b) { return a += b; }
  friend Wedge2Element operator-(Wedge2Element a, const Wedge2Element& b) { return a -= b; }

  friend Wedge2Element operator-(const Wedge2Element& a) {
    Wedge2Element out(a.basis_);
    return out -= a;
  }

  friend Wedge2Element operator*(const Integer& n, const Wedge2Element& a) {
    std::vector<Integer> coords(a.coords_.size());
    for (std::size_t s = 0; s < coords.size(); ++s) coords[s] = n * a.coords_[s];
    return Wedge2Element(a.basis_, std::move(coords));
  }

  friend bool operator==(const Wedge2Element& a, const Wedge2Element& b) {
    return same_group(a.group(), b.group()) && a.coords_ == b.coords_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Wedge2Element& a) { return os << a.to_string(); }

 private:
  void reduce() {
    for (std::size_t s = 0; s < coords_.size(); ++s) coords_[s] = reduce_mod(std::move(coords_[s]), basis_->slots()[s].order);
  }

  void require_same(const Wedge2Element& other) const {
    if (!same_group(group(), other.group())) {
      throw Error(ErrorKind::MismatchedGroup, group()->to_string() + " vs " + other.group()->to_string());
    }
  }

  Lambda2 basis_;
  std::vector<Integer> coords_;
};

inline Wedge2Element wedge(const GroupElement& x, const GroupElement& y) {
  if (!same_group(x.group(), y.group())) {
    throw Error(ErrorKind::MismatchedGroup, x.group()->to_string() + " vs " + y.group()->to_string());
  }
  Lambda2 basis = lambda2_basis(x.group());
  std::vector<Integer> coords(basis->size());
  for (std::size_t s = 0; s < coords.size(); ++s) {
    const auto& slot = basis->slots()[s];
    if (slot.diagonal) coords[s] = x[slot.i] * y[slot.i];
    else coords[s] = x[slot.i] * y[slot.j] - x[slot.j] * y[slot.i];
  }
  return Wedge2Element(std::move(basis), std::move(coords));
}

inline Wedge2Element w_add(const Wedge2Element& u, const Wedge2Element& v) { return u + v; }
inline Wedge2Element w_neg(const Wedge2Element& u) { return -u; }
inline Wedge2Element w_scale(const Integer& n, const Wedge2Element& u) { return n * u; }
inline bool w_is_zero(const Wedge2Element& u) { return u.is_zero(); }

/// Invariant factors of the direct-sum model above.
inline std::vector<Integer> lambda2_model_factors(const Group& group) {
  return invariant_factors(Lambda2Basis(group).slot_orders());
}

/// Invariant factors of Lambda^2 A computed from scratch: r^2 generators
/// g_ij subject to d_i g_ij = d_j g_ij = 0 and g_ij + g_ji = 0.
inline std::vector<Integer> lambda2_oracle(const GroupSpec& g) {
  constexpr std::size_t kMaxRank = 8;
  const std::size_t r = g.rank();
  if (r > kMaxRank) throw Error(ErrorKind::RankTooLarge, "rank " + std::to_string(r) + " exceeds 8");
  const std::size_t n = r * r;
  std::vector<std::vector<std::pair<std::size_t, Integer>>> relations;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (!g.factor(i).is_zero()) relations.push_back({{i * r + j, g.factor(i)}});
      if (!g.factor(j).is_zero()) relations.push_back({{i * r + j, g.factor(j)}});
      if (i < j) relations.push_back({{i * r + j, Integer(1)}, {j * r + i, Integer(1)}});
      if (i == j) relations.push_back({{i * r + i, Integer(2)}});
    }
  }
  IntMatrix m(relations.size(), n);
  for (std::size_t row = 0; row < relations.size(); ++row) {
    for (const auto& [col, v] : relations[row]) m(row, col) += v;
  }
  std::vector<Integer> out;
  std::size_t rank = 0;
  for (auto& d : smith_diagonal(m)) {
    if (d.is_zero()) continue;
    ++rank;
    if (d != 1) out.push_back(d);
  }
  out.insert(out.end(), n - rank, Integer(0));
  return out;
}

}  // namespace angled
