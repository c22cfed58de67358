#pragma once

// Finitely generated abelian groups presented as direct sums of cyclic
// factors, plus the exact integer linear algebra (Smith normal form and
// homogeneous kernels modulo each factor) that the solvers are built on.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "angled/error.hpp"

namespace angled {

using Integer = boost::multiprecision::cpp_int;

/// Representative of x in [0, d) for d > 0; x itself for d == 0.
inline Integer reduce_mod(Integer x, const Integer& d) {
  if (d.is_zero()) return x;
  x %= d;
  if (x.sign() < 0) x += d;
  return x;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs(a);
  Integer y = abs(b);
  while (!y.is_zero()) {
    Integer r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

namespace detail {

inline bool parse_digits(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  Integer value = 0;
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    value = value * 10 + (ch - '0');
  }
  out = std::move(value);
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// GroupSpec

/// A = Z/d_1 x ... x Z/d_r with d_i == 0 meaning an infinite cyclic factor.
/// The presentation is kept exactly as given; see canonicalize().
class GroupSpec {
 public:
  GroupSpec() = default;

  explicit GroupSpec(std::vector<Integer> factors) : factors_(std::move(factors)) {
    for (const auto& d : factors_) {
      if (d.sign() < 0 || d == 1) {
        throw Error(ErrorKind::ParseError,
                    "group factor must be 0 (infinite) or at least 2, got " + d.str());
      }
    }
  }

  /// Grammar: `group := term (" x " term)* | "1"`,
  /// `term := "Z" | "Z/" digits | "Z^" digits`.
  static GroupSpec parse(std::string_view text) {
    if (text == "1") return GroupSpec{};
    std::vector<Integer> factors;
    std::size_t pos = 0;
    while (true) {
      std::size_t sep = text.find(" x ", pos);
      std::string_view term = text.substr(pos, sep == std::string_view::npos ? std::string_view::npos : sep - pos);
      parse_term(term, factors);
      if (sep == std::string_view::npos) break;
      pos = sep + 3;
    }
    return GroupSpec(std::move(factors));
  }

  std::size_t rank() const { return factors_.size(); }
  const Integer& factor(std::size_t i) const { return factors_[i]; }
  const std::vector<Integer>& factors() const { return factors_; }
  bool is_trivial() const { return factors_.empty(); }

  /// True when every factor is finite of odd order, i.e. 2 is invertible.
  bool two_is_invertible() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const Integer& d) { return !d.is_zero() && bit_test(d, 0); });
  }

  /// Number of elements, or nullopt for infinite groups.
  std::optional<Integer> order() const {
    Integer n = 1;
    for (const auto& d : factors_) {
      if (d.is_zero()) return std::nullopt;
      n *= d;
    }
    return n;
  }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += " x ";
      out += factors_[i].is_zero() ? std::string("Z") : "Z/" + factors_[i].str();
    }
    return out;
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  static void parse_term(std::string_view term, std::vector<Integer>& factors) {
    if (term == "Z") {
      factors.emplace_back(0);
      return;
    }
    Integer n;
    if (term.size() > 2 && term.substr(0, 2) == "Z/" && detail::parse_digits(term.substr(2), n)) {
      factors.push_back(n);
      return;
    }
    if (term.size() > 2 && term.substr(0, 2) == "Z^" && detail::parse_digits(term.substr(2), n) &&
        n >= 1 && n <= 4096) {
      for (Integer i = 0; i < n; ++i) factors.emplace_back(0);
      return;
    }
    throw Error(ErrorKind::ParseError, "malformed group term '" + std::string(term) + "'");
  }

  std::vector<Integer> factors_;
};

/// Shared immutable handle; elements point at their group.
using Group = std::shared_ptr<const GroupSpec>;

inline Group make_group(GroupSpec spec) { return std::make_shared<const GroupSpec>(std::move(spec)); }
inline Group make_group(std::string_view text) { return make_group(GroupSpec::parse(text)); }

inline bool same_group(const Group& a, const Group& b) { return a == b || *a == *b; }

// ---------------------------------------------------------------------------
// GroupElement

class GroupElement {
 public:
  explicit GroupElement(Group group) : group_(std::move(group)), coords_(group_->rank()) {}

  GroupElement(Group group, std::vector<Integer> coords) : group_(std::move(group)), coords_(std::move(coords)) {
    if (coords_.size() != group_->rank()) {
      throw Error(ErrorKind::MismatchedGroup, "element has " + std::to_string(coords_.size()) +
                                                  " coordinates, group rank is " + std::to_string(group_->rank()));
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = reduce_mod(std::move(coords_[i]), group_->factor(i));
  }

  /// Parses `[c_1,...,c_r]`; the empty element of the trivial group is `[]`.
  static GroupElement parse(const Group& group, std::string_view text) {
    auto fail = [&] { return Error(ErrorKind::ParseError, "malformed element '" + std::string(text) + "'"); };
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') throw fail();
    std::string_view body = text.substr(1, text.size() - 2);
    std::vector<Integer> coords;
    if (!body.empty()) {
      std::size_t pos = 0;
      while (true) {
        std::size_t comma = body.find(',', pos);
        std::string_view item = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        bool negative = !item.empty() && item.front() == '-';
        Integer value;
        if (!detail::parse_digits(negative ? item.substr(1) : item, value)) throw fail();
        coords.push_back(negative ? Integer(-value) : value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
    if (coords.size() != group->rank()) throw fail();
    return GroupElement(group, std::move(coords));
  }

  const Group& group() const { return group_; }
  const std::vector<Integer>& coords() const { return coords_; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c.is_zero(); });
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) out += ",";
      out += coords_[i].str();
    }
    return out + "]";
  }

  GroupElement& operator+=(const GroupElement& other) {
    require_same(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      coords_[i] += other.coords_[i];
      const Integer& d = group_->factor(i);
      if (!d.is_zero() && coords_[i] >= d) coords_[i] -= d;
    }
    return *this;
  }

  GroupElement& operator-=(const GroupElement& other) {
    require_same(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      coords_[i] -= other.coords_[i];
      const Integer& d = group_->factor(i);
      if (!d.is_zero() && coords_[i].sign() < 0) coords_[i] += d;
    }
    return *this;
  }

  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }

  friend GroupElement operator-(const GroupElement& a) {
    GroupElement out(a.group_);
    return out -= a;
  }

  friend GroupElement operator*(const Integer& n, const GroupElement& a) {
    std::vector<Integer> coords(a.coords_.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = n * a.coords_[i];
    return GroupElement(a.group_, std::move(coords));
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return same_group(a.group_, b.group_) && a.coords_ == b.coords_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GroupElement& a) { return os << a.to_string(); }

 private:
  void require_same(const GroupElement& other) const {
    if (!same_group(group_, other.group_)) {
      throw Error(ErrorKind::MismatchedGroup, group_->to_string() + " vs " + other.group_->to_string());
    }
  }

  Group group_;
  std::vector<Integer> coords_;
};

inline GroupElement elem_add(const GroupElement& a, const GroupElement& b) { return a + b; }
inline GroupElement elem_neg(const GroupElement& a) { return -a; }
inline GroupElement elem_scale(const Integer& n, const GroupElement& a) { return n * a; }
inline bool elem_is_zero(const GroupElement& a) { return a.is_zero(); }

// ---------------------------------------------------------------------------
// IntMatrix

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product dimensions");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << "]\n";
    }
    return os;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  /// row[dst] -= q * row[src]
  void sub_row(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Integer& s = (*this)(src, j);
      if (!s.is_zero()) (*this)(dst, j) -= q * s;
    }
  }

  /// col[dst] -= q * col[src]
  void sub_col(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < rows_; ++i) {
      const Integer& s = (*this)(i, src);
      if (!s.is_zero()) (*this)(i, dst) -= q * s;
    }
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithDecomposition {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal, d_1 | d_2 | ...
  IntMatrix V;  // cols x cols, unimodular
};

namespace detail {

// Reduces `d` in place; row operations are mirrored on `u` when non-null and
// column operations on `v`. Pivots are chosen by least absolute value so
// entries stay small on the sparse 0/1 systems this library produces.
inline void smith_reduce(IntMatrix& d, IntMatrix* u, IntMatrix& v) {
  const std::size_t m = d.rows();
  const std::size_t n = d.cols();
  const std::size_t limit = std::min(m, n);

  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& q) {
    d.sub_row(dst, src, q);
    if (u) u->sub_row(dst, src, q);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& q) {
    d.sub_col(dst, src, q);
    v.sub_col(dst, src, q);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    if (u) u->swap_rows(a, b);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
  };

  for (std::size_t t = 0; t < limit; ++t) {
    // Least nonzero |entry| in the trailing block; stop early on a unit.
    std::size_t pr = m, pc = n;
    Integer best;
    for (std::size_t j = t; j < n && best != 1; ++j) {
      for (std::size_t i = t; i < m; ++i) {
        const Integer& x = d(i, j);
        if (x.is_zero()) continue;
        Integer ax = abs(x);
        if (pr == m || ax < best) {
          best = std::move(ax);
          pr = i;
          pc = j;
          if (best == 1) break;
        }
      }
    }
    if (pr == m) break;
    row_swap(t, pr);
    col_swap(t, pc);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t).is_zero()) continue;
        Integer q = d(i, t) / d(t, t);
        if (!q.is_zero()) row_op(i, t, q);
        if (!d(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j).is_zero()) continue;
        Integer q = d(t, j) / d(t, t);
        if (!q.is_zero()) col_op(j, t, q);
        if (!d(t, j).is_zero()) clean = false;
      }
      if (!clean) {
        // A remainder is now smaller than the pivot; move it into place.
        std::size_t bi = t, bj = t;
        Integer b = abs(d(t, t));
        for (std::size_t i = t + 1; i < m; ++i) {
          if (!d(i, t).is_zero() && abs(d(i, t)) < b) b = abs(d(i, t)), bi = i, bj = t;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!d(t, j).is_zero() && abs(d(t, j)) < b) b = abs(d(t, j)), bi = t, bj = j;
        }
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      // Pivot must divide the whole trailing block.
      const Integer p = abs(d(t, t));
      if (p == 1) break;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!d(i, j).is_zero() && !Integer(d(i, j) % p).is_zero()) {
            bad = i;
            break;
          }
        }
      }
      if (bad == m) break;
      row_op(t, bad, Integer(-1));
    }
    if (d(t, t).sign() < 0) {
      d.negate_row(t);
      if (u) u->negate_row(t);
    }
  }
}

}  // namespace detail

/// U * M * V == D with U, V unimodular and D in Smith normal form.
inline SmithDecomposition snf(const IntMatrix& m) {
  SmithDecomposition out{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  detail::smith_reduce(out.D, &out.U, out.V);
  return out;
}

/// Diagonal of the Smith form (length min(rows, cols)).
inline std::vector<Integer> smith_diagonal(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix v = IntMatrix::identity(m.cols());
  detail::smith_reduce(d, nullptr, v);
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) diag.push_back(d(i, i));
  return diag;
}

// ---------------------------------------------------------------------------
// Kernels

/// A kernel generator together with its additive order (0 = infinite).
struct KernelGenerator {
  std::vector<Integer> vector;
  Integer order;
};

/// Column-space data of the Smith form that every kernel computation needs.
struct KernelBasis {
  std::vector<Integer> diagonal;  // length cols; zero past the rank
  IntMatrix V;
};

inline KernelBasis kernel_basis(const IntMatrix& m) {
  IntMatrix d = m;
  KernelBasis out{{}, IntMatrix::identity(m.cols())};
  detail::smith_reduce(d, nullptr, out.V);
  out.diagonal.assign(m.cols(), Integer(0));
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) out.diagonal[i] = d(i, i);
  return out;
}

/// Generators of {x mod d : M x == 0 mod d}, each with its order. The
/// generators are independent: the solution group is their direct sum.
inline std::vector<KernelGenerator> kernel_mod_with_orders(const KernelBasis& basis, const Integer& d) {
  std::vector<KernelGenerator> gens;
  const std::size_t n = basis.V.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& di = basis.diagonal[i];
    Integer step, order;
    if (d.is_zero()) {
      if (!di.is_zero()) continue;
      step = 1;
      order = 0;
    } else {
      order = gcd(di, d);
      if (order == 1) continue;
      step = d / order;
    }
    std::vector<Integer> vec(n);
    for (std::size_t r = 0; r < n; ++r) vec[r] = reduce_mod(step * basis.V(r, i), d);
    gens.push_back({std::move(vec), std::move(order)});
  }
  return gens;
}

inline std::vector<std::vector<Integer>> kernel_mod(const IntMatrix& m, const Integer& d) {
  if (d == 1 || d.sign() < 0) throw Error(ErrorKind::PreconditionFailed, "modulus must be 0 or at least 2");
  std::vector<std::vector<Integer>> out;
  for (auto& g : kernel_mod_with_orders(kernel_basis(m), d)) out.push_back(std::move(g.vector));
  return out;
}

/// All solutions of M x = 0 with x in A^cols, as per-factor generator lists.
class SolutionSpace {
 public:
  SolutionSpace(Group group, std::size_t cols, std::vector<std::vector<KernelGenerator>> per_factor)
      : group_(std::move(group)), cols_(cols), per_factor_(std::move(per_factor)) {
    for (std::size_t f = 0; f < per_factor_.size(); ++f) {
      for (std::size_t k = 0; k < per_factor_[f].size(); ++k) index_.emplace_back(f, k);
    }
  }

  const Group& group() const { return group_; }
  std::size_t cols() const { return cols_; }
  const std::vector<KernelGenerator>& factor_generators(std::size_t f) const { return per_factor_[f]; }

  /// Generators across all factors, flattened factor by factor.
  std::size_t generator_count() const { return index_.size(); }
  std::size_t generator_factor(std::size_t k) const { return index_[k].first; }
  const Integer& generator_order(std::size_t k) const { return per_factor_[index_[k].first][index_[k].second].order; }

  /// Number of solutions, or nullopt when the space is infinite.
  std::optional<Integer> size() const {
    Integer total = 1;
    for (std::size_t k = 0; k < generator_count(); ++k) {
      if (generator_order(k).is_zero()) return std::nullopt;
      total *= generator_order(k);
    }
    return total;
  }

  /// Generator k embedded in A^cols (zero in every other factor).
  std::vector<GroupElement> generator(std::size_t k) const {
    std::vector<Integer> coeffs(generator_count());
    coeffs[k] = 1;
    return assemble(coeffs);
  }

  /// The solution sum_k coeffs[k] * generator(k).
  std::vector<GroupElement> assemble(const std::vector<Integer>& coeffs) const {
    if (coeffs.size() != generator_count()) throw Error(ErrorKind::ShapeMismatch, "coefficient count");
    const std::size_t r = group_->rank();
    std::vector<std::vector<Integer>> coords(cols_, std::vector<Integer>(r));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      const auto [f, idx] = index_[k];
      const auto& vec = per_factor_[f][idx].vector;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!vec[c].is_zero()) coords[c][f] += coeffs[k] * vec[c];
      }
    }
    std::vector<GroupElement> out;
    out.reserve(cols_);
    for (auto& c : coords) out.emplace_back(group_, std::move(c));
    return out;
  }

 private:
  Group group_;
  std::size_t cols_;
  std::vector<std::vector<KernelGenerator>> per_factor_;
  std::vector<std::pair<std::size_t, std::size_t>> index_;
};

inline SolutionSpace solve_homogeneous(const IntMatrix& m, const Group& group) {
  std::vector<std::vector<KernelGenerator>> per_factor;
  if (group->rank() > 0) {
    const KernelBasis basis = kernel_basis(m);
    for (const auto& d : group->factors()) per_factor.push_back(kernel_mod_with_orders(basis, d));
  }
  return SolutionSpace(group, m.cols(), std::move(per_factor));
}

/// M x evaluated in A^rows.
inline std::vector<GroupElement> apply(const IntMatrix& m, const std::vector<GroupElement>& x, const Group& group) {
  if (x.size() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "vector length");
  std::vector<GroupElement> out;
  out.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    GroupElement acc(group);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) acc += m(i, j) * x[j];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// Invariant-factor form: torsion factors d_1 | d_2 | ... followed by the
/// free rank as zeros.
inline std::vector<Integer> invariant_factors(const std::vector<Integer>& diagonal_orders) {
  const std::size_t r = diagonal_orders.size();
  IntMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = diagonal_orders[i];
  std::vector<Integer> out;
  std::size_t zeros = 0;
  for (auto& d : smith_diagonal(m)) {
    if (d.is_zero()) ++zeros;
    else if (d != 1) out.push_back(d);
  }
  out.insert(out.end(), zeros, Integer(0));
  return out;
}

inline GroupSpec canonicalize(const GroupSpec& g) { return GroupSpec(invariant_factors(g.factors())); }

}  // namespace angled
