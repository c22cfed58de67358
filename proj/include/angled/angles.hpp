#pragma once

// Angle structures: six group elements per tetrahedron, one per unordered
// edge, with the three values at every vertex summing to zero. The manifold
// is angled when the values around every edge also sum to zero.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "angled/abelian.hpp"
#include "angled/complex.hpp"
#include "angled/report.hpp"
#include "angled/rng.hpp"

namespace angled {

using TetValues = std::array<GroupElement, 6>;

/// Values indexed by tetrahedron and by position pair (see kTetPairs), so
/// k_{xy} == k_{yx} holds by construction.
class AngleStructure {
 public:
  AngleStructure(Group group, std::size_t tet_count) : group_(std::move(group)) {
    values_.reserve(tet_count);
    for (std::size_t i = 0; i < tet_count; ++i) values_.push_back(zero_values());
  }

  AngleStructure(Group group, std::vector<TetValues> values) : group_(std::move(group)), values_(std::move(values)) {
    for (const auto& tv : values_) {
      for (const auto& v : tv) {
        if (!same_group(v.group(), group_)) throw Error(ErrorKind::MismatchedGroup, "angle value in another group");
      }
    }
  }

  /// From a solution vector whose column 6*i + k holds pair k of tet i.
  static AngleStructure from_columns(Group group, const std::vector<GroupElement>& columns) {
    if (columns.size() % 6) throw Error(ErrorKind::ShapeMismatch, "column count is not a multiple of 6");
    std::vector<TetValues> values;
    for (std::size_t i = 0; i < columns.size(); i += 6) {
      values.push_back({columns[i], columns[i + 1], columns[i + 2], columns[i + 3], columns[i + 4], columns[i + 5]});
    }
    return AngleStructure(std::move(group), std::move(values));
  }

  const Group& group() const { return group_; }
  std::size_t tet_count() const { return values_.size(); }
  const TetValues& values(std::size_t tet) const { return values_[tet]; }
  const GroupElement& value(std::size_t tet, int pair) const { return values_[tet][pair]; }
  /// Value on the edge joining positions p and q of tetrahedron `tet`.
  const GroupElement& at(std::size_t tet, int p, int q) const { return values_[tet][tet_pair_index(p, q)]; }

  /// Copy with `delta` added to one value.
  AngleStructure perturbed(std::size_t tet, int pair, const GroupElement& delta) const {
    AngleStructure out = *this;
    out.values_[tet][pair] += delta;
    return out;
  }

  friend AngleStructure operator+(const AngleStructure& a, const AngleStructure& b) {
    if (a.tet_count() != b.tet_count()) throw Error(ErrorKind::ShapeMismatch, "tetrahedron counts differ");
    AngleStructure out = a;
    for (std::size_t i = 0; i < a.tet_count(); ++i) {
      for (int k = 0; k < 6; ++k) out.values_[i][k] += b.values_[i][k];
    }
    return out;
  }

  friend bool operator==(const AngleStructure& a, const AngleStructure& b) {
    return same_group(a.group_, b.group_) && a.values_ == b.values_;
  }

 private:
  TetValues zero_values() const {
    GroupElement z(group_);
    return {z, z, z, z, z, z};
  }

  Group group_;
  std::vector<TetValues> values_;
};

/// k on the edge {x, y} of tetrahedron `tet` (labels resolved through t).
inline const GroupElement& angle_value(const Triangulation& t, const AngleStructure& s, std::size_t tet, VertexId x,
                                       VertexId y) {
  int p = t.position(tet, x), q = t.position(tet, y);
  if (p < 0 || q < 0 || p == q) throw Error(ErrorKind::NoSuchEdge, "edge not in tetrahedron");
  return s.at(tet, p, q);
}

inline void require_shape(const Triangulation& t, const AngleStructure& s) {
  if (s.tet_count() != t.tet_count()) {
    throw Error(ErrorKind::ShapeMismatch, "structure has " + std::to_string(s.tet_count()) +
                                              " tetrahedra, triangulation has " + std::to_string(t.tet_count()));
  }
}

/// True when the four vertex sums of one tetrahedron vanish.
inline bool tet_vertex_equations_hold(const TetValues& k) {
  for (int p = 0; p < 4; ++p) {
    GroupElement sum(k[0].group());
    for (int q = 0; q < 4; ++q) {
      if (q != p) sum += k[tet_pair_index(p, q)];
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

namespace detail {

inline ValidationReport vertex_report(const AngleStructure& s, const Triangulation* t) {
  ValidationReport report;
  auto vertex_name = [&](std::size_t i, int p) {
    return t ? t->tet_labels(i)[p] : "position " + std::to_string(p);
  };
  for (std::size_t i = 0; i < s.tet_count(); ++i) {
    bool all_hold = true;
    for (int p = 0; p < 4; ++p) {
      GroupElement sum(s.group());
      for (int q = 0; q < 4; ++q) {
        if (q != p) sum += s.at(i, p, q);
      }
      if (!sum.is_zero()) {
        all_hold = false;
        report.add("VertexEquation", "tetrahedron #" + std::to_string(i) + " at vertex " + vertex_name(i, p) +
                                         ": sum = " + sum.to_string());
      }
    }
    if (!all_hold) continue;
    // 2(k_ab - k_cd) = 2(k_ac - k_bd) = 2(k_ad - k_bc) = 0 must follow.
    for (const auto& [x, y] : {std::pair{0, 5}, std::pair{1, 4}, std::pair{2, 3}}) {
      GroupElement twice = Integer(2) * (s.value(i, x) - s.value(i, y));
      if (!twice.is_zero()) {
        report.add("DerivedRelation", "tetrahedron #" + std::to_string(i) + ": 2(k - k_opposite) = " + twice.to_string());
      }
    }
  }
  return report;
}

}  // namespace detail

inline ValidationReport check_vertex_equations(const AngleStructure& s) { return detail::vertex_report(s, nullptr); }

inline ValidationReport check_vertex_equations(const Triangulation& t, const AngleStructure& s) {
  require_shape(t, s);
  return detail::vertex_report(s, &t);
}

/// Sum of k around every edge, no preconditions on the structure.
inline std::vector<GroupElement> edge_sums(const Triangulation& t, const AngleStructure& s) {
  require_shape(t, s);
  std::vector<GroupElement> sums;
  sums.reserve(t.edges().size());
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    const auto [u, v] = t.edges()[e];
    GroupElement sum(s.group());
    for (std::size_t i : t.edge_tets(e)) sum += angle_value(t, s, i, u, v);
    sums.push_back(std::move(sum));
  }
  return sums;
}

/// Edge equations only; reports every edge whose sum is nonzero.
inline ValidationReport edge_equation_report(const Triangulation& t, const AngleStructure& s) {
  ValidationReport report;
  const auto sums = edge_sums(t, s);
  for (std::size_t e = 0; e < sums.size(); ++e) {
    if (sums[e].is_zero()) continue;
    const auto [u, v] = t.edges()[e];
    report.add("EdgeEquation", "edge " + t.describe_edge(u, v) + ": sum = " + sums[e].to_string());
  }
  return report;
}

/// Empty report iff the manifold is angled. Requires a valid triangulation
/// and a structure satisfying the vertex equations.
inline ValidationReport check_edge_equations(const Triangulation& t, const AngleStructure& s) {
  require_shape(t, s);
  require_valid(t);
  ValidationReport vertex = check_vertex_equations(t, s);
  if (!vertex.ok()) {
    throw Error(ErrorKind::PreconditionFailed, "vertex equations fail: " + vertex.issues.front().message);
  }
  return edge_equation_report(t, s);
}

struct ColumnLegend {
  std::size_t tet;
  Label x;
  Label y;
};

struct ConstraintSystem {
  IntMatrix matrix;
  std::vector<ColumnLegend> legend;
  std::size_t vertex_rows = 0;
  std::size_t edge_rows = 0;
};

/// Rows: 4 vertex equations per tetrahedron, then one equation per edge.
/// Column 6*i + k is pair k of tetrahedron i.
inline ConstraintSystem build_constraint_matrix(const Triangulation& t) {
  require_valid(t);
  ConstraintSystem sys;
  const std::size_t cols = 6 * t.tet_count();
  sys.vertex_rows = 4 * t.tet_count();
  sys.edge_rows = t.edges().size();
  sys.matrix = IntMatrix(sys.vertex_rows + sys.edge_rows, cols);
  for (std::size_t i = 0; i < t.tet_count(); ++i) {
    for (int k = 0; k < 6; ++k) {
      const auto& pr = kTetPairs[k];
      sys.legend.push_back({i, t.tet_labels(i)[pr[0]], t.tet_labels(i)[pr[1]]});
    }
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        if (q != p) sys.matrix(4 * i + p, 6 * i + tet_pair_index(p, q)) = 1;
      }
    }
  }
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    const auto [u, v] = t.edges()[e];
    for (std::size_t i : t.edge_tets(e)) {
      sys.matrix(sys.vertex_rows + e, 6 * i + tet_pair_index(t.position(i, u), t.position(i, v))) = 1;
    }
  }
  return sys;
}

/// Every angled structure on t with values in g.
inline SolutionSpace solve(const Triangulation& t, const Group& g) {
  return solve_homogeneous(build_constraint_matrix(t).matrix, g);
}

inline AngleStructure structure_from_coefficients(const SolutionSpace& space, const std::vector<Integer>& coeffs) {
  return AngleStructure::from_columns(space.group(), space.assemble(coeffs));
}

inline AngleStructure generator_structure(const SolutionSpace& space, std::size_t k) {
  return AngleStructure::from_columns(space.group(), space.generator(k));
}

/// Random element of the solution space: generator k of factor i gets a
/// coefficient uniform in [0, 2 * max(d_i, 7)].
inline AngleStructure random_angled(const SolutionSpace& space, Rng& rng) {
  std::vector<Integer> coeffs(space.generator_count());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Integer& d = space.group()->factor(space.generator_factor(k));
    coeffs[k] = rng.up_to(2 * (d > 7 ? d : Integer(7)));
  }
  return structure_from_coefficients(space, coeffs);
}

inline AngleStructure random_angled(const Triangulation& t, const Group& g, std::uint64_t seed) {
  Rng rng(seed);
  return random_angled(solve(t, g), rng);
}

}  // namespace angled
