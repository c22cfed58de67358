#pragma once

// psi(abcd) = 4 k_ab ^ k_ac + k_ad ^ k_ad + k_bc ^ k_bc in Lambda^2 A, and
// its sum over the fundamental class, which vanishes on angled manifolds.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "angled/angles.hpp"
#include "angled/exterior.hpp"

namespace angled {

/// psi for the representative `order` of one tetrahedron's values: order[i]
/// is the stored position playing the role of the i-th vertex a, b, c, d.
inline Wedge2Element psi_for_order(const TetValues& k, const std::array<int, 4>& order) {
  auto at = [&](int x, int y) -> const GroupElement& { return k[tet_pair_index(order[x], order[y])]; };
  return Integer(4) * wedge(at(0, 1), at(0, 2)) + wedge(at(0, 3), at(0, 3)) + wedge(at(1, 2), at(1, 2));
}

inline Wedge2Element psi_tetra(const AngleStructure& s, std::size_t tet) {
  if (!tet_vertex_equations_hold(s.values(tet))) {
    throw Error(ErrorKind::PreconditionFailed, "vertex equations fail on tetrahedron #" + std::to_string(tet));
  }
  return psi_for_order(s.values(tet), {0, 1, 2, 3});
}

struct PsiReport {
  std::vector<Wedge2Element> per_tet;
  Wedge2Element total;
  bool holds;
};

/// Sum of psi over the fundamental class. Refuses non-angled input.
inline PsiReport total_invariant(const Triangulation& t, const AngleStructure& s) {
  ValidationReport edges = check_edge_equations(t, s);
  if (!edges.ok()) {
    throw Error(ErrorKind::PreconditionFailed, "edge equations fail: " + edges.issues.front().message);
  }
  PsiReport report{{}, Wedge2Element(s.group()), false};
  for (std::size_t i = 0; i < t.tet_count(); ++i) {
    report.per_tet.push_back(psi_tetra(s, i));
    report.total += report.per_tet.back();
  }
  report.holds = report.total.is_zero();
  return report;
}

/// Evaluates psi on all 24 reorderings of the tetrahedron: even ones must
/// reproduce psi, odd ones its negative.
inline bool psi_representative_check(const AngleStructure& s, std::size_t tet) {
  const TetValues& k = s.values(tet);
  const Wedge2Element psi = psi_for_order(k, {0, 1, 2, 3});
  const Wedge2Element neg = -psi;
  std::array<int, 4> order{0, 1, 2, 3};
  do {
    const Wedge2Element& expected = permutation_sign(order) > 0 ? psi : neg;
    if (!(psi_for_order(k, order) == expected)) return false;
  } while (std::next_permutation(order.begin(), order.end()));
  return true;
}

/// When 2 is invertible: psi == 4 k_ab ^ k_ac and (1/4) psi == k_ab ^ k_ac.
inline bool odd_group_specialization(const AngleStructure& s, std::size_t tet) {
  if (!s.group()->two_is_invertible()) {
    throw Error(ErrorKind::GroupHasEvenTorsion, s.group()->to_string() + " has even torsion or a free factor");
  }
  const Wedge2Element psi = psi_tetra(s, tet);
  const Wedge2Element base = wedge(s.at(tet, 0, 1), s.at(tet, 0, 2));
  if (!(psi == Integer(4) * base)) return false;
  // Multiply slot by slot with the inverse of 4 modulo the slot order.
  std::vector<Integer> quarter(psi.coords().size());
  for (std::size_t slot = 0; slot < quarter.size(); ++slot) {
    const Integer& n = psi.basis()->slots()[slot].order;  // odd
    const Integer half = (n + 1) / 2;                     // 2 * half == 1 mod n
    quarter[slot] = half * half * psi.coords()[slot];
  }
  return Wedge2Element(psi.basis(), std::move(quarter)) == base;
}

}  // namespace angled
