#pragma once

// Step-by-step replay of the vanishing argument for sum(psi):
//
//   1. integrate k around every edge star to get h_ab^c with
//      k_ab^cd = h_ab^d - h_ab^c;
//   2. per vertex a, integrate m_a over the link's spanning tree to get
//      q_ab, and shift h_ab^c by q_ab so that h_ab^c = h_ac^b;
//   3. read off the edge defect q_ab = h_ab^c + h_ba^c;
//   4. build phi_abc from h, split it as phi0 + phi1, and check that the
//      alternating face sum of phi over each tetrahedron is psi;
//   5. check that the face sums cancel pairwise across the manifold.
//
// Every identity is checked exactly and counted in a TraceReport.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "angled/angles.hpp"
#include "angled/exterior.hpp"
#include "angled/invariant.hpp"

namespace angled {

namespace detail {

inline std::uint64_t pack(VertexId a, VertexId b, VertexId c = 0) {
  return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) | static_cast<std::uint64_t>(c);
}

}  // namespace detail

/// h_ab^c for every oriented edge (a, b) and triangle abc.
class HFamily {
 public:
  explicit HFamily(Group group) : group_(std::move(group)) {}

  const Group& group() const { return group_; }

  const GroupElement& at(VertexId a, VertexId b, VertexId c) const {
    auto it = values_.find(detail::pack(a, b, c));
    if (it == values_.end()) throw Error(ErrorKind::NotInLink, "h is not defined on this edge/triangle pair");
    return it->second;
  }

  bool contains(VertexId a, VertexId b, VertexId c) const { return values_.count(detail::pack(a, b, c)) != 0; }

  void set(VertexId a, VertexId b, VertexId c, GroupElement value) {
    values_.insert_or_assign(detail::pack(a, b, c), std::move(value));
  }

  std::size_t size() const { return values_.size(); }

 private:
  Group group_;
  std::unordered_map<std::uint64_t, GroupElement> values_;
};

/// q_ab built in the star of each vertex a.
class QVertexFamily {
 public:
  explicit QVertexFamily(Group group) : group_(std::move(group)) {}

  const GroupElement& at(VertexId a, VertexId b) const {
    auto it = values_.find(detail::pack(a, b));
    if (it == values_.end()) throw Error(ErrorKind::NotInLink, "q is not defined on this pair");
    return it->second;
  }

  void set(VertexId a, VertexId b, GroupElement value) { values_.insert_or_assign(detail::pack(a, b), std::move(value)); }

 private:
  Group group_;
  std::unordered_map<std::uint64_t, GroupElement> values_;
};

/// q_ab = h_ab^c + h_ba^c per unordered edge, indexed like t.edges().
class QEdgeFamily {
 public:
  QEdgeFamily(const Triangulation& t, std::vector<GroupElement> values) : t_(&t), values_(std::move(values)) {}

  const GroupElement& at(VertexId a, VertexId b) const {
    auto e = t_->edge_index(a, b);
    if (!e) throw Error(ErrorKind::NoSuchEdge, "q requested on a missing edge");
    return values_[*e];
  }

  const std::vector<GroupElement>& values() const { return values_; }

 private:
  const Triangulation* t_;
  std::vector<GroupElement> values_;
};

namespace detail {

/// Base-point choice: seed 0 picks index 0, i.e. the least label.
inline std::size_t gauge_index(std::uint64_t seed, std::uint64_t key, std::size_t n) {
  if (seed == 0) return 0;
  return static_cast<std::size_t>(mix_seed(seed ^ mix_seed(key)) % n);
}

}  // namespace detail

/// Integrates k around each oriented edge star from a zero base value.
inline HFamily build_h_raw(const Triangulation& t, const AngleStructure& s, std::uint64_t seed = 0) {
  require_shape(t, s);
  HFamily h(s.group());
  for (const auto& [u, v] : t.edges()) {
    for (const auto& [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
      const std::size_t n = t.edge_tets(*t.edge_index(a, b)).size();
      EdgeStar star = edge_star(t, a, b, detail::gauge_index(seed, detail::pack(a, b), n));
      GroupElement running(s.group());
      h.set(a, b, star.opposite[0], running);
      for (std::size_t i = 0; i < n; ++i) {
        running += angle_value(t, s, star.tets[i], a, b);
        VertexId next = star.opposite[(i + 1) % n];
        if (i + 1 < n) {
          h.set(a, b, next, running);
        } else if (!(running == h.at(a, b, next))) {
          throw Error(ErrorKind::NotAngled, "walk around edge " + t.describe_edge(a, b) + " does not close (defect " +
                                                (running - h.at(a, b, next)).to_string() + ")");
        }
      }
    }
  }
  return h;
}

/// One triangle step of m_a: h_{a x}^{y} - h_{a y}^{x}.
inline GroupElement m_step(const HFamily& h, VertexId a, VertexId x, VertexId y) { return h.at(a, x, y) - h.at(a, y, x); }

/// m_a(b, b') along the spanning-tree path of `link`.
inline GroupElement m_value(const HFamily& h, const VertexLink& link, VertexId b, VertexId b2) {
  if (!link.contains(b) || !link.contains(b2)) throw Error(ErrorKind::NotInLink, "vertex not in the link");
  const auto path = link.tree_path(b, b2);
  GroupElement sum(h.group());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) sum += m_step(h, link.vertex, path[i], path[i + 1]);
  return sum;
}

inline GroupElement m_value(const Triangulation& t, const HFamily& h, VertexId a, VertexId b, VertexId b2) {
  return m_value(h, vertex_link(t, a), b, b2);
}

struct SymmetrizedH {
  HFamily h;
  QVertexFamily q;
};

/// Shifts h_ab^c by q_ab = m_a(root, b) so that h_ab^c = h_ac^b.
inline SymmetrizedH symmetrize(const Triangulation& t, const HFamily& h_raw, std::uint64_t seed = 0) {
  SymmetrizedH out{HFamily(h_raw.group()), QVertexFamily(h_raw.group())};
  for (std::size_t ai = 0; ai < t.vertex_count(); ++ai) {
    const VertexId a = static_cast<VertexId>(ai);
    VertexLink probe = vertex_link(t, a);
    VertexId root = probe.nodes[detail::gauge_index(seed, detail::pack(a, a, a), probe.nodes.size())];
    VertexLink link = root == probe.root ? std::move(probe) : vertex_link(t, a, root);
    std::map<VertexId, GroupElement> q;
    for (VertexId b : link.nodes) q.emplace(b, m_value(h_raw, link, link.root, b));
    for (const auto& [x, y] : link.non_tree_arcs) {
      if (!(m_step(h_raw, a, x, y) == q.at(y) - q.at(x))) {
        throw Error(ErrorKind::PathInconsistency, "m_" + t.label(a) + " depends on the path between " + t.label(x) +
                                                      " and " + t.label(y));
      }
    }
    for (const auto& [b, value] : q) out.q.set(a, b, value);
    for (const auto& [x, y] : link.arcs) {
      out.h.set(a, x, y, h_raw.at(a, x, y) + q.at(x));
      out.h.set(a, y, x, h_raw.at(a, y, x) + q.at(y));
    }
  }
  for (const auto& f : t.triangles()) {
    for (int r = 0; r < 3; ++r) {
      VertexId a = f[r], b = f[(r + 1) % 3], c = f[(r + 2) % 3];
      if (!(out.h.at(a, b, c) == out.h.at(a, c, b))) {
        throw Error(ErrorKind::PathInconsistency, "symmetrization failed at vertex " + t.label(a));
      }
    }
  }
  return out;
}

/// q_ab = h_ab^c + h_ba^c; checks it is the same for every triangle abc and
/// that q_ab + q_ac - q_bc = 2 h_ab^c.
inline QEdgeFamily edge_q(const Triangulation& t, const HFamily& h) {
  std::vector<std::optional<GroupElement>> q(t.edges().size());
  for (const auto& f : t.triangles()) {
    for (int r = 0; r < 3; ++r) {
      VertexId a = f[r], b = f[(r + 1) % 3], c = f[(r + 2) % 3];
      if (a > b) std::swap(a, b);
      GroupElement value = h.at(a, b, c) + h.at(b, a, c);
      auto& slot = q[*t.edge_index(a, b)];
      if (!slot) slot = std::move(value);
      else if (!(*slot == value)) {
        throw Error(ErrorKind::NotConstantOverTriangles,
                    "h_ab^c + h_ba^c on edge " + t.describe_edge(a, b) + " changes with the triangle");
      }
    }
  }
  std::vector<GroupElement> values;
  for (auto& v : q) values.push_back(v ? std::move(*v) : GroupElement(h.group()));
  QEdgeFamily out(t, std::move(values));
  for (const auto& f : t.triangles()) {
    for (int r = 0; r < 3; ++r) {
      VertexId a = f[r], b = f[(r + 1) % 3], c = f[(r + 2) % 3];
      if (!(out.at(a, b) + out.at(a, c) - out.at(b, c) == Integer(2) * h.at(a, b, c))) {
        throw Error(ErrorKind::NotConstantOverTriangles, "q_ab + q_ac - q_bc != 2 h_ab^c at vertex " + t.label(a));
      }
    }
  }
  return out;
}

/// phi_abc = h_ab^c ^ h_bc^a + h_bc^a ^ h_ca^b + h_ca^b ^ h_ab^c
inline Wedge2Element phi(const HFamily& h, VertexId a, VertexId b, VertexId c) {
  const GroupElement& x = h.at(a, b, c);
  const GroupElement& y = h.at(b, c, a);
  const GroupElement& z = h.at(c, a, b);
  return wedge(x, y) + wedge(y, z) + wedge(z, x);
}

/// phi0_abc = q_ac ^ q_ab + q_ab ^ q_bc + q_bc ^ q_ac
inline Wedge2Element phi0(const QEdgeFamily& q, VertexId a, VertexId b, VertexId c) {
  const GroupElement& ab = q.at(a, b);
  const GroupElement& ac = q.at(a, c);
  const GroupElement& bc = q.at(b, c);
  return wedge(ac, ab) + wedge(ab, bc) + wedge(bc, ac);
}

/// phi1_abc = q_bc ^ q_bc + h_ab^c ^ h_ab^c
inline Wedge2Element phi1(const QEdgeFamily& q, const HFamily& h, VertexId a, VertexId b, VertexId c) {
  const GroupElement& bc = q.at(b, c);
  const GroupElement& x = h.at(a, b, c);
  return wedge(bc, bc) + wedge(x, x);
}

/// Faces of the stored tetrahedron (a,b,c,d) with the signs of the
/// alternating sum: +bcd, -acd, +abd, -abc.
inline std::array<std::pair<int, std::array<VertexId, 3>>, 4> signed_faces(const Tet& tet) {
  const auto [a, b, c, d] = tet;
  return {{{+1, {b, c, d}}, {-1, {a, c, d}}, {+1, {a, b, d}}, {-1, {a, b, c}}}};
}

/// phi_bcd - phi_acd + phi_abd - phi_abc for the stored order (a,b,c,d).
inline Wedge2Element psi_via_faces(const Triangulation& t, const HFamily& h, std::size_t tet) {
  Wedge2Element sum(h.group());
  for (const auto& [sign, f] : signed_faces(t.tet(tet))) {
    Wedge2Element term = phi(h, f[0], f[1], f[2]);
    if (sign > 0) sum += term;
    else sum -= term;
  }
  return sum;
}

/// The same alternating sum built from phi0 + phi1.
inline Wedge2Element psi_via_split_faces(const Triangulation& t, const HFamily& h, const QEdgeFamily& q, std::size_t tet) {
  Wedge2Element sum(h.group());
  for (const auto& [sign, f] : signed_faces(t.tet(tet))) {
    Wedge2Element term = phi0(q, f[0], f[1], f[2]) + phi1(q, h, f[0], f[1], f[2]);
    if (sign > 0) sum += term;
    else sum -= term;
  }
  return sum;
}

/// phi on each oriented face occurrence: a negative face (x,y,z) is stored
/// as its reversal (x,z,y).
using PhiTable = std::map<std::array<VertexId, 3>, Wedge2Element>;

inline std::vector<std::array<VertexId, 3>> face_occurrences(const Triangulation& t) {
  std::vector<std::array<VertexId, 3>> out;
  for (const Tet& tet : t.tets()) {
    for (const auto& [sign, f] : signed_faces(tet)) {
      out.push_back(sign > 0 ? f : std::array<VertexId, 3>{f[0], f[2], f[1]});
    }
  }
  return out;
}

inline PhiTable phi_table(const Triangulation& t, const HFamily& h) {
  PhiTable table;
  for (const auto& f : face_occurrences(t)) table.emplace(f, phi(h, f[0], f[1], f[2]));
  return table;
}

struct TelescopeResult {
  bool ok = false;
  std::size_t pairs = 0;
  std::string failure;  // names the unmatched face
};

/// Pairs every oriented face occurrence with its reversal and checks the
/// two phi values cancel, then that the whole sum vanishes.
inline TelescopeResult telescope_pairing(const Triangulation& t, const PhiTable& table) {
  TelescopeResult result;
  std::map<std::array<VertexId, 3>, std::vector<std::array<VertexId, 3>>> by_triangle;
  for (const auto& f : face_occurrences(t)) {
    auto key = f;
    std::sort(key.begin(), key.end());
    by_triangle[key].push_back(f);
  }
  auto name = [&](const std::array<VertexId, 3>& f) {
    return "(" + t.label(f[0]) + "," + t.label(f[1]) + "," + t.label(f[2]) + ")";
  };
  auto lookup = [&](const std::array<VertexId, 3>& f) -> const Wedge2Element* {
    auto it = table.find(f);
    return it == table.end() ? nullptr : &it->second;
  };
  std::optional<Wedge2Element> total;
  for (const auto& [key, occ] : by_triangle) {
    if (occ.size() != 2 || permutation_sign(occ[0]) == permutation_sign(occ[1])) {
      result.failure = "face " + name(key) + " has no oppositely oriented partner";
      return result;
    }
    const Wedge2Element* x = lookup(occ[0]);
    const Wedge2Element* y = lookup(occ[1]);
    if (!x || !y) {
      result.failure = "face " + name(x ? occ[1] : occ[0]) + " missing from the phi table";
      return result;
    }
    if (!(*x + *y).is_zero()) {
      result.failure = "face " + name(occ[0]) + " does not cancel against " + name(occ[1]);
      return result;
    }
    total = total ? *total + *x + *y : *x + *y;
    ++result.pairs;
  }
  if (total && !total->is_zero()) {
    result.failure = "face sum is " + total->to_string();
    return result;
  }
  result.ok = true;
  return result;
}

/// Sum of psi_via_faces over the fundamental class is zero, witnessed by
/// pairwise cancellation of opposite faces.
inline TelescopeResult telescope_check(const Triangulation& t, const HFamily& h) {
  TelescopeResult result = telescope_pairing(t, phi_table(t, h));
  if (!result.ok) return result;
  Wedge2Element sum(h.group());
  for (std::size_t i = 0; i < t.tet_count(); ++i) sum += psi_via_faces(t, h, i);
  if (!sum.is_zero()) {
    result.ok = false;
    result.failure = "sum of psi_via_faces is " + sum.to_string();
  }
  return result;
}

/// Symmetric h-families built with two gauge seeds differ by p_a only.
inline bool h_ambiguity_check(const Triangulation& t, const AngleStructure& s, std::uint64_t seed1, std::uint64_t seed2) {
  const HFamily h1 = symmetrize(t, build_h_raw(t, s, seed1), seed1).h;
  const HFamily h2 = symmetrize(t, build_h_raw(t, s, seed2), seed2).h;
  for (std::size_t ai = 0; ai < t.vertex_count(); ++ai) {
    const VertexId a = static_cast<VertexId>(ai);
    std::optional<GroupElement> p;
    for (const auto& [x, y] : vertex_link(t, a).arcs) {
      for (const auto& [b, c] : {std::pair{x, y}, std::pair{y, x}}) {
        GroupElement diff = h2.at(a, b, c) - h1.at(a, b, c);
        if (!p) p = std::move(diff);
        else if (!(*p == diff)) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Full replay

struct TraceLine {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string detail;  // first failure

  bool ok() const { return failed == 0; }
};

struct TraceReport {
  std::vector<TraceLine> lines;

  bool ok() const {
    return std::all_of(lines.begin(), lines.end(), [](const TraceLine& l) { return l.ok(); });
  }

  friend std::ostream& operator<<(std::ostream& os, const TraceReport& r) {
    for (const auto& l : r.lines) {
      os << (l.ok() ? "PASS " : "FAIL ") << l.name << ": " << (l.checked - l.failed) << "/" << l.checked;
      if (!l.ok()) os << "  [" << l.detail << "]";
      os << "\n";
    }
    return os << (r.ok() ? "TRACE: OK" : "TRACE: FAILED") << "\n";
  }
};

struct TraceOptions {
  std::uint64_t gauge_seed = 0;
  std::uint64_t alt_seeds[2] = {1, 2};
};

namespace detail {

class LineRecorder {
 public:
  explicit LineRecorder(std::string name) { line_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++line_.checked;
    if (!ok && line_.failed++ == 0) line_.detail = describe();
  }

  void fail(std::string detail) {
    ++line_.checked;
    if (line_.failed++ == 0) line_.detail = std::move(detail);
  }

  TraceLine take() { return std::move(line_); }

 private:
  TraceLine line_;
};

// h_ab^d - h_ab^c == k_ab^cd on all 12 even representatives of each tet.
inline TraceLine difference_line(const std::string& name, const Triangulation& t, const AngleStructure& s,
                                 const HFamily& h) {
  LineRecorder rec(name);
  for (std::size_t i = 0; i < t.tet_count(); ++i) {
    std::array<int, 4> order{0, 1, 2, 3};
    do {
      if (permutation_sign(order) < 0) continue;
      const Tet& tet = t.tet(i);
      VertexId a = tet[order[0]], b = tet[order[1]], c = tet[order[2]], d = tet[order[3]];
      rec.check(h.at(a, b, d) - h.at(a, b, c) == s.at(i, order[0], order[1]), [&] {
        return "tetrahedron #" + std::to_string(i) + " edge " + t.describe_edge(a, b);
      });
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return rec.take();
}

}  // namespace detail

/// Replays the whole argument on an angled structure. Throws
/// PreconditionFailed if t is invalid or s is not angled.
inline TraceReport run_trace(const Triangulation& t, const AngleStructure& s, const TraceOptions& options = {}) {
  const ValidationReport edges = check_edge_equations(t, s);
  if (!edges.ok()) throw Error(ErrorKind::PreconditionFailed, "edge equations fail: " + edges.issues.front().message);

  TraceReport report;
  auto abort_with = [&](const std::string& stage, const Error& err) {
    report.lines.push_back({stage, 1, 1, err.what()});
    return report;
  };

  std::optional<HFamily> h_raw;
  try {
    h_raw = build_h_raw(t, s, options.gauge_seed);
  } catch (const Error& err) {
    return abort_with("h construction", err);
  }
  report.lines.push_back(detail::difference_line("difference property (raw h)", t, s, *h_raw));

  {
    detail::LineRecorder rec("path independence of m_a (non-tree link arcs)");
    for (std::size_t ai = 0; ai < t.vertex_count(); ++ai) {
      const VertexId a = static_cast<VertexId>(ai);
      const VertexLink link = vertex_link(t, a);
      for (const auto& [x, y] : link.non_tree_arcs) {
        // The triangle step x -> y against the tree path x ~> y.
        rec.check(m_step(*h_raw, a, x, y) == m_value(*h_raw, link, x, y), [&] {
          return "vertex " + t.label(a) + " arc " + t.describe_edge(x, y);
        });
      }
      // The proof's generator: the 3-cycle around each tetrahedron at a.
      for (std::size_t i : t.vertex_tets(a)) {
        const int pa = t.position(i, a);
        std::array<VertexId, 3> rest{};
        for (int p = 0, k = 0; p < 4; ++p) {
          if (p != pa) rest[k++] = t.tet(i)[p];
        }
        GroupElement cycle = m_step(*h_raw, a, rest[0], rest[1]) + m_step(*h_raw, a, rest[1], rest[2]) +
                             m_step(*h_raw, a, rest[2], rest[0]);
        rec.check(cycle.is_zero(), [&] { return "tetrahedron #" + std::to_string(i) + " at vertex " + t.label(a); });
      }
    }
    report.lines.push_back(rec.take());
  }

  std::optional<SymmetrizedH> sym;
  try {
    sym = symmetrize(t, *h_raw, options.gauge_seed);
  } catch (const Error& err) {
    return abort_with("symmetrization", err);
  }
  const HFamily& h = sym->h;

  {
    detail::LineRecorder rec("m_a(b,b') = q_ab' - q_ab");
    for (std::size_t ai = 0; ai < t.vertex_count(); ++ai) {
      const VertexId a = static_cast<VertexId>(ai);
      const VertexLink link = vertex_link(t, a);
      for (const auto& [x, y] : link.arcs) {
        rec.check(m_value(*h_raw, link, x, y) == sym->q.at(a, y) - sym->q.at(a, x),
                  [&] { return "vertex " + t.label(a) + " pair " + t.describe_edge(x, y); });
      }
    }
    report.lines.push_back(rec.take());
  }
  {
    detail::LineRecorder rec("symmetry h_ab^c = h_ac^b");
    for (const auto& f : t.triangles()) {
      for (int r = 0; r < 3; ++r) {
        VertexId a = f[r], b = f[(r + 1) % 3], c = f[(r + 2) % 3];
        rec.check(h.at(a, b, c) == h.at(a, c, b), [&] { return "vertex " + t.label(a) + " triangle"; });
      }
    }
    report.lines.push_back(rec.take());
  }
  report.lines.push_back(detail::difference_line("difference property (symmetric h)", t, s, h));

  std::optional<QEdgeFamily> q;
  {
    detail::LineRecorder rec("edge defect q_ab = h_ab^c + h_ba^c constant; 2h identity");
    try {
      q = edge_q(t, h);
      for (std::size_t k = 0; k < 3 * t.triangles().size() + t.edges().size(); ++k) rec.check(true, {});
    } catch (const Error& err) {
      rec.fail(err.what());
    }
    report.lines.push_back(rec.take());
    if (!q) return report;
  }

  {
    detail::LineRecorder cyc("phi cyclic invariance and reversal");
    detail::LineRecorder split("phi = phi0 + phi1");
    for (const auto& f : t.triangles()) {
      std::array<VertexId, 3> o = f;
      do {
        const auto [a, b, c] = o;
        const Wedge2Element p = phi(h, a, b, c);
        cyc.check(p == phi(h, b, c, a) && p == phi(h, c, a, b) && phi(h, a, c, b) == -p,
                  [&] { return "triangle (" + t.label(a) + "," + t.label(b) + "," + t.label(c) + ")"; });
        Wedge2Element split_sum = phi0(*q, a, b, c) + phi1(*q, h, a, b, c);
        split.check(p == split_sum, [&] {
          return "triangle (" + t.label(a) + "," + t.label(b) + "," + t.label(c) + "): phi - phi0 - phi1 = " +
                 (p - split_sum).to_string();
        });
      } while (std::next_permutation(o.begin(), o.end()));
    }
    report.lines.push_back(cyc.take());
    report.lines.push_back(split.take());
  }

  {
    detail::LineRecorder rec("psi via faces = psi_tetra");
    for (std::size_t i = 0; i < t.tet_count(); ++i) {
      const Wedge2Element faces = psi_via_faces(t, h, i);
      const Wedge2Element split = psi_via_split_faces(t, h, *q, i);
      const Wedge2Element direct = psi_tetra(s, i);
      rec.check(faces == direct && split == direct, [&] {
        std::ostringstream os;
        os << "tetrahedron #" << i << " group " << s.group()->to_string() << " difference " << (faces - direct)
           << " values";
        for (const auto& v : s.values(i)) os << " " << v;
        return os.str();
      });
    }
    report.lines.push_back(rec.take());
  }

  {
    detail::LineRecorder rec("telescoping with witnessed face pairing");
    TelescopeResult tel = telescope_check(t, h);
    if (tel.ok) {
      for (std::size_t k = 0; k < tel.pairs; ++k) rec.check(true, {});
    } else {
      rec.fail(tel.failure);
    }
    report.lines.push_back(rec.take());
  }

  {
    detail::LineRecorder rec("gauge ambiguity is a per-vertex constant");
    try {
      rec.check(h_ambiguity_check(t, s, options.alt_seeds[0], options.alt_seeds[1]), [] {
        return std::string("difference of two symmetric families depends on more than the first vertex");
      });
    } catch (const Error& err) {
      rec.fail(err.what());
    }
    report.lines.push_back(rec.take());
  }

  {
    detail::LineRecorder rec("sum of psi over the fundamental class vanishes");
    PsiReport psi = total_invariant(t, s);
    rec.check(psi.holds, [&] { return "total " + psi.total.to_string(); });
    report.lines.push_back(rec.take());
  }
  return report;
}

}  // namespace angled
