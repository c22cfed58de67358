#pragma once

// Oriented simplicial closed 3-manifolds given as lists of ordered vertex
// 4-tuples. The ordering's even-permutation class is the orientation of the
// tetrahedron and the list, with every coefficient +1, is the fundamental
// class.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "angled/error.hpp"
#include "angled/report.hpp"
#include "angled/rng.hpp"

namespace angled {

using Label = std::string;
using LabelTet = std::array<Label, 4>;
using VertexId = int;
using Tet = std::array<VertexId, 4>;

/// +1 for an even permutation of distinct values, -1 for odd.
template <std::size_t N>
int permutation_sign(const std::array<VertexId, N>& v) {
  int sign = 1;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      if (v[i] > v[j]) sign = -sign;
    }
  }
  return sign;
}

/// Unordered pairs of tetrahedron positions, in the order used to store the
/// six edge values of a tetrahedron.
inline constexpr std::array<std::array<int, 2>, 6> kTetPairs = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline constexpr int tet_pair_index(int p, int q) {
  if (p > q) std::swap(p, q);
  for (int k = 0; k < 6; ++k) {
    if (kTetPairs[k][0] == p && kTetPairs[k][1] == q) return k;
  }
  return -1;
}

class Triangulation {
 public:
  Triangulation() = default;

  explicit Triangulation(std::vector<LabelTet> tets) : label_tets_(std::move(tets)) {
    std::set<Label> labels;
    for (const auto& t : label_tets_) labels.insert(t.begin(), t.end());
    labels_.assign(labels.begin(), labels.end());
    for (std::size_t i = 0; i < labels_.size(); ++i) ids_.emplace(labels_[i], static_cast<VertexId>(i));

    tets_.reserve(label_tets_.size());
    for (const auto& lt : label_tets_) {
      Tet t;
      for (int p = 0; p < 4; ++p) t[p] = ids_.at(lt[p]);
      tets_.push_back(t);
    }

    std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>> edge_tets;
    std::map<std::array<VertexId, 3>, std::vector<std::size_t>> tri_tets;
    vertex_tets_.assign(labels_.size(), {});
    for (std::size_t i = 0; i < tets_.size(); ++i) {
      const Tet& t = tets_[i];
      for (int p = 0; p < 4; ++p) {
        if (std::find(t.begin(), t.begin() + p, t[p]) == t.begin() + p) vertex_tets_[t[p]].push_back(i);
      }
      for (const auto& pr : kTetPairs) {
        VertexId u = t[pr[0]], v = t[pr[1]];
        if (u == v) continue;
        auto& list = edge_tets[{std::min(u, v), std::max(u, v)}];
        if (list.empty() || list.back() != i) list.push_back(i);
      }
      for (int skip = 0; skip < 4; ++skip) {
        std::array<VertexId, 3> f;
        for (int p = 0, k = 0; p < 4; ++p) {
          if (p != skip) f[k++] = t[p];
        }
        std::sort(f.begin(), f.end());
        if (f[0] == f[1] || f[1] == f[2]) continue;
        auto& list = tri_tets[f];
        if (list.empty() || list.back() != i) list.push_back(i);
      }
    }
    for (auto& [e, list] : edge_tets) {
      edge_index_.emplace(e, edges_.size());
      edges_.push_back(e);
      edge_tets_.push_back(std::move(list));
    }
    for (auto& [f, list] : tri_tets) {
      triangle_index_.emplace(f, triangles_.size());
      triangles_.push_back(f);
      triangle_tets_.push_back(std::move(list));
    }
  }

  std::size_t tet_count() const { return tets_.size(); }
  const Tet& tet(std::size_t i) const { return tets_[i]; }
  const std::vector<Tet>& tets() const { return tets_; }
  const LabelTet& tet_labels(std::size_t i) const { return label_tets_[i]; }
  const std::vector<LabelTet>& label_tets() const { return label_tets_; }

  /// Vertex ids follow lexicographic order of the labels.
  std::size_t vertex_count() const { return labels_.size(); }
  const Label& label(VertexId v) const { return labels_[v]; }
  std::optional<VertexId> vertex_id(const Label& label) const {
    auto it = ids_.find(label);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
  std::optional<std::size_t> edge_index(VertexId u, VertexId v) const {
    auto it = edge_index_.find({std::min(u, v), std::max(u, v)});
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<std::size_t>& edge_tets(std::size_t e) const { return edge_tets_[e]; }

  const std::vector<std::array<VertexId, 3>>& triangles() const { return triangles_; }
  std::optional<std::size_t> triangle_index(std::array<VertexId, 3> f) const {
    std::sort(f.begin(), f.end());
    auto it = triangle_index_.find(f);
    if (it == triangle_index_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<std::size_t>& triangle_tets(std::size_t f) const { return triangle_tets_[f]; }

  const std::vector<std::size_t>& vertex_tets(VertexId v) const { return vertex_tets_[v]; }

  /// Position of vertex v in tetrahedron i, or -1.
  int position(std::size_t i, VertexId v) const {
    for (int p = 0; p < 4; ++p) {
      if (tets_[i][p] == v) return p;
    }
    return -1;
  }

  long euler_characteristic() const {
    return static_cast<long>(labels_.size()) - static_cast<long>(edges_.size()) +
           static_cast<long>(triangles_.size()) - static_cast<long>(tets_.size());
  }

  std::string describe_edge(VertexId u, VertexId v) const { return "{" + label(u) + "," + label(v) + "}"; }

 private:
  std::vector<LabelTet> label_tets_;
  std::vector<Tet> tets_;
  std::vector<Label> labels_;
  std::map<Label, VertexId> ids_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::map<std::pair<VertexId, VertexId>, std::size_t> edge_index_;
  std::vector<std::vector<std::size_t>> edge_tets_;
  std::vector<std::array<VertexId, 3>> triangles_;
  std::map<std::array<VertexId, 3>, std::size_t> triangle_index_;
  std::vector<std::vector<std::size_t>> triangle_tets_;
  std::vector<std::vector<std::size_t>> vertex_tets_;
};

// ---------------------------------------------------------------------------
// Edge stars

/// Tetrahedra around the oriented edge (a, b): (a, b, x_i, x_{i+1}) is an
/// even reordering of tetrahedron tets[i], indices mod n.
struct EdgeStar {
  VertexId a;
  VertexId b;
  std::vector<VertexId> opposite;
  std::vector<std::size_t> tets;

  std::size_t size() const { return opposite.size(); }
};

namespace detail {

// For each tetrahedron on edge {a,b}: the arc x -> y with (a,b,x,y) even.
inline std::vector<std::pair<VertexId, VertexId>> star_arcs(const Triangulation& t, VertexId a, VertexId b,
                                                           const std::vector<std::size_t>& tets) {
  std::vector<std::pair<VertexId, VertexId>> arcs;
  for (std::size_t i : tets) {
    const Tet& tet = t.tet(i);
    std::array<VertexId, 2> rest{};
    int k = 0;
    for (int p = 0; p < 4; ++p) {
      if (tet[p] != a && tet[p] != b) rest[k++] = tet[p];
    }
    Tet rep{a, b, rest[0], rest[1]};
    // Parity of rep relative to the stored tuple.
    std::array<VertexId, 4> perm{};
    for (int p = 0; p < 4; ++p) perm[p] = t.position(i, rep[p]);
    if (permutation_sign(perm) < 0) std::swap(rest[0], rest[1]);
    arcs.emplace_back(rest[0], rest[1]);
  }
  return arcs;
}

}  // namespace detail

/// Star of the oriented edge (a, b) starting from `start` (default: least
/// opposite vertex). Throws NoSuchEdge, or PreconditionFailed when the link
/// is not a single cycle.
inline EdgeStar edge_star(const Triangulation& t, VertexId a, VertexId b, std::optional<std::size_t> start_index = {}) {
  auto e = t.edge_index(a, b);
  if (a == b || !e) throw Error(ErrorKind::NoSuchEdge, "no edge between given vertices");
  const auto& tets = t.edge_tets(*e);
  const auto arcs = detail::star_arcs(t, a, b, tets);
  std::map<VertexId, std::pair<VertexId, std::size_t>> next;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    if (!next.emplace(arcs[k].first, std::make_pair(arcs[k].second, tets[k])).second) {
      throw Error(ErrorKind::PreconditionFailed, "edge link of " + t.describe_edge(a, b) + " is not a circle");
    }
  }
  EdgeStar star{a, b, {}, {}};
  VertexId x = next.begin()->first;
  if (start_index) x = std::next(next.begin(), static_cast<long>(*start_index % next.size()))->first;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    auto it = next.find(x);
    if (it == next.end()) break;
    star.opposite.push_back(x);
    star.tets.push_back(it->second.second);
    x = it->second.first;
  }
  if (star.size() != arcs.size() || x != star.opposite.front() || star.size() < 3) {
    throw Error(ErrorKind::PreconditionFailed, "edge link of " + t.describe_edge(a, b) + " is not a circle");
  }
  return star;
}

inline EdgeStar edge_star(const Triangulation& t, const Label& a, const Label& b) {
  auto ia = t.vertex_id(a), ib = t.vertex_id(b);
  if (!ia || !ib) throw Error(ErrorKind::NoSuchEdge, "no edge {" + a + "," + b + "}");
  return edge_star(t, *ia, *ib);
}

// ---------------------------------------------------------------------------
// Vertex links

/// Link graph of a vertex: nodes are its neighbours, arcs the triangles
/// through it. Carries a breadth-first spanning tree.
struct VertexLink {
  VertexId vertex;
  std::vector<VertexId> nodes;                       // sorted
  std::vector<std::pair<VertexId, VertexId>> arcs;   // sorted, first < second
  std::size_t faces = 0;                             // tetrahedra containing the vertex
  VertexId root;
  std::map<VertexId, VertexId> parent;               // root maps to itself
  std::map<VertexId, std::size_t> depth;
  std::vector<std::pair<VertexId, VertexId>> non_tree_arcs;
  bool connected = false;

  long euler_characteristic() const {
    return static_cast<long>(nodes.size()) - static_cast<long>(arcs.size()) + static_cast<long>(faces);
  }

  bool contains(VertexId b) const { return std::binary_search(nodes.begin(), nodes.end(), b); }

  /// Nodes along the tree from `from` to `to`, both included.
  std::vector<VertexId> tree_path(VertexId from, VertexId to) const {
    std::vector<VertexId> up, down;
    VertexId x = from, y = to;
    while (depth.at(x) > depth.at(y)) up.push_back(x), x = parent.at(x);
    while (depth.at(y) > depth.at(x)) down.push_back(y), y = parent.at(y);
    while (x != y) {
      up.push_back(x), x = parent.at(x);
      down.push_back(y), y = parent.at(y);
    }
    up.push_back(x);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  }
};

/// Link of vertex a with its spanning tree grown breadth-first from `root`
/// (default: least node), visiting neighbours in label order.
inline VertexLink vertex_link(const Triangulation& t, VertexId a, std::optional<VertexId> root = {}) {
  if (a < 0 || static_cast<std::size_t>(a) >= t.vertex_count()) throw Error(ErrorKind::NoSuchVertex, "vertex id out of range");
  VertexLink link;
  link.vertex = a;
  std::set<VertexId> nodes;
  std::set<std::pair<VertexId, VertexId>> arcs;
  for (std::size_t i : t.vertex_tets(a)) {
    const Tet& tet = t.tet(i);
    for (int p = 0; p < 4; ++p) {
      if (tet[p] != a) nodes.insert(tet[p]);
    }
    for (const auto& pr : kTetPairs) {
      VertexId u = tet[pr[0]], v = tet[pr[1]];
      if (u == a || v == a) continue;
      arcs.insert({std::min(u, v), std::max(u, v)});
    }
  }
  link.faces = t.vertex_tets(a).size();
  link.nodes.assign(nodes.begin(), nodes.end());
  link.arcs.assign(arcs.begin(), arcs.end());
  if (link.nodes.empty()) throw Error(ErrorKind::NoSuchVertex, "vertex " + t.label(a) + " has no link");

  std::map<VertexId, std::vector<VertexId>> adjacency;
  for (const auto& [u, v] : link.arcs) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  for (auto& [u, list] : adjacency) std::sort(list.begin(), list.end());

  link.root = root.value_or(link.nodes.front());
  if (!link.contains(link.root)) throw Error(ErrorKind::NotInLink, "root is not in the link");
  std::queue<VertexId> queue;
  queue.push(link.root);
  link.parent[link.root] = link.root;
  link.depth[link.root] = 0;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop();
    for (VertexId v : adjacency[u]) {
      if (link.parent.count(v)) continue;
      link.parent[v] = u;
      link.depth[v] = link.depth[u] + 1;
      queue.push(v);
    }
  }
  link.connected = link.parent.size() == link.nodes.size();
  for (const auto& [u, v] : link.arcs) {
    auto pu = link.parent.find(u), pv = link.parent.find(v);
    bool tree = (pu != link.parent.end() && pu->second == v && u != link.root) ||
                (pv != link.parent.end() && pv->second == u && v != link.root);
    if (!tree) link.non_tree_arcs.emplace_back(u, v);
  }
  return link;
}

inline VertexLink vertex_link(const Triangulation& t, const Label& a) {
  auto id = t.vertex_id(a);
  if (!id) throw Error(ErrorKind::NoSuchVertex, "no vertex '" + a + "'");
  return vertex_link(t, *id);
}

// ---------------------------------------------------------------------------
// Validation

inline ValidationReport validate(const Triangulation& t) {
  ValidationReport report;
  if (t.tet_count() == 0) {
    report.add("Empty", "no tetrahedra");
    return report;
  }
  auto name = [&](std::size_t i) {
    const auto& l = t.tet_labels(i);
    return "#" + std::to_string(i) + " (" + l[0] + "," + l[1] + "," + l[2] + "," + l[3] + ")";
  };

  bool degenerate = false;
  std::map<std::array<VertexId, 4>, std::size_t> seen;
  for (std::size_t i = 0; i < t.tet_count(); ++i) {
    Tet sorted = t.tet(i);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      report.add("NotSimplicial", "tetrahedron " + name(i) + " repeats a vertex");
      degenerate = true;
      continue;
    }
    auto [it, fresh] = seen.emplace(sorted, i);
    if (!fresh) {
      report.add("NotSimplicial", "tetrahedra " + name(it->second) + " and " + name(i) + " span the same vertices");
      degenerate = true;
    }
  }
  if (degenerate) return report;

  // Oriented faces: face opposite position p carries sign (-1)^p.
  std::map<std::array<VertexId, 3>, std::array<int, 2>> faces;  // [negative, positive] counts
  for (std::size_t i = 0; i < t.tet_count(); ++i) {
    const Tet& tet = t.tet(i);
    for (int p = 0; p < 4; ++p) {
      std::array<VertexId, 3> f;
      for (int q = 0, k = 0; q < 4; ++q) {
        if (q != p) f[k++] = tet[q];
      }
      int sign = (p % 2 ? -1 : 1) * permutation_sign(f);
      std::sort(f.begin(), f.end());
      faces[f][sign > 0 ? 1 : 0]++;
    }
  }
  bool closed = true;
  for (const auto& [f, count] : faces) {
    std::string tri = "{" + t.label(f[0]) + "," + t.label(f[1]) + "," + t.label(f[2]) + "}";
    int total = count[0] + count[1];
    if (total == 1) {
      report.add("NotClosed", "triangle " + tri + " lies in a single tetrahedron");
      closed = false;
    } else if (total > 2) {
      report.add("NotManifold", "triangle " + tri + " lies in " + std::to_string(total) + " tetrahedra");
      closed = false;
    } else if (count[0] != 1 || count[1] != 1) {
      report.add("NotCoherent", "triangle " + tri + " appears twice with the same orientation");
      closed = false;
    }
  }
  if (!closed) return report;

  for (const auto& [u, v] : t.edges()) {
    try {
      edge_star(t, u, v);
    } catch (const Error& err) {
      report.add("EdgeLinkNotCircle", "edge " + t.describe_edge(u, v) + " has a link that is not a circle");
    }
  }
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    VertexLink link = vertex_link(t, static_cast<VertexId>(v));
    if (!link.connected || link.euler_characteristic() != 2) {
      report.add("VertexLinkNotSphere", "vertex " + t.label(static_cast<VertexId>(v)) + " has link with chi = " +
                                            std::to_string(link.euler_characteristic()) +
                                            (link.connected ? "" : " (disconnected)"));
    }
  }
  return report;
}

inline void require_valid(const Triangulation& t) {
  ValidationReport report = validate(t);
  if (!report.ok()) {
    throw Error(ErrorKind::PreconditionFailed, "invalid triangulation: " + report.issues.front().kind + ": " +
                                                   report.issues.front().message);
  }
}

// ---------------------------------------------------------------------------
// Builtin triangulations

/// Boundary of the 4-simplex on labels 0..4, orientations taken from the
/// simplicial boundary operator (odd faces get their first two vertices
/// swapped).
inline Triangulation boundary_4_simplex() {
  std::vector<LabelTet> tets;
  for (int skip = 0; skip < 5; ++skip) {
    LabelTet tet;
    for (int v = 0, k = 0; v < 5; ++v) {
      if (v != skip) tet[k++] = std::to_string(v);
    }
    if (skip % 2) std::swap(tet[0], tet[1]);
    tets.push_back(tet);
  }
  return Triangulation(std::move(tets));
}

/// Boundary of the 4-dimensional cross-polytope (16-cell). Label 2i is
/// +e_i and 2i+1 is -e_i; the tetrahedron on s_1 e_1, ..., s_4 e_4 is
/// oriented by the sign of s_1 s_2 s_3 s_4.
inline Triangulation cross_polytope_boundary() {
  std::vector<LabelTet> tets;
  for (int mask = 0; mask < 16; ++mask) {
    LabelTet tet;
    int sign = 1;
    for (int i = 0; i < 4; ++i) {
      bool negative = (mask >> i) & 1;
      tet[i] = std::to_string(2 * i + (negative ? 1 : 0));
      if (negative) sign = -sign;
    }
    if (sign < 0) std::swap(tet[0], tet[1]);
    tets.push_back(tet);
  }
  return Triangulation(std::move(tets));
}

// ---------------------------------------------------------------------------
// Pachner moves

/// Replaces tetrahedron `index` (a,b,c,d) by the cone from a new vertex v:
/// (v,b,c,d), (a,v,c,d), (a,b,v,d), (a,b,c,v).
inline Triangulation pachner_14(const Triangulation& t, std::size_t index, const Label& new_label) {
  if (index >= t.tet_count()) throw Error(ErrorKind::PreconditionFailed, "tetrahedron index out of range");
  if (new_label.empty()) throw Error(ErrorKind::PreconditionFailed, "empty label");
  if (t.vertex_id(new_label)) throw Error(ErrorKind::LabelInUse, "label '" + new_label + "' already used");
  std::vector<LabelTet> tets = t.label_tets();
  const LabelTet old = tets[index];
  for (int p = 0; p < 4; ++p) {
    LabelTet child = old;
    child[p] = new_label;
    if (p == 0) tets[index] = child;
    else tets.push_back(child);
  }
  return Triangulation(std::move(tets));
}

/// Replaces the two tetrahedra on triangle `face` by three around the edge
/// joining their apexes.
inline Triangulation pachner_23(const Triangulation& t, const std::array<Label, 3>& face) {
  std::array<VertexId, 3> f;
  for (int k = 0; k < 3; ++k) {
    auto id = t.vertex_id(face[k]);
    if (!id) throw Error(ErrorKind::NoSuchFace, "no vertex '" + face[k] + "'");
    f[k] = *id;
  }
  auto fi = t.triangle_index(f);
  if (!fi || t.triangle_tets(*fi).size() != 2) {
    throw Error(ErrorKind::NoSuchFace, "triangle {" + face[0] + "," + face[1] + "," + face[2] + "} is not interior to two tetrahedra");
  }
  const std::size_t i1 = t.triangle_tets(*fi)[0];
  const std::size_t i2 = t.triangle_tets(*fi)[1];
  auto apex = [&](std::size_t i) {
    for (VertexId v : t.tet(i)) {
      if (std::find(f.begin(), f.end(), v) == f.end()) return v;
    }
    return VertexId{-1};
  };
  const VertexId d = apex(i1), e = apex(i2);
  if (t.edge_index(d, e)) {
    throw Error(ErrorKind::ApexesAdjacent, "apexes " + t.label(d) + " and " + t.label(e) + " are already joined");
  }
  // Even representative (a,b,c,d) of the first tetrahedron.
  std::array<VertexId, 4> rep{};
  int k = 0;
  for (VertexId v : t.tet(i1)) {
    if (v != d) rep[k++] = v;
  }
  rep[3] = d;
  std::array<VertexId, 4> perm{};
  for (int p = 0; p < 4; ++p) perm[p] = t.position(i1, rep[p]);
  if (permutation_sign(perm) < 0) std::swap(rep[0], rep[1]);
  const Label& a = t.label(rep[0]);
  const Label& b = t.label(rep[1]);
  const Label& c = t.label(rep[2]);
  const Label& dl = t.label(d);
  const Label& el = t.label(e);

  std::vector<LabelTet> tets;
  for (std::size_t i = 0; i < t.tet_count(); ++i) {
    if (i == i1) tets.push_back({a, c, dl, el});
    else if (i != i2) tets.push_back(t.tet_labels(i));
  }
  tets.push_back({c, b, dl, el});
  tets.push_back({b, a, dl, el});
  return Triangulation(std::move(tets));
}

/// Triangles on which a 2-3 move is legal.
inline std::vector<std::array<VertexId, 3>> legal_23_faces(const Triangulation& t) {
  std::vector<std::array<VertexId, 3>> out;
  for (std::size_t fi = 0; fi < t.triangles().size(); ++fi) {
    const auto& tets = t.triangle_tets(fi);
    if (tets.size() != 2) continue;
    const auto& f = t.triangles()[fi];
    VertexId apexes[2];
    for (int k = 0; k < 2; ++k) {
      for (VertexId v : t.tet(tets[k])) {
        if (std::find(f.begin(), f.end(), v) == f.end()) apexes[k] = v;
      }
    }
    if (!t.edge_index(apexes[0], apexes[1])) out.push_back(f);
  }
  return out;
}

/// A seeded walk of `moves` Pachner moves, each a 1-4 or (when legal) a 2-3
/// with equal probability. New vertices are labelled n0, n1, ...
inline Triangulation random_pachner_walk(Triangulation t, std::size_t moves, Rng& rng) {
  std::size_t fresh = 0;
  for (std::size_t step = 0; step < moves; ++step) {
    auto faces = legal_23_faces(t);
    if (!faces.empty() && rng.below(2) == 0) {
      const auto& f = faces[rng.below(faces.size())];
      t = pachner_23(t, {t.label(f[0]), t.label(f[1]), t.label(f[2])});
    } else {
      Label label;
      do label = "n" + std::to_string(fresh++);
      while (t.vertex_id(label));
      t = pachner_14(t, rng.below(t.tet_count()), label);
    }
  }
  return t;
}

}  // namespace angled
