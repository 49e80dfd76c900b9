#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rdom {

using VertexId = std::int64_t;
using BallId = std::int64_t;
using Length = std::int64_t;

// Path lengths are accumulated in 128 bits so sums of 64-bit arc lengths never overflow.
using Dist = __int128;
inline constexpr Dist kUnreached = Dist{1} << 120;

using Weight = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

struct Vertex {
  VertexId id = 0;
  Weight weight = 0;
};

// An input edge record. For undirected graphs it stands for both arcs.
struct EdgeSpec {
  VertexId u = 0;
  VertexId v = 0;
  Length length = 0;
};

// Arc endpoints are vertex indices (positions in Graph::vertices()), not ids.
struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;
  Length length = 0;
};

/// Weighted digraph with nonnegative integer arc lengths and nonnegative
/// vertex weights. Vertices are kept sorted by id; arcs by (tail id, head id,
/// length). Immutable after construction.
class Graph {
 public:
  Graph() = default;

  Graph(bool directed, std::vector<Vertex> vertices, std::span<const EdgeSpec> edges)
      : directed_(directed), vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end(),
              [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (vertices_[i].id < 0) {
        throw GraphError("vertex id " + std::to_string(vertices_[i].id) + " is negative");
      }
      if (vertices_[i].weight < 0) {
        throw GraphError("vertex " + std::to_string(vertices_[i].id) + " has negative weight");
      }
      if (i > 0 && vertices_[i - 1].id == vertices_[i].id) {
        throw GraphError("duplicate vertex id " + std::to_string(vertices_[i].id));
      }
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& spec = edges[e];
      auto tail = index_of(spec.u);
      auto head = index_of(spec.v);
      if (!tail || !head) {
        throw GraphError("edge " + std::to_string(e) + ": unknown endpoint " +
                         std::to_string(!tail ? spec.u : spec.v));
      }
      if (spec.length < 0) {
        throw GraphError("edge " + std::to_string(e) + ": negative length");
      }
      arcs_.push_back({*tail, *head, spec.length});
      if (!directed_ && *tail != *head) arcs_.push_back({*head, *tail, spec.length});
    }
    finish();
  }

  // Builds from already-indexed arcs. Used by internal constructions that
  // produce arc pairs themselves.
  static Graph from_arcs(bool directed, std::vector<Vertex> sorted_vertices, std::vector<Arc> arcs) {
    Graph g;
    g.directed_ = directed;
    g.vertices_ = std::move(sorted_vertices);
    g.arcs_ = std::move(arcs);
    g.finish();
    return g;
  }

  bool directed() const { return directed_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(std::size_t a) const { return arcs_[a]; }
  VertexId id_of(std::size_t v) const { return vertices_[v].id; }
  const Weight& weight(std::size_t v) const { return vertices_[v].weight; }
  const std::vector<std::size_t>& out_arcs(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_arcs(std::size_t v) const { return in_[v]; }

  std::optional<std::size_t> index_of(VertexId id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const Vertex& v, VertexId x) { return v.id < x; });
    if (it == vertices_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::size_t require_index(VertexId id) const {
    auto i = index_of(id);
    if (!i) throw GraphError("unknown vertex id " + std::to_string(id));
    return *i;
  }

  // Edge records as they would appear in a document: every arc for directed
  // graphs, one record per arc pair (tail <= head) for undirected graphs.
  std::vector<EdgeSpec> edge_records() const {
    std::vector<EdgeSpec> out;
    for (const auto& a : arcs_) {
      if (!directed_ && a.tail > a.head) continue;
      out.push_back({id_of(a.tail), id_of(a.head), a.length});
    }
    return out;
  }

  Length total_length() const {
    Length sum = 0;
    for (const auto& a : arcs_) sum += a.length;
    return sum;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.directed_ != b.directed_ || a.vertices_.size() != b.vertices_.size() ||
        a.arcs_.size() != b.arcs_.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
      if (a.vertices_[i].id != b.vertices_[i].id || a.vertices_[i].weight != b.vertices_[i].weight) {
        return false;
      }
    }
    for (std::size_t i = 0; i < a.arcs_.size(); ++i) {
      const auto& x = a.arcs_[i];
      const auto& y = b.arcs_[i];
      if (x.tail != y.tail || x.head != y.head || x.length != y.length) return false;
    }
    return true;
  }

 private:
  void finish() {
    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
      return std::tie(a.tail, a.head, a.length) < std::tie(b.tail, b.head, b.length);
    });
    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      out_[arcs_[a].tail].push_back(a);
      in_[arcs_[a].head].push_back(a);
    }
  }

  bool directed_ = false;
  std::vector<Vertex> vertices_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

// Simple undirected underlying graph: sorted neighbor lists, no loops, no duplicates.
inline std::vector<std::vector<std::size_t>> undirected_neighbors(const Graph& g) {
  std::vector<std::vector<std::size_t>> nbrs(g.vertex_count());
  for (const auto& a : g.arcs()) {
    if (a.tail == a.head) continue;
    nbrs[a.tail].push_back(a.head);
    nbrs[a.head].push_back(a.tail);
  }
  for (auto& list : nbrs) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return nbrs;
}

inline std::size_t undirected_edge_count(const Graph& g) {
  std::size_t twice = 0;
  for (const auto& list : undirected_neighbors(g)) twice += list.size();
  return twice / 2;
}

// Connectivity of the subgraph induced by `members` (vertex indices), ignoring direction.
inline bool induced_connected_indices(const Graph& g, std::span<const std::size_t> members) {
  if (members.size() <= 1) return true;
  std::vector<char> in_set(g.vertex_count(), 0);
  for (auto v : members) in_set[v] = 1;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::size_t> stack{members.front()};
  seen[members.front()] = 1;
  std::size_t reached = 1;
  auto visit = [&](std::size_t w) {
    if (in_set[w] && !seen[w]) {
      seen[w] = 1;
      ++reached;
      stack.push_back(w);
    }
  };
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto a : g.out_arcs(v)) visit(g.arc(a).head);
    for (auto a : g.in_arcs(v)) visit(g.arc(a).tail);
  }
  std::size_t distinct = 0;
  for (auto c : in_set) distinct += c;
  return reached == distinct;
}

/// True iff the subgraph induced by `ids` is connected in the undirected
/// sense. Empty and singleton sets are connected.
inline bool induced_connected(const Graph& g, std::span<const VertexId> ids) {
  std::vector<std::size_t> members;
  members.reserve(ids.size());
  for (auto id : ids) members.push_back(g.require_index(id));
  return induced_connected_indices(g, members);
}

}  // namespace rdom
