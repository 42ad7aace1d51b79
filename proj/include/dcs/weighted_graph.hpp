#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dcs/errors.hpp"

namespace dcs {

using VertexId = int;

struct WeightedEdge {
  VertexId u;
  VertexId v;
  double w;
};

// Undirected graph with signed edge weights over dense vertex ids.
// Adjacency is stored symmetrically, sorted ascending by neighbor id,
// with no self-loops, no zero weights and no duplicate neighbors.
// Immutable once built; safe for concurrent reads.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // `edges` hold dense ids in [0, labels.size()); one entry per undirected
  // edge, either orientation. Throws on invariant violations.
  WeightedGraph(std::vector<std::string> labels, const std::vector<WeightedEdge>& edges)
      : labels_(std::move(labels)), adj_(labels_.size()) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!label_to_id_.emplace(labels_[i], static_cast<VertexId>(i)).second)
        throw Error("duplicate label '" + labels_[i] + "'");
    }
    for (const auto& e : edges) add_edge_unchecked(e.u, e.v, e.w);
    finalize();
  }

  VertexId vertex_count() const { return static_cast<VertexId>(labels_.size()); }
  std::size_t edge_count() const { return edge_count_pos_ + edge_count_neg_; }
  std::size_t edge_count_pos() const { return edge_count_pos_; }
  std::size_t edge_count_neg() const { return edge_count_neg_; }

  const std::string& label(VertexId u) const { return labels_.at(u); }
  const std::vector<std::string>& labels() const { return labels_; }

  // -1 when the label is unknown.
  VertexId id_of(std::string_view label) const {
    auto it = label_to_id_.find(std::string(label));
    return it == label_to_id_.end() ? -1 : it->second;
  }

  std::span<const std::pair<VertexId, double>> neighbors(VertexId u) const {
    return adj_.at(u);
  }

  // 0 when (u,v) is not an edge.
  double weight(VertexId u, VertexId v) const {
    const auto& list = adj_.at(u);
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const auto& p, VertexId x) { return p.first < x; });
    return (it != list.end() && it->first == v) ? it->second : 0.0;
  }

  bool has_edge(VertexId u, VertexId v) const { return weight(u, v) != 0.0; }

  double degree(VertexId u) const {
    double d = 0;
    for (auto [v, w] : adj_.at(u)) { (void)v; d += w; }
    return d;
  }

  // Edges as (u,v,w) with u < v, ordered by (u,v).
  std::vector<WeightedEdge> edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u)
      for (auto [v, w] : adj_[u])
        if (u < v) out.push_back({u, v, w});
    return out;
  }

  bool same_labeled_edges(const WeightedGraph& other) const {
    if (labels_.size() != other.labels_.size()) return false;
    for (const auto& l : labels_)
      if (other.id_of(l) < 0) return false;
    if (edge_count() != other.edge_count()) return false;
    for (VertexId u = 0; u < vertex_count(); ++u) {
      VertexId ou = other.id_of(labels_[u]);
      for (auto [v, w] : adj_[u]) {
        if (other.weight(ou, other.id_of(labels_[v])) != w) return false;
      }
    }
    return true;
  }

 private:
  friend class WeightedGraphBuilder;

  void add_edge_unchecked(VertexId u, VertexId v, double w) {
    if (u == v) throw SelfLoop("self-loop at vertex '" + labels_.at(u) + "'");
    if (!std::isfinite(w) || w == 0.0)
      throw BadWeight("edge (" + labels_.at(u) + "," + labels_.at(v) + ") has invalid weight");
    adj_.at(u).emplace_back(v, w);
    adj_.at(v).emplace_back(u, w);
  }

  void finalize() {
    edge_count_pos_ = edge_count_neg_ = 0;
    for (VertexId u = 0; u < vertex_count(); ++u) {
      auto& list = adj_[u];
      std::sort(list.begin(), list.end());
      for (std::size_t i = 1; i < list.size(); ++i)
        if (list[i].first == list[i - 1].first)
          throw DuplicateEdge("duplicate edge (" + labels_[u] + "," + labels_[list[i].first] + ")");
      for (auto [v, w] : list) {
        if (u < v) (w > 0 ? edge_count_pos_ : edge_count_neg_)++;
      }
    }
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> label_to_id_;
  std::vector<std::vector<std::pair<VertexId, double>>> adj_;
  std::size_t edge_count_pos_ = 0;
  std::size_t edge_count_neg_ = 0;
};

// Incremental construction with label interning (first-seen order).
class WeightedGraphBuilder {
 public:
  VertexId intern(std::string_view label) {
    auto it = ids_.find(std::string(label));
    if (it != ids_.end()) return it->second;
    VertexId id = static_cast<VertexId>(labels_.size());
    labels_.emplace_back(label);
    ids_.emplace(labels_.back(), id);
    return id;
  }

  void add_edge(std::string_view ulab, std::string_view vlab, double w) {
    if (ulab == vlab) throw SelfLoop("self-loop at vertex '" + std::string(ulab) + "'");
    VertexId u = intern(ulab);  // keep first-seen id order independent of the
    VertexId v = intern(vlab);  // argument evaluation order
    add_edge_ids(u, v, w);
  }

  void add_edge_ids(VertexId u, VertexId v, double w) {
    if (u == v) throw SelfLoop("self-loop at vertex '" + labels_.at(u) + "'");
    if (!std::isfinite(w) || w == 0.0)
      throw BadWeight("edge (" + labels_.at(u) + "," + labels_.at(v) + ") has invalid weight");
    auto key = edge_key(u, v);
    if (!seen_.insert(key).second)
      throw DuplicateEdge("duplicate edge (" + labels_.at(u) + "," + labels_.at(v) + ")");
    edges_.push_back({u, v, w});
  }

  bool has_pair(VertexId u, VertexId v) const { return seen_.count(edge_key(u, v)) > 0; }

  WeightedGraph build() && {
    WeightedGraph g;
    g.labels_ = std::move(labels_);
    g.label_to_id_ = std::move(ids_);
    g.adj_.resize(g.labels_.size());
    for (const auto& e : edges_) {
      g.adj_[e.u].emplace_back(e.v, e.w);
      g.adj_[e.v].emplace_back(e.u, e.w);
    }
    g.finalize();
    return g;
  }

 private:
  static std::uint64_t edge_key(VertexId u, VertexId v) {
    auto a = static_cast<std::uint64_t>(std::min(u, v));
    auto b = static_cast<std::uint64_t>(std::max(u, v));
    return (a << 32) | b;
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> ids_;
  std::vector<WeightedEdge> edges_;
  std::unordered_set<std::uint64_t> seen_;
};

namespace detail {

inline bool parse_double(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace detail

// Text edge-list reader. Data lines are `u v w` (whitespace separated);
// `#` starts a comment; blank lines are skipped.
inline WeightedGraph load_edge_list(std::istream& in) {
  WeightedGraphBuilder builder;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<std::string_view> toks;
    std::string_view rest(line);
    while (!rest.empty()) {
      auto start = rest.find_first_not_of(" \t\r");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      auto end = rest.find_first_of(" \t\r");
      toks.push_back(rest.substr(0, end));
      rest = end == std::string_view::npos ? std::string_view() : rest.substr(end);
    }
    if (toks.empty()) continue;
    if (toks.size() != 3) throw ParseError(line_no, "expected `u v w`");
    double w;
    if (!detail::parse_double(toks[2], w)) throw ParseError(line_no, "bad weight token");
    builder.add_edge(toks[0], toks[1], w);
  }
  return std::move(builder).build();
}

// One line per undirected edge, smaller label first, weights printed with
// 17 significant digits so a reload is bit-exact.
inline void save_edge_list(const WeightedGraph& g, std::ostream& out) {
  char buf[64];
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (auto [v, w] : g.neighbors(u)) {
      if (u >= v) continue;
      const std::string& a = g.label(u);
      const std::string& b = g.label(v);
      std::snprintf(buf, sizeof buf, "%.17g", w);
      if (a <= b)
        out << a << ' ' << b << ' ' << buf << '\n';
      else
        out << b << ' ' << a << ' ' << buf << '\n';
    }
  }
}

}  // namespace dcs
