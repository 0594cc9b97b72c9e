#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treelabel/error.hpp"

namespace treelabel {

/// Finite rooted tree on {0,...,n-1} with root 0 and parent[v] < v.
///
/// The parent array alone determines the tree; children lists are kept sorted
/// ascending so every traversal below is deterministic.
class RootedTree {
public:
  RootedTree() : RootedTree(std::vector<int>{-1}) {}

  /// `parent[0]` is ignored (the root has no parent).
  explicit RootedTree(std::vector<int> parent) : parent_(std::move(parent)) {
    if (parent_.empty())
      throw std::invalid_argument("tree must have at least one vertex");
    parent_[0] = -1;
    const int n = size();
    children_.assign(n, {});
    level_.assign(n, 0);
    for (int v = 1; v < n; ++v) {
      const int p = parent_[v];
      if (p < 0 || p >= v)
        throw std::invalid_argument("parent[" + std::to_string(v) + "] = " + std::to_string(p) +
                                    " is not less than " + std::to_string(v));
      children_[p].push_back(v);
      level_[v] = level_[p] + 1;
    }
  }

  int size() const noexcept { return static_cast<int>(parent_.size()); }
  int parent(int v) const { return parent_.at(v); }
  const std::vector<int> &parents() const noexcept { return parent_; }
  std::span<const int> children(int v) const { return children_.at(v); }
  int level(int v) const { return level_.at(v); }
  int height() const { return *std::max_element(level_.begin(), level_.end()); }

  int degree(int v) const {
    return static_cast<int>(children_.at(v).size()) + (v == 0 ? 0 : 1);
  }

  /// Parent first (if any), then children ascending.
  std::vector<int> neighbours(int v) const {
    std::vector<int> out;
    out.reserve(degree(v));
    if (v != 0)
      out.push_back(parent_[v]);
    out.insert(out.end(), children_[v].begin(), children_[v].end());
    return out;
  }

  bool operator==(const RootedTree &other) const { return parent_ == other.parent_; }

private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> level_;
};

struct TreeStats {
  int n = 0;
  int delta = 0;  // maximum degree
  int delta2 = 0; // maximum of d(u)+d(v) over edges uv
  int diam = 0;
};

enum class Family { CompleteMary, RegularSubtree };

struct FamilySpec {
  Family family = Family::CompleteMary;
  int m = 2;
  int k = 2;

  bool operator==(const FamilySpec &) const = default;
};

inline std::string to_string(Family f) {
  return f == Family::CompleteMary ? "mary" : "regular";
}

inline std::string describe(const FamilySpec &s) {
  return (s.family == Family::CompleteMary ? "T(" : "That(") + std::to_string(s.m) + "," +
         std::to_string(s.k) + ")";
}

/// Vertex count of T_{m,k} or T^_{m,k}.
inline std::int64_t family_size(const FamilySpec &s) {
  std::int64_t pw = 1, sum = 1;
  for (int i = 1; i <= s.k; ++i) {
    pw *= s.m;
    sum += pw;
  }
  if (s.family == Family::CompleteMary)
    return sum;
  // 1 + (m+1)(m^k - 1)/(m - 1)
  return 1 + (s.m + 1) * ((sum - 1) / s.m);
}

/// T_{m,k}: every non-leaf has m children. T^_{m,k}: the root has m+1.
/// Vertices come out in breadth-first order.
inline RootedTree build_family(const FamilySpec &spec) {
  if (spec.m < 2 || spec.k < 2)
    throw std::invalid_argument("family trees need m >= 2 and k >= 2");
  std::vector<int> parent{-1};
  std::vector<int> frontier{0};
  for (int depth = 0; depth < spec.k; ++depth) {
    std::vector<int> next;
    for (int u : frontier) {
      const int kids = (depth == 0 && spec.family == Family::RegularSubtree) ? spec.m + 1 : spec.m;
      for (int j = 0; j < kids; ++j) {
        next.push_back(static_cast<int>(parent.size()));
        parent.push_back(u);
      }
    }
    frontier = std::move(next);
  }
  return RootedTree(std::move(parent));
}

/// Path v0 - v1 - ... rooted at one end.
inline RootedTree make_path(int n) {
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v)
    parent[v] = v - 1;
  return RootedTree(std::move(parent));
}

/// Star K_{1,leaves} rooted at the centre.
inline RootedTree make_star(int leaves) {
  std::vector<int> parent(leaves + 1, 0);
  return RootedTree(std::move(parent));
}

inline std::string serialize_tree(const RootedTree &t) {
  std::ostringstream os;
  os << t.size() << '\n';
  for (int v = 1; v < t.size(); ++v)
    os << (v > 1 ? " " : "") << t.parent(v);
  os << '\n';
  return os.str();
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
      ++j;
    if (j > i)
      tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline long long parse_int(std::string_view tok, int line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("malformed integer '" + std::string(tok) + "'", line);
  return value;
}

} // namespace detail

/// Reads "n\nparent[1] ... parent[n-1]\n".
inline RootedTree parse_tree(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && detail::split_ws(lines.back()).empty())
    lines.pop_back();
  if (lines.empty())
    throw ParseError("empty tree text", 1);

  auto head = detail::split_ws(lines[0]);
  if (head.size() != 1)
    throw ParseError("expected the vertex count alone", 1);
  const long long n = detail::parse_int(head[0], 1);
  if (n < 1)
    throw ParseError("vertex count must be at least 1", 1);
  if (lines.size() > 2)
    throw ParseError("unexpected extra content", 3);

  std::vector<std::string_view> tokens;
  if (lines.size() == 2)
    tokens = detail::split_ws(lines[1]);
  if (static_cast<long long>(tokens.size()) != n - 1)
    throw ParseError("expected " + std::to_string(n - 1) + " parent indices, found " +
                         std::to_string(tokens.size()),
                     2);

  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (long long v = 1; v < n; ++v) {
    const long long p = detail::parse_int(tokens[v - 1], 2);
    if (p < 0 || p >= v)
      throw ParseError("parent index " + std::to_string(p) + " of vertex " + std::to_string(v) +
                           " is not less than the child",
                       2);
    parent[v] = static_cast<int>(p);
  }
  return RootedTree(std::move(parent));
}

/// Distances from `source` to every vertex (undirected).
inline std::vector<int> bfs_distances(const RootedTree &t, int source) {
  std::vector<int> dist(t.size(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : t.neighbours(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

inline TreeStats tree_stats(const RootedTree &t) {
  TreeStats s;
  s.n = t.size();
  for (int v = 0; v < s.n; ++v) {
    s.delta = std::max(s.delta, t.degree(v));
    if (v != 0)
      s.delta2 = std::max(s.delta2, t.degree(v) + t.degree(t.parent(v)));
  }
  // Double sweep: the farthest vertex from anywhere is an end of a diameter.
  auto d0 = bfs_distances(t, 0);
  const int far = static_cast<int>(std::max_element(d0.begin(), d0.end()) - d0.begin());
  auto d1 = bfs_distances(t, far);
  s.diam = *std::max_element(d1.begin(), d1.end());
  return s;
}

struct Neighbour {
  int vertex;
  int distance;

  bool operator==(const Neighbour &) const = default;
};

/// Every vertex at distance 1, 2 or 3 from v, ordered by distance and then
/// by vertex index.
inline std::vector<Neighbour> dist3_neighborhood(const RootedTree &t, int v) {
  if (v < 0 || v >= t.size())
    throw std::out_of_range("vertex out of range");
  std::vector<Neighbour> out;
  std::vector<int> layer{v};
  std::vector<int> prev_layer;
  for (int d = 1; d <= 3; ++d) {
    std::vector<int> next;
    for (int u : layer)
      for (int w : t.neighbours(u)) {
        // In a tree the only already-seen neighbour of a layer vertex sits one layer back.
        if (std::find(prev_layer.begin(), prev_layer.end(), w) != prev_layer.end())
          continue;
        next.push_back(w);
      }
    std::sort(next.begin(), next.end());
    for (int w : next)
      out.push_back({w, d});
    prev_layer = std::move(layer);
    layer = std::move(next);
  }
  return out;
}

enum class DenseVariant { Complete, Regular };

/// Whether T contains T_{Δ-1,2} (Complete) or T^_{Δ-1,2} (Regular) as a
/// subtree. Both patterns have a centre whose neighbours all reach degree Δ,
/// so a degree scan decides it exactly.
inline bool has_dense_depth2_subtree(const RootedTree &t, DenseVariant variant) {
  const int delta = tree_stats(t).delta;
  if (delta < 3)
    throw std::invalid_argument("dense depth-2 subtrees need maximum degree at least 3");
  for (int r = 0; r < t.size(); ++r) {
    int full = 0;
    for (int w : t.neighbours(r))
      if (t.degree(w) == delta)
        ++full;
    if (variant == DenseVariant::Complete && full >= delta - 1)
      return true;
    if (variant == DenseVariant::Regular && t.degree(r) == delta && full == delta)
      return true;
  }
  return false;
}

/// The same tree re-rooted at `root`, relabelled in breadth-first order
/// (neighbours visited by ascending original index). `original[i]` is the
/// original index of new vertex i.
struct Rerooted {
  RootedTree tree;
  std::vector<int> original;
};

inline Rerooted reroot(const RootedTree &t, int root) {
  if (root < 0 || root >= t.size())
    throw std::out_of_range("root out of range");
  const int n = t.size();
  std::vector<int> order{root};
  std::vector<int> new_index(n, -1);
  new_index[root] = 0;
  std::vector<int> parent{-1};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int u = order[head];
    auto nbrs = t.neighbours(u);
    std::sort(nbrs.begin(), nbrs.end());
    for (int w : nbrs)
      if (new_index[w] < 0) {
        new_index[w] = static_cast<int>(order.size());
        order.push_back(w);
        parent.push_back(new_index[u]);
      }
  }
  return {RootedTree(std::move(parent)), std::move(order)};
}

/// Recognises T_{m,2} / T^_{m,2} exactly as build_family lays them out.
inline std::optional<FamilySpec> detect_depth2_family(const RootedTree &t) {
  const int root_deg = t.degree(0);
  for (Family f : {Family::CompleteMary, Family::RegularSubtree}) {
    const int m = f == Family::CompleteMary ? root_deg : root_deg - 1;
    if (m < 2)
      continue;
    FamilySpec spec{f, m, 2};
    if (family_size(spec) == t.size() && build_family(spec) == t)
      return spec;
  }
  return std::nullopt;
}

/// Random tree on n vertices: vertex v attaches to a uniformly chosen earlier
/// vertex whose degree is still below max_degree.
inline RootedTree random_tree(int n, int max_degree, std::mt19937_64 &rng) {
  if (n < 1)
    throw std::invalid_argument("random tree needs n >= 1");
  if (n > 2 && max_degree < 2)
    throw std::invalid_argument("max degree must be at least 2 for n > 2");
  std::vector<int> parent{-1};
  std::vector<int> deg(n, 0);
  for (int v = 1; v < n; ++v) {
    std::vector<int> open;
    for (int u = 0; u < v; ++u)
      if (deg[u] < max_degree)
        open.push_back(u);
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const int p = open[pick(rng)];
    parent.push_back(p);
    ++deg[p];
    ++deg[v];
  }
  return RootedTree(std::move(parent));
}

} // namespace treelabel
