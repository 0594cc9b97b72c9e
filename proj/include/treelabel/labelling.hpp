#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "treelabel/tree.hpp"

namespace treelabel {

/// Separations required at distance 1, 2 and 3.
struct SeparationParams {
  int h1 = 0;
  int h2 = 0;
  int h3 = 0;

  static SeparationParams hpp(int h, int p) { return {h, p, p}; }

  int at(int distance) const { return distance == 1 ? h1 : distance == 2 ? h2 : h3; }
  bool operator==(const SeparationParams &) const = default;
};

enum class Mode { Linear, Cyclic };

inline std::string to_string(Mode m) { return m == Mode::Linear ? "linear" : "cyclic"; }

/// Linear: labels in [0, ell], ell is the span. Cyclic: labels in [0, ell-1],
/// ell is the modulus.
struct Labelling {
  Mode mode = Mode::Linear;
  int ell = 0;
  std::vector<int> labels;

  bool operator==(const Labelling &) const = default;
};

inline int mod(long long x, int ell) {
  const long long r = x % ell;
  return static_cast<int>(r < 0 ? r + ell : r);
}

/// |x - y|_ell = min(|x - y|, ell - |x - y|).
inline int cyclic_distance(int x, int y, int ell) {
  const int d = mod(static_cast<long long>(x) - y, ell);
  return std::min(d, ell - d);
}

/// [a, b]_ell = {a, a+1, ..., b} mod ell.
struct CircularInterval {
  int a = 0;
  int b = 0;
  int ell = 1;

  int size() const { return mod(static_cast<long long>(b) - a, ell) + 1; }
  bool contains(int x) const { return mod(static_cast<long long>(x) - a, ell) < size(); }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      out.push_back(mod(static_cast<long long>(a) + i, ell));
    return out;
  }

  bool intersects(const CircularInterval &o) const {
    return mod(static_cast<long long>(o.a) - a, ell) < size() ||
           mod(static_cast<long long>(a) - o.a, ell) < o.size();
  }

  bool operator==(const CircularInterval &) const = default;
};

/// c + p[a, b]_ell = {c + a p, c + (a+1) p, ..., c + b p} mod ell, with a <= b.
struct PSet {
  int c = 0;
  int p = 1;
  int a = 0;
  int b = 0;
  int ell = 1;

  std::vector<int> elements() const {
    std::vector<int> out;
    for (long long j = a; j <= b; ++j)
      out.push_back(mod(c + j * p, ell));
    return out;
  }
};

/// True iff `values` (as a set) equals {s, s+p, ..., s+(k-1)p} mod ell for
/// some s. Duplicates make it false.
inline bool is_p_set(std::vector<int> values, int p, int ell) {
  if (values.empty())
    return true;
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    return false;
  const int k = static_cast<int>(values.size());
  for (int s : values) {
    std::vector<int> gen;
    gen.reserve(k);
    for (int j = 0; j < k; ++j)
      gen.push_back(mod(s + static_cast<long long>(j) * p, ell));
    std::sort(gen.begin(), gen.end());
    if (gen == values)
      return true;
  }
  return false;
}

inline bool is_circular_interval(const std::vector<int> &values, int ell) {
  return is_p_set(values, 1, ell);
}

inline bool is_integer_interval(std::vector<int> values) {
  if (values.empty())
    return true;
  std::sort(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] != values[i - 1] + 1)
      return false;
  return true;
}

struct Violation {
  int u;
  int v;
  int distance;
  int required;
  int actual;

  bool operator==(const Violation &) const = default;
};

/// Throws std::invalid_argument on a length mismatch or an out-of-range label.
inline void check_label_range(const RootedTree &t, const Labelling &f) {
  if (static_cast<int>(f.labels.size()) != t.size())
    throw std::invalid_argument("labelling has " + std::to_string(f.labels.size()) +
                                " labels for a tree on " + std::to_string(t.size()) + " vertices");
  if (f.mode == Mode::Cyclic && f.ell < 1)
    throw std::invalid_argument("cyclic modulus must be at least 1");
  const int hi = f.mode == Mode::Linear ? f.ell : f.ell - 1;
  for (std::size_t v = 0; v < f.labels.size(); ++v)
    if (f.labels[v] < 0 || f.labels[v] > hi)
      throw std::invalid_argument("label " + std::to_string(f.labels[v]) + " of vertex " +
                                  std::to_string(v) + " outside [0, " + std::to_string(hi) + "]");
}

inline int label_distance(const Labelling &f, int x, int y) {
  return f.mode == Mode::Linear ? std::abs(x - y) : cyclic_distance(x, y, f.ell);
}

/// Every pair at distance 1..3 whose label separation falls short, reported
/// once with u < v, ordered by u, then distance, then v.
inline std::vector<Violation> validate(const RootedTree &t, const Labelling &f,
                                       const SeparationParams &params) {
  check_label_range(t, f);
  std::vector<Violation> out;
  for (int u = 0; u < t.size(); ++u)
    for (const auto &[v, d] : dist3_neighborhood(t, u)) {
      if (v < u)
        continue;
      const int actual = label_distance(f, f.labels[u], f.labels[v]);
      const int required = params.at(d);
      if (actual < required)
        out.push_back({u, v, d, required, actual});
    }
  return out;
}

inline bool is_valid(const RootedTree &t, const Labelling &f, const SeparationParams &params) {
  return validate(t, f, params).empty();
}

inline std::vector<int> neighbour_labels(const RootedTree &t, const Labelling &f, int u) {
  std::vector<int> out;
  for (int w : t.neighbours(u))
    out.push_back(f.labels[w]);
  return out;
}

/// Every f(N(u)) is duplicate-free and an integer interval (linear) or a
/// circular interval mod ell (cyclic).
inline bool is_super_elegant(const RootedTree &t, const Labelling &f) {
  check_label_range(t, f);
  for (int u = 0; u < t.size(); ++u) {
    auto labels = neighbour_labels(t, f, u);
    const bool ok = f.mode == Mode::Linear ? is_integer_interval(labels)
                                           : is_circular_interval(labels, f.ell);
    if (!ok)
      return false;
  }
  return true;
}

/// One interval per vertex; empty for an isolated vertex. Intervals live
/// mod (ell + 1) for linear labellings and mod ell for cyclic ones.
struct EleganceCertificate {
  std::vector<std::optional<CircularInterval>> intervals;
};

inline int elegance_modulus(const Labelling &f) {
  return f.mode == Mode::Linear ? f.ell + 1 : f.ell;
}

/// Checks f(N(u)) ⊆ I_u for every u and I_u ∩ I_v = ∅ on every edge.
inline bool certificate_holds(const RootedTree &t, const Labelling &f,
                              const EleganceCertificate &cert) {
  if (static_cast<int>(cert.intervals.size()) != t.size())
    return false;
  const int modulus = elegance_modulus(f);
  for (int u = 0; u < t.size(); ++u) {
    const auto &iu = cert.intervals[u];
    if (!iu) {
      if (t.degree(u) != 0)
        return false;
      continue;
    }
    if (iu->ell != modulus)
      return false;
    for (int x : neighbour_labels(t, f, u))
      if (!iu->contains(x))
        return false;
    if (u != 0) {
      const auto &ip = cert.intervals[t.parent(u)];
      if (ip && ip->intersects(*iu))
        return false;
    }
  }
  return true;
}

namespace detail {

/// Inclusion-minimal circular intervals containing `values`: one per gap
/// between cyclically consecutive values, obtained by deleting that gap.
/// Ordered by preference: for linear labellings the non-wrapping hull first,
/// then larger gaps (shorter intervals) first.
inline std::vector<CircularInterval> minimal_intervals(std::vector<int> values, int modulus,
                                                       bool linear) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<CircularInterval> out;
  if (values.empty())
    return out;
  const int k = static_cast<int>(values.size());
  if (k == modulus)
    return {CircularInterval{0, modulus - 1, modulus}};
  struct Candidate {
    int gap;
    bool hull;
    CircularInterval interval;
  };
  std::vector<Candidate> cands;
  for (int i = 0; i < k; ++i) {
    const int lo = values[i];
    const int hi = values[(i + 1) % k];
    const int gap = mod(static_cast<long long>(hi) - lo - 1, modulus);
    if (k > 1 && gap == 0)
      continue;
    // Deleting the gap (lo, hi) leaves the arc from hi round to lo.
    const bool hull = (i == k - 1);
    cands.push_back({gap, hull, CircularInterval{hi, lo, modulus}});
  }
  std::stable_sort(cands.begin(), cands.end(), [&](const Candidate &x, const Candidate &y) {
    if (linear && x.hull != y.hull)
      return x.hull;
    return x.gap > y.gap;
  });
  for (auto &c : cands)
    out.push_back(c.interval);
  return out;
}

} // namespace detail

/// Shortest circular interval containing `values` mod `modulus`.
inline std::optional<CircularInterval> shortest_covering_interval(const std::vector<int> &values,
                                                                  int modulus) {
  auto cands = detail::minimal_intervals(values, modulus, false);
  if (cands.empty())
    return std::nullopt;
  return cands.front();
}

/// Finds an elegance certificate if one exists.
///
/// Any valid I_u contains one of the inclusion-minimal intervals around
/// f(N(u)), so it is enough to choose one minimal interval per vertex. Edge
/// compatibility on a tree is then solved exactly by a leaves-up pass followed
/// by a root-down choice.
inline std::optional<EleganceCertificate> check_elegance(const RootedTree &t, const Labelling &f) {
  check_label_range(t, f);
  const int n = t.size();
  const int modulus = elegance_modulus(f);
  const bool linear = f.mode == Mode::Linear;
  std::vector<std::vector<CircularInterval>> cands(n);
  for (int u = 0; u < n; ++u)
    cands[u] = detail::minimal_intervals(neighbour_labels(t, f, u), modulus, linear);

  if (n == 1)
    return EleganceCertificate{{std::nullopt}};

  // feasible[u][i]: candidate i at u extends to a certificate of u's subtree.
  std::vector<std::vector<char>> feasible(n);
  for (int u = n - 1; u >= 0; --u) {
    feasible[u].assign(cands[u].size(), 1);
    for (std::size_t i = 0; i < cands[u].size(); ++i)
      for (int w : t.children(u)) {
        bool any = false;
        for (std::size_t j = 0; j < cands[w].size() && !any; ++j)
          any = feasible[w][j] && !cands[u][i].intersects(cands[w][j]);
        if (!any) {
          feasible[u][i] = 0;
          break;
        }
      }
  }

  std::vector<int> choice(n, -1);
  for (std::size_t i = 0; i < cands[0].size(); ++i)
    if (feasible[0][i]) {
      choice[0] = static_cast<int>(i);
      break;
    }
  if (choice[0] < 0)
    return std::nullopt;
  for (int u = 1; u < n; ++u) {
    const auto &ip = cands[t.parent(u)][choice[t.parent(u)]];
    for (std::size_t j = 0; j < cands[u].size(); ++j)
      if (feasible[u][j] && !ip.intersects(cands[u][j])) {
        choice[u] = static_cast<int>(j);
        break;
      }
  }

  EleganceCertificate cert;
  cert.intervals.resize(n);
  for (int u = 0; u < n; ++u)
    cert.intervals[u] = cands[u][choice[u]];
  return cert;
}

} // namespace treelabel
