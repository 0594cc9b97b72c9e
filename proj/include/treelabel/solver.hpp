#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "treelabel/bounds.hpp"
#include "treelabel/labelling.hpp"
#include "treelabel/tree.hpp"

namespace treelabel {

struct SolverConfig {
  std::uint64_t node_budget = 100'000'000;
  std::optional<int> start_lower; // must be a sound lower bound if given
  bool confirm_minimality = true;  // search value-1 even when below the start
};

enum class Feasibility { Feasible, Infeasible, BudgetExceeded };

struct FeasibilityResult {
  Feasibility status = Feasibility::Infeasible;
  std::optional<Labelling> witness;
  std::uint64_t nodes = 0;
};

struct OracleResult {
  Quantity quantity = Quantity::Lambda;
  std::optional<int> value;
  std::optional<Labelling> witness;
  std::uint64_t nodes_explored = 0;
  bool budget_hit = false;
  int lower = 0;                  // every span/modulus below this is infeasible
  bool minimality_searched = false; // value-1 was shown infeasible by search
};

namespace detail {

/// Depth-first search for a labelling with span (linear) or modulus (cyclic)
/// `ell`, with forward checking over distance-3 neighbourhoods.
///
/// The tree is re-rooted at its first maximum-degree vertex and searched in
/// breadth-first order. Symmetries removed, each sound for any valid
/// labelling:
///  - linear: f -> ell - f, so the root label is at most ceil(ell/2);
///  - cyclic: rotation fixes the root at 0, and reflection puts the first
///    root child at or below floor(ell/2);
///  - siblings with isomorphic subtrees can be permuted, so their labels are
///    taken non-decreasing in vertex order.
class LabelSearch {
public:
  LabelSearch(const RootedTree &t, const SeparationParams &params, Mode mode)
      : params_(params), mode_(mode) {
    const TreeStats s = tree_stats(t);
    int v0 = 0;
    for (int v = 0; v < t.size(); ++v)
      if (t.degree(v) == s.delta) {
        v0 = v;
        break;
      }
    Rerooted rr = reroot(t, v0);
    tree_ = std::move(rr.tree);
    original_ = std::move(rr.original);
    const int n = tree_.size();

    forward_.assign(n, {});
    for (int u = 0; u < n; ++u)
      for (const auto &[v, d] : dist3_neighborhood(tree_, u)) {
        const int sep = params_.at(d);
        if (v > u && sep > 0)
          forward_[u].push_back({v, sep});
      }

    // Canonical codes of rooted subtrees, leaves up.
    std::vector<int> code(n, 0);
    std::map<std::vector<int>, int> ids;
    for (int u = n - 1; u >= 0; --u) {
      std::vector<int> key;
      for (int c : tree_.children(u))
        key.push_back(code[c]);
      std::sort(key.begin(), key.end());
      auto [it, inserted] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
      code[u] = it->second;
    }
    prev_twin_.assign(n, -1);
    for (int u = 0; u < n; ++u) {
      auto kids = tree_.children(u);
      for (std::size_t i = 0; i < kids.size(); ++i)
        for (std::size_t j = i; j-- > 0;)
          if (code[kids[j]] == code[kids[i]]) {
            prev_twin_[kids[i]] = kids[j];
            break;
          }
    }
  }

  FeasibilityResult run(int ell, std::uint64_t budget) {
    FeasibilityResult res;
    const int n = tree_.size();
    ell_ = ell;
    domain_ = mode_ == Mode::Linear ? ell + 1 : ell;
    if (domain_ < 1) {
      res.status = Feasibility::Infeasible;
      return res;
    }
    budget_ = budget;
    nodes_ = 0;
    aborted_ = false;
    ban_.assign(static_cast<std::size_t>(n) * domain_, 0);
    avail_.assign(n, domain_);
    label_.assign(n, -1);

    // Root and first-child restrictions from the symmetry breaking.
    if (mode_ == Mode::Linear) {
      for (int x = (ell + 1) / 2 + 1; x < domain_; ++x)
        ban(0, x);
    } else {
      for (int x = 1; x < domain_; ++x)
        ban(0, x);
      if (n > 1 && tree_.parent(1) == 0)
        for (int x = ell / 2 + 1; x < domain_; ++x)
          ban(1, x);
    }

    const bool found = dfs(0);
    res.nodes = nodes_;
    if (aborted_) {
      res.status = Feasibility::BudgetExceeded;
    } else if (found) {
      res.status = Feasibility::Feasible;
      Labelling f{mode_, ell, std::vector<int>(n, 0)};
      for (int i = 0; i < n; ++i)
        f.labels[original_[i]] = label_[i];
      res.witness = std::move(f);
    } else {
      res.status = Feasibility::Infeasible;
    }
    return res;
  }

private:
  struct Arc {
    int vertex;
    int sep;
  };

  int &cell(int v, int x) { return ban_[static_cast<std::size_t>(v) * domain_ + x]; }

  void ban(int v, int x) {
    if (cell(v, x)++ == 0)
      --avail_[v];
  }
  void unban(int v, int x) {
    if (--cell(v, x) == 0)
      ++avail_[v];
  }

  /// Applies (sign = +1) or removes (sign = -1) the exclusions caused by
  /// giving vertex u label x. Returns false if some domain became empty.
  bool propagate(int u, int x, int sign) {
    bool ok = true;
    for (const Arc &arc : forward_[u]) {
      const int v = arc.vertex;
      if (mode_ == Mode::Linear) {
        const int lo = std::max(0, x - arc.sep + 1);
        const int hi = std::min(domain_ - 1, x + arc.sep - 1);
        for (int y = lo; y <= hi; ++y)
          sign > 0 ? ban(v, y) : unban(v, y);
      } else if (2 * arc.sep - 1 >= ell_) {
        for (int y = 0; y < domain_; ++y)
          sign > 0 ? ban(v, y) : unban(v, y);
      } else {
        for (int d = -(arc.sep - 1); d <= arc.sep - 1; ++d) {
          const int y = mod(static_cast<long long>(x) + d, ell_);
          sign > 0 ? ban(v, y) : unban(v, y);
        }
      }
      if (sign > 0 && avail_[v] == 0)
        ok = false;
    }
    return ok;
  }

  bool dfs(int i) {
    const int n = tree_.size();
    if (i == n)
      return true;
    const int lo = prev_twin_[i] >= 0 ? label_[prev_twin_[i]] : 0;
    for (int x = lo; x < domain_; ++x) {
      if (cell(i, x) != 0)
        continue;
      if (++nodes_ > budget_) {
        aborted_ = true;
        return false;
      }
      label_[i] = x;
      const bool ok = propagate(i, x, +1);
      if (ok && dfs(i + 1))
        return true;
      propagate(i, x, -1);
      label_[i] = -1;
      if (aborted_)
        return false;
    }
    return false;
  }

  RootedTree tree_;
  std::vector<int> original_;
  SeparationParams params_;
  Mode mode_;
  std::vector<std::vector<Arc>> forward_;
  std::vector<int> prev_twin_;

  int ell_ = 0;
  int domain_ = 0;
  std::uint64_t budget_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<int> ban_;
  std::vector<int> avail_;
  std::vector<int> label_;
};

/// Elementary lower bounds: the 2 + d(x)+d(y) - 2 vertices of N(x) ∪ N(y)
/// are pairwise within distance 3, and a vertex z with its d(z) neighbours
/// forces h1 + (d-1) h2 (linear) or 2 h1 + (d-1) h2 (cyclic, with f(z) = 0).
inline int generic_lower_bound(const RootedTree &t, const SeparationParams &sp, Mode mode) {
  const int n = t.size();
  if (n == 1)
    return mode == Mode::Linear ? 0 : 1;
  const int hmin = std::min({sp.h1, sp.h2, sp.h3});
  long long lin = sp.h1;
  for (int v = 0; v < n; ++v) {
    const long long d = t.degree(v);
    lin = std::max(lin, (d - 1) * sp.h2 + (sp.h1 >= sp.h2 ? sp.h1 : 0));
    if (v != 0)
      lin = std::max(lin, static_cast<long long>(d + t.degree(t.parent(v)) - 1) * hmin);
  }
  if (mode == Mode::Linear)
    return static_cast<int>(lin);
  long long cyc = std::max<long long>(lin + 1, 2LL * sp.h1);
  for (int v = 0; v < n; ++v)
    cyc = std::max(cyc, 2LL * sp.h1 + (t.degree(v) - 1LL) * sp.h2);
  return static_cast<int>(std::max<long long>(cyc, 1));
}

inline OracleResult exact_value(const RootedTree &t, const SeparationParams &sp, Mode mode,
                                const SolverConfig &cfg) {
  if (sp.h1 < 0 || sp.h2 < 0 || sp.h3 < 0)
    throw std::invalid_argument("separations must be nonnegative");
  if (cfg.node_budget < 1)
    throw std::invalid_argument("node budget must be at least 1");
  OracleResult res;
  res.quantity = mode == Mode::Linear ? Quantity::Lambda : Quantity::Sigma;
  const int hmax = std::max({sp.h1, sp.h2, sp.h3, 1});
  // Labels 0, hmax, 2 hmax, ... always work.
  const int cap = mode == Mode::Linear ? (t.size() - 1) * hmax : t.size() * hmax;
  const int floor = mode == Mode::Linear ? 0 : 1;
  const int start = std::max(cfg.start_lower.value_or(generic_lower_bound(t, sp, mode)), floor);
  int ell = start;

  LabelSearch search(t, sp, mode);
  std::uint64_t remaining = cfg.node_budget;
  for (; ell <= std::max(cap, ell); ++ell) {
    FeasibilityResult fr = search.run(ell, remaining);
    res.nodes_explored += fr.nodes;
    remaining = fr.nodes >= remaining ? 0 : remaining - fr.nodes;
    if (fr.status == Feasibility::BudgetExceeded) {
      res.budget_hit = true;
      res.lower = ell;
      return res;
    }
    if (fr.status == Feasibility::Feasible) {
      res.value = ell;
      res.lower = ell;
      res.witness = std::move(fr.witness);
      res.minimality_searched = ell > start;
      if (!res.minimality_searched && cfg.confirm_minimality && ell - 1 >= floor && remaining > 0) {
        const FeasibilityResult below = search.run(ell - 1, remaining);
        res.nodes_explored += below.nodes;
        if (below.status == Feasibility::Feasible)
          throw std::logic_error("starting lower bound is not sound");
        res.minimality_searched = below.status == Feasibility::Infeasible;
      }
      if (ell - 1 < floor)
        res.minimality_searched = true;
      return res;
    }
    if (remaining == 0) {
      res.budget_hit = true;
      res.lower = ell + 1;
      return res;
    }
  }
  throw std::logic_error("no labelling found up to the trivial upper bound");
}

} // namespace detail

/// Decides whether a labelling with span (linear) or modulus (cyclic) `ell`
/// exists; exhaustive within the node budget.
inline FeasibilityResult feasibility(const RootedTree &t, const SeparationParams &params, Mode mode,
                                     int ell, const SolverConfig &cfg = {}) {
  if (ell < (mode == Mode::Linear ? 0 : 1))
    throw std::invalid_argument("span must be nonnegative and modulus at least 1");
  detail::LabelSearch search(t, params, mode);
  return search.run(ell, cfg.node_budget);
}

/// Minimum span of an L(h1,h2,h3) labelling, scanning upward from a sound
/// lower bound.
inline OracleResult exact_lambda(const RootedTree &t, int h1, int h2, int h3,
                                 const SolverConfig &cfg = {}) {
  return detail::exact_value(t, {h1, h2, h3}, Mode::Linear, cfg);
}

/// Minimum modulus of a C(h1,h2,h3) labelling. Feasibility is not assumed to
/// be monotone in the modulus; the first feasible value is reported.
inline OracleResult exact_sigma(const RootedTree &t, int h1, int h2, int h3,
                                const SolverConfig &cfg = {}) {
  return detail::exact_value(t, {h1, h2, h3}, Mode::Cyclic, cfg);
}

} // namespace treelabel
