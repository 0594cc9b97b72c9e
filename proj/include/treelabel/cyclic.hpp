#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "treelabel/bounds.hpp"
#include "treelabel/error.hpp"
#include "treelabel/labelling.hpp"
#include "treelabel/linear.hpp"
#include "treelabel/tree.hpp"

namespace treelabel {

namespace detail {

/// Picks `count` labels g+p, g+2p, ... (while allowed), then g-p, g-2p, ...
/// so that together with g they form a p-set mod ell. Returned in ascending
/// cyclic order starting just above g. Throws if fewer are available.
inline std::vector<int> extend_progression(int g, int p, int ell, int count,
                                           const std::function<bool(int)> &allowed) {
  std::vector<int> picked;
  const int limit = ell / std::max(p, 1);
  for (int j = 1; j <= limit && static_cast<int>(picked.size()) < count; ++j) {
    const int x = mod(g + static_cast<long long>(j) * p, ell);
    if (x == g || !allowed(x))
      break;
    picked.push_back(x);
  }
  for (int j = 1; j <= limit && static_cast<int>(picked.size()) < count; ++j) {
    const int x = mod(g - static_cast<long long>(j) * p, ell);
    if (x == g || !allowed(x) || std::find(picked.begin(), picked.end(), x) != picked.end())
      break;
    picked.push_back(x);
  }
  if (static_cast<int>(picked.size()) < count)
    throw std::logic_error("frontier expansion found only " + std::to_string(picked.size()) +
                           " of " + std::to_string(count) + " labels");
  std::sort(picked.begin(), picked.end(), [&](int x, int y) {
    return mod(static_cast<long long>(x) - g, ell) < mod(static_cast<long long>(y) - g, ell);
  });
  return picked;
}

inline void assign_children(const RootedTree &t, Labelling &f, int u,
                            const std::vector<int> &labels) {
  auto kids = t.children(u);
  for (std::size_t j = 0; j < kids.size(); ++j)
    f.labels[kids[j]] = labels[j];
}

/// Labels the children of w (level >= 2) with v = parent(w):
/// A = f(N(v)) ∪ {f(v)}, B = [f(w)-(h-1), f(w)+(h-1)]_ell and a label is
/// usable iff it is outside B and at cyclic distance >= p from all of A.
/// Returns |X|, the number of usable labels.
inline int expand_frontier(const RootedTree &t, Labelling &f, int w, int h, int p) {
  const int ell = f.ell;
  const int v = t.parent(w);
  std::vector<int> a = neighbour_labels(t, f, v);
  a.push_back(f.labels[v]);
  const int fw = f.labels[w];
  auto allowed = [&](int x) {
    if (cyclic_distance(x, fw, ell) < h)
      return false;
    for (int y : a)
      if (cyclic_distance(x, y, ell) < p)
        return false;
    return true;
  };
  int usable = 0;
  for (int x = 0; x < ell; ++x)
    usable += allowed(x) ? 1 : 0;
  const int count = static_cast<int>(t.children(w).size());
  if (count > 0)
    assign_children(t, f, w, extend_progression(f.labels[v], p, ell, count, allowed));
  return usable;
}

inline Construction finish_cyclic(const RootedTree &t, Labelling f, const char *tag) {
  Construction out;
  out.certificate = hull_certificate(t, f);
  out.labelling = std::move(f);
  out.source = tag;
  return out;
}

inline void require_cyclic_shape(const TreeStats &s) {
  if (s.diam < 3)
    throw NotApplicable("cyclic constructions require diameter at least 3");
  if (s.delta < 3)
    throw NotApplicable("cyclic constructions require maximum degree at least 3");
}

} // namespace detail

/// C(h,p,p) labelling with modulus 2h + Δp - 1 for h >= Δp.
///
/// Root 0, its i-th child h+(i-1)p, the children of that child drawn from
/// ((2h+p-1) + p[i-1, m+i-1]) \ {0} with m = Δ-1; deeper vertices by frontier
/// expansion so every f(N(u)) stays a p-set.
inline Construction label_cyclic_large(const RootedTree &t, int h, int p) {
  if (h < 1 || p < 1)
    throw std::invalid_argument("cyclic labelling requires h >= 1 and p >= 1");
  const TreeStats s = tree_stats(t);
  detail::require_cyclic_shape(s);
  const int delta = s.delta;
  if (h < delta * p)
    throw NotApplicable("large-separation construction requires h >= delta * p");
  const int m = delta - 1;
  const int ell = 2 * h + delta * p - 1;
  Labelling f{Mode::Cyclic, ell, std::vector<int>(t.size(), 0)};

  auto kids0 = t.children(0);
  for (std::size_t i = 1; i <= kids0.size(); ++i)
    f.labels[kids0[i - 1]] = h + static_cast<int>(i - 1) * p;

  Construction out;
  for (int u = 1; u < t.size(); ++u) {
    const int count = static_cast<int>(t.children(u).size());
    if (t.level(u) == 1) {
      const int i = static_cast<int>(std::find(kids0.begin(), kids0.end(), u) - kids0.begin()) + 1;
      std::vector<int> set;
      for (int j = i - 1; j <= m + i - 1; ++j)
        set.push_back(mod(2LL * h + p - 1 + static_cast<long long>(j) * p, ell));
      auto in_set = [&](int x) {
        return x != 0 && std::find(set.begin(), set.end(), x) != set.end();
      };
      if (count > 0)
        detail::assign_children(t, f, u, detail::extend_progression(0, p, ell, count, in_set));
    } else {
      const int usable = detail::expand_frontier(t, f, u, h, p);
      if (count > 0)
        out.min_frontier = out.min_frontier < 0 ? usable : std::min(out.min_frontier, usable);
    }
  }
  const int frontier = out.min_frontier;
  out = detail::finish_cyclic(t, std::move(f), source::kCyclicLargeSeparation);
  out.min_frontier = frontier;
  return out;
}

/// Root chosen for the C(h,1,1) construction: a neighbour of a maximum-degree
/// vertex, or when Δ₂ = 2Δ a neighbour of one end x of a heavy edge xy other
/// than y. Ties go to the smallest index.
inline int h11_root(const RootedTree &t) {
  const TreeStats s = tree_stats(t);
  const int n = t.size();
  if (s.delta2 < 2 * s.delta) {
    for (int x = 0; x < n; ++x)
      if (t.degree(x) == s.delta) {
        auto nb = t.neighbours(x);
        return *std::min_element(nb.begin(), nb.end());
      }
  }
  for (int x = 0; x < n; ++x) {
    if (t.degree(x) != s.delta)
      continue;
    auto nb = t.neighbours(x);
    std::sort(nb.begin(), nb.end());
    for (int y : nb)
      if (t.degree(y) == s.delta) {
        for (int r : nb)
          if (r != y)
            return r;
      }
  }
  return 0;
}

/// C(h,1,1) labelling of span max{h+2Δ-1, 2h+Δ-1}. For h >= Δ this is the
/// large-separation construction; otherwise the tree is re-rooted (see
/// h11_root) and labelled with modulus h + 2Δ - 1 so that every f(N(u)) is a
/// circular interval.
inline Construction label_cyclic_h11(const RootedTree &t, int h) {
  if (h < 1)
    throw std::invalid_argument("cyclic labelling requires h >= 1");
  const TreeStats s = tree_stats(t);
  detail::require_cyclic_shape(s);
  const int delta = s.delta;
  if (h >= delta) {
    auto out = label_cyclic_large(t, h, 1);
    out.source = source::kCyclicH11LargeH;
    return out;
  }

  const int root = h11_root(t);
  const Rerooted rr = reroot(t, root);
  const RootedTree &rt = rr.tree;
  const int ell = h + 2 * delta - 1;
  Labelling g{Mode::Cyclic, ell, std::vector<int>(rt.size(), 0)};

  auto kids0 = rt.children(0);
  const int d0 = static_cast<int>(kids0.size());
  for (int i = 1; i <= d0; ++i)
    g.labels[kids0[i - 1]] = h + i - 1;
  // The split follows the root degree of the T_{Δ-1,k} or T^_{Δ-1,k} that
  // contains T, so a root with fewer than Δ-1 children counts as Δ-1.
  const int split = std::max(0, std::max(d0, delta - 1) - h + 1);

  int min_frontier = -1;
  for (int u = 1; u < rt.size(); ++u) {
    const int count = static_cast<int>(rt.children(u).size());
    if (rt.level(u) == 1) {
      const int i = u; // children of the root are vertices 1..d0 after re-rooting
      const CircularInterval range = i <= split
                                         ? CircularInterval{h + delta, h + 2 * delta - 2, ell}
                                         : CircularInterval{2 * h + i - 1, 2 * h + delta + i - 2,
                                                            ell};
      auto in_range = [&](int x) { return x != 0 && range.contains(x); };
      if (count > 0)
        detail::assign_children(rt, g, u, detail::extend_progression(0, 1, ell, count, in_range));
    } else {
      const int usable = detail::expand_frontier(rt, g, u, h, 1);
      if (count > 0) {
        if (usable < delta - 1)
          throw std::logic_error("frontier has " + std::to_string(usable) +
                                 " usable labels, fewer than delta - 1");
        min_frontier = min_frontier < 0 ? usable : std::min(min_frontier, usable);
      }
    }
  }

  Labelling f{Mode::Cyclic, ell, std::vector<int>(t.size(), 0)};
  for (int i = 0; i < rt.size(); ++i)
    f.labels[rr.original[i]] = g.labels[i];
  auto out = detail::finish_cyclic(t, std::move(f), source::kCyclicH11General);
  out.root = root;
  out.min_frontier = min_frontier;
  return out;
}

/// Explicit optimal labellings of T_{m,2} and T^_{m,2}.
///
/// Large-h (Complete h >= mp, Regular h >= (m+1)p): modulus 2h+mp, the i-th
/// root child h+(i-1)p, its children (2h + p[i-1, m+i-1]) \ {0}.
/// Small-h with p = 1 and h <= m: modulus h+2m (Complete) or h+2m+1
/// (Regular), the i-th root child h+i-1, its children from the upper block
/// for i up to the split index and from [2h+i-1, 2h+m+i-1] \ {0} after it.
inline Construction label_cyclic_depth2(const FamilySpec &spec, int h, int p) {
  if (spec.k != 2)
    throw NotApplicable("depth-2 construction needs k = 2");
  if (spec.m < 2)
    throw std::invalid_argument("depth-2 construction requires m >= 2");
  if (h < 1 || p < 1)
    throw std::invalid_argument("cyclic labelling requires h >= 1 and p >= 1");
  const int m = spec.m;
  const bool complete = spec.family == Family::CompleteMary;
  const RootedTree t = build_family(spec);
  auto kids0 = t.children(0);
  const int r = static_cast<int>(kids0.size());

  const bool large = complete ? h >= m * p : h >= (m + 1) * p;
  if (large) {
    const int ell = 2 * h + m * p;
    Labelling f{Mode::Cyclic, ell, std::vector<int>(t.size(), 0)};
    for (int i = 1; i <= r; ++i) {
      const int ui = kids0[i - 1];
      f.labels[ui] = h + (i - 1) * p;
      std::vector<int> set;
      for (int j = i - 1; j <= m + i - 1; ++j) {
        const int x = mod(2LL * h + static_cast<long long>(j) * p, ell);
        if (x != 0)
          set.push_back(x);
      }
      std::sort(set.begin(), set.end());
      detail::assign_children(t, f, ui, set);
    }
    return detail::finish_cyclic(t, std::move(f), source::kCyclicDepth2LargeH);
  }
  if (p != 1 || h > m)
    throw NotApplicable("no depth-2 construction for these parameters");

  const int ell = complete ? h + 2 * m : h + 2 * m + 1;
  const int split = complete ? m - h + 1 : m - h + 2;
  const CircularInterval upper = complete ? CircularInterval{h + m, h + 2 * m - 1, ell}
                                          : CircularInterval{h + m + 1, h + 2 * m, ell};
  Labelling f{Mode::Cyclic, ell, std::vector<int>(t.size(), 0)};
  for (int i = 1; i <= r; ++i) {
    const int ui = kids0[i - 1];
    f.labels[ui] = h + i - 1;
    std::vector<int> set;
    if (i <= split) {
      set = upper.elements();
    } else {
      for (int x : CircularInterval{2 * h + i - 1, 2 * h + m + i - 1, ell}.elements())
        if (x != 0)
          set.push_back(x);
    }
    std::sort(set.begin(), set.end());
    if (static_cast<int>(set.size()) != m)
      throw std::logic_error("depth-2 child label block has the wrong size");
    detail::assign_children(t, f, ui, set);
  }
  return detail::finish_cyclic(t, std::move(f), source::kCyclicH11Depth2);
}

} // namespace treelabel
