#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "treelabel/bounds.hpp"
#include "treelabel/error.hpp"
#include "treelabel/labelling.hpp"
#include "treelabel/tree.hpp"

namespace treelabel {

/// A constructed labelling together with the elegance certificate the
/// construction guarantees and the tag of the result it realises.
struct Construction {
  Labelling labelling;
  EleganceCertificate certificate;
  std::string source;
  int root = 0;      // vertex used as the construction root (original indexing)
  int min_frontier = -1; // smallest |X| seen during frontier expansion, -1 if none
};

/// The two label palettes of the linear construction:
/// A0 = {0, p, ..., (D-1)p} and A1 = {h+(D-1)p, ..., h+(2D-2)p}.
struct Palette {
  std::vector<int> a0;
  std::vector<int> a1;

  static Palette make(int delta, int h, int p) {
    Palette pal;
    for (int j = 0; j < delta; ++j) {
      pal.a0.push_back(j * p);
      pal.a1.push_back(h + (delta - 1 + j) * p);
    }
    return pal;
  }
};

namespace detail {

/// Certificate from per-vertex hulls of f(N(u)), used by the explicit
/// constructions whose neighbourhoods are known to be separated.
inline EleganceCertificate hull_certificate(const RootedTree &t, const Labelling &f) {
  EleganceCertificate cert;
  cert.intervals.resize(t.size());
  const int modulus = elegance_modulus(f);
  for (int u = 0; u < t.size(); ++u) {
    auto labels = neighbour_labels(t, f, u);
    if (labels.empty())
      continue;
    if (f.mode == Mode::Linear) {
      auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
      cert.intervals[u] = CircularInterval{*lo, *hi, modulus};
    } else {
      cert.intervals[u] = shortest_covering_interval(labels, modulus);
    }
  }
  return cert;
}

inline int max_label(const std::vector<int> &labels) {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
}

/// Two-palette level-by-level labelling. `root_palette` overrides the labels
/// offered to the root's children (A1 by default).
inline Construction label_linear_impl(const RootedTree &t, int h, int p, int delta,
                                      const std::vector<int> *root_palette) {
  const Palette pal = Palette::make(delta, h, p);
  const int n = t.size();
  Labelling f{Mode::Linear, 0, std::vector<int>(n, 0)};
  for (int u = 0; u < n; ++u) {
    const int t_level = t.level(u);
    const auto &base = (t_level == 0 && root_palette) ? *root_palette
                       : (t_level % 2 == 0)           ? pal.a1
                                                      : pal.a0;
    const int skip = u == 0 ? -1 : f.labels[t.parent(u)];
    auto kids = t.children(u);
    std::size_t next = 0;
    for (int c : kids) {
      while (next < base.size() && base[next] == skip)
        ++next;
      if (next >= base.size())
        throw std::logic_error("palette exhausted; degree exceeds the palette size");
      f.labels[c] = base[next++];
    }
  }
  f.ell = max_label(f.labels);

  // Neighbours of a vertex on level t all use the palette of parity t+1.
  Construction out;
  out.labelling = f;
  out.certificate.intervals.resize(n);
  const int modulus = elegance_modulus(f);
  const CircularInterval hull0{pal.a0.front(), pal.a0.back(), modulus};
  const CircularInterval hull1{pal.a1.front(), pal.a1.back(), modulus};
  for (int u = 0; u < n; ++u)
    if (t.degree(u) > 0)
      out.certificate.intervals[u] = (t.level(u) % 2 == 0) ? hull1 : hull0;
  out.source = source::kLinearGeneral;
  // The palette hulls may reach past the span actually used; fall back to
  // the tight hulls in that case so the certificate lives mod (span + 1).
  if (pal.a1.back() > f.ell)
    out.certificate = hull_certificate(t, f);
  return out;
}

} // namespace detail

/// Two-palette L(h,p,p) labelling: root 0, root's children from A1, then
/// alternately A0 and A1 minus the grandparent's label. Labels are handed
/// out in ascending order to children in ascending order.
///
/// `delta` defaults to the maximum degree of t; a larger value widens both
/// palettes. Span is at most h + 2(delta-1)p.
inline Construction label_linear(const RootedTree &t, int h, int p,
                                 std::optional<int> delta = std::nullopt) {
  if (p < 1 || h < p)
    throw std::invalid_argument("linear labelling requires h >= p >= 1");
  if (t.size() < 2)
    throw std::invalid_argument("linear labelling requires at least two vertices");
  const int tree_delta = tree_stats(t).delta;
  const int d = delta.value_or(tree_delta);
  if (d < tree_delta)
    throw std::invalid_argument("palette degree below the tree's maximum degree");
  return detail::label_linear_impl(t, h, p, d, nullptr);
}

/// Optimal labelling of T_{m,2} with span h + (2m-1)p: the two-palette
/// construction with the top label of A1 withheld from the root's children.
inline Construction label_linear_depth2(int m, int h, int p) {
  if (p < 1 || h < p)
    throw std::invalid_argument("linear labelling requires h >= p >= 1");
  if (m < 2)
    throw std::invalid_argument("depth-2 construction requires m >= 2");
  const RootedTree t = build_family({Family::CompleteMary, m, 2});
  Palette pal = Palette::make(m + 1, h, p);
  std::vector<int> root_palette(pal.a1.begin(), pal.a1.end() - 1);
  auto out = detail::label_linear_impl(t, h, p, m + 1, &root_palette);
  out.certificate = detail::hull_certificate(t, out.labelling);
  out.source = source::kLinearFamilyDepth2;
  return out;
}

enum class Depth3Branch { Auto, LargeH, SmallH };

/// Optimal labelling of T_{m,3} with span max{h+(2m-1)p, (2m+1)p}.
/// LargeH needs h >= 2p, SmallH needs h <= 2p; Auto picks LargeH when it can.
inline Construction label_linear_depth3(int m, int h, int p,
                                        Depth3Branch branch = Depth3Branch::Auto) {
  if (p < 1 || h < p)
    throw std::invalid_argument("linear labelling requires h >= p >= 1");
  if (m < 2)
    throw std::invalid_argument("depth-3 construction requires m >= 2");
  if (branch == Depth3Branch::Auto)
    branch = h >= 2 * p ? Depth3Branch::LargeH : Depth3Branch::SmallH;
  if (branch == Depth3Branch::LargeH && h < 2 * p)
    throw NotApplicable("large-h depth-3 branch requires h >= 2p");
  if (branch == Depth3Branch::SmallH && h > 2 * p)
    throw NotApplicable("small-h depth-3 branch requires h <= 2p");

  const RootedTree t = build_family({Family::CompleteMary, m, 3});
  const bool large = branch == Depth3Branch::LargeH;
  Labelling f{Mode::Linear, 0, std::vector<int>(t.size(), 0)};
  f.labels[0] = m * p;
  std::vector<int> level2;
  for (int j = 0; j < m; ++j)
    level2.push_back(j * p);

  auto kids0 = t.children(0);
  for (int i = 1; i <= m; ++i) {
    const int ui = kids0[i - 1];
    const int own = large ? h + (m + i - 1) * p : (m + i + 1) * p;
    f.labels[ui] = own;
    std::vector<int> level3;
    for (int j = 0; j < m + 1; ++j) {
      const int x = large ? h + (m - 1 + j) * p : (m + 1 + j) * p;
      if (x != own)
        level3.push_back(x);
    }
    auto kids1 = t.children(ui);
    for (int j = 0; j < m; ++j) {
      const int uij = kids1[j];
      f.labels[uij] = level2[j];
      auto kids2 = t.children(uij);
      for (int q = 0; q < m; ++q)
        f.labels[kids2[q]] = level3[q];
    }
  }
  f.ell = detail::max_label(f.labels);
  Construction out;
  out.labelling = f;
  out.certificate = detail::hull_certificate(t, f);
  out.source = source::kLinearFamilyDepth3;
  return out;
}

} // namespace treelabel
