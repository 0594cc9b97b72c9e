#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "treelabel/tree.hpp"

namespace treelabel {

enum class Quantity { Lambda, LambdaStar, Sigma, SigmaStar };

inline std::string to_string(Quantity q) {
  switch (q) {
  case Quantity::Lambda: return "lambda";
  case Quantity::LambdaStar: return "lambda_star";
  case Quantity::Sigma: return "sigma";
  case Quantity::SigmaStar: return "sigma_star";
  }
  return "?";
}

/// Source tags naming the result each bound comes from.
namespace source {
inline constexpr const char *kLinearGeneral = "linear-general-bounds";
inline constexpr const char *kLinearDenseComplete = "linear-dense-complete-subtree";
inline constexpr const char *kLinearDenseRegular = "linear-dense-regular-subtree";
inline constexpr const char *kLinearFamilyDepth2 = "linear-family-depth2";
inline constexpr const char *kLinearFamilyDepth3 = "linear-family-depth3";
inline constexpr const char *kLinearFamilyDeep = "linear-family-deep";
inline constexpr const char *kCyclicLargeSeparation = "cyclic-large-separation";
inline constexpr const char *kCyclicH11LargeH = "cyclic-h11-large-h";
inline constexpr const char *kCyclicH11General = "cyclic-h11-general-bounds";
inline constexpr const char *kCyclicH11DenseComplete = "cyclic-h11-dense-complete-subtree";
inline constexpr const char *kCyclicH11DenseRegular = "cyclic-h11-dense-regular-subtree";
inline constexpr const char *kCyclicDepth2LargeH = "cyclic-depth2-large-h";
inline constexpr const char *kCyclicH11Depth2 = "cyclic-h11-depth2";
inline constexpr const char *kCyclicH11Deep = "cyclic-h11-family-deep";
} // namespace source

/// Bounds on lambda (or sigma). Every bound here also holds for the elegant
/// variant: lower <= lambda <= lambda* <= upper, and `exact` pins both.
struct BoundsReport {
  Quantity quantity = Quantity::Lambda;
  long long lower = 0;
  long long upper = 0;
  std::optional<long long> exact;
  std::vector<std::string> sources;
  bool applicable = true;
  std::string reason;

  bool contains(long long value) const { return applicable && lower <= value && value <= upper; }
};

namespace detail {

inline BoundsReport not_applicable(Quantity q, std::string reason) {
  BoundsReport r;
  r.quantity = q;
  r.applicable = false;
  r.reason = std::move(reason);
  return r;
}

inline void raise_lower(BoundsReport &r, long long value, const char *tag) {
  if (value > r.lower)
    r.lower = value;
  r.sources.emplace_back(tag);
}

inline void lower_upper(BoundsReport &r, long long value, const char *tag) {
  if (value < r.upper)
    r.upper = value;
  r.sources.emplace_back(tag);
}

inline void pin(BoundsReport &r, long long value, const char *tag) {
  r.lower = std::max(r.lower, value);
  r.upper = std::min(r.upper, value);
  r.exact = value;
  r.sources.emplace_back(tag);
}

inline void settle(BoundsReport &r) {
  if (r.applicable && !r.exact && r.lower == r.upper)
    r.exact = r.lower;
}

} // namespace detail

/// Bounds on lambda_{h,p,p}(T) and lambda*_{h,p,p}(T).
inline BoundsReport lambda_bounds(const RootedTree &t, int h, int p) {
  if (p < 1 || h < p)
    return detail::not_applicable(Quantity::Lambda, "requires h >= p >= 1");
  const TreeStats s = tree_stats(t);
  if (s.diam < 3)
    return detail::not_applicable(Quantity::Lambda, "requires diameter at least 3");

  BoundsReport r;
  r.quantity = Quantity::Lambda;
  const long long d = s.delta, d2 = s.delta2;
  r.lower = std::max((d2 - 1) * p, h + (d - 1) * p);
  r.upper = h + 2 * (d - 1) * p;
  r.sources.emplace_back(source::kLinearGeneral);
  if (d >= 3) {
    if (has_dense_depth2_subtree(t, DenseVariant::Regular))
      detail::pin(r, h + 2 * (d - 1) * p, source::kLinearDenseRegular);
    else if (has_dense_depth2_subtree(t, DenseVariant::Complete))
      detail::raise_lower(r, h + (2 * d - 3) * p, source::kLinearDenseComplete);
  }
  detail::settle(r);
  return r;
}

/// Exact lambda_{h,p,p} = lambda*_{h,p,p} for the four tree families.
inline BoundsReport lambda_family_exact(const FamilySpec &spec, int h, int p) {
  if (spec.m < 2 || spec.k < 2)
    return detail::not_applicable(Quantity::Lambda, "requires m >= 2 and k >= 2");
  if (p < 1 || h < p)
    return detail::not_applicable(Quantity::Lambda, "requires h >= p >= 1");
  BoundsReport r;
  r.quantity = Quantity::Lambda;
  const long long m = spec.m;
  long long value;
  const char *tag;
  if (spec.family == Family::CompleteMary && spec.k == 2) {
    value = h + (2 * m - 1) * p;
    tag = source::kLinearFamilyDepth2;
  } else if (spec.family == Family::CompleteMary && spec.k == 3) {
    value = std::max(h + (2 * m - 1) * p, (2 * m + 1) * p);
    tag = source::kLinearFamilyDepth3;
  } else {
    value = h + 2 * m * p;
    tag = source::kLinearFamilyDeep;
  }
  r.lower = r.upper = value;
  r.exact = value;
  r.sources.emplace_back(tag);
  return r;
}

/// Bounds on sigma_{h,p,p}(T) and sigma*_{h,p,p}(T).
inline BoundsReport sigma_bounds(const RootedTree &t, int h, int p) {
  if (h < 1 || p < 1)
    return detail::not_applicable(Quantity::Sigma, "requires h >= 1 and p >= 1");
  const TreeStats s = tree_stats(t);
  if (s.diam < 3)
    return detail::not_applicable(Quantity::Sigma, "requires diameter at least 3");
  if (s.delta < 3)
    return detail::not_applicable(Quantity::Sigma, "requires maximum degree at least 3");

  const long long d = s.delta, d2 = s.delta2;
  BoundsReport r;
  r.quantity = Quantity::Sigma;
  if (p == 1) {
    r.lower = std::max(d2, 2 * h + d - 1);
    r.upper = std::max(h + 2 * d - 1, 2 * h + d - 1);
    r.sources.emplace_back(source::kCyclicH11General);
    if (h >= d) {
      detail::pin(r, 2 * h + d - 1, source::kCyclicH11LargeH);
    } else if (has_dense_depth2_subtree(t, DenseVariant::Regular)) {
      detail::pin(r, h + 2 * d - 1, source::kCyclicH11DenseRegular);
    } else if (has_dense_depth2_subtree(t, DenseVariant::Complete)) {
      detail::raise_lower(r, h + 2 * d - 2, source::kCyclicH11DenseComplete);
    }
  } else {
    if (h < d * p)
      return detail::not_applicable(Quantity::Sigma, "p > 1 requires h >= delta * p");
    r.lower = 2 * h + (d - 1) * p;
    r.upper = 2 * h + d * p - 1;
    r.sources.emplace_back(source::kCyclicLargeSeparation);
  }
  detail::settle(r);
  return r;
}

/// Exact sigma_{h,p,p} (or the best known bounds) for the four families.
inline BoundsReport sigma_family_exact(const FamilySpec &spec, int h, int p) {
  if (spec.m < 2 || spec.k < 2)
    return detail::not_applicable(Quantity::Sigma, "requires m >= 2 and k >= 2");
  if (h < 1 || p < 1)
    return detail::not_applicable(Quantity::Sigma, "requires h >= 1 and p >= 1");
  const long long m = spec.m;
  const bool complete = spec.family == Family::CompleteMary;
  BoundsReport r;
  r.quantity = Quantity::Sigma;

  if (p == 1) {
    if (complete && spec.k == 2) {
      const long long v = std::max(h + 2 * m, 2 * h + m);
      r.lower = r.upper = v;
      r.exact = v;
      r.sources.emplace_back(m <= h ? source::kCyclicDepth2LargeH : source::kCyclicH11Depth2);
      return r;
    }
    if (complete && spec.k == 3)
      return sigma_bounds(build_family(spec), h, p);
    const long long v = std::max(h + 2 * m + 1, 2 * h + m);
    r.lower = r.upper = v;
    r.exact = v;
    r.sources.emplace_back(spec.k == 2 && !complete ? source::kCyclicH11Depth2
                                                    : source::kCyclicH11Deep);
    return r;
  }

  if (spec.k == 2 && complete && h >= m * p) {
    r.lower = r.upper = 2 * h + m * p;
    r.exact = r.lower;
    r.sources.emplace_back(source::kCyclicDepth2LargeH);
    return r;
  }
  if (spec.k == 2 && !complete && h >= (m + 1) * p) {
    r.lower = r.upper = 2 * h + m * p;
    r.exact = r.lower;
    r.sources.emplace_back(source::kCyclicDepth2LargeH);
    return r;
  }
  if (h >= (m + 1) * p) {
    r.lower = 2 * h + m * p;
    r.upper = 2 * h + (m + 1) * p - 1;
    r.sources.emplace_back(source::kCyclicLargeSeparation);
    detail::settle(r);
    return r;
  }
  return detail::not_applicable(Quantity::Sigma,
                                "no formula for p > 1 below the large-separation threshold");
}

/// lambda + 1 <= sigma <= lambda + h1.
inline bool sandwich_inequalities(long long lambda, long long sigma, long long h1) {
  return lambda + 1 <= sigma && sigma <= lambda + h1;
}

} // namespace treelabel
