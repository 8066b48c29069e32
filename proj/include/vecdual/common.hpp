#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace vecdual {

using Vec = std::vector<double>;

// Strict comparison tolerance, applied relative to the scale of the operands.
inline constexpr double tol_strict = 1e-9;

struct dim_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

inline void require_dim(const Vec& v, std::size_t d, const char* what) {
  if (v.size() != d)
    throw dim_error(std::string(what) + ": expected dimension " +
                    std::to_string(d) + ", got " + std::to_string(v.size()));
}

inline double dot(const Vec& a, const Vec& b) {
  require_dim(b, a.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec add(const Vec& a, const Vec& b) {
  require_dim(b, a.size(), "add");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  require_dim(b, a.size(), "sub");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(double t, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

inline Vec neg(const Vec& a) { return scale(-1.0, a); }

inline double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double norm2(const Vec& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

inline double dist_inf(const Vec& a, const Vec& b) {
  require_dim(b, a.size(), "dist_inf");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double dist2(const Vec& a, const Vec& b) {
  require_dim(b, a.size(), "dist2");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Scale-relative approximate equality used throughout.
inline bool approx_eq(double a, double b, double tol = tol_strict) {
  double s = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * s;
}

inline bool approx_eq(const Vec& a, const Vec& b, double tol = tol_strict) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!approx_eq(a[i], b[i], tol)) return false;
  return true;
}

inline bool lex_less(const Vec& a, const Vec& b, double tol = tol_strict) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!approx_eq(a[i], b[i], tol)) return a[i] < b[i];
  }
  return a.size() < b.size();
}

// Sort lexicographically and drop near-duplicates (deterministic canonical order).
inline void sort_dedup(std::vector<Vec>& pts, double tol = tol_strict) {
  std::sort(pts.begin(), pts.end(),
            [tol](const Vec& a, const Vec& b) { return lex_less(a, b, tol); });
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    if (out.empty() || !approx_eq(out.back(), p, tol)) out.push_back(std::move(p));
  }
  pts = std::move(out);
}

// Deterministic shortest-roundtrip formatting (the toolchain lacks std::format).
inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  double back = 0.0;
  std::sscanf(buf, "%lf", &back);
  for (int prec = 1; prec <= 16; ++prec) {
    char b2[64];
    std::snprintf(b2, sizeof(b2), "%.*g", prec, x);
    double r = 0.0;
    std::sscanf(b2, "%lf", &r);
    if (r == x) return std::string(b2);
  }
  return std::string(buf);
}

inline std::string fmt(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt(v[i]);
  }
  s += ")";
  return s;
}

}  // namespace vecdual
