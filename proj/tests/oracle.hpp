#pragma once

// Test oracles written independently of the engine: dense Gauss-Jordan over
// boost::multiprecision rationals, and word-map expansions of differentials.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <vector>

#include "affsp/lie.hpp"
#include "affsp/linalg.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Dense = std::vector<std::vector<Q>>;

inline Q to_q(const affsp::Rational& r) { return Q(r.str()); }

inline Dense dense(const affsp::SparseMatrix& m) {
  Dense d(m.rows(), std::vector<Q>(m.cols()));
  for (affsp::Index r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row(r)) d[r][e.index] = to_q(e.value);
  return d;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Dense& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Q inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Q f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const affsp::SparseMatrix& m) {
  Dense d = dense(m);
  return rref(d).size();
}

/// Null-space basis with free variable f set to 1, others free at 0.
inline std::vector<std::vector<Q>> kernel(const affsp::SparseMatrix& m) {
  Dense d = dense(m);
  auto piv = rref(d);
  std::vector<bool> is_pivot(m.cols());
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::vector<Q>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Q> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -d[i][f];
    out.push_back(v);
  }
  return out;
}

/// Classical Chevalley-Eilenberg boundary Σ_{i<j} (−1)^{i+j} [g_i,g_j] ∧ ... (1-based),
/// expanded into a map from increasing words to coefficients.
using WordMap = std::map<std::vector<std::size_t>, Q>;

inline int sort_sign(std::vector<std::size_t>& w) {
  int s = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        s = -s;
      }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return 0;
  return s;
}

inline WordMap classical_boundary(const affsp::LieAlgebra& L, const std::vector<std::size_t>& w) {
  WordMap out;
  const std::size_t k = w.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      int sign = ((i + 1 + j + 1) % 2 == 0) ? 1 : -1;
      for (const auto& e : L.bracket(w[i], w[j]).entries()) {
        std::vector<std::size_t> t{e.index};
        for (std::size_t p = 0; p < k; ++p)
          if (p != i && p != j) t.push_back(w[p]);
        int s = sort_sign(t);
        if (s == 0) continue;
        out[t] += Q(sign * s) * to_q(e.value);
      }
    }
  for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

/// All increasing words of length k over n letters, lexicographic.
inline std::vector<std::vector<std::size_t>> wedge_words(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> w;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (w.size() == k) {
      out.push_back(w);
      return;
    }
    for (std::size_t c = start; c < n; ++c) {
      w.push_back(c);
      self(self, c + 1);
      w.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace oracle
