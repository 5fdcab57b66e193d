#include "affsp/chain_complex.hpp"

#include <algorithm>

#include "affsp/cache.hpp"
#include "affsp/errors.hpp"

namespace affsp {

const char* kind_name(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::Lie: return "lie";
    case ComplexKind::Coefficient: return "coefficient";
    case ComplexKind::Leibniz: return "leibniz";
    case ComplexKind::Relative: return "relative";
    case ComplexKind::CR: return "cr";
  }
  return "?";
}

// ---- ChainComplex ------------------------------------------------------------

ChainComplex::ChainComplex(std::string id, ComplexKind kind, std::vector<Index> dims,
                           std::vector<SparseMatrix> differentials)
    : id_(std::move(id)), kind_(kind), dims_(std::move(dims)), memo_(std::make_shared<Memo>()) {
  if (dims_.empty()) throw ShapeError("chain complex needs at least degree 0");
  if (differentials.size() != dims_.size() - 1) throw ShapeError("chain complex: one differential per positive degree");
  d_.reserve(dims_.size());
  d_.emplace_back(0, dims_[0]);
  for (std::size_t k = 1; k < dims_.size(); ++k) {
    const SparseMatrix& d = differentials[k - 1];
    if (d.rows() != dims_[k - 1] || d.cols() != dims_[k])
      throw ShapeError("chain complex: d_" + std::to_string(k) + " does not match the degree dimensions");
    d_.push_back(std::move(differentials[k - 1]));
  }
  memo_->rank.assign(dims_.size(), std::nullopt);
  memo_->rank_t.assign(dims_.size(), std::nullopt);
}

Index ChainComplex::dim(unsigned k) const {
  if (k >= dims_.size()) throw RangeError("degree " + std::to_string(k) + " beyond cap " + std::to_string(cap()));
  return dims_[k];
}

const SparseMatrix& ChainComplex::differential(unsigned k) const {
  if (k >= d_.size()) throw RangeError("differential d_" + std::to_string(k) + " beyond cap " + std::to_string(cap()));
  return d_[k];
}

std::size_t ChainComplex::rank_d(unsigned k) const {
  const SparseMatrix& d = differential(k);
  {
    std::lock_guard lock(memo_->mutex);
    if (memo_->rank[k]) return *memo_->rank[k];
  }
  std::size_t r = rank(d);
  std::lock_guard lock(memo_->mutex);
  memo_->rank[k] = r;
  return r;
}

std::size_t ChainComplex::rank_d_transpose(unsigned k) const {
  const SparseMatrix& d = differential(k);
  {
    std::lock_guard lock(memo_->mutex);
    if (memo_->rank_t[k]) return *memo_->rank_t[k];
  }
  std::size_t r = rank(d.transpose());
  std::lock_guard lock(memo_->mutex);
  memo_->rank_t[k] = r;
  return r;
}

const std::vector<QVector>& ChainComplex::subspace_basis(unsigned k) const {
  if (subspace_bases_.empty()) throw DomainError("complex " + id_ + " is not a subspace complex");
  if (k >= subspace_bases_.size()) throw RangeError("degree beyond cap");
  return subspace_bases_[k];
}

void ChainComplex::set_subspace_bases(std::vector<std::vector<QVector>> bases) {
  if (bases.size() != dims_.size()) throw ShapeError("one subspace basis per degree expected");
  for (std::size_t k = 0; k < bases.size(); ++k)
    if (bases[k].size() != dims_[k]) throw ShapeError("subspace basis size does not match degree dimension");
  subspace_bases_ = std::move(bases);
}

std::string ChainComplex::basis_label(unsigned k, Index index) const {
  if (index >= dim(k)) throw RangeError("basis index out of range");
  if (labeler_) return labeler_(k, index);
  return "b" + std::to_string(k) + "_" + std::to_string(index);
}

// ---- differentials -----------------------------------------------------------

namespace {

// Number of (pair, bracket term) products; an upper bound on stored entries.
std::uint64_t bracket_terms(const LieAlgebra& L) {
  std::uint64_t s = 0;
  for (Index a = 0; a < L.dim(); ++a)
    for (Index b = a + 1; b < L.dim(); ++b) s += L.bracket(a, b).nnz();
  return s;  // unordered pairs
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

void guard(std::uint64_t estimate, const char* what) {
  check_nnz(static_cast<std::size_t>(std::min<std::uint64_t>(estimate, SIZE_MAX)), what);
}

}  // namespace

SparseMatrix ce_differential(const LieAlgebra& L, unsigned k) {
  const Index n = L.dim();
  if (k == 0) return SparseMatrix(0, 1);
  WedgeBasis src(n, k), dst(n, k - 1);
  if (k >= 2) guard(saturating_mul(binomial(n - 2, k - 2), bracket_terms(L)), "Lie differential");
  TripletBuilder tb(dst.size(), src.size());
  for (Index col = 0; col < src.size(); ++col) {
    const Word w = src.word(col);
    for (unsigned b = 1; b < k; ++b) {
      const int pos_sign = (b % 2 == 1) ? 1 : -1;  // (−1)^j with j = b+1
      for (unsigned a = 0; a < b; ++a) {
        for (const Entry& e : L.bracket(w[a], w[b]).entries()) {
          Word t;
          t.reserve(k - 1);
          for (unsigned p = 0; p < k; ++p) {
            if (p == b) continue;
            t.push_back(p == a ? e.index : w[p]);
          }
          int s = sort_with_sign(t);
          if (s == 0) continue;
          Rational v = e.value;
          if (s * pos_sign < 0) v = -v;
          tb.add(dst.rank(t), col, v);
        }
      }
    }
  }
  return tb.build();
}

SparseMatrix coeff_differential(const LieModule& M, unsigned k) {
  const LieAlgebra& L = M.algebra();
  const Index n = L.dim(), m = M.dim();
  if (k == 0) return SparseMatrix(0, m);
  WedgeBasis src(n, k), dst(n, k - 1);
  std::uint64_t action_nnz = 0;
  for (const auto& a : M.actions()) action_nnz += a.nnz();
  std::uint64_t estimate = saturating_mul(action_nnz, binomial(n - 1, k - 1));
  if (k >= 2) estimate += saturating_mul(m, saturating_mul(binomial(n - 2, k - 2), bracket_terms(L)));
  guard(estimate, "coefficient differential");

  // Row mi of the transpose of A_g lists [e_mi, e_g].
  std::vector<SparseMatrix> act_t;
  act_t.reserve(n);
  for (const auto& a : M.actions()) act_t.push_back(a.transpose());

  TripletBuilder tb(m * dst.size(), m * src.size());
  for (Index wc = 0; wc < src.size(); ++wc) {
    const Word w = src.word(wc);
    // Action terms: (−1)^p [m, w_p] ⊗ w without w_p.
    for (unsigned p = 0; p < k; ++p) {
      Word t;
      t.reserve(k - 1);
      for (unsigned q = 0; q < k; ++q)
        if (q != p) t.push_back(w[q]);
      const Index tr = dst.rank(t);
      const bool negate = p % 2 == 1;
      for (Index mi = 0; mi < m; ++mi)
        for (const Entry& e : act_t[w[p]].row(mi))
          tb.add(e.index * dst.size() + tr, mi * src.size() + wc, negate ? -e.value : e.value);
    }
    // Bracket terms: (−1)^q m ⊗ (… [w_p, w_q] in slot p … ŵ_q …).
    for (unsigned q = 1; q < k; ++q) {
      const bool negate = q % 2 == 1;
      for (unsigned p = 0; p < q; ++p)
        for (const Entry& e : L.bracket(w[p], w[q]).entries()) {
          Word t;
          t.reserve(k - 1);
          for (unsigned r = 0; r < k; ++r) {
            if (r == q) continue;
            t.push_back(r == p ? e.index : w[r]);
          }
          int s = sort_with_sign(t);
          if (s == 0) continue;
          const Index tr = dst.rank(t);
          Rational v = e.value;
          if ((s < 0) != negate) v = -v;
          for (Index mi = 0; mi < m; ++mi) tb.add(mi * dst.size() + tr, mi * src.size() + wc, v);
        }
    }
  }
  return tb.build();
}

SparseMatrix leibniz_differential(const LieAlgebra& L, unsigned k) {
  const Index n = L.dim();
  if (k == 0) return SparseMatrix(0, 1);
  TensorBasis src(n, k), dst(n, k - 1);
  if (k >= 2)
    guard(saturating_mul(saturating_mul(binomial(k, 2), 2 * bracket_terms(L)), power(n, k - 2)),
          "Leibniz differential");
  TripletBuilder tb(dst.size(), src.size());
  Word w(k, 0), t(k - 1);
  for (Index col = 0; col < src.size(); ++col) {
    for (unsigned b = 1; b < k; ++b) {
      const bool negate = b % 2 == 0;  // (−1)^j with j = b+1
      for (unsigned a = 0; a < b; ++a) {
        const QVector& br = L.bracket(w[a], w[b]);
        if (br.is_zero()) continue;
        std::size_t o = 0;
        for (unsigned p = 0; p < k; ++p)
          if (p != b) t[o++] = w[p];
        for (const Entry& e : br.entries()) {
          t[a] = e.index;
          tb.add(dst.rank(t), col, negate ? -e.value : e.value);
        }
      }
    }
    // next word in lexicographic order
    for (unsigned p = k; p-- > 0;) {
      if (++w[p] < n) break;
      w[p] = 0;
    }
  }
  return tb.build();
}

// ---- projections -------------------------------------------------------------

SparseMatrix projection_pi1(const LieAlgebra& L, unsigned k) {
  TensorBasis src(L.dim(), k);
  WedgeBasis dst(L.dim(), k);
  TripletBuilder tb(dst.size(), src.size());
  for (Index col = 0; col < src.size(); ++col) {
    Word w = src.word(col);
    int s = sort_with_sign(w);
    if (s != 0) tb.add(dst.rank(w), col, Rational(s));
  }
  return tb.build();
}

SparseMatrix projection_pi2(const LieAlgebra& L, unsigned m) {
  const Index n = L.dim();
  WedgeBasis src(n, m), dst(n, m + 1);
  TripletBuilder tb(dst.size(), n * src.size());
  for (Index e = 0; e < n; ++e)
    for (Index wc = 0; wc < src.size(); ++wc) {
      Word w = src.word(wc);
      w.insert(w.begin(), e);
      int s = sort_with_sign(w);
      if (s != 0) tb.add(dst.rank(w), e * src.size() + wc, Rational(s));
    }
  return tb.build();
}

SparseMatrix projection_tensor_to_adjoint(const LieAlgebra& L, unsigned m) {
  const Index n = L.dim();
  TensorBasis src(n, m + 1);
  WedgeBasis wedge(n, m);
  TripletBuilder tb(n * wedge.size(), src.size());
  for (Index col = 0; col < src.size(); ++col) {
    Word w = src.word(col);
    Index head = w.front();
    Word rest(w.begin() + 1, w.end());
    int s = sort_with_sign(rest);
    if (s != 0) tb.add(head * wedge.size() + wedge.rank(rest), col, Rational(s));
  }
  return tb.build();
}

// ---- helpers -----------------------------------------------------------------

QVector coordinates_in_echelon_basis(const std::vector<QVector>& basis, const QVector& ambient) {
  std::vector<Entry> coords;
  QVector residual = ambient;
  // Leading coordinates are 1 and cleared in every other basis vector, so the
  // coefficient of basis vector t is the ambient value at its leading index.
  for (Index t = 0; t < basis.size(); ++t) {
    Rational c = ambient.at(basis[t].leading_index());
    if (c.is_zero()) continue;
    residual.add_scaled(-c, basis[t]);
    coords.push_back({t, std::move(c)});
  }
  if (!residual.is_zero()) throw ConsistencyError("vector lies outside the subspace spanned by the echelon basis");
  return QVector::from_entries(basis.size(), std::move(coords));
}

QVector embed_wedge(const QVector& chain, unsigned k, Index sub_dim, const std::vector<Index>& positions,
                    Index algebra_dim) {
  if (positions.size() != sub_dim) throw ShapeError("embed_wedge: one position per subalgebra basis element");
  WedgeBasis src(sub_dim, k), dst(algebra_dim, k);
  if (chain.length() != src.size()) throw ShapeError("embed_wedge: chain length does not match Λ^k of the subalgebra");
  std::vector<Entry> out;
  for (const Entry& e : chain.entries()) {
    Word w = src.word(e.index);
    for (auto& letter : w) {
      if (positions[letter] >= algebra_dim) throw ShapeError("embed_wedge: position out of range");
      letter = positions[letter];
    }
    int s = sort_with_sign(w);
    if (s == 0) throw DomainError("embed_wedge: positions are not distinct");
    out.push_back({dst.rank(w), s > 0 ? e.value : -e.value});
  }
  return QVector::from_entries(dst.size(), std::move(out));
}

// ---- complexes ---------------------------------------------------------------

namespace {

std::string join_labels(const LieAlgebra& L, const Word& w, const char* sep) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += sep;
    s += "(" + L.labels()[w[i]] + ")";
  }
  return s;
}

// Loads d_k from the cache or builds it and stores it.
template <class Build>
SparseMatrix cached(const BuildOptions& opts, const std::string& algebra_fp, ComplexKind kind,
                    const std::string& module_fp, unsigned k, Build&& build) {
  if (!opts.cache) return build();
  CacheKey key{algebra_fp, kind_name(kind), module_fp, k};
  if (auto hit = opts.cache->load(key)) return std::move(*hit);
  SparseMatrix d = build();
  opts.cache->store(key, d);
  return d;
}

void verify_square_zero(const std::string& id, const std::vector<SparseMatrix>& d) {
  // d[i] is d_{i+1}
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (!multiply(d[i], d[i + 1]).is_zero())
      throw ConsistencyError(id + ": d_" + std::to_string(i + 1) + " ∘ d_" + std::to_string(i + 2) + " ≠ 0");
}

std::string algebra_fp(const LieAlgebra& L) { return fingerprint(L.describe()); }

// Restricts `ambient_d` (source ambient degree → target ambient degree) to
// subspaces with reduced echelon bases.
SparseMatrix restrict_to(const SparseMatrix& ambient_d, const std::vector<QVector>& source,
                         const std::vector<QVector>& target, const std::string& what) {
  TripletBuilder tb(target.size(), source.size());
  if (!source.empty()) {
    SparseMatrix images = multiply(ambient_d, SparseMatrix::from_columns(ambient_d.cols(), source));
    auto cols = images.columns();
    for (Index c = 0; c < cols.size(); ++c) {
      QVector coords;
      try {
        coords = coordinates_in_echelon_basis(target, cols[c]);
      } catch (const ConsistencyError&) {
        throw ConsistencyError(what + ": differential does not preserve the subspace");
      }
      tb.add_column(c, coords);
    }
  }
  return tb.build();
}

}  // namespace

ChainComplex ce_complex(const std::shared_ptr<const LieAlgebra>& L, unsigned cap, const BuildOptions& opts) {
  if (!L) throw DomainError("ce_complex: null algebra");
  const std::string fp = opts.cache ? algebra_fp(*L) : "";
  std::vector<Index> dims;
  std::vector<SparseMatrix> d;
  for (unsigned k = 0; k <= cap; ++k) {
    dims.push_back(WedgeBasis(L->dim(), k).size());
    if (k >= 1) d.push_back(cached(opts, fp, ComplexKind::Lie, "-", k, [&] { return ce_differential(*L, k); }));
  }
  std::string id = "lie(dim=" + std::to_string(L->dim()) + ")";
  if (opts.verify) verify_square_zero(id, d);
  ChainComplex C(id, ComplexKind::Lie, std::move(dims), std::move(d));
  C.set_labeler([L](unsigned k, Index i) { return join_labels(*L, WedgeBasis(L->dim(), k).word(i), " ∧ "); });
  return C;
}

ChainComplex coeff_complex(const LieModule& M, unsigned cap, const BuildOptions& opts) {
  auto L = M.algebra_ptr();
  const std::string fp = opts.cache ? algebra_fp(*L) : "";
  const std::string mfp = opts.cache ? fingerprint(M.describe()) : "";
  std::vector<Index> dims;
  std::vector<SparseMatrix> d;
  for (unsigned k = 0; k <= cap; ++k) {
    dims.push_back(M.dim() * WedgeBasis(L->dim(), k).size());
    if (k >= 1) d.push_back(cached(opts, fp, ComplexKind::Coefficient, mfp, k, [&] { return coeff_differential(M, k); }));
  }
  std::string id = "coefficient(" + M.name() + ")";
  if (opts.verify) verify_square_zero(id, d);
  ChainComplex C(id, ComplexKind::Coefficient, std::move(dims), std::move(d));
  C.set_labeler([L, mdim = M.dim()](unsigned k, Index i) {
    WedgeBasis wb(L->dim(), k);
    return "m" + std::to_string(i / wb.size()) + " ⊗ " + join_labels(*L, wb.word(i % wb.size()), " ∧ ");
  });
  return C;
}

ChainComplex leibniz_complex(const std::shared_ptr<const LieAlgebra>& L, unsigned cap, const BuildOptions& opts) {
  if (!L) throw DomainError("leibniz_complex: null algebra");
  const std::string fp = opts.cache ? algebra_fp(*L) : "";
  std::vector<Index> dims;
  std::vector<SparseMatrix> d;
  for (unsigned k = 0; k <= cap; ++k) {
    dims.push_back(TensorBasis(L->dim(), k).size());
    if (k >= 1)
      d.push_back(cached(opts, fp, ComplexKind::Leibniz, "-", k, [&] { return leibniz_differential(*L, k); }));
  }
  std::string id = "leibniz(dim=" + std::to_string(L->dim()) + ")";
  if (opts.verify) verify_square_zero(id, d);
  ChainComplex C(id, ComplexKind::Leibniz, std::move(dims), std::move(d));
  C.set_labeler([L](unsigned k, Index i) { return join_labels(*L, TensorBasis(L->dim(), k).word(i), " ⊗ "); });
  return C;
}

namespace {

std::function<std::string(unsigned, Index)> subspace_labeler(std::string prefix) {
  return [prefix](unsigned k, Index i) { return prefix + std::to_string(k) + "[" + std::to_string(i) + "]"; };
}

}  // namespace

ChainComplex rel_complex(const std::shared_ptr<const LieAlgebra>& L, unsigned cap, const BuildOptions& opts) {
  if (!L) throw DomainError("rel_complex: null algebra");
  const std::string fp = opts.cache ? algebra_fp(*L) : "";
  std::vector<std::vector<QVector>> bases;
  std::vector<Index> dims;
  std::vector<SparseMatrix> d;
  for (unsigned m = 0; m <= cap; ++m) {
    bases.push_back(kernel_basis(projection_pi1(*L, m + 2)));
    dims.push_back(bases.back().size());
    if (m >= 1) {
      d.push_back(cached(opts, fp, ComplexKind::Relative, "-", m, [&] {
        SparseMatrix ambient = cached(opts, fp, ComplexKind::Leibniz, "-", m + 2,
                                      [&] { return leibniz_differential(*L, m + 2); });
        return restrict_to(ambient, bases[m], bases[m - 1], "relative complex");
      }));
    }
  }
  std::string id = "relative(dim=" + std::to_string(L->dim()) + ")";
  if (opts.verify) verify_square_zero(id, d);
  ChainComplex C(id, ComplexKind::Relative, std::move(dims), std::move(d));
  C.set_subspace_bases(std::move(bases));
  C.set_labeler(subspace_labeler("rel"));
  return C;
}

ChainComplex cr_complex(const std::shared_ptr<const LieAlgebra>& L, unsigned cap, const BuildOptions& opts) {
  if (!L) throw DomainError("cr_complex: null algebra");
  LieModule ad = adjoint_module(L);
  const std::string fp = opts.cache ? algebra_fp(*L) : "";
  const std::string mfp = opts.cache ? fingerprint(ad.describe()) : "";
  std::vector<std::vector<QVector>> bases;
  std::vector<Index> dims;
  std::vector<SparseMatrix> d;
  for (unsigned m = 0; m <= cap; ++m) {
    bases.push_back(kernel_basis(projection_pi2(*L, m + 1)));
    dims.push_back(bases.back().size());
    if (m >= 1) {
      d.push_back(cached(opts, fp, ComplexKind::CR, mfp, m, [&] {
        SparseMatrix ambient = cached(opts, fp, ComplexKind::Coefficient, mfp, m + 1,
                                      [&] { return coeff_differential(ad, m + 1); });
        return restrict_to(ambient, bases[m], bases[m - 1], "CR complex");
      }));
    }
  }
  std::string id = "cr(dim=" + std::to_string(L->dim()) + ")";
  if (opts.verify) verify_square_zero(id, d);
  ChainComplex C(id, ComplexKind::CR, std::move(dims), std::move(d));
  C.set_subspace_bases(std::move(bases));
  C.set_labeler(subspace_labeler("cr"));
  return C;
}

}  // namespace affsp
