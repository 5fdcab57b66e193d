#pragma once

// The Chevalley–Eilenberg, coefficient, Leibniz and relative complexes of a
// Lie algebra, with explicit bases and sparse differentials.

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "affsp/lie.hpp"
#include "affsp/linalg.hpp"
#include "affsp/words.hpp"

namespace affsp {

class DifferentialCache;

enum class ComplexKind {
  Lie,          // Λ*(L)
  Coefficient,  // M ⊗ Λ*(L)
  Leibniz,      // T(L)
  Relative,     // ker(T^{m+2} → Λ^{m+2})
  CR,           // ker(L ⊗ Λ^{m+1} → Λ^{m+2})
};

const char* kind_name(ComplexKind kind);

/// Element of one degree of a complex, in that degree's ordered basis.
struct Chain {
  unsigned degree = 0;
  QVector coefficients;
};

/// Graded space C_0..C_cap with d_k : C_k → C_{k−1} for 1 ≤ k ≤ cap.
/// Immutable once built; rank queries are memoized and thread-safe.
class ChainComplex {
 public:
  ChainComplex(std::string id, ComplexKind kind, std::vector<Index> dims, std::vector<SparseMatrix> differentials);

  const std::string& id() const { return id_; }
  ComplexKind kind() const { return kind_; }
  unsigned cap() const { return static_cast<unsigned>(dims_.size() - 1); }
  Index dim(unsigned k) const;
  const std::vector<Index>& dims() const { return dims_; }
  /// d_k for 1 ≤ k ≤ cap; d_0 is the zero map to the zero space.
  const SparseMatrix& differential(unsigned k) const;

  /// Memoized rank of d_k (0 for k = 0).
  std::size_t rank_d(unsigned k) const;
  /// Memoized rank of the transpose of d_k, computed independently.
  std::size_t rank_d_transpose(unsigned k) const;

  /// For subspace complexes (relative, CR): the basis of degree k as vectors
  /// in the ambient tensor / module-tensor space, in reduced echelon form.
  const std::vector<QVector>& subspace_basis(unsigned k) const;
  bool has_subspace_bases() const { return !subspace_bases_.empty(); }
  void set_subspace_bases(std::vector<std::vector<QVector>> bases);

  /// Human-readable name of basis element `index` in degree k, when known.
  std::string basis_label(unsigned k, Index index) const;
  void set_labeler(std::function<std::string(unsigned, Index)> labeler) { labeler_ = std::move(labeler); }

 private:
  std::string id_;
  ComplexKind kind_;
  std::vector<Index> dims_;
  std::vector<SparseMatrix> d_;
  std::vector<std::vector<QVector>> subspace_bases_;
  std::function<std::string(unsigned, Index)> labeler_;
  struct Memo {
    std::mutex mutex;
    std::vector<std::optional<std::size_t>> rank, rank_t;
  };
  std::shared_ptr<Memo> memo_;
};

struct BuildOptions {
  const DifferentialCache* cache = nullptr;
  /// Check d_k ∘ d_{k+1} = 0 for every adjacent stored pair.
  bool verify = true;
};

// ---- individual differentials ---------------------------------------------

/// Λ^k(L) → Λ^{k−1}(L): Σ_{i<j} (−1)^j g_1∧…∧[g_i,g_j]∧…ĝ_j…∧g_k (1-based positions).
SparseMatrix ce_differential(const LieAlgebra& L, unsigned k);
/// M⊗Λ^k(L) → M⊗Λ^{k−1}(L): Σ_i (−1)^{i} [m, g_i] ⊗ …ĝ_i… + Σ_{i<j} (−1)^{j} m ⊗ …[g_i,g_j]…ĝ_j…
/// with g_1 = m and wedge factors at positions 2..k+1.
SparseMatrix coeff_differential(const LieModule& M, unsigned k);
/// T^k(L) → T^{k−1}(L): Σ_{i<j} (−1)^j (g_1,…,[g_i,g_j],…ĝ_j…,g_k).
SparseMatrix leibniz_differential(const LieAlgebra& L, unsigned k);

/// π₁ : L^{⊗k} → Λ^k(L).
SparseMatrix projection_pi1(const LieAlgebra& L, unsigned k);
/// π₂ : L ⊗ Λ^m(L) → Λ^{m+1}(L), e ⊗ w ↦ e ∧ w.
SparseMatrix projection_pi2(const LieAlgebra& L, unsigned m);
/// L^{⊗(m+1)} → L ⊗ Λ^m(L), (g_1, …) ↦ g_1 ⊗ π₁(g_2, …).
SparseMatrix projection_tensor_to_adjoint(const LieAlgebra& L, unsigned m);

// ---- complexes -------------------------------------------------------------

ChainComplex ce_complex(const std::shared_ptr<const LieAlgebra>& L, unsigned cap, const BuildOptions& opts = {});
ChainComplex coeff_complex(const LieModule& M, unsigned cap, const BuildOptions& opts = {});
ChainComplex leibniz_complex(const std::shared_ptr<const LieAlgebra>& L, unsigned cap, const BuildOptions& opts = {});
/// Degree m is ker π₁ at tensor degree m+2; the differential is the Leibniz one restricted.
ChainComplex rel_complex(const std::shared_ptr<const LieAlgebra>& L, unsigned cap, const BuildOptions& opts = {});
/// Degree m is ker π₂ on L ⊗ Λ^{m+1}; the differential is the adjoint one restricted.
ChainComplex cr_complex(const std::shared_ptr<const LieAlgebra>& L, unsigned cap, const BuildOptions& opts = {});

/// Coordinates of `ambient` (a vector in the span of the reduced echelon
/// `basis`) with respect to that basis; ConsistencyError when outside.
QVector coordinates_in_echelon_basis(const std::vector<QVector>& basis, const QVector& ambient);

/// Embeds a chain of Λ^k(sub) into Λ^k(L), where sub's basis element t is L's
/// basis element `positions[t]`.
QVector embed_wedge(const QVector& chain, unsigned k, Index sub_dim, const std::vector<Index>& positions,
                    Index algebra_dim);

}  // namespace affsp
