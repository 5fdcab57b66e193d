#pragma once

// Finite-dimensional Lie algebras given by structure constants, and right
// modules over them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "affsp/linalg.hpp"
#include "affsp/vector_fields.hpp"

namespace affsp {

/// Lie algebra with basis e_0..e_{dim-1} and [e_i, e_j] = Σ_k c_ij^k e_k.
class LieAlgebra {
 public:
  /// Builds the algebra from triplets (i, j, k, c_ij^k) with i < j; the
  /// antisymmetric half is filled in. Throws ConsistencyError when Jacobi fails.
  struct Constant {
    Index i, j, k;
    Rational value;
  };
  static LieAlgebra from_constants(std::vector<std::string> labels, const std::vector<Constant>& constants);

  /// Takes the full bracket table as given, without any validation. Intended
  /// for falsification fixtures; use validate_lie() to inspect the result.
  static LieAlgebra unchecked(std::vector<std::string> labels, std::vector<std::vector<QVector>> table);

  /// Structure constants of the span of `fields`, obtained by expanding every
  /// bracket in that basis. Throws DomainError when the span is not closed.
  static LieAlgebra from_fields(std::vector<PolyVectorField> fields);

  Index dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// [e_i, e_j] as a coordinate vector.
  const QVector& bracket(Index i, Index j) const { return table_[i][j]; }
  QVector bracket(const QVector& a, const QVector& b) const;
  /// Basis realized as vector fields, when the algebra was built from fields.
  const std::vector<PolyVectorField>& fields() const { return fields_; }
  bool is_abelian() const;

  /// Algebra spanned by the basis elements `indices` (kept in the given order).
  /// DomainError when the index set is not closed under the bracket.
  LieAlgebra subalgebra(const std::vector<Index>& indices) const;
  /// Same algebra with basis reordered: new basis element t is old element perm[t].
  LieAlgebra permuted(const std::vector<Index>& perm) const;

  /// {"dim", "labels", "constants": [[i, j, k, "p/q"], ...]} with i < j.
  nlohmann::json describe() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.labels_ == b.labels_ && a.table_ == b.table_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<QVector>> table_;
  std::vector<PolyVectorField> fields_;
};

struct LieValidation {
  struct Failure {
    std::string kind;  // "antisymmetry" or "jacobi"
    Index i, j, k;
  };
  bool antisymmetry = true;
  bool jacobi = true;
  std::vector<Failure> failures;
  bool passed() const { return antisymmetry && jacobi; }
};

/// Checks antisymmetry on all pairs and Jacobi on all triples i < j < k.
LieValidation validate_lie(const LieAlgebra& algebra);

/// Position of I_n (the ideal of constant fields) and of sp_n inside g_n.
struct SubalgebraDecomposition {
  std::vector<Index> ideal_indices;
  std::vector<Index> quotient_indices;
};

struct AffineSymplectic {
  std::shared_ptr<const LieAlgebra> algebra;
  SubalgebraDecomposition decomposition;
};

/// sp_n from the quadratic-Hamiltonian basis: x_k d/dy_k, y_k d/dx_k,
/// x_i d/dy_j + x_j d/dy_i (i<j), y_i d/dx_j + y_j d/dx_i (i<j),
/// y_j d/dy_i − x_i d/dx_j (all i, j). Dimension 2n²+n.
std::shared_ptr<const LieAlgebra> build_sp(unsigned n);
/// I_n: constant fields d/dx_1..d/dx_n, d/dy_1..d/dy_n. Abelian, dimension 2n.
std::shared_ptr<const LieAlgebra> build_I(unsigned n);
/// g_n with basis I_n followed by sp_n; the decomposition is validated.
AffineSymplectic build_g(unsigned n);

/// Right module: actions[i] is the matrix of m ↦ [m, e_i] (column j holds the
/// image of basis vector j). The law A_i A_j − A_j A_i = −Σ_k c_ij^k A_k is
/// checked on construction.
class LieModule {
 public:
  LieModule(std::shared_ptr<const LieAlgebra> algebra, std::vector<SparseMatrix> actions, std::string name);

  Index dim() const { return dim_; }
  const LieAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const LieAlgebra>& algebra_ptr() const { return algebra_; }
  const SparseMatrix& action(Index i) const { return actions_[i]; }
  const std::vector<SparseMatrix>& actions() const { return actions_; }
  const std::string& name() const { return name_; }

  nlohmann::json describe() const;

 private:
  std::shared_ptr<const LieAlgebra> algebra_;
  std::vector<SparseMatrix> actions_;
  Index dim_;
  std::string name_;
};

/// First violated pair (i, j) of the module law, if any.
std::optional<std::pair<Index, Index>> module_law_violation(const LieAlgebra& algebra,
                                                            const std::vector<SparseMatrix>& actions);

LieModule trivial_module(std::shared_ptr<const LieAlgebra> algebra, Index dim = 1);
LieModule adjoint_module(std::shared_ptr<const LieAlgebra> algebra);
/// Same space, acting algebra cut down to the basis elements `sub`.
LieModule restriction_module(const LieModule& m, const std::vector<Index>& sub);
/// Submodule spanned by the basis vectors `indices`; DomainError unless invariant.
LieModule coordinate_submodule(const LieModule& m, const std::vector<Index>& indices, std::string name);
/// Λ^k(M) with basis the increasing index words in lexicographic order.
LieModule exterior_power_module(const LieModule& m, unsigned k);
/// M1 ⊗ M2 with M1 index major.
LieModule tensor_module(const LieModule& a, const LieModule& b);

}  // namespace affsp
