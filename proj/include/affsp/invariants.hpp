#pragma once

// Invariant subspaces M^g, the symplectic bivector ω_n and its lifts, and the
// invariant tables for Λ*(I_n), I_n ⊗ Λ*(I_n), sp_n ⊗ Λ*(I_n) over sp_n.

#include <string>
#include <vector>

#include "json.hpp"

#include "affsp/chain_complex.hpp"
#include "affsp/lie.hpp"

namespace affsp {

struct InvariantBasis {
  std::string module;
  std::vector<QVector> vectors;  // reduced echelon form
  Index dim() const { return vectors.size(); }
};

/// Kernel of the row-stack of all action matrices of M.
InvariantBasis invariant_subspace(const LieModule& M);

/// The sp_n-modules obtained from the adjoint action of g_n restricted to sp_n.
struct SymplecticModules {
  AffineSymplectic g;
  LieModule ideal;    // I_n, basis ∂x_1..∂x_n, ∂y_1..∂y_n
  LieModule quotient; // sp_n
  LieModule whole;    // g_n
};
SymplecticModules symplectic_modules(unsigned n);

/// Wedge product Λ^p(V) × Λ^q(V) → Λ^{p+q}(V), V of dimension `letters`.
QVector wedge_product(const QVector& a, unsigned p, const QVector& b, unsigned q, Index letters);

/// ω_n = Σ ∂x_i ∧ ∂y_i in the wedge basis of Λ²(I_n).
Chain omega(unsigned n);
/// ω_n^∧k in Λ^{2k}(I_n); the zero chain when k > n, the unit of Λ⁰ when k = 0.
Chain omega_power(unsigned n, unsigned k);
/// ½ Σ (∂x_i ⊗ ∂y_i − ∂y_i ⊗ ∂x_i) in the tensor basis of g_n ⊗ g_n.
Chain omega_tilde(unsigned n);
/// ω_n^∧k carried into Λ^{2k}(g_n) (I_n occupies the first 2n basis slots).
Chain omega_power_in_g(unsigned n, unsigned k);

/// Predicted invariant dimensions.
Index predicted_wedge_invariants(unsigned n, unsigned k);        // 1 iff k even, k/2 ≤ n
Index predicted_ideal_tensor_invariants(unsigned n, unsigned k); // 1 iff 1 + k = 2q, 1 ≤ q ≤ n

struct AppendixRow {
  unsigned k = 0;
  Index wedge = 0, wedge_expected = 0;
  Index ideal_tensor = 0, ideal_tensor_expected = 0;
  Index sp_tensor = 0, sp_tensor_expected = 0;
  Index g_tensor = 0;
  bool omega_spans = true;  // ω_n^∧(k/2) spans the wedge invariants when they are nonzero
  bool decomposition = true;
  bool pass() const {
    return wedge == wedge_expected && ideal_tensor == ideal_tensor_expected && sp_tensor == sp_tensor_expected &&
           omega_spans && decomposition;
  }
};

struct AppendixReport {
  unsigned n = 0;
  std::vector<AppendixRow> rows;
  bool pass() const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
  std::string to_text() const;
};

AppendixReport appendix_report(unsigned n, unsigned k_max);

}  // namespace affsp
