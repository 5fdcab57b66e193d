#pragma once

// End-to-end checks of the structural claims about g_n, sp_n and I_n. Each
// check returns a report of expected-versus-computed dimensions.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "affsp/chain_complex.hpp"

namespace affsp {

/// Finitely supported degree → dimension map.
using GradedPrediction = std::map<unsigned, Index>;

/// Exterior algebra on generators of degrees 3, 7, ..., 4n−1.
GradedPrediction predict_sp_homology(unsigned n);
/// Λ*(ω_n): dimension 1 in degrees 0, 2, ..., 2n.
GradedPrediction predict_lambda_omega(unsigned n);
/// Λ̄*(ω_n) = Λ*(ω_n) without the degree-0 term.
GradedPrediction predict_lambda_bar_omega(unsigned n);
GradedPrediction convolve(const GradedPrediction& a, const GradedPrediction& b);
/// Moves degree d to d + s; terms landing below 0 are dropped.
GradedPrediction shift(const GradedPrediction& a, int s);
Index value_at(const GradedPrediction& p, unsigned degree);

/// Predicted H_*(g_n) and H_*(g_n; g_n). The adjoint invariants ω_n^∧q sit in
/// I_n ⊗ Λ^{2q−1}, so the Λ̄ factor enters one degree lower.
GradedPrediction predict_g_homology(unsigned n);
GradedPrediction predict_g_adjoint_homology(unsigned n);

struct VerificationRow {
  std::string quantity;
  int degree = 0;
  long long expected = 0;
  long long computed = 0;
  bool pass() const { return expected == computed; }
};

struct VerificationReport {
  std::string claim;
  nlohmann::json params = nlohmann::json::object();
  std::vector<VerificationRow> rows;
  std::vector<std::string> notes;
  double wall_time_s = 0;

  bool pass() const;
  void add(std::string quantity, int degree, long long expected, long long computed);
  nlohmann::json to_json() const;
  std::string to_csv() const;
  std::string to_text() const;
};

struct SuiteOptions {
  const DifferentialCache* cache = nullptr;
};

VerificationReport verify_lemma_3_3(unsigned n, unsigned cap, const SuiteOptions& opts = {});
VerificationReport verify_theorem_4_3(unsigned n, unsigned cap, const SuiteOptions& opts = {});
VerificationReport verify_lemma_4_2(unsigned n, unsigned cap, const SuiteOptions& opts = {});
VerificationReport verify_rel_homology(unsigned n, unsigned cap, const SuiteOptions& opts = {});
/// HL_k(sp_n) for 1 ≤ k ≤ cap and H_k(sp_n; sp_n) for 0 ≤ k < cap.
VerificationReport verify_simplicity_vanishing(unsigned n, unsigned cap, const SuiteOptions& opts = {});
VerificationReport verify_e2_identification(unsigned n, unsigned m_cap, unsigned k_cap, const SuiteOptions& opts = {});
/// Dimension bookkeeping on the Lie/Leibniz and HR long exact sequences up to degree cap.
VerificationReport exactness_audit(unsigned n, unsigned cap, const SuiteOptions& opts = {});
VerificationReport verify_appendix(unsigned n, unsigned k_max);

/// "lemma-3.3", "thm-4.3", "lemma-4.2", "rel-homology", "sp-vanishing", "e2-page", "exactness", "appendix".
const std::vector<std::string>& claim_ids();
/// Default cap of a claim at a given n (for "appendix" this is k_max).
unsigned default_cap(const std::string& claim, unsigned n);
/// Dispatches by claim id; DomainError for unknown ids.
VerificationReport run_claim(const std::string& claim, unsigned n, std::optional<unsigned> cap,
                             const SuiteOptions& opts = {});

}  // namespace affsp
