// Acceptance checks: one PASS/FAIL line per criterion, exact integer equality.
//
// Usage: affsp_acceptance [--only N]... [--expect-fail N]...
// Exit status is 0 when the set of failing criteria equals the expected set
// (empty unless --expect-fail is given).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "affsp/chain_complex.hpp"
#include "affsp/homology.hpp"
#include "affsp/invariants.hpp"
#include "affsp/lie.hpp"
#include "affsp/theorems.hpp"

using namespace affsp;

namespace {

using Betti = std::vector<std::size_t>;

std::string show(const Betti& b) {
  std::string s = "[";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + "]";
}

// Every complex built here is kept for the property checks of criterion 11.
std::vector<std::shared_ptr<ChainComplex>> g_built;

std::shared_ptr<ChainComplex> keep(ChainComplex c) {
  g_built.push_back(std::make_shared<ChainComplex>(std::move(c)));
  return g_built.back();
}

Betti bettis(const ChainComplex& C, unsigned from, unsigned to) {
  Betti b;
  for (unsigned k = from; k <= to; ++k) b.push_back(betti(C, k));
  return b;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void expect(const std::string& what, const Betti& expected, const Betti& got) {
    bool ok = expected == got;
    pass &= ok;
    detail << "; " << what << " expected " << show(expected) << " got " << show(got);
  }
  void expect(const std::string& what, bool ok) {
    pass &= ok;
    if (!ok) detail << "; " << what << " failed";
  }
};

bool criterion_1(Outcome& o) {
  const Index sp_dims[] = {3, 10, 21}, g_dims[] = {5, 14, 27};
  Betti sp, g;
  for (unsigned n = 1; n <= 3; ++n) {
    auto s = build_sp(n);
    AffineSymplectic a = build_g(n);
    sp.push_back(s->dim());
    g.push_back(a.algebra->dim());
    o.expect("validate g" + std::to_string(n), validate_lie(*a.algebra).passed());
    const auto& ideal = a.decomposition.ideal_indices;
    bool abelian_ideal = ideal.size() == 2 * n;
    for (Index i : ideal)
      for (Index j = 0; j < a.algebra->dim(); ++j)
        for (const auto& e : a.algebra->bracket(i, j).entries()) {
          bool in_ideal = std::find(ideal.begin(), ideal.end(), e.index) != ideal.end();
          bool j_in_ideal = std::find(ideal.begin(), ideal.end(), j) != ideal.end();
          abelian_ideal &= in_ideal && !j_in_ideal;
        }
    o.expect("I" + std::to_string(n) + " abelian ideal", abelian_ideal);
    o.expect("g" + std::to_string(n) + "/I" + std::to_string(n) + " = sp" + std::to_string(n),
             a.algebra->subalgebra(a.decomposition.quotient_indices) == *s);
  }
  o.expect("dim sp_n", Betti(sp_dims, sp_dims + 3), sp);
  o.expect("dim g_n", Betti(g_dims, g_dims + 3), g);
  return o.pass;
}

bool criterion_2(Outcome& o) {
  o.expect("CE(sp1)", {1, 0, 0, 1}, bettis(*keep(ce_complex(build_sp(1), 4)), 0, 3));
  o.expect("CE(sp2)", {1, 0, 0, 1, 0, 0}, bettis(*keep(ce_complex(build_sp(2), 6)), 0, 5));
  return o.pass;
}

bool criterion_3(Outcome& o) {
  o.expect("CE(g1)", {1, 0, 1, 1, 0, 1}, bettis(*keep(ce_complex(build_g(1).algebra, 6)), 0, 5));
  o.expect("CE(g2)", {1, 0, 1, 1, 1, 1}, bettis(*keep(ce_complex(build_g(2).algebra, 6)), 0, 5));
  return o.pass;
}

bool criterion_4(Outcome& o) {
  auto C = keep(coeff_complex(adjoint_module(build_g(1).algebra), 5));
  o.expect("H(g1;g1)", {0, 0, 1, 0, 1}, bettis(*C, 0, 4));
  return o.pass;
}

bool homologous_to_omega_tilde(const ChainComplex& hl, unsigned n) {
  Chain wt = omega_tilde(n);
  auto reps = homology_reps(hl, 2);
  if (reps.size() != 1) return false;
  const SparseMatrix& d3 = hl.differential(3);
  SparseMatrix col = SparseMatrix::from_columns(d3.rows(), std::span<const QVector>(&wt.coefficients, 1));
  const SparseMatrix parts[] = {d3, col};
  auto x = solve(stack_columns(parts), reps.front().coefficients);
  return x && !x->at(d3.cols()).is_zero();
}

bool criterion_5(Outcome& o) {
  auto g1 = keep(leibniz_complex(build_g(1).algebra, 6));
  o.expect("d6 shape 3125x15625", g1->differential(6).rows() == 3125 && g1->differential(6).cols() == 15625);
  o.expect("HL(g1)", {1, 0, 1, 0, 0, 0}, bettis(*g1, 0, 5));
  auto g2 = keep(leibniz_complex(build_g(2).algebra, 4));
  o.expect("HL(g2)", {1, 0, 1, 0}, bettis(*g2, 0, 3));
  for (unsigned n : {1u, 2u}) {
    const ChainComplex& hl = n == 1 ? *g1 : *g2;
    Chain wt = omega_tilde(n);
    std::string tag = "omega~_" + std::to_string(n);
    o.expect(tag + " cycle", is_cycle(hl, wt));
    o.expect(tag + " not a boundary", !is_boundary(hl, wt));
    o.expect("HL_2(g" + std::to_string(n) + ") representative ~ " + tag, homologous_to_omega_tilde(hl, n));
  }
  return o.pass;
}

bool criterion_6(Outcome& o) {
  auto sp1 = build_sp(1);
  o.expect("HL(sp1) k=1..5", Betti(5, 0), bettis(*keep(leibniz_complex(sp1, 6)), 1, 5));
  o.expect("HL(sp2) k=1..3", Betti(3, 0), bettis(*keep(leibniz_complex(build_sp(2), 4)), 1, 3));
  o.expect("H(sp1;sp1) k=0..4", Betti(5, 0), bettis(*keep(coeff_complex(adjoint_module(sp1), 5)), 0, 4));
  return o.pass;
}

bool criterion_7(Outcome& o) {
  o.expect("HR(g1) m=0..2", {1, 0, 0}, bettis(*keep(cr_complex(build_g(1).algebra, 3)), 0, 2));
  auto sp1 = build_sp(1);
  auto hr_sp = keep(cr_complex(sp1, 1));
  std::size_t h3 = betti(*keep(ce_complex(sp1, 4)), 3);
  o.expect("HR_0(sp1)", {1}, {betti(*hr_sp, 0)});
  o.expect("HR_0(sp1) = H_3(sp1)", {h3}, {betti(*hr_sp, 0)});
  return o.pass;
}

bool criterion_8(Outcome& o) {
  auto rel = keep(rel_complex(build_g(1).algebra, 3));
  Betti dims(rel->dims().begin(), rel->dims().end());
  o.expect("C^rel dims", {15, 115, 620, 3124}, dims);
  o.expect("H^rel(g1)", {1, 0, 1}, bettis(*rel, 0, 2));
  return o.pass;
}

bool criterion_9(Outcome& o) {
  for (unsigned n = 1; n <= 3; ++n) {
    AppendixReport r = appendix_report(n, 2 * n);
    Betti wedge, wedge_exp, sp_t, ideal_t, ideal_exp;
    bool spans = true;
    for (const auto& row : r.rows) {
      wedge.push_back(row.wedge);
      wedge_exp.push_back((row.k % 2 == 0 && row.k / 2 <= n) ? 1 : 0);
      sp_t.push_back(row.sp_tensor);
      ideal_t.push_back(row.ideal_tensor);
      // Λ̄*(ω_n) sits in degrees 2, 4, ..., 2n; I_n ⊗ Λ^k meets it at 1 + k.
      unsigned q = (row.k + 1) / 2;
      ideal_exp.push_back(((row.k + 1) % 2 == 0 && q >= 1 && q <= n) ? 1 : 0);
      spans &= row.omega_spans;
    }
    std::string s = std::to_string(n);
    o.expect("(I" + s + "^k)^sp", wedge_exp, wedge);
    o.expect("omega" + s + " spans", spans);
    o.expect("(sp" + s + "(x)L^k)^sp", Betti(2 * n + 1, 0), sp_t);
    o.expect("(I" + s + "(x)L^k)^sp", ideal_exp, ideal_t);
    if (n == 1) o.expect("n=1 explicit (I1(x)L^k)^sp", {0, 1, 0}, ideal_t);
  }
  return o.pass;
}

bool criterion_10(Outcome& o) {
  auto sp1 = build_sp(1);
  Betti h_sp = bettis(*keep(ce_complex(sp1, 4)), 0, 3);
  SymplecticModules m = symplectic_modules(1);
  for (unsigned k = 0; k <= 2; ++k) {
    LieModule w = exterior_power_module(m.ideal, k);
    std::size_t inv = invariant_subspace(w).dim();
    Betti expected;
    for (auto h : h_sp) expected.push_back(h * inv);
    Betti got = bettis(*keep(coeff_complex(w, 4)), 0, 3);
    o.expect("H(sp1;I1^" + std::to_string(k) + ")", expected, got);
    if (k == 2) o.expect("k=2 literal", {1, 0, 0, 1}, got);
    if (k == 1) o.expect("k=1 literal", {0, 0, 0, 0}, got);
  }
  return o.pass;
}

bool criterion_11(Outcome& o) {
  std::size_t checked = 0;
  bool dd = true, co = true, rn = true;
  for (const auto& C : g_built) {
    for (unsigned k = 2; k <= C->cap(); ++k) dd &= multiply(C->differential(k - 1), C->differential(k)).is_zero();
    for (unsigned k = 0; k < C->cap(); ++k) {
      co &= betti(*C, k) == cobetti(*C, k);
      std::size_t r = C->rank_d(k), r_next = C->rank_d(k + 1);
      rn &= r <= C->dim(k) && r_next <= C->dim(k) - r && betti(*C, k) == C->dim(k) - r - r_next;
      if (C->dim(k) <= 2000) rn &= kernel_basis(C->differential(k)).size() == C->dim(k) - r;
      ++checked;
    }
  }
  o.expect("d o d = 0 on " + std::to_string(g_built.size()) + " complexes", dd);
  o.expect("betti = cobetti", co);
  o.expect("rank-nullity", rn);
  o.detail << "; " << checked << " degrees audited";

  auto g = build_g(1).algebra;
  LieModule ad = adjoint_module(g);
  bool maps = true;
  for (unsigned k = 1; k <= 4; ++k)
    maps &= multiply(projection_pi1(*g, k - 1), leibniz_differential(*g, k)) ==
            multiply(ce_differential(*g, k), projection_pi1(*g, k));
  for (unsigned m = 1; m <= 4; ++m)
    maps &= multiply(projection_pi2(*g, m - 1), coeff_differential(ad, m)) ==
            multiply(ce_differential(*g, m + 1), projection_pi2(*g, m));
  o.expect("pi1, pi2 chain maps through degree 4", maps);

  Betti base_ce = bettis(ce_complex(g, 6), 0, 5);
  Betti base_hl = bettis(leibniz_complex(g, 4), 0, 3);
  std::vector<Index> perm(g->dim());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(2024);
  bool invariant = true;
  for (int t = 0; t < 5; ++t) {
    std::shuffle(perm.begin(), perm.end(), rng);
    auto p = std::make_shared<const LieAlgebra>(g->permuted(perm));
    invariant &= bettis(ce_complex(p, 6), 0, 5) == base_ce && bettis(leibniz_complex(p, 4), 0, 3) == base_hl;
  }
  o.expect("basis-permutation invariance on g1", invariant);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail, only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expected_fail.insert(std::atoi(argv[++i]));
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--only N]... [--expect-fail N]...\n", argv[0]);
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<bool(Outcome&)>>> criteria = {
      {"structure of sp_n, I_n, g_n", criterion_1},
      {"homology of sp_1, sp_2", criterion_2},
      {"homology of g_1, g_2 with trivial coefficients", criterion_3},
      {"homology of g_1 with adjoint coefficients", criterion_4},
      {"Leibniz homology of g_1, g_2 and the class of omega~", criterion_5},
      {"vanishing for sp_1, sp_2", criterion_6},
      {"HR of g_1 and sp_1", criterion_7},
      {"relative homology of g_1", criterion_8},
      {"invariant tables for n = 1, 2, 3", criterion_9},
      {"E2 identification over sp_1", criterion_10},
      {"property suites", criterion_11},
  };

  std::set<int> failed;
  std::size_t ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    // Criterion 11 audits the complexes built by the others, so it always
    // runs them first when selected on its own.
    if (!only.empty() && !only.count(id)) {
      if (only.count(11)) {
        Outcome silent;
        try {
          criteria[i].second(silent);
        } catch (const std::exception&) {
        }
      }
      continue;
    }
    ++ran;
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criteria[i].second(o);
    } catch (const std::exception& e) {
      o.detail << "; exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!ok) failed.insert(id);
    std::string detail = o.detail.str();
    if (detail.size() >= 2) detail.erase(0, 2);
    std::printf("%s criterion %d: %s (%.2fs) -- %s\n", ok ? "PASS" : "FAIL", id, criteria[i].first, secs,
                detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", ran - failed.size(), ran);
  if (failed != expected_fail) {
    std::printf("failing set differs from the expected set\n");
    return 1;
  }
  return 0;
}
