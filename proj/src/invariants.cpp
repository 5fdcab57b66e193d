#include "affsp/invariants.hpp"

#include <sstream>

#include "affsp/errors.hpp"

namespace affsp {

InvariantBasis invariant_subspace(const LieModule& M) {
  InvariantBasis out{M.name(), {}};
  if (M.actions().empty()) {
    for (Index i = 0; i < M.dim(); ++i) out.vectors.push_back(QVector::unit(M.dim(), i));
    return out;
  }
  out.vectors = kernel_basis(stack_rows(M.actions()));
  return out;
}

SymplecticModules symplectic_modules(unsigned n) {
  AffineSymplectic g = build_g(n);
  LieModule restricted = restriction_module(adjoint_module(g.algebra), g.decomposition.quotient_indices);
  LieModule ideal = coordinate_submodule(restricted, g.decomposition.ideal_indices, "I" + std::to_string(n));
  LieModule quotient = coordinate_submodule(restricted, g.decomposition.quotient_indices, "sp" + std::to_string(n));
  LieModule whole = coordinate_submodule(restricted, [&] {
    std::vector<Index> all(g.algebra->dim());
    for (Index i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }(), "g" + std::to_string(n));
  return {std::move(g), std::move(ideal), std::move(quotient), std::move(whole)};
}

QVector wedge_product(const QVector& a, unsigned p, const QVector& b, unsigned q, Index letters) {
  WedgeBasis wa(letters, p), wb(letters, q), out(letters, p + q);
  if (a.length() != wa.size() || b.length() != wb.size()) throw ShapeError("wedge_product: chain lengths do not match");
  std::vector<Entry> terms;
  for (const Entry& x : a.entries()) {
    Word u = wa.word(x.index);
    for (const Entry& y : b.entries()) {
      Word w = u;
      Word v = wb.word(y.index);
      w.insert(w.end(), v.begin(), v.end());
      int s = sort_with_sign(w);
      if (s == 0) continue;
      Rational c = x.value * y.value;
      terms.push_back({out.rank(w), s > 0 ? c : -c});
    }
  }
  return QVector::from_entries(out.size(), std::move(terms));
}

Chain omega(unsigned n) {
  if (n == 0) throw DomainError("omega: n must be at least 1");
  WedgeBasis w2(2 * n, 2);
  std::vector<Entry> terms;
  for (Index i = 0; i < n; ++i) terms.push_back({w2.rank({i, n + i}), Rational(1)});
  return {2, QVector::from_entries(w2.size(), std::move(terms))};
}

Chain omega_power(unsigned n, unsigned k) {
  if (n == 0) throw DomainError("omega_power: n must be at least 1");
  const Index letters = 2 * n;
  QVector acc = QVector::unit(1, 0);
  const QVector w = omega(n).coefficients;
  for (unsigned i = 0; i < k; ++i) acc = wedge_product(acc, 2 * i, w, 2, letters);
  return {2 * k, std::move(acc)};
}

Chain omega_tilde(unsigned n) {
  if (n == 0) throw DomainError("omega_tilde: n must be at least 1");
  const Index dim = 2 * Index(n) * n + 3 * n;
  TensorBasis t2(dim, 2);
  std::vector<Entry> terms;
  for (Index i = 0; i < n; ++i) {
    terms.push_back({t2.rank({i, n + i}), Rational(1, 2)});
    terms.push_back({t2.rank({n + i, i}), Rational(-1, 2)});
  }
  return {2, QVector::from_entries(t2.size(), std::move(terms))};
}

Chain omega_power_in_g(unsigned n, unsigned k) {
  Chain c = omega_power(n, k);
  std::vector<Index> positions(2 * n);
  for (Index i = 0; i < positions.size(); ++i) positions[i] = i;
  const Index dim = 2 * Index(n) * n + 3 * n;
  return {c.degree, embed_wedge(c.coefficients, c.degree, 2 * n, positions, dim)};
}

Index predicted_wedge_invariants(unsigned n, unsigned k) { return (k % 2 == 0 && k / 2 <= n) ? 1 : 0; }

Index predicted_ideal_tensor_invariants(unsigned n, unsigned k) {
  return (k % 2 == 1 && (k + 1) / 2 <= n) ? 1 : 0;
}

AppendixReport appendix_report(unsigned n, unsigned k_max) {
  SymplecticModules mods = symplectic_modules(n);
  AppendixReport report;
  report.n = n;
  for (unsigned k = 0; k <= k_max; ++k) {
    AppendixRow row;
    row.k = k;
    LieModule wedge = exterior_power_module(mods.ideal, k);
    InvariantBasis inv = invariant_subspace(wedge);
    row.wedge = inv.dim();
    row.wedge_expected = predicted_wedge_invariants(n, k);
    row.ideal_tensor = invariant_subspace(tensor_module(mods.ideal, wedge)).dim();
    row.ideal_tensor_expected = predicted_ideal_tensor_invariants(n, k);
    row.sp_tensor = invariant_subspace(tensor_module(mods.quotient, wedge)).dim();
    row.sp_tensor_expected = 0;
    row.g_tensor = invariant_subspace(tensor_module(mods.whole, wedge)).dim();
    row.decomposition = row.g_tensor == row.ideal_tensor + row.sp_tensor;
    if (k % 2 == 0 && row.wedge == 1) {
      QVector power = omega_power(n, k / 2).coefficients;
      EchelonSpan span(wedge.dim());
      span.insert(inv.vectors.front());
      row.omega_spans = !power.is_zero() && span.contains(power);
    }
    report.rows.push_back(row);
  }
  return report;
}

bool AppendixReport::pass() const {
  for (const auto& r : rows)
    if (!r.pass()) return false;
  return true;
}

nlohmann::json AppendixReport::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"k", r.k},
                   {"wedge", r.wedge},
                   {"wedge_expected", r.wedge_expected},
                   {"ideal_tensor", r.ideal_tensor},
                   {"ideal_tensor_expected", r.ideal_tensor_expected},
                   {"sp_tensor", r.sp_tensor},
                   {"sp_tensor_expected", r.sp_tensor_expected},
                   {"g_tensor", r.g_tensor},
                   {"omega_spans", r.omega_spans},
                   {"decomposition", r.decomposition},
                   {"pass", r.pass()}});
  return {{"n", n}, {"rows", arr}, {"pass", pass()}};
}

std::string AppendixReport::to_csv() const {
  std::ostringstream os;
  os << "k,wedge,wedge_expected,ideal_tensor,ideal_tensor_expected,sp_tensor,sp_tensor_expected,g_tensor,"
        "omega_spans,decomposition,pass\n";
  for (const auto& r : rows)
    os << r.k << ',' << r.wedge << ',' << r.wedge_expected << ',' << r.ideal_tensor << ',' << r.ideal_tensor_expected
       << ',' << r.sp_tensor << ',' << r.sp_tensor_expected << ',' << r.g_tensor << ',' << r.omega_spans << ','
       << r.decomposition << ',' << r.pass() << '\n';
  return os.str();
}

std::string AppendixReport::to_text() const {
  std::ostringstream os;
  os << "invariants over sp" << n << " (computed/expected)\n";
  os << "   k   wedge   I(x)wedge   sp(x)wedge   g(x)wedge   omega   ok\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "  %2u   %zu/%zu     %zu/%zu         %zu/%zu          %zu         %s     %s\n", r.k,
                  static_cast<std::size_t>(r.wedge), static_cast<std::size_t>(r.wedge_expected),
                  static_cast<std::size_t>(r.ideal_tensor), static_cast<std::size_t>(r.ideal_tensor_expected),
                  static_cast<std::size_t>(r.sp_tensor), static_cast<std::size_t>(r.sp_tensor_expected),
                  static_cast<std::size_t>(r.g_tensor), r.omega_spans ? "yes" : "no", r.pass() ? "pass" : "FAIL");
    os << line;
  }
  return os.str();
}

}  // namespace affsp
