#include "affsp/lie.hpp"

#include <algorithm>
#include <map>

#include "affsp/errors.hpp"
#include "affsp/words.hpp"

namespace affsp {

namespace {

std::vector<std::vector<QVector>> empty_table(Index dim) {
  return std::vector<std::vector<QVector>>(dim, std::vector<QVector>(dim, QVector(dim)));
}

// Σ_cyclic [[e_i, e_j], e_k] expressed through the table.
QVector jacobiator(const LieAlgebra& L, Index i, Index j, Index k) {
  QVector sum(L.dim());
  auto add = [&](Index a, Index b, Index c) {
    for (const auto& e : L.bracket(a, b).entries()) sum.add_scaled(e.value, L.bracket(e.index, c));
  };
  add(i, j, k);
  add(j, k, i);
  add(k, i, j);
  return sum;
}

}  // namespace

LieAlgebra LieAlgebra::unchecked(std::vector<std::string> labels, std::vector<std::vector<QVector>> table) {
  if (table.size() != labels.size()) throw ShapeError("bracket table does not match label count");
  for (const auto& row : table) {
    if (row.size() != labels.size()) throw ShapeError("bracket table is not square");
    for (const auto& v : row)
      if (v.length() != labels.size()) throw ShapeError("bracket vector has the wrong length");
  }
  LieAlgebra L;
  L.labels_ = std::move(labels);
  L.table_ = std::move(table);
  return L;
}

LieAlgebra LieAlgebra::from_constants(std::vector<std::string> labels, const std::vector<Constant>& constants) {
  const Index dim = labels.size();
  std::vector<std::vector<std::vector<Entry>>> raw(dim, std::vector<std::vector<Entry>>(dim));
  for (const auto& c : constants) {
    if (c.i >= dim || c.j >= dim || c.k >= dim) throw ShapeError("structure constant index out of range");
    if (c.i >= c.j) throw DomainError("structure constants must be given with i < j");
    raw[c.i][c.j].push_back({c.k, c.value});
    raw[c.j][c.i].push_back({c.k, -c.value});
  }
  auto table = empty_table(dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) table[i][j] = QVector::from_entries(dim, std::move(raw[i][j]));
  LieAlgebra L = unchecked(std::move(labels), std::move(table));
  auto report = validate_lie(L);
  if (!report.passed()) throw ConsistencyError("structure constants violate the Jacobi identity");
  return L;
}

LieAlgebra LieAlgebra::from_fields(std::vector<PolyVectorField> fields) {
  using Key = std::pair<Variable, Monomial>;
  std::map<Key, Index> keys;
  for (const auto& f : fields)
    for (const auto& [v, p] : f.components())
      for (const auto& [m, c] : p.terms()) keys.emplace(Key{v, m}, 0);
  Index next = 0;
  for (auto& [k, idx] : keys) idx = next++;

  auto coords = [&](const PolyVectorField& f) {
    std::vector<Entry> entries;
    for (const auto& [v, p] : f.components())
      for (const auto& [m, c] : p.terms()) {
        auto it = keys.find(Key{v, m});
        if (it == keys.end()) throw DomainError("vector fields do not span a subalgebra: bracket leaves the span");
        entries.push_back({it->second, c});
      }
    return QVector::from_entries(keys.size(), std::move(entries));
  };

  const Index dim = fields.size();
  EchelonSpan span(keys.size(), true);
  for (const auto& f : fields)
    if (!span.insert(coords(f))) throw DomainError("vector field basis is linearly dependent");

  auto table = empty_table(dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j) {
      auto c = span.coordinates(coords(affsp::bracket(fields[i], fields[j])));
      if (!c) throw DomainError("vector fields do not span a subalgebra: bracket leaves the span");
      table[i][j] = *c;
      table[j][i] = QVector(dim).add_scaled(Rational(-1), *c);
    }
  std::vector<std::string> labels;
  labels.reserve(dim);
  for (const auto& f : fields) labels.push_back(f.str());
  LieAlgebra L = unchecked(std::move(labels), std::move(table));
  L.fields_ = std::move(fields);
  if (!validate_lie(L).passed()) throw ConsistencyError("vector field brackets violate the Jacobi identity");
  return L;
}

QVector LieAlgebra::bracket(const QVector& a, const QVector& b) const {
  if (a.length() != dim() || b.length() != dim()) throw ShapeError("bracket: vector length mismatch");
  QVector out(dim());
  for (const auto& ea : a.entries())
    for (const auto& eb : b.entries()) out.add_scaled(ea.value * eb.value, table_[ea.index][eb.index]);
  return out;
}

bool LieAlgebra::is_abelian() const {
  for (const auto& row : table_)
    for (const auto& v : row)
      if (!v.is_zero()) return false;
  return true;
}

LieAlgebra LieAlgebra::subalgebra(const std::vector<Index>& indices) const {
  std::vector<std::int64_t> position(dim(), -1);
  for (Index t = 0; t < indices.size(); ++t) {
    if (indices[t] >= dim()) throw DomainError("subalgebra index out of range");
    if (position[indices[t]] >= 0) throw DomainError("subalgebra index repeated");
    position[indices[t]] = static_cast<std::int64_t>(t);
  }
  const Index sub = indices.size();
  auto table = empty_table(sub);
  for (Index a = 0; a < sub; ++a)
    for (Index b = 0; b < sub; ++b) {
      std::vector<Entry> entries;
      for (const auto& e : table_[indices[a]][indices[b]].entries()) {
        if (position[e.index] < 0)
          throw DomainError("index set is not closed under the bracket: [" + labels_[indices[a]] + ", " +
                            labels_[indices[b]] + "] leaves it");
        entries.push_back({static_cast<Index>(position[e.index]), e.value});
      }
      table[a][b] = QVector::from_entries(sub, std::move(entries));
    }
  std::vector<std::string> labels;
  std::vector<PolyVectorField> fields;
  for (Index t : indices) {
    labels.push_back(labels_[t]);
    if (!fields_.empty()) fields.push_back(fields_[t]);
  }
  LieAlgebra L = unchecked(std::move(labels), std::move(table));
  L.fields_ = std::move(fields);
  return L;
}

LieAlgebra LieAlgebra::permuted(const std::vector<Index>& perm) const {
  if (perm.size() != dim()) throw DomainError("permutation has the wrong length");
  std::vector<Index> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (Index t = 0; t < sorted.size(); ++t)
    if (sorted[t] != t) throw DomainError("not a permutation");
  return subalgebra(perm);
}

nlohmann::json LieAlgebra::describe() const {
  nlohmann::json constants = nlohmann::json::array();
  for (Index i = 0; i < dim(); ++i)
    for (Index j = i + 1; j < dim(); ++j)
      for (const auto& e : table_[i][j].entries())
        constants.push_back({i, j, e.index, e.value.str()});
  return {{"dim", dim()}, {"labels", labels_}, {"constants", constants}};
}

LieValidation validate_lie(const LieAlgebra& L) {
  LieValidation report;
  const Index dim = L.dim();
  for (Index i = 0; i < dim; ++i)
    for (Index j = i; j < dim; ++j) {
      QVector sum = L.bracket(i, j) + L.bracket(j, i);
      if (!sum.is_zero()) {
        report.antisymmetry = false;
        report.failures.push_back({"antisymmetry", i, j, sum.leading_index()});
      }
    }
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j)
      for (Index k = j + 1; k < dim; ++k)
        if (!jacobiator(L, i, j, k).is_zero()) {
          report.jacobi = false;
          report.failures.push_back({"jacobi", i, j, k});
        }
  return report;
}

// ---- the three algebras ----------------------------------------------------

namespace {

std::vector<PolyVectorField> sp_fields(unsigned n) {
  std::vector<PolyVectorField> f;
  auto term = [](Variable coeff, Variable dir) { return PolyVectorField(dir, Polynomial(coeff)); };
  for (unsigned k = 1; k <= n; ++k) f.push_back(term(x(k), y(k)));
  for (unsigned k = 1; k <= n; ++k) f.push_back(term(y(k), x(k)));
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) f.push_back(term(x(i), y(j)) + term(x(j), y(i)));
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) f.push_back(term(y(i), x(j)) + term(y(j), x(i)));
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) f.push_back(term(y(j), y(i)) - term(x(i), x(j)));
  return f;
}

std::vector<PolyVectorField> ideal_fields(unsigned n) {
  std::vector<PolyVectorField> f;
  for (unsigned k = 1; k <= n; ++k) f.emplace_back(x(k), Polynomial(Rational(1)));
  for (unsigned k = 1; k <= n; ++k) f.emplace_back(y(k), Polynomial(Rational(1)));
  return f;
}

void require_rank(unsigned n) {
  if (n == 0) throw DomainError("n must be at least 1");
}

}  // namespace

std::shared_ptr<const LieAlgebra> build_sp(unsigned n) {
  require_rank(n);
  return std::make_shared<const LieAlgebra>(LieAlgebra::from_fields(sp_fields(n)));
}

std::shared_ptr<const LieAlgebra> build_I(unsigned n) {
  require_rank(n);
  return std::make_shared<const LieAlgebra>(LieAlgebra::from_fields(ideal_fields(n)));
}

AffineSymplectic build_g(unsigned n) {
  require_rank(n);
  auto fields = ideal_fields(n);
  for (auto& f : sp_fields(n)) fields.push_back(std::move(f));
  auto g = std::make_shared<const LieAlgebra>(LieAlgebra::from_fields(std::move(fields)));

  SubalgebraDecomposition dec;
  for (Index i = 0; i < 2 * n; ++i) dec.ideal_indices.push_back(i);
  for (Index i = 2 * n; i < g->dim(); ++i) dec.quotient_indices.push_back(i);

  for (Index a : dec.ideal_indices)
    for (Index b = 0; b < g->dim(); ++b)
      for (const auto& e : g->bracket(a, b).entries())
        if (e.index >= 2 * n || (b < 2 * n))
          throw ConsistencyError("I_n is not an abelian ideal of g_n");

  auto sp = build_sp(n);
  for (Index a = 0; a < sp->dim(); ++a)
    for (Index b = 0; b < sp->dim(); ++b) {
      std::vector<Entry> projected;
      for (const auto& e : g->bracket(dec.quotient_indices[a], dec.quotient_indices[b]).entries())
        if (e.index >= 2 * n) projected.push_back({e.index - 2 * n, e.value});
      if (QVector::from_entries(sp->dim(), std::move(projected)) != sp->bracket(a, b))
        throw ConsistencyError("g_n / I_n does not reproduce sp_n");
    }
  return {std::move(g), std::move(dec)};
}

// ---- modules ----------------------------------------------------------------

std::optional<std::pair<Index, Index>> module_law_violation(const LieAlgebra& L,
                                                            const std::vector<SparseMatrix>& A) {
  for (Index i = 0; i < L.dim(); ++i)
    for (Index j = i + 1; j < L.dim(); ++j) {
      SparseMatrix ab = multiply(A[i], A[j]);
      SparseMatrix ba = multiply(A[j], A[i]);
      Index d = A[i].rows();
      TripletBuilder lhs(d, d);
      for (Index r = 0; r < d; ++r) {
        for (const auto& e : ab.row(r)) lhs.add(r, e.index, e.value);
        for (const auto& e : ba.row(r)) lhs.add(r, e.index, -e.value);
        for (const auto& c : L.bracket(i, j).entries())
          for (const auto& e : A[c.index].row(r)) lhs.add(r, e.index, c.value * e.value);
      }
      if (!lhs.build().is_zero()) return std::make_pair(i, j);
    }
  return std::nullopt;
}

LieModule::LieModule(std::shared_ptr<const LieAlgebra> algebra, std::vector<SparseMatrix> actions, std::string name)
    : algebra_(std::move(algebra)), actions_(std::move(actions)), name_(std::move(name)) {
  if (actions_.size() != algebra_->dim()) throw ShapeError("module needs one action matrix per basis element");
  dim_ = actions_.empty() ? 0 : actions_.front().rows();
  for (const auto& a : actions_)
    if (a.rows() != dim_ || a.cols() != dim_) throw ShapeError("module action matrices must be square of equal size");
  if (auto bad = module_law_violation(*algebra_, actions_))
    throw ConsistencyError("module law fails for basis pair (" + std::to_string(bad->first) + ", " +
                           std::to_string(bad->second) + ") in module " + name_);
}

nlohmann::json LieModule::describe() const {
  nlohmann::json actions = nlohmann::json::array();
  for (const auto& a : actions_) {
    nlohmann::json entries = nlohmann::json::array();
    for (Index r = 0; r < a.rows(); ++r)
      for (const auto& e : a.row(r)) entries.push_back({r, e.index, e.value.str()});
    actions.push_back(entries);
  }
  return {{"name", name_}, {"dim", dim_}, {"algebra", algebra_->describe()}, {"actions", actions}};
}

LieModule trivial_module(std::shared_ptr<const LieAlgebra> algebra, Index dim) {
  std::vector<SparseMatrix> actions(algebra->dim(), SparseMatrix(dim, dim));
  return LieModule(std::move(algebra), std::move(actions), dim == 1 ? "trivial" : "trivial" + std::to_string(dim));
}

LieModule adjoint_module(std::shared_ptr<const LieAlgebra> algebra) {
  const Index d = algebra->dim();
  std::vector<SparseMatrix> actions;
  actions.reserve(d);
  for (Index i = 0; i < d; ++i) {
    TripletBuilder b(d, d);
    for (Index j = 0; j < d; ++j) b.add_column(j, algebra->bracket(j, i));
    actions.push_back(b.build());
  }
  return LieModule(std::move(algebra), std::move(actions), "adjoint");
}

LieModule restriction_module(const LieModule& m, const std::vector<Index>& sub) {
  auto algebra = std::make_shared<const LieAlgebra>(m.algebra().subalgebra(sub));
  std::vector<SparseMatrix> actions;
  for (Index i : sub) actions.push_back(m.action(i));
  return LieModule(std::move(algebra), std::move(actions), m.name() + "|sub");
}

LieModule coordinate_submodule(const LieModule& m, const std::vector<Index>& indices, std::string name) {
  std::vector<std::int64_t> position(m.dim(), -1);
  for (Index t = 0; t < indices.size(); ++t) {
    if (indices[t] >= m.dim()) throw DomainError("submodule index out of range");
    position[indices[t]] = static_cast<std::int64_t>(t);
  }
  std::vector<SparseMatrix> actions;
  for (const auto& a : m.actions()) {
    SparseMatrix t = a.transpose();  // row j of t = image of basis vector j
    TripletBuilder b(indices.size(), indices.size());
    for (Index col = 0; col < indices.size(); ++col)
      for (const auto& e : t.row(indices[col])) {
        if (position[e.index] < 0) throw DomainError("coordinate span is not a submodule");
        b.add(static_cast<Index>(position[e.index]), col, e.value);
      }
    actions.push_back(b.build());
  }
  return LieModule(m.algebra_ptr(), std::move(actions), std::move(name));
}

LieModule exterior_power_module(const LieModule& m, unsigned k) {
  WedgeBasis basis(m.dim(), k);
  std::vector<SparseMatrix> actions;
  actions.reserve(m.algebra().dim());
  for (const auto& a : m.actions()) {
    SparseMatrix images = a.transpose();  // row j = image of basis vector j
    TripletBuilder b(basis.size(), basis.size());
    for (Index col = 0; col < basis.size(); ++col) {
      Word w = basis.word(col);
      for (unsigned p = 0; p < k; ++p)
        for (const auto& e : images.row(w[p])) {
          Word v = w;
          v[p] = e.index;
          int sign = sort_with_sign(v);
          if (sign == 0) continue;
          b.add(basis.rank(v), col, sign > 0 ? e.value : -e.value);
        }
    }
    actions.push_back(b.build());
  }
  return LieModule(m.algebra_ptr(), std::move(actions), "wedge" + std::to_string(k) + "(" + m.name() + ")");
}

LieModule tensor_module(const LieModule& a, const LieModule& b) {
  if (!(a.algebra() == b.algebra())) throw DomainError("tensor_module: modules over different algebras");
  const Index da = a.dim(), db = b.dim();
  std::vector<SparseMatrix> actions;
  for (Index i = 0; i < a.algebra().dim(); ++i) {
    TripletBuilder t(da * db, da * db);
    const SparseMatrix& A = a.action(i);
    const SparseMatrix& B = b.action(i);
    for (Index r = 0; r < da; ++r)
      for (const auto& e : A.row(r))
        for (Index s = 0; s < db; ++s) t.add(r * db + s, e.index * db + s, e.value);
    for (Index r = 0; r < da; ++r)
      for (Index s = 0; s < db; ++s)
        for (const auto& e : B.row(s)) t.add(r * db + s, r * db + e.index, e.value);
    actions.push_back(t.build());
  }
  return LieModule(a.algebra_ptr(), std::move(actions), a.name() + "(x)" + b.name());
}

}  // namespace affsp
