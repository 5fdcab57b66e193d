#include "affsp/homology.hpp"

#include <sstream>

#include "affsp/errors.hpp"

namespace affsp {

namespace {

void require_degree(const ChainComplex& C, unsigned k) {
  if (k > C.cap()) throw RangeError("degree " + std::to_string(k) + " beyond cap " + std::to_string(C.cap()));
}

void require_below_cap(const ChainComplex& C, unsigned k, const char* what) {
  if (k >= C.cap())
    throw RangeError(std::string(what) + " in degree " + std::to_string(k) + " needs d_" + std::to_string(k + 1) +
                     "; complex built to cap " + std::to_string(C.cap()));
}

void require_chain(const ChainComplex& C, const Chain& ch) {
  require_degree(C, ch.degree);
  if (ch.coefficients.length() != C.dim(ch.degree)) throw ShapeError("chain length does not match the degree dimension");
}

}  // namespace

std::size_t betti(const ChainComplex& C, unsigned k) {
  require_degree(C, k);
  std::size_t used = C.rank_d(k) + (k < C.cap() ? C.rank_d(k + 1) : 0);
  return C.dim(k) - used;
}

std::size_t cobetti(const ChainComplex& C, unsigned k) {
  require_degree(C, k);
  std::size_t used = C.rank_d_transpose(k) + (k < C.cap() ? C.rank_d_transpose(k + 1) : 0);
  return C.dim(k) - used;
}

std::vector<Chain> homology_reps(const ChainComplex& C, unsigned k) {
  require_below_cap(C, k, "homology representatives");
  EchelonSpan span(C.dim(k));
  for (const QVector& b : C.differential(k + 1).columns()) span.insert(b);
  std::vector<Chain> reps;
  for (QVector& z : kernel_basis(C.differential(k))) {
    if (!span.insert(z)) continue;
    Rational lead = z.leading_value();
    if (!lead.is_one()) z.scale(Rational(1) / lead);
    reps.push_back({k, std::move(z)});
  }
  return reps;
}

bool is_cycle(const ChainComplex& C, const Chain& ch) {
  require_chain(C, ch);
  return C.differential(ch.degree).apply(ch.coefficients).is_zero();
}

bool is_boundary(const ChainComplex& C, const Chain& ch) {
  require_chain(C, ch);
  require_below_cap(C, ch.degree, "boundary test");
  if (ch.coefficients.is_zero()) return true;
  const SparseMatrix& d = C.differential(ch.degree + 1);
  SparseMatrix col = SparseMatrix::from_columns(d.rows(), std::span<const QVector>(&ch.coefficients, 1));
  const SparseMatrix parts[] = {d, col};
  return rank(stack_columns(parts)) == C.rank_d(ch.degree + 1);
}

HomologyReport homology_report(const ChainComplex& C, bool emit_cycles) {
  HomologyReport r{C.id(), kind_name(C.kind()), {}};
  for (unsigned k = 0; k <= C.cap(); ++k) {
    DegreeRecord rec;
    rec.degree = k;
    rec.dim = C.dim(k);
    rec.rank_d = C.rank_d(k);
    rec.exact = k < C.cap();
    if (rec.exact) rec.rank_d_next = C.rank_d(k + 1);
    rec.betti = betti(C, k);
    if (emit_cycles && rec.exact && rec.betti > 0) rec.representatives = homology_reps(C, k);
    r.degrees.push_back(std::move(rec));
  }
  return r;
}

std::vector<std::size_t> HomologyReport::betti_numbers() const {
  std::vector<std::size_t> out;
  for (const auto& d : degrees) out.push_back(d.betti);
  return out;
}

nlohmann::json chain_to_json(const ChainComplex& C, const Chain& ch) {
  auto terms = nlohmann::json::array();
  for (const Entry& e : ch.coefficients.entries())
    terms.push_back({{"index", e.index}, {"coefficient", e.value.str()}, {"label", C.basis_label(ch.degree, e.index)}});
  return terms;
}

nlohmann::json HomologyReport::to_json(const ChainComplex* labels) const {
  nlohmann::json j;
  j["complex"] = complex_id;
  j["kind"] = kind;
  j["degrees"] = nlohmann::json::array();
  for (const auto& d : degrees) {
    nlohmann::json row{{"degree", d.degree},
                       {"dim", d.dim},
                       {"rank_d", d.rank_d},
                       {"rank_d_next", d.rank_d_next ? nlohmann::json(*d.rank_d_next) : nlohmann::json(nullptr)},
                       {"betti", d.betti},
                       {"bound", d.exact ? "exact" : "upper"}};
    if (!d.representatives.empty()) {
      auto reps = nlohmann::json::array();
      for (const auto& ch : d.representatives) {
        if (labels) {
          reps.push_back(chain_to_json(*labels, ch));
        } else {
          auto terms = nlohmann::json::array();
          for (const Entry& e : ch.coefficients.entries())
            terms.push_back({{"index", e.index}, {"coefficient", e.value.str()}});
          reps.push_back(terms);
        }
      }
      row["representatives"] = reps;
    }
    j["degrees"].push_back(row);
  }
  j["betti"] = betti_numbers();
  return j;
}

std::string HomologyReport::to_csv() const {
  std::ostringstream os;
  os << "degree,dim,rank_d,rank_d_next,betti\n";
  for (const auto& d : degrees) {
    os << d.degree << ',' << d.dim << ',' << d.rank_d << ',';
    if (d.rank_d_next) os << *d.rank_d_next;
    os << ',' << d.betti << '\n';
  }
  return os.str();
}

std::string HomologyReport::to_text() const {
  std::ostringstream os;
  os << complex_id << '\n';
  os << "  degree        dim     rank d  rank d+1   betti\n";
  for (const auto& d : degrees) {
    char line[128];
    std::snprintf(line, sizeof line, "  %6u %10zu %10zu %9s %7zu%s\n", d.degree, static_cast<std::size_t>(d.dim),
                  d.rank_d, d.rank_d_next ? std::to_string(*d.rank_d_next).c_str() : "-", d.betti,
                  d.exact ? "" : "  (upper bound)");
    os << line;
    for (const auto& ch : d.representatives) {
      os << "         cycle:";
      for (const Entry& e : ch.coefficients.entries()) os << ' ' << e.value.str() << "*[" << e.index << ']';
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace affsp
