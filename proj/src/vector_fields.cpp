#include "affsp/vector_fields.hpp"

#include <algorithm>
#include <cctype>

#include "affsp/errors.hpp"

namespace affsp {

std::string Variable::name() const { return (axis == Axis::X ? "x" : "y") + std::to_string(index); }

// ---- Monomial --------------------------------------------------------------

Monomial::Monomial(Variable v, unsigned power) {
  if (v.index == 0) throw DomainError("coordinate indices start at 1");
  if (power > 0) factors_.push_back({v, power});
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, p] : factors_) d += p;
  return d;
}

unsigned Monomial::exponent(Variable v) const {
  for (const auto& [w, p] : factors_)
    if (w == v) return p;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  const auto& fa = a.factors_;
  const auto& fb = b.factors_;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
      out.factors_.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].first < fa[i].first) {
      out.factors_.push_back(fb[j++]);
    } else {
      out.factors_.push_back({fa[i].first, fa[i].second + fb[j].second});
      ++i;
      ++j;
    }
  }
  return out;
}

std::string Monomial::str() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, p] : factors_) {
    if (!s.empty()) s += '*';
    s += v.name();
    if (p > 1) s += '^' + std::to_string(p);
  }
  return s;
}

// ---- Polynomial ------------------------------------------------------------

Polynomial::Polynomial(Rational c) { add_term(Monomial(), c); }
Polynomial::Polynomial(Variable v) { add_term(Monomial(v), Rational(1)); }
Polynomial::Polynomial(const Monomial& m, Rational c) { add_term(m, c); }

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

unsigned Polynomial::max_index() const {
  unsigned n = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, p] : m.factors()) n = std::max(n, v.index);
  return n;
}

Polynomial Polynomial::derivative(Variable v) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(v);
    if (e == 0) continue;
    Monomial rest;
    for (const auto& [w, p] : m.factors()) {
      unsigned q = (w == v) ? p - 1 : p;
      if (q > 0) rest = rest * Monomial(w, q);
    }
    out.add_term(rest, c * Rational(static_cast<std::int64_t>(e)));
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

// ---- PolyVectorField -------------------------------------------------------

PolyVectorField::PolyVectorField(Variable direction, Polynomial coefficient) {
  if (direction.index == 0) throw DomainError("coordinate indices start at 1");
  add_component(direction, coefficient);
}

void PolyVectorField::add_component(Variable v, const Polynomial& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = components_.emplace(v, p);
  if (inserted) return;
  it->second += p;
  if (it->second.is_zero()) components_.erase(it);
}

Polynomial PolyVectorField::component(Variable direction) const {
  auto it = components_.find(direction);
  return it == components_.end() ? Polynomial() : it->second;
}

unsigned PolyVectorField::max_index() const {
  unsigned n = 0;
  for (const auto& [v, p] : components_) n = std::max({n, v.index, p.max_index()});
  return n;
}

Polynomial PolyVectorField::apply(const Polynomial& f) const {
  Polynomial out;
  for (const auto& [v, p] : components_) out += p * f.derivative(v);
  return out;
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& o) {
  for (const auto& [v, p] : o.components_) add_component(v, p);
  return *this;
}

PolyVectorField& PolyVectorField::operator-=(const PolyVectorField& o) {
  for (const auto& [v, p] : o.components_) add_component(v, -p);
  return *this;
}

PolyVectorField& PolyVectorField::operator*=(const Rational& c) {
  if (c.is_zero()) {
    components_.clear();
    return *this;
  }
  for (auto& [v, p] : components_) p *= c;
  return *this;
}

std::string PolyVectorField::str() const {
  if (components_.empty()) return "0";
  std::string s;
  for (const auto& [v, p] : components_)
    for (const auto& [m, c] : p.terms()) {
      bool negative = c.sign() < 0;
      Rational mag = negative ? -c : c;
      if (s.empty())
        s += negative ? "-" : "";
      else
        s += negative ? " - " : " + ";
      if (!mag.is_one()) s += mag.str() + "*";
      if (!m.is_constant()) s += m.str() + "*";
      s += "d/d" + v.name();
    }
  return s;
}

namespace {

class FieldParser {
 public:
  explicit FieldParser(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) text_ += ch;
  }

  PolyVectorField parse() {
    PolyVectorField out;
    if (text_ == "0") return out;
    if (text_.empty()) fail("empty field");
    bool first = true;
    while (pos_ < text_.size()) {
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        sign = (text_[pos_] == '-') ? Rational(-1) : Rational(1);
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      out += term(sign);
      first = false;
    }
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("vector field parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  unsigned number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start)));
  }

  Variable variable() {
    char c = peek();
    if (c != 'x' && c != 'y') fail("expected coordinate x<i> or y<i>");
    ++pos_;
    unsigned i = number();
    if (i == 0) fail("coordinate indices start at 1");
    return {c == 'x' ? Axis::X : Axis::Y, i};
  }

  PolyVectorField term(Rational coefficient) {
    Monomial mono;
    bool have_direction = false;
    Variable direction{Axis::X, 1};
    for (;;) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        number();
        if (peek() == '/') {
          ++pos_;
          number();
        }
        coefficient *= Rational::parse(text_.substr(start, pos_ - start));
      } else if (c == 'd') {
        if (text_.compare(pos_, 3, "d/d") != 0) fail("expected d/d<coordinate>");
        pos_ += 3;
        if (have_direction) fail("term has two derivations");
        direction = variable();
        have_direction = true;
      } else if (c == 'x' || c == 'y') {
        Variable v = variable();
        unsigned power = 1;
        if (peek() == '^') {
          ++pos_;
          power = number();
        }
        mono = mono * Monomial(v, power);
      } else {
        fail("unexpected character");
      }
      if (peek() != '*') break;
      ++pos_;
    }
    if (!have_direction) fail("term lacks a d/d<coordinate> factor");
    return PolyVectorField(direction, Polynomial(mono, coefficient));
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyVectorField PolyVectorField::parse(std::string_view text) { return FieldParser(text).parse(); }

// ---- Hamiltonian fields and brackets ---------------------------------------

PolyVectorField hamiltonian_field(const Polynomial& h, unsigned n) {
  if (n == 0) throw DomainError("hamiltonian_field: n must be at least 1");
  if (h.max_index() > n) throw DomainError("hamiltonian_field: coordinate index exceeds n");
  PolyVectorField out;
  for (unsigned i = 1; i <= n; ++i) {
    Polynomial hx = h.derivative(x(i));
    Polynomial hy = h.derivative(y(i));
    if (!hx.is_zero()) out += PolyVectorField(y(i), hx);
    if (!hy.is_zero()) out -= PolyVectorField(x(i), hy);
  }
  return out;
}

PolyVectorField bracket(const PolyVectorField& a, const PolyVectorField& b) {
  PolyVectorField out;
  std::vector<Variable> dirs;
  for (const auto& [v, p] : a.components()) dirs.push_back(v);
  for (const auto& [v, p] : b.components()) dirs.push_back(v);
  std::sort(dirs.begin(), dirs.end());
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  for (Variable v : dirs) {
    Polynomial c = a.apply(b.component(v)) - b.apply(a.component(v));
    if (!c.is_zero()) out += PolyVectorField(v, c);
  }
  return out;
}

Polynomial poisson_bracket(const Polynomial& h, const Polynomial& k) {
  unsigned n = std::max(h.max_index(), k.max_index());
  Polynomial out;
  for (unsigned i = 1; i <= n; ++i)
    out += h.derivative(x(i)) * k.derivative(y(i)) - h.derivative(y(i)) * k.derivative(x(i));
  return out;
}

}  // namespace affsp
