#include "affsp/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "affsp/errors.hpp"

namespace affsp {

namespace {

std::atomic<std::size_t> g_nnz_cap{10'000'000};
std::atomic<unsigned> g_threads{0};

// out = a + factor * b over sorted entry lists.
std::vector<Entry> merge_scaled(const std::vector<Entry>& a, const Rational& factor,
                                const std::vector<Entry>& b) {
  std::vector<Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].index < a[i].index) {
      out.push_back({b[j].index, factor * b[j].value});
      ++j;
    } else {
      Rational v = a[i].value;
      v.add_product(factor, b[j].value);
      if (!v.is_zero()) out.push_back({a[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

// ---- QVector ---------------------------------------------------------------

QVector QVector::from_entries(Index length, std::vector<Entry> entries) {
  for (const auto& e : entries)
    if (e.index >= length) throw ShapeError("vector index out of range");
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.index < y.index; });
  QVector v(length);
  for (auto& e : entries) {
    if (!v.entries_.empty() && v.entries_.back().index == e.index) {
      v.entries_.back().value += e.value;
      if (v.entries_.back().value.is_zero()) v.entries_.pop_back();
    } else if (!e.value.is_zero()) {
      v.entries_.push_back(std::move(e));
    }
  }
  return v;
}

QVector QVector::from_dense(std::span<const Rational> values) {
  QVector v(values.size());
  for (Index i = 0; i < values.size(); ++i)
    if (!values[i].is_zero()) v.entries_.push_back({i, values[i]});
  return v;
}

QVector QVector::unit(Index length, Index i) {
  if (i >= length) throw ShapeError("unit vector index out of range");
  QVector v(length);
  v.entries_.push_back({i, Rational(1)});
  return v;
}

Rational QVector::at(Index i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, Index k) { return e.index < k; });
  if (it != entries_.end() && it->index == i) return it->value;
  return Rational(0);
}

QVector& QVector::scale(const Rational& factor) {
  if (factor.is_zero()) {
    entries_.clear();
    return *this;
  }
  for (auto& e : entries_) e.value *= factor;
  return *this;
}

QVector& QVector::add_scaled(const Rational& factor, const QVector& other) {
  if (other.length_ != length_) throw ShapeError("vector length mismatch");
  if (factor.is_zero() || other.is_zero()) return *this;
  entries_ = merge_scaled(entries_, factor, other.entries_);
  return *this;
}

QVector operator+(const QVector& a, const QVector& b) {
  QVector r = a;
  return r.add_scaled(Rational(1), b);
}

QVector operator-(const QVector& a, const QVector& b) {
  QVector r = a;
  return r.add_scaled(Rational(-1), b);
}

// ---- SparseMatrix ----------------------------------------------------------

SparseMatrix::SparseMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), row_start_(rows + 1, 0) {}

SparseMatrix SparseMatrix::identity(Index n) {
  TripletBuilder b(n, n);
  for (Index i = 0; i < n; ++i) b.add(i, i, Rational(1));
  return b.build();
}

SparseMatrix SparseMatrix::from_columns(Index rows, std::span<const QVector> columns) {
  TripletBuilder b(rows, columns.size());
  for (Index c = 0; c < columns.size(); ++c) {
    if (columns[c].length() != rows) throw ShapeError("column length does not match row count");
    b.add_column(c, columns[c]);
  }
  return b.build();
}

SparseMatrix SparseMatrix::from_rows(Index cols, std::span<const QVector> rows) {
  TripletBuilder b(rows.size(), cols);
  for (Index r = 0; r < rows.size(); ++r) {
    if (rows[r].length() != cols) throw ShapeError("row length does not match column count");
    for (const auto& e : rows[r].entries()) b.add(r, e.index, e.value);
  }
  return b.build();
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  Index ncols = rows.empty() ? 0 : rows.front().size();
  TripletBuilder b(rows.size(), ncols);
  for (Index r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw ShapeError("ragged dense matrix");
    for (Index c = 0; c < ncols; ++c) b.add(r, c, rows[r][c]);
  }
  return b.build();
}

std::span<const Entry> SparseMatrix::row(Index r) const {
  if (r >= rows_) throw ShapeError("row index out of range");
  return {entries_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
}

QVector SparseMatrix::row_vector(Index r) const {
  auto span = row(r);
  return QVector::from_entries(cols_, std::vector<Entry>(span.begin(), span.end()));
}

Rational SparseMatrix::at(Index r, Index c) const {
  if (c >= cols_) throw ShapeError("column index out of range");
  auto span = row(r);
  auto it = std::lower_bound(span.begin(), span.end(), c,
                             [](const Entry& e, Index k) { return e.index < k; });
  if (it != span.end() && it->index == c) return it->value;
  return Rational(0);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  std::vector<std::size_t> counts(cols_ + 1, 0);
  for (const auto& e : entries_) ++counts[e.index + 1];
  for (Index c = 0; c < cols_; ++c) counts[c + 1] += counts[c];
  t.row_start_ = counts;
  t.entries_.resize(entries_.size(), Entry{0, Rational(0)});
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (Index r = 0; r < rows_; ++r)
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      const auto& e = entries_[k];
      t.entries_[cursor[e.index]++] = Entry{r, e.value};
    }
  return t;
}

QVector SparseMatrix::apply(const QVector& v) const {
  if (v.length() != cols_) throw ShapeError("matrix-vector dimension mismatch");
  std::vector<Entry> out;
  for (Index r = 0; r < rows_; ++r) {
    auto span = row(r);
    if (span.empty()) continue;
    Rational acc(0);
    const auto& ve = v.entries();
    std::size_t i = 0, j = 0;
    while (i < span.size() && j < ve.size()) {
      if (span[i].index < ve[j].index) {
        ++i;
      } else if (ve[j].index < span[i].index) {
        ++j;
      } else {
        acc.add_product(span[i].value, ve[j].value);
        ++i;
        ++j;
      }
    }
    if (!acc.is_zero()) out.push_back({r, std::move(acc)});
  }
  return QVector::from_entries(rows_, std::move(out));
}

std::vector<QVector> SparseMatrix::columns() const {
  SparseMatrix t = transpose();
  std::vector<QVector> cols;
  cols.reserve(cols_);
  for (Index c = 0; c < cols_; ++c) cols.push_back(t.row_vector(c));
  return cols;
}

// ---- TripletBuilder ---------------------------------------------------------

TripletBuilder::TripletBuilder(Index rows, Index cols) : rows_(rows), cols_(cols) {}

void TripletBuilder::add(Index r, Index c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw ShapeError("matrix entry index out of range");
  if (value.is_zero()) return;
  triplets_.push_back({r, c, value});
  if (triplets_.size() > nnz_cap()) check_nnz(triplets_.size(), "matrix under construction");
}

void TripletBuilder::add_column(Index c, const QVector& column) {
  for (const auto& e : column.entries()) add(e.index, c, e.value);
}

SparseMatrix TripletBuilder::build() {
  std::stable_sort(triplets_.begin(), triplets_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows_, cols_);
  m.entries_.reserve(triplets_.size());
  std::vector<Index> entry_row;
  entry_row.reserve(triplets_.size());
  for (auto& t : triplets_) {
    if (!m.entries_.empty() && entry_row.back() == t.row && m.entries_.back().index == t.col) {
      m.entries_.back().value += t.value;
      continue;
    }
    if (!m.entries_.empty() && m.entries_.back().value.is_zero()) {
      m.entries_.pop_back();
      entry_row.pop_back();
    }
    m.entries_.push_back({t.col, std::move(t.value)});
    entry_row.push_back(t.row);
  }
  if (!m.entries_.empty() && m.entries_.back().value.is_zero()) {
    m.entries_.pop_back();
    entry_row.pop_back();
  }
  for (Index r : entry_row) ++m.row_start_[r + 1];
  for (Index r = 0; r < rows_; ++r) m.row_start_[r + 1] += m.row_start_[r];
  triplets_.clear();
  return m;
}

// ---- guards ----------------------------------------------------------------

std::size_t nnz_cap() { return g_nnz_cap.load(std::memory_order_relaxed); }
void set_nnz_cap(std::size_t cap) { g_nnz_cap.store(cap, std::memory_order_relaxed); }

void check_nnz(std::size_t count, const char* what) {
  if (count > nnz_cap()) {
    std::ostringstream msg;
    msg << "memory guard: " << what << " needs more than " << nnz_cap() << " nonzeros";
    throw ResourceError(msg.str());
  }
}

unsigned linalg_threads() {
  unsigned t = g_threads.load(std::memory_order_relaxed);
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return t;
}

void set_linalg_threads(unsigned threads) { g_threads.store(threads, std::memory_order_relaxed); }

// ---- products and stacking -------------------------------------------------

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("multiply: inner dimensions differ");
  TripletBuilder out(a.rows(), b.cols());
  std::vector<Rational> acc(b.cols());
  std::vector<char> touched(b.cols(), 0);
  std::vector<Index> touched_list;
  for (Index r = 0; r < a.rows(); ++r) {
    for (const auto& ea : a.row(r))
      for (const auto& eb : b.row(ea.index)) {
        if (!touched[eb.index]) {
          touched[eb.index] = 1;
          touched_list.push_back(eb.index);
          acc[eb.index] = Rational(0);
        }
        acc[eb.index].add_product(ea.value, eb.value);
      }
    std::sort(touched_list.begin(), touched_list.end());
    for (Index c : touched_list) {
      out.add(r, c, acc[c]);
      touched[c] = 0;
    }
    touched_list.clear();
  }
  return out.build();
}

SparseMatrix stack_rows(std::span<const SparseMatrix> blocks) {
  if (blocks.empty()) return SparseMatrix(0, 0);
  Index cols = blocks.front().cols();
  Index rows = 0;
  for (const auto& m : blocks) {
    if (m.cols() != cols) throw ShapeError("stack_rows: column counts differ");
    rows += m.rows();
  }
  TripletBuilder b(rows, cols);
  Index offset = 0;
  for (const auto& m : blocks) {
    for (Index r = 0; r < m.rows(); ++r)
      for (const auto& e : m.row(r)) b.add(offset + r, e.index, e.value);
    offset += m.rows();
  }
  return b.build();
}

SparseMatrix stack_columns(std::span<const SparseMatrix> blocks) {
  if (blocks.empty()) return SparseMatrix(0, 0);
  Index rows = blocks.front().rows();
  Index cols = 0;
  for (const auto& m : blocks) {
    if (m.rows() != rows) throw ShapeError("stack_columns: row counts differ");
    cols += m.cols();
  }
  TripletBuilder b(rows, cols);
  Index offset = 0;
  for (const auto& m : blocks) {
    for (Index r = 0; r < m.rows(); ++r)
      for (const auto& e : m.row(r)) b.add(r, offset + e.index, e.value);
    offset += m.cols();
  }
  return b.build();
}

// ---- EchelonSpan -----------------------------------------------------------

EchelonSpan::EchelonSpan(Index length, bool track_generators)
    : length_(length), track_(track_generators) {}

const std::size_t* EchelonSpan::find_pivot(Index col) const {
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col,
                             [](const auto& p, Index c) { return p.first < c; });
  if (it != pivots_.end() && it->first == col) return &it->second;
  return nullptr;
}

QVector EchelonSpan::reduce(const QVector& v) const {
  if (v.length() != length_) throw ShapeError("EchelonSpan: vector length mismatch");
  QVector r = v;
  // Rows are fully reduced, so the coefficient along each basis row is v's
  // own coordinate at that row's pivot.
  for (const auto& e : v.entries())
    if (const std::size_t* row = find_pivot(e.index)) r.add_scaled(-e.value, rows_[*row]);
  return r;
}

bool EchelonSpan::insert(const QVector& v) {
  if (v.length() != length_) throw ShapeError("EchelonSpan: vector length mismatch");
  std::size_t gen = generators_++;
  QVector r = v;
  std::vector<Entry> combo;
  if (track_) combo.push_back({gen, Rational(1)});
  for (const auto& e : v.entries())
    if (const std::size_t* row = find_pivot(e.index)) {
      r.add_scaled(-e.value, rows_[*row]);
      if (track_) combo = merge_scaled(combo, -e.value, combos_[*row]);
    }
  if (r.is_zero()) return false;
  Rational inv = Rational(1) / r.leading_value();
  r.scale(inv);
  if (track_)
    for (auto& c : combo) c.value *= inv;
  Index lead = r.leading_index();
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Rational f = rows_[k].at(lead);
    if (f.is_zero()) continue;
    rows_[k].add_scaled(-f, r);
    if (track_) combos_[k] = merge_scaled(combos_[k], -f, combo);
  }
  rows_.push_back(std::move(r));
  if (track_) combos_.push_back(std::move(combo));
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), lead,
                             [](const auto& p, Index c) { return p.first < c; });
  pivots_.insert(it, {lead, rows_.size() - 1});
  return true;
}

std::optional<QVector> EchelonSpan::coordinates(const QVector& v) const {
  if (!track_) throw DomainError("EchelonSpan: coordinates need generator tracking");
  if (v.length() != length_) throw ShapeError("EchelonSpan: vector length mismatch");
  QVector r = v;
  std::vector<Entry> combo;
  for (const auto& e : v.entries())
    if (const std::size_t* row = find_pivot(e.index)) {
      r.add_scaled(-e.value, rows_[*row]);
      combo = merge_scaled(combo, e.value, combos_[*row]);
    }
  if (!r.is_zero()) return std::nullopt;
  return QVector::from_entries(generators_, std::move(combo));
}

std::vector<QVector> EchelonSpan::basis() const {
  std::vector<QVector> out;
  out.reserve(rows_.size());
  for (const auto& [lead, row] : pivots_) out.push_back(rows_[row]);
  return out;
}

std::vector<QVector> echelon_basis(std::span<const QVector> vectors) {
  if (vectors.empty()) return {};
  EchelonSpan span(vectors.front().length());
  for (const auto& v : vectors) span.insert(v);
  return span.basis();
}

std::optional<QVector> solve(const SparseMatrix& m, const QVector& b) {
  if (b.length() != m.rows()) throw ShapeError("solve: right-hand side length mismatch");
  EchelonSpan span(m.rows(), true);
  for (const auto& col : m.columns()) span.insert(col);
  return span.coordinates(b);
}

// ---- serialization ---------------------------------------------------------

void write_matrix(std::ostream& os, const SparseMatrix& m) {
  os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (Index r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row(r))
      os << r << ' ' << e.index << ' ' << e.value.numerator() << '/' << e.value.denominator() << '\n';
}

SparseMatrix read_matrix(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("matrix stream: missing header");
  std::istringstream header(line);
  Index rows = 0, cols = 0;
  std::size_t nnz = 0;
  if (!(header >> rows >> cols >> nnz)) throw FormatError("matrix stream: malformed header");
  check_nnz(nnz, "serialized matrix");
  TripletBuilder b(rows, cols);
  Index prev_r = 0, prev_c = 0;
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!std::getline(is, line)) throw FormatError("matrix stream: truncated entry list");
    std::istringstream entry(line);
    Index r = 0, c = 0;
    std::string value;
    if (!(entry >> r >> c >> value)) throw FormatError("matrix stream: malformed entry");
    if (r >= rows || c >= cols) throw FormatError("matrix stream: entry out of range");
    if (k > 0 && (r < prev_r || (r == prev_r && c <= prev_c)))
      throw FormatError("matrix stream: entries not in canonical order");
    Rational v = Rational::parse(value);
    if (v.is_zero()) throw FormatError("matrix stream: explicit zero entry");
    b.add(r, c, v);
    prev_r = r;
    prev_c = c;
  }
  return b.build();
}

}  // namespace affsp
