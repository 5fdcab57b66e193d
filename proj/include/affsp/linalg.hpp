#pragma once

// Exact sparse linear algebra over Q: vectors, matrices, rank, kernels.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "affsp/rational.hpp"

namespace affsp {

using Index = std::size_t;

struct Entry {
  Index index;
  Rational value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse vector over Q. Indices strictly increasing, values nonzero.
class QVector {
 public:
  QVector() = default;
  explicit QVector(Index length) : length_(length) {}

  /// Sums duplicate indices and drops zeros; throws ShapeError on out-of-range indices.
  static QVector from_entries(Index length, std::vector<Entry> entries);
  static QVector from_dense(std::span<const Rational> values);
  static QVector unit(Index length, Index i);

  Index length() const { return length_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  Rational at(Index i) const;
  /// Index of the first nonzero coordinate; vector must be nonzero.
  Index leading_index() const { return entries_.front().index; }
  const Rational& leading_value() const { return entries_.front().value; }

  QVector& scale(const Rational& factor);
  /// this += factor * other
  QVector& add_scaled(const Rational& factor, const QVector& other);

  friend QVector operator+(const QVector& a, const QVector& b);
  friend QVector operator-(const QVector& a, const QVector& b);
  friend bool operator==(const QVector& a, const QVector& b) = default;

 private:
  Index length_ = 0;
  std::vector<Entry> entries_;
};

/// Exact rational matrix in compressed-row form. Entries are kept row-major
/// with strictly increasing columns inside a row and no stored zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols);

  static SparseMatrix identity(Index n);
  /// Column j of the result is columns[j]; all columns must have length `rows`.
  static SparseMatrix from_columns(Index rows, std::span<const QVector> columns);
  static SparseMatrix from_rows(Index cols, std::span<const QVector> rows);
  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  /// Entries of row r, sorted by column. Entry::index is the column.
  std::span<const Entry> row(Index r) const;
  QVector row_vector(Index r) const;
  Rational at(Index r, Index c) const;

  SparseMatrix transpose() const;
  /// Matrix times column vector.
  QVector apply(const QVector& v) const;
  std::vector<QVector> columns() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) = default;

 private:
  friend class TripletBuilder;
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<std::size_t> row_start_{0};
  std::vector<Entry> entries_;
};

/// Accumulates (row, col, value) triplets; duplicates are summed.
/// Enforces the process-wide nonzero cap.
class TripletBuilder {
 public:
  TripletBuilder(Index rows, Index cols);
  void add(Index r, Index c, const Rational& value);
  void add_column(Index c, const QVector& column);
  SparseMatrix build();

 private:
  struct Triplet {
    Index row, col;
    Rational value;
  };
  Index rows_, cols_;
  std::vector<Triplet> triplets_;
};

// ---- memory guard and threading ------------------------------------------

/// Largest nonzero count any single matrix may hold (default 10^7).
std::size_t nnz_cap();
void set_nnz_cap(std::size_t cap);
/// Throws ResourceError if `count` exceeds the cap; `what` names the object.
void check_nnz(std::size_t count, const char* what);

/// Worker threads used inside rank/kernel (default: hardware concurrency).
unsigned linalg_threads();
void set_linalg_threads(unsigned threads);

// ---- operations ------------------------------------------------------------

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix stack_rows(std::span<const SparseMatrix> blocks);
SparseMatrix stack_columns(std::span<const SparseMatrix> blocks);

/// Rank over Q.
std::size_t rank(const SparseMatrix& m);

/// Basis of the right null space in reduced echelon form: each vector has
/// leading coordinate 1, zero at every other vector's leading coordinate,
/// and vectors are sorted by leading coordinate.
std::vector<QVector> kernel_basis(const SparseMatrix& m);

/// Reduced echelon basis of the span of `vectors` (same normalization as kernel_basis).
std::vector<QVector> echelon_basis(std::span<const QVector> vectors);

/// Incrementally maintained reduced echelon basis of a subspace of Q^length.
/// Optionally tracks how each basis row combines the inserted generators.
class EchelonSpan {
 public:
  explicit EchelonSpan(Index length, bool track_generators = false);

  /// Adds a generator; true when it enlarged the span.
  bool insert(const QVector& v);
  /// v minus its projection along the basis pivots; zero iff v is in the span.
  QVector reduce(const QVector& v) const;
  bool contains(const QVector& v) const { return reduce(v).is_zero(); }
  /// Coefficients over the inserted generators (in insertion order) that
  /// reproduce v, or nullopt when v is outside the span. Requires tracking.
  std::optional<QVector> coordinates(const QVector& v) const;

  Index length() const { return length_; }
  std::size_t dim() const { return rows_.size(); }
  std::size_t generators() const { return generators_; }
  /// Basis rows sorted by leading coordinate.
  std::vector<QVector> basis() const;

 private:
  Index length_;
  bool track_;
  std::size_t generators_ = 0;
  std::vector<QVector> rows_;
  std::vector<std::vector<Entry>> combos_;
  std::vector<std::pair<Index, std::size_t>> pivots_;  // sorted (leading index, row)
  const std::size_t* find_pivot(Index col) const;
};

/// Some x with m x = b, or nullopt when b is not in the column space.
std::optional<QVector> solve(const SparseMatrix& m, const QVector& b);

// ---- serialization ---------------------------------------------------------

/// "rows cols nnz" header, then one "row col num/den" line per entry, row-major.
void write_matrix(std::ostream& os, const SparseMatrix& m);
SparseMatrix read_matrix(std::istream& is);

}  // namespace affsp
