// Rank and null space over Q.
//
// The matrix is first split into the connected components of its row/column
// incidence graph; each block is eliminated independently with exact
// fraction arithmetic and Markowitz pivoting (minimize (r-1)(c-1), ties to the
// lowest row, then lowest column). Graded complexes split into many small
// blocks, which keeps coefficient growth and fill local.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <thread>

#include "affsp/errors.hpp"
#include "affsp/linalg.hpp"

namespace affsp {

namespace {

struct Block {
  std::vector<Index> rows;  // global, ascending
  std::vector<Index> cols;  // global, ascending
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Blocks with at least one nonzero, ordered by smallest column. Columns that
// are entirely zero are reported separately.
std::vector<Block> split_blocks(const SparseMatrix& m, std::vector<Index>& empty_cols) {
  const Index R = m.rows(), C = m.cols();
  DisjointSets sets(R + C);
  std::vector<char> col_used(C, 0);
  for (Index r = 0; r < R; ++r)
    for (const auto& e : m.row(r)) {
      sets.unite(r, R + e.index);
      col_used[e.index] = 1;
    }
  std::vector<std::size_t> block_of_root(R + C, SIZE_MAX);
  std::vector<Block> blocks;
  for (Index c = 0; c < C; ++c) {
    if (!col_used[c]) {
      empty_cols.push_back(c);
      continue;
    }
    std::size_t root = sets.find(R + c);
    if (block_of_root[root] == SIZE_MAX) {
      block_of_root[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of_root[root]].cols.push_back(c);
  }
  for (Index r = 0; r < R; ++r) {
    if (m.row(r).empty()) continue;
    blocks[block_of_root[sets.find(r)]].rows.push_back(r);
  }
  return blocks;
}

struct PivotRecord {
  std::uint32_t col;
  std::vector<Entry> row;  // local column indices
};

class MarkowitzEliminator {
 public:
  MarkowitzEliminator(const SparseMatrix& m, const Block& block, bool keep_pivots)
      : keep_pivots_(keep_pivots) {
    const std::size_t ncols = block.cols.size();
    col_count_.assign(ncols, 0);
    col_rows_.assign(ncols, {});
    rows_.reserve(block.rows.size());
    for (Index gr : block.rows) {
      std::vector<Entry> local;
      local.reserve(m.row(gr).size());
      for (const auto& e : m.row(gr)) {
        auto it = std::lower_bound(block.cols.begin(), block.cols.end(), e.index);
        local.push_back({static_cast<Index>(it - block.cols.begin()), e.value});
      }
      auto r = static_cast<std::uint32_t>(rows_.size());
      for (const auto& e : local) {
        ++col_count_[e.index];
        col_rows_[e.index].push_back(r);
      }
      live_entries_ += local.size();
      rows_.push_back(std::move(local));
    }
    active_.assign(rows_.size(), 1);
    stamp_.assign(rows_.size(), 0);
  }

  std::size_t run() {
    std::size_t rank = 0;
    for (;;) {
      auto [pr, pc] = choose_pivot();
      if (pr == kNone) break;
      eliminate(pr, static_cast<std::uint32_t>(pc));
      ++rank;
    }
    return rank;
  }

  const std::vector<PivotRecord>& pivots() const { return pivots_; }

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  std::pair<std::uint32_t, Index> choose_pivot() {
    std::uint64_t best = UINT64_MAX;
    std::uint32_t best_row = kNone;
    Index best_col = 0;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (!active_[r]) continue;
      const auto& row = rows_[r];
      if (row.empty()) {
        active_[r] = 0;
        continue;
      }
      std::uint64_t rlen = row.size() - 1;
      for (const auto& e : row) {
        std::uint64_t cost = rlen * (col_count_[e.index] - 1);
        if (cost < best) {
          best = cost;
          best_row = r;
          best_col = e.index;
          if (best == 0) return {best_row, best_col};
        }
      }
    }
    return {best_row, best_col};
  }

  void eliminate(std::uint32_t pr, std::uint32_t pc) {
    ++epoch_;
    stamp_[pr] = epoch_;
    const std::vector<Entry>& prow = rows_[pr];
    const Rational* pivot_value = nullptr;
    for (const auto& e : prow)
      if (e.index == pc) pivot_value = &e.value;
    Rational inv = Rational(1) / *pivot_value;

    for (std::uint32_t r : col_rows_[pc]) {
      if (!active_[r] || stamp_[r] == epoch_) continue;
      stamp_[r] = epoch_;
      auto& row = rows_[r];
      auto hit = std::lower_bound(row.begin(), row.end(), static_cast<Index>(pc),
                                  [](const Entry& e, Index c) { return e.index < c; });
      if (hit == row.end() || hit->index != pc) continue;
      Rational factor = -(hit->value * inv);
      std::vector<Entry> out;
      out.reserve(row.size() + prow.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < prow.size()) {
        if (j == prow.size() || (i < row.size() && row[i].index < prow[j].index)) {
          out.push_back(std::move(row[i++]));
        } else if (i == row.size() || prow[j].index < row[i].index) {
          Index c = prow[j].index;
          out.push_back({c, factor * prow[j].value});
          ++col_count_[c];
          col_rows_[c].push_back(r);
          ++j;
        } else {
          Index c = row[i].index;
          if (c == pc) {
            --col_count_[c];
          } else {
            Rational v = std::move(row[i].value);
            v.add_product(factor, prow[j].value);
            if (v.is_zero())
              --col_count_[c];
            else
              out.push_back({c, std::move(v)});
          }
          ++i;
          ++j;
        }
      }
      live_entries_ += out.size();
      live_entries_ -= row.size();
      row = std::move(out);
    }
    check_nnz(live_entries_, "elimination fill");

    active_[pr] = 0;
    for (const auto& e : prow) --col_count_[e.index];
    col_rows_[pc].clear();
    col_rows_[pc].shrink_to_fit();
    if (keep_pivots_)
      pivots_.push_back({pc, std::move(rows_[pr])});
    else
      live_entries_ -= prow.size();
    rows_[pr].clear();
    rows_[pr].shrink_to_fit();
  }

  bool keep_pivots_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<char> active_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<PivotRecord> pivots_;
  std::size_t live_entries_ = 0;  // stored entries, including kept pivot rows
};

// Null space of one block in global coordinates, reduced echelon form.
std::vector<QVector> block_kernel(const SparseMatrix& m, const Block& block) {
  MarkowitzEliminator elim(m, block, true);
  elim.run();
  const auto& pivots = elim.pivots();
  const std::size_t ncols = block.cols.size();

  std::vector<std::int64_t> pivot_slot(ncols, -1);
  for (std::size_t t = 0; t < pivots.size(); ++t) pivot_slot[pivots[t].col] = static_cast<std::int64_t>(t);

  // Each pivot column as a combination of free columns (local indices).
  std::vector<std::vector<Entry>> expr(pivots.size());
  for (std::size_t t = pivots.size(); t-- > 0;) {
    const auto& rec = pivots[t];
    Rational pivot_value(0);
    for (const auto& e : rec.row)
      if (e.index == rec.col) pivot_value = e.value;
    Rational scale = Rational(-1) / pivot_value;
    std::vector<Entry> acc;
    for (const auto& e : rec.row) {
      if (e.index == rec.col) continue;
      Rational f = scale * e.value;
      std::int64_t slot = pivot_slot[e.index];
      if (slot < 0) {
        acc.push_back({e.index, f});
      } else {
        for (const auto& x : expr[static_cast<std::size_t>(slot)]) acc.push_back({x.index, f * x.value});
      }
    }
    expr[t] = QVector::from_entries(ncols, std::move(acc)).entries();
  }

  std::vector<std::vector<Entry>> by_free(ncols);
  for (std::size_t t = 0; t < pivots.size(); ++t)
    for (const auto& x : expr[t]) by_free[x.index].push_back({block.cols[pivots[t].col], x.value});

  std::vector<QVector> kernel;
  bool canonical = true;
  for (Index f = 0; f < ncols; ++f) {
    if (pivot_slot[f] >= 0) continue;
    auto entries = std::move(by_free[f]);
    entries.push_back({block.cols[f], Rational(1)});
    QVector v = QVector::from_entries(m.cols(), std::move(entries));
    if (v.leading_index() != block.cols[f]) canonical = false;
    kernel.push_back(std::move(v));
  }
  if (!canonical) kernel = echelon_basis(kernel);
  return kernel;
}

template <class Fn>
void for_each_block(std::size_t count, Fn&& fn) {
  unsigned threads = std::min<unsigned>(linalg_threads(), static_cast<unsigned>(count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  std::vector<Index> empty_cols;
  auto blocks = split_blocks(m, empty_cols);
  std::vector<std::size_t> ranks(blocks.size(), 0);
  for_each_block(blocks.size(), [&](std::size_t i) {
    const auto& b = blocks[i];
    if (b.rows.size() == 1 || b.cols.size() == 1) {
      ranks[i] = 1;
      return;
    }
    MarkowitzEliminator elim(m, b, false);
    ranks[i] = elim.run();
  });
  return std::accumulate(ranks.begin(), ranks.end(), std::size_t{0});
}

std::vector<QVector> kernel_basis(const SparseMatrix& m) {
  std::vector<Index> empty_cols;
  auto blocks = split_blocks(m, empty_cols);
  std::vector<std::vector<QVector>> parts(blocks.size());
  for_each_block(blocks.size(), [&](std::size_t i) { parts[i] = block_kernel(m, blocks[i]); });

  std::vector<QVector> kernel;
  for (Index c : empty_cols) kernel.push_back(QVector::unit(m.cols(), c));
  for (auto& part : parts)
    for (auto& v : part) kernel.push_back(std::move(v));
  std::sort(kernel.begin(), kernel.end(),
            [](const QVector& a, const QVector& b) { return a.leading_index() < b.leading_index(); });
  return kernel;
}

}  // namespace affsp
