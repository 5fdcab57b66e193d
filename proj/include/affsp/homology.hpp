#pragma once

// Betti numbers, representative cycles and membership tests over Q.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "affsp/chain_complex.hpp"

namespace affsp {

/// dim ker d_k − rank d_{k+1}. At k = cap the second term is unavailable and
/// the value returned is dim ker d_k, an upper bound. RangeError beyond cap.
std::size_t betti(const ChainComplex& C, unsigned k);
/// Same quantity for the dual complex, from ranks of the transposed maps.
std::size_t cobetti(const ChainComplex& C, unsigned k);
/// True when b_k is exact (k < cap).
inline bool betti_is_exact(const ChainComplex& C, unsigned k) { return k < C.cap(); }

/// b_k cycles independent modulo boundaries, each scaled so that its first
/// nonzero coordinate is 1. Needs k < cap.
std::vector<Chain> homology_reps(const ChainComplex& C, unsigned k);

bool is_cycle(const ChainComplex& C, const Chain& ch);
/// Needs ch.degree < cap.
bool is_boundary(const ChainComplex& C, const Chain& ch);

struct DegreeRecord {
  unsigned degree = 0;
  Index dim = 0;
  std::size_t rank_d = 0;
  std::optional<std::size_t> rank_d_next;  // missing at the cap degree
  std::size_t betti = 0;
  bool exact = true;  // false at the cap: betti is an upper bound
  std::vector<Chain> representatives;
};

struct HomologyReport {
  std::string complex_id;
  std::string kind;
  std::vector<DegreeRecord> degrees;

  std::vector<std::size_t> betti_numbers() const;
  nlohmann::json to_json(const ChainComplex* labels = nullptr) const;
  /// Header "degree,dim,rank_d,rank_d_next,betti"; rank_d_next empty at the cap.
  std::string to_csv() const;
  std::string to_text() const;
};

/// Report for degrees 0..C.cap(). Representatives are attached for exact
/// degrees when `emit_cycles` is set.
HomologyReport homology_report(const ChainComplex& C, bool emit_cycles = false);

/// Chain rendered as [{"index", "coefficient", "label"}] entries.
nlohmann::json chain_to_json(const ChainComplex& C, const Chain& ch);

}  // namespace affsp
