#pragma once

// Index words for exterior and tensor powers.

#include <cstdint>
#include <vector>

#include "affsp/linalg.hpp"

namespace affsp {

using Word = std::vector<Index>;

/// Binomial coefficient as a 64-bit count (saturating at UINT64_MAX).
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
/// n^k (saturating).
std::uint64_t power(std::uint64_t n, std::uint64_t k);

/// Sorts `word` ascending and returns the permutation sign, or 0 when the word
/// has a repeated letter (the wedge vanishes).
int sort_with_sign(Word& word);

/// Strictly increasing words of length k over letters 0..letters-1 in
/// lexicographic order.
class WedgeBasis {
 public:
  WedgeBasis(Index letters, unsigned k);
  Index letters() const { return letters_; }
  unsigned degree() const { return k_; }
  Index size() const { return size_; }
  Word word(Index rank) const;
  /// Rank of a strictly increasing word.
  Index rank(const Word& w) const;

 private:
  Index letters_;
  unsigned k_;
  Index size_;
};

/// All words of length k over letters 0..letters-1 in lexicographic order
/// (first letter most significant).
class TensorBasis {
 public:
  TensorBasis(Index letters, unsigned k);
  Index letters() const { return letters_; }
  unsigned degree() const { return k_; }
  Index size() const { return size_; }
  Word word(Index rank) const;
  Index rank(const Word& w) const;

 private:
  Index letters_;
  unsigned k_;
  Index size_;
};

}  // namespace affsp
