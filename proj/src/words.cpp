#include "affsp/words.hpp"

#include <algorithm>
#include <limits>

#include "affsp/errors.hpp"

namespace affsp {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t power(std::uint64_t n, std::uint64_t k) {
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= n;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

int sort_with_sign(Word& word) {
  int sign = 1;
  // insertion sort counts transpositions
  for (std::size_t i = 1; i < word.size(); ++i)
    for (std::size_t j = i; j > 0 && word[j - 1] > word[j]; --j) {
      std::swap(word[j - 1], word[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < word.size(); ++i)
    if (word[i] == word[i - 1]) return 0;
  return sign;
}

WedgeBasis::WedgeBasis(Index letters, unsigned k)
    : letters_(letters), k_(k), size_(static_cast<Index>(binomial(letters, k))) {
  check_nnz(size_, "exterior power basis");
}

Word WedgeBasis::word(Index rank) const {
  if (rank >= size_) throw RangeError("wedge word rank out of range");
  Word w;
  w.reserve(k_);
  Index next = 0;
  for (unsigned i = 0; i < k_; ++i) {
    for (Index c = next;; ++c) {
      Index block = static_cast<Index>(binomial(letters_ - 1 - c, k_ - 1 - i));
      if (rank < block) {
        w.push_back(c);
        next = c + 1;
        break;
      }
      rank -= block;
    }
  }
  return w;
}

Index WedgeBasis::rank(const Word& w) const {
  if (w.size() != k_) throw ShapeError("wedge word has the wrong length");
  Index r = 0;
  Index next = 0;
  for (unsigned i = 0; i < k_; ++i) {
    if (w[i] < next || w[i] >= letters_) throw ShapeError("wedge word is not strictly increasing");
    for (Index c = next; c < w[i]; ++c) r += static_cast<Index>(binomial(letters_ - 1 - c, k_ - 1 - i));
    next = w[i] + 1;
  }
  return r;
}

TensorBasis::TensorBasis(Index letters, unsigned k)
    : letters_(letters), k_(k), size_(static_cast<Index>(power(letters, k))) {
  check_nnz(size_, "tensor power basis");
}

Word TensorBasis::word(Index rank) const {
  if (rank >= size_) throw RangeError("tensor word rank out of range");
  Word w(k_);
  for (unsigned i = k_; i-- > 0;) {
    w[i] = rank % letters_;
    rank /= letters_;
  }
  return w;
}

Index TensorBasis::rank(const Word& w) const {
  if (w.size() != k_) throw ShapeError("tensor word has the wrong length");
  Index r = 0;
  for (Index c : w) {
    if (c >= letters_) throw ShapeError("tensor word letter out of range");
    r = r * letters_ + c;
  }
  return r;
}

}  // namespace affsp
