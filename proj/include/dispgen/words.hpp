#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dispgen {

using Word = std::vector<std::uint16_t>;

// Fixed-length words over {0,...,alphabet-1}. Duplicate-free; iteration
// order is insertion order. Immutable after construction.
class WordSet {
 public:
  WordSet(int length, int alphabet, std::vector<Word> words)
      : length_(length), alphabet_(alphabet), words_(std::move(words)) {
    if (length < 1) throw std::domain_error("word length must be positive");
    if (alphabet < 2) throw std::domain_error("alphabet size must be at least 2");
    std::set<Word> seen;
    for (const auto& w : words_) {
      if (static_cast<int>(w.size()) != length)
        throw std::invalid_argument("word length mismatch");
      for (auto s : w)
        if (s >= alphabet)
          throw std::domain_error("symbol " + std::to_string(s) + " outside alphabet");
      if (!seen.insert(w).second) throw std::invalid_argument("duplicate word");
    }
  }

  int length() const { return length_; }
  int alphabet() const { return alphabet_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }

 private:
  int length_;
  int alphabet_;
  std::vector<Word> words_;
};

}  // namespace dispgen
