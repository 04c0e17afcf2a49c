// Shared helpers for the unit tests: deterministic random words and a few
// deliberately naive reference implementations.

#ifndef CGT_TEST_SUPPORT_HPP_
#define CGT_TEST_SUPPORT_HPP_

#include <random>
#include <string>
#include <vector>

#include "cgt/freewords.hpp"

namespace cgt_test {

  using cgt::Letter;
  using cgt::Word;

  inline Word random_word(std::mt19937& rng, std::size_t n, std::size_t len) {
    std::uniform_int_distribution<int> d(0, static_cast<int>(2 * n) - 1);
    Word                               w;
    for (std::size_t i = 0; i < len; ++i) {
      w.push_back(cgt::letter_of_slot(static_cast<std::size_t>(d(rng))));
    }
    return w;
  }

  inline Word random_reduced(std::mt19937& rng, std::size_t n, std::size_t len) {
    Word w;
    while (w.size() < len) {
      Word x = random_word(rng, n, 1);
      if (w.empty() || w.back() != -x[0]) {
        w.push_back(x[0]);
      }
    }
    return w;
  }

  // Free reduction by repeated scanning, quadratic on purpose.
  inline Word naive_reduce(Word w) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == -w[i + 1]) {
          w.erase(w.begin() + i, w.begin() + i + 2);
          changed = true;
          break;
        }
      }
    }
    return w;
  }

  inline Word cat(Word a, Word const& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  // Every freely reduced word of length at most len over n generators.
  inline std::vector<Word> all_reduced(std::size_t n, std::size_t len) {
    std::vector<Word> out{Word{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() == len) {
        continue;
      }
      for (std::size_t s = 0; s < 2 * n; ++s) {
        Letter l = cgt::letter_of_slot(s);
        if (!out[i].empty() && out[i].back() == -l) {
          continue;
        }
        Word w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    }
    return out;
  }

}  // namespace cgt_test

#endif
