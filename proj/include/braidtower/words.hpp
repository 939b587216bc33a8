#pragma once

// Tensor words over an n-letter alphabet.  A word stores raw letter values
// 1..n, one per byte.  The global order sorts by length first, then within a
// length by the letter order x_n < ... < x_2 < x_1.  Reduction always
// eliminates the largest word of a relation, so a reduced element never gains
// words above its own filtration degree, and the surviving coset
// representatives are the smallest words of their cosets.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace braidtower {

using Letter = unsigned char;  // 1-based
using Word = std::string;      // bytes are letter values, not ASCII

inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return (unsigned char)a[i] > (unsigned char)b[i];
  return false;
}

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

using WordPair = std::pair<Word, Word>;

struct WordPairLess {
  bool operator()(const WordPair& a, const WordPair& b) const {
    if (a.first != b.first) return word_less(a.first, b.first);
    return word_less(a.second, b.second);
  }
};

inline size_t pow_size(size_t n, size_t d) {
  size_t r = 1;
  while (d--) r *= n;
  return r;
}

// dim of the span of words of degree <= d
inline size_t filt_dim(size_t n, int d) {
  size_t r = 0;
  for (int k = 0; k <= d; ++k) r += pow_size(n, k);
  return r;
}

// rank of a word among the words of its own degree, ascending in the global order
inline size_t word_rank(const Word& w, size_t n) {
  size_t r = 0;
  for (unsigned char ch : w) r = r * n + (n - ch);
  return r;
}

inline Word word_at(size_t n, int d, size_t rank) {
  Word w(d, 0);
  for (int i = d - 1; i >= 0; --i) {
    w[i] = (Letter)(n - rank % n);
    rank /= n;
  }
  return w;
}

// index of a word inside the full filtration basis (degree <= D), ascending order
inline size_t filt_index(const Word& w, size_t n) {
  return (w.empty() ? 0 : filt_dim(n, (int)w.size() - 1)) + word_rank(w, n);
}

inline std::vector<Word> words_of_degree(size_t n, int d) {
  std::vector<Word> out;
  out.reserve(pow_size(n, d));
  for (size_t r = 0; r < pow_size(n, d); ++r) out.push_back(word_at(n, d, r));
  return out;
}

inline std::vector<Word> words_up_to_degree(size_t n, int D) {
  std::vector<Word> out;
  out.reserve(filt_dim(n, D));
  for (int d = 0; d <= D; ++d)
    for (auto& w : words_of_degree(n, d)) out.push_back(w);
  return out;
}

inline std::string render_word(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += 'x' + std::to_string((int)(unsigned char)w[i]);
  }
  return s;
}

inline Word parse_word(const std::string& s, size_t n) {
  if (s == "1") return Word();
  Word w;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != 'x') throw std::invalid_argument("bad word '" + s + "'");
    ++i;
    size_t j = i;
    while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
    if (j == i) throw std::invalid_argument("bad word '" + s + "'");
    int v = std::stoi(s.substr(i, j - i));
    if (v < 1 || (size_t)v > n) throw std::invalid_argument("letter out of range in '" + s + "'");
    w.push_back((Letter)v);
    i = j;
    if (i < s.size()) {
      if (s[i] != '.') throw std::invalid_argument("bad word '" + s + "'");
      ++i;
      if (i == s.size()) throw std::invalid_argument("trailing '.' in '" + s + "'");
    }
  }
  return w;
}

}  // namespace braidtower
