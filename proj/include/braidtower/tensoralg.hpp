#pragma once

// The tensor algebra of a braided space, truncated at a fixed degree D.
// Multiplication is word concatenation; the coproduct is the unique algebra
// map into the braided square sending every letter v to v (x) 1 + 1 (x) v,
// where the product on the square twists the middle legs through the lifted
// braiding.  Elements are sparse maps from words to coefficients.

#include "braiding.hpp"

#include <functional>
#include <sstream>

namespace braidtower {

template <Scalar K>
struct TensorElement {
  std::map<Word, K, WordLess> terms;
  bool truncated = false;

  bool is_zero() const { return terms.empty(); }
  int degree() const { return terms.empty() ? 0 : (int)terms.rbegin()->first.size(); }
  const Word& top_word() const { return terms.rbegin()->first; }

  K coeff(const Word& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? K() : it->second;
  }

  void add(const Word& w, const K& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  TensorElement& operator+=(const TensorElement& o) {
    truncated = truncated || o.truncated;
    for (auto& [w, c] : o.terms) add(w, c);
    return *this;
  }
  TensorElement& operator-=(const TensorElement& o) {
    truncated = truncated || o.truncated;
    for (auto& [w, c] : o.terms) add(w, -c);
    return *this;
  }
  TensorElement& operator*=(const K& s) {
    if (s.is_zero()) {
      terms.clear();
      return *this;
    }
    for (auto& [w, c] : terms) c *= s;
    return *this;
  }
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(TensorElement a, const K& s) { return a *= s; }
  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.terms == b.terms;
  }

  static TensorElement monomial(const Word& w, const K& c = K(1)) {
    TensorElement e;
    e.add(w, c);
    return e;
  }
  static TensorElement letter(Letter l) { return monomial(Word(1, l)); }
  static TensorElement unit() { return monomial(Word()); }
};

template <Scalar K>
struct TwoSidedElement {
  SparsePairVec<K> terms;
  bool truncated = false;

  bool is_zero() const { return terms.empty(); }
  void add(const WordPair& p, const K& c) { add_pair_term(terms, p, c); }

  TwoSidedElement& operator+=(const TwoSidedElement& o) {
    truncated = truncated || o.truncated;
    for (auto& [p, c] : o.terms) add(p, c);
    return *this;
  }
  TwoSidedElement& operator-=(const TwoSidedElement& o) {
    truncated = truncated || o.truncated;
    for (auto& [p, c] : o.terms) add(p, -c);
    return *this;
  }
  friend bool operator==(const TwoSidedElement& a, const TwoSidedElement& b) {
    return a.terms == b.terms;
  }

  static TwoSidedElement pure(const Word& u, const Word& w, const K& c = K(1)) {
    TwoSidedElement e;
    e.add(WordPair{u, w}, c);
    return e;
  }
};

struct AxiomReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    ok = false;
    if (failures.size() < 32) failures.push_back(what);
  }
};

template <Scalar K>
class TruncatedTensorAlgebra {
  BraidedSpace<K> space_;
  int D_;
  LiftedBraiding<K> lift_;
  mutable std::map<Word, TwoSidedElement<K>, WordLess> delta_memo_;
  mutable std::recursive_mutex mu_;

public:
  TruncatedTensorAlgebra(BraidedSpace<K> space, int D)
      : space_(std::move(space)), D_(D), lift_(space_) {
    if (D < 1) fail_config("truncation degree must be at least 1");
  }
  TruncatedTensorAlgebra(const TruncatedTensorAlgebra&) = delete;
  TruncatedTensorAlgebra& operator=(const TruncatedTensorAlgebra&) = delete;

  const BraidedSpace<K>& space() const { return space_; }
  const LiftedBraiding<K>& lift() const { return lift_; }
  int truncation() const { return D_; }
  size_t n() const { return space_.n; }
  const FieldInfo& field() const { return space_.field; }

  // product truncated at degree D; sets the truncation flag when words drop
  TensorElement<K> multiply(const TensorElement<K>& x, const TensorElement<K>& y) const {
    TensorElement<K> out;
    out.truncated = x.truncated || y.truncated;
    for (auto& [u, a] : x.terms)
      for (auto& [w, b] : y.terms) {
        if (u.size() + w.size() > (size_t)D_) {
          out.truncated = true;
          continue;
        }
        out.add(u + w, a * b);
      }
    return out;
  }

  // untruncated concatenation product, used by the ideal machinery which
  // works above D during stabilization
  static TensorElement<K> multiply_free(const TensorElement<K>& x, const TensorElement<K>& y) {
    TensorElement<K> out;
    out.truncated = x.truncated || y.truncated;
    for (auto& [u, a] : x.terms)
      for (auto& [w, b] : y.terms) out.add(u + w, a * b);
    return out;
  }

  // product on the braided square: (u (x) w)(u' (x) w') twists w past u'
  TwoSidedElement<K> multiply_twosided(const TwoSidedElement<K>& x,
                                       const TwoSidedElement<K>& y) const {
    TwoSidedElement<K> out;
    out.truncated = x.truncated || y.truncated;
    for (auto& [p, a] : x.terms)
      for (auto& [q, b] : y.terms) {
        const Word& u = p.first;
        const Word& w = p.second;
        const Word& u2 = q.first;
        const Word& w2 = q.second;
        K ab = a * b;
        for (auto& [mid, c] : lift_.apply(w, u2)) {
          // mid = (y, z) with c_{|w|,|u2|}(w (x) u2) = sum y (x) z
          if (u.size() + mid.first.size() > (size_t)D_ ||
              mid.second.size() + w2.size() > (size_t)D_) {
            out.truncated = true;
            continue;
          }
          out.add(WordPair{u + mid.first, mid.second + w2}, ab * c);
        }
      }
    return out;
  }

  const TwoSidedElement<K>& coproduct_word(const Word& w) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = delta_memo_.find(w);
    if (it != delta_memo_.end()) return it->second;
    TwoSidedElement<K> d;
    if (w.empty()) {
      d = TwoSidedElement<K>::pure(Word(), Word());
    } else {
      Word w0 = w.substr(0, w.size() - 1);
      Word l(1, w.back());
      TwoSidedElement<K> dl = TwoSidedElement<K>::pure(l, Word());
      dl += TwoSidedElement<K>::pure(Word(), l);
      d = multiply_twosided(coproduct_word(w0), dl);
    }
    return delta_memo_.emplace(w, std::move(d)).first->second;
  }

  TwoSidedElement<K> coproduct(const TensorElement<K>& x) const {
    TwoSidedElement<K> out;
    out.truncated = x.truncated;
    for (auto& [w, c] : x.terms) {
      for (auto& [p, v] : coproduct_word(w).terms) out.add(p, c * v);
    }
    return out;
  }

  // delta(x) = x (x) 1 + 1 (x) x - coproduct(x), defined on the augmentation
  // ideal only
  TwoSidedElement<K> reduced_coproduct(const TensorElement<K>& x) const {
    if (!x.coeff(Word()).is_zero())
      throw std::domain_error("reduced coproduct needs a degree >= 1 element");
    TwoSidedElement<K> out;
    for (auto& [w, c] : x.terms) {
      out.add(WordPair{w, Word()}, c);
      out.add(WordPair{Word(), w}, c);
    }
    out -= coproduct(x);
    return out;
  }

  // terms of the coproduct with both legs of positive degree
  TwoSidedElement<K> coproduct_mixed(const TensorElement<K>& x) const {
    TwoSidedElement<K> out;
    out.truncated = x.truncated;
    for (auto& [w, c] : x.terms)
      for (auto& [p, v] : coproduct_word(w).terms)
        if (!p.first.empty() && !p.second.empty()) out.add(p, c * v);
    return out;
  }

  // kernel of the mixed coproduct components on words of one degree
  SubspaceBasis<K> primitives_of_degree(int d) const {
    if (d < 1 || d > D_) fail_config("degree out of range for primitives");
    size_t n = space_.n;
    size_t cols = pow_size(n, d);
    // row index for a mixed pair (u, v): offset by |u|, then rank within block
    auto pair_row = [&](const WordPair& p) {
      size_t a = p.first.size();
      size_t off = 0;
      for (size_t k = 1; k < a; ++k) off += pow_size(n, k) * pow_size(n, d - k);
      return off + word_rank(p.first, n) * pow_size(n, d - a) + word_rank(p.second, n);
    };
    size_t nrows = 0;
    for (int a = 1; a < d; ++a) nrows += pow_size(n, a) * pow_size(n, d - a);
    DenseMatrix<K> m(nrows, cols);
    for (auto& w : words_of_degree(n, d)) {
      size_t col = word_rank(w, n);
      for (auto& [p, v] : coproduct_word(w).terms)
        if (!p.first.empty() && !p.second.empty()) m.at(pair_row(p), col) += v;
    }
    return kernel_basis(m, PivotSide::right);
  }

  // homogeneous primitives of degrees 2..top, one basis per degree
  std::vector<SubspaceBasis<K>> E_space(int top = 0) const {
    if (top == 0) top = D_;
    std::vector<SubspaceBasis<K>> out;
    for (int d = 2; d <= top; ++d) out.push_back(primitives_of_degree(d));
    return out;
  }

  AxiomReport check_bialgebra_axioms(int pair_cap = 0) const;

  std::string render(const TensorElement<K>& x) const { return render_element(x); }
};

template <Scalar K>
std::string render_element(const TensorElement<K>& x) {
  if (x.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [w, c] : x.terms) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (first) {
      if (neg) s += "-";
      first = false;
    } else {
      s += neg ? " - " : " + ";
    }
    if (w.empty()) {
      s += cs;
    } else if (cs == "1") {
      s += render_word(w);
    } else {
      s += cs + "*" + render_word(w);
    }
  }
  return s;
}

template <Scalar K>
std::string render_pair_element(const TwoSidedElement<K>& x) {
  if (x.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [p, c] : x.terms) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (first) {
      if (neg) s += "-";
      first = false;
    } else {
      s += neg ? " - " : " + ";
    }
    if (cs != "1") s += cs + "*";
    s += render_word(p.first) + " (x) " + render_word(p.second);
  }
  return s;
}

// Grammar: element := term (('+'|'-') term)*, term := coeff '*' word | word
// | coeff, word := '1' | 'x'<i> ('.' 'x'<i>)*.  Coefficients are integers or
// integer fractions like 1/2.
template <Scalar K>
TensorElement<K> parse_element(const std::string& input, size_t n, const FieldInfo& fi) {
  TensorElement<K> out;
  std::string s;
  for (char ch : input)
    if (!std::isspace((unsigned char)ch)) s += ch;
  if (s.empty()) throw std::invalid_argument("empty element");
  size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    K sign = K(1);
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = K(-1);
      ++i;
    } else if (!first) {
      throw std::invalid_argument("missing sign in element '" + input + "'");
    }
    first = false;
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string chunk = s.substr(i, j - i);
    if (chunk.empty()) throw std::invalid_argument("empty term in element '" + input + "'");
    i = j;
    std::string coeff_str, word_str;
    size_t star = chunk.find('*');
    if (star != std::string::npos) {
      coeff_str = chunk.substr(0, star);
      word_str = chunk.substr(star + 1);
    } else if (chunk[0] == 'x') {
      coeff_str = "1";
      word_str = chunk;
    } else {
      coeff_str = chunk;
      word_str = "1";
    }
    K c = bind_scalar(sign, fi) * parse_scalar<K>(coeff_str, fi);
    out.add(parse_word(word_str, n), c);
  }
  return out;
}

template <Scalar K>
AxiomReport TruncatedTensorAlgebra<K>::check_bialgebra_axioms(int pair_cap) const {
  AxiomReport rep;
  int cap = pair_cap > 0 ? pair_cap : std::min(D_, 6);
  size_t nn = space_.n;

  // counit and coassociativity on all words up to the cap
  for (int d = 0; d <= cap; ++d) {
    for (auto& w : words_of_degree(nn, d)) {
      const TwoSidedElement<K>& dw = coproduct_word(w);
      // (eps (x) id) delta = id = (id (x) eps) delta
      TensorElement<K> left, right;
      for (auto& [p, c] : dw.terms) {
        if (p.first.empty()) left.add(p.second, c);
        if (p.second.empty()) right.add(p.first, c);
      }
      if (!(left == TensorElement<K>::monomial(w)) || !(right == TensorElement<K>::monomial(w)))
        rep.fail("counit fails on " + render_word(w));
      // coassociativity via triple expansion
      std::map<std::tuple<Word, Word, Word>, K> lhs, rhs;
      auto put = [](auto& m, const Word& a, const Word& b, const Word& c2, const K& v) {
        auto key = std::make_tuple(a, b, c2);
        auto it = m.find(key);
        if (it == m.end()) m.emplace(key, v);
        else {
          it->second += v;
          if (it->second.is_zero()) m.erase(it);
        }
      };
      for (auto& [p, c] : dw.terms) {
        for (auto& [p2, c2] : coproduct_word(p.first).terms)
          put(lhs, p2.first, p2.second, p.second, c * c2);
        for (auto& [p2, c2] : coproduct_word(p.second).terms)
          put(rhs, p.first, p2.first, p2.second, c * c2);
      }
      if (lhs != rhs) rep.fail("coassociativity fails on " + render_word(w));
    }
  }

  // Br1: the coproduct is multiplicative for the twisted product
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; a + b <= cap; ++b)
      for (auto& u : words_of_degree(nn, a))
        for (auto& w : words_of_degree(nn, b)) {
          TwoSidedElement<K> lhs = coproduct_word(u + w);
          TwoSidedElement<K> rhs = multiply_twosided(coproduct_word(u), coproduct_word(w));
          if (!(lhs == rhs)) {
            rep.fail("product compatibility fails on (" + render_word(u) + ", " + render_word(w) +
                     ")");
          }
        }

  // Br2 and Br3 are the two hexagon identities for the lifted braiding
  std::string hex_witness;
  if (!hexagons_hold(lift_, cap, &hex_witness)) rep.fail(hex_witness);

  // Br4 and Br7: the unit and counit braid trivially
  for (int d = 0; d <= cap; ++d)
    for (auto& w : words_of_degree(nn, d)) {
      if (!(lift_.apply(Word(), w) == SparsePairVec<K>{{WordPair{w, Word()}, K(1)}}))
        rep.fail("unit braiding fails on " + render_word(w));
      if (!(lift_.apply(w, Word()) == SparsePairVec<K>{{WordPair{Word(), w}, K(1)}}))
        rep.fail("unit braiding fails on " + render_word(w));
    }

  // Br5: (delta (x) id) c = (id (x) c)(c (x) id)(id (x) delta)
  // Br6: (id (x) delta) c = (c (x) id)(id (x) c)(delta (x) id)
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; a + b <= cap; ++b)
      for (auto& u : words_of_degree(nn, a))
        for (auto& w : words_of_degree(nn, b)) {
          std::map<std::tuple<Word, Word, Word>, K> lhs5, rhs5, lhs6, rhs6;
          auto put = [](auto& m, const Word& x, const Word& y, const Word& z, const K& v) {
            auto key = std::make_tuple(x, y, z);
            auto it = m.find(key);
            if (it == m.end()) m.emplace(key, v);
            else {
              it->second += v;
              if (it->second.is_zero()) m.erase(it);
            }
          };
          for (auto& [p, c] : lift_.apply(u, w)) {
            for (auto& [p2, c2] : coproduct_word(p.first).terms)
              put(lhs5, p2.first, p2.second, p.second, c * c2);
            for (auto& [p2, c2] : coproduct_word(p.second).terms)
              put(lhs6, p.first, p2.first, p2.second, c * c2);
          }
          for (auto& [p, c] : coproduct_word(w).terms)
            for (auto& [q, c2] : lift_.apply(u, p.first))
              for (auto& [r, c3] : lift_.apply(q.second, p.second))
                put(rhs5, q.first, r.first, r.second, c * c2 * c3);
          for (auto& [p, c] : coproduct_word(u).terms)
            for (auto& [q, c2] : lift_.apply(p.second, w))
              for (auto& [r, c3] : lift_.apply(p.first, q.first))
                put(rhs6, r.first, r.second, q.second, c * c2 * c3);
          if (lhs5 != rhs5)
            rep.fail("coproduct-braiding (left) fails on (" + render_word(u) + ", " +
                     render_word(w) + ")");
          if (lhs6 != rhs6)
            rep.fail("coproduct-braiding (right) fails on (" + render_word(u) + ", " +
                     render_word(w) + ")");
        }

  return rep;
}

// dense coordinates of a homogeneous component, columns in the global order
template <Scalar K>
std::vector<K> element_degree_vec(const TensorElement<K>& x, size_t n, int d) {
  std::vector<K> v(pow_size(n, d));
  for (auto& [w, c] : x.terms)
    if ((int)w.size() == d) v[word_rank(w, n)] += c;
  return v;
}

template <Scalar K>
TensorElement<K> element_from_degree_vec(const std::vector<K>& v, size_t n, int d) {
  TensorElement<K> x;
  for (size_t r = 0; r < v.size(); ++r)
    if (!v[r].is_zero()) x.add(word_at(n, d, r), v[r]);
  return x;
}

}  // namespace braidtower
