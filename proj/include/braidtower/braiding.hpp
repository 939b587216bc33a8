#pragma once

// Braided vector spaces: a finite-dimensional space V with an invertible
// solution c of the braid equation on V^3, plus the lift of c to maps
// c_{a,b} : V^a (x) V^b -> V^b (x) V^a built from adjacent transpositions.

#include "linalg.hpp"
#include "words.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

namespace braidtower {

template <Scalar K>
using SparsePairVec = std::map<WordPair, K, WordPairLess>;

template <Scalar K>
void add_pair_term(SparsePairVec<K>& m, const WordPair& p, const K& c) {
  if (c.is_zero()) return;
  auto it = m.find(p);
  if (it == m.end()) {
    m.emplace(p, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

template <Scalar K>
struct BraidedSpace {
  size_t n = 0;
  DenseMatrix<K> c;  // n^2 x n^2, acting on V (x) V in the basis e_i (x) e_j
  FieldInfo field;

  // column entries of c applied to e_i (x) e_j, as (k, l, coeff) for e_k (x) e_l
  std::vector<std::vector<std::tuple<Letter, Letter, K>>> columns;

  size_t pair_index(Letter i, Letter j) const { return (size_t)(i - 1) * n + (j - 1); }

  void build_columns() {
    columns.assign(n * n, {});
    for (Letter i = 1; i <= (Letter)n; ++i)
      for (Letter j = 1; j <= (Letter)n; ++j) {
        auto& col = columns[pair_index(i, j)];
        for (Letter k = 1; k <= (Letter)n; ++k)
          for (Letter l = 1; l <= (Letter)n; ++l) {
            const K& v = c.at(pair_index(k, l), pair_index(i, j));
            if (!v.is_zero()) col.emplace_back(k, l, v);
          }
      }
  }

  const std::vector<std::tuple<Letter, Letter, K>>& apply(Letter i, Letter j) const {
    return columns[pair_index(i, j)];
  }
};

// Applies c at tensor slot (pos, pos+1) of each word of a sparse vector.
template <Scalar K>
std::map<Word, K, WordLess> apply_adjacent(const BraidedSpace<K>& bs,
                                           const std::map<Word, K, WordLess>& v, size_t pos) {
  std::map<Word, K, WordLess> out;
  for (auto& [w, coeff] : v) {
    Letter a = w[pos], b = w[pos + 1];
    for (auto& [k, l, entry] : bs.apply(a, b)) {
      Word nw = w;
      nw[pos] = k;
      nw[pos + 1] = l;
      K c2 = coeff * entry;
      auto it = out.find(nw);
      if (it == out.end()) {
        out.emplace(std::move(nw), c2);
      } else {
        it->second += c2;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

template <Scalar K>
std::optional<std::tuple<Letter, Letter, Letter>> yang_baxter_witness(const BraidedSpace<K>& bs) {
  for (Letter i = 1; i <= (Letter)bs.n; ++i)
    for (Letter j = 1; j <= (Letter)bs.n; ++j)
      for (Letter k = 1; k <= (Letter)bs.n; ++k) {
        Word w;
        w.push_back(i);
        w.push_back(j);
        w.push_back(k);
        std::map<Word, K, WordLess> e{{w, K(1)}};
        auto lhs = apply_adjacent(bs, apply_adjacent(bs, apply_adjacent(bs, e, 0), 1), 0);
        auto rhs = apply_adjacent(bs, apply_adjacent(bs, apply_adjacent(bs, e, 1), 0), 1);
        if (lhs != rhs) return std::make_tuple(i, j, k);
      }
  return std::nullopt;
}

template <Scalar K>
bool check_yang_baxter(const BraidedSpace<K>& bs) {
  return !yang_baxter_witness(bs).has_value();
}

template <Scalar K>
BraidedSpace<K> unchecked_braiding(size_t n, DenseMatrix<K> c, FieldInfo field) {
  if (c.rows() != n * n || c.cols() != n * n) fail_config("braiding matrix must be n^2 x n^2");
  BraidedSpace<K> bs;
  bs.n = n;
  bs.c = std::move(c);
  bs.field = field;
  bs.build_columns();
  return bs;
}

template <Scalar K>
BraidedSpace<K> make_braided_space(size_t n, DenseMatrix<K> c, FieldInfo field) {
  BraidedSpace<K> bs = unchecked_braiding<K>(n, std::move(c), field);
  if (auto w = yang_baxter_witness(bs)) {
    auto [i, j, k] = *w;
    fail_refusal("braid equation fails on basis triple (" + std::to_string(i) + "," +
                 std::to_string(j) + "," + std::to_string(k) + ")");
  }
  return bs;
}

// c(e_i (x) e_j) = q_ij e_j (x) e_i; every q_ij must be nonzero
template <Scalar K>
BraidedSpace<K> make_diagonal(const std::vector<std::vector<K>>& q, FieldInfo field) {
  size_t n = q.size();
  for (auto& row : q)
    if (row.size() != n) fail_config("diagonal braiding needs a square coefficient table");
  DenseMatrix<K> c(n * n, n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (q[i][j].is_zero())
        fail_refusal("diagonal braiding coefficient q_" + std::to_string(i + 1) +
                     std::to_string(j + 1) + " is zero");
      c.at(j * n + i, i * n + j) = bind_scalar(q[i][j], field);
    }
  return make_braided_space<K>(n, std::move(c), field);
}

template <Scalar K>
BraidedSpace<K> make_flip(size_t n, FieldInfo field) {
  std::vector<std::vector<K>> q(n, std::vector<K>(n, bind_scalar(K(1), field)));
  return make_diagonal<K>(q, field);
}

template <Scalar K>
bool is_flip(const BraidedSpace<K>& bs) {
  for (Letter i = 1; i <= (Letter)bs.n; ++i)
    for (Letter j = 1; j <= (Letter)bs.n; ++j) {
      auto& col = bs.apply(i, j);
      if (col.size() != 1) return false;
      auto& [k, l, v] = col[0];
      if (k != j || l != i || !(v == bind_scalar(K(1), bs.field))) return false;
    }
  return true;
}

// Monic minimal polynomial of c, coefficients in ascending degree.
template <Scalar K>
std::vector<K> minimal_polynomial(const BraidedSpace<K>& bs) {
  size_t m = bs.n * bs.n;
  std::vector<DenseMatrix<K>> powers{DenseMatrix<K>::identity(m)};
  for (;;) {
    size_t k = powers.size();
    // solve sum x_i vec(c^i) = vec(c^k) if possible
    DenseMatrix<K> sys(m * m, k + 1);
    DenseMatrix<K> ck = powers.back() * bs.c;
    for (size_t i = 0; i < k; ++i)
      for (size_t r = 0; r < m; ++r)
        for (size_t cc = 0; cc < m; ++cc) sys.at(r * m + cc, i) = powers[i].at(r, cc);
    for (size_t r = 0; r < m; ++r)
      for (size_t cc = 0; cc < m; ++cc) sys.at(r * m + cc, k) = ck.at(r, cc);
    SubspaceBasis<K> ker = kernel_basis(sys);
    // look for a kernel vector with nonzero last coordinate
    for (size_t r = 0; r < ker.dim(); ++r) {
      K last = ker.mat.at(r, k);
      if (last.is_zero()) continue;
      std::vector<K> coeffs(k + 1);
      for (size_t i = 0; i < k; ++i) coeffs[i] = ker.mat.at(r, i) / last;
      coeffs[k] = K(1);
      return coeffs;
    }
    powers.push_back(std::move(ck));
    if (k > m) throw std::logic_error("minimal polynomial loop failed to terminate");
  }
}

// Reports q when the minimal polynomial is exactly (X + 1)(X - q) with q != 0.
template <Scalar K>
std::optional<K> hecke_mark(const BraidedSpace<K>& bs) {
  std::vector<K> p = minimal_polynomial(bs);
  if (p.size() != 3) return std::nullopt;
  K one = bind_scalar(K(1), bs.field);
  K q = -p[0];
  if (q.is_zero()) return std::nullopt;
  if (!(p[1] == one - q)) return std::nullopt;
  return q;
}

// Lift of c to tensor blocks.  c_{a,0} and c_{0,b} are identities;
// c_{1,b} walks the single left strand across b strands one transposition at
// a time; c_{a,b} first moves the last strand of the left block, then the
// remaining a-1 strands.  Results are cached per word pair.
template <Scalar K>
class LiftedBraiding {
  const BraidedSpace<K>* bs_;
  mutable std::map<WordPair, SparsePairVec<K>, WordPairLess> memo_;
  mutable std::recursive_mutex mu_;

  SparsePairVec<K> compute(const Word& u, const Word& w) const {
    SparsePairVec<K> out;
    if (u.empty() || w.empty()) {
      out.emplace(WordPair{w, u}, K(1));
      return out;
    }
    if (u.size() == 1) {
      // c_{1,b} = (id^(b-1) (x) c) . (c_{1,b-1} (x) id)
      Word w0 = w.substr(0, w.size() - 1);
      Letter last = w.back();
      for (auto& [p, coeff] : apply(u, w0)) {
        const Word& mid = p.first;   // length b-1
        Letter x = p.second[0];      // the strand being moved
        for (auto& [k, l, entry] : bs_->apply(x, last)) {
          Word left = mid;
          left.push_back(k);
          Word right(1, l);
          add_pair_term(out, WordPair{std::move(left), std::move(right)}, coeff * entry);
        }
      }
      return out;
    }
    // c_{a,b} = (c_{a-1,b} (x) id) . (id^(a-1) (x) c_{1,b})
    Word u0 = u.substr(0, u.size() - 1);
    Word last(1, u.back());
    for (auto& [p1, c1] : apply(last, w)) {
      for (auto& [p2, c2] : apply(u0, p1.first)) {
        Word right = p2.second;
        right += p1.second;
        add_pair_term(out, WordPair{p2.first, std::move(right)}, c1 * c2);
      }
    }
    return out;
  }

public:
  explicit LiftedBraiding(const BraidedSpace<K>& bs) : bs_(&bs) {}

  const BraidedSpace<K>& space() const { return *bs_; }

  // c_{|u|,|w|} applied to u (x) w, as coefficients on pairs (w', u')
  const SparsePairVec<K>& apply(const Word& u, const Word& w) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = memo_.find(WordPair{u, w});
    if (it != memo_.end()) return it->second;
    SparsePairVec<K> r = compute(u, w);
    return memo_.emplace(WordPair{u, w}, std::move(r)).first->second;
  }

  // dense matrix of c_{a,b}; rows and columns index words of degree a+b in
  // the global order, inputs as u.w concatenations, outputs as w'.u'
  DenseMatrix<K> matrix(int a, int b) const {
    size_t n = bs_->n;
    size_t dim = pow_size(n, a + b);
    DenseMatrix<K> m(dim, dim);
    for (auto& u : words_of_degree(n, a))
      for (auto& w : words_of_degree(n, b)) {
        size_t col = word_rank(u + w, n);
        for (auto& [p, coeff] : apply(u, w))
          m.at(word_rank(p.first + p.second, n), col) = coeff;
      }
    return m;
  }
};

// Both hexagon identities on all splits with total degree <= D.
template <Scalar K>
bool hexagons_hold(const LiftedBraiding<K>& lift, int D, std::string* witness = nullptr) {
  size_t n = lift.space().n;
  for (int a = 0; a <= D; ++a)
    for (int a2 = 0; a + a2 <= D; ++a2)
      for (int b = 0; a + a2 + b <= D; ++b) {
        // c_{a+a2,b} vs (c_{a,b} (x) id) . (id (x) c_{a2,b})
        for (auto& u : words_of_degree(n, a))
          for (auto& u2 : words_of_degree(n, a2))
            for (auto& w : words_of_degree(n, b)) {
              SparsePairVec<K> lhs;
              for (auto& [p, coeff] : lift.apply(u + u2, w)) add_pair_term(lhs, p, coeff);
              SparsePairVec<K> rhs;
              for (auto& [p1, c1] : lift.apply(u2, w))
                for (auto& [p2, c2] : lift.apply(u, p1.first)) {
                  Word right = p2.second + p1.second;
                  add_pair_term(rhs, WordPair{p2.first, right}, c1 * c2);
                }
              if (lhs != rhs) {
                if (witness)
                  *witness = "left hexagon fails at (" + render_word(u) + ", " + render_word(u2) +
                             ", " + render_word(w) + ")";
                return false;
              }
              // mirrored identity: c_{b,a+a2}-style split of the right block
              SparsePairVec<K> lhs2;
              for (auto& [p, coeff] : lift.apply(w, u + u2)) add_pair_term(lhs2, p, coeff);
              SparsePairVec<K> rhs2;
              for (auto& [p1, c1] : lift.apply(w, u))
                for (auto& [p2, c2] : lift.apply(p1.second, u2)) {
                  Word left = p1.first + p2.first;
                  add_pair_term(rhs2, WordPair{left, p2.second}, c1 * c2);
                }
              if (lhs2 != rhs2) {
                if (witness)
                  *witness = "right hexagon fails at (" + render_word(w) + ", " + render_word(u) +
                             ", " + render_word(u2) + ")";
                return false;
              }
            }
      }
  return true;
}

// Membership tests against L (x) W + W (x) L and the two one-sided variants.
// `apply` sends a basis index pair (i, j) to the expansion of c(e_i (x) e_j)
// as (k, l, coeff) triples.  Everything reduces through the canonical basis
// of L, so no large ambient echelon forms are ever built.

template <Scalar K, class ApplyFn>
bool is_categorical(const SubspaceBasis<K>& L, size_t N, ApplyFn&& apply,
                    std::string* witness = nullptr) {
  // c(L (x) W) subset W (x) L and c(W (x) L) subset L (x) W
  for (size_t r = 0; r < L.dim(); ++r) {
    for (size_t e = 0; e < N; ++e) {
      for (int side = 0; side < 2; ++side) {
        // expand c(l (x) e_e) or c(e_e (x) l)
        std::map<std::pair<size_t, size_t>, K> img;
        for (size_t i = 0; i < N; ++i) {
          K c0 = L.mat.at(r, i);
          if (c0.is_zero()) continue;
          auto terms = side == 0 ? apply(i, e) : apply(e, i);
          for (auto& [k, l, v] : terms) {
            auto key = std::make_pair(k, l);
            auto it = img.find(key);
            if (it == img.end()) img.emplace(key, c0 * v);
            else {
              it->second += c0 * v;
              if (it->second.is_zero()) img.erase(it);
            }
          }
        }
        // side 0 requires every first-leg slice to lie in W with second leg in L:
        // group by the leg that must stay free and reduce the other by L
        std::map<size_t, std::vector<K>> slices;
        for (auto& [key, v] : img) {
          size_t free_leg = side == 0 ? key.first : key.second;
          size_t bound_leg = side == 0 ? key.second : key.first;
          auto& vec = slices[free_leg];
          if (vec.empty()) vec.assign(N, K());
          vec[bound_leg] += v;
        }
        for (auto& [free_leg, vec] : slices) {
          if (!L.contains(vec)) {
            if (witness)
              *witness = std::string(side == 0 ? "c(L@W)" : "c(W@L)") + " escapes at generator " +
                         std::to_string(r) + ", basis " + std::to_string(e);
            return false;
          }
        }
      }
    }
  }
  return true;
}

template <Scalar K, class ApplyFn>
bool is_precategorical(const SubspaceBasis<K>& L, size_t N, ApplyFn&& apply,
                       std::string* witness = nullptr) {
  // membership in M = L (x) W + W (x) L is the vanishing of the residue map
  // applied to both legs in turn
  for (size_t r = 0; r < L.dim(); ++r) {
    for (size_t e = 0; e < N; ++e) {
      for (int side = 0; side < 2; ++side) {
        std::map<std::pair<size_t, size_t>, K> img;
        for (size_t i = 0; i < N; ++i) {
          K c0 = L.mat.at(r, i);
          if (c0.is_zero()) continue;
          auto terms = side == 0 ? apply(i, e) : apply(e, i);
          for (auto& [k, l, v] : terms) {
            auto key = std::make_pair(k, l);
            auto it = img.find(key);
            if (it == img.end()) img.emplace(key, c0 * v);
            else {
              it->second += c0 * v;
              if (it->second.is_zero()) img.erase(it);
            }
          }
        }
        // reduce first legs by L
        std::map<size_t, std::vector<K>> by_second;
        for (auto& [key, v] : img) {
          auto& vec = by_second[key.second];
          if (vec.empty()) vec.assign(N, K());
          vec[key.first] += v;
        }
        std::map<size_t, std::vector<K>> by_first;  // residue, grouped by first leg
        for (auto& [j, vec] : by_second) {
          std::vector<K> res = L.reduce(vec);
          for (size_t i = 0; i < N; ++i) {
            if (res[i].is_zero()) continue;
            auto& row = by_first[i];
            if (row.empty()) row.assign(N, K());
            row[j] += res[i];
          }
        }
        for (auto& [i, row] : by_first) {
          if (!L.contains(row)) {
            if (witness)
              *witness = "c(L@W + W@L) escapes at generator " + std::to_string(r) + ", basis " +
                         std::to_string(e) + (side == 0 ? " (left)" : " (right)");
            return false;
          }
        }
      }
    }
  }
  return true;
}

// Convenience wrappers for subspaces of V itself.
template <Scalar K>
auto letter_apply(const BraidedSpace<K>& bs) {
  return [&bs](size_t i, size_t j) {
    std::vector<std::tuple<size_t, size_t, K>> out;
    for (auto& [k, l, v] : bs.apply((Letter)(i + 1), (Letter)(j + 1)))
      out.emplace_back(k - 1, l - 1, v);
    return out;
  };
}

template <Scalar K>
bool is_precategorical_in_V(const SubspaceBasis<K>& L, const BraidedSpace<K>& bs,
                            std::string* witness = nullptr) {
  return is_precategorical(L, bs.n, letter_apply(bs), witness);
}

template <Scalar K>
bool is_categorical_in_V(const SubspaceBasis<K>& L, const BraidedSpace<K>& bs,
                         std::string* witness = nullptr) {
  return is_categorical(L, bs.n, letter_apply(bs), witness);
}

}  // namespace braidtower
