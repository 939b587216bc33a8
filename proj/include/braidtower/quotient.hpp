#pragma once

// Two-sided ideals of the truncated tensor algebra and their quotients.
// An ideal is held as a reduced echelon dictionary of sparse rows keyed by
// their largest word; reducing an element eliminates pivot words from the
// top down and never raises its filtration degree.  Coset representatives
// are spanned by the words that are not pivots.

#include "tensoralg.hpp"

#include <memory>

namespace braidtower {

template <Scalar K>
class SparseRowSpace {
  std::map<Word, TensorElement<K>, WordLess> rows_;

public:
  const std::map<Word, TensorElement<K>, WordLess>& rows() const { return rows_; }
  size_t dim() const { return rows_.size(); }
  bool has_pivot(const Word& w) const { return rows_.count(w) != 0; }

  TensorElement<K> reduce(TensorElement<K> x) const {
    if (x.truncated) fail_refusal("cannot reduce a truncated element");
    auto it = x.terms.end();
    while (it != x.terms.begin()) {
      --it;
      auto rit = rows_.find(it->first);
      if (rit == rows_.end()) continue;
      K c = it->second;
      Word w = it->first;
      x -= rit->second * c;
      // subtraction removed w and only added smaller words; resume below w
      it = x.terms.lower_bound(w);
    }
    return x;
  }

  bool contains(const TensorElement<K>& x) const { return reduce(x).is_zero(); }

  // coordinates on the canonical rows; throws if x is outside the span
  std::map<Word, K, WordLess> coordinates(const TensorElement<K>& x) const {
    std::map<Word, K, WordLess> coords;
    TensorElement<K> r = x;
    auto it = r.terms.end();
    while (it != r.terms.begin()) {
      --it;
      auto rit = rows_.find(it->first);
      if (rit == rows_.end()) continue;
      K c = it->second;
      Word w = it->first;
      coords[w] = c;
      r -= rit->second * c;
      it = r.terms.lower_bound(w);
    }
    if (!r.is_zero()) throw std::domain_error("element outside row space");
    return coords;
  }

  // insert a vector, keeping the dictionary fully reduced; false if dependent
  bool insert(TensorElement<K> x) {
    x = reduce(std::move(x));
    if (x.is_zero()) return false;
    K inv = K(1) / x.terms.rbegin()->second;
    x *= inv;
    const Word piv = x.terms.rbegin()->first;
    for (auto& [p, row] : rows_) {
      K c = row.coeff(piv);
      if (!c.is_zero()) row -= x * c;
    }
    rows_.emplace(piv, std::move(x));
    return true;
  }

  // number of rows whose words all have degree <= d, for d = 0..top
  std::vector<size_t> dims_by_degree(int top) const {
    std::vector<size_t> out(top + 1, 0);
    for (auto& [p, row] : rows_)
      if ((int)p.size() <= top) ++out[p.size()];
    for (int d = 1; d <= top; ++d) out[d] += out[d - 1];
    return out;
  }

  std::vector<const TensorElement<K>*> basis_rows() const {
    std::vector<const TensorElement<K>*> out;
    for (auto& [p, row] : rows_) out.push_back(&row);
    return out;
  }

  std::vector<TensorElement<K>> rows_up_to_degree(int d) const {
    std::vector<TensorElement<K>> out;
    for (auto& [p, row] : rows_)
      if ((int)p.size() <= d) out.push_back(row);
    return out;
  }

  friend bool operator==(const SparseRowSpace& a, const SparseRowSpace& b) {
    return a.rows_ == b.rows_;
  }
};

template <Scalar K>
struct IdealPresentation {
  std::vector<TensorElement<K>> generators;
  SparseRowSpace<K> span;  // reduced basis of the ideal inside filtration D
  int D = 0;
  int slack_used = 0;
  bool stabilized = false;

  std::vector<size_t> dims_by_degree() const { return span.dims_by_degree(D); }
};

// Span of { a g b } for all generators g and words a, b with total degree up
// to D + slack, intersected back with filtration D.  The slack is raised
// until the intersected dimensions repeat, so inhomogeneous generators get
// the low-degree elements that only appear after cancellation above D.
template <Scalar K>
IdealPresentation<K> ideal_span(const TruncatedTensorAlgebra<K>& alg,
                                const std::vector<TensorElement<K>>& generators,
                                int slack_budget = 4) {
  int D = alg.truncation();
  size_t n = alg.n();
  for (auto& g : generators)
    if (g.truncated) fail_refusal("truncated ideal generator");

  std::vector<size_t> prev_dims;
  int grown_to = -1;
  SparseRowSpace<K> kept;
  for (int s = 0; s <= slack_budget; ++s) {
    SparseRowSpace<K> sp;
    for (auto& g : generators) {
      if (g.is_zero()) continue;
      int dg = g.degree();
      for (int la = 0; la + dg <= D + s; ++la)
        for (auto& a : words_of_degree(n, la)) {
          TensorElement<K> ag =
              TruncatedTensorAlgebra<K>::multiply_free(TensorElement<K>::monomial(a), g);
          for (int lb = 0; la + dg + lb <= D + s; ++lb)
            for (auto& b : words_of_degree(n, lb))
              sp.insert(
                  TruncatedTensorAlgebra<K>::multiply_free(ag, TensorElement<K>::monomial(b)));
        }
    }
    std::vector<size_t> dims = sp.dims_by_degree(D);
    if (s > 0 && dims == prev_dims) {
      IdealPresentation<K> out;
      out.generators = generators;
      out.D = D;
      out.slack_used = s - 1;
      out.stabilized = true;
      for (auto& row : kept.rows_up_to_degree(D)) out.span.insert(row);
      return out;
    }
    prev_dims = std::move(dims);
    kept = std::move(sp);
    grown_to = s;
  }
  std::string msg = "ideal span did not stabilize with slack up to " +
                    std::to_string(slack_budget) + " (dims at slack " + std::to_string(grown_to) +
                    ":";
  for (size_t d : prev_dims) msg += " " + std::to_string(d);
  msg += ")";
  fail_instability(msg);
}

template <Scalar K>
struct BraidedIdealReport {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(const std::string& what) {
    ok = false;
    if (failures.size() < 16) failures.push_back(what);
  }
};

template <Scalar K>
class QuotientAlgebra {
  std::shared_ptr<const TruncatedTensorAlgebra<K>> base_;
  IdealPresentation<K> ideal_;

public:
  QuotientAlgebra(std::shared_ptr<const TruncatedTensorAlgebra<K>> base,
                  IdealPresentation<K> ideal)
      : base_(std::move(base)), ideal_(std::move(ideal)) {}

  const TruncatedTensorAlgebra<K>& base() const { return *base_; }
  std::shared_ptr<const TruncatedTensorAlgebra<K>> base_ptr() const { return base_; }
  const IdealPresentation<K>& ideal() const { return ideal_; }
  int truncation() const { return base_->truncation(); }
  size_t n() const { return base_->n(); }

  TensorElement<K> normal_form(const TensorElement<K>& x) const {
    if (x.truncated) fail_refusal("normal form of a truncated element");
    return ideal_.span.reduce(x);
  }

  // representative words of one degree (those that are not ideal pivots)
  std::vector<Word> std_words(int d) const {
    std::vector<Word> out;
    for (auto& w : words_of_degree(base_->n(), d))
      if (!ideal_.span.has_pivot(w)) out.push_back(w);
    return out;
  }

  std::vector<Word> std_words_up_to(int d) const {
    std::vector<Word> out;
    for (int k = 0; k <= d; ++k)
      for (auto& w : std_words(k)) out.push_back(w);
    return out;
  }

  std::vector<size_t> graded_dims() const {
    std::vector<size_t> out;
    for (int d = 0; d <= truncation(); ++d) out.push_back(std_words(d).size());
    return out;
  }

  std::vector<size_t> filtered_dims() const {
    std::vector<size_t> out = graded_dims();
    for (size_t d = 1; d < out.size(); ++d) out[d] += out[d - 1];
    return out;
  }

  // product of coset representatives; defined when the degrees stay inside D
  TensorElement<K> multiply(const TensorElement<K>& x, const TensorElement<K>& y) const {
    if (x.degree() + y.degree() > truncation())
      fail_refusal("quotient product exceeds the truncation degree");
    return normal_form(TruncatedTensorAlgebra<K>::multiply_free(x, y));
  }

  // image of the mixed coproduct under nf (x) nf, on representatives
  SparsePairVec<K> delta_mixed(const TensorElement<K>& x) const {
    TwoSidedElement<K> mixed = base_->coproduct_mixed(x);
    std::map<Word, TensorElement<K>, WordLess> by_second;
    for (auto& [p, c] : mixed.terms) by_second[p.second].add(p.first, c);
    SparsePairVec<K> out;
    for (auto& [second, elem] : by_second) {
      TensorElement<K> left = normal_form(elem);
      if (left.is_zero()) continue;
      TensorElement<K> right = normal_form(TensorElement<K>::monomial(second));
      for (auto& [lw, lc] : left.terms)
        for (auto& [rw, rc] : right.terms) add_pair_term(out, WordPair{lw, rw}, lc * rc);
    }
    return out;
  }

  // kernel of delta on representatives of filtration degree <= up_to
  SparseRowSpace<K> quotient_primitives(int up_to = 0) const {
    if (up_to == 0) up_to = truncation();
    std::vector<Word> cols = std_words_up_to(up_to);
    cols.erase(cols.begin());  // drop the empty word: delta lives on degree >= 1
    std::map<Word, size_t, WordLess> col_of;
    for (size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = i;

    std::map<WordPair, size_t, WordPairLess> row_of;
    std::vector<std::map<size_t, K>> col_data(cols.size());
    for (size_t i = 0; i < cols.size(); ++i) {
      for (auto& [p, c] : delta_mixed(TensorElement<K>::monomial(cols[i]))) {
        auto [it, fresh] = row_of.emplace(p, row_of.size());
        col_data[i][it->second] = c;
      }
    }
    DenseMatrix<K> m(row_of.size(), cols.size());
    for (size_t i = 0; i < cols.size(); ++i)
      for (auto& [r, c] : col_data[i]) m.at(r, i) = c;
    SubspaceBasis<K> ker = kernel_basis(m, PivotSide::right);

    SparseRowSpace<K> out;
    for (size_t r = 0; r < ker.dim(); ++r) {
      TensorElement<K> e;
      for (size_t i = 0; i < cols.size(); ++i)
        if (!ker.mat.at(r, i).is_zero()) e.add(cols[i], ker.mat.at(r, i));
      out.insert(std::move(e));
    }
    return out;
  }

  // the ideal must vanish under the counit, be a coideal, and be stable
  // under the braiding with the whole algebra on either side
  BraidedIdealReport<K> check_braided_ideal() const {
    BraidedIdealReport<K> rep;
    const auto& lift = base_->lift();
    size_t nn = base_->n();
    int D = truncation();
    for (auto& [piv, g] : ideal_.span.rows()) {
      if (!g.coeff(Word()).is_zero())
        rep.fail("counit does not vanish on row with pivot " + render_word(piv));
      // coideal: both-leg reduction of the coproduct must vanish
      bool coideal_ok = true;
      for (auto& [p, c] : residue_pair(base_->coproduct(g)))
        if (!c.is_zero()) coideal_ok = false;
      if (!coideal_ok) rep.fail("coproduct escapes the ideal on pivot " + render_word(piv));
      // braiding stability on both sides against every basis word
      for (int d = 0; d <= D && rep.failures.size() < 16; ++d)
        for (auto& e : words_of_degree(nn, d)) {
          for (int side = 0; side < 2; ++side) {
            TwoSidedElement<K> img;
            for (auto& [u, c] : g.terms) {
              const auto& ap = side == 0 ? lift.apply(u, e) : lift.apply(e, u);
              for (auto& [p, v] : ap) img.add(p, c * v);
            }
            bool ok = true;
            for (auto& [p, c] : residue_pair(img))
              if (!c.is_zero()) ok = false;
            if (!ok)
              rep.fail(std::string("braiding escapes the ideal on (") +
                       (side == 0 ? render_word(piv) + ", " + render_word(e)
                                  : render_word(e) + ", " + render_word(piv)) +
                       ")");
          }
        }
    }
    return rep;
  }

  // residue of an element of T (x) T modulo I (x) T + T (x) I
  SparsePairVec<K> residue_pair(const TwoSidedElement<K>& x) const {
    std::map<Word, TensorElement<K>, WordLess> by_second;
    for (auto& [p, c] : x.terms) by_second[p.second].add(p.first, c);
    std::map<Word, TensorElement<K>, WordLess> by_first;
    for (auto& [second, elem] : by_second) {
      TensorElement<K> left = normal_form(elem);
      for (auto& [lw, lc] : left.terms) by_first[lw].add(second, lc);
    }
    SparsePairVec<K> out;
    for (auto& [first, elem] : by_first) {
      TensorElement<K> right = normal_form(elem);
      for (auto& [rw, rc] : right.terms) add_pair_term(out, WordPair{first, rw}, rc);
    }
    return out;
  }

  // true iff products of elements of s span every representative space F_d,
  // using only products that stay inside the truncation
  bool generates_as_algebra(const std::vector<TensorElement<K>>& s) const {
    SparseRowSpace<K> span;
    span.insert(TensorElement<K>::unit());
    std::vector<TensorElement<K>> frontier{TensorElement<K>::unit()};
    while (!frontier.empty()) {
      std::vector<TensorElement<K>> next;
      for (auto& a : frontier)
        for (auto& g : s) {
          if (a.degree() + g.degree() > truncation()) continue;
          TensorElement<K> prod =
              normal_form(TruncatedTensorAlgebra<K>::multiply_free(a, g));
          TensorElement<K> red = span.reduce(prod);
          if (!red.is_zero()) {
            span.insert(red);
            next.push_back(std::move(prod));
          }
        }
      frontier = std::move(next);
    }
    return span.dim() == std_words_up_to(truncation()).size();
  }
};

}  // namespace braidtower
