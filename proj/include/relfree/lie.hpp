#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "relfree/assoc.hpp"
#include "relfree/ratlin.hpp"

namespace relfree {

// n x n matrix over Q acting on the degree-1 component. Entries are stored
// row-major; the substitution convention is x_i -> sum_j g[j][i] x_j, i.e.
// column i holds the image of the i-th generator, so matrix products compose
// the same way as actions.
class GLMatrix {
 public:
  GLMatrix() = default;
  explicit GLMatrix(int n) : n_(n), e_(n * n, Rat(0)) {}
  static GLMatrix identity(int n);
  // y_i -> y_i + a y_j, other generators fixed
  static GLMatrix transvection(int n, int i, int j, const Rat& a);
  // y_i <-> y_j
  static GLMatrix swap_letters(int n, int i, int j);
  // y_i -> y_{rho[i-1]}, rho a permutation of {1..n}
  static GLMatrix permutation(const std::vector<int>& rho);

  int n() const { return n_; }
  const Rat& at(int r, int c) const { return e_[r * n_ + c]; }
  Rat& at(int r, int c) { return e_[r * n_ + c]; }

  GLMatrix operator*(const GLMatrix& o) const;
  Rat det() const;
  GLMatrix inverse() const;  // throws on singular input
  bool is_identity() const;

  friend bool operator==(const GLMatrix& a, const GLMatrix& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }

 private:
  int n_ = 0;
  std::vector<Rat> e_;
};

// ---- Lyndon basis bookkeeping ----------------------------------------------
// Basis of the degree-d component: Lyndon words of length d over {1..n} in
// lexicographic order, each carrying its standard factorization bracketing.
// Expansions into the free associative algebra are unitriangular: the
// expansion of w is w plus lexicographically larger words, which makes
// coordinate extraction a back-substitution.

bool is_lyndon(const Word& w);
int lyndon_dim(int n, int d);
const std::vector<Word>& lyndon_words(int n, int d);
// Index in lyndon_words(n, d), or -1 when w is not Lyndon.
int lyndon_index(int n, int d, const Word& w);
// For |w| >= 2: w = u v with v the longest proper Lyndon suffix.
std::pair<Word, Word> standard_factorization(const Word& w);

// Exact graded element of the free Lie algebra in Lyndon-basis coordinates.
class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(int n) : n_(n) {}
  static LieElement generator(int n, int i);
  static LieElement basis_element(int n, int d, int index);

  int rank() const { return n_; }
  bool is_zero() const { return comp_.empty(); }
  int min_degree() const;
  int max_degree() const;
  const std::map<int, SparseVec>& components() const { return comp_; }
  SparseVec component(int d) const;
  void set_component(int d, SparseVec v);

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement operator-() const;
  void scale(const Rat& c);
  LieElement truncated(int maxdeg) const;

  friend LieElement operator+(LieElement a, const LieElement& b) { a += b; return a; }
  friend LieElement operator-(LieElement a, const LieElement& b) { a -= b; return a; }
  friend bool operator==(const LieElement& a, const LieElement& b) {
    return a.n_ == b.n_ && a.comp_ == b.comp_;
  }

 private:
  int n_ = 0;
  std::map<int, SparseVec> comp_;  // degree -> coords over lyndon_words(n, d)
};

LieElement bracket(const LieElement& u, const LieElement& v);
// Same, discarding components of degree > maxdeg.
LieElement bracket_mod(const LieElement& u, const LieElement& v, int maxdeg);

// [[...[a, b_1], b_2], ..., b_m]; empty sequence gives a back.
LieElement left_normed(const LieElement& a, std::span<const LieElement> bs);
LieElement left_normed(const LieElement& a, const LieElement& b, int copies);

// Embedding into the free associative algebra (bracket -> uv - vu on the
// standard bracketing) and its inverse on Lie elements.
AssocPoly expand(const LieElement& u);
LieElement extract_lie(const AssocPoly& p);

// Substitution x_i -> sum_j g[j][i] x_j; degree-preserving.
LieElement gl_act(const GLMatrix& g, const LieElement& u);

// Image of every degree-d Lyndon basis element under the substitution, with
// one shared memo across the whole component (much cheaper than per-element
// calls when a full action matrix is needed).
std::vector<SparseVec> gl_act_matrix(const GLMatrix& g, int n, int d);

// The derivation sending x_j to x_i and the other generators to zero.
LieElement derivation_act(int i, int j, const LieElement& u);

}  // namespace relfree
