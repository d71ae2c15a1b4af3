#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "relfree/rat.hpp"
#include "relfree/ratlin.hpp"

namespace relfree {

// Monomial of the free associative algebra: a word in generator indices
// 1..n. The empty word is the unit.
using Word = std::vector<int>;

// Length-first, then lexicographic by letter index. Fixed once so that word
// positions give stable column indices for row spaces.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Element of the free associative algebra K<x_1,...,x_n> over Q.
class AssocPoly {
 public:
  AssocPoly() = default;
  explicit AssocPoly(int n) : n_(n) {}
  static AssocPoly unit(int n) { return monomial(n, {}, Rat(1)); }
  static AssocPoly generator(int n, int i);
  static AssocPoly monomial(int n, Word w, Rat c);

  int rank() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, Rat, WordOrder>& terms() const { return terms_; }
  Rat coeff(const Word& w) const;

  // Coefficient of the empty word (the augmentation).
  Rat epsilon() const { return coeff({}); }

  // -1 for zero, else the common degree if homogeneous, else -2.
  int homogeneous_degree() const;
  AssocPoly component(int degree) const;
  int max_degree() const;

  AssocPoly& operator+=(const AssocPoly& o);
  AssocPoly& operator-=(const AssocPoly& o);
  AssocPoly& operator*=(const Rat& c);
  AssocPoly operator-() const;
  friend AssocPoly operator+(AssocPoly a, const AssocPoly& b) { a += b; return a; }
  friend AssocPoly operator-(AssocPoly a, const AssocPoly& b) { a -= b; return a; }
  friend AssocPoly operator*(AssocPoly a, const Rat& c) { a *= c; return a; }
  friend bool operator==(const AssocPoly& a, const AssocPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  void add_term(Word w, Rat c);

 private:
  int n_ = 0;
  std::map<Word, Rat, WordOrder> terms_;
};

// Bilinear word-concatenation product.
AssocPoly mul(const AssocPoly& f, const AssocPoly& g);

// Lie bracket fg - gf inside the associative algebra.
AssocPoly comm(const AssocPoly& f, const AssocPoly& g);

// Left partial derivative: f = eps(f) + sum_i x_i d_i(f); returns d_i(f).
AssocPoly partial(int i, const AssocPoly& f);

// Balanced test for homogeneous f of degree >= 2 (zero counts as balanced):
// membership in the span of all w - rot(w), rot moving the first letter to
// the end. Baseline route builds that span as a RowSpace; the necklace route
// checks that coefficients sum to zero over every cyclic-rotation class.
// is_balanced dispatches to the fast route; both are exposed so the
// equivalence stays testable.
bool is_balanced(const AssocPoly& f);
bool is_balanced_span_oracle(const AssocPoly& f);
bool is_balanced_necklace(const AssocPoly& f);

// The span of rotation differences in degree m over n letters; columns are
// words of degree m indexed by base-n value.
RowSpace rotation_difference_space(int n, int m);
int word_column(int n, const Word& w);

// Univariate polynomial over Q in the variable z; trailing zeros trimmed.
class PolyZ {
 public:
  PolyZ() = default;
  PolyZ(Rat c) { coeff_.push_back(std::move(c)); trim(); }  // NOLINT
  static PolyZ z(int power, Rat c = Rat(1));

  bool is_zero() const { return coeff_.empty(); }
  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  Rat coeff(int k) const {
    return k >= 0 && k < static_cast<int>(coeff_.size()) ? coeff_[k] : Rat(0);
  }

  PolyZ& operator+=(const PolyZ& o);
  PolyZ& operator-=(const PolyZ& o);
  PolyZ operator-() const;
  friend PolyZ operator+(PolyZ a, const PolyZ& b) { a += b; return a; }
  friend PolyZ operator-(PolyZ a, const PolyZ& b) { a -= b; return a; }
  friend PolyZ operator*(const PolyZ& a, const PolyZ& b);
  friend bool operator==(const PolyZ& a, const PolyZ& b) {
    return a.coeff_ == b.coeff_;
  }

  // Exact division; throws if the remainder is nonzero.
  PolyZ divide_exact(const PolyZ& d) const;

  std::string str() const;

 private:
  std::vector<Rat> coeff_;
  void trim();
};

// 2x2 matrix over K[z], row-major {a,b,c,d}.
struct Mat2 {
  std::array<PolyZ, 4> e;

  static Mat2 identity();
  static Mat2 zero() { return Mat2{}; }
  PolyZ trace() const { return e[0] + e[3]; }

  friend Mat2 operator+(const Mat2& x, const Mat2& y);
  friend Mat2 operator-(const Mat2& x, const Mat2& y);
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y) { return x.e == y.e; }
};

Mat2 comm(const Mat2& x, const Mat2& y);

// The 2x2 representation used by the tameness obstructions:
// x_2 -> (z,-z;z,-z), x_3 -> (0,z;0,0), x_4 -> (0,0;z,0), all other
// generators -> Id. Defined for rank >= 4 and extended multiplicatively.
Mat2 phi_generator(int n, int i);
Mat2 phi(const AssocPoly& f);

// Truncation modulo the ideal (z^m).
PolyZ mod_lambda(const PolyZ& p, int m);
Mat2 mod_lambda(const Mat2& a, int m);

// Determinant of the 2n x 2n matrix assembled from n x n blocks of Mat2,
// computed exactly over K[z] (fraction-free elimination), reduced mod (z^m).
PolyZ block_det_mod(const std::vector<std::vector<Mat2>>& blocks, int m);

// Determinant over K[z] of a square matrix of PolyZ.
PolyZ poly_det(std::vector<std::vector<PolyZ>> a);

}  // namespace relfree
