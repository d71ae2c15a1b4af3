#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "relfree/lie.hpp"

namespace relfree {

struct DegreeOverflow : Error {
  using Error::Error;
};

// Commutative polynomial in t_1..t_n over Q, exponent vector -> coefficient.
// Acts on the derived algebra of a quotient via t_i -> ad(y_i).
class Poly {
 public:
  Poly() = default;
  explicit Poly(int n) : n_(n) {}
  static Poly one(int n);
  static Poly t(int n, int i);
  static Poly monomial(int n, std::vector<int> exp, Rat c);

  int rank() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  int total_degree() const;  // max over terms; -1 for zero
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  // Substitution t_i -> sum_j g[j][i] t_j.
  Poly gl_act(const GLMatrix& g) const;

  void add_term(std::vector<int> exp, Rat c);
  std::string str() const;

 private:
  int n_ = 0;
  std::map<std::vector<int>, Rat> terms_;
};

// The graded fully invariant ideals this engine knows how to span.
enum class IdealKind {
  DerivedSquared,  // second derived ideal: quotient is the free metabelian algebra
  Gamma3Derived,   // third lower-central term of the derived subalgebra
  DerivedGamma3,   // derived ideal of the third lower-central term
  In,              // Gamma3Derived + DerivedGamma3
  Jn,              // alias of Gamma3Derived (the center-by-metabelian-like case)
  GammaC,          // everything of degree >= c
};

struct IdealSpec {
  IdealKind kind = IdealKind::DerivedSquared;
  int c = 0;  // used by GammaC

  static IdealSpec derived_squared() { return {IdealKind::DerivedSquared, 0}; }
  static IdealSpec gamma3_derived() { return {IdealKind::Gamma3Derived, 0}; }
  static IdealSpec derived_gamma3() { return {IdealKind::DerivedGamma3, 0}; }
  static IdealSpec in() { return {IdealKind::In, 0}; }
  static IdealSpec jn() { return {IdealKind::Jn, 0}; }
  static IdealSpec gamma_c(int c) { return {IdealKind::GammaC, c}; }

  std::string name() const;
  friend bool operator==(const IdealSpec& a, const IdealSpec& b) {
    return a.kind == b.kind && a.c == b.c;
  }
};

// Degree-d spanning family of the ideal, as free Lie elements. The families
// are not iterated to closure; a dedicated invariant checks they are already
// ideals degree by degree.
std::vector<LieElement> ideal_spanning_family(const IdealSpec& spec, int n,
                                              int d);

class QuotientContext;

// Element of a quotient in canonical coordinates: per degree, the residue of
// a free-Lie representative against the ideal row space (zero at all pivot
// columns, so coordinates are canonical and reproducible).
class QuotElement {
 public:
  QuotElement() = default;
  explicit QuotElement(const QuotientContext* ctx) : ctx_(ctx) {}

  const QuotientContext* context() const { return ctx_; }
  bool is_zero() const { return comp_.empty(); }
  int min_degree() const { return comp_.empty() ? 0 : comp_.begin()->first; }
  int max_degree() const { return comp_.empty() ? 0 : comp_.rbegin()->first; }
  const std::map<int, SparseVec>& components() const { return comp_; }
  SparseVec component(int d) const;
  QuotElement component_element(int d) const;
  LieElement lift() const;

  QuotElement& operator+=(const QuotElement& o);
  QuotElement& operator-=(const QuotElement& o);
  QuotElement operator-() const;
  void scale(const Rat& c);
  friend QuotElement operator+(QuotElement a, const QuotElement& b) { a += b; return a; }
  friend QuotElement operator-(QuotElement a, const QuotElement& b) { a -= b; return a; }
  friend bool operator==(const QuotElement& a, const QuotElement& b) {
    return a.ctx_ == b.ctx_ && a.comp_ == b.comp_;
  }

 private:
  const QuotientContext* ctx_ = nullptr;
  std::map<int, SparseVec> comp_;
  friend class QuotientContext;
};

// A relatively free quotient materialized up to a degree bound: per degree,
// the RREF row space of the ideal component in Lyndon coordinates plus the
// complement columns fixing canonical quotient coordinates. Construction is
// single-threaded; a completed context is immutable and shareable.
//
// Brackets inside the context are additionally cut at maxdeg, i.e. the
// modeled algebra is the quotient by ideal + everything of degree > maxdeg.
// reduce() of an input that already exceeds maxdeg fails loudly instead.
class QuotientContext {
 public:
  QuotientContext(int n, IdealSpec spec, int maxdeg);

  int rank() const { return n_; }
  int maxdeg() const { return maxdeg_; }
  const IdealSpec& spec() const { return spec_; }

  int ambient_dim(int d) const;    // dim of the free degree-d component
  int ideal_rank(int d) const;
  int component_dim(int d) const;  // ambient_dim - ideal_rank
  const RowSpace& ideal_rowspace(int d) const;
  const std::vector<int>& complement(int d) const;

  QuotElement zero() const { return QuotElement(this); }
  QuotElement generator(int i) const;
  QuotElement reduce(const LieElement& u) const;
  SparseVec reduce_component(int d, SparseVec v) const;

  // Lie bracket of canonical representatives, reduced; components beyond
  // maxdeg vanish in the modeled algebra.
  QuotElement bracket(const QuotElement& a, const QuotElement& b) const;

  // u * f with t_i acting as ad(y_i), monomials applied t_1-first. Requires
  // u to have no degree-1 component and f != 0; fails loudly if the result
  // would not fit below maxdeg.
  QuotElement dot_action(const QuotElement& u, const Poly& f) const;

  QuotElement gl_act(const GLMatrix& g, const QuotElement& u) const;
  QuotElement derivation_act(int i, int j, const QuotElement& u) const;

 private:
  int n_;
  IdealSpec spec_;
  int maxdeg_;
  struct Deg {
    RowSpace ideal;
    std::vector<int> complement;
  };
  std::vector<Deg> degs_;  // index d in 1..maxdeg
};

// Shorthand for [[y_i, y_j] * f, [y_k, y_l]] and [[y_i, y_j], [y_k, y_l] * f].
QuotElement u_elem(const QuotientContext& ctx, int i, int j, const Poly& f,
                   int k, int l);
QuotElement v_elem(const QuotientContext& ctx, int i, int j, int k, int l,
                   const Poly& f);

// Natural map onto a coarser quotient (the source ideal must be contained in
// the target's, e.g. nilpotent-by-abelian onto metabelian).
QuotElement project(const QuotElement& u, const QuotientContext& target);
bool ideal_includes(const IdealSpec& bigger, const IdealSpec& smaller);

// The degree-d component of the second derived subalgebra of the quotient,
// with both the unconstrained spanning family (all brackets of two derived
// basis elements) and the constrained family
// [[y_{i1},...,y_{i_{d-2}}], [y_{j1}, y_{j2}]], i1 > i2 <= i3 <= ... , j1 > j2.
struct SecondDerivedReport {
  int degree = 0;
  int rank = 0;                    // dim of the component in the quotient
  RowSpace basis;                  // RREF basis in quotient coordinates
  int constrained_count = 0;       // size of the constrained spanning family
  int constrained_rank = 0;
  bool constrained_independent = false;
  bool spans_agree = false;
};
SecondDerivedReport second_derived_component(const QuotientContext& ctx, int d);

}  // namespace relfree
