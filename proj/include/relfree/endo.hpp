#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relfree/quotient.hpp"

namespace relfree {

// Endomorphism of a quotient context, given by the images of the generators.
// All arithmetic happens inside the context, i.e. in the quotient cut at the
// context's maxdeg.
class Endo {
 public:
  Endo() = default;
  static Endo identity(const QuotientContext& ctx);
  static Endo from_matrix(const QuotientContext& ctx, const GLMatrix& g);
  static Endo from_images(const QuotientContext& ctx,
                          std::vector<QuotElement> images);
  // y_i -> y_i + u, other generators fixed.
  static Endo deviation(const QuotientContext& ctx, int i,
                        const QuotElement& u);

  const QuotientContext& context() const { return *ctx_; }
  const QuotElement& image(int i) const;  // 1-based
  GLMatrix linear_part() const;
  bool is_identity() const;
  // deviation of y_i: image(i) - y_i
  QuotElement deviation_of(int i) const;
  // smallest degree occurring in any deviation; 0 when there is none
  int deviation_min_degree() const;

  friend bool operator==(const Endo& a, const Endo& b) {
    return a.ctx_ == b.ctx_ && a.images_ == b.images_;
  }

 private:
  const QuotientContext* ctx_ = nullptr;
  std::vector<QuotElement> images_;
};

// Substitute the generator images into a canonical lift of u and reduce.
QuotElement apply(const Endo& e, const QuotElement& u);

// compose(e1, e2): apply e2 first, then e1.
Endo compose(const Endo& e1, const Endo& e2);

struct InverseResult {
  Endo inverse;
  bool exact = false;  // deviation vanished identically within the context
};

// Two-sided inverse modulo components of degree > D (D <= maxdeg), built by
// inverting the linear part and then stripping deviations lowest degree
// first. Throws on a singular linear part.
InverseResult invert_mod(const Endo& e, int D);

// Leading-term map: the degree-k homogeneous deviation components. Requires
// every deviation to live in degrees >= k.
std::vector<QuotElement> nu(const Endo& e, int k);
bool in_ik(const Endo& e, int k);

// nu_{j+k-1} of the group commutator e1^{-1} e2^{-1} e1 e2 for e1 with
// deviations of degree >= j and e2 with deviations of degree >= k.
std::vector<QuotElement> graded_commutator(const Endo& e1, int j,
                                           const Endo& e2, int k);

// ---- named automorphism families ---------------------------------------------
// All fix y_i for i >= 2 and add a second-derived deviation to y_1; they are
// parameterized by a polynomial f acting through ad-operators.

Endo alpha_left(const QuotientContext& ctx, const Poly& f);   // [[y1,y2]*f,[y3,y4]]
Endo alpha_right(const QuotientContext& ctx, const Poly& f);  // [[y1,y2],[y3,y4]*f]
Endo beta_left(const QuotientContext& ctx, const Poly& f);    // [[y1,y2]*f,[y2,y4]]
Endo gamma_left(const QuotientContext& ctx, const Poly& f);   // [[y1,y2]*f,[y1,y4]]
Endo delta_left(const QuotientContext& ctx, const Poly& f);   // [[y1,y2]*f,[y2,y3]]
Endo epsilon_left(const QuotientContext& ctx, const Poly& f); // [[y2,y3]*f,[y2,y3]]
Endo zeta_left(const QuotientContext& ctx, const Poly& f);    // [[y2,y3]*f,[y2,y4]]
Endo eta_left(const QuotientContext& ctx, const Poly& f);     // [[y3,y4]*f,[y1,y3]]
Endo theta_left(const QuotientContext& ctx, const Poly& f);   // [[y2,y3]*f,[y4,yn]], n >= 5

// y1 -> y1 + [y1, y2, (kappa-1) y1, [y3, y4]]
Endo omega(const QuotientContext& ctx, int kappa);

Endo transvection(const QuotientContext& ctx, int i, int j, const Rat& a);
Endo swap_gens(const QuotientContext& ctx, int i, int j);
Endo permutation(const QuotientContext& ctx, const std::vector<int>& rho);

// ---- identity verification -----------------------------------------------------

struct Factor {
  Endo endo;
  bool inverted = false;
};
Factor fac(Endo e);
Factor inv(Endo e);

struct IdentityReport {
  bool ok = false;
  // which reading of written products holds: false = rightmost factor acts
  // first (the primary convention), true = leftmost acts first
  bool reversed_reading = false;
  std::string detail;  // located discrepancy when !ok
};

// True iff both products send every generator to equal elements up to
// degree D. Written products are evaluated rightmost-first; if that fails
// the reversed reading is tried and reported, never silently accepted.
IdentityReport verify_identity(const std::vector<Factor>& lhs,
                               const std::vector<Factor>& rhs,
                               const QuotientContext& ctx, int D);

Endo evaluate_product(const std::vector<Factor>& factors,
                      const QuotientContext& ctx, int D,
                      bool leftmost_first);

// ---- identity suites -----------------------------------------------------------

struct SuiteCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};
struct SuiteResult {
  std::string suite;
  bool ok = true;
  std::vector<SuiteCheck> checks;
  void add(std::string name, bool okflag, std::string detail = "");
};

// Conjugation by generator permutations moves single-generator deviations.
SuiteResult suite_lemma_3_4(int n, int instances, unsigned seed);
// The rewriting identities expressing the remaining families through
// alpha/gamma, for f in {1, t1, t1*t2}.
SuiteResult suite_lemma_3_6(int n);
// The two explicit commutator identities behind the density argument.
SuiteResult suite_eq_3_23(int n);
SuiteResult suite_eq_3_24(int n, int k);

}  // namespace relfree
