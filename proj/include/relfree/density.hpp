#pragma once

#include <memory>
#include <string>
#include <vector>

#include "relfree/endo.hpp"
#include "relfree/quotient.hpp"

namespace relfree {

// Element of the n-fold direct sum of a fixed homogeneous component: n slots,
// each homogeneous of the same degree k in a shared context.
struct GradedTuple {
  const QuotientContext* ctx = nullptr;
  int k = 0;
  std::vector<QuotElement> slot;

  static GradedTuple zero(const QuotientContext& ctx, int k);
  bool is_zero() const;
  friend bool operator==(const GradedTuple& a, const GradedTuple& b) {
    return a.ctx == b.ctx && a.k == b.k && a.slot == b.slot;
  }
};

GradedTuple operator+(GradedTuple a, const GradedTuple& b);
GradedTuple operator-(GradedTuple a, const GradedTuple& b);

// g acts slotwise through the quotient, then the row of slots is multiplied
// by g^{-1} on the right. Throws on singular g.
GradedTuple tuple_act(const GLMatrix& g, const GradedTuple& t);

// Derivative of the action along the matrix unit E_{ij}: slotwise derivation
// x_j -> x_i minus the right multiplication of the slot row by E_{ij}.
GradedTuple infinitesimal_act(int i, int j, const GradedTuple& t);

// The deviation tuple of an endomorphism whose deviations are homogeneous of
// degree k (the leading-term data of the identity-mod-gamma_k class).
GradedTuple chi(const Endo& e, int k);

// Coordinate model of the n-fold sum of the degree-k second-derived
// component, with flattening through an RREF basis of that component.
// Generator action matrices are cached per model, so repeated closures over
// the same (n, k) stay cheap.
class KernelModel {
 public:
  KernelModel(const QuotientContext& ctx, int k);
  ~KernelModel();
  KernelModel(const KernelModel&) = delete;
  KernelModel& operator=(const KernelModel&) = delete;

  const QuotientContext& ctx() const { return *ctx_; }
  int n() const;
  int k() const { return k_; }
  int slot_rank() const;
  int ambient_dim() const;

  // Coordinates of a tuple whose slots lie in the component; throws else.
  SparseVec flatten(const GradedTuple& t) const;
  GradedTuple unflatten(const SparseVec& v) const;
  QuotElement slot_from_coords(const SparseVec& coords) const;

  const RowSpace& slot_basis() const;

  struct Impl;
  Impl& impl() const { return *impl_; }

 private:
  const QuotientContext* ctx_;
  int k_;
  std::unique_ptr<Impl> impl_;
};

enum class ClosureMode { Group, Lie, Both };

struct SubmoduleSpan {
  int n = 0;
  int k = 0;
  RowSpace space;  // flattened tuple coordinates, slot-major
};

struct ClosureResult {
  int n = 0;
  int k = 0;
  int ambient_dim = 0;
  int closure_dim = 0;
  int seeds = 0;
  ClosureMode mode = ClosureMode::Group;
  bool modes_agree = true;  // meaningful when mode == Both
  long long elapsed_ms = 0;
  SubmoduleSpan span;       // group-mode span when both modes ran
};

// Smallest subspace containing the seeds and closed under the chosen actions:
// group mode uses all transvections with parameters 1..max_param (default
// k+1) plus all generator permutations; lie mode uses all matrix units. Both
// runs the two closures and asserts they agree.
ClosureResult module_closure(const KernelModel& model,
                             const std::vector<GradedTuple>& seeds,
                             ClosureMode mode, int max_param = 0);

bool check_membership(const KernelModel& model, const GradedTuple& target,
                      const SubmoduleSpan& span);

// One inductive level of the density argument: the commutator identity at
// level k holds, its leading tuple matches the conjugated right side, and
// together with the first seed module it generates the whole kernel model.
struct TheoremStepReport {
  int n = 0;
  int k = 0;
  bool ok = true;
  std::vector<SuiteCheck> checks;
  void add(std::string name, bool okflag, std::string detail = "");
};
TheoremStepReport check_theorem_1_1_step(int k, int n);

// Monomial t_1^{e1} ... t_n^{en} of total degree deg built from exponents.
Poly monomial_poly(int n, const std::vector<int>& exp);

}  // namespace relfree
