#pragma once

#include <string>
#include <vector>

#include "relfree/rat.hpp"

namespace relfree {

// Partition: weakly decreasing positive parts (trailing zeros dropped).
using Partition = std::vector<int>;

bool is_partition(const std::vector<int>& parts);
Partition normalize_partition(std::vector<int> parts);  // drops zeros, checks
std::string partition_str(const Partition& lam);

// Dimension of the irreducible polynomial module indexed by lam for the
// general linear group of rank n; zero if lam has more than n nonzero parts.
// Hook content formula, exact arithmetic.
mpz_class schur_dim(const Partition& lam, int n);

// One summand of a formal decomposition: a partition with a determinant
// twist (twists are one-dimensional and do not change dimensions) and a
// multiplicity. `valid` is false for specializations like [1,2,1] that are
// not weakly decreasing; those contribute dimension zero.
struct TwistedModule {
  Partition lam;
  int det_twist = 0;
  long mult = 1;
  bool valid = true;
};
using ModuleExpr = std::vector<TwistedModule>;

mpz_class module_expr_dim(const ModuleExpr& expr, int n);
std::string module_expr_str(const ModuleExpr& expr);

// Littlewood-Richardson decomposition of [lam] (x) [mu], truncated to at
// most n rows. Multiplicities are counts of LR skew tableaux.
ModuleExpr lr_tensor(const Partition& lam, const Partition& mu, int n);
long lr_coefficient(const Partition& lam, const Partition& mu,
                    const Partition& nu);

struct DecompReport {
  bool ok = false;
  mpz_class expr_dim;
  mpz_class expected;
  std::string detail;
};
DecompReport verify_decomposition(const ModuleExpr& expr,
                                  const mpz_class& expected, int n);

}  // namespace relfree
