#include "relfree/schur.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace relfree {

bool is_partition(const std::vector<int>& parts) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0) return false;
    if (i > 0 && parts[i] > parts[i - 1]) return false;
  }
  return true;
}

Partition normalize_partition(std::vector<int> parts) {
  if (!is_partition(parts)) throw Error("not a partition");
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  return parts;
}

std::string partition_str(const Partition& lam) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < lam.size(); ++i) {
    if (i) os << ",";
    os << lam[i];
  }
  os << "]";
  return os.str();
}

mpz_class schur_dim(const Partition& lam, int n) {
  Partition l = normalize_partition(lam);
  if (static_cast<int>(l.size()) > n) return 0;
  if (l.empty()) return 1;
  // conjugate partition for hook lengths
  std::vector<int> conj(l[0], 0);
  for (int part : l)
    for (int j = 0; j < part; ++j) ++conj[j];
  Rat dim(1);
  for (int i = 0; i < static_cast<int>(l.size()); ++i)
    for (int j = 0; j < l[i]; ++j) {
      long content = n + j - i;
      long hook = (l[i] - j) + (conj[j] - i) - 1;
      dim *= Rat(content, hook);
    }
  if (!dim.is_integer()) throw Error("schur_dim: non-integer result");
  return dim.num();
}

mpz_class module_expr_dim(const ModuleExpr& expr, int n) {
  mpz_class total = 0;
  for (const auto& m : expr) {
    if (!m.valid) continue;
    total += m.mult * schur_dim(m.lam, n);
  }
  return total;
}

std::string module_expr_str(const ModuleExpr& expr) {
  std::ostringstream os;
  bool first = true;
  for (const auto& m : expr) {
    if (!first) os << " + ";
    first = false;
    if (m.mult != 1) os << m.mult << "*";
    if (m.det_twist != 0) os << "det^" << m.det_twist << "(x)";
    os << (m.valid ? partition_str(m.lam) : "[invalid]");
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// Count LR skew tableaux of shape nu/lam with content mu: semistandard
// fillings whose reverse reading word is a lattice word.
long count_lr_tableaux(const Partition& lam, const Partition& mu,
                       const Partition& nu) {
  int rows = static_cast<int>(nu.size());
  std::vector<int> inner(rows, 0);
  for (size_t i = 0; i < lam.size(); ++i) inner[i] = lam[i];
  for (int i = 0; i < rows; ++i)
    if (inner[i] > nu[i]) return 0;
  // fill row by row, left to right within a row moving from the row's start;
  // entries weakly increase along rows, strictly increase down columns;
  // lattice condition tracked by running content counts.
  std::vector<std::vector<int>> fill(rows);
  for (int i = 0; i < rows; ++i) fill[i].assign(nu[i], 0);
  std::vector<int> remaining(mu.begin(), mu.end());
  int colors = static_cast<int>(mu.size());
  std::vector<int> placed(colors, 0);
  long count = 0;

  // cells in reverse reading order: rows top to bottom, within a row right
  // to left, so the lattice condition can be checked incrementally.
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < rows; ++i)
    for (int j = nu[i] - 1; j >= inner[i]; --j) cells.emplace_back(i, j);

  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == cells.size()) {
      ++count;
      return;
    }
    auto [i, j] = cells[pos];
    for (int c = 1; c <= colors; ++c) {
      if (remaining[c - 1] == 0) continue;
      // lattice: after placing, #c's placed must not exceed #(c-1)'s
      if (c > 1 && placed[c - 1] + 1 > placed[c - 2]) continue;
      // weakly increasing along the row (left neighbor may be unfilled yet —
      // we fill right to left, so enforce against the right neighbor)
      if (j + 1 < nu[i] && fill[i][j + 1] < c) continue;
      // entries strictly increase down a column (no constraint when the cell
      // above belongs to the inner shape)
      if (i > 0 && j < nu[i - 1] && j >= inner[i - 1] && fill[i - 1][j] >= c)
        continue;
      fill[i][j] = c;
      --remaining[c - 1];
      ++placed[c - 1];
      rec(pos + 1);
      fill[i][j] = 0;
      ++remaining[c - 1];
      --placed[c - 1];
    }
  };
  rec(0);
  return count;
}

}  // namespace

long lr_coefficient(const Partition& lam, const Partition& mu,
                    const Partition& nu) {
  Partition l = normalize_partition(lam);
  Partition m = normalize_partition(mu);
  Partition v = normalize_partition(nu);
  long total_l = std::accumulate(l.begin(), l.end(), 0L);
  long total_m = std::accumulate(m.begin(), m.end(), 0L);
  long total_v = std::accumulate(v.begin(), v.end(), 0L);
  if (total_v != total_l + total_m) return 0;
  if (v.size() < l.size()) return 0;
  return count_lr_tableaux(l, m, v);
}

ModuleExpr lr_tensor(const Partition& lam, const Partition& mu, int n) {
  Partition l = normalize_partition(lam);
  Partition m = normalize_partition(mu);
  long total = std::accumulate(l.begin(), l.end(), 0L) +
               std::accumulate(m.begin(), m.end(), 0L);
  ModuleExpr out;
  // enumerate candidate shapes nu containing lam with |nu| = |lam| + |mu|,
  // at most n rows, nu_i <= lam_i + |mu|
  std::vector<int> nu;
  std::function<void(int, long)> rec = [&](int row, long used) {
    if (used == total) {
      Partition v(nu);
      while (!v.empty() && v.back() == 0) v.pop_back();
      if (static_cast<int>(v.size()) > n) return;
      long c = lr_coefficient(l, m, v);
      if (c > 0) out.push_back({v, 0, c, true});
      return;
    }
    if (row >= n) return;
    long rest = total - used;
    int lo = row < static_cast<int>(l.size()) ? l[row] : 0;
    int hi = static_cast<int>(
        std::min<long>(row == 0 ? total : nu[row - 1], rest));
    for (int v = hi; v >= lo && v >= 1; --v) {
      nu.push_back(v);
      rec(row + 1, used + v);
      nu.pop_back();
    }
    // allow stopping early only if the inner shape is exhausted
    (void)0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(),
            [](const TwistedModule& a, const TwistedModule& b) {
              return a.lam > b.lam;
            });
  return out;
}

DecompReport verify_decomposition(const ModuleExpr& expr,
                                  const mpz_class& expected, int n) {
  DecompReport rep;
  rep.expr_dim = module_expr_dim(expr, n);
  rep.expected = expected;
  rep.ok = (rep.expr_dim == rep.expected);
  std::ostringstream os;
  os << module_expr_str(expr) << " has dimension " << rep.expr_dim.get_str()
     << " at rank " << n << ", expected " << rep.expected.get_str() << ": "
     << (rep.ok ? "equal" : "MISMATCH");
  rep.detail = os.str();
  return rep;
}

}  // namespace relfree
