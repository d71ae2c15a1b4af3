#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "relfree/rat.hpp"

namespace relfree {

// Sparse vector over Q. Entries sorted by index, no explicit zeros.
struct SparseVec {
  int dim = 0;
  std::vector<std::pair<int, Rat>> ent;

  SparseVec() = default;
  explicit SparseVec(int d) : dim(d) {}
  static SparseVec unit(int dim, int idx);

  bool is_zero() const { return ent.empty(); }
  int nnz() const { return static_cast<int>(ent.size()); }
  int leading_index() const { return ent.empty() ? -1 : ent.front().first; }
  const Rat* find(int idx) const;

  // this += c * other (merge of sorted entry lists)
  void add_scaled(const SparseVec& other, const Rat& c);
  void scale(const Rat& c);
  void negate();

  // Building aid: append possibly unsorted/duplicated entries, then normalize().
  void push(int idx, Rat v);
  void normalize();

  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.dim == b.dim && a.ent == b.ent;
  }
};

SparseVec operator+(SparseVec a, const SparseVec& b);
SparseVec operator-(SparseVec a, const SparseVec& b);

// A subspace of Q^dim kept in reduced row echelon form. Rows are ordered by
// pivot column; each pivot entry is 1 and its column is zero in every other
// row, so residues against the space are canonical. Construction is
// single-writer; a completed RowSpace is immutable and safe to read from many
// threads.
class RowSpace {
 public:
  RowSpace() = default;
  explicit RowSpace(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // rref_insert: extends the space by v. Returns true iff the rank grew.
  bool insert(SparseVec v);

  // in_span: exact membership, no tolerance.
  bool contains(SparseVec v) const;

  // Canonical representative of v modulo the space (zero at all pivots).
  SparseVec residue(SparseVec v) const;

  // Coordinates of v over rows() if v lies in the span, else nullopt.
  std::optional<std::vector<Rat>> coords(const SparseVec& v) const;

  // Non-pivot columns in increasing order; unit vectors at these indices
  // project to a basis of the quotient by this space.
  std::vector<int> complement_basis() const;

 private:
  int dim_ = 0;
  std::vector<SparseVec> rows_;  // pivot column strictly increasing
  std::vector<int> pivots_;

  int row_for_pivot(int col) const;
  void reduce_inplace(SparseVec& v, std::vector<Rat>* coeffs) const;
};

}  // namespace relfree
