#include "relfree/ratlin.hpp"

#include <algorithm>

namespace relfree {

SparseVec SparseVec::unit(int dim, int idx) {
  if (idx < 0 || idx >= dim) throw Error("SparseVec::unit: index out of range");
  SparseVec v(dim);
  v.ent.emplace_back(idx, Rat(1));
  return v;
}

const Rat* SparseVec::find(int idx) const {
  auto it = std::lower_bound(ent.begin(), ent.end(), idx,
                             [](const auto& p, int i) { return p.first < i; });
  if (it != ent.end() && it->first == idx) return &it->second;
  return nullptr;
}

void SparseVec::add_scaled(const SparseVec& other, const Rat& c) {
  if (other.dim != dim) throw Error("SparseVec: dimension mismatch");
  if (c.is_zero() || other.ent.empty()) return;
  std::vector<std::pair<int, Rat>> out;
  out.reserve(ent.size() + other.ent.size());
  auto a = ent.begin(), ae = ent.end();
  auto b = other.ent.begin(), be = other.ent.end();
  while (a != ae && b != be) {
    if (a->first < b->first) {
      out.push_back(std::move(*a));
      ++a;
    } else if (b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rat v = std::move(a->second);
      v.add_mul(c, b->second);
      if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  for (; a != ae; ++a) out.push_back(std::move(*a));
  for (; b != be; ++b) out.emplace_back(b->first, c * b->second);
  ent = std::move(out);
}

void SparseVec::scale(const Rat& c) {
  if (c.is_zero()) {
    ent.clear();
    return;
  }
  for (auto& [i, v] : ent) v *= c;
}

void SparseVec::negate() {
  for (auto& [i, v] : ent) v = -v;
}

void SparseVec::push(int idx, Rat v) {
  if (idx < 0 || idx >= dim) throw Error("SparseVec::push: index out of range");
  if (!v.is_zero()) ent.emplace_back(idx, std::move(v));
}

void SparseVec::normalize() {
  std::sort(ent.begin(), ent.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, Rat>> out;
  out.reserve(ent.size());
  for (auto& e : ent) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else {
      out.push_back(std::move(e));
    }
  }
  ent = std::move(out);
}

SparseVec operator+(SparseVec a, const SparseVec& b) {
  a.add_scaled(b, Rat(1));
  return a;
}

SparseVec operator-(SparseVec a, const SparseVec& b) {
  a.add_scaled(b, Rat(-1));
  return a;
}

int RowSpace::row_for_pivot(int col) const {
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col);
  if (it != pivots_.end() && *it == col)
    return static_cast<int>(it - pivots_.begin());
  return -1;
}

void RowSpace::reduce_inplace(SparseVec& v, std::vector<Rat>* coeffs) const {
  if (v.dim != dim_) throw Error("RowSpace: dimension mismatch");
  size_t k = 0;
  while (k < v.ent.size()) {
    int r = row_for_pivot(v.ent[k].first);
    if (r < 0) {
      ++k;
      continue;
    }
    Rat c = v.ent[k].second;
    if (coeffs) (*coeffs)[r] = c;
    // rows_[r] starts at the pivot, so entries before position k are untouched
    // and the pivot entry cancels exactly.
    v.add_scaled(rows_[r], -c);
  }
}

bool RowSpace::insert(SparseVec v) {
  reduce_inplace(v, nullptr);
  if (v.is_zero()) return false;
  Rat lead = v.ent.front().second;
  v.scale(lead.inverse());
  int piv = v.ent.front().first;
  for (auto& row : rows_) {
    if (const Rat* c = row.find(piv)) {
      Rat cc = *c;
      row.add_scaled(v, -cc);
    }
  }
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
  auto pos = it - pivots_.begin();
  pivots_.insert(it, piv);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

bool RowSpace::contains(SparseVec v) const {
  reduce_inplace(v, nullptr);
  return v.is_zero();
}

SparseVec RowSpace::residue(SparseVec v) const {
  reduce_inplace(v, nullptr);
  return v;
}

std::optional<std::vector<Rat>> RowSpace::coords(const SparseVec& v) const {
  std::vector<Rat> c(rows_.size(), Rat(0));
  SparseVec w = v;
  reduce_inplace(w, &c);
  if (!w.is_zero()) return std::nullopt;
  return c;
}

std::vector<int> RowSpace::complement_basis() const {
  std::vector<int> out;
  out.reserve(dim_ - rank());
  size_t p = 0;
  for (int i = 0; i < dim_; ++i) {
    if (p < pivots_.size() && pivots_[p] == i) {
      ++p;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace relfree
