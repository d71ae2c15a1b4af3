#include "relfree/assoc.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace relfree {

AssocPoly AssocPoly::generator(int n, int i) {
  if (i < 1 || i > n) throw Error("AssocPoly: generator index out of range");
  return monomial(n, {i}, Rat(1));
}

AssocPoly AssocPoly::monomial(int n, Word w, Rat c) {
  AssocPoly p(n);
  p.add_term(std::move(w), std::move(c));
  return p;
}

Rat AssocPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rat(0) : it->second;
}

int AssocPoly::homogeneous_degree() const {
  if (terms_.empty()) return -1;
  int d = static_cast<int>(terms_.begin()->first.size());
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(w.size()) != d) return -2;
  return d;
}

AssocPoly AssocPoly::component(int degree) const {
  AssocPoly out(n_);
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(w.size()) == degree) out.terms_.emplace(w, c);
  return out;
}

int AssocPoly::max_degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

void AssocPoly::add_term(Word w, Rat c) {
  for (int l : w)
    if (l < 1 || l > n_) throw Error("AssocPoly: letter out of range");
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(std::move(w), std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AssocPoly& AssocPoly::operator+=(const AssocPoly& o) {
  if (n_ == 0 && terms_.empty()) n_ = o.n_;
  if (o.n_ != n_ && !o.terms_.empty())
    throw Error("AssocPoly: rank mismatch");
  for (const auto& [w, c] : o.terms_) {
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

AssocPoly& AssocPoly::operator-=(const AssocPoly& o) {
  *this += -o;
  return *this;
}

AssocPoly& AssocPoly::operator*=(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

AssocPoly AssocPoly::operator-() const {
  AssocPoly out(n_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

AssocPoly mul(const AssocPoly& f, const AssocPoly& g) {
  if (f.rank() != g.rank()) throw Error("AssocPoly: rank mismatch");
  AssocPoly out(f.rank());
  Word w;
  for (const auto& [wf, cf] : f.terms()) {
    for (const auto& [wg, cg] : g.terms()) {
      w = wf;
      w.insert(w.end(), wg.begin(), wg.end());
      out.add_term(std::move(w), cf * cg);
      w.clear();
    }
  }
  return out;
}

AssocPoly comm(const AssocPoly& f, const AssocPoly& g) {
  return mul(f, g) - mul(g, f);
}

AssocPoly partial(int i, const AssocPoly& f) {
  if (i < 1 || i > f.rank()) throw Error("partial: index out of range");
  AssocPoly out(f.rank());
  for (const auto& [w, c] : f.terms()) {
    if (!w.empty() && w.front() == i)
      out.add_term(Word(w.begin() + 1, w.end()), c);
  }
  return out;
}

int word_column(int n, const Word& w) {
  int col = 0;
  for (int l : w) col = col * n + (l - 1);
  return col;
}

static Word rotate_left(const Word& w) {
  Word r(w.begin() + 1, w.end());
  r.push_back(w.front());
  return r;
}

RowSpace rotation_difference_space(int n, int m) {
  int total = 1;
  for (int i = 0; i < m; ++i) total *= n;
  RowSpace space(total);
  Word w(m, 1);
  for (;;) {
    Word r = rotate_left(w);
    if (r != w) {
      SparseVec v(total);
      v.push(word_column(n, w), Rat(1));
      v.push(word_column(n, r), Rat(-1));
      v.normalize();
      space.insert(std::move(v));
    }
    int i = m - 1;
    while (i >= 0 && w[i] == n) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
  }
  return space;
}

static int checked_degree(const AssocPoly& f) {
  int d = f.homogeneous_degree();
  if (d == -2) throw Error("is_balanced: non-homogeneous input");
  return d;
}

bool is_balanced_span_oracle(const AssocPoly& f) {
  int d = checked_degree(f);
  if (d == -1) return true;
  if (d < 2) return false;
  RowSpace space = rotation_difference_space(f.rank(), d);
  int total = 1;
  for (int i = 0; i < d; ++i) total *= f.rank();
  SparseVec v(total);
  for (const auto& [w, c] : f.terms()) v.push(word_column(f.rank(), w), c);
  v.normalize();
  return space.contains(std::move(v));
}

bool is_balanced_necklace(const AssocPoly& f) {
  int d = checked_degree(f);
  if (d == -1) return true;
  if (d < 2) return false;
  // Sum coefficients over each cyclic-rotation class; all sums must vanish.
  std::map<Word, Rat, WordOrder> classes;
  for (const auto& [w, c] : f.terms()) {
    Word canon = w;
    Word r = w;
    for (int i = 1; i < d; ++i) {
      r = rotate_left(r);
      if (r < canon) canon = r;
    }
    classes[canon] += c;
  }
  for (const auto& [w, s] : classes)
    if (!s.is_zero()) return false;
  return true;
}

bool is_balanced(const AssocPoly& f) { return is_balanced_necklace(f); }

PolyZ PolyZ::z(int power, Rat c) {
  PolyZ p;
  if (power < 0) throw Error("PolyZ: negative power");
  p.coeff_.assign(power + 1, Rat(0));
  p.coeff_[power] = std::move(c);
  p.trim();
  return p;
}

void PolyZ::trim() {
  while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
}

PolyZ& PolyZ::operator+=(const PolyZ& o) {
  if (o.coeff_.size() > coeff_.size()) coeff_.resize(o.coeff_.size(), Rat(0));
  for (size_t i = 0; i < o.coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
  trim();
  return *this;
}

PolyZ& PolyZ::operator-=(const PolyZ& o) {
  if (o.coeff_.size() > coeff_.size()) coeff_.resize(o.coeff_.size(), Rat(0));
  for (size_t i = 0; i < o.coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
  trim();
  return *this;
}

PolyZ PolyZ::operator-() const {
  PolyZ p = *this;
  for (auto& c : p.coeff_) c = -c;
  return p;
}

PolyZ operator*(const PolyZ& a, const PolyZ& b) {
  if (a.is_zero() || b.is_zero()) return PolyZ();
  PolyZ out;
  out.coeff_.assign(a.coeff_.size() + b.coeff_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.coeff_.size(); ++i) {
    if (a.coeff_[i].is_zero()) continue;
    for (size_t j = 0; j < b.coeff_.size(); ++j)
      out.coeff_[i + j].add_mul(a.coeff_[i], b.coeff_[j]);
  }
  out.trim();
  return out;
}

PolyZ PolyZ::divide_exact(const PolyZ& d) const {
  if (d.is_zero()) throw Error("PolyZ: division by zero polynomial");
  PolyZ rem = *this;
  PolyZ quot;
  if (rem.is_zero()) return quot;
  if (rem.degree() < d.degree()) throw Error("PolyZ: inexact division");
  quot.coeff_.assign(rem.degree() - d.degree() + 1, Rat(0));
  Rat lead_inv = d.coeff_.back().inverse();
  for (int k = rem.degree() - d.degree(); k >= 0; --k) {
    Rat c = rem.coeff(k + d.degree()) * lead_inv;
    quot.coeff_[k] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= d.degree(); ++j) {
      if (static_cast<size_t>(k + j) >= rem.coeff_.size())
        rem.coeff_.resize(k + j + 1, Rat(0));
      rem.coeff_[k + j].sub_mul(c, d.coeff_[j]);
    }
    rem.trim();
  }
  if (!rem.is_zero()) throw Error("PolyZ: inexact division");
  quot.trim();
  return quot;
}

std::string PolyZ::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= degree(); ++k) {
    Rat c = coeff(k);
    if (c.is_zero()) continue;
    if (!first) os << (c.sign() > 0 ? " + " : " - ");
    else if (c.sign() < 0) os << "-";
    first = false;
    Rat a = c.sign() < 0 ? -c : c;
    if (k == 0) {
      os << a.str();
    } else {
      if (!a.is_one()) os << a.str() << "*";
      os << "z";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

Mat2 Mat2::identity() {
  Mat2 m;
  m.e[0] = PolyZ(Rat(1));
  m.e[3] = PolyZ(Rat(1));
  return m;
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.e[i] = x.e[i] + y.e[i];
  return m;
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.e[i] = x.e[i] - y.e[i];
  return m;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  Mat2 m;
  m.e[0] = x.e[0] * y.e[0] + x.e[1] * y.e[2];
  m.e[1] = x.e[0] * y.e[1] + x.e[1] * y.e[3];
  m.e[2] = x.e[2] * y.e[0] + x.e[3] * y.e[2];
  m.e[3] = x.e[2] * y.e[1] + x.e[3] * y.e[3];
  return m;
}

Mat2 comm(const Mat2& x, const Mat2& y) { return x * y - y * x; }

Mat2 phi_generator(int n, int i) {
  if (n < 4) throw Error("phi: rank must be at least 4");
  if (i < 1 || i > n) throw Error("phi: generator index out of range");
  Mat2 m;
  switch (i) {
    case 2:
      m.e[0] = PolyZ::z(1);
      m.e[1] = PolyZ::z(1, Rat(-1));
      m.e[2] = PolyZ::z(1);
      m.e[3] = PolyZ::z(1, Rat(-1));
      return m;
    case 3:
      m.e[1] = PolyZ::z(1);
      return m;
    case 4:
      m.e[2] = PolyZ::z(1);
      return m;
    default:
      return Mat2::identity();
  }
}

Mat2 phi(const AssocPoly& f) {
  if (f.rank() < 4) throw Error("phi: rank must be at least 4");
  Mat2 acc = Mat2::zero();
  for (const auto& [w, c] : f.terms()) {
    Mat2 m = Mat2::identity();
    for (int l : w) m = m * phi_generator(f.rank(), l);
    for (auto& p : m.e) p = p * PolyZ(c);
    acc = acc + m;
  }
  return acc;
}

PolyZ mod_lambda(const PolyZ& p, int m) {
  if (m < 1) throw Error("mod_lambda: m must be positive");
  PolyZ out;
  for (int k = 0; k < m && k <= p.degree(); ++k) out += PolyZ::z(k, p.coeff(k));
  return out;
}

Mat2 mod_lambda(const Mat2& a, int m) {
  Mat2 out;
  for (int i = 0; i < 4; ++i) out.e[i] = mod_lambda(a.e[i], m);
  return out;
}

// Fraction-free (Bareiss) elimination: stays in K[z] with exact divisions.
PolyZ poly_det(std::vector<std::vector<PolyZ>> a) {
  size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw Error("poly_det: matrix not square");
  if (n == 0) return PolyZ(Rat(1));
  PolyZ prev(Rat(1));
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return PolyZ();
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        PolyZ num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = num.divide_exact(prev);
      }
      a[i][k] = PolyZ();
    }
    prev = a[k][k];
  }
  PolyZ det = a[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

PolyZ block_det_mod(const std::vector<std::vector<Mat2>>& blocks, int m) {
  size_t n = blocks.size();
  for (const auto& row : blocks)
    if (row.size() != n) throw Error("block_det_mod: block matrix not square");
  std::vector<std::vector<PolyZ>> a(2 * n, std::vector<PolyZ>(2 * n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      a[2 * i][2 * j] = blocks[i][j].e[0];
      a[2 * i][2 * j + 1] = blocks[i][j].e[1];
      a[2 * i + 1][2 * j] = blocks[i][j].e[2];
      a[2 * i + 1][2 * j + 1] = blocks[i][j].e[3];
    }
  return mod_lambda(poly_det(std::move(a)), m);
}

}  // namespace relfree
