#include "relfree/lie.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <mutex>
#include <tuple>

namespace relfree {

// ---- GLMatrix ---------------------------------------------------------------

GLMatrix GLMatrix::identity(int n) {
  GLMatrix g(n);
  for (int i = 0; i < n; ++i) g.at(i, i) = Rat(1);
  return g;
}

GLMatrix GLMatrix::transvection(int n, int i, int j, const Rat& a) {
  if (i == j || i < 1 || j < 1 || i > n || j > n)
    throw Error("transvection: bad indices");
  GLMatrix g = identity(n);
  g.at(j - 1, i - 1) = a;  // image of y_i picks up a y_j
  return g;
}

GLMatrix GLMatrix::swap_letters(int n, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > n || j > n)
    throw Error("swap_letters: bad indices");
  GLMatrix g = identity(n);
  g.at(i - 1, i - 1) = Rat(0);
  g.at(j - 1, j - 1) = Rat(0);
  g.at(j - 1, i - 1) = Rat(1);
  g.at(i - 1, j - 1) = Rat(1);
  return g;
}

GLMatrix GLMatrix::permutation(const std::vector<int>& rho) {
  int n = static_cast<int>(rho.size());
  std::vector<bool> seen(n + 1, false);
  for (int v : rho) {
    if (v < 1 || v > n || seen[v]) throw Error("permutation: not a bijection");
    seen[v] = true;
  }
  GLMatrix g(n);
  for (int i = 1; i <= n; ++i) g.at(rho[i - 1] - 1, i - 1) = Rat(1);
  return g;
}

GLMatrix GLMatrix::operator*(const GLMatrix& o) const {
  if (n_ != o.n_) throw Error("GLMatrix: size mismatch");
  GLMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Rat& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < n_; ++j) r.at(i, j).add_mul(a, o.at(k, j));
    }
  return r;
}

bool GLMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (at(i, j) != (i == j ? Rat(1) : Rat(0))) return false;
  return true;
}

Rat GLMatrix::det() const {
  std::vector<Rat> a = e_;
  int n = n_;
  Rat d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (!a[r * n + c].is_zero()) { p = r; break; }
    if (p < 0) return Rat(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a[p * n + j], a[c * n + j]);
      d = -d;
    }
    d *= a[c * n + c];
    Rat inv = a[c * n + c].inverse();
    for (int r = c + 1; r < n; ++r) {
      Rat f = a[r * n + c] * inv;
      if (f.is_zero()) continue;
      for (int j = c; j < n; ++j) a[r * n + j].sub_mul(f, a[c * n + j]);
    }
  }
  return d;
}

GLMatrix GLMatrix::inverse() const {
  int n = n_;
  std::vector<Rat> a = e_;
  GLMatrix inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (!a[r * n + c].is_zero()) { p = r; break; }
    if (p < 0) throw Error("GLMatrix: singular matrix");
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a[p * n + j], a[c * n + j]);
        std::swap(inv.at(p, j), inv.at(c, j));
      }
    Rat pivinv = a[c * n + c].inverse();
    for (int j = 0; j < n; ++j) {
      a[c * n + j] *= pivinv;
      inv.at(c, j) *= pivinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      Rat f = a[r * n + c];
      if (f.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        a[r * n + j].sub_mul(f, a[c * n + j]);
        inv.at(r, j).sub_mul(f, inv.at(c, j));
      }
    }
  }
  return inv;
}

// ---- Lyndon tables ----------------------------------------------------------

namespace {

using Packed = std::uint64_t;

Packed pack(int n, const Word& w) {
  Packed p = 0;
  for (int l : w) p = p * n + static_cast<Packed>(l - 1);
  return p;
}

Word unpack(int n, int d, Packed p) {
  Word w(d);
  for (int i = d - 1; i >= 0; --i) {
    w[i] = static_cast<int>(p % n) + 1;
    p /= n;
  }
  return w;
}

// Integer-coefficient homogeneous polynomial keyed by packed words.
using IntPoly = std::map<Packed, long long>;

void accumulate(IntPoly& dst, Packed w, long long c) {
  auto [it, fresh] = dst.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) dst.erase(it);
  }
}

struct DegData {
  int n = 0, d = 0;
  std::vector<Packed> words;  // ascending = lex order
  std::vector<int> split;     // length of the left standard factor (0 for letters)

  int index_of(Packed p) const {
    auto it = std::lower_bound(words.begin(), words.end(), p);
    if (it != words.end() && *it == p)
      return static_cast<int>(it - words.begin());
    return -1;
  }
};

struct ExpData {
  // expansion of each Lyndon bracketing into packed words, sorted
  std::vector<std::vector<std::pair<Packed, long long>>> expansion;
};

struct PairTable {
  int dim1 = 0, dim2 = 0;
  // entries[i * dim2 + j] = coords of [b_i, b_j] in degree d1 + d2
  std::vector<std::vector<std::pair<int, long long>>> entries;
};

struct DerivTable {
  // per basis index: coords of the derivation image (same degree)
  std::vector<std::vector<std::pair<int, long long>>> cols;
};

class LieCache {
 public:
  static LieCache& instance() {
    static LieCache c;
    return c;
  }

  const DegData& deg(int n, int d) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto key = std::make_pair(n, d);
    auto it = degs_.find(key);
    if (it != degs_.end()) return *it->second;
    auto data = build_deg(n, d);
    auto* ptr = data.get();
    degs_.emplace(key, std::move(data));
    return *ptr;
  }

  const ExpData& exp(int n, int d) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto key = std::make_pair(n, d);
    auto it = exps_.find(key);
    if (it != exps_.end()) return *it->second;
    auto data = build_exp(n, d);
    auto* ptr = data.get();
    exps_.emplace(key, std::move(data));
    return *ptr;
  }

  const PairTable& pair(int n, int d1, int d2) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto key = std::make_tuple(n, d1, d2);
    auto it = pairs_.find(key);
    if (it != pairs_.end()) return *it->second;
    auto data = build_pair(n, d1, d2);
    auto* ptr = data.get();
    pairs_.emplace(key, std::move(data));
    return *ptr;
  }

  const DerivTable& deriv(int n, int i, int j, int d) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto key = std::make_tuple(n, i, j, d);
    auto it = derivs_.find(key);
    if (it != derivs_.end()) return *it->second;
    auto data = build_deriv(n, i, j, d);
    auto* ptr = data.get();
    derivs_.emplace(key, std::move(data));
    return *ptr;
  }

 private:
  std::recursive_mutex mu_;
  std::map<std::pair<int, int>, std::unique_ptr<DegData>> degs_;
  std::map<std::pair<int, int>, std::unique_ptr<ExpData>> exps_;
  std::map<std::tuple<int, int, int>, std::unique_ptr<PairTable>> pairs_;
  std::map<std::tuple<int, int, int, int>, std::unique_ptr<DerivTable>> derivs_;

  std::unique_ptr<DegData> build_deg(int n, int d);
  std::unique_ptr<ExpData> build_exp(int n, int d);
  std::unique_ptr<PairTable> build_pair(int n, int d1, int d2);
  std::unique_ptr<DerivTable> build_deriv(int n, int i, int j, int d);

  IntPoly expansion_of(int n, int d, int idx) {
    const ExpData& t = exp(n, d);
    IntPoly p;
    for (auto& [w, c] : t.expansion[idx]) p.emplace(w, c);
    return p;
  }
};

bool lyndon_check(const Word& w) {
  int d = static_cast<int>(w.size());
  if (d == 0) return false;
  Word r = w;
  for (int s = 1; s < d; ++s) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (!(w < r)) return false;
  }
  return true;
}

// Duval-style generation of Lyndon words of length exactly d, lex order.
std::vector<Word> generate_lyndon(int n, int d) {
  std::vector<Word> out;
  Word w{1};
  for (;;) {
    if (static_cast<int>(w.size()) == d) out.push_back(w);
    // extend periodically to length d
    Word v(d);
    for (int i = 0; i < d; ++i) v[i] = w[i % w.size()];
    while (!v.empty() && v.back() == n) v.pop_back();
    if (v.empty()) break;
    ++v.back();
    w = std::move(v);
  }
  return out;
}

IntPoly concat_product(const IntPoly& a, int /*da*/, const IntPoly& b, int db,
                       int n) {
  Packed shift = 1;
  for (int i = 0; i < db; ++i) shift *= n;
  IntPoly out;
  for (auto& [wa, ca] : a)
    for (auto& [wb, cb] : b) {
      long long c = ca * cb;
      accumulate(out, wa * shift + wb, c);
    }
  return out;
}

std::unique_ptr<DegData> LieCache::build_deg(int n, int d) {
  if (n < 1 || d < 1) throw Error("lyndon table: bad parameters");
  auto t = std::make_unique<DegData>();
  t->n = n;
  t->d = d;
  auto words = generate_lyndon(n, d);
  t->words.reserve(words.size());
  for (auto& w : words) t->words.push_back(pack(n, w));
  t->split.resize(words.size(), 0);
  if (d == 1) return t;
  for (size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    // longest proper Lyndon suffix = earliest start that is Lyndon
    int s = -1;
    for (int start = 1; start < d; ++start) {
      Word suf(w.begin() + start, w.end());
      if (lyndon_check(suf)) {
        s = start;
        break;
      }
    }
    if (s < 0) throw Error("lyndon table: no standard factorization");
    t->split[i] = s;
  }
  return t;
}

std::unique_ptr<ExpData> LieCache::build_exp(int n, int d) {
  const DegData& t = deg(n, d);
  auto e = std::make_unique<ExpData>();
  e->expansion.resize(t.words.size());
  if (d == 1) {
    for (size_t i = 0; i < t.words.size(); ++i)
      e->expansion[i] = {{t.words[i], 1}};
    return e;
  }
  for (size_t i = 0; i < t.words.size(); ++i) {
    Word w = unpack(n, d, t.words[i]);
    int s = t.split[i];
    Word u(w.begin(), w.begin() + s);
    Word v(w.begin() + s, w.end());
    int iu = deg(n, s).index_of(pack(n, u));
    int iv = deg(n, d - s).index_of(pack(n, v));
    if (iu < 0 || iv < 0) throw Error("lyndon table: factor not Lyndon");
    IntPoly pu = expansion_of(n, s, iu);
    IntPoly pv = expansion_of(n, d - s, iv);
    IntPoly prod = concat_product(pu, s, pv, d - s, n);
    IntPoly rev = concat_product(pv, d - s, pu, s, n);
    for (auto& [wd, c] : rev) accumulate(prod, wd, -c);
    // leading word is w itself with coefficient 1
    if (prod.empty() || prod.begin()->first != t.words[i] ||
        prod.begin()->second != 1)
      throw Error("lyndon table: expansion not unitriangular");
    e->expansion[i].assign(prod.begin(), prod.end());
  }
  return e;
}

// Extract Lyndon coordinates from an integer homogeneous polynomial. The
// input must be the expansion of a Lie element.
std::vector<std::pair<int, long long>> extract_int(const DegData& t,
                                                   const ExpData& te,
                                                   IntPoly&& p) {
  std::vector<std::pair<int, long long>> coords;
  while (!p.empty()) {
    auto it = p.begin();
    int idx = t.index_of(it->first);
    if (idx < 0) throw Error("extract: leading word not Lyndon");
    long long c = it->second;
    coords.emplace_back(idx, c);
    for (auto& [w, e] : te.expansion[idx]) accumulate(p, w, -c * e);
  }
  std::sort(coords.begin(), coords.end());
  return coords;
}

std::unique_ptr<PairTable> LieCache::build_pair(int n, int d1, int d2) {
  const DegData& t1 = deg(n, d1);
  const DegData& t2 = deg(n, d2);
  const DegData& tt = deg(n, d1 + d2);
  const ExpData& et = exp(n, d1 + d2);
  auto out = std::make_unique<PairTable>();
  out->dim1 = static_cast<int>(t1.words.size());
  out->dim2 = static_cast<int>(t2.words.size());
  out->entries.resize(static_cast<size_t>(out->dim1) * out->dim2);
  for (int i = 0; i < out->dim1; ++i) {
    IntPoly pu = expansion_of(n, d1, i);
    for (int j = 0; j < out->dim2; ++j) {
      if (d1 == d2 && i == j) continue;
      IntPoly pv = expansion_of(n, d2, j);
      IntPoly prod = concat_product(pu, d1, pv, d2, n);
      IntPoly rev = concat_product(pv, d2, pu, d1, n);
      for (auto& [w, c] : rev) accumulate(prod, w, -c);
      out->entries[static_cast<size_t>(i) * out->dim2 + j] =
          extract_int(tt, et, std::move(prod));
    }
  }
  return out;
}

std::unique_ptr<DerivTable> LieCache::build_deriv(int n, int i, int j, int d) {
  auto out = std::make_unique<DerivTable>();
  const DegData& t = deg(n, d);
  out->cols.resize(t.words.size());
  if (d == 1) {
    for (size_t idx = 0; idx < t.words.size(); ++idx) {
      Word w = unpack(n, 1, t.words[idx]);
      if (w[0] == j) out->cols[idx] = {{i - 1, 1}};
    }
    return out;
  }
  const PairTable* same_deg_pairs = nullptr;  // lazy: splits vary
  (void)same_deg_pairs;
  for (size_t idx = 0; idx < t.words.size(); ++idx) {
    Word w = unpack(n, d, t.words[idx]);
    int s = t.split[idx];
    Word u(w.begin(), w.begin() + s);
    Word v(w.begin() + s, w.end());
    int iu = deg(n, s).index_of(pack(n, u));
    int iv = deg(n, d - s).index_of(pack(n, v));
    const DerivTable& du = deriv(n, i, j, s);
    const DerivTable& dv = deriv(n, i, j, d - s);
    const PairTable& pt = pair(n, s, d - s);
    std::map<int, long long> acc;
    auto add_bracket = [&](int a, int b, long long c) {
      // c * [b_a^{(s)}, b_b^{(d-s)}]
      for (auto& [k, e] : pt.entries[static_cast<size_t>(a) * pt.dim2 + b]) {
        auto [it, fresh] = acc.emplace(k, c * e);
        if (!fresh) {
          it->second += c * e;
          if (it->second == 0) acc.erase(it);
        }
      }
    };
    for (auto& [a, c] : du.cols[iu]) add_bracket(a, iv, c);
    for (auto& [b, c] : dv.cols[iv]) add_bracket(iu, b, c);
    // [b_a, b_a] pairs were skipped in the table; they are zero anyway.
    out->cols[idx].assign(acc.begin(), acc.end());
  }
  return out;
}

SparseVec bracket_vec(int n, int d1, const SparseVec& a, int d2,
                      const SparseVec& b) {
  const PairTable& pt = LieCache::instance().pair(n, std::min(d1, d2),
                                                  std::max(d1, d2));
  int dim = lyndon_dim(n, d1 + d2);
  std::map<int, Rat> acc;
  bool flip = d1 > d2;
  const SparseVec& x = flip ? b : a;
  const SparseVec& y = flip ? a : b;
  for (auto& [i, ci] : x.ent) {
    for (auto& [j, cj] : y.ent) {
      if (pt.dim1 == pt.dim2 && i == j && d1 == d2) continue;
      Rat c = ci * cj;
      if (flip) c = -c;
      const auto& coords = pt.entries[static_cast<size_t>(i) * pt.dim2 + j];
      for (auto& [k, e] : coords) {
        auto [it, fresh] = acc.emplace(k, Rat(0));
        it->second.add_mul(c, Rat(e));
      }
    }
  }
  SparseVec out(dim);
  for (auto& [k, v] : acc)
    if (!v.is_zero()) out.ent.emplace_back(k, std::move(v));
  return out;
}

}  // namespace

// ---- public basis functions -------------------------------------------------

bool is_lyndon(const Word& w) {
  for (int l : w)
    if (l < 1) throw Error("is_lyndon: letters must be positive");
  return lyndon_check(w);
}

int lyndon_dim(int n, int d) {
  return static_cast<int>(LieCache::instance().deg(n, d).words.size());
}

const std::vector<Word>& lyndon_words(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<Word>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const DegData& t = LieCache::instance().deg(n, d);
  std::vector<Word> ws;
  ws.reserve(t.words.size());
  for (Packed p : t.words) ws.push_back(unpack(n, d, p));
  return cache.emplace(key, std::move(ws)).first->second;
}

int lyndon_index(int n, int d, const Word& w) {
  if (static_cast<int>(w.size()) != d) return -1;
  for (int l : w)
    if (l < 1 || l > n) return -1;
  return LieCache::instance().deg(n, d).index_of(pack(n, w));
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2 || !lyndon_check(w))
    throw Error("standard_factorization: input must be Lyndon of length >= 2");
  for (size_t start = 1; start < w.size(); ++start) {
    Word suf(w.begin() + start, w.end());
    if (lyndon_check(suf))
      return {Word(w.begin(), w.begin() + start), std::move(suf)};
  }
  throw Error("standard_factorization: unreachable");
}

// ---- LieElement -------------------------------------------------------------

LieElement LieElement::generator(int n, int i) {
  if (i < 1 || i > n) throw Error("LieElement: generator index out of range");
  LieElement u(n);
  SparseVec v(lyndon_dim(n, 1));
  v.push(i - 1, Rat(1));
  v.normalize();
  u.comp_.emplace(1, std::move(v));
  return u;
}

LieElement LieElement::basis_element(int n, int d, int index) {
  int dim = lyndon_dim(n, d);
  if (index < 0 || index >= dim) throw Error("LieElement: bad basis index");
  LieElement u(n);
  u.comp_.emplace(d, SparseVec::unit(dim, index));
  return u;
}

int LieElement::min_degree() const {
  return comp_.empty() ? 0 : comp_.begin()->first;
}

int LieElement::max_degree() const {
  return comp_.empty() ? 0 : comp_.rbegin()->first;
}

SparseVec LieElement::component(int d) const {
  auto it = comp_.find(d);
  if (it != comp_.end()) return it->second;
  return SparseVec(lyndon_dim(n_, d));
}

void LieElement::set_component(int d, SparseVec v) {
  if (v.dim != lyndon_dim(n_, d))
    throw Error("LieElement: component dimension mismatch");
  if (v.is_zero())
    comp_.erase(d);
  else
    comp_[d] = std::move(v);
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (n_ == 0) n_ = o.n_;
  if (o.n_ != n_ && !o.comp_.empty()) throw Error("LieElement: rank mismatch");
  for (auto& [d, v] : o.comp_) {
    auto it = comp_.find(d);
    if (it == comp_.end()) {
      comp_.emplace(d, v);
    } else {
      it->second.add_scaled(v, Rat(1));
      if (it->second.is_zero()) comp_.erase(it);
    }
  }
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  *this += -o;
  return *this;
}

LieElement LieElement::operator-() const {
  LieElement u(n_);
  for (auto& [d, v] : comp_) {
    SparseVec w = v;
    w.negate();
    u.comp_.emplace(d, std::move(w));
  }
  return u;
}

void LieElement::scale(const Rat& c) {
  if (c.is_zero()) {
    comp_.clear();
    return;
  }
  for (auto& [d, v] : comp_) v.scale(c);
}

LieElement LieElement::truncated(int maxdeg) const {
  LieElement u(n_);
  for (auto& [d, v] : comp_)
    if (d <= maxdeg) u.comp_.emplace(d, v);
  return u;
}

LieElement bracket_mod(const LieElement& u, const LieElement& v, int maxdeg) {
  if (u.rank() != v.rank() && !u.is_zero() && !v.is_zero())
    throw Error("bracket: rank mismatch");
  int n = u.rank() ? u.rank() : v.rank();
  LieElement out(n);
  for (auto& [d1, c1] : u.components())
    for (auto& [d2, c2] : v.components()) {
      if (maxdeg > 0 && d1 + d2 > maxdeg) continue;
      SparseVec w = bracket_vec(n, d1, c1, d2, c2);
      if (w.is_zero()) continue;
      SparseVec cur = out.component(d1 + d2);
      cur.add_scaled(w, Rat(1));
      out.set_component(d1 + d2, std::move(cur));
    }
  return out;
}

LieElement bracket(const LieElement& u, const LieElement& v) {
  return bracket_mod(u, v, 0);
}

LieElement left_normed(const LieElement& a, std::span<const LieElement> bs) {
  LieElement acc = a;
  for (const LieElement& b : bs) acc = bracket(acc, b);
  return acc;
}

LieElement left_normed(const LieElement& a, const LieElement& b, int copies) {
  LieElement acc = a;
  for (int i = 0; i < copies; ++i) acc = bracket(acc, b);
  return acc;
}

AssocPoly expand(const LieElement& u) {
  int n = u.rank();
  AssocPoly p(n);
  for (auto& [d, vec] : u.components()) {
    const ExpData& t = LieCache::instance().exp(n, d);
    for (auto& [idx, c] : vec.ent)
      for (auto& [w, e] : t.expansion[idx])
        p.add_term(unpack(n, d, w), c * Rat(e));
  }
  return p;
}

LieElement extract_lie(const AssocPoly& p) {
  int n = p.rank();
  LieElement out(n);
  if (p.is_zero()) return out;
  // split into homogeneous components keyed by packed words
  std::map<int, std::map<Packed, Rat>> comps;
  for (auto& [w, c] : p.terms()) {
    if (w.empty()) throw Error("extract_lie: constant term present");
    comps[static_cast<int>(w.size())].emplace(pack(n, w), c);
  }
  for (auto& [d, poly] : comps) {
    const DegData& t = LieCache::instance().deg(n, d);
    const ExpData& te = LieCache::instance().exp(n, d);
    SparseVec coords(lyndon_dim(n, d));
    auto work = std::move(poly);
    while (!work.empty()) {
      auto it = work.begin();
      int idx = t.index_of(it->first);
      if (idx < 0) throw Error("extract_lie: not the expansion of a Lie element");
      Rat c = it->second;
      coords.push(idx, c);
      for (auto& [w, e] : te.expansion[idx]) {
        auto [jt, fresh] = work.emplace(w, Rat(0));
        jt->second.sub_mul(c, Rat(e));
        if (jt->second.is_zero()) work.erase(jt);
      }
    }
    coords.normalize();
    out.set_component(d, std::move(coords));
  }
  return out;
}

// ---- substitution actions ---------------------------------------------------

namespace {

// Evaluate the standard bracketing of basis element (d, idx) with the letters
// replaced by the degree-1 vectors in `letters`; memoized per call.
struct SubstEval {
  int n;
  const std::vector<SparseVec>& letters;  // image of each generator, degree 1
  std::map<std::pair<int, int>, SparseVec> memo;

  const SparseVec& eval(int d, int idx) {
    auto key = std::make_pair(d, idx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const DegData& t = LieCache::instance().deg(n, d);
    SparseVec result;
    if (d == 1) {
      Word w = unpack(n, 1, t.words[idx]);
      result = letters[w[0] - 1];
    } else {
      int s = t.split[idx];
      Word w = unpack(n, d, t.words[idx]);
      int iu = LieCache::instance().deg(n, s).index_of(
          pack(n, Word(w.begin(), w.begin() + s)));
      int iv = LieCache::instance().deg(n, d - s).index_of(
          pack(n, Word(w.begin() + s, w.end())));
      const SparseVec& a = eval(s, iu);
      const SparseVec& b = eval(d - s, iv);
      result = bracket_vec(n, s, a, d - s, b);
    }
    return memo.emplace(key, std::move(result)).first->second;
  }
};

}  // namespace

namespace {

std::vector<SparseVec> matrix_letters(const GLMatrix& g) {
  int n = g.n();
  std::vector<SparseVec> letters(n, SparseVec(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (!g.at(j, i).is_zero()) letters[i].push(j, g.at(j, i));
    letters[i].normalize();
  }
  return letters;
}

}  // namespace

LieElement gl_act(const GLMatrix& g, const LieElement& u) {
  int n = u.rank();
  if (n == 0) return u;
  if (g.n() != n) throw Error("gl_act: rank mismatch");
  std::vector<SparseVec> letters = matrix_letters(g);
  SubstEval ev{n, letters, {}};
  LieElement out(n);
  for (auto& [d, vec] : u.components()) {
    SparseVec acc(lyndon_dim(n, d));
    for (auto& [idx, c] : vec.ent) acc.add_scaled(ev.eval(d, idx), c);
    out.set_component(d, std::move(acc));
  }
  return out;
}

std::vector<SparseVec> gl_act_matrix(const GLMatrix& g, int n, int d) {
  if (g.n() != n) throw Error("gl_act_matrix: rank mismatch");
  std::vector<SparseVec> letters = matrix_letters(g);
  SubstEval ev{n, letters, {}};
  int dim = lyndon_dim(n, d);
  std::vector<SparseVec> cols;
  cols.reserve(dim);
  for (int idx = 0; idx < dim; ++idx) cols.push_back(ev.eval(d, idx));
  return cols;
}

LieElement derivation_act(int i, int j, const LieElement& u) {
  int n = u.rank();
  if (i < 1 || i > n || j < 1 || j > n)
    throw Error("derivation_act: index out of range");
  LieElement out(n);
  for (auto& [d, vec] : u.components()) {
    const DerivTable& dt = LieCache::instance().deriv(n, i, j, d);
    SparseVec acc(lyndon_dim(n, d));
    for (auto& [idx, c] : vec.ent) {
      SparseVec img(acc.dim);
      for (auto& [k, e] : dt.cols[idx]) img.push(k, Rat(e));
      img.normalize();
      acc.add_scaled(img, c);
    }
    out.set_component(d, std::move(acc));
  }
  return out;
}

}  // namespace relfree
