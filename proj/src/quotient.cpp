#include "relfree/quotient.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace relfree {

// ---- Poly --------------------------------------------------------------------

Poly Poly::one(int n) { return monomial(n, std::vector<int>(n, 0), Rat(1)); }

Poly Poly::t(int n, int i) {
  if (i < 1 || i > n) throw Error("Poly: variable index out of range");
  std::vector<int> e(n, 0);
  e[i - 1] = 1;
  return monomial(n, std::move(e), Rat(1));
}

Poly Poly::monomial(int n, std::vector<int> exp, Rat c) {
  Poly p(n);
  p.add_term(std::move(exp), std::move(c));
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->second == Rat(1) &&
         total_degree() == 0;
}

int Poly::total_degree() const {
  int d = -1;
  for (auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(std::vector<int> exp, Rat c) {
  if (static_cast<int>(exp.size()) != n_)
    throw Error("Poly: exponent vector length mismatch");
  for (int v : exp)
    if (v < 0) throw Error("Poly: negative exponent");
  if (c.is_zero()) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_.emplace(std::move(exp), std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (n_ == 0) n_ = o.n_;
  if (o.n_ != n_ && !o.terms_.empty()) throw Error("Poly: rank mismatch");
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (n_ == 0) n_ = o.n_;
  if (o.n_ != n_ && !o.terms_.empty()) throw Error("Poly: rank mismatch");
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.rank() != b.rank()) throw Error("Poly: rank mismatch");
  Poly out(a.rank());
  for (auto& [ea, ca] : a.terms())
    for (auto& [eb, cb] : b.terms()) {
      std::vector<int> e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(std::move(e), ca * cb);
    }
  return out;
}

Poly Poly::gl_act(const GLMatrix& g) const {
  if (g.n() != n_) throw Error("Poly: rank mismatch");
  std::vector<Poly> images;
  for (int i = 1; i <= n_; ++i) {
    Poly li(n_);
    for (int j = 1; j <= n_; ++j) {
      Rat c = g.at(j - 1, i - 1);
      if (c.is_zero()) continue;
      std::vector<int> e(n_, 0);
      e[j - 1] = 1;
      li.add_term(std::move(e), c);
    }
    images.push_back(std::move(li));
  }
  Poly out(n_);
  for (auto& [e, c] : terms_) {
    Poly term = Poly::monomial(n_, std::vector<int>(n_, 0), c);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) term = term * images[i];
    out += term;
  }
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms_) {
    Rat a = c;
    if (!first) {
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    first = false;
    bool constant = true;
    for (int v : e) constant &= (v == 0);
    std::ostringstream mono;
    bool firstvar = true;
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (!firstvar) mono << "*";
      firstvar = false;
      mono << "t" << (i + 1);
      if (e[i] > 1) mono << "^" << e[i];
    }
    if (constant) {
      os << a.str();
    } else if (a.is_one()) {
      os << mono.str();
    } else {
      os << a.str() << "*" << mono.str();
    }
  }
  return os.str();
}

// ---- ideal spanning families ---------------------------------------------------

std::string IdealSpec::name() const {
  switch (kind) {
    case IdealKind::DerivedSquared: return "derived-squared";
    case IdealKind::Gamma3Derived: return "gamma3-of-derived";
    case IdealKind::DerivedGamma3: return "derived-of-gamma3";
    case IdealKind::In: return "nil2-by-ab";
    case IdealKind::Jn: return "nil2-by-ab-center";
    case IdealKind::GammaC: return "gamma" + std::to_string(c);
  }
  return "?";
}

namespace {

// All brackets [u, v] of homogeneous Lyndon basis elements with
// deg u, deg v >= dmin and deg u + deg v = d; unordered pairs.
void pair_family(int n, int d, int dmin, std::vector<LieElement>& out) {
  for (int d1 = dmin; d1 + dmin <= d; ++d1) {
    int d2 = d - d1;
    if (d2 < d1) break;
    int dim1 = lyndon_dim(n, d1);
    int dim2 = lyndon_dim(n, d2);
    for (int i = 0; i < dim1; ++i) {
      int jstart = (d1 == d2) ? i + 1 : 0;
      for (int j = jstart; j < dim2; ++j) {
        LieElement b = bracket(LieElement::basis_element(n, d1, i),
                               LieElement::basis_element(n, d2, j));
        if (!b.is_zero()) out.push_back(std::move(b));
      }
    }
  }
}

// All left-normed [a, b, c] with a, b, c homogeneous Lyndon basis elements of
// degree >= 2 and degrees summing to d; (a, b) unordered.
void triple_family(int n, int d, std::vector<LieElement>& out) {
  for (int d1 = 2; d1 <= d - 4; ++d1)
    for (int d2 = d1; d2 <= d - d1 - 2; ++d2) {
      int d3 = d - d1 - d2;
      if (d3 < 2) continue;
      int dim1 = lyndon_dim(n, d1);
      int dim2 = lyndon_dim(n, d2);
      int dim3 = lyndon_dim(n, d3);
      for (int i = 0; i < dim1; ++i) {
        int jstart = (d1 == d2) ? i + 1 : 0;
        for (int j = jstart; j < dim2; ++j) {
          LieElement ab = bracket(LieElement::basis_element(n, d1, i),
                                  LieElement::basis_element(n, d2, j));
          if (ab.is_zero()) continue;
          for (int k = 0; k < dim3; ++k) {
            LieElement abc =
                bracket(ab, LieElement::basis_element(n, d3, k));
            if (!abc.is_zero()) out.push_back(std::move(abc));
          }
        }
      }
    }
}

}  // namespace

std::vector<LieElement> ideal_spanning_family(const IdealSpec& spec, int n,
                                              int d) {
  if (d < 1) throw Error("ideal_spanning_family: degree must be positive");
  std::vector<LieElement> out;
  switch (spec.kind) {
    case IdealKind::DerivedSquared:
      pair_family(n, d, 2, out);
      break;
    case IdealKind::Gamma3Derived:
    case IdealKind::Jn:
      triple_family(n, d, out);
      break;
    case IdealKind::DerivedGamma3:
      pair_family(n, d, 3, out);
      break;
    case IdealKind::In:
      triple_family(n, d, out);
      pair_family(n, d, 3, out);
      break;
    case IdealKind::GammaC:
      if (d >= spec.c)
        for (int i = 0; i < lyndon_dim(n, d); ++i)
          out.push_back(LieElement::basis_element(n, d, i));
      break;
  }
  return out;
}

// ---- QuotElement ---------------------------------------------------------------

SparseVec QuotElement::component(int d) const {
  auto it = comp_.find(d);
  if (it != comp_.end()) return it->second;
  if (!ctx_) throw Error("QuotElement: no context");
  return SparseVec(ctx_->ambient_dim(d));
}

QuotElement QuotElement::component_element(int d) const {
  QuotElement out(ctx_);
  auto it = comp_.find(d);
  if (it != comp_.end()) out.comp_.emplace(d, it->second);
  return out;
}

LieElement QuotElement::lift() const {
  if (!ctx_) return LieElement();
  LieElement u(ctx_->rank());
  for (auto& [d, v] : comp_) u.set_component(d, v);
  return u;
}

QuotElement& QuotElement::operator+=(const QuotElement& o) {
  if (!ctx_) ctx_ = o.ctx_;
  if (o.ctx_ != ctx_ && !o.comp_.empty())
    throw Error("QuotElement: context mismatch");
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

QuotElement& QuotElement::operator-=(const QuotElement& o) {
  QuotElement neg = -o;
  *this += neg;
  return *this;
}

QuotElement QuotElement::operator-() const {
  QuotElement out(ctx_);
  for (auto& [d, v] : comp_) {
    SparseVec w = v;
    w.negate();
    out.comp_.emplace(d, std::move(w));
  }
  return out;
}

void QuotElement::scale(const Rat& c) {
  if (c.is_zero()) {
    comp_.clear();
    return;
  }
  for (auto& [d, v] : comp_) v.scale(c);
}

// ---- QuotientContext -----------------------------------------------------------

QuotientContext::QuotientContext(int n, IdealSpec spec, int maxdeg)
    : n_(n), spec_(spec), maxdeg_(maxdeg) {
  if (n < 2) throw Error("QuotientContext: rank must be at least 2");
  if (maxdeg < 1) throw Error("QuotientContext: maxdeg must be positive");
  degs_.resize(maxdeg + 1);
  for (int d = 1; d <= maxdeg; ++d) {
    RowSpace space(lyndon_dim(n, d));
    for (LieElement& v : ideal_spanning_family(spec, n, d))
      space.insert(v.component(d));
    degs_[d].complement = space.complement_basis();
    degs_[d].ideal = std::move(space);
  }
}

int QuotientContext::ambient_dim(int d) const { return lyndon_dim(n_, d); }

int QuotientContext::ideal_rank(int d) const {
  if (d < 1 || d > maxdeg_) throw DegreeOverflow("ideal_rank: degree outside context");
  return degs_[d].ideal.rank();
}

int QuotientContext::component_dim(int d) const {
  return ambient_dim(d) - ideal_rank(d);
}

const RowSpace& QuotientContext::ideal_rowspace(int d) const {
  if (d < 1 || d > maxdeg_)
    throw DegreeOverflow("ideal_rowspace: degree outside context");
  return degs_[d].ideal;
}

const std::vector<int>& QuotientContext::complement(int d) const {
  if (d < 1 || d > maxdeg_)
    throw DegreeOverflow("complement: degree outside context");
  return degs_[d].complement;
}

QuotElement QuotientContext::generator(int i) const {
  return reduce(LieElement::generator(n_, i));
}

SparseVec QuotientContext::reduce_component(int d, SparseVec v) const {
  if (d < 1 || d > maxdeg_)
    throw DegreeOverflow("reduce: degree " + std::to_string(d) +
                         " exceeds context maxdeg " + std::to_string(maxdeg_));
  return degs_[d].ideal.residue(std::move(v));
}

QuotElement QuotientContext::reduce(const LieElement& u) const {
  if (!u.is_zero() && u.rank() != n_)
    throw Error("reduce: rank mismatch");
  QuotElement out(this);
  for (auto& [d, v] : u.components()) {
    SparseVec r = reduce_component(d, v);
    if (!r.is_zero()) out.comp_.emplace(d, std::move(r));
  }
  return out;
}

QuotElement QuotientContext::bracket(const QuotElement& a,
                                     const QuotElement& b) const {
  if ((a.context() && a.context() != this) ||
      (b.context() && b.context() != this))
    throw Error("bracket: context mismatch");
  LieElement w = bracket_mod(a.lift(), b.lift(), maxdeg_);
  return reduce(w);
}

QuotElement QuotientContext::dot_action(const QuotElement& u,
                                        const Poly& f) const {
  if (f.is_zero()) throw Error("dot_action: zero polynomial");
  if (f.rank() != n_) throw Error("dot_action: rank mismatch");
  if (u.components().count(1))
    throw Error("dot_action: element has a degree-1 component");
  if (u.is_zero()) return zero();
  QuotElement out(this);
  if (u.max_degree() + std::max(f.total_degree(), 0) > maxdeg_)
    throw DegreeOverflow("dot_action: result degree exceeds context maxdeg");
  for (auto& [e, c] : f.terms()) {
    LieElement w = u.lift();
    for (int i = 1; i <= n_; ++i)
      for (int k = 0; k < e[i - 1]; ++k)
        w = relfree::bracket(w, LieElement::generator(n_, i));
    w.scale(c);
    out += reduce(w);
  }
  return out;
}

QuotElement QuotientContext::gl_act(const GLMatrix& g,
                                    const QuotElement& u) const {
  return reduce(relfree::gl_act(g, u.lift()));
}

QuotElement QuotientContext::derivation_act(int i, int j,
                                            const QuotElement& u) const {
  return reduce(relfree::derivation_act(i, j, u.lift()));
}

QuotElement u_elem(const QuotientContext& ctx, int i, int j, const Poly& f,
                   int k, int l) {
  int n = ctx.rank();
  QuotElement base = ctx.reduce(bracket(LieElement::generator(n, i),
                                        LieElement::generator(n, j)));
  QuotElement dotted = ctx.dot_action(base, f);
  QuotElement tail = ctx.reduce(bracket(LieElement::generator(n, k),
                                        LieElement::generator(n, l)));
  return ctx.bracket(dotted, tail);
}

QuotElement v_elem(const QuotientContext& ctx, int i, int j, int k, int l,
                   const Poly& f) {
  int n = ctx.rank();
  QuotElement head = ctx.reduce(bracket(LieElement::generator(n, i),
                                        LieElement::generator(n, j)));
  QuotElement base = ctx.reduce(bracket(LieElement::generator(n, k),
                                        LieElement::generator(n, l)));
  QuotElement dotted = ctx.dot_action(base, f);
  return ctx.bracket(head, dotted);
}

bool ideal_includes(const IdealSpec& bigger, const IdealSpec& smaller) {
  if (bigger == smaller) return true;
  auto is_sub_of_derived_squared = [](const IdealSpec& s) {
    return s.kind == IdealKind::DerivedSquared ||
           s.kind == IdealKind::Gamma3Derived || s.kind == IdealKind::Jn ||
           s.kind == IdealKind::DerivedGamma3 || s.kind == IdealKind::In;
  };
  switch (bigger.kind) {
    case IdealKind::DerivedSquared:
      return is_sub_of_derived_squared(smaller);
    case IdealKind::In:
      return smaller.kind == IdealKind::Gamma3Derived ||
             smaller.kind == IdealKind::Jn ||
             smaller.kind == IdealKind::DerivedGamma3;
    case IdealKind::GammaC:
      return smaller.kind == IdealKind::GammaC && smaller.c >= bigger.c;
    default:
      return false;
  }
}

QuotElement project(const QuotElement& u, const QuotientContext& target) {
  if (u.is_zero()) return target.zero();
  const QuotientContext* src = u.context();
  if (src->rank() != target.rank())
    throw Error("project: rank mismatch");
  if (!ideal_includes(target.spec(), src->spec()))
    throw Error("project: target ideal does not contain the source ideal");
  return target.reduce(u.lift());
}

SecondDerivedReport second_derived_component(const QuotientContext& ctx,
                                             int d) {
  if (d < 4) throw Error("second_derived_component: degree must be >= 4");
  int n = ctx.rank();
  SecondDerivedReport rep;
  rep.degree = d;
  RowSpace span(lyndon_dim(n, d));
  for (LieElement& v :
       ideal_spanning_family(IdealSpec::derived_squared(), n, d))
    span.insert(ctx.reduce_component(d, v.component(d)));
  rep.rank = span.rank();

  // constrained family: [[y_{i1},...,y_{i_{d-2}}], [y_{j1}, y_{j2}]] with
  // i1 > i2 <= i3 <= ... <= i_{d-2} and j1 > j2
  RowSpace cspan(lyndon_dim(n, d));
  int count = 0;
  std::vector<int> idx(d - 2);
  auto emit = [&]() {
    LieElement head = LieElement::generator(n, idx[0]);
    for (size_t t = 1; t < idx.size(); ++t)
      head = bracket(head, LieElement::generator(n, idx[t]));
    for (int j2 = 1; j2 <= n; ++j2)
      for (int j1 = j2 + 1; j1 <= n; ++j1) {
        LieElement pair = bracket(LieElement::generator(n, j1),
                                  LieElement::generator(n, j2));
        LieElement w = bracket(head, pair);
        ++count;
        cspan.insert(ctx.reduce_component(d, w.component(d)));
      }
  };
  std::function<void(int, int)> fill = [&](int pos, int low) {
    if (pos == d - 2) {
      emit();
      return;
    }
    for (int v = low; v <= n; ++v) {
      idx[pos] = v;
      fill(pos + 1, v);
    }
  };
  for (int i2 = 1; i2 <= n; ++i2)
    for (int i1 = i2 + 1; i1 <= n; ++i1) {
      idx[0] = i1;
      idx[1] = i2;
      fill(2, i2);
    }
  rep.constrained_count = count;
  rep.constrained_rank = cspan.rank();
  rep.constrained_independent = (rep.constrained_rank == count);
  rep.spans_agree = (rep.constrained_rank == rep.rank);
  rep.basis = std::move(span);
  return rep;
}

}  // namespace relfree
