#include "relfree/endo.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace relfree {

Endo Endo::identity(const QuotientContext& ctx) {
  Endo e;
  e.ctx_ = &ctx;
  for (int i = 1; i <= ctx.rank(); ++i) e.images_.push_back(ctx.generator(i));
  return e;
}

Endo Endo::from_matrix(const QuotientContext& ctx, const GLMatrix& g) {
  if (g.n() != ctx.rank()) throw Error("Endo: matrix rank mismatch");
  Endo e;
  e.ctx_ = &ctx;
  for (int i = 1; i <= ctx.rank(); ++i) {
    LieElement img(ctx.rank());
    SparseVec col(ctx.rank());
    for (int j = 1; j <= ctx.rank(); ++j)
      if (!g.at(j - 1, i - 1).is_zero()) col.push(j - 1, g.at(j - 1, i - 1));
    col.normalize();
    img.set_component(1, std::move(col));
    e.images_.push_back(ctx.reduce(img));
  }
  return e;
}

Endo Endo::from_images(const QuotientContext& ctx,
                       std::vector<QuotElement> images) {
  if (static_cast<int>(images.size()) != ctx.rank())
    throw Error("Endo: wrong number of generator images");
  for (const auto& im : images)
    if (im.context() && im.context() != &ctx)
      throw Error("Endo: image context mismatch");
  Endo e;
  e.ctx_ = &ctx;
  e.images_ = std::move(images);
  return e;
}

Endo Endo::deviation(const QuotientContext& ctx, int i, const QuotElement& u) {
  if (i < 1 || i > ctx.rank()) throw Error("Endo: generator index out of range");
  Endo e = identity(ctx);
  e.images_[i - 1] += u;
  return e;
}

const QuotElement& Endo::image(int i) const {
  if (!ctx_ || i < 1 || i > ctx_->rank())
    throw Error("Endo: generator index out of range");
  return images_[i - 1];
}

GLMatrix Endo::linear_part() const {
  int n = ctx_->rank();
  GLMatrix g(n);
  for (int i = 1; i <= n; ++i) {
    SparseVec lin = images_[i - 1].component(1);
    for (auto& [j, c] : lin.ent) g.at(j, i - 1) = c;
  }
  return g;
}

bool Endo::is_identity() const {
  for (int i = 1; i <= ctx_->rank(); ++i)
    if (!deviation_of(i).is_zero()) return false;
  return true;
}

QuotElement Endo::deviation_of(int i) const {
  return image(i) - ctx_->generator(i);
}

int Endo::deviation_min_degree() const {
  int m = 0;
  for (int i = 1; i <= ctx_->rank(); ++i) {
    QuotElement d = deviation_of(i);
    if (d.is_zero()) continue;
    if (m == 0 || d.min_degree() < m) m = d.min_degree();
  }
  return m;
}

namespace {

// Memoized substitution of generator images into Lyndon bracketings.
struct Applier {
  const QuotientContext& ctx;
  const Endo& e;
  std::map<std::pair<int, int>, QuotElement> memo;

  const QuotElement& basis_image(int d, int idx) {
    auto key = std::make_pair(d, idx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    QuotElement result;
    if (d == 1) {
      result = e.image(idx + 1);
    } else {
      const Word& w = lyndon_words(ctx.rank(), d)[idx];
      auto [u, v] = standard_factorization(w);
      int du = static_cast<int>(u.size());
      int dv = static_cast<int>(v.size());
      const QuotElement& a =
          basis_image(du, lyndon_index(ctx.rank(), du, u));
      const QuotElement& b =
          basis_image(dv, lyndon_index(ctx.rank(), dv, v));
      result = ctx.bracket(a, b);
    }
    return memo.emplace(key, std::move(result)).first->second;
  }

  QuotElement operator()(const QuotElement& u) {
    QuotElement out(&ctx);
    for (auto& [d, vec] : u.components()) {
      for (auto& [idx, c] : vec.ent) {
        QuotElement term = basis_image(d, idx);
        term.scale(c);
        out += term;
      }
    }
    return out;
  }
};

}  // namespace

QuotElement apply(const Endo& e, const QuotElement& u) {
  if (u.context() && u.context() != &e.context())
    throw Error("apply: context mismatch");
  Applier ap{e.context(), e, {}};
  return ap(u);
}

Endo compose(const Endo& e1, const Endo& e2) {
  if (&e1.context() != &e2.context()) throw Error("compose: context mismatch");
  const QuotientContext& ctx = e1.context();
  Applier ap{ctx, e1, {}};
  std::vector<QuotElement> images;
  for (int i = 1; i <= ctx.rank(); ++i) images.push_back(ap(e2.image(i)));
  return Endo::from_images(ctx, std::move(images));
}

InverseResult invert_mod(const Endo& e, int D) {
  const QuotientContext& ctx = e.context();
  if (D < 1 || D > ctx.maxdeg())
    throw Error("invert_mod: degree bound outside context");
  GLMatrix lin = e.linear_part();
  Endo psi = Endo::from_matrix(ctx, lin.inverse());  // throws on singular
  for (;;) {
    Endo c = compose(e, psi);
    int m = c.deviation_min_degree();
    if (m == 0 || m > D) break;
    std::vector<QuotElement> imgs;
    for (int i = 1; i <= ctx.rank(); ++i)
      imgs.push_back(ctx.generator(i) - c.deviation_of(i));
    psi = compose(psi, Endo::from_images(ctx, std::move(imgs)));
  }
  InverseResult res;
  res.exact = compose(e, psi).is_identity() && compose(psi, e).is_identity();
  res.inverse = std::move(psi);
  return res;
}

bool in_ik(const Endo& e, int k) {
  for (int i = 1; i <= e.context().rank(); ++i) {
    QuotElement d = e.deviation_of(i);
    if (!d.is_zero() && d.min_degree() < k) return false;
  }
  return true;
}

std::vector<QuotElement> nu(const Endo& e, int k) {
  if (k < 2) throw Error("nu: degree must be at least 2");
  if (!in_ik(e, k))
    throw Error("nu: endomorphism has deviations below degree " +
                std::to_string(k));
  std::vector<QuotElement> out;
  for (int i = 1; i <= e.context().rank(); ++i)
    out.push_back(e.deviation_of(i).component_element(k));
  return out;
}

std::vector<QuotElement> graded_commutator(const Endo& e1, int j,
                                           const Endo& e2, int k) {
  if (&e1.context() != &e2.context())
    throw Error("graded_commutator: context mismatch");
  if (!in_ik(e1, j) || !in_ik(e2, k))
    throw Error("graded_commutator: factors outside the stated classes");
  const QuotientContext& ctx = e1.context();
  int D = ctx.maxdeg();
  Endo i1 = invert_mod(e1, D).inverse;
  Endo i2 = invert_mod(e2, D).inverse;
  Endo c = compose(i1, compose(i2, compose(e1, e2)));
  return nu(c, j + k - 1);
}

// ---- named families -------------------------------------------------------------

namespace {

QuotElement pair_reduced(const QuotientContext& ctx, int i, int j) {
  return ctx.reduce(bracket(LieElement::generator(ctx.rank(), i),
                            LieElement::generator(ctx.rank(), j)));
}

Endo family(const QuotientContext& ctx, int i, int j, const Poly& f, int k,
            int l) {
  if (ctx.rank() < std::max({i, j, k, l}))
    throw Error("family: rank too small");
  if (f.is_zero()) throw Error("family: zero parameter polynomial");
  return Endo::deviation(ctx, 1, u_elem(ctx, i, j, f, k, l));
}

}  // namespace

Endo alpha_left(const QuotientContext& ctx, const Poly& f) {
  return family(ctx, 1, 2, f, 3, 4);
}
Endo alpha_right(const QuotientContext& ctx, const Poly& f) {
  if (f.is_zero()) throw Error("family: zero parameter polynomial");
  return Endo::deviation(ctx, 1, v_elem(ctx, 1, 2, 3, 4, f));
}
Endo beta_left(const QuotientContext& ctx, const Poly& f) {
  return family(ctx, 1, 2, f, 2, 4);
}
Endo gamma_left(const QuotientContext& ctx, const Poly& f) {
  return family(ctx, 1, 2, f, 1, 4);
}
Endo delta_left(const QuotientContext& ctx, const Poly& f) {
  return family(ctx, 1, 2, f, 2, 3);
}
Endo epsilon_left(const QuotientContext& ctx, const Poly& f) {
  return family(ctx, 2, 3, f, 2, 3);
}
Endo zeta_left(const QuotientContext& ctx, const Poly& f) {
  return family(ctx, 2, 3, f, 2, 4);
}
Endo eta_left(const QuotientContext& ctx, const Poly& f) {
  return family(ctx, 3, 4, f, 1, 3);
}
Endo theta_left(const QuotientContext& ctx, const Poly& f) {
  if (ctx.rank() < 5) throw Error("theta family needs rank at least 5");
  return family(ctx, 2, 3, f, 4, ctx.rank());
}

Endo omega(const QuotientContext& ctx, int kappa) {
  if (kappa < 1) throw Error("omega: kappa must be positive");
  int n = ctx.rank();
  LieElement head = bracket(LieElement::generator(n, 1),
                            LieElement::generator(n, 2));
  head = left_normed(head, LieElement::generator(n, 1), kappa - 1);
  LieElement dev = bracket(head, bracket(LieElement::generator(n, 3),
                                         LieElement::generator(n, 4)));
  return Endo::deviation(ctx, 1, ctx.reduce(dev));
}

Endo transvection(const QuotientContext& ctx, int i, int j, const Rat& a) {
  return Endo::from_matrix(ctx, GLMatrix::transvection(ctx.rank(), i, j, a));
}
Endo swap_gens(const QuotientContext& ctx, int i, int j) {
  return Endo::from_matrix(ctx, GLMatrix::swap_letters(ctx.rank(), i, j));
}
Endo permutation(const QuotientContext& ctx, const std::vector<int>& rho) {
  return Endo::from_matrix(ctx, GLMatrix::permutation(rho));
}

// ---- identity verification -------------------------------------------------------

Factor fac(Endo e) { return Factor{std::move(e), false}; }
Factor inv(Endo e) { return Factor{std::move(e), true}; }

Endo evaluate_product(const std::vector<Factor>& factors,
                      const QuotientContext& ctx, int D, bool leftmost_first) {
  (void)D;  // inverses are always built to the full context window
  Endo acc = Endo::identity(ctx);
  for (const Factor& f : factors) {
    Endo g = f.inverted ? invert_mod(f.endo, ctx.maxdeg()).inverse : f.endo;
    acc = leftmost_first ? compose(g, acc) : compose(acc, g);
  }
  return acc;
}

namespace {

// first discrepancy between the generator images of a and b up to degree D
std::optional<std::string> first_discrepancy(const Endo& a, const Endo& b,
                                             int D) {
  const QuotientContext& ctx = a.context();
  for (int i = 1; i <= ctx.rank(); ++i) {
    for (int d = 1; d <= D; ++d) {
      SparseVec va = a.image(i).component(d);
      SparseVec vb = b.image(i).component(d);
      if (!(va == vb)) {
        std::ostringstream os;
        os << "images of generator " << i << " differ in degree " << d;
        SparseVec diff = va - vb;
        os << " (first coordinate " << diff.ent.front().first << ", delta "
           << diff.ent.front().second.str() << ")";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

}  // namespace

IdentityReport verify_identity(const std::vector<Factor>& lhs,
                               const std::vector<Factor>& rhs,
                               const QuotientContext& ctx, int D) {
  if (D < 1 || D > ctx.maxdeg())
    throw Error("verify_identity: degree bound outside context");
  IdentityReport rep;
  Endo l = evaluate_product(lhs, ctx, D, /*leftmost_first=*/false);
  Endo r = evaluate_product(rhs, ctx, D, /*leftmost_first=*/false);
  auto diff = first_discrepancy(l, r, D);
  if (!diff) {
    rep.ok = true;
    return rep;
  }
  // retry with the reversed reading of written products
  Endo lr = evaluate_product(lhs, ctx, D, /*leftmost_first=*/true);
  Endo rr = evaluate_product(rhs, ctx, D, /*leftmost_first=*/true);
  auto diff2 = first_discrepancy(lr, rr, D);
  if (!diff2) {
    rep.ok = true;
    rep.reversed_reading = true;
    rep.detail = "holds only under the reversed product reading";
    return rep;
  }
  rep.ok = false;
  rep.detail = *diff;
  return rep;
}

// ---- suites ----------------------------------------------------------------------

void SuiteResult::add(std::string name, bool okflag, std::string detail) {
  ok = ok && okflag;
  checks.push_back({std::move(name), okflag, std::move(detail)});
}

SuiteResult suite_lemma_3_4(int n, int instances, unsigned seed) {
  SuiteResult res;
  res.suite = "lemma-3.4";
  QuotientContext ctx(n, IdealSpec::in(), 5);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> gen_i(1, n);
  std::uniform_int_distribution<int> degree_pick(4, 5);
  std::uniform_int_distribution<long> coeff(-3, 3);
  for (int t = 0; t < instances; ++t) {
    int k = degree_pick(rng);
    auto fam = ideal_spanning_family(IdealSpec::derived_squared(), n, k);
    QuotElement u(&ctx);
    for (size_t s = 0; s < fam.size(); s += 1 + rng() % 5) {
      QuotElement q = ctx.reduce(fam[s]);
      q.scale(Rat(coeff(rng)));
      u += q;
    }
    if (u.is_zero()) u = ctx.reduce(fam[t % fam.size()]);
    int i = gen_i(rng);
    std::vector<int> rho(n);
    for (int s = 0; s < n; ++s) rho[s] = s + 1;
    std::shuffle(rho.begin(), rho.end(), rng);

    Endo phi_iu = Endo::deviation(ctx, i, u);
    Endo tau = permutation(ctx, rho);
    QuotElement tu = ctx.gl_act(GLMatrix::permutation(rho), u);
    Endo rhs = Endo::deviation(ctx, rho[i - 1], tu);
    auto rep = verify_identity({fac(tau), fac(phi_iu), inv(tau)}, {fac(rhs)},
                               ctx, 5);
    std::ostringstream name;
    name << "conjugation instance " << t << " (i=" << i << ", k=" << k << ")";
    res.add(name.str(), rep.ok && !rep.reversed_reading, rep.detail);
  }
  return res;
}

SuiteResult suite_lemma_3_6(int n) {
  SuiteResult res;
  res.suite = "lemma-3.6";
  QuotientContext ctx(n, IdealSpec::in(), 6);
  std::vector<Poly> fs{Poly::one(n), Poly::t(n, 1),
                       Poly::t(n, 1) * Poly::t(n, 2)};
  for (const Poly& f : fs) {
    int D = 4 + std::max(f.total_degree(), 0);
    auto tau_pull = [&](int i, int j) {
      GLMatrix t = GLMatrix::transvection(n, i, j, Rat(1));
      return f.gl_act(t.inverse());
    };
    {
      auto rep = verify_identity(
          {fac(beta_left(ctx, f))},
          {inv(alpha_left(ctx, f)), fac(transvection(ctx, 3, 2, Rat(1))),
           fac(alpha_left(ctx, tau_pull(3, 2))),
           inv(transvection(ctx, 3, 2, Rat(1)))},
          ctx, D);
      res.add("beta via alpha, f=" + f.str(), rep.ok && !rep.reversed_reading,
              rep.detail);
    }
    {
      auto rep = verify_identity(
          {fac(delta_left(ctx, f))},
          {fac(alpha_left(ctx, f)), fac(transvection(ctx, 4, 2, Rat(1))),
           inv(alpha_left(ctx, tau_pull(4, 2))),
           inv(transvection(ctx, 4, 2, Rat(1)))},
          ctx, D);
      res.add("delta via alpha, f=" + f.str(), rep.ok && !rep.reversed_reading,
              rep.detail);
    }
    {
      auto rep = verify_identity(
          {fac(epsilon_left(ctx, f))},
          {fac(delta_left(ctx, f)), fac(transvection(ctx, 1, 3, Rat(1))),
           inv(delta_left(ctx, tau_pull(1, 3))),
           inv(transvection(ctx, 1, 3, Rat(1)))},
          ctx, D);
      res.add("epsilon via delta, f=" + f.str(),
              rep.ok && !rep.reversed_reading, rep.detail);
    }
    {
      auto rep = verify_identity(
          {fac(zeta_left(ctx, f))},
          {fac(beta_left(ctx, f)), fac(transvection(ctx, 1, 3, Rat(1))),
           inv(beta_left(ctx, tau_pull(1, 3))),
           inv(transvection(ctx, 1, 3, Rat(1)))},
          ctx, D);
      res.add("zeta via beta, f=" + f.str(), rep.ok && !rep.reversed_reading,
              rep.detail);
    }
    {
      auto rep = verify_identity(
          {fac(eta_left(ctx, f))},
          {fac(alpha_right(ctx, f)), fac(transvection(ctx, 2, 3, Rat(1))),
           inv(alpha_right(ctx, tau_pull(2, 3))),
           inv(transvection(ctx, 2, 3, Rat(1)))},
          ctx, D);
      res.add("eta via alpha, f=" + f.str(), rep.ok && !rep.reversed_reading,
              rep.detail);
    }
    if (n >= 5) {
      GLMatrix s24 = GLMatrix::swap_letters(n, 2, 4);
      GLMatrix t1n = GLMatrix::transvection(n, 1, n, Rat(1));
      Poly fs24 = f.gl_act(s24);
      auto rep = verify_identity(
          {fac(swap_gens(ctx, 2, 4)), fac(theta_left(ctx, f)),
           inv(swap_gens(ctx, 2, 4))},
          {fac(alpha_right(ctx, fs24)), fac(transvection(ctx, 1, n, Rat(1))),
           inv(alpha_right(ctx, fs24.gl_act(t1n.inverse()))),
           inv(transvection(ctx, 1, n, Rat(1)))},
          ctx, D);
      res.add("theta via alpha, f=" + f.str(), rep.ok && !rep.reversed_reading,
              rep.detail);
    }
  }
  return res;
}

SuiteResult suite_eq_3_23(int n) {
  SuiteResult res;
  res.suite = "eq-3.23";
  QuotientContext ctx(n, IdealSpec::in(), 6);
  Endo phi = Endo::deviation(ctx, 2, pair_reduced(ctx, 3, 4));
  Endo b11 = beta_left(ctx, Poly::one(n));
  std::vector<Factor> lhs{inv(b11), fac(phi), fac(b11), inv(phi)};
  std::vector<Factor> rhs{
      fac(swap_gens(ctx, 3, 4)), inv(alpha_right(ctx, Poly::t(n, 3))),
      inv(swap_gens(ctx, 3, 4)), fac(swap_gens(ctx, 2, 4)),
      fac(beta_left(ctx, Poly::t(n, 3))), inv(swap_gens(ctx, 2, 4)),
      fac(swap_gens(ctx, 2, 3)), fac(alpha_left(ctx, Poly::t(n, 4))),
      inv(swap_gens(ctx, 2, 3))};
  auto rep = verify_identity(lhs, rhs, ctx, 6);
  res.add("commutator of beta with the tame deviation", rep.ok,
          rep.detail + (rep.reversed_reading ? " [reversed reading]" : ""));
  return res;
}

SuiteResult suite_eq_3_24(int n, int k) {
  SuiteResult res;
  res.suite = "eq-3.24";
  if (k < 6) throw Error("eq-3.24 requires k >= 6");
  QuotientContext ctx(n, IdealSpec::in(), k + 1);
  Endo phi1 = Endo::deviation(ctx, 1, pair_reduced(ctx, 2, 3));
  Poly f = Poly::one(n);
  for (int s = 0; s < k - 5; ++s) f = f * Poly::t(n, 2);
  Endo g = gamma_left(ctx, f);
  Poly h = Poly::one(n);
  for (int s = 0; s < k - 4; ++s) h = h * Poly::t(n, 3);
  std::vector<Factor> lhs{inv(g), inv(phi1), fac(g), fac(phi1)};
  std::vector<Factor> rhs{fac(swap_gens(ctx, 2, 4)), fac(swap_gens(ctx, 3, 4)),
                          fac(alpha_right(ctx, h)), inv(swap_gens(ctx, 3, 4)),
                          inv(swap_gens(ctx, 2, 4))};
  auto rep = verify_identity(lhs, rhs, ctx, k + 1);
  std::ostringstream name;
  name << "commutator descent at k=" << k;
  res.add(name.str(), rep.ok,
          rep.detail + (rep.reversed_reading ? " [reversed reading]" : ""));
  return res;
}

}  // namespace relfree
