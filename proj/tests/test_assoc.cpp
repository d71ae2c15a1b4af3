#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relfree/assoc.hpp"
#include "relfree/lie.hpp"
#include "relfree/rat.hpp"

using namespace relfree;

namespace {

AssocPoly gen(int n, int i) { return AssocPoly::generator(n, i); }

AssocPoly pow1(int n, int exp) {  // x1^exp
  AssocPoly p = AssocPoly::unit(n);
  for (int k = 0; k < exp; ++k) p = mul(p, gen(n, 1));
  return p;
}

// Left-normed [x1, xj, m x1] built by repeated commutators.
AssocPoly left_normed_1j(int n, int j, int m) {
  AssocPoly acc = comm(gen(n, 1), gen(n, j));
  for (int k = 0; k < m; ++k) acc = comm(acc, gen(n, 1));
  return acc;
}

AssocPoly random_poly(std::mt19937_64& rng, int n, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> letter(1, n);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  AssocPoly p(n);
  for (int t = 0; t < terms; ++t) {
    Word w(deg(rng));
    for (auto& l : w) l = letter(rng);
    p.add_term(std::move(w), Rat(num(rng), den(rng)));
  }
  return p;
}

// Random element of the span of rotation differences of a fixed degree.
AssocPoly random_balanced(std::mt19937_64& rng, int n, int degree, int terms) {
  std::uniform_int_distribution<int> letter(1, n);
  std::uniform_int_distribution<long> num(-3, 3);
  AssocPoly p(n);
  for (int t = 0; t < terms; ++t) {
    Word w(degree);
    for (auto& l : w) l = letter(rng);
    Word r(w.begin() + 1, w.end());
    r.push_back(w.front());
    Rat c(num(rng));
    p.add_term(w, c);
    p.add_term(r, -c);
  }
  return p;
}

}  // namespace

TEST_CASE("product basics") {
  AssocPoly x1x2 = mul(gen(4, 1), gen(4, 2));
  CHECK(x1x2.terms().size() == 1);
  CHECK(x1x2.coeff({1, 2}) == Rat(1));

  AssocPoly c = comm(gen(4, 1), gen(4, 2));
  CHECK(mul(c, AssocPoly::unit(4)) == c);
  CHECK(mul(AssocPoly::unit(4), c) == c);
}

TEST_CASE("nested commutator [x1,x3,x1] expands to 2x1x3x1 - x1^2x3 - x3x1^2") {
  AssocPoly v = comm(comm(gen(4, 1), gen(4, 3)), gen(4, 1));
  AssocPoly expected(4);
  expected.add_term({1, 3, 1}, Rat(2));
  expected.add_term({1, 1, 3}, Rat(-1));
  expected.add_term({3, 1, 1}, Rat(-1));
  CHECK(v == expected);
}

TEST_CASE("partial on single words") {
  AssocPoly x1x2 = mul(gen(4, 1), gen(4, 2));
  CHECK(partial(1, x1x2) == gen(4, 2));
  CHECK(partial(2, x1x2).is_zero());
  CHECK(partial(1, AssocPoly::unit(4)).is_zero());
  CHECK_THROWS_AS(partial(0, x1x2), Error);
  CHECK_THROWS_AS(partial(5, x1x2), Error);
}

TEST_CASE("closed form of the left-normed ladder and its partials") {
  // [x1, xj, m x1] = sum_{k=1}^{m+1} (-1)^{k-1} C(m+1,k) x1^k xj x1^{m+1-k}
  //                  - xj x1^{m+1}
  for (int m = 1; m <= 5; ++m) {
    for (int j = 2; j <= 4; ++j) {
      AssocPoly v = left_normed_1j(4, j, m);
      AssocPoly expected(4);
      for (int k = 1; k <= m + 1; ++k) {
        Word w;
        for (int t = 0; t < k; ++t) w.push_back(1);
        w.push_back(j);
        for (int t = 0; t < m + 1 - k; ++t) w.push_back(1);
        Rat c = binomial(m + 1, k);
        if (k % 2 == 0) c = -c;
        expected.add_term(std::move(w), c);
      }
      Word tail;
      tail.push_back(j);
      for (int t = 0; t < m + 1; ++t) tail.push_back(1);
      expected.add_term(std::move(tail), Rat(-1));
      CHECK(v == expected);

      // d_j of it collapses to -x1^{m+1}
      AssocPoly d = partial(j, v);
      AssocPoly neg = pow1(4, m + 1);
      neg *= Rat(-1);
      CHECK(d == neg);
    }
  }
}

TEST_CASE("partial_1 of [x1,x2,m x1,[x3,x4]] matches the closed form") {
  for (int kappa : {2, 3, 4}) {
    int m = kappa - 1;
    AssocPoly v = comm(left_normed_1j(4, 2, m), comm(gen(4, 3), gen(4, 4)));
    AssocPoly d1 = partial(1, v);
    AssocPoly expected(4);
    for (int k = 1; k <= m + 1; ++k) {
      AssocPoly term = mul(mul(pow1(4, k - 1), gen(4, 2)), pow1(4, m + 1 - k));
      Rat c = binomial(m + 1, k);
      if (k % 2 == 0) c = -c;
      term *= c;
      expected += term;
    }
    expected = mul(expected, comm(gen(4, 3), gen(4, 4)));
    CHECK(d1 == expected);
  }
}

TEST_CASE("balanced: basic verdicts") {
  AssocPoly c = comm(gen(4, 1), gen(4, 2));  // x1x2 - x2x1
  CHECK(is_balanced_span_oracle(c));
  CHECK(is_balanced(c));

  AssocPoly w = mul(gen(4, 1), gen(4, 2));  // x1x2
  CHECK_FALSE(is_balanced_span_oracle(w));
  CHECK_FALSE(is_balanced(w));

  // 2 x2x1 [x3,x4] - x1x2 [x3,x4] is not balanced
  AssocPoly bad = mul(gen(4, 2), gen(4, 1));
  bad *= Rat(2);
  bad -= mul(gen(4, 1), gen(4, 2));
  bad = mul(bad, comm(gen(4, 3), gen(4, 4)));
  AssocPoly witness = partial(
      1, comm(comm(comm(gen(4, 1), gen(4, 2)), gen(4, 1)),
              comm(gen(4, 3), gen(4, 4))));
  CHECK(witness == bad);
  CHECK_FALSE(is_balanced_span_oracle(bad));
  CHECK_FALSE(is_balanced(bad));

  CHECK(is_balanced(AssocPoly(4)));
  CHECK_THROWS_AS(is_balanced(gen(4, 1) + mul(gen(4, 1), gen(4, 2))), Error);
}

TEST_CASE("fast path agrees with the span oracle") {
  std::mt19937_64 rng(271828);
  for (int d = 2; d <= 5; ++d) {
    for (int t = 0; t < 40; ++t) {
      AssocPoly p = t % 2 == 0 ? random_balanced(rng, 4, d, 3)
                               : [&] {
                                   AssocPoly q(4);
                                   std::uniform_int_distribution<int> letter(1, 4);
                                   std::uniform_int_distribution<long> num(-3, 3);
                                   for (int s = 0; s < 4; ++s) {
                                     Word w(d);
                                     for (auto& l : w) l = letter(rng);
                                     q.add_term(std::move(w), Rat(num(rng)));
                                   }
                                   return q;
                                 }();
      CHECK(is_balanced_necklace(p) == is_balanced_span_oracle(p));
    }
  }
  for (int t = 0; t < 100; ++t) {
    AssocPoly p = t % 2 == 0 ? random_balanced(rng, 4, 6, 4)
                             : random_balanced(rng, 4, 6, 2) +
                                   AssocPoly::monomial(4, {1, 2, 3, 4, 1, static_cast<int>(1 + t % 4)}, Rat(t % 5 - 2));
    CHECK(is_balanced_necklace(p) == is_balanced_span_oracle(p));
  }
}

TEST_CASE("phi on generators and the key products") {
  CHECK(phi(gen(4, 1)) == Mat2::identity());
  CHECK_THROWS_AS(phi(gen(3, 1)), Error);

  Mat2 p2 = phi_generator(4, 2);
  Mat2 p3 = phi_generator(4, 3);
  Mat2 p4 = phi_generator(4, 4);
  Mat2 prod = p2 * comm(p3, p4);
  for (int i = 0; i < 4; ++i) CHECK(prod.e[i] == PolyZ::z(3));

  // Tr(Phi(d1(v3))) = 2 z^3 for v3 = [x1,x2,2x1,[x3,x4]]
  AssocPoly v3 = comm(left_normed_1j(4, 2, 2), comm(gen(4, 3), gen(4, 4)));
  PolyZ tr = phi(partial(1, v3)).trace();
  CHECK(tr == PolyZ::z(3, Rat(2)));
}

TEST_CASE("mod_lambda") {
  PolyZ p = PolyZ::z(3) + PolyZ::z(4);
  CHECK(mod_lambda(p, 4) == PolyZ::z(3));
  CHECK(mod_lambda(Mat2::identity(), 1) == Mat2::identity());

  // (1 + z^3)^2 - z^6 reduced mod z^4 leaves 1 + 2 z^3
  PolyZ q = PolyZ(Rat(1)) + PolyZ::z(3);
  PolyZ r = q * q - PolyZ::z(6);
  CHECK(mod_lambda(r, 4) == PolyZ(Rat(1)) + PolyZ::z(3, Rat(2)));
}

TEST_CASE("block determinants") {
  int n = 4;
  std::vector<std::vector<Mat2>> blocks(n, std::vector<Mat2>(n, Mat2::zero()));
  for (int i = 0; i < n; ++i) blocks[i][i] = Mat2::identity();
  CHECK(block_det_mod(blocks, 4) == PolyZ(Rat(1)));

  Mat2 allz3;
  for (auto& p : allz3.e) p = PolyZ::z(3);
  blocks[0][0] = Mat2::identity() + allz3;
  CHECK(block_det_mod(blocks, 4) == PolyZ(Rat(1)) + PolyZ::z(3, Rat(2)));

  for (int j = 0; j < n; ++j) blocks[2][j] = Mat2::zero();
  CHECK(block_det_mod(blocks, 4).is_zero());
}

TEST_CASE("poly_det pivoting handles zero corners") {
  std::vector<std::vector<PolyZ>> a(2, std::vector<PolyZ>(2));
  a[0][0] = PolyZ();
  a[0][1] = PolyZ(Rat(1));
  a[1][0] = PolyZ(Rat(1));
  a[1][1] = PolyZ();
  CHECK(poly_det(a) == PolyZ(Rat(-1)));
}

TEST_CASE("reconstruction f = eps(f) + sum x_i d_i(f)") {
  std::mt19937_64 rng(31337);
  for (int t = 0; t < 120; ++t) {
    int n = 2 + t % 4;  // up to 5
    AssocPoly f = random_poly(rng, n, 6, 6);
    AssocPoly rebuilt = AssocPoly::unit(n);
    rebuilt *= f.epsilon();
    for (int i = 1; i <= n; ++i) rebuilt += mul(gen(n, i), partial(i, f));
    CHECK(rebuilt == f);
  }
}

TEST_CASE("derivation laws for partial") {
  std::mt19937_64 rng(424242);
  for (int t = 0; t < 120; ++t) {
    int n = 4;
    AssocPoly f = random_poly(rng, n, 4, 4);
    AssocPoly g = random_poly(rng, n, 4, 4);
    Rat a(t % 7 - 3), b(2 - t % 5);
    for (int i = 1; i <= n; ++i) {
      AssocPoly lhs = partial(i, (f * a) + (g * b));
      AssocPoly rhs = (partial(i, f) * a) + (partial(i, g) * b);
      CHECK(lhs == rhs);

      AssocPoly pl = partial(i, mul(f, g));
      AssocPoly pr = mul(partial(i, f), g) + (partial(i, g) * f.epsilon());
      CHECK(pl == pr);

      AssocPoly cl = partial(i, comm(f, g));
      AssocPoly cr = mul(partial(i, f), g) + (partial(i, g) * f.epsilon()) -
                     mul(partial(i, g), f) - (partial(i, f) * g.epsilon());
      CHECK(cl == cr);
    }
  }
}

TEST_CASE("phi is an algebra homomorphism") {
  std::mt19937_64 rng(8080);
  for (int t = 0; t < 100; ++t) {
    AssocPoly f = random_poly(rng, 4, 5, 4);
    AssocPoly g = random_poly(rng, 4, 5, 4);
    CHECK(phi(mul(f, g)) == phi(f) * phi(g));
  }
  CHECK(phi(AssocPoly::unit(4)) == Mat2::identity());
}

TEST_CASE("trace of phi vanishes on balanced elements") {
  std::mt19937_64 rng(1010);
  for (int d = 2; d <= 6; ++d)
    for (int t = 0; t < 25; ++t) {
      AssocPoly p = random_balanced(rng, 4, d, 4);
      CHECK(phi(p).trace().is_zero());
    }
}

TEST_CASE("products of commutator images stay in degree >= 4 of z") {
  // both factors of degree >= 2, total degree <= 6, over the Lyndon basis
  for (int d1 = 2; d1 <= 4; ++d1) {
    int d2max = 6 - d1;
    for (int d2 = 2; d2 <= d2max; ++d2) {
      for (int i = 0; i < lyndon_dim(4, d1); ++i) {
        Mat2 a = phi(expand(LieElement::basis_element(4, d1, i)));
        for (int j = 0; j < lyndon_dim(4, d2); ++j) {
          Mat2 b = phi(expand(LieElement::basis_element(4, d2, j)));
          Mat2 prod = a * b;
          for (const auto& p : prod.e) CHECK(mod_lambda(p, 4).is_zero());
        }
      }
    }
  }
}
