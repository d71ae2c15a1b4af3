#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relfree/lie.hpp"

using namespace relfree;

namespace {

LieElement x(int n, int i) { return LieElement::generator(n, i); }

LieElement random_homogeneous(std::mt19937_64& rng, int n, int d, int terms) {
  int dim = lyndon_dim(n, d);
  std::uniform_int_distribution<int> idx(0, dim - 1);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  LieElement u(n);
  SparseVec v(dim);
  for (int t = 0; t < terms; ++t) v.push(idx(rng), Rat(num(rng), den(rng)));
  v.normalize();
  u.set_component(d, std::move(v));
  return u;
}

GLMatrix random_invertible(std::mt19937_64& rng, int n) {
  // product of random transvections and a permutation: always invertible
  std::uniform_int_distribution<int> gi(1, n);
  std::uniform_int_distribution<long> val(-3, 3);
  GLMatrix g = GLMatrix::identity(n);
  for (int t = 0; t < 4; ++t) {
    int i = gi(rng), j = gi(rng);
    if (i == j) continue;
    long a = val(rng);
    if (a == 0) a = 1;
    g = g * GLMatrix::transvection(n, i, j, Rat(a));
  }
  std::vector<int> rho(n);
  for (int i = 0; i < n; ++i) rho[i] = i + 1;
  std::shuffle(rho.begin(), rho.end(), rng);
  return g * GLMatrix::permutation(rho);
}

// Independent enumeration: count words that are strictly smaller than all
// their proper rotations.
int count_lyndon_brute(int n, int d) {
  Word w(d, 1);
  int count = 0;
  for (;;) {
    if (is_lyndon(w)) ++count;
    int i = d - 1;
    while (i >= 0 && w[i] == n) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
    for (int j = i + 1; j < d; ++j) w[j] = w[j];
    // (letters after position i were already reset to 1)
  }
  return count;
}

}  // namespace

TEST_CASE("GLMatrix inverse and determinant") {
  std::mt19937_64 rng(555);
  for (int t = 0; t < 30; ++t) {
    GLMatrix g = random_invertible(rng, 4);
    CHECK(g.det() != Rat(0));
    CHECK((g * g.inverse()).is_identity());
    CHECK((g.inverse() * g).is_identity());
  }
  GLMatrix z(3);
  CHECK(z.det() == Rat(0));
  CHECK_THROWS_AS(z.inverse(), Error);
}

TEST_CASE("basis sizes") {
  CHECK(lyndon_dim(4, 1) == 4);
  CHECK(lyndon_dim(4, 2) == 6);
  CHECK(lyndon_dim(4, 3) == 20);  // frozen from the brute-force count below
  CHECK(count_lyndon_brute(4, 3) == 20);
}

TEST_CASE("basis matches brute-force enumeration for n <= 5, d <= 8") {
  for (int n = 2; n <= 5; ++n)
    for (int d = 1; d <= 8; ++d) {
      CHECK(lyndon_dim(n, d) == count_lyndon_brute(n, d));
      const auto& words = lyndon_words(n, d);
      CHECK(static_cast<int>(words.size()) == lyndon_dim(n, d));
      for (size_t i = 0; i + 1 < words.size(); ++i) CHECK(words[i] < words[i + 1]);
      for (const Word& w : words) {
        CHECK(is_lyndon(w));
        CHECK(lyndon_index(n, d, w) >= 0);
      }
    }
  CHECK(lyndon_index(4, 2, {2, 1}) == -1);  // not Lyndon
}

TEST_CASE("standard factorization splits into Lyndon halves") {
  for (int d = 2; d <= 7; ++d)
    for (const Word& w : lyndon_words(3, d)) {
      auto [u, v] = standard_factorization(w);
      CHECK(is_lyndon(u));
      CHECK(is_lyndon(v));
      CHECK(u < v);
      Word joined = u;
      joined.insert(joined.end(), v.begin(), v.end());
      CHECK(joined == w);
    }
}

TEST_CASE("bracket basics") {
  CHECK(bracket(x(4, 1), x(4, 1)).is_zero());

  LieElement b12 = bracket(x(4, 1), x(4, 2));
  CHECK(b12 == LieElement::basis_element(4, 2, lyndon_index(4, 2, {1, 2})));
  CHECK(bracket(x(4, 2), x(4, 1)) == -b12);

  AssocPoly e = expand(b12);
  CHECK(e.coeff({1, 2}) == Rat(1));
  CHECK(e.coeff({2, 1}) == Rat(-1));
}

TEST_CASE("Jacobi identity on random homogeneous triples") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    int n = 3 + t % 2;
    LieElement a = random_homogeneous(rng, n, 1 + t % 3, 2);
    LieElement b = random_homogeneous(rng, n, 1 + (t / 2) % 2, 2);
    LieElement c = random_homogeneous(rng, n, 1, 2);
    LieElement s = bracket(bracket(a, b), c);
    s += bracket(bracket(b, c), a);
    s += bracket(bracket(c, a), b);
    CHECK(s.is_zero());
  }
}

TEST_CASE("left-normed helper") {
  LieElement a = x(4, 1);
  CHECK(left_normed(a, {}) == a);
  std::vector<LieElement> bs{x(4, 2)};
  CHECK(left_normed(a, bs) == bracket(x(4, 1), x(4, 2)));

  // expand([x1, x3, x1]) = 2 x1x3x1 - x1^2 x3 - x3 x1^2
  LieElement l = left_normed(x(4, 1), x(4, 3), 0);
  CHECK(l == x(4, 1));
  LieElement v = bracket(bracket(x(4, 1), x(4, 3)), x(4, 1));
  AssocPoly e = expand(v);
  CHECK(e.coeff({1, 3, 1}) == Rat(2));
  CHECK(e.coeff({1, 1, 3}) == Rat(-1));
  CHECK(e.coeff({3, 1, 1}) == Rat(-1));
  CHECK(e.terms().size() == 3);
}

TEST_CASE("ladder expansion closed form up to m = 5") {
  for (int m = 1; m <= 5; ++m) {
    LieElement v = left_normed(bracket(x(4, 1), x(4, 2)), x(4, 1), m);
    AssocPoly e = expand(v);
    AssocPoly expected(4);
    for (int k = 1; k <= m + 1; ++k) {
      Word w;
      for (int t = 0; t < k; ++t) w.push_back(1);
      w.push_back(2);
      for (int t = 0; t < m + 1 - k; ++t) w.push_back(1);
      Rat c = binomial(m + 1, k);
      if (k % 2 == 0) c = -c;
      expected.add_term(std::move(w), c);
    }
    Word tail{2};
    for (int t = 0; t < m + 1; ++t) tail.push_back(1);
    expected.add_term(std::move(tail), Rat(-1));
    CHECK(e == expected);
  }
}

TEST_CASE("expand round-trips through extraction") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + t % 4;           // up to 5
    int d = 1 + t % 7;           // up to 7
    LieElement u = random_homogeneous(rng, n, d, 4);
    if (t % 3 == 0) u += random_homogeneous(rng, n, 1 + (t / 3) % 4, 2);
    CHECK(extract_lie(expand(u)) == u);
  }
}

TEST_CASE("extraction rejects non-Lie input") {
  AssocPoly p = mul(AssocPoly::generator(3, 1), AssocPoly::generator(3, 2));
  CHECK_THROWS_AS(extract_lie(p), Error);
  CHECK_THROWS_AS(extract_lie(AssocPoly::unit(3)), Error);
}

TEST_CASE("expand is a Lie homomorphism") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 40; ++t) {
    int n = 3;
    LieElement u = random_homogeneous(rng, n, 1 + t % 3, 3);
    LieElement v = random_homogeneous(rng, n, 1 + (t / 2) % 3, 3);
    CHECK(expand(bracket(u, v)) == comm(expand(u), expand(v)));
  }
}

TEST_CASE("gl_act basics") {
  LieElement u = bracket(x(4, 1), x(4, 2));
  CHECK(gl_act(GLMatrix::identity(4), u) == u);

  std::vector<int> rho{2, 3, 4, 1};
  GLMatrix p = GLMatrix::permutation(rho);
  for (int i = 1; i <= 4; ++i) CHECK(gl_act(p, x(4, i)) == x(4, rho[i - 1]));
}

TEST_CASE("gl_act is an action and commutes with bracket") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 25; ++t) {
    int n = 4;
    GLMatrix g = random_invertible(rng, n);
    GLMatrix h = random_invertible(rng, n);
    LieElement u = random_homogeneous(rng, n, 1 + t % 4, 3);
    CHECK(gl_act(g * h, u) == gl_act(g, gl_act(h, u)));

    LieElement v = random_homogeneous(rng, n, 1 + (t / 2) % 2, 3);
    CHECK(gl_act(g, bracket(u, v)) ==
          bracket(gl_act(g, u), gl_act(g, v)));
  }
}

TEST_CASE("transvection substitution matches a hand computation") {
  // y_3 -> y_3 + a y_1 sends [y3, y4] to [y3, y4] + a [y1, y4]
  GLMatrix g = GLMatrix::transvection(4, 3, 1, Rat(5));
  LieElement u = bracket(x(4, 3), x(4, 4));
  LieElement img = gl_act(g, u);
  LieElement expected = bracket(x(4, 3), x(4, 4));
  LieElement extra = bracket(x(4, 1), x(4, 4));
  extra.scale(Rat(5));
  expected += extra;
  CHECK(img == expected);
}

TEST_CASE("derivations satisfy Leibniz and match first-order substitution") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 30; ++t) {
    int n = 4;
    int i = 1 + t % 4, j = 1 + (t / 4) % 4;
    LieElement u = random_homogeneous(rng, n, 1 + t % 4, 3);
    LieElement v = random_homogeneous(rng, n, 1 + (t / 2) % 3, 3);
    LieElement lhs = derivation_act(i, j, bracket(u, v));
    LieElement rhs = bracket(derivation_act(i, j, u), v) +
                     bracket(u, derivation_act(i, j, v));
    CHECK(lhs == rhs);
  }
  // d/da at a=0 of (I + a E_{ij}) acting on u equals the derivation, checked
  // by exact interpolation: act at a = 0..deg and difference out the rest.
  for (int t = 0; t < 12; ++t) {
    int i = 1 + t % 4, j = 1 + (t / 4) % 4;
    if (i == j) continue;
    LieElement u = random_homogeneous(rng, 4, 3, 3);
    // images at a = 0,1,...,3 of the unipotent family
    std::vector<LieElement> samples;
    for (int a = 0; a <= 3; ++a) {
      GLMatrix g = GLMatrix::identity(4);
      g.at(i - 1, j - 1) = Rat(a);
      samples.push_back(gl_act(g, u));
    }
    // finite-difference extraction of the linear coefficient (degree <= 3)
    // via Lagrange: f'(0) = sum_k w_k f(k), w = (-11/6, 3, -3/2, 1/3)
    LieElement der(4);
    const Rat w[4] = {Rat(-11, 6), Rat(3), Rat(-3, 2), Rat(1, 3)};
    for (int k = 0; k < 4; ++k) {
      LieElement s = samples[k];
      s.scale(w[k]);
      der += s;
    }
    CHECK(der == derivation_act(i, j, u));
  }
}
