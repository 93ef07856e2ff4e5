#include <doctest.h>

#include <random>

#include "ssg/heisenberg.hpp"

using namespace ssg;

namespace {

// Independent oracle: the 3x3 unitriangular integer matrix model. The group
// law is matrix multiplication, so none of the library's collection formulas
// are involved.
struct Mat3 {
  Int m01{0}, m02{0}, m12{0};  // strictly upper entries

  static Mat3 of(const HeisElem& g) {
    // x^a y^b z^c = [[1, a, ab + c], [0, 1, b], [0, 0, 1]]
    return Mat3{g.a, g.a * g.b + g.c, g.b};
  }

  Mat3 mul(const Mat3& o) const {
    return Mat3{m01 + o.m01, m02 + o.m02 + m01 * o.m12, m12 + o.m12};
  }

  HeisElem to_elem() const { return HeisElem(m01, m12, m02 - m01 * m12); }
};

HeisElem oracle_mul(const HeisElem& a, const HeisElem& b) {
  return Mat3::of(a).mul(Mat3::of(b)).to_elem();
}

std::mt19937_64 rng(0x5357C0DEULL);

HeisElem random_elem(long bound = 20) {
  std::uniform_int_distribution<long> d(-bound, bound);
  return HeisElem(d(rng), d(rng), d(rng));
}

}  // namespace

TEST_CASE("matrix oracle pins the commutator convention") {
  // z = x^-1 y^-1 x y must be (0, 0, 1) in the matrix model as well.
  Mat3 x = Mat3::of(HeisElem(1, 0, 0)), y = Mat3::of(HeisElem(0, 1, 0));
  Mat3 xi = Mat3::of(heis_inverse(HeisElem(1, 0, 0)));
  Mat3 yi = Mat3::of(heis_inverse(HeisElem(0, 1, 0)));
  CHECK(xi.mul(yi).mul(x).mul(y).to_elem() == HeisElem(0, 0, 1));
}

TEST_CASE("heis_mul on the pinned examples") {
  CHECK(heis_mul(HeisElem(1, 0, 0), HeisElem(0, 1, 0)) == HeisElem(1, 1, 0));
  // y * x collects to x y z^-1.
  CHECK(heis_mul(HeisElem(0, 1, 0), HeisElem(1, 0, 0)) == HeisElem(1, 1, -1));
  CHECK(heis_mul(HeisElem(0, 1, 0), HeisElem(1, 0, 0)) ==
        oracle_mul(HeisElem(0, 1, 0), HeisElem(1, 0, 0)));
  // x^-1 y^-1 x y = z.
  HeisElem c = heis_mul(heis_mul(heis_inverse(HeisElem(1, 0, 0)), heis_inverse(HeisElem(0, 1, 0))),
                        heis_mul(HeisElem(1, 0, 0), HeisElem(0, 1, 0)));
  CHECK(c == HeisElem(0, 0, 1));
}

TEST_CASE("heis_mul agrees with the matrix oracle and is associative") {
  for (long a1 = -3; a1 <= 3; ++a1)
    for (long b1 = -3; b1 <= 3; ++b1)
      for (long c1 = -3; c1 <= 3; ++c1) {
        HeisElem g(a1, b1, c1);
        HeisElem h(b1 - 1, c1 + 2, a1);
        CHECK(heis_mul(g, h) == oracle_mul(g, h));
      }
  for (int i = 0; i < 10000; ++i) {
    HeisElem g = random_elem(), h = random_elem(), k = random_elem();
    CHECK(heis_mul(heis_mul(g, h), k) == heis_mul(g, heis_mul(h, k)));
    CHECK(heis_mul(g, h) == oracle_mul(g, h));
  }
}

TEST_CASE("inverses cancel") {
  for (int i = 0; i < 200; ++i) {
    HeisElem g = random_elem();
    CHECK(heis_mul(g, heis_inverse(g)).is_identity());
    CHECK(heis_mul(heis_inverse(g), g).is_identity());
  }
}

TEST_CASE("heis_pow equals repeated multiplication") {
  CHECK(heis_pow(HeisElem(1, 1, 0), 2) == HeisElem(2, 2, -1));
  CHECK(heis_pow(random_elem(), 0).is_identity());
  for (int trial = 0; trial < 20; ++trial) {
    HeisElem g = random_elem(5);
    HeisElem acc;
    for (int n = 0; n <= 50; ++n) {
      CHECK(heis_pow(g, n) == acc);
      acc = heis_mul(acc, g);
    }
    CHECK(heis_pow(g, -7) == heis_inverse(heis_pow(g, 7)));
  }
}

TEST_CASE("power identity from the displayed p-th power law") {
  // (x^g11 y^g12 z^c)^p has z-part pc - g11 g12 p(p-1)/2.
  for (Int p : {Int(5), Int(13)})
    for (int i = 0; i < 50; ++i) {
      HeisElem g = random_elem(7);
      HeisElem gp = heis_pow(g, p);
      CHECK(gp.c == p * g.c - g.a * g.b * p * (p - 1) / 2);
    }
}

TEST_CASE("endo_apply basics") {
  HeisEndo id;
  for (int i = 0; i < 50; ++i) {
    HeisElem g = random_elem();
    CHECK(endo_apply(id, g) == g);
  }

  HeisEndo phi(2, 0, 0, 3);  // x -> x^2, y -> y^3
  // phi(z) computed by expanding phi(x^-1 y^-1 x y) must be z^{det A}.
  HeisElem fx = endo_apply(phi, HeisElem(1, 0, 0)), fy = endo_apply(phi, HeisElem(0, 1, 0));
  HeisElem fz = heis_mul(heis_mul(heis_inverse(fx), heis_inverse(fy)), heis_mul(fx, fy));
  CHECK(fz == HeisElem(0, 0, 6));
  CHECK(endo_apply(phi, HeisElem(0, 0, 1)) == fz);
  CHECK(endo_apply(phi, heis_pow(HeisElem(1, 0, 0), 5)) == HeisElem(10, 0, 0));
}

TEST_CASE("endo_apply is a homomorphism") {
  std::uniform_int_distribution<long> d(-4, 4);
  for (int i = 0; i < 200; ++i) {
    HeisEndo phi(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
    HeisElem g = random_elem(), h = random_elem();
    CHECK(endo_apply(phi, heis_mul(g, h)) == heis_mul(endo_apply(phi, g), endo_apply(phi, h)));
    if (phi.det() != 0) {
      HeisElem comm = heis_mul(heis_mul(heis_inverse(g), heis_inverse(h)), heis_mul(g, h));
      HeisElem im_comm = endo_apply(phi, comm);
      HeisElem fg = endo_apply(phi, g), fh = endo_apply(phi, h);
      CHECK(im_comm == heis_mul(heis_mul(heis_inverse(fg), heis_inverse(fh)), heis_mul(fg, fh)));
      CHECK(endo_apply(phi, HeisElem(0, 0, 1)) == HeisElem(0, 0, phi.det()));
    }
  }
}

TEST_CASE("endo_compose") {
  HeisEndo phi(2, 0, 0, 3);
  CHECK(endo_compose(HeisEndo(), phi) == phi);
  CHECK(endo_compose(phi, HeisEndo()) == phi);
  HeisEndo sq = endo_compose(phi, phi);
  CHECK(sq.a1 == 4);
  CHECK(sq.b2 == 9);

  std::uniform_int_distribution<long> d(-3, 3);
  for (int i = 0; i < 100; ++i) {
    HeisEndo f(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
    HeisEndo g(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
    HeisElem x = random_elem();
    CHECK(endo_apply(endo_compose(f, g), x) == endo_apply(f, endo_apply(g, x)));
  }
}

TEST_CASE("rational completion arithmetic") {
  HeisEndo phi(2, 0, 0, 3);
  HeisRat x(Rat(1), Rat(0), Rat(0));
  HeisRat half = endo_apply_inverse(phi, x);
  CHECK(half.a == Rat(1, 2));
  CHECK(endo_apply(phi, half) == x);
  for (int i = 0; i < 100; ++i) {
    HeisRat g(make_rat(random_elem().a, 6), make_rat(random_elem().b, 36),
              make_rat(random_elem().c, 6));
    CHECK(endo_apply(phi, endo_apply_inverse(phi, g)) == g);
    CHECK(heis_mul(g, heis_inverse(g)).is_identity());
  }
  // Rational powers extend the integer law.
  HeisRat g(Rat(3), Rat(5), Rat(-2));
  CHECK(heis_pow(g, Rat(4)) == HeisRat(heis_pow(HeisElem(3, 5, -2), Int(4))));
  HeisRat root = heis_pow(g, Rat(1, 2));
  CHECK(heis_mul(root, root) == g);
}
