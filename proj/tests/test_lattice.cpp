#include <doctest.h>

#include <algorithm>
#include <random>

#include "ssg/lattice.hpp"

using namespace ssg;

namespace {
std::mt19937_64 rng(0x1A77ECEULL);

HeisElem random_elem(long bound = 6) {
  std::uniform_int_distribution<long> d(-bound, bound);
  return HeisElem(d(rng), d(rng), d(rng));
}
}  // namespace

TEST_CASE("canonical form of <x^p, y^p>") {
  Int p = 5;
  HeisLattice lat = lattice_canonicalize({HeisElem(p, 0, 0), HeisElem(0, p, 0)});
  CHECK(lat.e1 == 5);
  CHECK(lat.f12 == 0);
  CHECK(lat.f13 == 0);
  CHECK(lat.e2 == 5);
  CHECK(lat.f23 == 0);
  CHECK(lat.e3 == 25);  // closure adjoins z^{p^2} = [x^p, y^p]
  CHECK(lat.index() == 625);
}

TEST_CASE("full group and a twisted example") {
  HeisLattice full = lattice_canonicalize({HeisElem(1, 0, 0), HeisElem(0, 1, 0)});
  CHECK(full.index() == 1);

  // {x^2 y, y^2, z}: projection Hermite basis (2,1), (0,2); z makes e3 = 1.
  HeisLattice lat = lattice_canonicalize({HeisElem(2, 1, 0), HeisElem(0, 2, 0), HeisElem(0, 0, 1)});
  CHECK(lat.index() == 4);
  CHECK(lat.e1 == 2);
  CHECK(lat.e2 == 2);
  CHECK(lat.e3 == 1);
}

TEST_CASE("canonicalize is order-independent and idempotent") {
  std::vector<HeisElem> gens = {HeisElem(2, 1, 3), HeisElem(0, 3, -1), HeisElem(4, 0, 7),
                                HeisElem(0, 0, 5)};
  HeisLattice base = lattice_canonicalize(gens);
  std::sort(gens.begin(), gens.end(), [](const HeisElem& a, const HeisElem& b) {
    return a.str() < b.str();
  });
  do {
    CHECK(lattice_canonicalize(gens) == base);
  } while (std::next_permutation(gens.begin(), gens.end(), [](const HeisElem& a, const HeisElem& b) {
    return a.str() < b.str();
  }));
  CHECK(lattice_canonicalize({base.gen1(), base.gen2(), base.gen3()}) == base);
}

TEST_CASE("rank-deficient projections are rejected") {
  CHECK_THROWS_AS(lattice_canonicalize({HeisElem(1, 1, 0)}), Error);
  CHECK_THROWS_AS(lattice_canonicalize({HeisElem(0, 0, 5), HeisElem(0, 2, 0)}), Error);
}

TEST_CASE("membership") {
  HeisLattice n1 = lattice_canonicalize({HeisElem(5, 0, 0), HeisElem(0, 5, 0)});
  CHECK(lattice_contains(n1, HeisElem(5, 10, 25)));
  CHECK(!lattice_contains(n1, HeisElem(1, 0, 0)));
  CHECK(!lattice_contains(n1, HeisElem(5, 10, 5)));
  CHECK(lattice_contains(n1, HeisElem(0, 0, 0)));

  for (int i = 0; i < 50; ++i) {
    std::vector<HeisElem> gens = {random_elem(), random_elem(), random_elem()};
    gens[0].a = gens[0].a * 2 + 1;  // keep projections honest more often
    HeisLattice lat;
    try {
      lat = lattice_canonicalize(gens);
    } catch (const Error&) {
      continue;
    }
    for (const auto& g : gens) CHECK(lattice_contains(lat, g));
    CHECK(lattice_contains(lat, lat.gen1()));
    CHECK(lattice_contains(lat, lat.gen2()));
    CHECK(lattice_contains(lat, lat.gen3()));
    // Arbitrary products of generators stay inside.
    HeisElem prod = heis_mul(heis_mul(gens[0], heis_inverse(gens[1])), heis_pow(gens[2], 3));
    CHECK(lattice_contains(lat, prod));
    auto coords = lattice_coordinates(lat, prod);
    HeisElem back = heis_mul(heis_mul(heis_pow(lat.gen1(), coords[0]), heis_pow(lat.gen2(), coords[1])),
                             heis_pow(lat.gen3(), coords[2]));
    CHECK(back == prod);
  }
}

TEST_CASE("image lattices") {
  HeisEndo phi(2, 0, 0, 3);
  HeisLattice n = lattice_canonicalize({HeisElem(1, 0, 0), HeisElem(0, 1, 0)});
  HeisLattice img = lattice_image(phi, n);
  CHECK(img.e1 == 2);
  CHECK(img.e2 == 3);
  CHECK(img.e3 == 6);  // phi(z) = z^6
}

TEST_CASE("verbal power subgroups") {
  HeisLattice full;
  HeisLattice k2 = lattice_power_subgroup(full, 2);
  CHECK(k2.e1 == 2);
  CHECK(k2.e2 == 2);
  CHECK(k2.e3 == 1);  // (xy)^2 (x^2 y^2)^-1 = z

  HeisLattice k3 = lattice_power_subgroup(full, 3);
  CHECK(k3.e3 == 3);

  for (Int s : {Int(2), Int(3), Int(4), Int(6)}) {
    HeisLattice ks = lattice_power_subgroup(full, s);
    for (int i = 0; i < 40; ++i) CHECK(lattice_contains(ks, heis_pow(random_elem(), s)));
  }

  // Same verbal computation inside a proper lattice.
  HeisLattice sub = lattice_canonicalize({HeisElem(2, 1, 0), HeisElem(0, 3, 1)});
  HeisLattice s2 = lattice_power_subgroup(sub, 2);
  for (int i = 0; i < 40; ++i) {
    HeisElem g = heis_mul(heis_pow(sub.gen1(), random_elem(3).a),
                          heis_mul(heis_pow(sub.gen2(), random_elem(3).b),
                                   heis_pow(sub.gen3(), random_elem(3).c)));
    CHECK(lattice_contains(s2, heis_pow(g, 2)));
  }
}

TEST_CASE("Heisenberg lattice intersection") {
  HeisLattice a = lattice_canonicalize({HeisElem(2, 0, 0), HeisElem(0, 1, 0)});
  HeisLattice b = lattice_canonicalize({HeisElem(3, 0, 1), HeisElem(0, 2, 0)});
  HeisLattice cap = lattice_intersect(a, b);
  for (const auto& g : {cap.gen1(), cap.gen2(), cap.gen3()}) {
    CHECK(lattice_contains(a, g));
    CHECK(lattice_contains(b, g));
  }
  // Everything in both lattices lies in the intersection (sampled).
  for (int i = 0; i < 400; ++i) {
    HeisElem g = random_elem(12);
    if (lattice_contains(a, g) && lattice_contains(b, g)) CHECK(lattice_contains(cap, g));
  }
}

TEST_CASE("ZLattice basics") {
  ZLattice full = ZLattice::full(2);
  CHECK(full.index() == 1);
  ZLattice even = ZLattice::scaled(2, 2);
  CHECK(even.index() == 4);
  CHECK(even.contains(IntVec{2, -4}));
  CHECK(!even.contains(IntVec{1, 0}));

  ZLattice skew = ZLattice::from_generators(2, IntMat{{2, 1}, {0, 3}, {4, 2}});
  CHECK(skew.index() == 6);
  CHECK(skew.contains(IntVec{2, 1}));
  CHECK(skew.contains(IntVec{2, 4}));

  CHECK_THROWS_AS(ZLattice::from_generators(2, IntMat{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("ZLattice intersection against brute force") {
  ZLattice a = ZLattice::from_generators(2, IntMat{{2, 0}, {1, 3}});
  ZLattice b = ZLattice::from_generators(2, IntMat{{1, 1}, {0, 4}});
  ZLattice cap = lattice_intersect(a, b);
  for (long x = -12; x <= 12; ++x)
    for (long y = -12; y <= 12; ++y) {
      IntVec v{x, y};
      CHECK(cap.contains(v) == (a.contains(v) && b.contains(v)));
    }
}

TEST_CASE("ZLattice transform") {
  ZLattice even = ZLattice::scaled(2, 2);
  IntMat rot{{Int(0), Int(-1)}, {Int(1), Int(0)}};
  CHECK(even.transformed(rot) == even);
}
