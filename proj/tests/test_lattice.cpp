#include <doctest.h>

#include <random>

#include "enrlat/lattice.hpp"

using namespace enrlat;

namespace {

DivClass unit(Index n, Index i) {
    DivClass v = VecQ::Zero(n);
    v[i] = Rat(1);
    return v;
}

}  // namespace

TEST_CASE("pairing in the hyperbolic plane") {
    GramLattice u = hyperbolic_plane();
    DivClass e = unit(2, 0), f = unit(2, 1);
    CHECK(pair(u, e, f) == Rat(1));
    CHECK(pair(u, e, e) == Rat(0));
    CHECK(pair(u, VecQ::Zero(2), e + f) == Rat(0));
    CHECK_THROWS_AS(pair(u, VecQ::Zero(3), e), std::invalid_argument);
}

TEST_CASE("pairing is bilinear and symmetric") {
    GramLattice l = hyperbolic_e10();
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    auto random_class = [&]() {
        DivClass v(10);
        for (Index i = 0; i < 10; ++i) v[i] = Rat(num(rng), den(rng));
        return v;
    };
    for (int trial = 0; trial < 50; ++trial) {
        DivClass x = random_class(), y = random_class(), z = random_class();
        Rat a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK(pair(l, a * x + b * y, z) == a * pair(l, x, z) + b * pair(l, y, z));
        CHECK(pair(l, x, y) == pair(l, y, x));
    }
}

TEST_CASE("profile of the standard models") {
    LatticeProfile p = lattice_profile(hyperbolic_e10());
    CHECK(p.rank == 10);
    CHECK(p.determinant == Rat(-1));
    CHECK(p.signature == Signature{1, 0, 9});
    CHECK(p.is_even);

    GramLattice single;
    single.basis_names = {"R"};
    single.gram = MatQ::Constant(1, 1, Rat(-2));
    LatticeProfile q = lattice_profile(single);
    CHECK(q.rank == 1);
    CHECK(q.determinant == Rat(-2));
    CHECK(q.signature == Signature{0, 0, 1});
    CHECK(q.is_even);

    LatticeProfile e8 = lattice_profile(e8_negative());
    CHECK(e8.determinant == Rat(1));
    CHECK(e8.signature == Signature{0, 0, 8});
}

TEST_CASE("divide_in_lattice") {
    GramLattice u = hyperbolic_plane();
    DivClass e = unit(2, 0);
    auto third = divide_in_lattice(u, Rat(3) * e, 3);
    REQUIRE(third.has_value());
    CHECK(*third == e);
    CHECK(!divide_in_lattice(u, e, 2).has_value());
    CHECK_THROWS_AS(divide_in_lattice(u, e, 0), std::invalid_argument);

    std::mt19937 rng(29);
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> nn(1, 7);
    for (int trial = 0; trial < 50; ++trial) {
        DivClass x(2);
        x << Rat(num(rng)), Rat(num(rng));
        Int n = nn(rng);
        auto q = divide_in_lattice(u, Rat(n) * x, n);
        REQUIRE(q.has_value());
        CHECK(*q == x);
    }
}

TEST_CASE("primitivity") {
    GramLattice u = hyperbolic_plane();
    DivClass e = unit(2, 0), f = unit(2, 1);
    CHECK(is_primitive(u, e + f));
    CHECK(!is_primitive(u, Rat(2) * e));
    CHECK_THROWS_AS(is_primitive(u, VecQ::Zero(2)), std::invalid_argument);
}

TEST_CASE("gram lattice validation") {
    GramLattice bad;
    bad.basis_names = {"a", "b"};
    bad.gram = MatQ::Zero(2, 2);
    bad.gram(0, 1) = Rat(1);  // asymmetric
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.gram(1, 0) = Rat(1);
    CHECK_NOTHROW(bad.validate());
    bad.gram(0, 0) = Rat(1, 2);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
