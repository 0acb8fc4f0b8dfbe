#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pgsheaf/poly.hpp"

using namespace pgsheaf;

namespace {

Polynomial var(const RingPtr& r, std::size_t i, std::uint32_t e = 1) {
    return Polynomial::variable(r, i, e);
}

Polynomial random_poly(std::mt19937_64& rng, const RingPtr& ring, std::uint32_t maxdeg,
                       std::size_t nterms) {
    Polynomial f = Polynomial::zero(ring);
    for (std::size_t t = 0; t < nterms; ++t) {
        Polynomial term = Polynomial::constant(ring, 1 + static_cast<std::int64_t>(
                                                         rng() % (ring->p - 1)));
        for (std::size_t i = 0; i < ring->nvars(); ++i)
            term = term * var(ring, i, static_cast<std::uint32_t>(rng() % (maxdeg + 1)));
        f = f + term;
    }
    return f;
}

std::vector<FieldElement> random_point(std::mt19937_64& rng, const RingPtr& ring) {
    std::vector<FieldElement> pt;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        pt.emplace_back(static_cast<std::int64_t>(rng() % ring->p), ring->p);
    return pt;
}

} // namespace

TEST_CASE("monomial order") {
    auto r11 = make_ring(3, {"x1", "x2"}, {1, 1});
    Monomial x1sq = Monomial::variable(*r11, 0, 2);
    Monomial x1x2 = mono_mul(*r11, Monomial::variable(*r11, 0), Monomial::variable(*r11, 1));
    CHECK(monomial_compare(*r11, x1sq, x1x2) == std::strong_ordering::greater);
    CHECK(monomial_compare(*r11, x1sq, x1sq) == std::strong_ordering::equal);

    auto r12 = make_ring(3, {"x1", "x2"}, {1, 2});
    CHECK(monomial_compare(*r12, Monomial::variable(*r12, 1), Monomial::variable(*r12, 0)) ==
          std::strong_ordering::greater);
}

TEST_CASE("monomial order is total and multiplicative") {
    auto ring = make_ring(5, {"a", "b", "c"}, {1, 2, 3});
    std::mt19937_64 rng(3);
    auto random_mono = [&] {
        Monomial m = Monomial::one();
        for (std::size_t i = 0; i < 3; ++i)
            m = mono_mul(*ring, m,
                         Monomial::variable(*ring, i, static_cast<std::uint32_t>(rng() % 4)));
        return m;
    };
    for (int t = 0; t < 300; ++t) {
        Monomial a = random_mono(), b = random_mono(), c = random_mono();
        auto ab = monomial_compare(*ring, a, b);
        auto ba = monomial_compare(*ring, b, a);
        CHECK(ab == (ba == std::strong_ordering::less      ? std::strong_ordering::greater
                     : ba == std::strong_ordering::greater ? std::strong_ordering::less
                                                           : std::strong_ordering::equal));
        if (ab == std::strong_ordering::less)
            CHECK(monomial_compare(*ring, mono_mul(*ring, a, c), mono_mul(*ring, b, c)) ==
                  std::strong_ordering::less);
        if (ab != std::strong_ordering::equal) {
            bool refines_degree = (a.wdeg <= b.wdeg) || ab == std::strong_ordering::greater;
            CHECK(refines_degree);
        }
    }
}

TEST_CASE("polynomial arithmetic") {
    auto r2 = make_ring(2, {"x", "y"}, {1, 1});
    Polynomial xy = var(r2, 0) + var(r2, 1);
    CHECK((xy * xy) == var(r2, 0, 2) + var(r2, 1, 2)); // Frobenius at p = 2

    auto r3 = make_ring(3, {"x", "y"}, {1, 1});
    Polynomial d = var(r3, 0) - var(r3, 1);
    CHECK((d * d * d) == var(r3, 0, 3) - var(r3, 1, 3));
}

TEST_CASE("zero and identities") {
    auto r = make_ring(5, {"x", "y"}, {1, 1});
    Polynomial f = var(r, 0, 2) + var(r, 1).scaled(3);
    CHECK((f + Polynomial::zero(r)) == f);
    CHECK((f - f).is_zero());
    CHECK_THROWS_AS(Polynomial::zero(r).weighted_degree(), ZeroPolynomial);

    auto other = make_ring(3, {"x", "y"}, {1, 1});
    CHECK_THROWS_AS(f + Polynomial::variable(other, 0), RingMismatch);
    CHECK_THROWS_AS(f * Polynomial::variable(other, 0), RingMismatch);
}

TEST_CASE("weighted degree") {
    auto r = make_ring(2, {"x1", "x2", "x3"}, {1, 2, 4});
    CHECK(var(r, 2).weighted_degree() == 4);
    CHECK(Polynomial::constant(r, 1).weighted_degree() == 0);
    auto r11 = make_ring(3, {"x1", "x2"}, {1, 1});
    Polynomial mixed = var(r11, 0) + var(r11, 1, 2);
    CHECK_FALSE(mixed.is_homogeneous());
    CHECK_THROWS_AS(mixed.weighted_degree(), NonHomogeneous);
}

TEST_CASE("specialization") {
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    Polynomial f = var(r, 0) * var(r, 1) + var(r, 2, 2);
    auto pt = [&](std::int64_t a, std::int64_t b, std::int64_t c) {
        return std::vector<FieldElement>{FieldElement(a, 3), FieldElement(b, 3),
                                         FieldElement(c, 3)};
    };
    CHECK(f.specialize(pt(1, 0, 0)).value == 0);
    CHECK(f.specialize(pt(1, 1, 0)).value == 1);
    auto r2 = make_ring(3, {"x1", "x2"}, {1, 1});
    Polynomial g = var(r2, 0, 4) * var(r2, 1);
    CHECK(g.specialize({FieldElement(2, 3), FieldElement(2, 3)}).value == 2);
    CHECK_THROWS_AS(f.specialize({FieldElement(1, 3)}), ShapeError);
}

TEST_CASE("specialize is a ring homomorphism") {
    auto ring = make_ring(5, {"x", "y", "z"}, {1, 1, 1});
    std::mt19937_64 rng(17);
    for (int t = 0; t < 60; ++t) {
        Polynomial f = random_poly(rng, ring, 2, 3), g = random_poly(rng, ring, 2, 3);
        auto pt = random_point(rng, ring);
        CHECK((f * g).specialize(pt) == f.specialize(pt) * g.specialize(pt));
        CHECK((f + g).specialize(pt) == f.specialize(pt) + g.specialize(pt));
    }
}

TEST_CASE("generic rank") {
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    auto P = [&](const Polynomial& p) { return p; };
    std::vector<std::vector<Polynomial>> diag{{var(r, 0), Polynomial::zero(r)},
                                              {Polynomial::zero(r), var(r, 1)}};
    CHECK(generic_rank(diag) == 2);
    std::vector<std::vector<Polynomial>> row{{var(r, 0), var(r, 1)}};
    CHECK(generic_rank(row) == 1);
    std::vector<std::vector<Polynomial>> sl2{{P(var(r, 2)), P(var(r, 0))},
                                             {P(var(r, 1)), -var(r, 2)}};
    CHECK(generic_rank(sl2) == 2);
}

TEST_CASE("fiber rank is at most generic rank") {
    auto ring = make_ring(3, {"x", "y"}, {1, 1});
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 2 + rng() % 2;
        std::vector<std::vector<Polynomial>> A(n, std::vector<Polynomial>(n));
        for (auto& row : A)
            for (auto& e : row) e = random_poly(rng, ring, 1, 2);
        std::size_t gr = generic_rank(A);
        auto pt = random_point(rng, ring);
        Matrix spec(n, n, 3);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) spec.set(i, j, A[i][j].specialize(pt));
        CHECK(mat_rank(spec) <= gr);
    }
}

TEST_CASE("canonical printing and parsing") {
    auto r = make_ring(3, {"x3", "y3", "h7", "h8"}, {1, 1, 1, 1});
    Polynomial f = var(r, 0) * var(r, 1) + var(r, 2) * var(r, 3);
    CHECK(f.to_string() == "x3*y3 + h7*h8");
    CHECK(parse_polynomial(r, "x3*y3 + h7*h8") == f);
    CHECK(parse_polynomial(r, "x3*y3 - 2*h7*h8") == var(r, 0) * var(r, 1) + var(r, 2) * var(r, 3));
    CHECK(parse_polynomial(r, "h8^2").to_string() == "h8^2");
    CHECK_THROWS_AS(parse_polynomial(r, "nope*2"), InputError);
}

TEST_CASE("exact division") {
    auto r = make_ring(5, {"x", "y"}, {1, 1});
    Polynomial f = (var(r, 0) + var(r, 1)) * (var(r, 0, 2) + var(r, 1).scaled(4));
    CHECK(divide_exact(f, var(r, 0) + var(r, 1)) == var(r, 0, 2) + var(r, 1).scaled(4));
    CHECK_THROWS(divide_exact(var(r, 0), var(r, 1)));
}
