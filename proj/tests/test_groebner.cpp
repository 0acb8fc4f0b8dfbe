#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "pgsheaf/groebner.hpp"
#include "pgsheaf/sheaf.hpp"

using namespace pgsheaf;

namespace {

Polynomial var(const RingPtr& r, std::size_t i, std::uint32_t e = 1) {
    return Polynomial::variable(r, i, e);
}

RingPresentation free_pres(const RingPtr& ring) { return make_presentation(ring, {}); }

std::vector<Polynomial> ideal_elems(const GroebnerBasis& gb) {
    std::vector<Polynomial> out;
    for (const auto& e : gb.elements()) out.push_back(e[0]);
    return out;
}

// All monomials of weighted degree d, independent of the library counters.
void enumerate_monomials(const RingPtr& ring, std::int64_t d, std::size_t v, Monomial cur,
                         std::vector<Monomial>& out) {
    if (d == 0) {
        out.push_back(cur);
        return;
    }
    if (d < 0 || v == ring->nvars()) return;
    std::int64_t w = ring->weights[v];
    for (std::int64_t e = 0; e * w <= d; ++e) {
        Monomial next = cur;
        next.e[v] = static_cast<std::uint8_t>(e);
        next.wdeg = cur.wdeg + static_cast<std::uint32_t>(e * w);
        next.rawdeg = cur.rawdeg + static_cast<std::uint32_t>(e);
        enumerate_monomials(ring, d - e * w, v + 1, next, out);
    }
}

std::vector<Monomial> monomials_of_degree(const RingPtr& ring, std::int64_t d) {
    std::vector<Monomial> out;
    enumerate_monomials(ring, d, 0, Monomial::one(), out);
    return out;
}

// Membership of a homogeneous f in a homogeneous ideal, decided degreewise by
// linear algebra on the Macaulay matrix.  Completely independent of the
// Groebner path.
bool macaulay_member(const RingPtr& ring, const std::vector<Polynomial>& gens,
                     const Polynomial& f) {
    if (f.is_zero()) return true;
    std::int64_t d = f.weighted_degree();
    std::vector<Monomial> basis = monomials_of_degree(ring, d);
    auto index_of = [&](const Monomial& m) {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == m) return i;
        throw std::logic_error("monomial missing from basis");
    };
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        std::int64_t gd = g.weighted_degree();
        if (gd > d) continue;
        for (const auto& m : monomials_of_degree(ring, d - gd)) {
            Polynomial mult = g.term_multiple(m, 1);
            std::vector<FieldElement> row(basis.size(), FieldElement(0, ring->p));
            for (const auto& t : mult.terms()) row[index_of(t.m)] = FieldElement(t.c, ring->p);
            rows.push_back(std::move(row));
        }
    }
    Matrix A(rows.size(), basis.size(), ring->p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) A.set(i, j, rows[i][j]);
    std::size_t base_rank = mat_rank(A);
    Matrix B(rows.size() + 1, basis.size(), ring->p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) B.set(i, j, rows[i][j]);
    for (const auto& t : f.terms()) B.set(rows.size(), index_of(t.m), FieldElement(t.c, ring->p));
    return mat_rank(B) == base_rank;
}

Polynomial random_homogeneous(std::mt19937_64& rng, const RingPtr& ring, std::int64_t d) {
    auto monos = monomials_of_degree(ring, d);
    std::vector<Term> terms;
    for (const auto& m : monos)
        if (rng() % 3 == 0)
            terms.push_back(Term{m, static_cast<std::uint32_t>(1 + rng() % (ring->p - 1))});
    if (terms.empty() && !monos.empty())
        terms.push_back(Term{monos[rng() % monos.size()], 1});
    return Polynomial::from_terms(ring, terms);
}

} // namespace

TEST_CASE("reduced basis examples") {
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    auto pres = free_pres(r);

    auto gb1 = ideal_groebner_basis(pres, {var(r, 0) * var(r, 1) + var(r, 2, 2)});
    CHECK(gb1.elements().size() == 1);
    CHECK(ideal_elems(gb1)[0] == var(r, 0) * var(r, 1) + var(r, 2, 2));

    auto gb2 = ideal_groebner_basis(pres, {var(r, 0, 2), var(r, 0) * var(r, 1)});
    CHECK(gb2.elements().size() == 2);
}

TEST_CASE("weighted twisted cubic basis agrees with the Macaulay oracle") {
    auto r = make_ring(5, {"x", "y", "z"}, {1, 2, 3});
    auto pres = free_pres(r);
    std::vector<Polynomial> gens{var(r, 1) - var(r, 0, 2), var(r, 2) - var(r, 0, 3)};
    auto gb = ideal_groebner_basis(pres, gens);
    std::mt19937_64 rng(5);
    for (std::int64_t d = 1; d <= 8; ++d) {
        for (int t = 0; t < 8; ++t) {
            Polynomial f = random_homogeneous(rng, r, d);
            CHECK(normal_form(gb, f).is_zero() == macaulay_member(r, gens, f));
        }
    }
}

TEST_CASE("oracle equivalence on random homogeneous ideals") {
    std::mt19937_64 rng(29);
    const std::uint32_t ps[] = {2, 3, 5};
    for (int trial = 0; trial < 12; ++trial) {
        std::uint32_t p = ps[trial % 3];
        std::size_t nv = 2 + trial % 3; // up to 4 variables
        std::vector<std::string> names;
        for (std::size_t i = 0; i < nv; ++i) names.push_back("v" + std::to_string(i + 1));
        auto r = make_ring(p, names, std::vector<std::uint32_t>(nv, 1));
        auto pres = free_pres(r);
        std::vector<Polynomial> gens;
        std::size_t ngens = 2 + rng() % 2;
        for (std::size_t g = 0; g < ngens; ++g)
            gens.push_back(random_homogeneous(rng, r, 1 + rng() % 3));
        auto gb = ideal_groebner_basis(pres, gens);
        for (std::int64_t d = 1; d <= 6; ++d)
            for (int t = 0; t < 4; ++t) {
                Polynomial f = random_homogeneous(rng, r, d);
                CHECK(normal_form(gb, f).is_zero() == macaulay_member(r, gens, f));
            }
    }
}

TEST_CASE("reduced basis is independent of generator order") {
    std::mt19937_64 rng(31);
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    auto pres = free_pres(r);
    std::vector<Polynomial> gens{
        var(r, 0) * var(r, 1) + var(r, 2, 2), var(r, 0, 3), var(r, 1, 2) - var(r, 0) * var(r, 2),
        random_homogeneous(rng, r, 2)};
    auto gb0 = ideal_groebner_basis(pres, gens);
    for (int t = 0; t < 6; ++t) {
        std::shuffle(gens.begin(), gens.end(), rng);
        CHECK(ideal_groebner_basis(pres, gens) == gb0);
    }
}

TEST_CASE("normal form") {
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    auto pres = free_pres(r);
    auto gb_x2 = ideal_groebner_basis(pres, {var(r, 0, 2)});
    CHECK(normal_form(gb_x2, var(r, 0, 2) * var(r, 1)).is_zero());
    auto gb_x = ideal_groebner_basis(pres, {var(r, 0)});
    CHECK(normal_form(gb_x, var(r, 0) * var(r, 1) + var(r, 2)) == var(r, 2));
}

TEST_CASE("normal form of f*g + h returns h when h is reduced") {
    std::mt19937_64 rng(37);
    auto r = make_ring(3, {"x", "y"}, {1, 1});
    auto pres = free_pres(r);
    int done = 0;
    while (done < 100) {
        Polynomial g = random_homogeneous(rng, r, 1 + rng() % 2);
        auto gb = ideal_groebner_basis(pres, {g});
        Polynomial f = random_homogeneous(rng, r, 1 + rng() % 2);
        Polynomial h = random_homogeneous(rng, r, f.weighted_degree() + g.weighted_degree());
        h = normal_form(gb, h); // make h reduced
        if (h.is_zero()) continue;
        CHECK(normal_form(gb, f * g + h) == h);
        ++done;
    }
}

TEST_CASE("syzygy kernels") {
    auto r = make_ring(3, {"x", "y"}, {1, 1});
    auto pres = free_pres(r);

    // [x y]: Koszul syzygy (y, -x).
    GradedMatrix row = make_graded_matrix(pres, {0}, {1, 1}, {var(r, 0), var(r, 1)});
    Submodule k = syzygy_kernel(row);
    REQUIRE(k.gens.size() == 1);
    GroebnerBasis kgb = groebner_basis(pres, k);
    ModElement koszul{var(r, 1), -var(r, 0)};
    CHECK(is_member(kgb, koszul));

    // [x]: zero kernel over a domain.
    GradedMatrix single = make_graded_matrix(pres, {0}, {1}, {var(r, 0)});
    CHECK(syzygy_kernel(single).gens.empty());
}

TEST_CASE("syzygy completeness degreewise") {
    // Kernel slice dimensions agree with direct linear algebra up to degree 6.
    std::mt19937_64 rng(47);
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    auto pres = free_pres(r);
    for (int trial = 0; trial < 4; ++trial) {
        std::size_t m = 2, c = 2 + trial % 2;
        std::vector<Polynomial> entries;
        for (std::size_t i = 0; i < m * c; ++i) entries.push_back(random_homogeneous(rng, r, 1));
        GradedMatrix A = make_graded_matrix(pres, std::vector<std::int64_t>(m, 0),
                                            std::vector<std::int64_t>(c, 1), entries);
        Submodule ker = syzygy_kernel(A);
        GroebnerBasis kgb = groebner_basis(pres, ker);
        for (std::int64_t d = 1; d <= 6; ++d) {
            // Source slice: monomials x^a e_j with wdeg + 1 = d.
            std::vector<std::pair<std::size_t, Monomial>> src;
            for (std::size_t j = 0; j < c; ++j)
                for (const auto& mm : monomials_of_degree(r, d - 1))
                    src.emplace_back(j, mm);
            // Target coordinates: monomials of degree d per component.
            auto tgt = monomials_of_degree(r, d);
            auto tindex = [&](std::size_t comp, const Monomial& mm) {
                for (std::size_t i = 0; i < tgt.size(); ++i)
                    if (tgt[i] == mm) return comp * tgt.size() + i;
                throw std::logic_error("missing target monomial");
            };
            Matrix L(m * tgt.size(), src.size(), r->p);
            for (std::size_t s = 0; s < src.size(); ++s)
                for (std::size_t i = 0; i < m; ++i) {
                    Polynomial img = A.at(i, src[s].first).term_multiple(src[s].second, 1);
                    for (const auto& t : img.terms())
                        L.set(tindex(i, t.m), s, FieldElement(t.c, r->p));
                }
            std::int64_t expected = static_cast<std::int64_t>(src.size() - mat_rank(L));
            CHECK(submodule_slice_dim(kgb, d) == expected);
        }
    }
}

TEST_CASE("syzygy kernel modulo a defining ideal") {
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    Polynomial q = var(r, 0) * var(r, 1) + var(r, 2, 2);
    auto pres = make_presentation(r, {q});
    GradedMatrix theta = make_graded_matrix(
        pres, {0, 0}, {1, 1}, {var(r, 2), var(r, 0), var(r, 1), -var(r, 2)});
    Submodule ker = syzygy_kernel(theta);
    auto qgb = ideal_groebner_basis(pres, {});
    for (const auto& v : ker.gens) {
        // theta * v reduces to zero modulo (q).
        for (std::size_t i = 0; i < 2; ++i) {
            Polynomial acc = Polynomial::zero(r);
            for (std::size_t j = 0; j < 2; ++j) acc = acc + theta.at(i, j) * v[j];
            CHECK(normal_form(qgb, acc).is_zero());
        }
    }
    // The kernel is spanned by the columns of theta itself.
    GroebnerBasis kgb = groebner_basis(pres, ker);
    CHECK(is_member(kgb, ModElement{var(r, 0), -var(r, 2)}));
    CHECK(is_member(kgb, ModElement{var(r, 2), var(r, 1)}));
    GroebnerBasis colgb = groebner_basis(
        pres, Submodule{ker.ambient,
                        {ModElement{var(r, 0), -var(r, 2)}, ModElement{var(r, 2), var(r, 1)}}});
    for (const auto& g : ker.gens) CHECK(is_member(colgb, g));
}

TEST_CASE("intersections") {
    auto r = make_ring(3, {"x", "y"}, {1, 1});
    auto pres = free_pres(r);
    Submodule ix = ideal_submodule(r, {var(r, 0)});
    Submodule iy = ideal_submodule(r, {var(r, 1)});
    Submodule meet = intersect(pres, ix, iy);
    GroebnerBasis gb = groebner_basis(pres, meet);
    CHECK(gb.elements().size() == 1);
    CHECK(gb.elements()[0][0] == var(r, 0) * var(r, 1));

    CHECK(groebner_basis(pres, intersect(pres, ix, ix)) == groebner_basis(pres, ix));

    // Column spans in a rank-2 free module.
    Submodule n1{FreeModule{{0, 0}},
                 {ModElement{var(r, 0), Polynomial::zero(r)},
                  ModElement{Polynomial::zero(r), var(r, 1)}}};
    Submodule n2{FreeModule{{0, 0}},
                 {ModElement{var(r, 1), Polynomial::zero(r)},
                  ModElement{Polynomial::zero(r), var(r, 0)}}};
    Submodule m = intersect(pres, n1, n2);
    GroebnerBasis mgb = groebner_basis(pres, m);
    Polynomial xy = var(r, 0) * var(r, 1);
    CHECK(is_member(mgb, ModElement{xy, Polynomial::zero(r)}));
    CHECK(is_member(mgb, ModElement{Polynomial::zero(r), xy}));
    CHECK_FALSE(is_member(mgb, ModElement{var(r, 0), Polynomial::zero(r)}));
    CHECK(mgb.elements().size() == 2);
}

TEST_CASE("quotients") {
    auto r = make_ring(3, {"x", "y"}, {1, 1});
    auto pres = free_pres(r);
    Polynomial x = var(r, 0), y = var(r, 1);

    Submodule ixy = ideal_submodule(r, {x * y});
    Submodule q1 = quotient_by_ideal(pres, ixy, {x});
    CHECK(groebner_basis(pres, q1) == ideal_groebner_basis(pres, {y}));

    Submodule n = ideal_submodule(r, {x * x, x * y});
    CHECK(groebner_basis(pres, quotient_by_ideal(pres, n, {Polynomial::constant(r, 1)})) ==
          groebner_basis(pres, n));
    CHECK(groebner_basis(pres, quotient_by_ideal(pres, n, {y})) ==
          ideal_groebner_basis(pres, {x}));
}

TEST_CASE("saturation") {
    auto r = make_ring(3, {"x", "y"}, {1, 1});
    auto pres = free_pres(r);
    Polynomial x = var(r, 0), y = var(r, 1);

    Submodule n = ideal_submodule(r, {x * x, x * y});
    Submodule sat = saturate(pres, n, {x, y});
    CHECK(groebner_basis(pres, sat) == ideal_groebner_basis(pres, {x}));

    GroebnerBasis satgb = groebner_basis(pres, sat);
    for (const auto& g : n.gens) CHECK(is_member(satgb, g));

    Submodule ix = ideal_submodule(r, {x});
    CHECK(groebner_basis(pres, saturate(pres, ix, {y})) == ideal_groebner_basis(pres, {x}));
}

TEST_CASE("galois connections hold on random ideals") {
    std::mt19937_64 rng(41);
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    auto pres = free_pres(r);
    for (int t = 0; t < 10; ++t) {
        std::vector<Polynomial> gens{random_homogeneous(rng, r, 1 + rng() % 2),
                                     random_homogeneous(rng, r, 2)};
        Submodule n = ideal_submodule(r, gens);
        std::vector<Polynomial> ideal{var(r, 0), var(r, 1)};

        Submodule q = quotient_by_ideal(pres, n, ideal);
        GroebnerBasis qgb = groebner_basis(pres, q);
        for (const auto& g : n.gens) CHECK(is_member(qgb, g)); // N subset (N : I)

        Submodule s1 = saturate(pres, n, ideal);
        Submodule s2 = saturate(pres, s1, ideal);
        CHECK(groebner_basis(pres, s1) == groebner_basis(pres, s2));

        Submodule i2 = ideal_submodule(r, {random_homogeneous(rng, r, 1)});
        Submodule meet = intersect(pres, n, i2);
        GroebnerBasis ngb = groebner_basis(pres, n);
        GroebnerBasis i2gb = groebner_basis(pres, i2);
        for (const auto& g : meet.gens) {
            CHECK(is_member(ngb, g));
            CHECK(is_member(i2gb, g));
        }
    }
}

TEST_CASE("radical membership") {
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    auto pres = free_pres(r);
    Polynomial x = var(r, 0), y = var(r, 1), z = var(r, 2);

    CHECK(radical_membership(pres, x, {x * x}));
    CHECK(radical_membership(pres, z, {x * y + z * z, x}));
    CHECK_FALSE(radical_membership(pres, y, {x}));

    // One-sided sanity: small true powers are detected.
    std::mt19937_64 rng(43);
    for (int t = 0; t < 20; ++t) {
        Polynomial f = random_homogeneous(rng, r, 1 + rng() % 2);
        std::vector<Polynomial> gens{random_homogeneous(rng, r, 2), f * f * f};
        auto gb = ideal_groebner_basis(pres, gens);
        bool small_power_member = false;
        Polynomial pw = Polynomial::constant(r, 1);
        for (int e = 1; e <= 3; ++e) {
            pw = pw * f;
            if (normal_form(gb, pw).is_zero()) {
                small_power_member = true;
                break;
            }
        }
        if (small_power_member) CHECK(radical_membership(pres, f, gens));
    }
}

TEST_CASE("radical membership respects the defining ideal") {
    auto r = make_ring(3, {"x", "y", "z"}, {1, 1, 1});
    auto pres = make_presentation(r, {var(r, 0) * var(r, 1) + var(r, 2, 2)});
    // z^2 = -xy in the quotient, so z lies in the radical of (x).
    CHECK(radical_membership(pres, var(r, 2), {var(r, 0)}));
}

TEST_CASE("annihilators") {
    auto r = make_ring(3, {"x", "y"}, {1, 1});
    auto pres = free_pres(r);
    Polynomial x = var(r, 0), y = var(r, 1);

    Submodule full = ideal_submodule(r, {Polynomial::constant(r, 1)});
    Submodule nf = ideal_submodule(r, {x * y});
    auto ann1 = annihilator(pres, full, nf);
    CHECK(ann1 == canonical_ideal(pres, {x * y}));

    auto ann2 = annihilator(pres, nf, nf);
    CHECK(ideal_contains_one(pres, ann2));

    Submodule k = ideal_submodule(r, {x, y});
    Submodule n = ideal_submodule(r, {x * x, x * y, y * y});
    auto ann3 = annihilator(pres, k, n);
    CHECK(ann3 == canonical_ideal(pres, {x, y}));

    CHECK_THROWS_AS(annihilator(pres, n, k), NotASubmodule);
}

TEST_CASE("fitting ideals") {
    auto r = make_ring(3, {"x", "y"}, {1, 1});
    auto pres = free_pres(r);
    Polynomial x = var(r, 0), y = var(r, 1);

    GradedMatrix pf = make_graded_matrix(pres, {0}, {2}, {x * y});
    CHECK(fitting_ideal(pf, 0) == canonical_ideal(pres, {x * y}));
    CHECK(ideal_contains_one(pres, fitting_ideal(pf, 1)));

    GradedMatrix free1 = make_graded_matrix(pres, {0}, {}, {});
    CHECK(fitting_ideal(free1, 0).empty());
    CHECK(ideal_contains_one(pres, fitting_ideal(free1, 1)));

    GradedMatrix diag = make_graded_matrix(pres, {0, 0}, {1, 1},
                                           {x, Polynomial::zero(r), Polynomial::zero(r), y});
    CHECK(fitting_ideal(diag, 0) == canonical_ideal(pres, {x * y}));
    CHECK(fitting_ideal(diag, 1) == canonical_ideal(pres, {x, y}));
    CHECK(ideal_contains_one(pres, fitting_ideal(diag, 2)));
}

TEST_CASE("graded matrix validation") {
    auto r = make_ring(3, {"x", "y"}, {1, 1});
    auto pres = free_pres(r);
    CHECK_THROWS_AS(
        make_graded_matrix(pres, {0}, {2}, {var(r, 0)}), GradingError);
    CHECK_THROWS_AS(make_graded_matrix(pres, {0}, {1, 1}, {var(r, 0)}), ShapeError);
}

TEST_CASE("nonhomogeneous input is rejected") {
    auto r = make_ring(3, {"x", "y"}, {1, 1});
    auto pres = free_pres(r);
    Polynomial mixed = var(r, 0) + var(r, 1, 2);
    CHECK_THROWS_AS(ideal_groebner_basis(pres, {mixed}), NonHomogeneous);
}
