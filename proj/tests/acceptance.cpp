// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are exact (boolean / integer identities throughout).

#include <chrono>
#include <iostream>
#include <random>

#include "pgsheaf/io.hpp"
#include "pgsheaf/reps.hpp"

using namespace pgsheaf;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok, double seconds) {
    std::printf("%s criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                seconds);
    if (!ok) ++failures;
}

template <typename F>
void criterion(int number, const std::string& what, F&& body) {
    auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("      criterion %d raised: %s\n", number, e.what());
        ok = false;
    }
    report(number, what, ok, std::chrono::duration<double>(Clock::now() - t0).count());
}

Matrix jordan_block(std::size_t n, std::uint32_t p) {
    Matrix j(n, n, p);
    for (std::size_t i = 0; i + 1 < n; ++i) j.set(i, i + 1, 1);
    return j;
}

Matrix random_invertible(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
    while (true) {
        Matrix m(n, n, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.set(i, j, static_cast<std::int64_t>(rng() % p));
        if (mat_rank(m) == n) return m;
    }
}

Matrix inverse_of(const Matrix& m) {
    const std::size_t n = m.rows();
    Matrix inv(n, n, m.modulus());
    std::vector<FieldElement> col;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<FieldElement> e(n, FieldElement(0, m.modulus()));
        e[j] = FieldElement(1, m.modulus());
        mat_solve(m, e, col);
        for (std::size_t i = 0; i < n; ++i) inv.set(i, j, col[i]);
    }
    return inv;
}

bool h_and_f_consistent(const Representation& m) {
    const std::uint32_t p = m.group->p;
    GradedMatrix theta = assemble_theta(m);
    bool z1 = is_sheaf_zero(h_sheaf(theta, 1, p));
    bool zp = is_sheaf_zero(h_sheaf(theta, p - 1, p));
    bool allf = true;
    for (std::uint32_t i = 1; i < p; ++i)
        if (!is_sheaf_zero(f_sheaf(theta, i, p))) allf = false;
    return z1 == zp && z1 == allf;
}

} // namespace

int main() {
    criterion(1, "sl3 session: H(M) = 0 and H(M*) = 0 at module and sheaf level", [] {
        auto sl3 = make_sl3(3);
        Representation m = builtin_module("sl3_standard", sl3);
        SubquotientSheaf h = h_sheaf(assemble_theta(m), 1, 3);
        SubquotientSheaf hd = h_sheaf(assemble_theta(dual(m)), 1, 3);
        return is_module_zero(h) && is_sheaf_zero(h) && is_module_zero(hd) &&
               is_sheaf_zero(hd);
    });

    criterion(2, "sl3 session: supp H(M ox M*) radical-equal to the 8-generator ideal", [] {
        auto sl3 = make_sl3(3);
        const RingPtr& r = sl3->presentation.ring;
        std::vector<Polynomial> o9;
        for (const auto& s :
             {"x3*y3 + h7*h8", "x2*y3 + y1*h8", "x1*y3 - y2*h7", "y1*y2 + y3*h7 - y3*h8",
              "x3*y2 + x1*h8", "x2*y2 - h7*h8 + h8^2", "x3*y1 - x2*h7",
              "x1*x2 + x3*h7 - x3*h8"})
            o9.push_back(parse_polynomial(r, s));
        Representation m = builtin_module("sl3_standard", sl3);
        SubquotientSheaf h = h_sheaf(assemble_theta(tensor(m, dual(m))), 1, 3);
        if (is_sheaf_zero(h)) return false;
        auto ann = support_ideal(h);
        for (const auto& g : ann)
            if (!radical_membership(sl3->presentation, g, o9)) return false;
        for (const auto& g : o9)
            if (!radical_membership(sl3->presentation, g, ann)) return false;
        return true;
    });

    criterion(3, "sl3 orbit Jordan types: [2][1] sub-regular, [3] regular, non-constant", [] {
        auto sl3 = make_sl3(3);
        Representation m = builtin_module("sl3_standard", sl3);
        auto e13 = validate_point(*sl3, std::vector<std::int64_t>{0, 0, 1, 0, 0, 0, 0, 0});
        auto reg = validate_point(*sl3, std::vector<std::int64_t>{1, 1, 0, 0, 0, 0, 0, 0});
        if (!(jordan_type_at(m, e13).jordan_type == Partition({2, 1}))) return false;
        if (!(jordan_type_at(m, reg).jordan_type == Partition({3}))) return false;
        auto sample = sample_points(*sl3, 20, 0);
        return !constant_jt_check(m, sample).has_value();
    });

    criterion(4, "Jordan type equals constructed block multiset on 200 random conjugates", [] {
        std::mt19937_64 rng(2024);
        const std::uint32_t primes[] = {2, 3, 5, 7};
        for (int trial = 0; trial < 200; ++trial) {
            std::uint32_t p = primes[trial % 4];
            std::vector<std::uint32_t> parts;
            std::size_t dim = 0;
            while (true) {
                std::uint32_t part = 1 + static_cast<std::uint32_t>(rng() % p);
                if (dim + part > 12) break;
                parts.push_back(part);
                dim += part;
                if (rng() % 4 == 0 && dim >= 1) break;
            }
            if (parts.empty()) parts.push_back(1);
            std::sort(parts.rbegin(), parts.rend());
            Matrix a(0, 0, p);
            for (auto part : parts)
                a = a.rows() ? Matrix::block_diag(a, jordan_block(part, p))
                             : jordan_block(part, p);
            Matrix c = random_invertible(rng, a.rows(), p);
            if (!(nilpotent_jordan_type(c * a * inverse_of(c), p) == Partition(parts)))
                return false;
        }
        return true;
    });

    criterion(5, "sl2 regular support: H(L(lambda)) = 0 iff lambda = p-1 (p in {3,5})", [] {
        for (std::uint32_t p : {3u, 5u}) {
            auto sl2 = make_sl2(p);
            auto sample = sample_points(*sl2, 30, 5);
            for (std::uint32_t lam = 0; lam < p; ++lam) {
                Representation l =
                    builtin_module("sl2_simple(" + std::to_string(lam) + ")", sl2);
                bool hzero = is_sheaf_zero(h_sheaf(assemble_theta(l), 1, p));
                bool pointwise = true;
                for (const auto& v : sample)
                    if (!is_projective_at(l, v)) pointwise = false;
                if (hzero != (lam == p - 1)) return false;
                if (pointwise != hzero) return false;
            }
        }
        return true;
    });

    criterion(6, "F_i of L(lambda) over sl2: rank-1 at i = lambda+1, zero otherwise", [] {
        for (std::uint32_t p : {3u, 5u}) {
            auto sl2 = make_sl2(p);
            for (std::uint32_t lam = 0; lam < p; ++lam) {
                Representation l =
                    builtin_module("sl2_simple(" + std::to_string(lam) + ")", sl2);
                GradedMatrix theta = assemble_theta(l);
                for (std::uint32_t i = 1; i <= p; ++i) {
                    SubquotientSheaf fi = f_sheaf(theta, i, p);
                    if (i == lam + 1) {
                        if (locally_free_rank(fi) != 1) return false;
                    } else if (!is_sheaf_zero(fi)) {
                        return false;
                    }
                }
            }
        }
        return true;
    });

    criterion(7, "H(kG) is sheaf-zero for ea(r), (p,r) in {(2,2),(2,3),(3,2)}", [] {
        for (auto [p, r] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
            auto ea = make_elem_abelian(r, p);
            Representation kg = builtin_module("regular", ea);
            if (!is_sheaf_zero(h_sheaf(assemble_theta(kg), 1, p))) return false;
        }
        return true;
    });

    criterion(8, "characteristic-2 values: H(k) = O and H(Omega k) = O(-1) on ea(n)", [] {
        for (std::uint32_t n : {2u, 3u}) {
            auto ea = make_elem_abelian(n, 2);
            auto binom = [&](std::int64_t d) -> std::int64_t {
                if (d < 0) return 0;
                std::int64_t num = 1, den = 1;
                for (std::uint32_t t = 1; t < n; ++t) {
                    num *= d + t;
                    den *= t;
                }
                return num / den;
            };
            Representation k = builtin_module("trivial", ea);
            Fingerprint fk = fingerprint(h_sheaf(assemble_theta(k), 1, 2), 2);
            for (std::int64_t d = fk.window_lo; d <= fk.window_hi; ++d)
                if (*fk.value_at(d) != binom(d)) return false;
            Fingerprint fo = fingerprint(h_sheaf(assemble_theta(heller(k)), 1, 2), 2);
            for (std::int64_t d = fo.window_lo; d <= fo.window_hi; ++d)
                if (*fo.value_at(d) != binom(d - 1)) return false;
            if (!fingerprint_matches(fo, fk, -1)) return false;
        }
        return true;
    });

    criterion(9, "F_i(M) matches shifted F_{p-i}(Omega M) for M in {k, Omega k}, ea(2), p=3", [] {
        const std::uint32_t p = 3;
        auto ea = make_elem_abelian(2, p);
        Representation k = builtin_module("trivial", ea);
        std::vector<Representation> ms{k, heller(k)};
        for (const auto& m : ms) {
            GradedMatrix tm = assemble_theta(m);
            GradedMatrix to = assemble_theta(heller(m));
            for (std::uint32_t i = 1; i < p; ++i) {
                Fingerprint a = fingerprint(f_sheaf(tm, i, p), p);
                Fingerprint b = fingerprint(f_sheaf(to, p - i, p), p);
                std::int64_t twist = static_cast<std::int64_t>(p - i) * ea->theta_degree();
                if (!fingerprint_matches(a, b, twist)) return false;
            }
        }
        return true;
    });

    criterion(10, "H^(1) vanishing equals H^(p-1) vanishing equals all F_i vanishing", [] {
        auto sl3 = make_sl3(3);
        Representation m3 = builtin_module("sl3_standard", sl3);
        if (!h_and_f_consistent(m3)) return false;
        if (!h_and_f_consistent(dual(m3))) return false;
        if (!h_and_f_consistent(tensor(m3, dual(m3)))) return false;

        for (std::uint32_t p : {3u, 5u}) {
            auto sl2 = make_sl2(p);
            for (std::uint32_t lam = 0; lam < p; ++lam)
                if (!h_and_f_consistent(
                        builtin_module("sl2_simple(" + std::to_string(lam) + ")", sl2)))
                    return false;
        }
        for (auto [p, r] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
            auto ea = make_elem_abelian(r, p);
            if (!h_and_f_consistent(builtin_module("regular", ea))) return false;
            Representation k = builtin_module("trivial", ea);
            if (!h_and_f_consistent(k)) return false;
            if (!h_and_f_consistent(heller(k))) return false;
        }
        return true;
    });

    criterion(11, "coker fibers: dim M - rank theta^j at 100+ points; fiber rank <= generic rank", [] {
        struct Fixture {
            GroupPtr g;
            Representation m;
        };
        std::vector<Fixture> fixtures;
        for (auto [p, r] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
            auto ea = make_elem_abelian(r, p);
            fixtures.push_back({ea, builtin_module("regular", ea)});
            fixtures.push_back({ea, heller(builtin_module("trivial", ea))});
        }
        {
            auto sl2 = make_sl2(3);
            fixtures.push_back({sl2, builtin_module("sl2_simple(1)", sl2)});
            auto sl3 = make_sl3(3);
            fixtures.push_back({sl3, builtin_module("sl3_standard", sl3)});
        }
        for (const auto& fx : fixtures) {
            const std::uint32_t p = fx.g->p;
            GradedMatrix theta = assemble_theta(fx.m);
            auto pts = sample_points(*fx.g, 100, 11);
            for (std::uint32_t j = 1; j <= p; ++j) {
                GradedMatrix tj = theta_power(theta, j, ThetaSide::ImSide, p);
                std::size_t grank = 0;
                bool elem_ab = fx.g->family == Family::ElemAbelian;
                if (elem_ab) {
                    std::vector<std::vector<Polynomial>> entries(tj.rows());
                    for (std::size_t a = 0; a < tj.rows(); ++a)
                        for (std::size_t b = 0; b < tj.cols(); ++b)
                            entries[a].push_back(tj.at(a, b));
                    grank = generic_rank(entries);
                }
                for (const auto& v : pts) {
                    Matrix spec(fx.m.dim, fx.m.dim, p);
                    for (std::size_t a = 0; a < fx.m.dim; ++a)
                        for (std::size_t b = 0; b < fx.m.dim; ++b)
                            spec.set(a, b, tj.at(a, b).specialize(v.coords));
                    std::size_t rk = mat_rank(spec);
                    std::size_t direct = mat_rank(mat_power(specialize_theta(fx.m, v), j));
                    if (rk != direct) return false; // coker fiber = dim M - rank
                    if (elem_ab && rk > grank) return false;
                }
            }
        }
        return true;
    });

    criterion(12, "weighted family ga(2), p=2: H(k) = O_{P(1,2)}, graded validator accepts", [] {
        auto ga = make_frobenius_ga(2, 2);
        Representation k = builtin_module("trivial", ga);
        GradedMatrix tk = assemble_theta(k);
        for (const auto& e : tk.entries)
            if (!e.is_zero()) return false;
        SubquotientSheaf h = h_sheaf(tk, 1, 2);
        if (is_sheaf_zero(h)) return false;
        if (locally_free_rank(h) != 1) return false;

        Representation rep;
        rep.group = ga;
        rep.dim = 2;
        Matrix j2(2, 2, 2);
        j2.set(0, 1, 1);
        rep.action = {j2, j2};
        validate_rep(rep);
        GradedMatrix t2 = assemble_theta(rep); // throws GradingError if inhomogeneous
        const RingPtr& r = ga->presentation.ring;
        return t2.at(0, 1) == parse_polynomial(r, "x1^2 + x2") &&
               t2.col_degrees == std::vector<std::int64_t>(2, 2);
    });

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
