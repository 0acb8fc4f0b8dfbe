#include "pgsheaf/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace pgsheaf {

namespace {

bool in_defining_radical(const RingPresentation& pres, const Polynomial& f) {
    if (f.is_zero()) return true;
    if (!pres.defining_basis().empty()) {
        GroebnerBasis qgb(pres.ring, FreeModule{{0}}, [&] {
            std::vector<ModElement> elems;
            for (const auto& q : pres.defining_basis()) elems.push_back(ModElement{q});
            return elems;
        }());
        if (normal_form(qgb, f).is_zero()) return true;
    }
    return radical_membership(pres, f, {});
}

GradedMatrix theta_like(const GradedMatrix& theta) {
    if (theta.rows() != theta.cols()) throw ShapeError("global operator must be square");
    GradedMatrix t = theta;
    t.validate();
    return t;
}

std::int64_t theta_degree_of(const GradedMatrix& theta) {
    if (theta.rows() == 0) return 1;
    return theta.col_degrees[0] - theta.row_degrees[0];
}

Submodule kernel_submodule(const GradedMatrix& theta, std::uint32_t j, std::uint32_t p) {
    return syzygy_kernel(theta_power(theta, j, ThetaSide::KerSide, p));
}

Submodule image_submodule(const GradedMatrix& theta, std::uint32_t j, std::uint32_t p) {
    GradedMatrix ip = theta_power(theta, j, ThetaSide::ImSide, p);
    Submodule im;
    im.ambient.gen_degrees.assign(theta.rows(), 0);
    for (std::size_t c = 0; c < ip.cols(); ++c) {
        ModElement col = ip.column(c);
        if (!element_is_zero(col)) im.gens.push_back(std::move(col));
    }
    return im;
}

Submodule full_ambient(const GradedMatrix& theta) {
    Submodule full;
    full.ambient.gen_degrees.assign(theta.rows(), 0);
    for (std::size_t i = 0; i < theta.rows(); ++i) {
        ModElement e = zero_element(theta.pres.ring, theta.rows());
        e[i] = Polynomial::constant(theta.pres.ring, 1);
        full.gens.push_back(std::move(e));
    }
    return full;
}

} // namespace

SubquotientSheaf make_subquotient(RingPresentation pres, Submodule k, Submodule n,
                                  std::int64_t theta_degree, std::int64_t shift) {
    SubquotientSheaf s;
    s.pres = std::move(pres);
    s.ambient = k.ambient;
    if (!(n.ambient == k.ambient))
        throw ShapeError("subquotient requires a common ambient module");
    s.K = std::move(k);
    s.N = std::move(n);
    s.shift = shift;
    s.theta_degree = theta_degree;
    s.gbK = std::make_shared<GroebnerBasis>(groebner_basis(s.pres, s.K));
    s.gbN = std::make_shared<GroebnerBasis>(groebner_basis(s.pres, s.N));
    for (const auto& g : s.N.gens)
        if (!is_member(*s.gbK, g))
            throw NotASubmodule("subquotient: N is not contained in K");
    return s;
}

GradedMatrix theta_power(const GradedMatrix& theta, std::uint32_t j, ThetaSide side,
                         std::uint32_t p) {
    GradedMatrix t = theta_like(theta);
    if (j > p) throw RangeError("theta power exponent exceeds p");
    const std::size_t n = t.rows();
    const RingPtr& ring = t.pres.ring;
    const std::int64_t d = theta_degree_of(t);

    GroebnerBasis qgb(ring, FreeModule{{0}}, [&] {
        std::vector<ModElement> elems;
        for (const auto& q : t.pres.defining_basis()) elems.push_back(ModElement{q});
        return elems;
    }());

    std::vector<Polynomial> acc(n * n, Polynomial::zero(ring));
    for (std::size_t i = 0; i < n; ++i) acc[i * n + i] = Polynomial::constant(ring, 1);
    for (std::uint32_t step = 0; step < j; ++step) {
        std::vector<Polynomial> next(n * n, Polynomial::zero(ring));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t kk = 0; kk < n; ++kk) {
                if (acc[i * n + kk].is_zero()) continue;
                for (std::size_t jj = 0; jj < n; ++jj) {
                    if (t.at(kk, jj).is_zero()) continue;
                    next[i * n + jj] = next[i * n + jj] + acc[i * n + kk] * t.at(kk, jj);
                }
            }
        for (auto& e : next)
            if (!e.is_zero()) e = normal_form(qgb, e);
        acc = std::move(next);
    }

    std::vector<std::int64_t> rows(n, 0), cols(n, 0);
    if (side == ThetaSide::KerSide) {
        std::fill(rows.begin(), rows.end(), -static_cast<std::int64_t>(j) * d);
    } else {
        std::fill(cols.begin(), cols.end(), static_cast<std::int64_t>(j) * d);
    }
    return make_graded_matrix(t.pres, std::move(rows), std::move(cols), std::move(acc));
}

KerImCoker ker_im_coker(const GradedMatrix& theta, std::uint32_t j, std::uint32_t p) {
    if (j == 0 || j > p) throw RangeError("ker/im/coker index must be in 1..p");
    const std::int64_t d = theta_degree_of(theta);
    KerImCoker out;
    out.ker = kernel_submodule(theta, j, p);
    out.im = image_submodule(theta, j, p);
    out.coker = make_subquotient(theta.pres, full_ambient(theta), out.im, d);
    return out;
}

SubquotientSheaf f_sheaf(const GradedMatrix& theta, std::uint32_t i, std::uint32_t p) {
    if (i == 0 || i > p) throw RangeError("F index must be in 1..p");
    const std::int64_t d = theta_degree_of(theta);
    Submodule ker1 = kernel_submodule(theta, 1, p);
    Submodule k =
        (i == 1) ? ker1 : intersect(theta.pres, ker1, image_submodule(theta, i - 1, p));
    Submodule n = intersect(theta.pres, ker1, image_submodule(theta, i, p));
    return make_subquotient(theta.pres, std::move(k), std::move(n), d);
}

SubquotientSheaf h_sheaf(const GradedMatrix& theta, std::uint32_t i, std::uint32_t p) {
    if (i == 0 || i >= p) throw RangeError("H index must be in 1..p-1");
    const std::int64_t d = theta_degree_of(theta);
    try {
        return make_subquotient(theta.pres, kernel_submodule(theta, i, p),
                                image_submodule(theta, p - i, p), d);
    } catch (const NotASubmodule&) {
        throw InternalInvariantViolation("im^{p-i} is not contained in ker^i");
    }
}

bool is_module_zero(const SubquotientSheaf& s) {
    for (const auto& g : s.K.gens)
        if (!is_member(*s.gbN, g)) return false;
    return true;
}

std::vector<Polynomial> irrelevant_ideal(const RingPresentation& pres) {
    std::vector<Polynomial> vars;
    for (std::size_t i = 0; i < pres.ring->nvars(); ++i)
        vars.push_back(Polynomial::variable(pres.ring, i));
    return vars;
}

bool is_sheaf_zero(const SubquotientSheaf& s) {
    for (const auto& g : s.K.gens) {
        if (is_member(*s.gbN, g)) continue;
        std::vector<Polynomial> colon = quotient_ideal_of_element(s.pres, s.N, g);
        for (std::size_t v = 0; v < s.pres.ring->nvars(); ++v) {
            Polynomial x = Polynomial::variable(s.pres.ring, v);
            if (!radical_membership(s.pres, x, colon)) return false;
        }
    }
    return true;
}

std::vector<Polynomial> support_ideal(const SubquotientSheaf& s) {
    return annihilator(s.pres, s.K, s.N);
}

GradedMatrix subquotient_presentation(const SubquotientSheaf& s) {
    const RingPtr& ring = s.pres.ring;
    const std::size_t m = s.ambient.rank();

    // Nonzero generators of K keep their order; zero generators are dropped.
    std::vector<ModElement> kgens;
    for (const auto& g : s.K.gens)
        if (!element_is_zero(g)) kgens.push_back(g);
    const std::size_t a = kgens.size();

    std::vector<std::int64_t> row_degs;
    for (const auto& g : kgens) row_degs.push_back(element_degree(s.ambient, g));

    // Relation module {c : sum c_i k_i in N + defining multiples}.
    FreeModule back;
    back.gen_degrees = row_degs;
    FreeModule whole = s.ambient;
    whole.gen_degrees.insert(whole.gen_degrees.end(), back.gen_degrees.begin(),
                             back.gen_degrees.end());

    std::vector<ModElement> gens;
    for (std::size_t i = 0; i < a; ++i) {
        ModElement tag = zero_element(ring, a);
        tag[i] = Polynomial::constant(ring, 1);
        ModElement w = kgens[i];
        w.insert(w.end(), tag.begin(), tag.end());
        gens.push_back(std::move(w));
    }
    auto push_front_only = [&](const ModElement& v) {
        ModElement w = v;
        ModElement tag = zero_element(ring, a);
        w.insert(w.end(), tag.begin(), tag.end());
        gens.push_back(std::move(w));
    };
    for (const auto& n : s.N.gens)
        if (!element_is_zero(n)) push_front_only(n);
    for (const auto& q : s.pres.defining_basis())
        for (std::size_t i = 0; i < m; ++i) {
            ModElement e = zero_element(ring, m);
            e[i] = q;
            push_front_only(e);
        }

    GroebnerBasis gb = groebner_basis(
        RingPresentation{ring, {}, std::make_shared<std::vector<Polynomial>>()},
        Submodule{whole, std::move(gens)});

    std::vector<ModElement> rels;
    for (const auto& e : gb.elements()) {
        bool front_zero = true;
        for (std::size_t i = 0; i < m && front_zero; ++i)
            if (!e[i].is_zero()) front_zero = false;
        if (!front_zero) continue;
        rels.emplace_back(e.begin() + static_cast<std::ptrdiff_t>(m), e.end());
    }

    // Assemble the presentation matrix: rows = K generators, cols = relations.
    std::vector<std::int64_t> col_degs;
    std::vector<std::vector<Polynomial>> cols;
    for (const auto& r : rels) {
        col_degs.push_back(element_degree(back, r));
        cols.push_back(r);
    }

    GroebnerBasis qgb(ring, FreeModule{{0}}, [&] {
        std::vector<ModElement> elems;
        for (const auto& q : s.pres.defining_basis()) elems.push_back(ModElement{q});
        return elems;
    }());
    auto reduce_entry = [&](const Polynomial& f) {
        return f.is_zero() ? f : normal_form(qgb, f);
    };

    std::vector<std::int64_t> rdegs = row_degs;
    for (auto& col : cols)
        for (auto& e : col) e = reduce_entry(e);

    // Minimalize: a relation entry that is a nonzero constant cancels one
    // generator against one relation.
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t i = 0; i < rdegs.size() && !again; ++i)
            for (std::size_t j = 0; j < cols.size() && !again; ++j) {
                const Polynomial& e = cols[j][i];
                if (e.is_zero() || !e.leading_term().m.is_one()) continue;
                FieldElement c(e.leading_term().c, ring->p);
                FieldElement cinv = c.inv();
                for (std::size_t j2 = 0; j2 < cols.size(); ++j2) {
                    if (j2 == j || cols[j2][i].is_zero()) continue;
                    Polynomial factor = cols[j2][i] * Polynomial::constant(ring, cinv.value);
                    for (std::size_t r = 0; r < rdegs.size(); ++r)
                        cols[j2][r] = reduce_entry(cols[j2][r] - factor * cols[j][r]);
                }
                cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(j));
                col_degs.erase(col_degs.begin() + static_cast<std::ptrdiff_t>(j));
                for (auto& col : cols) col.erase(col.begin() + static_cast<std::ptrdiff_t>(i));
                rdegs.erase(rdegs.begin() + static_cast<std::ptrdiff_t>(i));
                again = true;
            }
    }
    // Drop zero relations.
    for (std::size_t j = cols.size(); j-- > 0;) {
        bool zero = true;
        for (const auto& e : cols[j])
            if (!e.is_zero()) zero = false;
        if (zero) {
            cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(j));
            col_degs.erase(col_degs.begin() + static_cast<std::ptrdiff_t>(j));
        }
    }

    std::vector<Polynomial> entries(rdegs.size() * cols.size(), Polynomial::zero(ring));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rdegs.size(); ++i)
            entries[i * cols.size() + j] = cols[j][i];
    return make_graded_matrix(s.pres, rdegs, col_degs, std::move(entries));
}

std::optional<std::size_t> locally_free_rank(const SubquotientSheaf& s) {
    GradedMatrix pm = subquotient_presentation(s);
    const std::size_t m = pm.rows();
    auto vanishes_on_scheme = [&](const std::vector<Polynomial>& gens) {
        for (const auto& g : gens)
            if (!in_defining_radical(s.pres, g)) return false;
        return true;
    };
    auto saturates_to_unit = [&](const std::vector<Polynomial>& gens) {
        if (ideal_contains_one(s.pres, gens)) return true;
        for (std::size_t v = 0; v < s.pres.ring->nvars(); ++v)
            if (!radical_membership(s.pres, Polynomial::variable(s.pres.ring, v), gens))
                return false;
        return true;
    };
    for (std::size_t r = 0; r <= m; ++r) {
        bool lower_zero = (r == 0) ? true : vanishes_on_scheme(fitting_ideal(pm, r - 1));
        if (!lower_zero) return std::nullopt; // Fitt chain is increasing
        if (saturates_to_unit(fitting_ideal(pm, r))) return r;
    }
    return std::nullopt;
}

std::int64_t free_module_monomial_count(const RingPtr& ring, const FreeModule& fm,
                                        std::int64_t d) {
    // Number of weighted monomials x^alpha with wdeg = target, summed per
    // component after subtracting the generator degree.
    std::function<std::int64_t(std::size_t, std::int64_t)> count =
        [&](std::size_t var, std::int64_t target) -> std::int64_t {
        if (target == 0) return 1;
        if (target < 0 || var == ring->nvars()) return 0;
        std::int64_t total = 0;
        std::int64_t w = ring->weights[var];
        for (std::int64_t e = 0; e * w <= target; ++e)
            total += count(var + 1, target - e * w);
        return total;
    };
    std::int64_t total = 0;
    for (auto g : fm.gen_degrees) total += count(0, d - g);
    return total;
}

namespace {

// Enumerate monomials in the free module of total degree d and count those
// divisible by a lead term of gb (the degree-d dimension of the submodule).
std::int64_t lead_term_count(const GroebnerBasis& gb, std::int64_t d) {
    const RingPtr& ring = gb.ring();
    std::int64_t total = 0;
    std::vector<std::uint8_t> exp(ring->nvars(), 0);
    std::function<void(std::size_t, std::int64_t, std::size_t)> rec =
        [&](std::size_t var, std::int64_t remaining, std::size_t comp) {
            if (remaining == 0 || var == ring->nvars()) {
                if (remaining != 0) return;
                Monomial m;
                std::uint32_t wdeg = 0, raw = 0;
                for (std::size_t i = 0; i < ring->nvars(); ++i) {
                    m.e[i] = exp[i];
                    wdeg += ring->weights[i] * exp[i];
                    raw += exp[i];
                }
                m.wdeg = wdeg;
                m.rawdeg = raw;
                for (std::size_t idx : gb.comp_index()[comp])
                    if (mono_divides(gb.leads()[idx].m, m)) {
                        ++total;
                        return;
                    }
                return;
            }
            std::int64_t w = ring->weights[var];
            for (std::int64_t e = 0; e * w <= remaining; ++e) {
                exp[var] = static_cast<std::uint8_t>(e);
                rec(var + 1, remaining - e * w, comp);
            }
            exp[var] = 0;
        };
    for (std::size_t comp = 0; comp < gb.ambient().rank(); ++comp) {
        std::int64_t target = d - gb.ambient().gen_degrees[comp];
        if (target < 0) continue;
        rec(0, target, comp);
    }
    return total;
}

} // namespace

std::int64_t submodule_slice_dim(const GroebnerBasis& gb, std::int64_t d) {
    return lead_term_count(gb, d);
}

std::int64_t subquotient_hilbert(const SubquotientSheaf& s, std::int64_t d) {
    return submodule_slice_dim(*s.gbK, d) - submodule_slice_dim(*s.gbN, d);
}

Fingerprint fingerprint(const SubquotientSheaf& s, std::uint32_t p) {
    Fingerprint fp;
    const std::int64_t span = static_cast<std::int64_t>(p) * s.theta_degree;
    std::int64_t lo = 0, hi = 0;
    bool have = false;
    for (const auto& g : s.K.gens) {
        if (element_is_zero(g)) continue;
        std::int64_t dg = element_degree(s.ambient, g);
        if (!have || dg < lo) lo = dg;
        if (!have || dg > hi) hi = dg;
        have = true;
    }
    fp.window_lo = lo - span;
    fp.window_hi = hi + span;

    // Torsion-free Hilbert table: quotient by sat(N) cap K.
    bool mod_zero = is_module_zero(s);
    std::shared_ptr<const GroebnerBasis> gbK = s.gbK;
    std::shared_ptr<const GroebnerBasis> gbNt;
    if (!mod_zero) {
        Submodule sat = saturate(s.pres, s.N, irrelevant_ideal(s.pres));
        Submodule cut = intersect(s.pres, sat, s.K);
        gbNt = std::make_shared<GroebnerBasis>(groebner_basis(s.pres, cut));
    }
    for (std::int64_t d = fp.window_lo; d <= fp.window_hi; ++d) {
        std::int64_t v = 0;
        if (!mod_zero) v = submodule_slice_dim(*gbK, d) - submodule_slice_dim(*gbNt, d);
        fp.hilbert.emplace_back(d, v);
    }

    // Positional Fitting signatures (entry i describes Fitt_i) computed from
    // the saturated ideals; saturation makes them insensitive to irrelevant
    // torsion in the chosen presentation, so signature lists of isomorphic
    // sheaves differ only by trailing "unit" entries.
    GradedMatrix pm = subquotient_presentation(s);
    std::vector<Polynomial> irr = irrelevant_ideal(s.pres);
    for (std::size_t i = 0; i <= pm.rows(); ++i) {
        std::vector<Polynomial> fitt = fitting_ideal(pm, i);
        std::ostringstream sig;
        if (fitt.empty()) {
            sig << "zero";
        } else {
            Submodule satm = saturate(s.pres, ideal_submodule(s.pres.ring, fitt), irr);
            std::vector<Polynomial> sat;
            for (const auto& e : satm.gens) sat.push_back(e[0]);
            if (ideal_contains_one(s.pres, sat)) {
                sig << "unit";
            } else {
                bool all_in_q = true;
                for (const auto& g : sat)
                    if (!in_defining_radical(s.pres, g)) {
                        all_in_q = false;
                        break;
                    }
                if (all_in_q) {
                    sig << "zero";
                } else {
                    sig << "vars=";
                    for (std::size_t v = 0; v < s.pres.ring->nvars(); ++v)
                        sig << (radical_membership(
                                    s.pres, Polynomial::variable(s.pres.ring, v), sat)
                                    ? '1'
                                    : '0');
                }
            }
        }
        fp.fitting_signatures.push_back(sig.str());
    }
    return fp;
}

std::optional<std::int64_t> Fingerprint::value_at(std::int64_t d) const {
    if (d < window_lo || d > window_hi) return std::nullopt;
    return hilbert[static_cast<std::size_t>(d - window_lo)].second;
}

bool fingerprint_matches(const Fingerprint& a, const Fingerprint& b, std::int64_t twist) {
    std::int64_t lo = std::max(a.window_lo, b.window_lo - twist);
    std::int64_t hi = std::min(a.window_hi, b.window_hi - twist);
    if (lo > hi) return false;
    for (std::int64_t d = lo; d <= hi; ++d)
        if (*a.value_at(d) != *b.value_at(d + twist)) return false;
    // Fitt_i is the unit ideal for every i past the generator count, so the
    // lists are compared after padding with "unit".
    std::size_t len = std::max(a.fitting_signatures.size(), b.fitting_signatures.size());
    for (std::size_t i = 0; i < len; ++i) {
        const std::string sa =
            i < a.fitting_signatures.size() ? a.fitting_signatures[i] : "unit";
        const std::string sb =
            i < b.fitting_signatures.size() ? b.fitting_signatures[i] : "unit";
        if (sa != sb) return false;
    }
    return true;
}

SheafReport sheaf_report(const SubquotientSheaf& s, std::uint32_t p, bool with_support,
                         bool with_fingerprint) {
    SheafReport r;
    r.module_zero = is_module_zero(s);
    r.sheaf_zero = r.module_zero ? true : is_sheaf_zero(s);
    if (with_support) {
        std::vector<Polynomial> ann = support_ideal(s);
        for (const auto& g : ann) r.support_ideal.push_back(g.to_string());
    }
    if (with_fingerprint) {
        r.locally_free_rank = locally_free_rank(s);
        r.fingerprint = fingerprint(s, p);
    }
    return r;
}

} // namespace pgsheaf
