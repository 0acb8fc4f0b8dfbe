#include "pgsheaf/groebner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace pgsheaf {

namespace {

// Position-over-term: lower component index wins, then the monomial order.
// Returns greater if (ca, ma) is the larger module term.
std::strong_ordering module_term_compare(const RingContext& ring, std::size_t ca,
                                         const Monomial& ma, std::size_t cb,
                                         const Monomial& mb) {
    if (ca != cb) return cb <=> ca;
    return monomial_compare(ring, ma, mb);
}

} // namespace

ModElement zero_element(const RingPtr& ring, std::size_t rank) {
    return ModElement(rank, Polynomial::zero(ring));
}

bool element_is_zero(const ModElement& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

bool element_is_homogeneous(const FreeModule& fm, const ModElement& v) {
    std::optional<std::int64_t> deg;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        auto d = v[i].homogeneous_degree();
        if (!d) return false;
        std::int64_t total = static_cast<std::int64_t>(*d) + fm.gen_degrees[i];
        if (deg && *deg != total) return false;
        deg = total;
    }
    return true;
}

std::int64_t element_degree(const FreeModule& fm, const ModElement& v) {
    std::optional<std::int64_t> deg;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        std::int64_t total =
            static_cast<std::int64_t>(v[i].weighted_degree()) + fm.gen_degrees[i];
        if (deg && *deg != total) throw NonHomogeneous("module element is not homogeneous");
        deg = total;
    }
    if (!deg) throw ZeroPolynomial("zero element has no degree");
    return *deg;
}

ModElement element_add(const ModElement& a, const ModElement& b) {
    if (a.size() != b.size()) throw ShapeError("module element rank mismatch");
    ModElement r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

ModElement element_sub(const ModElement& a, const ModElement& b) {
    if (a.size() != b.size()) throw ShapeError("module element rank mismatch");
    ModElement r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

ModElement element_term_multiple(const ModElement& v, const Monomial& m, std::uint32_t c) {
    ModElement r = v;
    for (auto& e : r) e = e.term_multiple(m, c);
    return r;
}

std::optional<ModLead> leading_position(const ModElement& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) {
            const Term& t = v[i].leading_term();
            return ModLead{i, t.m, t.c};
        }
    return std::nullopt;
}

RingPresentation make_presentation(const RingPtr& ring, std::vector<Polynomial> defining) {
    RingPresentation pres;
    pres.ring = ring;
    for (auto& q : defining) {
        if (q.is_zero()) continue;
        if (!same_ring(q.ring(), ring)) throw RingMismatch();
        if (!q.is_homogeneous())
            throw NonHomogeneous("defining ideal generators must be homogeneous");
        pres.defining.push_back(q);
    }
    pres.defining_gb = std::make_shared<std::vector<Polynomial>>();
    if (!pres.defining.empty()) {
        // Bootstrap: reduced ideal GB without a presentation (empty defining).
        RingPresentation free_pres;
        free_pres.ring = ring;
        free_pres.defining_gb = std::make_shared<std::vector<Polynomial>>();
        GroebnerBasis gb = ideal_groebner_basis(free_pres, pres.defining);
        std::vector<Polynomial> basis;
        for (const auto& e : gb.elements()) basis.push_back(e[0]);
        pres.defining_gb = std::make_shared<std::vector<Polynomial>>(std::move(basis));
    }
    return pres;
}

// ---------------------------------------------------------------------------
// Groebner basis construction
// ---------------------------------------------------------------------------

namespace {

struct LeadRef {
    std::size_t comp;
    Monomial m;
};

class Reducer {
public:
    Reducer(RingPtr ring, std::size_t rank)
        : ring_(std::move(ring)), by_comp_(rank) {}

    void add(ModElement g) {
        auto lp = leading_position(g);
        elems_.push_back(std::move(g));
        leads_.push_back(LeadRef{lp->comp, lp->m});
        by_comp_[lp->comp].push_back(elems_.size() - 1);
    }

    const std::vector<ModElement>& elems() const { return elems_; }
    const std::vector<LeadRef>& leads() const { return leads_; }

    // Full normal form: every term of the result is reducible by no element.
    ModElement reduce(ModElement f) const {
        const std::uint32_t p = ring_->p;
        ModElement out = zero_element(ring_, f.size());
        std::size_t comp_hint = 0;
        while (true) {
            std::size_t comp = f.size();
            for (std::size_t i = comp_hint; i < f.size(); ++i)
                if (!f[i].is_zero()) {
                    comp = i;
                    break;
                }
            if (comp == f.size()) break;
            comp_hint = comp;
            const Term lt = f[comp].leading_term();
            std::size_t red = elems_.size();
            for (std::size_t idx : by_comp_[comp])
                if (mono_divides(leads_[idx].m, lt.m)) {
                    red = idx;
                    break;
                }
            if (red == elems_.size()) {
                // Move the irreducible leading term to the output.
                out[comp] = out[comp] + Polynomial::from_terms(ring_, {lt});
                f[comp] = f[comp] - Polynomial::from_terms(ring_, {lt});
                continue;
            }
            Monomial q = mono_div(*ring_, lt.m, leads_[red].m);
            // Basis elements are monic, so the cofactor coefficient is lt.c.
            const ModElement& g = elems_[red];
            for (std::size_t i = comp; i < f.size(); ++i)
                if (!g[i].is_zero()) f[i] = f[i] - g[i].term_multiple(q, lt.c % p);
        }
        return out;
    }

private:
    RingPtr ring_;
    std::vector<ModElement> elems_;
    std::vector<LeadRef> leads_;
    std::vector<std::vector<std::size_t>> by_comp_;
};

ModElement make_monic(const RingPtr& ring, ModElement v) {
    auto lp = leading_position(v);
    if (!lp) return v;
    FieldElement inv = FieldElement(lp->c, ring->p).inv();
    for (auto& c : v) c = c.scaled(inv.value);
    return v;
}

struct PairKey {
    std::int64_t deg;
    std::size_t comp;
    Monomial lcm;
    std::size_t i, j;
};

struct PairLess {
    const RingContext* ring;
    bool operator()(const PairKey& a, const PairKey& b) const {
        if (a.deg != b.deg) return a.deg < b.deg;
        auto c = monomial_compare(*ring, a.lcm, b.lcm);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        if (a.comp != b.comp) return a.comp < b.comp;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

class Buchberger {
public:
    Buchberger(RingPtr ring, FreeModule ambient)
        : ring_(std::move(ring)), ambient_(std::move(ambient)),
          pairs_(PairLess{ring_.get()}) {}

    std::vector<ModElement> run(const std::vector<ModElement>& input) {
        for (const auto& g : input) add_element(g);
        while (!pairs_.empty()) {
            PairKey pk = *pairs_.begin();
            pairs_.erase(pairs_.begin());
            done_.insert(pk.i << 20 | pk.j);
            if (product_criterion(pk) || chain_criterion(pk)) continue;
            ModElement s = s_pair(pk);
            ModElement r = full_reduce(std::move(s));
            if (!element_is_zero(r)) add_element(std::move(r));
        }
        return finalize();
    }

private:
    RingPtr ring_;
    FreeModule ambient_;
    std::vector<ModElement> elems_;
    std::vector<LeadRef> leads_;
    std::set<PairKey, PairLess> pairs_;
    std::set<std::uint64_t> done_;

    static std::uint64_t key(std::size_t i, std::size_t j) { return i << 20 | j; }

    void add_element(ModElement g) {
        if (element_is_zero(g)) return;
        g = make_monic(ring_, std::move(g));
        auto lp = leading_position(g);
        std::size_t idx = elems_.size();
        // One new pair per existing element with the same leading component.
        for (std::size_t k = 0; k < elems_.size(); ++k) {
            if (leads_[k].comp != lp->comp) continue;
            Monomial l = mono_lcm(*ring_, leads_[k].m, lp->m);
            std::int64_t deg =
                static_cast<std::int64_t>(l.wdeg) + ambient_.gen_degrees[lp->comp];
            pairs_.insert(PairKey{deg, lp->comp, l, k, idx});
        }
        elems_.push_back(std::move(g));
        leads_.push_back(LeadRef{lp->comp, lp->m});
    }

    bool product_criterion(const PairKey& pk) const {
        // Valid for ideals only; the usual proof does not carry to modules.
        if (ambient_.rank() != 1) return false;
        return mono_coprime(leads_[pk.i].m, leads_[pk.j].m);
    }

    bool chain_criterion(const PairKey& pk) const {
        for (std::size_t k = 0; k < elems_.size(); ++k) {
            if (k == pk.i || k == pk.j) continue;
            if (leads_[k].comp != pk.comp) continue;
            if (!mono_divides(leads_[k].m, pk.lcm)) continue;
            std::size_t a1 = std::min(pk.i, k), b1 = std::max(pk.i, k);
            std::size_t a2 = std::min(pk.j, k), b2 = std::max(pk.j, k);
            if (done_.count(key(a1, b1)) && done_.count(key(a2, b2))) return true;
        }
        return false;
    }

    ModElement s_pair(const PairKey& pk) const {
        Monomial qi = mono_div(*ring_, pk.lcm, leads_[pk.i].m);
        Monomial qj = mono_div(*ring_, pk.lcm, leads_[pk.j].m);
        return element_sub(element_term_multiple(elems_[pk.i], qi, 1),
                           element_term_multiple(elems_[pk.j], qj, 1));
    }

    ModElement full_reduce(ModElement f) const {
        const std::uint32_t p = ring_->p;
        ModElement out = zero_element(ring_, f.size());
        while (true) {
            auto lp = leading_position(f);
            if (!lp) break;
            std::size_t red = elems_.size();
            for (std::size_t k = 0; k < elems_.size(); ++k)
                if (leads_[k].comp == lp->comp && mono_divides(leads_[k].m, lp->m)) {
                    red = k;
                    break;
                }
            if (red == elems_.size()) {
                Term t{lp->m, lp->c};
                out[lp->comp] = out[lp->comp] + Polynomial::from_terms(ring_, {t});
                f[lp->comp] = f[lp->comp] - Polynomial::from_terms(ring_, {t});
                continue;
            }
            Monomial q = mono_div(*ring_, lp->m, leads_[red].m);
            const ModElement& g = elems_[red];
            for (std::size_t i = lp->comp; i < f.size(); ++i)
                if (!g[i].is_zero()) f[i] = f[i] - g[i].term_multiple(q, lp->c % p);
        }
        return out;
    }

    std::vector<ModElement> finalize() {
        // Minimal: drop elements whose lead is divisible by another lead.
        std::vector<std::size_t> order(elems_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return module_term_compare(*ring_, leads_[a].comp, leads_[a].m, leads_[b].comp,
                                       leads_[b].m) == std::strong_ordering::less;
        });
        std::vector<std::size_t> kept;
        for (std::size_t idx : order) {
            bool redundant = false;
            for (std::size_t k : kept)
                if (leads_[k].comp == leads_[idx].comp &&
                    mono_divides(leads_[k].m, leads_[idx].m)) {
                    redundant = true;
                    break;
                }
            if (!redundant) kept.push_back(idx);
        }
        // Interreduce tails against the minimal set until stable.
        std::vector<ModElement> basis;
        for (std::size_t idx : kept) basis.push_back(elems_[idx]);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                Reducer red(ring_, ambient_.rank());
                for (std::size_t j = 0; j < basis.size(); ++j)
                    if (j != i) red.add(basis[j]);
                ModElement r = make_monic(ring_, red.reduce(basis[i]));
                if (!(r == basis[i])) {
                    basis[i] = std::move(r);
                    changed = true;
                }
            }
        }
        return basis;
    }
};

} // namespace

GroebnerBasis::GroebnerBasis(RingPtr ring, FreeModule ambient, std::vector<ModElement> elems)
    : ring_(std::move(ring)), ambient_(std::move(ambient)), elems_(std::move(elems)),
      by_comp_(ambient_.rank()) {
    std::sort(elems_.begin(), elems_.end(), [&](const ModElement& a, const ModElement& b) {
        auto la = leading_position(a), lb = leading_position(b);
        return module_term_compare(*ring_, la->comp, la->m, lb->comp, lb->m) ==
               std::strong_ordering::less;
    });
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        auto lp = leading_position(elems_[i]);
        leads_.push_back(*lp);
        by_comp_[lp->comp].push_back(i);
    }
}

bool GroebnerBasis::operator==(const GroebnerBasis& o) const {
    if (elems_.size() != o.elems_.size()) return false;
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (!(elems_[i] == o.elems_[i])) return false;
    return true;
}

namespace {

std::vector<ModElement> adjoin_defining(const RingPresentation& pres, const FreeModule& fm,
                                        std::vector<ModElement> gens) {
    for (const auto& q : pres.defining_basis())
        for (std::size_t i = 0; i < fm.rank(); ++i) {
            ModElement e = zero_element(pres.ring, fm.rank());
            e[i] = q;
            gens.push_back(std::move(e));
        }
    return gens;
}

GroebnerBasis run_buchberger(const RingPresentation& pres, const FreeModule& fm,
                             std::vector<ModElement> gens, bool check_homogeneous) {
    std::vector<ModElement> input;
    for (auto& g : gens) {
        if (g.size() != fm.rank()) throw ShapeError("generator rank mismatch");
        if (element_is_zero(g)) continue;
        if (check_homogeneous && !element_is_homogeneous(fm, g))
            throw NonHomogeneous("submodule generators must be homogeneous");
        input.push_back(std::move(g));
    }
    // Deterministic start: sort by leading module term.
    std::sort(input.begin(), input.end(), [&](const ModElement& a, const ModElement& b) {
        auto la = leading_position(a), lb = leading_position(b);
        return module_term_compare(*pres.ring, la->comp, la->m, lb->comp, lb->m) ==
               std::strong_ordering::less;
    });
    Buchberger engine(pres.ring, fm);
    return GroebnerBasis(pres.ring, fm, engine.run(input));
}

} // namespace

GroebnerBasis groebner_basis(const RingPresentation& pres, const Submodule& gens) {
    bool check = !pres.ring->elim_last;
    return run_buchberger(pres, gens.ambient,
                          adjoin_defining(pres, gens.ambient, gens.gens), check);
}

ModElement normal_form(const GroebnerBasis& gb, const ModElement& v) {
    if (v.size() != gb.ambient().rank()) throw ShapeError("element rank mismatch");
    Reducer red(gb.ring(), gb.ambient().rank());
    for (const auto& e : gb.elements()) red.add(e);
    return red.reduce(v);
}

Polynomial normal_form(const GroebnerBasis& gb, const Polynomial& f) {
    ModElement v{f};
    return normal_form(gb, v)[0];
}

bool is_member(const GroebnerBasis& gb, const ModElement& v) {
    return element_is_zero(normal_form(gb, v));
}

Submodule ideal_submodule(const RingPtr& ring, const std::vector<Polynomial>& gens) {
    Submodule s;
    s.ambient.gen_degrees = {0};
    for (const auto& g : gens)
        if (!g.is_zero()) s.gens.push_back(ModElement{g});
    (void)ring;
    return s;
}

GroebnerBasis ideal_groebner_basis(const RingPresentation& pres,
                                   const std::vector<Polynomial>& gens) {
    return groebner_basis(pres, ideal_submodule(pres.ring, gens));
}

std::vector<Polynomial> canonical_ideal(const RingPresentation& pres,
                                        const std::vector<Polynomial>& gens) {
    GroebnerBasis gb = ideal_groebner_basis(pres, gens);
    std::vector<Polynomial> out;
    for (const auto& e : gb.elements()) out.push_back(e[0]);
    return out; // already monic and sorted ascending by (degree, order)
}

bool ideal_contains_one(const RingPresentation& pres, const std::vector<Polynomial>& gens) {
    GroebnerBasis gb = ideal_groebner_basis(pres, gens);
    for (const auto& e : gb.elements()) {
        if (e[0].is_zero()) continue;
        if (e[0].leading_term().m.is_one()) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Graded matrices
// ---------------------------------------------------------------------------

GradedMatrix make_graded_matrix(RingPresentation pres, std::vector<std::int64_t> row_degrees,
                                std::vector<std::int64_t> col_degrees,
                                std::vector<Polynomial> entries) {
    GradedMatrix m;
    m.pres = std::move(pres);
    m.row_degrees = std::move(row_degrees);
    m.col_degrees = std::move(col_degrees);
    m.entries = std::move(entries);
    if (m.entries.size() != m.rows() * m.cols())
        throw ShapeError("graded matrix entry count mismatch");
    m.validate();
    return m;
}

void GradedMatrix::validate() const {
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) {
            const Polynomial& e = at(i, j);
            if (e.is_zero()) continue;
            if (!same_ring(e.ring(), pres.ring)) throw RingMismatch();
            auto d = e.homogeneous_degree();
            std::int64_t want = col_degrees[j] - row_degrees[i];
            if (!d || static_cast<std::int64_t>(*d) != want)
                throw GradingError("matrix entry degree does not match labels");
        }
}

ModElement GradedMatrix::column(std::size_t j) const {
    ModElement v = zero_element(pres.ring, rows());
    for (std::size_t i = 0; i < rows(); ++i) v[i] = at(i, j);
    return v;
}

// ---------------------------------------------------------------------------
// Elimination-based operations
// ---------------------------------------------------------------------------

namespace {

// Generators live in R^(front + back); returns the reduced-GB elements whose
// front block vanishes, projected to the back block.  The position-over-term
// order makes the front block an elimination block.
std::vector<ModElement> eliminate_front(const RingPresentation& pres,
                                        const FreeModule& whole, std::size_t front,
                                        std::vector<ModElement> gens) {
    bool check = !pres.ring->elim_last;
    GroebnerBasis gb = run_buchberger(pres, whole, std::move(gens), check);
    std::vector<ModElement> out;
    for (const auto& e : gb.elements()) {
        bool front_zero = true;
        for (std::size_t i = 0; i < front && front_zero; ++i)
            if (!e[i].is_zero()) front_zero = false;
        if (!front_zero) continue;
        out.emplace_back(e.begin() + static_cast<std::ptrdiff_t>(front), e.end());
    }
    return out;
}

FreeModule concat(const FreeModule& a, const FreeModule& b) {
    FreeModule r = a;
    r.gen_degrees.insert(r.gen_degrees.end(), b.gen_degrees.begin(), b.gen_degrees.end());
    return r;
}

ModElement concat_elem(const ModElement& a, const ModElement& b) {
    ModElement r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

} // namespace

Submodule syzygy_kernel(const GradedMatrix& A) {
    A.validate();
    const RingPresentation& pres = A.pres;
    const std::size_t m = A.rows(), c = A.cols();
    FreeModule source;
    source.gen_degrees = A.col_degrees;
    FreeModule target;
    target.gen_degrees = A.row_degrees;
    FreeModule whole = concat(target, source);

    std::vector<ModElement> gens;
    for (std::size_t j = 0; j < c; ++j) {
        ModElement tag = zero_element(pres.ring, c);
        tag[j] = Polynomial::constant(pres.ring, 1);
        gens.push_back(concat_elem(A.column(j), tag));
    }
    for (const auto& q : pres.defining_basis())
        for (std::size_t i = 0; i < m; ++i) {
            ModElement e = zero_element(pres.ring, m);
            e[i] = q;
            gens.push_back(concat_elem(e, zero_element(pres.ring, c)));
        }

    Submodule result;
    result.ambient = source;
    result.gens = eliminate_front(pres, whole, m, std::move(gens));
    return result;
}

Submodule intersect(const RingPresentation& pres, const Submodule& n1, const Submodule& n2) {
    if (!(n1.ambient == n2.ambient))
        throw ShapeError("intersection requires a common ambient module");
    const std::size_t m = n1.ambient.rank();
    FreeModule whole = concat(n1.ambient, n1.ambient);

    std::vector<ModElement> gens;
    auto n1_full = adjoin_defining(pres, n1.ambient, n1.gens);
    auto n2_full = adjoin_defining(pres, n1.ambient, n2.gens);
    for (const auto& f : n1_full) gens.push_back(concat_elem(f, f));
    for (const auto& g : n2_full)
        gens.push_back(concat_elem(g, zero_element(pres.ring, m)));

    Submodule result;
    result.ambient = n1.ambient;
    result.gens = eliminate_front(pres, whole, m, std::move(gens));
    return result;
}

Submodule quotient_by_element(const RingPresentation& pres, const Submodule& n,
                              const Polynomial& f) {
    if (f.is_zero()) throw MathError("module quotient by the zero element");
    const std::size_t m = n.ambient.rank();
    std::int64_t fdeg = static_cast<std::int64_t>(f.weighted_degree());
    FreeModule back = n.ambient;
    for (auto& d : back.gen_degrees) d += fdeg;
    FreeModule whole = concat(n.ambient, back);

    std::vector<ModElement> gens;
    for (const auto& g : adjoin_defining(pres, n.ambient, n.gens))
        gens.push_back(concat_elem(g, zero_element(pres.ring, m)));
    for (std::size_t i = 0; i < m; ++i) {
        ModElement frontpart = zero_element(pres.ring, m);
        frontpart[i] = f;
        ModElement tag = zero_element(pres.ring, m);
        tag[i] = Polynomial::constant(pres.ring, 1);
        gens.push_back(concat_elem(frontpart, tag));
    }

    Submodule result;
    result.ambient = n.ambient;
    result.gens = eliminate_front(pres, whole, m, std::move(gens));
    return result;
}

Submodule quotient_by_ideal(const RingPresentation& pres, const Submodule& n,
                            const std::vector<Polynomial>& ideal) {
    std::vector<Polynomial> nz;
    for (const auto& f : ideal)
        if (!f.is_zero()) nz.push_back(f);
    if (nz.empty()) throw MathError("module quotient by the zero ideal");
    Submodule acc = quotient_by_element(pres, n, nz[0]);
    for (std::size_t k = 1; k < nz.size(); ++k)
        acc = intersect(pres, acc, quotient_by_element(pres, n, nz[k]));
    return acc;
}

Submodule saturate(const RingPresentation& pres, const Submodule& n,
                   const std::vector<Polynomial>& ideal) {
    Submodule current = n;
    GroebnerBasis cur_gb = groebner_basis(pres, current);
    for (int iter = 0; iter < 64; ++iter) {
        Submodule next = quotient_by_ideal(pres, current, ideal);
        GroebnerBasis next_gb = groebner_basis(pres, next);
        if (next_gb == cur_gb) return current;
        current = std::move(next);
        cur_gb = std::move(next_gb);
    }
    throw EngineLimit("saturation did not stabilize within 64 iterations");
}

std::vector<Polynomial> quotient_ideal_of_element(const RingPresentation& pres,
                                                  const Submodule& n, const ModElement& g) {
    const std::size_t m = n.ambient.rank();
    if (g.size() != m) throw ShapeError("element rank mismatch");
    if (element_is_zero(g)) throw MathError("ideal quotient by the zero element");
    std::int64_t gdeg = element_degree(n.ambient, g);
    FreeModule back;
    back.gen_degrees = {gdeg};
    FreeModule whole = concat(n.ambient, back);

    std::vector<ModElement> gens;
    for (const auto& h : adjoin_defining(pres, n.ambient, n.gens))
        gens.push_back(concat_elem(h, zero_element(pres.ring, 1)));
    {
        ModElement tag = zero_element(pres.ring, 1);
        tag[0] = Polynomial::constant(pres.ring, 1);
        gens.push_back(concat_elem(g, tag));
    }

    std::vector<Polynomial> out;
    for (auto& e : eliminate_front(pres, whole, m, std::move(gens)))
        out.push_back(e[0]);
    return out;
}

bool radical_membership(const RingPresentation& pres, const Polynomial& f,
                        const std::vector<Polynomial>& ideal) {
    if (f.is_zero()) return true;
    RingPtr ext = extend_ring_elim(pres.ring);
    const std::size_t t_index = ext->nvars() - 1;

    auto lift = [&](const Polynomial& g) {
        std::vector<Term> terms = g.terms();
        return Polynomial::from_terms(ext, std::move(terms));
    };

    std::vector<Polynomial> gens;
    for (const auto& g : ideal)
        if (!g.is_zero()) gens.push_back(lift(g));
    for (const auto& q : pres.defining) gens.push_back(lift(q));
    gens.push_back(Polynomial::constant(ext, 1) -
                   Polynomial::variable(ext, t_index) * lift(f));

    RingPresentation ext_pres;
    ext_pres.ring = ext;
    ext_pres.defining_gb = std::make_shared<std::vector<Polynomial>>();
    return ideal_contains_one(ext_pres, gens);
}

std::vector<Polynomial> annihilator(const RingPresentation& pres, const Submodule& k,
                                    const Submodule& n) {
    if (!(k.ambient == n.ambient))
        throw ShapeError("annihilator requires a common ambient module");
    GroebnerBasis kgb = groebner_basis(pres, k);
    for (const auto& g : n.gens)
        if (!is_member(kgb, g))
            throw NotASubmodule("annihilator: N is not contained in K");

    std::vector<Polynomial> acc{Polynomial::constant(pres.ring, 1)};
    for (const auto& g : k.gens) {
        if (element_is_zero(g)) continue;
        std::vector<Polynomial> qg = quotient_ideal_of_element(pres, n, g);
        Submodule a = ideal_submodule(pres.ring, acc);
        Submodule b = ideal_submodule(pres.ring, qg);
        Submodule meet = intersect(pres, a, b);
        acc.clear();
        for (const auto& e : meet.gens) acc.push_back(e[0]);
    }
    return canonical_ideal(pres, acc);
}

// ---------------------------------------------------------------------------
// Fitting ideals
// ---------------------------------------------------------------------------

namespace {

Polynomial det_recursive(const GradedMatrix& A, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols, std::uint32_t row_mask,
                         std::size_t col_pos, std::map<std::uint32_t, Polynomial>& memo) {
    const RingPtr& ring = A.pres.ring;
    if (col_pos == cols.size()) return Polynomial::constant(ring, 1);
    auto it = memo.find(row_mask);
    if (it != memo.end()) return it->second;
    Polynomial acc = Polynomial::zero(ring);
    int sign = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!(row_mask & (1u << r))) continue;
        const Polynomial& entry = A.at(rows[r], cols[col_pos]);
        if (!entry.is_zero()) {
            Polynomial sub = det_recursive(A, rows, cols, row_mask & ~(1u << r),
                                           col_pos + 1, memo);
            Polynomial term = entry * sub;
            acc = (sign % 2 == 0) ? acc + term : acc - term;
        }
        ++sign;
    }
    memo.emplace(row_mask, acc);
    return acc;
}

Polynomial minor_det(const GradedMatrix& A, const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols) {
    std::map<std::uint32_t, Polynomial> memo;
    std::uint32_t mask = (rows.size() == 32) ? ~0u : ((1u << rows.size()) - 1);
    return det_recursive(A, rows, cols, mask, 0, memo);
}

void combinations(std::size_t n, std::size_t k,
                  const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) {
        fn(idx);
        return;
    }
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) break;
            if (i == 0) return;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

std::vector<Polynomial> fitting_ideal(const GradedMatrix& A, std::size_t i) {
    const RingPresentation& pres = A.pres;
    const std::size_t m = A.rows(), c = A.cols();
    if (i >= m) return {Polynomial::constant(pres.ring, 1)};
    const std::size_t s = m - i;
    if (s > std::min(m, c) || s > 20) {
        if (s > 20) throw EngineLimit("fitting ideal minor size too large");
        return {}; // no s x s minors: zero ideal
    }

    // Reduce each minor modulo the defining ideal so output is canonical.
    RingPresentation free_pres;
    free_pres.ring = pres.ring;
    free_pres.defining_gb = std::make_shared<std::vector<Polynomial>>();
    GroebnerBasis qgb = ideal_groebner_basis(free_pres, pres.defining);

    std::vector<Polynomial> minors;
    combinations(m, s, [&](const std::vector<std::size_t>& rows) {
        combinations(c, s, [&](const std::vector<std::size_t>& cols) {
            Polynomial d = minor_det(A, rows, cols);
            if (!d.is_zero()) d = normal_form(qgb, d);
            if (!d.is_zero()) minors.push_back(d);
        });
    });
    return canonical_ideal(pres, minors);
}

} // namespace pgsheaf
