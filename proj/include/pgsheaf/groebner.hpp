#ifndef PGSHEAF_GROEBNER_HPP
#define PGSHEAF_GROEBNER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pgsheaf/poly.hpp"

namespace pgsheaf {

// A ring presented as (ambient weighted polynomial ring, defining ideal).
// Every submodule computation implicitly adjoins defining-ideal multiples of
// the ambient generators, emulating the quotient ring inside the ambient one.
struct RingPresentation {
    RingPtr ring;
    std::vector<Polynomial> defining;
    std::shared_ptr<const std::vector<Polynomial>> defining_gb; // reduced, monic

    const std::vector<Polynomial>& defining_basis() const { return *defining_gb; }
};

RingPresentation make_presentation(const RingPtr& ring, std::vector<Polynomial> defining);

// Graded free module: one integer degree label per generator.
struct FreeModule {
    std::vector<std::int64_t> gen_degrees;

    std::size_t rank() const { return gen_degrees.size(); }
    bool operator==(const FreeModule&) const = default;
};

// Element of a free module; entry i is the coefficient of generator i.
using ModElement = std::vector<Polynomial>;

ModElement zero_element(const RingPtr& ring, std::size_t rank);
bool element_is_zero(const ModElement& v);
// Degree of a homogeneous nonzero element; throws NonHomogeneous/ZeroPolynomial.
std::int64_t element_degree(const FreeModule& fm, const ModElement& v);
bool element_is_homogeneous(const FreeModule& fm, const ModElement& v);

ModElement element_add(const ModElement& a, const ModElement& b);
ModElement element_sub(const ModElement& a, const ModElement& b);
ModElement element_term_multiple(const ModElement& v, const Monomial& m, std::uint32_t c);

struct Submodule {
    FreeModule ambient;
    std::vector<ModElement> gens;
};

// Leading position of a module element under the position-over-term order
// (lower component index prioritized, weighted grevlex within a component).
struct ModLead {
    std::size_t comp;
    Monomial m;
    std::uint32_t c;
};
std::optional<ModLead> leading_position(const ModElement& v);

// Reduced Groebner basis; elements are monic and pairwise fully reduced,
// sorted ascending by the module term order on leading terms.
class GroebnerBasis {
public:
    GroebnerBasis(RingPtr ring, FreeModule ambient, std::vector<ModElement> elems);

    const RingPtr& ring() const { return ring_; }
    const FreeModule& ambient() const { return ambient_; }
    const std::vector<ModElement>& elements() const { return elems_; }
    const std::vector<ModLead>& leads() const { return leads_; }
    const std::vector<std::vector<std::size_t>>& comp_index() const { return by_comp_; }

    bool operator==(const GroebnerBasis& o) const;

private:
    RingPtr ring_;
    FreeModule ambient_;
    std::vector<ModElement> elems_;
    std::vector<ModLead> leads_;
    std::vector<std::vector<std::size_t>> by_comp_;
};

// Buchberger with normal selection, product criterion (rank-1 inputs) and
// chain criterion.  Adjoins the defining ideal times every ambient generator.
// Inputs must be homogeneous unless the ring is an elimination extension.
GroebnerBasis groebner_basis(const RingPresentation& pres, const Submodule& gens);

// Unique fully reduced remainder; zero iff the element is in the submodule.
ModElement normal_form(const GroebnerBasis& gb, const ModElement& v);
Polynomial normal_form(const GroebnerBasis& gb, const Polynomial& f);
bool is_member(const GroebnerBasis& gb, const ModElement& v);

// Ideals are rank-1 submodules with generator degree 0.
Submodule ideal_submodule(const RingPtr& ring, const std::vector<Polynomial>& gens);
GroebnerBasis ideal_groebner_basis(const RingPresentation& pres,
                                   const std::vector<Polynomial>& gens);
// Canonical generators: reduced GB, monic, ascending (weighted degree, order).
std::vector<Polynomial> canonical_ideal(const RingPresentation& pres,
                                        const std::vector<Polynomial>& gens);

// Homogeneous matrix over the presentation, mapping the free module on the
// column degrees to the free module on the row degrees.  Entry (i,j) is zero
// or homogeneous of weighted degree col_degrees[j] - row_degrees[i].
struct GradedMatrix {
    RingPresentation pres;
    std::vector<std::int64_t> row_degrees, col_degrees;
    std::vector<Polynomial> entries; // row-major

    std::size_t rows() const { return row_degrees.size(); }
    std::size_t cols() const { return col_degrees.size(); }
    const Polynomial& at(std::size_t i, std::size_t j) const {
        return entries[i * cols() + j];
    }
    Polynomial& at(std::size_t i, std::size_t j) { return entries[i * cols() + j]; }
    ModElement column(std::size_t j) const;
    void validate() const; // throws GradingError
};

GradedMatrix make_graded_matrix(RingPresentation pres, std::vector<std::int64_t> row_degrees,
                                std::vector<std::int64_t> col_degrees,
                                std::vector<Polynomial> entries);

// Generators of {v : A v = 0 in the quotient ring}, a submodule of the free
// module on the column degrees.
Submodule syzygy_kernel(const GradedMatrix& A);

// N1 cap N2 via a doubled-ambient elimination run.
Submodule intersect(const RingPresentation& pres, const Submodule& n1, const Submodule& n2);

// (N : f) = {v : f v in N}.
Submodule quotient_by_element(const RingPresentation& pres, const Submodule& n,
                              const Polynomial& f);
// (N : I); I must be nonzero.
Submodule quotient_by_ideal(const RingPresentation& pres, const Submodule& n,
                            const std::vector<Polynomial>& ideal);
// (N : I^inf): iterate (N : I) until the reduced GB stabilizes.
Submodule saturate(const RingPresentation& pres, const Submodule& n,
                   const std::vector<Polynomial>& ideal);

// The ideal {f in R : f g in N} for an element g of the ambient module.
std::vector<Polynomial> quotient_ideal_of_element(const RingPresentation& pres,
                                                  const Submodule& n, const ModElement& g);

// f in sqrt(I + defining): Rabinowitsch test in one extra unweighted variable.
bool radical_membership(const RingPresentation& pres, const Polynomial& f,
                        const std::vector<Polynomial>& ideal);

// ann(K/N); requires N contained in K (membership-checked).
std::vector<Polynomial> annihilator(const RingPresentation& pres, const Submodule& k,
                                    const Submodule& n);

// Fitt_i of the module presented by A (rows = generators, columns = relations):
// ideal of (rows - i) x (rows - i) minors, reduced modulo the defining ideal.
std::vector<Polynomial> fitting_ideal(const GradedMatrix& A, std::size_t i);

bool ideal_contains_one(const RingPresentation& pres, const std::vector<Polynomial>& gens);

} // namespace pgsheaf

#endif
