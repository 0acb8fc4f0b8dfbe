#ifndef PGSHEAF_SHEAF_HPP
#define PGSHEAF_SHEAF_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgsheaf/groebner.hpp"

namespace pgsheaf {

// Subquotient K/N of a graded free module over the support-scheme ring.
// Both submodules implicitly contain the defining-ideal multiples.
struct SubquotientSheaf {
    RingPresentation pres;
    FreeModule ambient;
    Submodule K, N;
    std::int64_t shift = 0;
    std::int64_t theta_degree = 1; // p^{r-1} of the originating operator

    std::shared_ptr<const GroebnerBasis> gbK, gbN;
};

// Validates N subset K by membership and caches both Groebner bases.
SubquotientSheaf make_subquotient(RingPresentation pres, Submodule k, Submodule n,
                                  std::int64_t theta_degree, std::int64_t shift = 0);

enum class ThetaSide { KerSide, ImSide };

// Matrix of the j-fold composite of the global operator with the shift
// bookkeeping baked into the degree labels.  Entries are reduced modulo the
// defining ideal; j = p always yields the zero matrix.
GradedMatrix theta_power(const GradedMatrix& theta, std::uint32_t j, ThetaSide side,
                         std::uint32_t p);

struct KerImCoker {
    Submodule ker;          // submodule of M-tilde (generator degrees 0)
    Submodule im;           // submodule of M-tilde, generators in degree j*p^{r-1}
    SubquotientSheaf coker; // ambient / im
};

KerImCoker ker_im_coker(const GradedMatrix& theta, std::uint32_t j, std::uint32_t p);

// F_i = (ker cap im^{i-1}) / (ker cap im^i), 1 <= i <= p.
SubquotientSheaf f_sheaf(const GradedMatrix& theta, std::uint32_t i, std::uint32_t p);

// H^(i) = ker^i / im^{p-i}, 1 <= i <= p-1.  The containment im^{p-i} in ker^i
// is verified by membership.
SubquotientSheaf h_sheaf(const GradedMatrix& theta, std::uint32_t i, std::uint32_t p);

// Every generator of K lies in N.
bool is_module_zero(const SubquotientSheaf& s);

// Every generator of K lies in the saturation of N at the irrelevant ideal,
// decided generator-wise: k is in sat(N) iff every ambient variable lies in
// the radical of (N : k).
bool is_sheaf_zero(const SubquotientSheaf& s);

// ann(K/N) in canonical form.
std::vector<Polynomial> support_ideal(const SubquotientSheaf& s);

// Presentation of K/N: rows = generators of K, columns = one relation per
// generator of the module {c : sum c_i k_i in N}, minimalized so no relation
// entry is a nonzero constant.
GradedMatrix subquotient_presentation(const SubquotientSheaf& s);

// Rank r such that Fitt_{r-1} vanishes on the reduced scheme and Fitt_r
// saturates to the unit ideal; nullopt when no such r exists.
std::optional<std::size_t> locally_free_rank(const SubquotientSheaf& s);

struct Fingerprint {
    std::int64_t window_lo = 0, window_hi = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> hilbert; // (degree, dim)
    std::vector<std::string> fitting_signatures;

    std::optional<std::int64_t> value_at(std::int64_t d) const;
};

// Hilbert table of K/N modulo its irrelevant-torsion submodule over the
// window [min gen degree - p*p^{r-1}, max gen degree + p*p^{r-1}], plus
// saturation-invariant Fitting-ideal signatures.
Fingerprint fingerprint(const SubquotientSheaf& s, std::uint32_t p);

// True when a.hilbert(d) == b.hilbert(d + twist) on the window overlap and
// the Fitting signatures agree.  Twists do not move Fitting ideals.
bool fingerprint_matches(const Fingerprint& a, const Fingerprint& b, std::int64_t twist);

// dim_k of the degree-d slice of K/N (no torsion quotient).
std::int64_t subquotient_hilbert(const SubquotientSheaf& s, std::int64_t d);

// The ambient variables as an ideal.
std::vector<Polynomial> irrelevant_ideal(const RingPresentation& pres);

// Number of degree-d monomials of the free module not in the lead-term module
// of gb; with an empty basis this counts all monomials.
std::int64_t free_module_monomial_count(const RingPtr& ring, const FreeModule& fm,
                                        std::int64_t d);
std::int64_t submodule_slice_dim(const GroebnerBasis& gb, std::int64_t d);

struct SheafReport {
    bool module_zero = false;
    bool sheaf_zero = false;
    std::vector<std::string> support_ideal;
    std::optional<std::size_t> locally_free_rank;
    std::optional<Fingerprint> fingerprint;
};

SheafReport sheaf_report(const SubquotientSheaf& s, std::uint32_t p, bool with_support,
                         bool with_fingerprint);

} // namespace pgsheaf

#endif
