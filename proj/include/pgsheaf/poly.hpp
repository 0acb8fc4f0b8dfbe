#ifndef PGSHEAF_POLY_HPP
#define PGSHEAF_POLY_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgsheaf/field.hpp"

namespace pgsheaf {

inline constexpr std::size_t kMaxVars = 16;

// Immutable description of a weighted polynomial ring over F_p.  The monomial
// order is weighted-degree-first with a graded-reverse-lexicographic tie break
// on raw exponents.  When elim_last is set the exponent of the last variable
// is compared first (block order); that mode exists only for the Rabinowitsch
// radical-membership runs.
struct RingContext {
    std::uint32_t p;
    std::vector<std::string> var_names;
    std::vector<std::uint32_t> weights;
    bool elim_last = false;

    std::size_t nvars() const { return var_names.size(); }
};

using RingPtr = std::shared_ptr<const RingContext>;

RingPtr make_ring(std::uint32_t p, std::vector<std::string> names,
                  std::vector<std::uint32_t> weights, bool elim_last = false);
// Same ring with one fresh unweighted elimination variable appended.
RingPtr extend_ring_elim(const RingPtr& ring);

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    return a->p == b->p && a->var_names == b->var_names && a->weights == b->weights &&
           a->elim_last == b->elim_last;
}

struct Monomial {
    std::array<std::uint8_t, kMaxVars> e{};
    std::uint32_t wdeg = 0;
    std::uint32_t rawdeg = 0;

    static Monomial one() { return Monomial{}; }
    static Monomial variable(const RingContext& ring, std::size_t i, std::uint32_t exp = 1);

    bool is_one() const { return rawdeg == 0; }
    bool operator==(const Monomial& o) const { return e == o.e; }
};

Monomial mono_mul(const RingContext& ring, const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);           // a | b
Monomial mono_div(const RingContext& ring, const Monomial& b, const Monomial& a); // b / a
Monomial mono_lcm(const RingContext& ring, const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);

// Total order (greater = larger in the term order).
std::strong_ordering monomial_compare(const RingContext& ring, const Monomial& a,
                                      const Monomial& b);

struct Term {
    Monomial m;
    std::uint32_t c; // in [1, p-1]
};

// Sparse polynomial in canonical form: terms sorted descending by the
// monomial order, no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }
    static Polynomial constant(const RingPtr& ring, std::int64_t c);
    static Polynomial variable(const RingPtr& ring, std::size_t i, std::uint32_t exp = 1);
    static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    const Term& leading_term() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(std::uint32_t c) const;
    Polynomial term_multiple(const Monomial& m, std::uint32_t c) const;
    Polynomial monic() const;

    bool operator==(const Polynomial& o) const;

    // Weighted degree of a homogeneous polynomial.  Throws ZeroPolynomial on 0
    // and NonHomogeneous if the terms disagree.
    std::uint32_t weighted_degree() const;
    bool is_homogeneous() const;
    std::optional<std::uint32_t> homogeneous_degree() const; // nullopt if mixed

    FieldElement specialize(const std::vector<FieldElement>& point) const;

    std::string to_string() const;

private:
    RingPtr ring_;
    std::vector<Term> terms_;

    void normalize();
};

// Parses sums of terms like "x1^2*y3 + 2*h7*h8 - z".  Integer coefficients are
// reduced mod p.  Throws InputError on malformed input or unknown variables.
Polynomial parse_polynomial(const RingPtr& ring, const std::string& text);

// Rank over the fraction field of the ambient ring (Bareiss fraction-free
// elimination).  Entries must share a ring context.
std::size_t generic_rank(const std::vector<std::vector<Polynomial>>& A);

// Exact division q = f / g; throws MathError if g does not divide f.
Polynomial divide_exact(const Polynomial& f, const Polynomial& g);

} // namespace pgsheaf

#endif
