#ifndef PGSHEAF_GROUPS_HPP
#define PGSHEAF_GROUPS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pgsheaf/groebner.hpp"

namespace pgsheaf {

enum class Family { LieMatrix, ElemAbelian, FrobeniusGa };

// A built-in group family together with its reduced coordinate-ring
// presentation, variable weights and the coefficient vector of the global
// operator.  LieMatrix families are given by a faithful matrix realization
// whose p-operation is the p-th matrix power.
struct GroupSchemeDescriptor {
    Family family;
    std::string name;     // "sl2", "sl3", "u(3)", "e(2)", "ea(2)", "ga(2)", "lie"
    std::uint32_t p = 2;
    std::uint32_t r = 1;  // height parameter; p^{r-1} is the operator degree
    std::vector<Matrix> basis; // LieMatrix only: basis of the algebra
    RingPresentation presentation;
    std::vector<Polynomial> theta_coeffs; // one per algebra generator

    std::size_t generators() const { return theta_coeffs.size(); }
    std::int64_t theta_degree() const;
    bool is_unipotent_algebra() const { return family != Family::LieMatrix; }
};

using GroupPtr = std::shared_ptr<const GroupSchemeDescriptor>;

bool same_group(const GroupPtr& a, const GroupPtr& b);

// Built-in constructors.
GroupPtr make_sl2(std::uint32_t p);
GroupPtr make_sl3(std::uint32_t p); // fixture family, requires p = 3
GroupPtr make_u(std::uint32_t n, std::uint32_t p);
GroupPtr make_e(std::uint32_t n, std::uint32_t p);
GroupPtr make_elem_abelian(std::uint32_t rank, std::uint32_t p);
GroupPtr make_frobenius_ga(std::uint32_t rank, std::uint32_t p);
// Custom restricted matrix Lie algebra; validates closure under commutators
// and p-th powers.
GroupPtr make_lie_matrix(std::vector<Matrix> basis, std::uint32_t p,
                         std::vector<std::string> var_names, std::string name = "lie");

// Parses "sl2", "sl3", "ea(2)", "ga(3)", "u(4)", "e(3)".
GroupPtr builtin_group(const std::string& spec, std::uint32_t p);

// Ideal of the entries of the symbolic p-th power of sum x_i B_i, for a
// LieMatrix family.  Throws NotRestrictedSubalgebra on closure failure.
std::vector<Polynomial> nullcone_ideal(const GroupSchemeDescriptor& g);

struct NullconePoint {
    std::vector<FieldElement> coords;
};

// Checks length, non-zeroness and that every defining generator vanishes.
NullconePoint validate_point(const GroupSchemeDescriptor& g,
                             const std::vector<FieldElement>& coords);
NullconePoint validate_point(const GroupSchemeDescriptor& g,
                             const std::vector<std::int64_t>& coords);

// Deterministic sampler.  For the sl2/sl3 built-ins the first draws are the
// nilpotent class representatives and the rest are random invertible
// conjugates of them; otherwise uniform nonzero vectors, rejection-sampled
// against the defining ideal.
std::vector<NullconePoint> sample_points(const GroupSchemeDescriptor& g, std::size_t count,
                                         std::uint64_t seed);

// The symbolic generic matrix sum x_i B_i of a LieMatrix family.
std::vector<std::vector<Polynomial>> generic_matrix(const GroupSchemeDescriptor& g);

} // namespace pgsheaf

#endif
