#ifndef PGSHEAF_REPS_HPP
#define PGSHEAF_REPS_HPP

#include <optional>
#include <string>
#include <vector>

#include "pgsheaf/groups.hpp"
#include "pgsheaf/sheaf.hpp"

namespace pgsheaf {

// Finite-dimensional module: one action matrix per algebra generator of the
// group family.  The zero module (dim 0) is allowed so that Heller shifts of
// projectives close up.
struct Representation {
    GroupPtr group;
    std::uint32_t dim = 0;
    std::vector<Matrix> action;
};

// Exact matrix identities: brackets and p-powers against the faithful
// realization for LieMatrix families, pairwise commutation and rho^p = 0 for
// the unipotent families.  Throws with a specific diagnostic on violation.
void validate_rep(const Representation& r);

Representation dual(const Representation& r);
Representation tensor(const Representation& r, const Representation& s);
Representation direct_sum(const Representation& r, const Representation& s);

// Heller shift over a unipotent family: kernel of kG tensor top(R) -> R with
// the lexicographically first basis lift of top(R).
Representation heller(const Representation& r);

// Theta_M = sum c_i(x) rho_i as a graded matrix (row degrees 0, column
// degrees p^{r-1}).
GradedMatrix assemble_theta(const Representation& r);

struct LocalJordanReport {
    NullconePoint point;
    Partition jordan_type;
    std::vector<std::size_t> jranks; // rank theta^0 .. rank theta^p
    bool projective = false;
};

Matrix specialize_theta(const Representation& r, const NullconePoint& v);
LocalJordanReport jordan_type_at(const Representation& r, const NullconePoint& v);
bool is_projective_at(const Representation& r, const NullconePoint& v);

// Free = projective over the local group ring of a unipotent family.
bool is_projective_exact(const Representation& r);

std::optional<Partition> constant_jt_check(const Representation& r,
                                           const std::vector<NullconePoint>& sample);

// Built-ins: "trivial", "regular" (unipotent families), "sl3_standard",
// "sl2_simple(k)" for 0 <= k <= p-1.
Representation builtin_module(const std::string& name, const GroupPtr& group);

std::uint32_t top_dimension(const Representation& r);

} // namespace pgsheaf

#endif
