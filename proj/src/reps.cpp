#include "pgsheaf/reps.hpp"

#include <algorithm>

namespace pgsheaf {

namespace {

void check_shapes(const Representation& r) {
    if (!r.group) throw MathError("representation has no group");
    if (r.action.size() != r.group->generators())
        throw ShapeError("one action matrix per algebra generator required");
    for (const auto& m : r.action) {
        if (m.rows() != r.dim || m.cols() != r.dim)
            throw ShapeError("action matrix shape does not match dim");
        if (r.dim > 0 && m.modulus() != r.group->p)
            throw RingMismatch("action matrix has wrong modulus");
    }
}

// Coordinates of m in the basis of the faithful realization.
std::vector<FieldElement> coords_in_basis(const std::vector<Matrix>& basis, const Matrix& m) {
    const std::size_t n = basis[0].rows();
    Matrix vecs(n * n, basis.size(), basis[0].modulus());
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) vecs.set(i * n + j, k, basis[k].at(i, j));
    std::vector<FieldElement> b, x;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b.push_back(m.at(i, j));
    if (!mat_solve(vecs, b, x))
        throw NotRestrictedSubalgebra("matrix is not in the span of the basis");
    return x;
}

Matrix combine(const std::vector<Matrix>& mats, const std::vector<FieldElement>& coords,
               std::size_t dim, std::uint32_t p) {
    Matrix acc(dim, dim, p);
    for (std::size_t k = 0; k < mats.size(); ++k)
        if (!coords[k].is_zero()) acc = acc + mats[k].scaled(coords[k]);
    return acc;
}

} // namespace

void validate_rep(const Representation& r) {
    check_shapes(r);
    if (r.dim == 0) return;
    const std::uint32_t p = r.group->p;
    if (r.group->family == Family::LieMatrix) {
        const auto& basis = r.group->basis;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = 0; j < basis.size(); ++j) {
                Matrix bracket = basis[i] * basis[j] - basis[j] * basis[i];
                auto c = coords_in_basis(basis, bracket);
                Matrix lhs = r.action[i] * r.action[j] - r.action[j] * r.action[i];
                if (!(lhs == combine(r.action, c, r.dim, p)))
                    throw MathError("bracket relation violated for generators " +
                                    std::to_string(i) + "," + std::to_string(j));
            }
            auto cp = coords_in_basis(basis, mat_power(basis[i], p));
            if (!(mat_power(r.action[i], p) == combine(r.action, cp, r.dim, p)))
                throw MathError("p-power relation violated for generator " +
                                std::to_string(i));
        }
    } else {
        for (std::size_t i = 0; i < r.action.size(); ++i) {
            for (std::size_t j = i + 1; j < r.action.size(); ++j)
                if (!(r.action[i] * r.action[j] == r.action[j] * r.action[i]))
                    throw MathError("action matrices " + std::to_string(i) + "," +
                                    std::to_string(j) + " do not commute");
            if (!mat_power(r.action[i], p).is_zero())
                throw MathError("action matrix " + std::to_string(i) +
                                " is not p-nilpotent");
        }
    }
}

Representation dual(const Representation& r) {
    check_shapes(r);
    Representation d = r;
    for (auto& m : d.action) m = m.transpose().scaled(FieldElement(-1, r.group->p));
    return d;
}

Representation tensor(const Representation& r, const Representation& s) {
    if (!same_group(r.group, s.group)) throw GroupMismatch();
    check_shapes(r);
    check_shapes(s);
    Representation t;
    t.group = r.group;
    t.dim = r.dim * s.dim;
    Matrix ir = Matrix::identity(r.dim, r.group->p);
    Matrix is = Matrix::identity(s.dim, r.group->p);
    for (std::size_t k = 0; k < r.action.size(); ++k)
        t.action.push_back(r.action[k].kronecker(is) + ir.kronecker(s.action[k]));
    return t;
}

Representation direct_sum(const Representation& r, const Representation& s) {
    if (!same_group(r.group, s.group)) throw GroupMismatch();
    check_shapes(r);
    check_shapes(s);
    Representation t;
    t.group = r.group;
    t.dim = r.dim + s.dim;
    for (std::size_t k = 0; k < r.action.size(); ++k)
        t.action.push_back(Matrix::block_diag(r.action[k], s.action[k]));
    return t;
}

std::uint32_t top_dimension(const Representation& r) {
    check_shapes(r);
    if (r.dim == 0) return 0;
    const std::size_t s = r.action.size();
    Matrix stacked(r.dim, r.dim * s, r.group->p);
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t i = 0; i < r.dim; ++i)
            for (std::size_t j = 0; j < r.dim; ++j)
                stacked.set(i, k * r.dim + j, r.action[k].at(i, j));
    return r.dim - static_cast<std::uint32_t>(mat_rank(stacked));
}

namespace {

// Monomial basis of kG = k[u_1..u_s]/(u_i^p), exponents enumerated in lex
// order; multiplication by u_i shifts one exponent.
struct GroupRing {
    std::uint32_t p;
    std::size_t s;
    std::vector<std::vector<std::uint32_t>> monomials;

    GroupRing(std::uint32_t p_, std::size_t s_) : p(p_), s(s_) {
        std::vector<std::uint32_t> cur(s, 0);
        while (true) {
            monomials.push_back(cur);
            std::size_t i = s;
            while (i > 0) {
                --i;
                if (cur[i] + 1 < p) {
                    ++cur[i];
                    for (std::size_t j = i + 1; j < s; ++j) cur[j] = 0;
                    break;
                }
                if (i == 0) return;
            }
        }
    }

    std::size_t index(const std::vector<std::uint32_t>& m) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < s; ++i) idx = idx * p + m[i];
        return idx;
    }
};

} // namespace

Representation heller(const Representation& r) {
    check_shapes(r);
    if (!r.group->is_unipotent_algebra())
        throw Unsupported("Heller shifts are implemented for ea(r)/ga(r) only");
    validate_rep(r);
    const std::uint32_t p = r.group->p;
    const std::size_t s = r.action.size();
    GroupRing kg(p, s);
    const std::size_t gdim = kg.monomials.size();

    // Lexicographically first standard-basis lift of top(R).
    std::vector<std::size_t> section;
    if (r.dim > 0) {
        Matrix rad(r.dim, r.dim * s + r.dim, p);
        for (std::size_t k = 0; k < s; ++k)
            for (std::size_t i = 0; i < r.dim; ++i)
                for (std::size_t j = 0; j < r.dim; ++j)
                    rad.set(i, k * r.dim + j, r.action[k].at(i, j));
        std::size_t base = r.dim * s;
        std::size_t rank = mat_rank(rad);
        for (std::size_t cand = 0; cand < r.dim && base + 1 <= rad.cols(); ++cand) {
            rad.set(cand, base, 1);
            std::size_t nr = mat_rank(rad);
            if (nr > rank) {
                section.push_back(cand);
                rank = nr;
                ++base;
                if (base >= rad.cols()) break;
            } else {
                rad.set(cand, base, 0);
            }
        }
    }
    const std::size_t t = section.size();
    const std::size_t pdim = t * gdim;

    // pi : kG^t -> R, monomial u^a tensor b_l -> rho(u)^a e_{section[l]}.
    Matrix pi(r.dim > 0 ? r.dim : 0, pdim, p);
    std::vector<Matrix> action_pows; // rho(u^a) for each monomial a
    for (const auto& mono : kg.monomials) {
        Matrix m = Matrix::identity(r.dim, p);
        for (std::size_t k = 0; k < s; ++k)
            for (std::uint32_t e = 0; e < mono[k]; ++e) m = m * r.action[k];
        action_pows.push_back(std::move(m));
    }
    for (std::size_t a = 0; a < gdim; ++a)
        for (std::size_t l = 0; l < t; ++l)
            for (std::size_t i = 0; i < r.dim; ++i)
                pi.set(i, a * t + l, action_pows[a].at(i, section[l]));

    auto kernel = mat_kernel_basis(pi);
    const std::size_t odim = kernel.size();

    // u_i action on kG^t in the monomial basis.
    auto act_u = [&](std::size_t k, const std::vector<FieldElement>& v) {
        std::vector<FieldElement> w(pdim, FieldElement(0, p));
        for (std::size_t a = 0; a < gdim; ++a) {
            if (kg.monomials[a][k] + 1 >= p) continue; // u_i^p = 0
            auto m2 = kg.monomials[a];
            ++m2[k];
            std::size_t a2 = kg.index(m2);
            for (std::size_t l = 0; l < t; ++l)
                w[a2 * t + l] = w[a2 * t + l] + v[a * t + l];
        }
        return w;
    };

    // Express u_i * (kernel basis vector) in the kernel basis.
    Matrix kmat(pdim, odim, p);
    for (std::size_t c = 0; c < odim; ++c)
        for (std::size_t i = 0; i < pdim; ++i) kmat.set(i, c, kernel[c][i]);

    Representation omega;
    omega.group = r.group;
    omega.dim = static_cast<std::uint32_t>(odim);
    for (std::size_t k = 0; k < s; ++k) {
        Matrix m(odim, odim, p);
        for (std::size_t c = 0; c < odim; ++c) {
            auto w = act_u(k, kernel[c]);
            std::vector<FieldElement> x;
            if (!mat_solve(kmat, w, x))
                throw InternalInvariantViolation("kernel is not closed under the action");
            for (std::size_t i = 0; i < odim; ++i) m.set(i, c, x[i]);
        }
        omega.action.push_back(std::move(m));
    }
    return omega;
}

GradedMatrix assemble_theta(const Representation& r) {
    check_shapes(r);
    const RingPtr& ring = r.group->presentation.ring;
    const std::size_t n = r.dim;
    std::vector<Polynomial> entries(n * n, Polynomial::zero(ring));
    for (std::size_t k = 0; k < r.action.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::uint32_t c = r.action[k].at(i, j).value;
                if (c) entries[i * n + j] = entries[i * n + j] + r.group->theta_coeffs[k].scaled(c);
            }
    std::vector<std::int64_t> rows(n, 0), cols(n, r.group->theta_degree());
    return make_graded_matrix(r.group->presentation, std::move(rows), std::move(cols),
                              std::move(entries));
}

Matrix specialize_theta(const Representation& r, const NullconePoint& v) {
    check_shapes(r);
    const std::uint32_t p = r.group->p;
    Matrix acc(r.dim, r.dim, p);
    for (std::size_t k = 0; k < r.action.size(); ++k) {
        FieldElement c = r.group->theta_coeffs[k].specialize(v.coords);
        if (!c.is_zero()) acc = acc + r.action[k].scaled(c);
    }
    return acc;
}

LocalJordanReport jordan_type_at(const Representation& r, const NullconePoint& v) {
    validate_point(*r.group, v.coords);
    const std::uint32_t p = r.group->p;
    Matrix theta = specialize_theta(r, v);
    LocalJordanReport rep;
    rep.point = v;
    Matrix pw = Matrix::identity(r.dim, p);
    for (std::uint32_t j = 0; j <= p; ++j) {
        rep.jranks.push_back(mat_rank(pw));
        if (j < p) pw = pw * theta;
    }
    rep.jordan_type = nilpotent_jordan_type(theta, p);
    rep.projective = (r.dim % p == 0) &&
                     rep.jordan_type ==
                         Partition(std::vector<std::uint32_t>(r.dim / p, p));
    return rep;
}

bool is_projective_at(const Representation& r, const NullconePoint& v) {
    return jordan_type_at(r, v).projective;
}

bool is_projective_exact(const Representation& r) {
    if (!r.group->is_unipotent_algebra())
        throw Unsupported("exact projectivity test needs a local group ring; "
                          "use sampled Jordan types or the sheaf criteria");
    std::uint64_t kg_dim = 1;
    for (std::size_t i = 0; i < r.group->generators(); ++i) kg_dim *= r.group->p;
    return r.dim == kg_dim * top_dimension(r);
}

std::optional<Partition> constant_jt_check(const Representation& r,
                                           const std::vector<NullconePoint>& sample) {
    if (sample.empty()) throw MathError("constant Jordan type check needs a sample");
    std::optional<Partition> common;
    for (const auto& v : sample) {
        Partition jt = jordan_type_at(r, v).jordan_type;
        if (!common) {
            common = jt;
        } else if (!(*common == jt)) {
            return std::nullopt;
        }
    }
    return common;
}

namespace {

Representation sl2_simple(const GroupPtr& g, std::uint32_t lambda) {
    const std::uint32_t p = g->p;
    if (lambda >= p) throw Unsupported("sl2_simple(k) requires 0 <= k <= p-1");
    const std::uint32_t n = lambda + 1;
    Representation rep;
    rep.group = g;
    rep.dim = n;
    Matrix e(n, n, p), f(n, n, p), h(n, n, p);
    for (std::uint32_t j = 0; j < n; ++j) {
        h.set(j, j, static_cast<std::int64_t>(lambda) - 2 * static_cast<std::int64_t>(j));
        if (j + 1 < n) f.set(j + 1, j, 1);
        if (j > 0)
            e.set(j - 1, j,
                  static_cast<std::int64_t>(j) *
                      (static_cast<std::int64_t>(lambda) + 1 - static_cast<std::int64_t>(j)));
    }
    rep.action = {e, f, h};
    return rep;
}

} // namespace

Representation builtin_module(const std::string& name, const GroupPtr& group) {
    if (!group) throw InputError("builtin module requires a group");
    Representation rep;
    rep.group = group;
    if (name == "trivial") {
        rep.dim = 1;
        rep.action.assign(group->generators(), Matrix(1, 1, group->p));
        return rep;
    }
    if (name == "regular") {
        if (!group->is_unipotent_algebra())
            throw Unsupported("the regular module is built in for ea(r)/ga(r) only");
        GroupRing kg(group->p, group->generators());
        const std::size_t n = kg.monomials.size();
        rep.dim = static_cast<std::uint32_t>(n);
        for (std::size_t k = 0; k < group->generators(); ++k) {
            Matrix m(n, n, group->p);
            for (std::size_t a = 0; a < n; ++a) {
                if (kg.monomials[a][k] + 1 >= group->p) continue;
                auto m2 = kg.monomials[a];
                ++m2[k];
                m.set(kg.index(m2), a, 1);
            }
            rep.action.push_back(std::move(m));
        }
        return rep;
    }
    if (name == "sl3_standard") {
        if (group->name != "sl3") throw Unsupported("sl3_standard requires the sl3 group");
        rep.dim = 3;
        rep.action = group->basis;
        return rep;
    }
    auto paren = name.find('(');
    if (paren != std::string::npos && name.substr(0, paren) == "sl2_simple") {
        if (group->name != "sl2") throw Unsupported("sl2_simple requires the sl2 group");
        auto close = name.find(')', paren);
        if (close == std::string::npos) throw InputError("unbalanced parenthesis in module name");
        std::uint32_t lambda = static_cast<std::uint32_t>(
            std::stoul(name.substr(paren + 1, close - paren - 1)));
        return sl2_simple(group, lambda);
    }
    throw InputError("unknown builtin module '" + name + "'");
}

} // namespace pgsheaf
