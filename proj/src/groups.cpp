#include "pgsheaf/groups.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace pgsheaf {

std::int64_t GroupSchemeDescriptor::theta_degree() const {
    std::int64_t d = 1;
    for (std::uint32_t i = 1; i < r; ++i) d *= p;
    return d;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->family == b->family && a->name == b->name && a->p == b->p && a->r == b->r &&
           a->basis == b->basis;
}

namespace {

std::vector<std::string> indexed_names(const std::string& stem, std::uint32_t n) {
    std::vector<std::string> names;
    for (std::uint32_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
    return names;
}

// Columns are the vectorized basis matrices; used to express a matrix in the
// basis and to check closure.
Matrix basis_vectorization(const std::vector<Matrix>& basis) {
    const std::size_t n = basis[0].rows();
    Matrix v(n * n, basis.size(), basis[0].modulus());
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                v.set(i * n + j, k, basis[k].at(i, j));
    return v;
}

bool in_span(const Matrix& vecs, const Matrix& m, std::vector<FieldElement>& coords) {
    std::vector<FieldElement> b;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) b.push_back(m.at(i, j));
    return mat_solve(vecs, b, coords);
}

void check_restricted_closure(const std::vector<Matrix>& basis, std::uint32_t p) {
    if (basis.empty()) throw NotRestrictedSubalgebra("empty basis");
    const std::size_t n = basis[0].rows();
    for (const auto& b : basis)
        if (b.rows() != n || b.cols() != n)
            throw ShapeError("basis matrices must share a square shape");
    Matrix vecs = basis_vectorization(basis);
    if (mat_rank(vecs) != basis.size())
        throw NotRestrictedSubalgebra("basis matrices are linearly dependent");
    std::vector<FieldElement> coords;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Matrix bracket = basis[i] * basis[j] - basis[j] * basis[i];
            if (!in_span(vecs, bracket, coords))
                throw NotRestrictedSubalgebra("commutator leaves the span");
        }
        if (!in_span(vecs, mat_power(basis[i], p), coords))
            throw NotRestrictedSubalgebra("p-th power leaves the span");
    }
}

std::vector<std::vector<Polynomial>> symbolic_matrix(const RingPtr& ring,
                                                     const std::vector<Matrix>& basis) {
    const std::size_t n = basis[0].rows();
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(ring)));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        Polynomial xk = Polynomial::variable(ring, k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::uint32_t c = basis[k].at(i, j).value;
                if (c) m[i][j] = m[i][j] + xk.scaled(c);
            }
    }
    return m;
}

std::vector<std::vector<Polynomial>> poly_mat_mul(const std::vector<std::vector<Polynomial>>& a,
                                                  const std::vector<std::vector<Polynomial>>& b,
                                                  const RingPtr& ring) {
    const std::size_t n = a.size();
    std::vector<std::vector<Polynomial>> c(n, std::vector<Polynomial>(n, Polynomial::zero(ring)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[k][j].is_zero()) continue;
                c[i][j] = c[i][j] + a[i][k] * b[k][j];
            }
        }
    return c;
}

GroupPtr finish_lie(std::string name, std::uint32_t p, std::vector<Matrix> basis,
                    std::vector<std::string> names, std::vector<Polynomial> reduced) {
    auto g = std::make_shared<GroupSchemeDescriptor>();
    g->family = Family::LieMatrix;
    g->name = std::move(name);
    g->p = p;
    g->r = 1;
    g->basis = std::move(basis);
    RingPtr ring = make_ring(p, std::move(names),
                             std::vector<std::uint32_t>(g->basis.size(), 1));
    g->presentation = make_presentation(ring, std::move(reduced));
    for (std::size_t i = 0; i < g->basis.size(); ++i)
        g->theta_coeffs.push_back(Polynomial::variable(ring, i));
    return g;
}

Matrix unit_matrix(std::size_t n, std::uint32_t p, std::size_t i, std::size_t j) {
    Matrix m(n, n, p);
    m.set(i, j, 1);
    return m;
}

} // namespace

std::vector<std::vector<Polynomial>> generic_matrix(const GroupSchemeDescriptor& g) {
    if (g.family != Family::LieMatrix)
        throw Unsupported("generic matrix exists only for LieMatrix families");
    return symbolic_matrix(g.presentation.ring, g.basis);
}

std::vector<Polynomial> nullcone_ideal(const GroupSchemeDescriptor& g) {
    if (g.family != Family::LieMatrix)
        throw Unsupported("nullcone ideal exists only for LieMatrix families");
    check_restricted_closure(g.basis, g.p);
    const RingPtr& ring = g.presentation.ring;
    auto m = symbolic_matrix(ring, g.basis);
    auto acc = m;
    for (std::uint32_t k = 1; k < g.p; ++k) acc = poly_mat_mul(acc, m, ring);
    std::vector<Polynomial> gens;
    for (const auto& row : acc)
        for (const auto& e : row)
            if (!e.is_zero()) gens.push_back(e);
    return gens;
}

GroupPtr make_sl2(std::uint32_t p) {
    if (p < 3) throw Unsupported("sl2 requires p >= 3");
    std::vector<Matrix> basis{unit_matrix(2, p, 0, 1), unit_matrix(2, p, 1, 0),
                              Matrix(2, 2, p)};
    basis[2].set(0, 0, 1);
    basis[2].set(1, 1, -1);
    RingPtr ring = make_ring(p, {"x", "y", "z"}, {1, 1, 1});
    Polynomial xy_z2 = Polynomial::variable(ring, 0) * Polynomial::variable(ring, 1) +
                       Polynomial::variable(ring, 2) * Polynomial::variable(ring, 2);
    auto g = finish_lie("sl2", p, std::move(basis), {"x", "y", "z"}, {xy_z2});
    return g;
}

GroupPtr make_sl3(std::uint32_t p) {
    if (p != 3) throw Unsupported("the sl3 fixture family requires p = 3");
    std::vector<Matrix> basis{
        unit_matrix(3, p, 0, 1), // x1
        unit_matrix(3, p, 1, 2), // x2
        unit_matrix(3, p, 0, 2), // x3
        unit_matrix(3, p, 1, 0), // y1
        unit_matrix(3, p, 2, 1), // y2
        unit_matrix(3, p, 2, 0), // y3
        Matrix(3, 3, p),         // h7 = diag(1,-1,0)
        Matrix(3, 3, p),         // h8 = diag(0,1,-1)
    };
    basis[6].set(0, 0, 1);
    basis[6].set(1, 1, -1);
    basis[7].set(1, 1, 1);
    basis[7].set(2, 2, -1);
    std::vector<std::string> names{"x1", "x2", "x3", "y1", "y2", "y3", "h7", "h8"};
    RingPtr ring = make_ring(p, names, std::vector<std::uint32_t>(8, 1));

    // Characteristic coefficients of the generic matrix: e2 = sum of principal
    // 2x2 minors, e3 = determinant.  Entries of M^3 lie in (e2, e3) by
    // Cayley-Hamilton; the certification test checks the radical converse.
    auto m = symbolic_matrix(ring, basis);
    Polynomial e2 = Polynomial::zero(ring), e3 = Polynomial::zero(ring);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            e2 = e2 + m[i][i] * m[j][j] - m[i][j] * m[j][i];
    e3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return finish_lie("sl3", p, std::move(basis), names, {e2, e3});
}

GroupPtr make_u(std::uint32_t n, std::uint32_t p) {
    if (n < 2) throw Unsupported("u(n) requires n >= 2");
    if (p < n)
        throw Unsupported("u(n) is built in only for p >= n (zero nullcone ideal)");
    std::vector<Matrix> basis;
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            basis.push_back(unit_matrix(n, p, i, j));
            names.push_back("x" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    // Strictly upper triangular matrices satisfy M^n = 0, so M^p = 0 for p >= n.
    return finish_lie("u(" + std::to_string(n) + ")", p, std::move(basis), names, {});
}

GroupPtr make_e(std::uint32_t n, std::uint32_t p) {
    if (n < 1) throw Unsupported("e(n) requires n >= 1");
    std::vector<Matrix> basis;
    for (std::uint32_t i = 0; i < n; ++i) basis.push_back(unit_matrix(n + 1, p, i, n));
    return finish_lie("e(" + std::to_string(n) + ")", p, std::move(basis),
                      indexed_names("x", n), {});
}

GroupPtr make_elem_abelian(std::uint32_t rank, std::uint32_t p) {
    if (rank < 1) throw Unsupported("ea(r) requires r >= 1");
    auto g = std::make_shared<GroupSchemeDescriptor>();
    g->family = Family::ElemAbelian;
    g->name = "ea(" + std::to_string(rank) + ")";
    g->p = p;
    g->r = 1;
    RingPtr ring = make_ring(p, indexed_names("x", rank),
                             std::vector<std::uint32_t>(rank, 1));
    g->presentation = make_presentation(ring, {});
    for (std::uint32_t i = 0; i < rank; ++i)
        g->theta_coeffs.push_back(Polynomial::variable(ring, i));
    return g;
}

GroupPtr make_frobenius_ga(std::uint32_t rank, std::uint32_t p) {
    if (rank < 1) throw Unsupported("ga(r) requires r >= 1");
    auto g = std::make_shared<GroupSchemeDescriptor>();
    g->family = Family::FrobeniusGa;
    g->name = "ga(" + std::to_string(rank) + ")";
    g->p = p;
    g->r = rank;
    std::vector<std::uint32_t> weights;
    std::uint32_t w = 1;
    for (std::uint32_t i = 0; i < rank; ++i) {
        weights.push_back(w);
        w *= p;
    }
    RingPtr ring = make_ring(p, indexed_names("x", rank), weights);
    g->presentation = make_presentation(ring, {});
    // Theta coefficient for u_i is x_i^{p^{r-i}}, homogeneous of degree p^{r-1}.
    for (std::uint32_t i = 0; i < rank; ++i) {
        std::uint32_t exp = 1;
        for (std::uint32_t k = 0; k < rank - 1 - i; ++k) exp *= p;
        g->theta_coeffs.push_back(Polynomial::variable(ring, i, exp));
    }
    return g;
}

GroupPtr make_lie_matrix(std::vector<Matrix> basis, std::uint32_t p,
                         std::vector<std::string> var_names, std::string name) {
    if (basis.empty()) throw Unsupported("LieMatrix family needs a nonempty basis");
    if (var_names.empty()) var_names = indexed_names("x", static_cast<std::uint32_t>(basis.size()));
    if (var_names.size() != basis.size())
        throw ShapeError("one variable name per basis matrix required");
    check_restricted_closure(basis, p);
    // The reduced presentation of a custom family is not known in general;
    // the raw nullcone ideal generators are used as the presentation.
    auto g = finish_lie(std::move(name), p, std::move(basis), var_names, {});
    std::vector<Polynomial> gens = nullcone_ideal(*g);
    auto g2 = std::make_shared<GroupSchemeDescriptor>(*g);
    g2->presentation = make_presentation(g->presentation.ring, gens);
    return g2;
}

GroupPtr builtin_group(const std::string& spec, std::uint32_t p) {
    auto paren = spec.find('(');
    std::string head = spec.substr(0, paren);
    std::uint32_t arg = 0;
    if (paren != std::string::npos) {
        auto close = spec.find(')', paren);
        if (close == std::string::npos) throw InputError("unbalanced parenthesis in group spec");
        arg = static_cast<std::uint32_t>(std::stoul(spec.substr(paren + 1, close - paren - 1)));
    }
    if (head == "sl2") return make_sl2(p);
    if (head == "sl3") return make_sl3(p);
    if (head == "ea") return make_elem_abelian(arg, p);
    if (head == "ga") return make_frobenius_ga(arg, p);
    if (head == "u") return make_u(arg, p);
    if (head == "e") return make_e(arg, p);
    throw InputError("unknown group '" + spec + "'");
}

NullconePoint validate_point(const GroupSchemeDescriptor& g,
                             const std::vector<FieldElement>& coords) {
    if (coords.size() != g.presentation.ring->nvars())
        throw ShapeError("point length does not match the number of variables");
    bool allzero = true;
    for (const auto& c : coords) {
        if (c.p != g.p) throw RingMismatch("point coordinate has wrong modulus");
        if (!c.is_zero()) allzero = false;
    }
    if (allzero) throw ZeroPoint();
    for (const auto& q : g.presentation.defining)
        if (!q.specialize(coords).is_zero())
            throw NotOnNullcone("defining generator does not vanish at the point");
    return NullconePoint{coords};
}

NullconePoint validate_point(const GroupSchemeDescriptor& g,
                             const std::vector<std::int64_t>& coords) {
    std::vector<FieldElement> fe;
    for (auto c : coords) fe.emplace_back(c, g.p);
    return validate_point(g, fe);
}

namespace {

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
        if (!mat_solve(m, e, col)) throw MathError("matrix is singular");
        for (std::size_t i = 0; i < n; ++i) inv.set(i, j, col[i]);
    }
    return inv;
}

std::vector<Matrix> nilpotent_class_representatives(const GroupSchemeDescriptor& g) {
    const std::uint32_t p = g.p;
    if (g.name == "sl2") return {unit_matrix(2, p, 0, 1)};
    if (g.name == "sl3") {
        Matrix sub = unit_matrix(3, p, 0, 2);                       // type [2][1]
        Matrix reg = unit_matrix(3, p, 0, 1) + unit_matrix(3, p, 1, 2); // type [3]
        return {sub, reg};
    }
    return {};
}

} // namespace

std::vector<NullconePoint> sample_points(const GroupSchemeDescriptor& g, std::size_t count,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::uint32_t p = g.p;
    const std::size_t nvars = g.presentation.ring->nvars();
    std::vector<NullconePoint> out;

    std::vector<Matrix> reps = nilpotent_class_representatives(g);
    if (!reps.empty()) {
        Matrix vecs = basis_vectorization(g.basis);
        std::size_t produced = 0;
        while (out.size() < count) {
            Matrix a(0, 0, p);
            if (produced < reps.size()) {
                a = reps[produced];
            } else {
                const Matrix& rep = reps[rng() % reps.size()];
                Matrix c = random_invertible(rng, rep.rows(), p);
                a = c * rep * inverse_of(c);
            }
            ++produced;
            std::vector<FieldElement> coords;
            if (!in_span(vecs, a, coords))
                throw InternalInvariantViolation("conjugate left the algebra span");
            out.push_back(validate_point(g, coords));
        }
        return out;
    }

    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 10000 * (count + 1))
            throw EngineLimit("point sampler failed to hit the nullcone");
        std::vector<FieldElement> coords;
        bool nonzero = false;
        for (std::size_t i = 0; i < nvars; ++i) {
            coords.emplace_back(static_cast<std::int64_t>(rng() % p), p);
            if (!coords.back().is_zero()) nonzero = true;
        }
        if (!nonzero) continue;
        try {
            out.push_back(validate_point(g, coords));
        } catch (const NotOnNullcone&) {
        }
    }
    return out;
}

} // namespace pgsheaf
