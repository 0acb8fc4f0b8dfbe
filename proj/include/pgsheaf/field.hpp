#ifndef PGSHEAF_FIELD_HPP
#define PGSHEAF_FIELD_HPP

#include <cstdint>
#include <vector>

#include "pgsheaf/errors.hpp"

namespace pgsheaf {

bool is_prime(std::uint32_t n);

// Element of the prime field F_p.  The residue is always kept in [0, p).
struct FieldElement {
    std::uint32_t value = 0;
    std::uint32_t p = 2;

    FieldElement() = default;
    FieldElement(std::int64_t v, std::uint32_t prime);

    FieldElement operator+(FieldElement o) const;
    FieldElement operator-(FieldElement o) const;
    FieldElement operator*(FieldElement o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(std::uint64_t e) const;

    bool is_zero() const { return value == 0; }
    bool operator==(const FieldElement& o) const = default;
};

// Jordan type of a p-nilpotent operator: weakly decreasing parts, each <= p.
// The empty partition is the Jordan type of the zero module.
struct Partition {
    std::vector<std::uint32_t> parts;

    Partition() = default;
    explicit Partition(std::vector<std::uint32_t> parts_);

    std::uint32_t total() const;
    std::size_t size() const { return parts.size(); }
    Partition conjugate() const;
    // Exponential notation, e.g. [3][2]^2.  The empty partition prints as [].
    std::string to_string() const;

    bool operator==(const Partition&) const = default;
};

// Dense row-major matrix over F_p.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, std::uint32_t p);

    static Matrix identity(std::size_t n, std::uint32_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return p_; }

    FieldElement at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, FieldElement v);
    void set(std::size_t i, std::size_t j, std::int64_t v);

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(FieldElement c) const;
    Matrix transpose() const;
    bool is_zero() const;
    bool operator==(const Matrix& o) const = default;

    // Kronecker product, row-major block convention.
    Matrix kronecker(const Matrix& o) const;
    static Matrix block_diag(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::uint32_t p_ = 2;
    std::vector<std::uint32_t> a_;

    friend std::size_t mat_rank(Matrix A);
    friend std::vector<std::vector<FieldElement>> mat_kernel_basis(const Matrix& A);
};

// Rank by exact Gaussian elimination with first-nonzero pivoting.
std::size_t mat_rank(Matrix A);

// Basis of the right kernel; size = cols - rank.  Deterministic (RREF-based,
// free columns in ascending order).
std::vector<std::vector<FieldElement>> mat_kernel_basis(const Matrix& A);

// A^j with A^0 = identity.  Throws ShapeError unless A is square.
Matrix mat_power(const Matrix& A, std::uint64_t j);

// Jordan type of a p-nilpotent matrix via the conjugate of the rank-difference
// sequence (rank A^0 - rank A^1, ..., rank A^{p-1} - rank A^p).
// Throws NotPNilpotent if A^p != 0.
Partition nilpotent_jordan_type(const Matrix& A, std::uint32_t p);

// Solve A x = b over F_p; returns false if inconsistent.  Used by the
// representation layer for change-of-basis computations.
bool mat_solve(const Matrix& A, const std::vector<FieldElement>& b,
               std::vector<FieldElement>& x);

} // namespace pgsheaf

#endif
