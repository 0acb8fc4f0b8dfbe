#include "pgsheaf/field.hpp"

#include <algorithm>
#include <sstream>

namespace pgsheaf {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldElement::FieldElement(std::int64_t v, std::uint32_t prime) : p(prime) {
    if (!is_prime(prime)) throw MathError("modulus is not prime");
    std::int64_t r = v % static_cast<std::int64_t>(prime);
    if (r < 0) r += prime;
    value = static_cast<std::uint32_t>(r);
}

namespace {
inline void check_same(const FieldElement& a, const FieldElement& b) {
    if (a.p != b.p) throw RingMismatch("field elements have different moduli");
}
} // namespace

FieldElement FieldElement::operator+(FieldElement o) const {
    check_same(*this, o);
    std::uint32_t s = value + o.value;
    if (s >= p) s -= p;
    FieldElement r;
    r.value = s;
    r.p = p;
    return r;
}

FieldElement FieldElement::operator-(FieldElement o) const {
    check_same(*this, o);
    FieldElement r;
    r.value = value >= o.value ? value - o.value : value + p - o.value;
    r.p = p;
    return r;
}

FieldElement FieldElement::operator*(FieldElement o) const {
    check_same(*this, o);
    FieldElement r;
    r.value = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(value) * o.value) % p);
    r.p = p;
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r;
    r.value = value == 0 ? 0 : p - value;
    r.p = p;
    return r;
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    FieldElement base = *this, r;
    r.value = 1 % p;
    r.p = p;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::inv() const {
    if (value == 0) throw DivisionByZero();
    return pow(p - 2);
}

Partition::Partition(std::vector<std::uint32_t> parts_) : parts(std::move(parts_)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] == 0) throw MathError("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw MathError("partition parts must be weakly decreasing");
    }
}

std::uint32_t Partition::total() const {
    std::uint32_t s = 0;
    for (auto x : parts) s += x;
    return s;
}

Partition Partition::conjugate() const {
    Partition r;
    if (parts.empty()) return r;
    for (std::uint32_t k = 1; k <= parts[0]; ++k) {
        std::uint32_t c = 0;
        for (auto x : parts)
            if (x >= k) ++c;
        r.parts.push_back(c);
    }
    return r;
}

std::string Partition::to_string() const {
    if (parts.empty()) return "[]";
    std::ostringstream os;
    std::size_t i = 0;
    while (i < parts.size()) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        os << '[' << parts[i] << ']';
        if (j - i > 1) os << '^' << (j - i);
        i = j;
    }
    return os.str();
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {
    if (!is_prime(p)) throw MathError("modulus is not prime");
}

Matrix Matrix::identity(std::size_t n, std::uint32_t p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1 % p;
    return m;
}

FieldElement Matrix::at(std::size_t i, std::size_t j) const {
    FieldElement r;
    r.value = a_[i * cols_ + j];
    r.p = p_;
    return r;
}

void Matrix::set(std::size_t i, std::size_t j, FieldElement v) {
    if (v.p != p_) throw RingMismatch("matrix entry has wrong modulus");
    a_[i * cols_ + j] = v.value;
}

void Matrix::set(std::size_t i, std::size_t j, std::int64_t v) {
    set(i, j, FieldElement(v, p_));
}

namespace {
inline void check_same_p(const Matrix& a, const Matrix& b) {
    if (a.modulus() != b.modulus()) throw RingMismatch("matrices over different fields");
}
} // namespace

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_p(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix addition shape mismatch");
    Matrix r(rows_, cols_, p_);
    for (std::size_t k = 0; k < a_.size(); ++k) {
        std::uint32_t s = a_[k] + o.a_[k];
        if (s >= p_) s -= p_;
        r.a_[k] = s;
    }
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_same_p(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix subtraction shape mismatch");
    Matrix r(rows_, cols_, p_);
    for (std::size_t k = 0; k < a_.size(); ++k)
        r.a_[k] = a_[k] >= o.a_[k] ? a_[k] - o.a_[k] : a_[k] + p_ - o.a_[k];
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_same_p(*this, o);
    if (cols_ != o.rows_) throw ShapeError("matrix product shape mismatch");
    Matrix r(rows_, o.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t aik = a_[i * cols_ + k];
            if (!aik) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                std::uint64_t v = r.a_[i * o.cols_ + j] + aik * o.a_[k * o.cols_ + j];
                r.a_[i * o.cols_ + j] = static_cast<std::uint32_t>(v % p_);
            }
        }
    return r;
}

Matrix Matrix::scaled(FieldElement c) const {
    if (c.p != p_) throw RingMismatch("scalar has wrong modulus");
    Matrix r(rows_, cols_, p_);
    for (std::size_t k = 0; k < a_.size(); ++k)
        r.a_[k] = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a_[k]) * c.value) % p_);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.a_[j * rows_ + i] = a_[i * cols_ + j];
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::uint32_t v) { return v == 0; });
}

Matrix Matrix::kronecker(const Matrix& o) const {
    check_same_p(*this, o);
    Matrix r(rows_ * o.rows_, cols_ * o.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            std::uint64_t aij = a_[i * cols_ + j];
            if (!aij) continue;
            for (std::size_t k = 0; k < o.rows_; ++k)
                for (std::size_t l = 0; l < o.cols_; ++l) {
                    std::size_t R = i * o.rows_ + k, C = j * o.cols_ + l;
                    r.a_[R * r.cols_ + C] = static_cast<std::uint32_t>(
                        (aij * o.a_[k * o.cols_ + l]) % p_);
                }
        }
    return r;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
    check_same_p(a, b);
    Matrix r(a.rows_ + b.rows_, a.cols_ + b.cols_, a.p_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j)
            r.a_[i * r.cols_ + j] = a.a_[i * a.cols_ + j];
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j)
            r.a_[(a.rows_ + i) * r.cols_ + (a.cols_ + j)] = b.a_[i * b.cols_ + j];
    return r;
}

namespace {

// In-place row echelon; returns pivot columns.  When rref is set the pivots
// are normalized to 1 and cleared above as well.
std::vector<std::size_t> echelon(Matrix& A, bool rref) {
    const std::size_t m = A.rows(), n = A.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t pr = m;
        for (std::size_t i = r; i < m; ++i)
            if (!A.at(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr == m) continue;
        if (pr != r)
            for (std::size_t j = 0; j < n; ++j) {
                FieldElement t = A.at(r, j);
                A.set(r, j, A.at(pr, j));
                A.set(pr, j, t);
            }
        FieldElement inv = A.at(r, c).inv();
        for (std::size_t j = 0; j < n; ++j) A.set(r, j, A.at(r, j) * inv);
        std::size_t lo = rref ? 0 : r + 1;
        for (std::size_t i = lo; i < m; ++i) {
            if (i == r) continue;
            FieldElement f = A.at(i, c);
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                A.set(i, j, A.at(i, j) - f * A.at(r, j));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::size_t mat_rank(Matrix A) { return echelon(A, false).size(); }

std::vector<std::vector<FieldElement>> mat_kernel_basis(const Matrix& A) {
    Matrix E = A;
    std::vector<std::size_t> pivots = echelon(E, true);
    const std::size_t n = A.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<FieldElement>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<FieldElement> v(n, FieldElement(0, A.modulus()));
        v[f] = FieldElement(1, A.modulus());
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -E.at(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix mat_power(const Matrix& A, std::uint64_t j) {
    if (A.rows() != A.cols()) throw ShapeError("matrix power requires a square matrix");
    Matrix r = Matrix::identity(A.rows(), A.modulus());
    Matrix base = A;
    while (j) {
        if (j & 1) r = r * base;
        base = base * base;
        j >>= 1;
    }
    return r;
}

Partition nilpotent_jordan_type(const Matrix& A, std::uint32_t p) {
    if (A.rows() != A.cols()) throw ShapeError("Jordan type requires a square matrix");
    if (!is_prime(p)) throw MathError("modulus is not prime");
    if (A.modulus() != p) throw RingMismatch("matrix modulus differs from requested p");
    const std::size_t n = A.rows();
    std::vector<std::size_t> ranks;
    Matrix pw = Matrix::identity(n, p);
    for (std::uint32_t j = 0; j <= p; ++j) {
        ranks.push_back(mat_rank(pw));
        if (j < p) pw = pw * A;
    }
    if (!pw.is_zero()) throw NotPNilpotent();
    std::vector<std::uint32_t> diffs;
    for (std::uint32_t j = 1; j <= p; ++j)
        diffs.push_back(static_cast<std::uint32_t>(ranks[j - 1] - ranks[j]));
    while (!diffs.empty() && diffs.back() == 0) diffs.pop_back();
    return Partition(diffs).conjugate();
}

bool mat_solve(const Matrix& A, const std::vector<FieldElement>& b,
               std::vector<FieldElement>& x) {
    if (b.size() != A.rows()) throw ShapeError("solve: rhs length mismatch");
    Matrix aug(A.rows(), A.cols() + 1, A.modulus());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug.set(i, j, A.at(i, j));
        aug.set(i, A.cols(), b[i]);
    }
    std::vector<std::size_t> pivots = echelon(aug, true);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        if (pivots[r] == A.cols()) return false;
    x.assign(A.cols(), FieldElement(0, A.modulus()));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug.at(r, A.cols());
    return true;
}

} // namespace pgsheaf
