#include "pgsheaf/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace pgsheaf {

RingPtr make_ring(std::uint32_t p, std::vector<std::string> names,
                  std::vector<std::uint32_t> weights, bool elim_last) {
    if (!is_prime(p)) throw MathError("ring modulus is not prime");
    if (names.size() != weights.size()) throw ShapeError("one weight per variable required");
    if (names.size() > kMaxVars) throw Unsupported("at most 16 variables supported");
    for (auto w : weights)
        if (w == 0) throw MathError("weights must be positive");
    auto r = std::make_shared<RingContext>();
    r->p = p;
    r->var_names = std::move(names);
    r->weights = std::move(weights);
    r->elim_last = elim_last;
    return r;
}

RingPtr extend_ring_elim(const RingPtr& ring) {
    auto names = ring->var_names;
    names.push_back("@t");
    auto weights = ring->weights;
    weights.push_back(1);
    return make_ring(ring->p, std::move(names), std::move(weights), true);
}

Monomial Monomial::variable(const RingContext& ring, std::size_t i, std::uint32_t exp) {
    if (i >= ring.nvars()) throw ShapeError("variable index out of range");
    if (exp > 255) throw EngineLimit("monomial exponent overflow");
    Monomial m;
    m.e[i] = static_cast<std::uint8_t>(exp);
    m.wdeg = ring.weights[i] * exp;
    m.rawdeg = exp;
    return m;
}

Monomial mono_mul(const RingContext& ring, const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        std::uint32_t s = static_cast<std::uint32_t>(a.e[i]) + b.e[i];
        if (s > 255) throw EngineLimit("monomial exponent overflow");
        r.e[i] = static_cast<std::uint8_t>(s);
    }
    r.wdeg = a.wdeg + b.wdeg;
    r.rawdeg = a.rawdeg + b.rawdeg;
    return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    if (a.rawdeg > b.rawdeg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

Monomial mono_div(const RingContext& ring, const Monomial& b, const Monomial& a) {
    Monomial r;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        if (a.e[i] > b.e[i]) throw MathError("monomial division is not exact");
        r.e[i] = static_cast<std::uint8_t>(b.e[i] - a.e[i]);
    }
    r.wdeg = b.wdeg - a.wdeg;
    r.rawdeg = b.rawdeg - a.rawdeg;
    return r;
}

Monomial mono_lcm(const RingContext& ring, const Monomial& a, const Monomial& b) {
    Monomial r;
    r.wdeg = 0;
    r.rawdeg = 0;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        r.e[i] = std::max(a.e[i], b.e[i]);
        r.wdeg += ring.weights[i] * r.e[i];
        r.rawdeg += r.e[i];
    }
    return r;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

std::strong_ordering monomial_compare(const RingContext& ring, const Monomial& a,
                                      const Monomial& b) {
    const std::size_t n = ring.nvars();
    std::size_t lim = n;
    if (ring.elim_last) {
        // Block order: elimination variable first, base order on the rest.
        std::uint8_t at = a.e[n - 1], bt = b.e[n - 1];
        if (at != bt) return at <=> bt;
        lim = n - 1;
        std::uint32_t aw = a.wdeg - at, bw = b.wdeg - bt;
        if (aw != bw) return aw <=> bw;
        std::uint32_t ar = a.rawdeg - at, br = b.rawdeg - bt;
        if (ar != br) return ar <=> br;
    } else {
        if (a.wdeg != b.wdeg) return a.wdeg <=> b.wdeg;
        if (a.rawdeg != b.rawdeg) return a.rawdeg <=> b.rawdeg;
    }
    // Reverse lexicographic: the last variable where they differ decides,
    // smaller exponent there means greater monomial.
    for (std::size_t i = lim; i-- > 0;)
        if (a.e[i] != b.e[i]) return b.e[i] <=> a.e[i];
    return std::strong_ordering::equal;
}

const Term& Polynomial::leading_term() const {
    if (terms_.empty()) throw ZeroPolynomial("zero polynomial has no leading term");
    return terms_.front();
}

Polynomial Polynomial::constant(const RingPtr& ring, std::int64_t c) {
    Polynomial r(ring);
    FieldElement f(c, ring->p);
    if (!f.is_zero()) r.terms_.push_back(Term{Monomial::one(), f.value});
    return r;
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t i, std::uint32_t exp) {
    Polynomial r(ring);
    if (exp == 0) return constant(ring, 1);
    r.terms_.push_back(Term{Monomial::variable(*ring, i, exp), 1});
    return r;
}

Polynomial Polynomial::from_terms(const RingPtr& ring, std::vector<Term> terms) {
    Polynomial r(ring);
    r.terms_ = std::move(terms);
    r.normalize();
    return r;
}

void Polynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
        return monomial_compare(*ring_, a.m, b.m) == std::strong_ordering::greater;
    });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::uint32_t c = t.c % ring_->p;
        if (!out.empty() && out.back().m == t.m) {
            out.back().c = (out.back().c + c) % ring_->p;
        } else {
            out.push_back(Term{t.m, c});
        }
        if (!out.empty() && out.back().c == 0) out.pop_back();
    }
    terms_ = std::move(out);
}

namespace {
inline void check_ring(const Polynomial& a, const Polynomial& b) {
    if (!same_ring(a.ring(), b.ring())) throw RingMismatch();
}
} // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_ring(*this, o);
    Polynomial r(ring_ ? ring_ : o.ring());
    const std::uint32_t p = r.ring()->p;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        auto cmp = monomial_compare(*r.ring(), terms_[i].m, o.terms_[j].m);
        if (cmp == std::strong_ordering::greater) {
            r.terms_.push_back(terms_[i++]);
        } else if (cmp == std::strong_ordering::less) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            std::uint32_t c = (terms_[i].c + o.terms_[j].c) % p;
            if (c) r.terms_.push_back(Term{terms_[i].m, c});
            ++i;
            ++j;
        }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    const std::uint32_t p = ring_ ? ring_->p : 2;
    for (const auto& t : terms_) r.terms_.push_back(Term{t.m, p - t.c});
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(std::uint32_t c) const {
    const std::uint32_t p = ring_->p;
    c %= p;
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
        r.terms_.push_back(Term{t.m, static_cast<std::uint32_t>(
                                          (static_cast<std::uint64_t>(t.c) * c) % p)});
    return r;
}

Polynomial Polynomial::term_multiple(const Monomial& m, std::uint32_t c) const {
    const std::uint32_t p = ring_->p;
    c %= p;
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
        r.terms_.push_back(Term{mono_mul(*ring_, t.m, m),
                                static_cast<std::uint32_t>(
                                    (static_cast<std::uint64_t>(t.c) * c) % p)});
    // Multiplying by a fixed monomial preserves the descending term order.
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_ring(*this, o);
    const RingPtr rg = ring_ ? ring_ : o.ring();
    Polynomial acc(rg);
    if (is_zero() || o.is_zero()) return acc;
    const Polynomial *small = this, *big = &o;
    if (small->terms_.size() > big->terms_.size()) std::swap(small, big);
    for (const auto& t : small->terms_) acc = acc + big->term_multiple(t.m, t.c);
    return acc;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    FieldElement lc(leading_term().c, ring_->p);
    return scaled(lc.inv().value);
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

std::uint32_t Polynomial::weighted_degree() const {
    if (is_zero()) throw ZeroPolynomial();
    auto d = homogeneous_degree();
    if (!d) throw NonHomogeneous();
    return *d;
}

bool Polynomial::is_homogeneous() const {
    return is_zero() || homogeneous_degree().has_value();
}

std::optional<std::uint32_t> Polynomial::homogeneous_degree() const {
    if (is_zero()) return std::nullopt;
    std::uint32_t d = terms_.front().m.wdeg;
    for (const auto& t : terms_)
        if (t.m.wdeg != d) return std::nullopt;
    return d;
}

FieldElement Polynomial::specialize(const std::vector<FieldElement>& point) const {
    const std::uint32_t p = ring_->p;
    if (point.size() != ring_->nvars()) throw ShapeError("point length mismatch");
    for (const auto& c : point)
        if (c.p != p) throw RingMismatch("point coordinate has wrong modulus");
    FieldElement acc(0, p);
    for (const auto& t : terms_) {
        FieldElement v(t.c, p);
        for (std::size_t i = 0; i < ring_->nvars(); ++i)
            if (t.m.e[i]) v = v * point[i].pow(t.m.e[i]);
        acc = acc + v;
    }
    return acc;
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        bool printed = false;
        if (t.c != 1 || t.m.is_one()) {
            os << t.c;
            printed = true;
        }
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            if (!t.m.e[i]) continue;
            if (printed) os << '*';
            os << ring_->var_names[i];
            if (t.m.e[i] > 1) os << '^' << static_cast<unsigned>(t.m.e[i]);
            printed = true;
        }
    }
    return os.str();
}

namespace {

struct Parser {
    const RingPtr& ring;
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::int64_t parse_int() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw InputError("expected integer in polynomial at offset " +
                                           std::to_string(start));
        return std::stoll(s.substr(start, pos - start));
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) throw InputError("expected identifier in polynomial at offset " +
                                           std::to_string(start));
        return s.substr(start, pos - start);
    }

    // factor := integer | var ['^' integer]
    // term   := factor ('*' factor)*
    Polynomial parse_term() {
        Polynomial acc = Polynomial::constant(ring, 1);
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                acc = acc * Polynomial::constant(ring, parse_int());
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = parse_ident();
                auto it = std::find(ring->var_names.begin(), ring->var_names.end(), name);
                if (it == ring->var_names.end())
                    throw InputError("unknown variable '" + name + "'");
                std::size_t idx = static_cast<std::size_t>(it - ring->var_names.begin());
                std::uint32_t exp = 1;
                if (eat('^')) exp = static_cast<std::uint32_t>(parse_int());
                acc = acc * Polynomial::variable(ring, idx, exp);
            } else {
                throw InputError(std::string("unexpected character '") + c +
                                 "' in polynomial");
            }
            if (!eat('*')) break;
        }
        return acc;
    }

    Polynomial parse() {
        Polynomial acc = Polynomial::zero(ring);
        bool neg = false;
        if (eat('-')) neg = true;
        while (true) {
            Polynomial t = parse_term();
            acc = neg ? acc - t : acc + t;
            skip_ws();
            if (eat('+')) {
                neg = false;
            } else if (eat('-')) {
                neg = true;
            } else {
                break;
            }
        }
        skip_ws();
        if (pos != s.size()) throw InputError("trailing characters in polynomial");
        return acc;
    }
};

} // namespace

Polynomial parse_polynomial(const RingPtr& ring, const std::string& text) {
    Parser p{ring, text};
    return p.parse();
}

Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
    check_ring(f, g);
    if (g.is_zero()) throw DivisionByZero("exact division by zero polynomial");
    const RingPtr& ring = f.ring() ? f.ring() : g.ring();
    Polynomial rem = f, quot(ring);
    const Term& lg = g.leading_term();
    FieldElement lginv = FieldElement(lg.c, ring->p).inv();
    while (!rem.is_zero()) {
        const Term& lt = rem.leading_term();
        if (!mono_divides(lg.m, lt.m)) throw MathError("polynomial division is not exact");
        Monomial q = mono_div(*ring, lt.m, lg.m);
        std::uint32_t c = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(lt.c) * lginv.value) % ring->p);
        quot = quot + Polynomial::from_terms(ring, {Term{q, c}});
        rem = rem - g.term_multiple(q, c);
    }
    return quot;
}

std::size_t generic_rank(const std::vector<std::vector<Polynomial>>& A) {
    if (A.empty()) return 0;
    const std::size_t m = A.size(), n = A[0].size();
    if (n == 0) return 0;
    RingPtr ring = A[0][0].ring();
    std::vector<std::vector<Polynomial>> M = A;
    for (const auto& row : M) {
        if (row.size() != n) throw ShapeError("ragged polynomial matrix");
        for (const auto& e : row)
            if (!same_ring(e.ring(), ring)) throw RingMismatch();
    }
    // Bareiss fraction-free elimination; the ambient ring is a domain.
    Polynomial prev = Polynomial::constant(ring, 1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t pr = m;
        for (std::size_t i = rank; i < m; ++i)
            if (!M[i][c].is_zero()) {
                pr = i;
                break;
            }
        if (pr == m) continue;
        std::swap(M[rank], M[pr]);
        for (std::size_t i = rank + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                Polynomial num = M[rank][c] * M[i][j] - M[i][c] * M[rank][j];
                M[i][j] = num.is_zero() ? num : divide_exact(num, prev);
            }
            M[i][c] = Polynomial::zero(ring);
        }
        prev = M[rank][c];
        ++rank;
    }
    return rank;
}

} // namespace pgsheaf
