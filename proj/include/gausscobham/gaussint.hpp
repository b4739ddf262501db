#pragma once

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gausscobham {

using Int = mpz_class;
using Rat = mpq_class;

/// Floor of sqrt(n); requires n >= 0.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Truncating division (toward zero).
inline Int trunc_div(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// a mod m in [0, m); requires m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// A Gaussian integer with unbounded components. All arithmetic is exact;
/// comparisons against irrational magnitudes are done elsewhere on squared
/// norms so that no verdict ever depends on floating point.
struct GaussInt {
    Int re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussInt(long r, long i) : re(r), im(i) {}
    GaussInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const { return norm() == 1; }

    GaussInt conj() const { return {re, -im}; }

    /// re^2 + im^2. Nonnegative, zero only at zero, multiplicative.
    Int norm() const { return re * re + im * im; }

    GaussInt operator-() const { return {-re, -im}; }
    GaussInt& operator+=(const GaussInt& w) {
        re += w.re;
        im += w.im;
        return *this;
    }
    GaussInt& operator-=(const GaussInt& w) {
        re -= w.re;
        im -= w.im;
        return *this;
    }
    GaussInt& operator*=(const GaussInt& w) {
        *this = *this * w;
        return *this;
    }
    friend GaussInt operator+(const GaussInt& z, const GaussInt& w) { return {z.re + w.re, z.im + w.im}; }
    friend GaussInt operator-(const GaussInt& z, const GaussInt& w) { return {z.re - w.re, z.im - w.im}; }
    friend GaussInt operator*(const GaussInt& z, const GaussInt& w) {
        return {z.re * w.re - z.im * w.im, z.re * w.im + z.im * w.re};
    }
    friend bool operator==(const GaussInt& z, const GaussInt& w) { return z.re == w.re && z.im == w.im; }
    friend bool operator!=(const GaussInt& z, const GaussInt& w) { return !(z == w); }

    /// Lexicographic by (re, im); a total order for use in ordered containers.
    friend bool operator<(const GaussInt& z, const GaussInt& w) {
        int c = cmp(z.re, w.re);
        if (c != 0) return c < 0;
        return cmp(z.im, w.im) < 0;
    }

    GaussInt pow(unsigned long k) const;

    /// Text form "a+bi" / "a-bi" / "a" / "bi", no spaces: "-1+i", "2", "-3i".
    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const GaussInt& z);

/// Parses the text form produced by GaussInt::str. Accepts an omitted
/// coefficient before i ("i", "-i", "3+i"). Throws std::invalid_argument.
GaussInt parse_gauss(const std::string& text);

/// Parses "p/q" or "p" into an exact rational. Throws std::invalid_argument.
Rat parse_rat(const std::string& text);

inline Int norm(const GaussInt& z) { return z.norm(); }

/// Im(conj(b - a) * (c - a)); zero exactly when a, b, c are collinear.
inline Int cross(const GaussInt& a, const GaussInt& b, const GaussInt& c) {
    return (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re);
}

struct DivMod {
    GaussInt q, r;
};

/// Euclidean division z = q*g + r where q is the per-coordinate nearest
/// integer to z/g with ties rounded toward -infinity. norm(r) <= norm(g)/2.
DivMod divmod_nearest(const GaussInt& z, const GaussInt& g);

/// True iff d divides z exactly; writes the quotient when requested.
bool divides(const GaussInt& d, const GaussInt& z, GaussInt* quotient = nullptr);

/// Gaussian gcd, defined up to a unit. Computed by the Euclidean algorithm
/// with divmod_nearest.
GaussInt gauss_gcd(GaussInt a, GaussInt b);

/// Whether some positive power of z is a rational integer. Holds exactly when
/// re = 0, im = 0, or |re| = |im| (arg z a multiple of pi/4), and then a
/// witness power z^j in Z exists with j <= 4. Throws on z = 0.
bool is_root_of_integer(const GaussInt& z);

/// The associate u*p with real part > 0 and imaginary part >= 0. Every
/// nonzero Gaussian integer off the axes-diagonal pattern has exactly one;
/// in particular each Gaussian prime has one (1+i is its own).
GaussInt canonical_associate(const GaussInt& p);

/// Factorization z = unit * prod(prime^exponent) with every prime in
/// canonical associate form and the list sorted by (norm, re, im).
struct GaussFactorization {
    GaussInt unit;
    std::vector<std::pair<GaussInt, unsigned long>> factors;

    GaussInt reconstruct() const;
};

/// Factors a nonzero Gaussian integer: factor norm(z) over Z, split rational
/// primes p = 1 mod 4 into conjugate Gaussian primes, keep p = 3 mod 4
/// inert, and use 1+i for p = 2. Throws on z = 0.
GaussFactorization factor(const GaussInt& z);

/// Outcome of the multiplicative (in)dependence decision, with certificate.
struct Independence {
    bool independent = true;
    // Dependence witness alpha^j == beta^k, verified by exact powers.
    unsigned long j = 0, k = 0;
    // For independence: a canonical prime whose exponents break the required
    // proportionality between the two exponent vectors.
    std::optional<GaussInt> obstruction;

    std::string certificate(const GaussInt& alpha, const GaussInt& beta) const;
};

/// Decides whether alpha^j = beta^k has a solution in positive integers.
/// Compares prime-exponent vectors; a proportional pair j:k is then verified
/// by exact powers for t*j, t*k with t = 1..4, which absorbs the order-4 unit
/// torsion of Z[i]. Requires norm > 1 for both inputs.
Independence multiplicatively_independent(const GaussInt& alpha, const GaussInt& beta);

}  // namespace gausscobham
