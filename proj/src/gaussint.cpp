#include "gausscobham/gaussint.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace gausscobham {

GaussInt GaussInt::pow(unsigned long k) const {
    GaussInt result{1, 0};
    GaussInt base = *this;
    while (k > 0) {
        if (k & 1UL) result *= base;
        base *= base;
        k >>= 1UL;
    }
    return result;
}

std::string GaussInt::str() const {
    if (im == 0) return re.get_str();
    std::string imag;
    if (im == 1)
        imag = "i";
    else if (im == -1)
        imag = "-i";
    else
        imag = im.get_str() + "i";
    if (re == 0) return imag;
    if (im > 0) return re.get_str() + "+" + imag;
    return re.get_str() + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussInt& z) { return os << z.str(); }

namespace {

Int parse_int_strict(const std::string& s) {
    std::string body = s;
    if (!body.empty() && body.front() == '+') body.erase(body.begin());
    if (body.empty()) throw std::invalid_argument("empty integer literal");
    Int v;
    if (mpz_set_str(v.get_mpz_t(), body.c_str(), 10) != 0)
        throw std::invalid_argument("bad integer literal: '" + s + "'");
    return v;
}

// "", "+", "-" denote the implicit coefficients 1, 1, -1 of i.
Int parse_imag_coeff(const std::string& s) {
    if (s.empty() || s == "+") return 1;
    if (s == "-") return -1;
    return parse_int_strict(s);
}

}  // namespace

GaussInt parse_gauss(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty Gaussian integer");
    for (char c : text)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("whitespace in Gaussian integer: '" + text + "'");
    auto ipos = text.find('i');
    if (ipos == std::string::npos) return {parse_int_strict(text), Int(0)};
    if (ipos != text.size() - 1)
        throw std::invalid_argument("bad Gaussian integer: '" + text + "'");
    std::string body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not leading and not part of the real term's own sign.
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-')
            return {parse_int_strict(body.substr(0, k)), parse_imag_coeff(body.substr(k))};
    }
    return {Int(0), parse_imag_coeff(body)};
}

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    for (char c : text)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("whitespace in rational: '" + text + "'");
    Rat v;
    if (mpq_set_str(v.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational: '" + text + "'");
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    v.canonicalize();
    return v;
}

DivMod divmod_nearest(const GaussInt& z, const GaussInt& g) {
    if (g.is_zero()) throw std::invalid_argument("divmod_nearest: division by zero");
    Int n = g.norm();
    Int x = z.re * g.re + z.im * g.im;  // Re(z * conj(g))
    Int y = z.im * g.re - z.re * g.im;  // Im(z * conj(g))
    // Nearest integer to t/n with ties toward -infinity is ceil((2t - n) / (2n)).
    Int two_n = 2 * n;
    GaussInt q{ceil_div(2 * x - n, two_n), ceil_div(2 * y - n, two_n)};
    return {q, z - q * g};
}

bool divides(const GaussInt& d, const GaussInt& z, GaussInt* quotient) {
    if (d.is_zero()) return z.is_zero();
    Int n = d.norm();
    Int x = z.re * d.re + z.im * d.im;
    Int y = z.im * d.re - z.re * d.im;
    if (!mpz_divisible_p(x.get_mpz_t(), n.get_mpz_t())) return false;
    if (!mpz_divisible_p(y.get_mpz_t(), n.get_mpz_t())) return false;
    if (quotient != nullptr) *quotient = {x / n, y / n};
    return true;
}

GaussInt gauss_gcd(GaussInt a, GaussInt b) {
    while (!b.is_zero()) {
        GaussInt r = divmod_nearest(a, b).r;
        a = b;
        b = r;
    }
    return a;
}

bool is_root_of_integer(const GaussInt& z) {
    if (z.is_zero()) throw std::invalid_argument("is_root_of_integer: zero input");
    if (z.re == 0 || z.im == 0) return true;
    Int ar = abs(z.re), ai = abs(z.im);
    return ar == ai;
}

GaussInt canonical_associate(const GaussInt& p) {
    if (p.is_zero()) throw std::invalid_argument("canonical_associate: zero input");
    GaussInt v = p;
    for (int k = 0; k < 4; ++k) {
        if (v.re > 0 && v.im >= 0) return v;
        v = GaussInt{-v.im, v.re};  // multiply by i
    }
    throw std::logic_error("canonical_associate: no first-quadrant associate");
}

GaussInt GaussFactorization::reconstruct() const {
    GaussInt v = unit;
    for (const auto& [p, e] : factors) v *= p.pow(e);
    return v;
}

namespace {

// Rational prime factorization by trial division; desk-scale inputs.
std::vector<std::pair<Int, unsigned long>> factor_rational(Int n) {
    std::vector<std::pair<Int, unsigned long>> out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) continue;
        unsigned long e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// A square root of -1 mod p for a prime p = 1 mod 4, via x = a^((p-1)/4).
Int sqrt_minus_one_mod(const Int& p) {
    Int exp = (p - 1) / 4;
    for (Int a = 2; a < p; ++a) {
        Int x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
        if (mod_floor(x * x + 1, p) == 0) return x;
    }
    throw std::logic_error("sqrt_minus_one_mod: no root found");
}

// A Gaussian prime of norm p for a rational prime p = 1 mod 4.
GaussInt split_prime(const Int& p) {
    Int x = sqrt_minus_one_mod(p);
    GaussInt g = gauss_gcd(GaussInt{p, 0}, GaussInt{x, 1});
    if (g.norm() != p) throw std::logic_error("split_prime: gcd has wrong norm");
    return canonical_associate(g);
}

}  // namespace

GaussFactorization factor(const GaussInt& z) {
    if (z.is_zero()) throw std::invalid_argument("factor: zero input");
    GaussFactorization out;
    GaussInt rem = z;
    std::map<GaussInt, unsigned long> found;
    for (const auto& [p, e] : factor_rational(z.norm())) {
        std::vector<GaussInt> primes;
        if (p == 2) {
            primes = {GaussInt{1, 1}};
        } else if (mod_floor(p, 4) == 3) {
            primes = {GaussInt{p, 0}};
        } else {
            GaussInt pi = split_prime(p);
            primes = {pi, canonical_associate(pi.conj())};
        }
        for (const auto& pi : primes) {
            GaussInt q;
            while (divides(pi, rem, &q)) {
                ++found[pi];
                rem = q;
            }
        }
        (void)e;
    }
    if (!rem.is_unit()) throw std::logic_error("factor: non-unit cofactor remains");
    out.unit = rem;
    out.factors.assign(found.begin(), found.end());
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        Int na = a.first.norm(), nb = b.first.norm();
        if (na != nb) return na < nb;
        return a.first < b.first;
    });
    return out;
}

std::string Independence::certificate(const GaussInt& alpha, const GaussInt& beta) const {
    if (independent) {
        std::string s = "independent";
        if (obstruction) s += " (prime obstruction " + obstruction->str() + ")";
        return s;
    }
    return "dependent (" + alpha.str() + ")^" + std::to_string(j) + " = (" + beta.str() + ")^" +
           std::to_string(k);
}

Independence multiplicatively_independent(const GaussInt& alpha, const GaussInt& beta) {
    if (alpha.norm() <= 1 || beta.norm() <= 1)
        throw std::invalid_argument("multiplicatively_independent: inputs must have norm > 1");
    auto fa = factor(alpha);
    auto fb = factor(beta);
    std::map<GaussInt, std::pair<unsigned long, unsigned long>> exps;
    for (const auto& [p, e] : fa.factors) exps[p].first = e;
    for (const auto& [p, e] : fb.factors) exps[p].second = e;

    Independence out;
    // alpha^j = beta^k forces j*ea = k*eb for every prime; the ratio k:j is
    // fixed by any one prime and must be consistent across all of them.
    Int j0 = 0, k0 = 0;
    for (const auto& [p, ab] : exps) {
        auto [ea, eb] = ab;
        if (ea == 0 || eb == 0) {
            out.obstruction = p;
            return out;
        }
        if (j0 == 0) {
            Int g;
            mpz_gcd_ui(g.get_mpz_t(), Int(static_cast<long>(ea)).get_mpz_t(), eb);
            j0 = Int(static_cast<long>(eb)) / g;
            k0 = Int(static_cast<long>(ea)) / g;
            continue;
        }
        if (j0 * ea != k0 * eb) {
            out.obstruction = p;
            return out;
        }
    }
    if (j0 == 0) throw std::logic_error("multiplicatively_independent: empty factorization");

    unsigned long j = j0.get_ui(), k = k0.get_ui();
    // Equal exponent vectors make alpha^j and beta^k associates; a factor
    // t <= 4 then removes the unit, so one of these checks must land.
    for (unsigned long t = 1; t <= 4; ++t) {
        if (alpha.pow(t * j) == beta.pow(t * k)) {
            out.independent = false;
            out.j = t * j;
            out.k = t * k;
            return out;
        }
    }
    throw std::logic_error("multiplicatively_independent: proportional exponents but no power identity");
}

}  // namespace gausscobham
