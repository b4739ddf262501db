#pragma once

// Independent brute-force oracles used by the test suites. Everything here
// recomputes expected values from definitions, without touching the code
// paths under test.

#include <map>
#include <optional>
#include <vector>

#include "gausscobham/gaussint.hpp"
#include "gausscobham/numeration.hpp"

namespace oracles {

using gausscobham::DigitSet;
using gausscobham::GaussInt;
using gausscobham::Int;
using gausscobham::Rat;
using gausscobham::Word;

/// All lattice points with norm(z) <= nmax, scan order (im, re).
inline std::vector<GaussInt> disk(long nmax) {
    std::vector<GaussInt> out;
    long bound = 0;
    while ((bound + 1) * (bound + 1) <= nmax) ++bound;
    for (long y = -bound; y <= bound; ++y)
        for (long x = -bound; x <= bound; ++x)
            if (x * x + y * y <= nmax) out.push_back({x, y});
    return out;
}

/// Values of every word over D of length <= maxlen, with the words. Words
/// with leading zeros are skipped when no_leading_zeros is set; the empty
/// word (value 0) is always included.
inline std::map<GaussInt, std::vector<Word>> words_by_value(const DigitSet& D, const GaussInt& base,
                                                            unsigned maxlen, bool no_leading_zeros) {
    std::map<GaussInt, std::vector<Word>> out;
    out[GaussInt{}].push_back({});
    std::vector<Word> layer{{}};
    for (unsigned len = 1; len <= maxlen; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer) {
            for (const auto& d : D.digits()) {
                Word v = w;
                v.push_back(d);
                next.push_back(v);
            }
        }
        layer = std::move(next);
        for (const auto& w : layer) {
            if (no_leading_zeros && w.front().is_zero()) continue;
            out[gausscobham::evaluate(w, base)].push_back(w);
        }
    }
    return out;
}

/// Nearest-quotient division recomputed by scanning candidate quotients
/// around z/g and applying the tie rule (toward -infinity per coordinate)
/// directly on the squared distance comparison.
inline std::pair<GaussInt, GaussInt> divmod_scan(const GaussInt& z, const GaussInt& g) {
    Int n = g.norm();
    Int x = z.re * g.re + z.im * g.im;
    Int y = z.im * g.re - z.re * g.im;
    auto best_coord = [&](const Int& t) {
        // minimize |t/n - q|, ties toward -infinity
        Int q0 = gausscobham::floor_div(t, n);
        Int best = q0;
        Int bestnum = abs(t - q0 * n) * 2;  // 2n * |t/n - q|
        for (Int q = q0 - 2; q <= q0 + 2; ++q) {
            Int num = abs(t - q * n) * 2;
            if (num < bestnum || (num == bestnum && q < best)) {
                best = q;
                bestnum = num;
            }
        }
        return best;
    };
    GaussInt q{best_coord(x), best_coord(y)};
    return {q, z - q * g};
}

/// Exhaustive multiplicative dependence search over 1 <= j, k <= cap.
inline std::optional<std::pair<unsigned long, unsigned long>> dependence_scan(const GaussInt& a,
                                                                              const GaussInt& b,
                                                                              unsigned long cap) {
    for (unsigned long j = 1; j <= cap; ++j)
        for (unsigned long k = 1; k <= cap; ++k)
            if (a.pow(j) == b.pow(k)) return std::make_pair(j, k);
    return std::nullopt;
}

/// Exhaustive minimal (n, m)-lex power pair with the exact inequality
/// norm(a^m - b^n) < eps^2 norm(b)^n, pre-filtered by the reverse triangle
/// inequality through integer square roots (still exact; the condition is
/// cleared to norm(a^m - b^n) * den^2 < num^2 * norm(b)^n).
inline std::optional<std::pair<unsigned long, unsigned long>> dirichlet_scan(const GaussInt& a,
                                                                             const GaussInt& b,
                                                                             const Rat& eps,
                                                                             unsigned long cap) {
    Int num2 = eps.get_num() * eps.get_num();
    Int den2 = eps.get_den() * eps.get_den();
    std::vector<GaussInt> ap{GaussInt{1, 0}}, bp{GaussInt{1, 0}};
    std::vector<Int> sa{0}, sb{0};  // isqrt of the power norms
    for (unsigned long k = 1; k <= cap; ++k) {
        ap.push_back(ap.back() * a);
        bp.push_back(bp.back() * b);
        sa.push_back(gausscobham::isqrt(ap.back().norm()));
        sb.push_back(gausscobham::isqrt(bp.back().norm()));
    }
    Int nb_pow = 1, d, t;
    for (unsigned long n = 1; n <= cap; ++n) {
        nb_pow *= b.norm();
        Int bound = num2 * nb_pow;
        for (unsigned long m = 1; m <= cap; ++m) {
            // norm(a^m - b^n) >= (|a^m| - |b^n|)^2 >= (d - 1)^2 for
            // d = |isqrt difference|, so such pairs cannot satisfy the bound.
            d = abs(sa[m] - sb[n]);
            if (d >= 1) {
                d -= 1;
                t = d * d * den2;
                if (t >= bound) continue;
            }
            if ((ap[m] - bp[n]).norm() * den2 < bound) return std::make_pair(n, m);
        }
    }
    return std::nullopt;
}

}  // namespace oracles
