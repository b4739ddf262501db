#include "gausscobham/numeration.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gausscobham {

DigitSet::DigitSet(std::vector<GaussInt> digits) : digits_(std::move(digits)) {
    for (std::size_t k = 0; k < digits_.size(); ++k) {
        auto [it, fresh] = index_.emplace(digits_[k], static_cast<int>(k));
        if (!fresh) throw std::invalid_argument("digit set: duplicate digit " + digits_[k].str());
    }
    if (!contains(GaussInt{})) throw std::invalid_argument("digit set: must contain 0");
}

int DigitSet::index_of(const GaussInt& d) const {
    auto it = index_.find(d);
    return it == index_.end() ? -1 : it->second;
}

GaussInt evaluate(const Word& w, const GaussInt& base) {
    if (base.norm() <= 1) throw std::invalid_argument("evaluate: base must have norm > 1");
    GaussInt v;
    for (const auto& d : w) v = v * base + d;
    return v;
}

DigitSet canonical_digits(const GaussInt& base) {
    if (base.norm() <= 1) throw std::invalid_argument("canonical_digits: base must have norm > 1");
    Int lambda;
    mpz_gcd(lambda.get_mpz_t(), base.re.get_mpz_t(), base.im.get_mpz_t());
    Int pmax = base.norm() / lambda;
    std::vector<GaussInt> ds;
    for (Int p = 0; p < pmax; ++p)
        for (Int q = 0; q < lambda; ++q) ds.push_back({p, q});
    return DigitSet(std::move(ds));
}

DigitSet ddg_digits(const GaussInt& base) {
    Int n = base.norm();
    if (n < 5) throw std::invalid_argument("ddg_digits: base must have norm >= 5");
    Int bound = isqrt(n);
    std::vector<GaussInt> ds;
    for (Int x = -bound; x <= bound; ++x) {
        for (Int y = -bound; y <= bound; ++y) {
            Int t = 2 * (x * base.re + y * base.im);   // 2 Re(d conj(base))
            Int u = 2 * (y * base.re - x * base.im);   // 2 Im(d conj(base))
            if (-n <= t && t < n && -n <= u && u < n) ds.push_back({x, y});
        }
    }
    std::sort(ds.begin(), ds.end());
    return DigitSet(std::move(ds));
}

DigitSet natural_digits(const GaussInt& base) {
    if (base.norm() <= 1) throw std::invalid_argument("natural_digits: base must have norm > 1");
    std::vector<GaussInt> ds;
    for (Int k = 0; k < base.norm(); ++k) ds.push_back({k, 0});
    return DigitSet(std::move(ds));
}

bool is_complete_residue_system(const DigitSet& D, const GaussInt& base) {
    if (base.norm() <= 1) throw std::invalid_argument("is_complete_residue_system: norm(base) must be > 1");
    if (Int(static_cast<long>(D.size())) != base.norm()) return false;
    std::set<GaussInt> residues;
    for (const auto& d : D.digits())
        if (!residues.insert(divmod_nearest(d, base).r).second) return false;
    return true;
}

namespace {

// z in the closed disk of radius M/(|base|-1), i.e. norm(z)(sqrt(N)-1)^2 <= M2,
// decided after clearing the square root:
//   nz(N+1) - M2 <= 2 nz sqrt(N)  <=>  LHS <= 0, or LHS^2 <= 4 nz^2 N.
bool in_attractor(const GaussInt& z, const Int& n, const Int& m2) {
    Int nz = z.norm();
    Int lhs = nz * (n + 1) - m2;
    if (lhs <= 0) return true;
    return lhs * lhs <= 4 * nz * nz * n;
}

std::vector<GaussInt> attractor_points(const GaussInt& base, const Int& m2) {
    Int n = base.norm();
    // Over-approximate the scan box; each point is then tested exactly.
    double radius = std::sqrt(m2.get_d()) / (std::sqrt(n.get_d()) - 1.0);
    long bound = static_cast<long>(std::ceil(radius)) + 2;
    std::vector<GaussInt> pts;
    for (long x = -bound; x <= bound; ++x)
        for (long y = -bound; y <= bound; ++y)
            if (GaussInt z{x, y}; in_attractor(z, n, m2)) pts.push_back(z);
    return pts;
}

}  // namespace

NumerationCheck is_numeration_system(const GaussInt& base, const DigitSet& D) {
    if (base.norm() <= 1) throw std::invalid_argument("is_numeration_system: norm(base) must be > 1");
    NumerationCheck out;
    out.complete_residue = is_complete_residue_system(D, base);
    if (!out.complete_residue || !D.contains(GaussInt{})) return out;

    std::map<GaussInt, GaussInt> residue_to_digit;
    Int m2 = 0;
    for (const auto& d : D.digits()) {
        residue_to_digit.emplace(divmod_nearest(d, base).r, d);
        m2 = std::max(m2, d.norm());
    }
    auto step = [&](const GaussInt& z) {
        const GaussInt& d = residue_to_digit.at(divmod_nearest(z, base).r);
        GaussInt q;
        divides(base, z - d, &q);
        return q;
    };

    // The extraction maps the attractor ball into itself and every orbit in
    // Z[i] eventually enters it, so the system is integral iff the only cycle
    // among these points is the fixed point 0.
    auto pts = attractor_points(base, m2);
    std::map<GaussInt, int> color;  // 0 unvisited, 1 on current path, 2 done
    for (const auto& start : pts) {
        if (color.count(start)) continue;
        std::vector<GaussInt> path;
        GaussInt z = start;
        while (true) {
            auto it = color.find(z);
            if (it != color.end()) {
                if (it->second == 1) {
                    // Found a cycle; slice it out of the current path.
                    auto at = std::find(path.begin(), path.end(), z);
                    std::vector<GaussInt> cyc(at, path.end());
                    if (!(cyc.size() == 1 && cyc[0].is_zero())) {
                        out.cycle = std::move(cyc);
                        return out;
                    }
                }
                break;
            }
            color[z] = 1;
            path.push_back(z);
            z = step(z);
        }
        for (const auto& p : path) color[p] = 2;
    }
    out.integral = true;
    return out;
}

NumerationSystem NumerationSystem::make(GaussInt base, DigitSet digits) {
    NumerationSystem sys;
    sys.base = std::move(base);
    sys.digits = std::move(digits);
    auto check = is_numeration_system(sys.base, sys.digits);
    sys.complete_residue = check.complete_residue;
    sys.integral = check.integral;
    sys.cycle_witness = std::move(check.cycle);
    if (sys.complete_residue)
        for (const auto& d : sys.digits.digits())
            sys.residue_to_digit_.emplace(divmod_nearest(d, sys.base).r, d);
    return sys;
}

const GaussInt& NumerationSystem::digit_for(const GaussInt& z) const {
    if (!complete_residue)
        throw std::invalid_argument("digit_for: digit set is not a complete residue system");
    return residue_to_digit_.at(divmod_nearest(z, base).r);
}

Word expand(const GaussInt& z, const NumerationSystem& sys) {
    if (!sys.integral) throw std::invalid_argument("expand: numeration system is not integral");
    Word lsd;
    GaussInt cur = z;
    while (!cur.is_zero()) {
        const GaussInt& d = sys.digit_for(cur);
        lsd.push_back(d);
        GaussInt q;
        divides(sys.base, cur - d, &q);
        cur = q;
        if (lsd.size() > 4096) throw std::logic_error("expand: runaway extraction");
    }
    std::reverse(lsd.begin(), lsd.end());
    return lsd;
}

namespace {

// norm(z) < r^2 * scale in cleared integer form, for r = num/den.
bool inside_open_disk(const Int& nz, const Rat& r, const Int& scale) {
    return nz * r.get_den() * r.get_den() < r.get_num() * r.get_num() * scale;
}

bool inside_closed_disk(const Int& nz, const Rat& r, const Int& scale) {
    return nz * r.get_den() * r.get_den() <= r.get_num() * r.get_num() * scale;
}

}  // namespace

DigitSet enlarged_digit_set(const GaussInt& base, const DigitSet& D, const Rat& r) {
    if (base.norm() <= 1) throw std::invalid_argument("enlarged_digit_set: norm(base) must be > 1");
    if (r < 2) throw std::invalid_argument("enlarged_digit_set: requires r >= 2");
    Int n = base.norm();
    for (const auto& d : D.digits())
        if (!inside_open_disk(d.norm(), r, n))
            throw std::invalid_argument("enlarged_digit_set: digit " + d.str() +
                                        " lies outside the open disk of radius r*|base|");
    // r^2 * n bounds the squared radius, so coordinates are below sqrt of that.
    Int r2n_ceil = ceil_div(r.get_num() * r.get_num() * n, r.get_den() * r.get_den());
    Int bound = isqrt(r2n_ceil) + 1;
    std::vector<GaussInt> ds;
    for (Int x = -bound; x <= bound; ++x)
        for (Int y = -bound; y <= bound; ++y)
            if (GaussInt z{x, y}; inside_open_disk(z.norm(), r, n)) ds.push_back(z);
    std::sort(ds.begin(), ds.end());
    return DigitSet(std::move(ds));
}

EnlargedContext::EnlargedContext(GaussInt base_, Rat r_)
    : base(std::move(base_)), r(std::move(r_)), digits(enlarged_digit_set(base, DigitSet({GaussInt{}}), r)) {
    for (const auto& d : digits.digits()) by_residue[divmod_nearest(d, base).r].push_back(d);
}

unsigned short_expansion_length(const GaussInt& z, const GaussInt& base, const Rat& r) {
    if (z.is_zero()) return 0;
    // Strict interior: a boundary value norm(z) = r^2 norm(base)^n can miss
    // the open digit disk at n <= 1, while the strict disk always expands.
    Int n = base.norm();
    Int scale = n;
    for (unsigned k = 1;; ++k) {
        if (inside_open_disk(z.norm(), r, scale)) return k;
        scale *= n;
        if (k > 100000) throw std::logic_error("short_expansion_length: runaway");
    }
}

namespace {

struct ShortExpansionSearch {
    const EnlargedContext& ctx;
    Int base_norm;
    std::vector<Int> norm_pow;              // base_norm^j for j = 0..n
    std::set<std::pair<GaussInt, unsigned>> failed;
    Word word;  // accumulated on unwind, so most-significant digit first

    explicit ShortExpansionSearch(const EnlargedContext& c, unsigned n) : ctx(c), base_norm(c.base.norm()) {
        norm_pow.resize(n + 1);
        norm_pow[0] = 1;
        for (unsigned j = 1; j <= n; ++j) norm_pow[j] = norm_pow[j - 1] * base_norm;
    }

    bool within(const GaussInt& z, unsigned rem) const {
        return inside_closed_disk(z.norm(), ctx.r, norm_pow[rem]);
    }

    bool run(const GaussInt& cur, unsigned rem) {
        if (rem == 0) return cur.is_zero();
        if (failed.count({cur, rem})) return false;

        // The truncation-toward-origin digit first; it always lies strictly
        // inside the disk since |cur - q*base| <= sqrt(2)|base| < r|base|.
        Int n = base_norm;
        Int x = cur.re * ctx.base.re + cur.im * ctx.base.im;
        Int y = cur.im * ctx.base.re - cur.re * ctx.base.im;
        GaussInt q0{trunc_div(x, n), trunc_div(y, n)};
        GaussInt d0 = cur - q0 * ctx.base;

        std::vector<std::pair<GaussInt, GaussInt>> options;  // (digit, quotient)
        if (within(q0, rem - 1)) options.emplace_back(d0, q0);
        auto it = ctx.by_residue.find(divmod_nearest(cur, ctx.base).r);
        if (it != ctx.by_residue.end()) {
            std::vector<std::pair<GaussInt, GaussInt>> alts;
            for (const auto& d : it->second) {
                if (d == d0) continue;
                GaussInt q;
                divides(ctx.base, cur - d, &q);
                if (within(q, rem - 1)) alts.emplace_back(d, q);
            }
            std::sort(alts.begin(), alts.end(), [](const auto& a, const auto& b) {
                Int na = a.second.norm(), nb = b.second.norm();
                if (na != nb) return na < nb;
                return a.first < b.first;
            });
            options.insert(options.end(), alts.begin(), alts.end());
        }
        for (const auto& [d, q] : options) {
            if (run(q, rem - 1)) {
                word.push_back(d);
                return true;
            }
        }
        failed.insert({cur, rem});
        return false;
    }
};

}  // namespace

Word short_expansion(const GaussInt& z, unsigned n, const EnlargedContext& ctx) {
    ShortExpansionSearch search(ctx, n);
    if (!search.within(z, n))
        throw std::invalid_argument("short_expansion: norm(" + z.str() + ") exceeds r^2 * norm(base)^" +
                                    std::to_string(n));
    if (!search.run(z, n))
        throw std::runtime_error("short_expansion: no length-" + std::to_string(n) + " expansion of " +
                                 z.str() + " over the open digit disk");
    return search.word;
}

Word short_expansion(const GaussInt& z, const GaussInt& base, const Rat& r, unsigned n) {
    EnlargedContext ctx(base, r);
    return short_expansion(z, n, ctx);
}

}  // namespace gausscobham
