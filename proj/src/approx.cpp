#include "gausscobham/approx.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gausscobham/periodicity.hpp"

namespace gausscobham {

std::optional<PowerPair> dirichlet_pair(const GaussInt& alpha, const GaussInt& beta, const Rat& eps,
                                        unsigned long cap) {
    if (eps <= 0) throw std::invalid_argument("dirichlet_pair: eps must be positive");
    if (cap == 0) throw std::invalid_argument("dirichlet_pair: cap must be positive");
    auto indep = multiplicatively_independent(alpha, beta);
    if (!indep.independent)
        throw std::invalid_argument("dirichlet_pair: inputs are multiplicatively dependent, " +
                                    indep.certificate(alpha, beta));

    const Int na = alpha.norm(), nb = beta.norm();
    const double la = std::log(na.get_d()), lb = std::log(nb.get_d());
    const double eps_d = eps.get_d();
    const Rat eps_sq = eps * eps;

    std::vector<GaussInt> apow{GaussInt{1, 0}};
    auto alpha_pow = [&](unsigned long m) -> const GaussInt& {
        while (apow.size() <= m) apow.push_back(apow.back() * alpha);
        return apow[m];
    };

    GaussInt bpow{1, 0};
    Int nb_pow = 1;
    for (unsigned long n = 1; n <= cap; ++n) {
        bpow *= beta;
        nb_pow *= nb;
        // Any hit needs |alpha|^m within (1-eps, 1+eps) of |beta|^n; the
        // float window is padded and every candidate is verified exactly.
        double lo_d = eps_d < 1 ? (n * lb + 2 * std::log(1 - eps_d)) / la : 1.0;
        double hi_d = (n * lb + 2 * std::log1p(eps_d)) / la;
        long mlo = std::max(1L, static_cast<long>(std::floor(lo_d)) - 2);
        long mhi = std::min(static_cast<long>(cap), static_cast<long>(std::ceil(hi_d)) + 2);
        Rat bound = eps_sq * Rat(nb_pow);
        for (long m = mlo; m <= mhi; ++m) {
            Int d = (alpha_pow(m) - bpow).norm();
            if (Rat(d) < bound) {
                Rat err(d);
                err /= Rat(nb_pow);
                err.canonicalize();
                return PowerPair{static_cast<unsigned long>(m), n, err};
            }
        }
    }
    return std::nullopt;
}

std::vector<std::pair<long, long>> non_isolation_witnesses(const GaussInt& alpha,
                                                           const GaussInt& beta, const Rat& delta,
                                                           long cap) {
    if (cap < 0 || cap > 2000) throw std::invalid_argument("non_isolation_witnesses: cap out of range");
    auto indep = multiplicatively_independent(alpha, beta);
    if (!indep.independent)
        throw std::invalid_argument("non_isolation_witnesses: inputs are multiplicatively dependent");
    std::vector<std::pair<long, long>> out;
    if (delta <= 0) return out;
    const Rat d2 = delta * delta;

    std::vector<GaussInt> ap{GaussInt{1, 0}}, bp{GaussInt{1, 0}};
    std::vector<Int> nap{1}, nbp{1};
    for (long k = 1; k <= cap; ++k) {
        ap.push_back(ap.back() * alpha);
        bp.push_back(bp.back() * beta);
        nap.push_back(nap.back() * alpha.norm());
        nbp.push_back(nbp.back() * beta.norm());
    }
    const GaussInt one{1, 0};
    // |alpha^m beta^(-n) - 1| < delta, cross-multiplied per sign pattern.
    auto ok = [&](long m, long n) {
        long am = std::labs(m), an = std::labs(n);
        if (m >= 0 && n >= 0) return Rat((ap[am] - bp[an]).norm()) < d2 * Rat(nbp[an]);
        if (m >= 0 && n < 0) return Rat((ap[am] * bp[an] - one).norm()) < d2;
        if (m < 0 && n >= 0) return Rat((one - ap[am] * bp[an]).norm()) < d2 * Rat(nap[am] * nbp[an]);
        return Rat((bp[an] - ap[am]).norm()) < d2 * Rat(nap[am]);
    };
    for (long am = 0; am <= cap; ++am) {
        for (long an = 0; an <= cap; ++an) {
            if (am == 0 && an == 0) continue;
            std::vector<std::pair<long, long>> signs{{am, an}};
            if (an != 0) signs.push_back({am, -an});
            if (am != 0) signs.push_back({-am, an});
            if (am != 0 && an != 0) signs.push_back({-am, -an});
            for (auto [m, n] : signs)
                if (ok(m, n)) out.emplace_back(m, n);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        long ma = std::max(std::labs(a.first), std::labs(a.second));
        long mb = std::max(std::labs(b.first), std::labs(b.second));
        if (ma != mb) return ma < mb;
        return a < b;
    });
    return out;
}

NonCollinearTriple find_noncollinear_triple(const AutomaticConfiguration& beta_cfg,
                                            const AutomaticConfiguration& alpha_cfg, int s,
                                            const TripleCaps& caps) {
    if (is_root_of_integer(beta_cfg.base()))
        throw std::invalid_argument("find_noncollinear_triple: beta base is a root of an integer");
    auto ret = return_numbers(beta_cfg.dfao(), beta_cfg.base(), s, caps.return_count);

    std::vector<int> colors;
    std::vector<Word> alpha_words;
    colors.reserve(ret.values.size());
    for (const auto& u : ret.values) {
        Word w = alpha_cfg.expansion_of(u);
        colors.push_back(alpha_cfg.dfao().state_on(w));
        alpha_words.push_back(std::move(w));
    }

    auto beta_word = [&](std::size_t j) {
        Word fed = ret.w1;
        for (std::size_t t = 0; t < j; ++t) fed.insert(fed.end(), ret.w2.begin(), ret.w2.end());
        fed.insert(fed.end(), ret.w3.begin(), ret.w3.end());
        if (beta_cfg.dfao().reading == Reading::lsd_first) std::reverse(fed.begin(), fed.end());
        return fed;  // most significant digit first
    };

    const std::size_t J = ret.values.size();
    for (std::size_t k = 0; k < J; ++k) {
        for (std::size_t l = 1; k + 2 * l < J; ++l) {
            if (colors[k] != colors[k + l] || colors[k] != colors[k + 2 * l]) continue;
            const GaussInt &x = ret.values[k], &y = ret.values[k + l], &z = ret.values[k + 2 * l];
            if (collinear(x, y, z))
                throw std::logic_error("find_noncollinear_triple: collinear return-number progression");
            NonCollinearTriple t;
            t.beta_state = s;
            t.alpha_state = colors[k];
            t.x = x;
            t.y = y;
            t.z = z;
            t.beta_words = {beta_word(k), beta_word(k + l), beta_word(k + 2 * l)};
            t.alpha_words = {alpha_words[k], alpha_words[k + l], alpha_words[k + 2 * l]};
            return t;
        }
    }
    throw std::runtime_error("find_noncollinear_triple: no monochromatic progression among " +
                             std::to_string(J) + " return numbers");
}

std::pair<GaussInt, GaussInt> periods_from_triple(const NonCollinearTriple& t,
                                                  const GaussInt& alpha_m, const GaussInt& beta_n) {
    GaussInt d = alpha_m - beta_n;
    if (d.is_zero()) throw std::invalid_argument("periods_from_triple: equal powers");
    GaussInt p = (t.y - t.x) * d;
    GaussInt q = (t.z - t.x) * d;
    if (p.re * q.im - p.im * q.re == 0)
        throw std::logic_error("periods_from_triple: collinear triple slipped through");
    // Size guard: |p| <= 2 xi |d| with xi one more than the largest magnitude.
    Rat xi = sqrt_upper(Rat(std::max({t.x.norm(), t.y.norm(), t.z.norm()}))) + 1;
    Rat cap = 4 * xi * xi * Rat(d.norm());
    if (Rat(p.norm()) > cap || Rat(q.norm()) > cap)
        throw std::logic_error("periods_from_triple: period exceeds its size bound");
    return {p, q};
}

ShiftCheck shifting_property_check(const AutomaticConfiguration& cfg, int s, std::size_t samples,
                                   std::uint64_t seed) {
    const Dfao& a = cfg.dfao();
    auto words = words_to_state(a, s, 8);
    if (words.size() < 1)
        throw std::invalid_argument("shifting_property_check: state is unreachable");

    std::mt19937_64 rng(seed);
    auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    ShiftCheck out;
    for (std::size_t iter = 0; iter < samples; ++iter) {
        const Word& wx = words[pick(words.size())];
        const Word& wy = words[pick(words.size())];
        std::size_t n = pick(6);
        Word suffix;
        for (std::size_t k = 0; k < n; ++k) suffix.push_back(a.alphabet[pick(a.alphabet.size())]);

        Word fed1 = wx, fed2 = wy;
        fed1.insert(fed1.end(), suffix.begin(), suffix.end());
        fed2.insert(fed2.end(), suffix.begin(), suffix.end());
        GaussInt z1 = fed_word_value(a, cfg.base(), fed1);
        GaussInt z2 = fed_word_value(a, cfg.base(), fed2);

        std::string o1 = a.outputs[a.feed(a.initial, fed1)];
        std::string o2 = a.outputs[a.feed(a.initial, fed2)];
        std::string c1, c2;
        try {
            c1 = cfg.value_at(z1);
            c2 = cfg.value_at(z2);
        } catch (const std::runtime_error&) {
            // value_at already certifies an inconsistency with its own words.
            out.passed = false;
            out.samples = iter + 1;
            out.witness = ShiftWitness{fed1, fed2, z1, z2, o1, o2};
            return out;
        }
        ++out.samples;
        if (o1 != o2 || c1 != o1 || c2 != o2) {
            out.passed = false;
            out.witness = ShiftWitness{fed1, fed2, z1, z2, o1 + "/" + c1, o2 + "/" + c2};
            return out;
        }
    }
    return out;
}

}  // namespace gausscobham
