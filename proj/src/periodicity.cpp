#include "gausscobham/periodicity.hpp"

#include <algorithm>
#include <set>

namespace gausscobham {

namespace {

// Scale factor for irrational square roots: bounds are within 2^-32.
const Int kSqrtScale = Int(1) << 32;

bool point_scan_less(const GaussInt& a, const GaussInt& b) {
    int c = cmp(a.im, b.im);
    if (c != 0) return c < 0;
    return cmp(a.re, b.re) < 0;
}

}  // namespace

Rat sqrt_lower(const Rat& x) {
    if (x < 0) throw std::invalid_argument("sqrt_lower: negative input");
    Int ab = x.get_num() * x.get_den();
    Int s = isqrt(ab);
    if (s * s == ab) return Rat(s) / Rat(x.get_den());
    Int t = isqrt(ab * kSqrtScale * kSqrtScale);
    Rat out(t, x.get_den() * kSqrtScale);
    out.canonicalize();
    return out;
}

Rat sqrt_upper(const Rat& x) {
    if (x < 0) throw std::invalid_argument("sqrt_upper: negative input");
    Int ab = x.get_num() * x.get_den();
    Int s = isqrt(ab);
    if (s * s == ab) return Rat(s) / Rat(x.get_den());
    Int t = isqrt(ab * kSqrtScale * kSqrtScale) + 1;
    Rat out(t, x.get_den() * kSqrtScale);
    out.canonicalize();
    return out;
}

Lattice::Lattice(GaussInt p1_, GaussInt p2_) : p1(std::move(p1_)), p2(std::move(p2_)) {
    if (det() == 0) throw std::invalid_argument("lattice: generators are Z-linearly dependent");
}

GaussInt Lattice::reduce(const GaussInt& z) const {
    Int d = det();
    // z = A p1 + B p2 over Q; subtract the integer parts of A and B.
    Int anum = z.re * p2.im - z.im * p2.re;
    Int bnum = p1.re * z.im - p1.im * z.re;
    Int fa = floor_div(anum, d), fb = floor_div(bnum, d);
    GaussInt r = z;
    r -= GaussInt{fa * p1.re, fa * p1.im};
    r -= GaussInt{fb * p2.re, fb * p2.im};
    return r;
}

std::array<Int, 3> Lattice::key() const {
    // Column Hermite form [[g, 0], [h, det/g]] with 0 <= h < |det/g|.
    Int a = p1.re, b = p1.im, c = p2.re, d = p2.im;
    Int g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    Int h = u * b + v * d;
    Int e = abs(det()) / g;
    h = mod_floor(h, e);
    return {g, h, e};
}

bool congruent(const GaussInt& z1, const GaussInt& z2, const Lattice& L) {
    Int d = L.det();
    GaussInt w = z1 - z2;
    Int anum = w.re * L.p2.im - w.im * L.p2.re;
    Int bnum = L.p1.re * w.im - L.p1.im * w.re;
    return mpz_divisible_p(anum.get_mpz_t(), d.get_mpz_t()) &&
           mpz_divisible_p(bnum.get_mpz_t(), d.get_mpz_t());
}

std::vector<GaussInt> fundamental_domain(const GaussInt& p, const GaussInt& q) {
    Lattice L(p, q);
    Int d = L.det();
    auto in_cell = [&](const GaussInt& z) {
        Int anum = z.re * q.im - z.im * q.re;
        Int bnum = p.re * z.im - p.im * z.re;
        auto half_open = [&](const Int& t) { return d > 0 ? (t >= 0 && t < d) : (t <= 0 && t > d); };
        return half_open(anum) && half_open(bnum);
    };
    Int xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const GaussInt corner : {GaussInt{}, p, q, p + q}) {
        xmin = std::min(xmin, corner.re);
        xmax = std::max(xmax, corner.re);
        ymin = std::min(ymin, corner.im);
        ymax = std::max(ymax, corner.im);
    }
    std::vector<GaussInt> out;
    for (Int y = ymin; y <= ymax; ++y)
        for (Int x = xmin; x <= xmax; ++x)
            if (GaussInt z{x, y}; in_cell(z)) out.push_back(z);
    if (Int(static_cast<long>(out.size())) != L.index())
        throw std::logic_error("fundamental_domain: cell size disagrees with the determinant");
    return out;
}

Int rect_period(const Lattice& L) {
    Int gi, gr;
    mpz_gcd(gi.get_mpz_t(), L.p1.im.get_mpz_t(), L.p2.im.get_mpz_t());
    mpz_gcd(gr.get_mpz_t(), L.p1.re.get_mpz_t(), L.p2.re.get_mpz_t());
    // Real members are multiples of |det|/gcd(imag parts); imaginary members
    // of |det|/gcd(real parts). A degenerate gcd of 0 cannot occur: it would
    // force det = 0.
    Int m = L.index() / gi;
    Int n = L.index() / gr;
    Int p;
    mpz_lcm(p.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    return p;
}

Region Region::ball(GaussInt center, Rat radius) {
    Region r;
    r.ball_ = true;
    r.center_ = std::move(center);
    r.radius_ = std::move(radius);
    r.radius_.canonicalize();
    if (r.radius_ >= 0) {
        Rat r2 = r.radius_ * r.radius_;
        Int bound = isqrt(ceil_div(r2.get_num(), r2.get_den())) + 1;
        for (Int y = r.center_.im - bound; y <= r.center_.im + bound; ++y)
            for (Int x = r.center_.re - bound; x <= r.center_.re + bound; ++x)
                if (GaussInt z{x, y}; r.contains(z)) r.points_.push_back(z);
    }
    return r;
}

Region Region::explicit_set(std::vector<GaussInt> points) {
    Region r;
    std::sort(points.begin(), points.end(), point_scan_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    r.points_ = std::move(points);
    return r;
}

bool Region::contains(const GaussInt& z) const {
    if (ball_) {
        if (radius_ < 0) return false;
        return (z - center_).norm() * radius_.get_den() * radius_.get_den() <=
               radius_.get_num() * radius_.get_num();
    }
    return std::binary_search(points_.begin(), points_.end(), z, point_scan_less);
}

Region shrink(const Region& U, const Rat& r) {
    if (r < 0) throw std::invalid_argument("shrink: negative distance");
    if (U.is_ball()) return Region::ball(U.center(), U.radius() - r);
    Rat r2 = r * r;
    Int bound = isqrt(ceil_div(r2.get_num(), r2.get_den())) + 1;
    std::vector<GaussInt> kept;
    for (const auto& z : U.points()) {
        bool ok = true;
        for (Int dy = -bound; dy <= bound && ok; ++dy) {
            for (Int dx = -bound; dx <= bound && ok; ++dx) {
                GaussInt w{z.re + dx, z.im + dy};
                Int nd = (w - z).norm();
                if (nd * r2.get_den() > r2.get_num()) continue;  // outside the disk
                if (!U.contains(w)) ok = false;
            }
        }
        if (ok) kept.push_back(z);
    }
    return Region::explicit_set(std::move(kept));
}

Configuration Configuration::automatic(AutomaticConfiguration a) { return Configuration(std::move(a)); }

Configuration Configuration::periodic(Lattice lattice, std::map<GaussInt, std::string> fd_values,
                                      std::vector<std::pair<GaussInt, std::string>> exceptions) {
    Periodic p{std::move(lattice), std::move(fd_values), {}};
    auto reps = fundamental_domain(p.lattice.p1, p.lattice.p2);
    for (const auto& rep : reps)
        if (!p.values.count(rep))
            throw std::invalid_argument("periodic configuration: missing value at representative " +
                                        rep.str());
    if (p.values.size() != reps.size())
        throw std::invalid_argument("periodic configuration: values keyed off the fundamental domain");
    for (auto& [z, sym] : exceptions)
        if (!p.exceptions.emplace(z, std::move(sym)).second)
            throw std::invalid_argument("periodic configuration: duplicate exception " + z.str());
    return Configuration(std::move(p));
}

Configuration Configuration::window(GaussInt origin, long width, long height,
                                    std::vector<std::string> cells) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("window: empty dimensions");
    if (cells.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("window: cell count disagrees with dimensions");
    return Configuration(WindowData{std::move(origin), width, height, std::move(cells)});
}

std::string Configuration::at(const GaussInt& z) const {
    if (const auto* a = std::get_if<AutomaticConfiguration>(&data_)) return a->value_at(z);
    if (const auto* p = std::get_if<Periodic>(&data_)) {
        auto it = p->exceptions.find(z);
        if (it != p->exceptions.end()) return it->second;
        return p->values.at(p->lattice.reduce(z));
    }
    const auto& w = std::get<WindowData>(data_);
    Int col = z.re - w.origin.re;
    Int row_up = z.im - w.origin.im;
    if (col < 0 || col >= w.width || row_up < 0 || row_up >= w.height)
        throw std::out_of_range("window: point " + z.str() + " outside the window");
    long r = w.height - 1 - row_up.get_si();
    return w.cells[static_cast<std::size_t>(r) * w.width + col.get_si()];
}

bool Configuration::in_domain(const GaussInt& z) const {
    if (const auto* w = std::get_if<WindowData>(&data_)) {
        Int col = z.re - w->origin.re;
        Int row_up = z.im - w->origin.im;
        return col >= 0 && col < w->width && row_up >= 0 && row_up < w->height;
    }
    return true;
}

std::vector<std::string> Configuration::alphabet() const {
    std::vector<std::string> out;
    auto add = [&out](const std::string& s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    };
    if (const auto* a = std::get_if<AutomaticConfiguration>(&data_)) return a->dfao().output_alphabet();
    if (const auto* p = std::get_if<Periodic>(&data_)) {
        for (const auto& [rep, sym] : p->values) add(sym);
        for (const auto& [z, sym] : p->exceptions) add(sym);
        return out;
    }
    for (const auto& c : std::get<WindowData>(data_).cells) add(c);
    return out;
}

bool Configuration::is_window() const { return std::holds_alternative<WindowData>(data_); }
const GaussInt& Configuration::window_origin() const { return std::get<WindowData>(data_).origin; }
long Configuration::window_width() const { return std::get<WindowData>(data_).width; }
long Configuration::window_height() const { return std::get<WindowData>(data_).height; }
const std::vector<std::string>& Configuration::window_cells() const {
    return std::get<WindowData>(data_).cells;
}

Configuration materialize_window(const Configuration& cfg, const GaussInt& origin, long width,
                                 long height) {
    std::vector<std::string> cells;
    cells.reserve(static_cast<std::size_t>(width) * height);
    for (long r = 0; r < height; ++r) {
        Int y = origin.im + (height - 1 - r);
        for (long c = 0; c < width; ++c) cells.push_back(cfg.at(GaussInt{origin.re + c, y}));
    }
    return Configuration::window(origin, width, height, std::move(cells));
}

PeriodicTable rectangular_table(const Configuration& cfg, const Lattice& L,
                                std::vector<std::pair<GaussInt, std::string>> exceptions) {
    Int p = rect_period(L);
    if (p > 4096) throw std::invalid_argument("rectangular_table: lattice period too large");
    PeriodicTable t;
    t.period = p.get_ui();
    t.values.assign(t.period, std::vector<std::string>(t.period));
    long pl = p.get_si();
    for (unsigned long a = 0; a < t.period; ++a) {
        for (unsigned long b = 0; b < t.period; ++b) {
            // Majority over translates, in case one sample hits one of the
            // configuration's own exceptional points.
            std::map<std::string, int> votes;
            for (long k = 0; k < 5; ++k)
                ++votes[cfg.at(GaussInt{static_cast<long>(a) + k * pl,
                                        static_cast<long>(b) + k * pl})];
            std::string best;
            int n = -1;
            for (const auto& [sym, cnt] : votes)
                if (cnt > n) {
                    n = cnt;
                    best = sym;
                }
            t.values[a][b] = best;
        }
    }
    t.exceptions = std::move(exceptions);
    t.validate();
    return t;
}

PeriodCheck has_period(const Configuration& cfg, const Lattice& L, const Region& U) {
    std::map<GaussInt, std::pair<GaussInt, std::string>> buckets;
    for (const auto& z : U.points()) {
        GaussInt rep = L.reduce(z);
        std::string v = cfg.at(z);
        auto [it, fresh] = buckets.emplace(rep, std::make_pair(z, v));
        if (!fresh && it->second.second != v) return {false, std::make_pair(it->second.first, z)};
    }
    return {};
}

PeriodCheck has_step_period(const Configuration& cfg, const GaussInt& p, const GaussInt& q,
                            const Region& U) {
    for (const auto& z : U.points()) {
        for (const GaussInt& s : {p, q}) {
            GaussInt w = z + s;
            if (!U.contains(w)) continue;
            if (cfg.at(z) != cfg.at(w)) return {false, std::make_pair(z, w)};
        }
    }
    return {};
}

StepToPeriodResult step_to_period(const Configuration& cfg, const GaussInt& p, const GaussInt& q,
                                  const Region& U) {
    if (!U.is_ball()) throw std::invalid_argument("step_to_period: region must be a ball");
    auto sp = has_step_period(cfg, p, q, U);
    if (!sp.holds)
        throw std::invalid_argument("step_to_period: no step-period; counterexample (" +
                                    sp.counterexample->first.str() + ", " +
                                    sp.counterexample->second.str() + ")");
    Rat r = sqrt_upper(Rat(p.norm())) + sqrt_upper(Rat(q.norm()));
    Region shrunk = shrink(U, r);
    return {shrunk, has_period(cfg, Lattice(p, q), shrunk)};
}

Region transfer_period(const Configuration& cfg, const Region& U, const GaussInt& p,
                       const GaussInt& q, const Region& V, const GaussInt& p2, const GaussInt& q2) {
    if (!U.is_ball() || !V.is_ball())
        throw std::invalid_argument("transfer_period: overlap certificate needs ball regions");
    auto sp = has_step_period(cfg, p, q, U);
    if (!sp.holds) throw std::invalid_argument("transfer_period: no step-period on U");
    auto pp = has_period(cfg, Lattice(p2, q2), V);
    if (!pp.holds) throw std::invalid_argument("transfer_period: no period on V");

    Rat rho1 = (sqrt_upper(Rat(p.norm())) + sqrt_upper(Rat(q.norm()))) / 2;
    Rat rho2 = std::max(sqrt_upper(Rat(p2.norm())), sqrt_upper(Rat(q2.norm())));
    Rat need = rho1 + rho2;
    Rat r1 = U.radius(), r2 = V.radius();
    Rat d_up = sqrt_upper(Rat((U.center() - V.center()).norm()));
    // Inner ball of the intersection: the smaller ball under containment,
    // else the lens bound (r1 + r2 - d)/2.
    Rat achieved;
    if (d_up + r2 <= r1)
        achieved = r2;
    else if (d_up + r1 <= r2)
        achieved = r1;
    else
        achieved = (r1 + r2 - d_up) / 2;
    if (achieved < need) {
        auto str = [](const Rat& v) { return v.get_str(); };
        throw std::invalid_argument("transfer_period: certified overlap radius " + str(achieved) +
                                    " below required " + str(need));
    }

    std::vector<GaussInt> pts = U.points();
    Region vshr = shrink(V, rho1);
    pts.insert(pts.end(), vshr.points().begin(), vshr.points().end());
    Region out = Region::explicit_set(std::move(pts));
    auto re = has_step_period(cfg, p, q, out);
    if (!re.holds)
        throw std::logic_error("transfer_period: transferred step-period failed re-verification at (" +
                               re.counterexample->first.str() + ", " + re.counterexample->second.str() +
                               ")");
    return out;
}

std::optional<Rat> ball_intersection_radius_sq(const GaussInt& c1, const Rat& r1_sq,
                                               const GaussInt& c2, const Rat& r2_sq) {
    if (r1_sq < 0 || r2_sq < 0) throw std::invalid_argument("ball_intersection_radius_sq: negative radius");
    Rat nrm((c1 - c2).norm());
    // Disjoint when d > r1 + r2: nrm - r1^2 - r2^2 > 2 sqrt(r1^2 r2^2).
    Rat gap = nrm - r1_sq - r2_sq;
    if (gap > 0 && gap * gap > 4 * r1_sq * r2_sq) return std::nullopt;
    // Containment (d <= |r1 - r2|): the smaller ball sits inside the lens.
    Rat s = r1_sq + r2_sq - nrm;
    if (s >= 0 && s * s >= 4 * r1_sq * r2_sq) return std::min(r1_sq, r2_sq);
    Rat bound = (sqrt_lower(r1_sq) + sqrt_lower(r2_sq) - sqrt_upper(nrm)) / 2;
    if (bound <= 0) return Rat(0);
    return bound * bound;
}

bool covering_check(unsigned long K) {
    if (K <= 8) return false;
    Int k = static_cast<long>(K);
    return 2 * (k - 8) * (k - 8) > k * k;
}

std::optional<Detection> detect_eventual_periodicity(const Configuration& cfg, const Rat& W,
                                                     const Rat& V) {
    if (!(V > W) || W <= 0) throw std::invalid_argument("detect: requires V > W > 0");
    Region ballW = Region::ball(GaussInt{}, W);
    Region ballV = Region::ball(GaussInt{}, V);
    std::map<GaussInt, std::string> vals;
    for (const auto& z : ballV.points()) vals.emplace(z, cfg.at(z));

    // Autocorrelation harvest: vectors translating the W-window onto itself
    // wherever both endpoints are inside it. A finite exception set breaks a
    // few translated pairs even for a true period vector, so a small
    // mismatch budget is allowed; verification below is still strict.
    std::vector<GaussInt> candidates;
    for (const auto& p : ballW.points()) {
        if (p.is_zero()) continue;
        if (p.im < 0 || (p.im == 0 && p.re < 0)) continue;  // one per +/- pair
        long tested = 0, mismatched = 0;
        for (const auto& z : ballW.points()) {
            GaussInt w = z + p;
            if (!ballW.contains(w)) continue;
            ++tested;
            if (vals.at(z) != vals.at(w)) ++mismatched;
        }
        if (tested > 0 && mismatched <= std::max(2L, tested / 16)) candidates.push_back(p);
    }
    if (candidates.size() < 2) return std::nullopt;

    struct PairKey {
        Int absdet;
        std::size_t i, j;
    };
    std::vector<PairKey> pairs;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            Int d = candidates[i].re * candidates[j].im - candidates[i].im * candidates[j].re;
            if (d != 0) pairs.push_back({abs(d), i, j});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const PairKey& a, const PairKey& b) {
        if (a.absdet != b.absdet) return a.absdet < b.absdet;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    Rat half_w_sq = (W / 2) * (W / 2);
    std::set<std::array<Int, 3>> seen_lattices;
    int tried = 0;
    for (const auto& pk : pairs) {
        if (tried >= 64) break;
        Lattice L(candidates[pk.i], candidates[pk.j]);
        if (!seen_lattices.insert(L.key()).second) continue;
        ++tried;

        // Majority value per residue class on the verification ball.
        std::map<GaussInt, std::map<std::string, long>> counts;
        for (const auto& z : ballV.points()) ++counts[L.reduce(z)][vals.at(z)];
        std::map<GaussInt, std::string> majority;
        for (const auto& [rep, cs] : counts) {
            long best = -1;
            std::string sym;
            for (const auto& [s, c] : cs)
                if (c > best) {
                    best = c;
                    sym = s;
                }
            majority.emplace(rep, sym);
        }
        std::vector<std::pair<GaussInt, std::string>> exceptions;
        bool ok = true;
        for (const auto& z : ballV.points()) {
            const std::string& v = vals.at(z);
            if (v == majority.at(L.reduce(z))) continue;
            // Exceptions must stay within the inner W/2 ball.
            if (Rat(z.norm()) > half_w_sq) {
                ok = false;
                break;
            }
            exceptions.emplace_back(z, v);
        }
        if (!ok) continue;

        // Full re-verification on the window minus the exception points.
        std::vector<GaussInt> rest;
        std::set<GaussInt> excl;
        for (const auto& [z, s] : exceptions) excl.insert(z);
        for (const auto& z : ballV.points())
            if (!excl.count(z)) rest.push_back(z);
        if (!has_period(cfg, L, Region::explicit_set(std::move(rest))).holds)
            throw std::logic_error("detect: majority filtering left a period violation");
        return Detection{L, std::move(exceptions)};
    }
    return std::nullopt;
}

}  // namespace gausscobham
