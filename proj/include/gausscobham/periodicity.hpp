#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gausscobham/automata.hpp"

namespace gausscobham {

/// Rational lower bound on sqrt(x); exact when x is a perfect square.
Rat sqrt_lower(const Rat& x);
/// Rational upper bound on sqrt(x); exact when x is a perfect square.
Rat sqrt_upper(const Rat& x);

/// A rank-2 sublattice of Z[i] spanned by p1, p2 (integer determinant != 0).
struct Lattice {
    GaussInt p1, p2;

    Lattice(GaussInt p1_, GaussInt p2_);
    Int det() const { return p1.re * p2.im - p1.im * p2.re; }
    Int index() const { return abs(det()); }

    /// The representative of z in the half-open fundamental parallelogram
    /// {A p1 + B p2 : 0 <= A, B < 1}.
    GaussInt reduce(const GaussInt& z) const;

    /// Canonical Hermite-form key; equal exactly for equal lattices.
    std::array<Int, 3> key() const;
};

/// Whether z1 - z2 lies in the lattice, by solving the 2x2 integer system.
bool congruent(const GaussInt& z1, const GaussInt& z2, const Lattice& L);

/// The lattice points of {A p + B q : 0 <= A, B < 1}; exactly |det| of them.
std::vector<GaussInt> fundamental_domain(const GaussInt& p, const GaussInt& q);

/// The least positive integer p such that the lattice contains both p and
/// p*i (and hence every Gaussian multiple of p): lcm of the least positive
/// real and imaginary members.
Int rect_period(const Lattice& L);

/// A finite set of lattice points: a closed rational-radius ball around a
/// Gaussian center, or an explicit point set. Membership tests compare
/// squared norms exactly.
class Region {
public:
    static Region ball(GaussInt center, Rat radius);
    static Region explicit_set(std::vector<GaussInt> points);

    bool is_ball() const { return ball_; }
    const GaussInt& center() const { return center_; }
    const Rat& radius() const { return radius_; }

    bool contains(const GaussInt& z) const;
    /// All member points, sorted by (im, re).
    const std::vector<GaussInt>& points() const { return points_; }

private:
    Region() = default;
    bool ball_ = false;
    GaussInt center_;
    Rat radius_ = 0;
    std::vector<GaussInt> points_;
};

/// {z in U : every lattice point within distance r of z lies in U}. For a
/// ball this is the concentric ball with radius reduced by r (a subset of
/// the exact shrink, which is the safe direction); for explicit sets it is
/// computed by scanning the surrounding disk of each point.
Region shrink(const Region& U, const Rat& r);

/// A total map from (part of) Z[i] to a finite alphabet: automaton-backed,
/// lattice-periodic with exceptions, or an explicit rectangular window.
class Configuration {
public:
    static Configuration automatic(AutomaticConfiguration a);
    static Configuration periodic(Lattice lattice, std::map<GaussInt, std::string> fd_values,
                                  std::vector<std::pair<GaussInt, std::string>> exceptions = {});
    static Configuration window(GaussInt origin, long width, long height,
                                std::vector<std::string> cells);

    std::string at(const GaussInt& z) const;
    bool in_domain(const GaussInt& z) const;
    /// Distinct symbols in a deterministic order.
    std::vector<std::string> alphabet() const;

    bool is_window() const;
    const GaussInt& window_origin() const;
    long window_width() const;
    long window_height() const;
    const std::vector<std::string>& window_cells() const;

private:
    struct Periodic {
        Lattice lattice;
        std::map<GaussInt, std::string> values;      // keyed by reduced representative
        std::map<GaussInt, std::string> exceptions;  // override finitely many points
    };
    struct WindowData {
        GaussInt origin;  // bottom-left cell
        long width = 0, height = 0;
        std::vector<std::string> cells;  // row-major, top row first
    };
    explicit Configuration(std::variant<AutomaticConfiguration, Periodic, WindowData> data)
        : data_(std::move(data)) {}
    std::variant<AutomaticConfiguration, Periodic, WindowData> data_;
};

/// Copies cfg values into a window configuration covering the rectangle
/// with the given bottom-left origin.
Configuration materialize_window(const Configuration& cfg, const GaussInt& origin, long width,
                                 long height);

/// Reduces a lattice-periodic configuration to a rectangular integer period
/// p = rect_period(L) and samples the p x p value table, ready for
/// periodic_to_dfao. Exceptions are passed through.
PeriodicTable rectangular_table(const Configuration& cfg, const Lattice& L,
                                std::vector<std::pair<GaussInt, std::string>> exceptions = {});

struct PeriodCheck {
    bool holds = true;
    std::optional<std::pair<GaussInt, GaussInt>> counterexample;
};

/// Whether lattice-congruent points of U always carry equal values; residues
/// are bucketed through the fundamental domain rather than scanned pairwise.
PeriodCheck has_period(const Configuration& cfg, const Lattice& L, const Region& U);

/// Whether single steps by p or q inside U always preserve the value.
PeriodCheck has_step_period(const Configuration& cfg, const GaussInt& p, const GaussInt& q,
                            const Region& U);

struct StepToPeriodResult {
    Region region;       // U shrunk by an upper bound on |p|+|q|
    PeriodCheck period;  // re-verification of the full period on that region
};

/// A step-period on a ball propagates to a lattice period once the ball is
/// shrunk by |p|+|q|; the shrink uses an outward-safe rational bound and the
/// period is re-verified. Throws when U is not a ball or has no step-period.
StepToPeriodResult step_to_period(const Configuration& cfg, const GaussInt& p, const GaussInt& q,
                                  const Region& U);

/// Given a step-period (p, q) on U and a period (p2, q2) on V whose
/// intersection certifiably contains a ball of radius (|p|+|q|)/2 +
/// max(|p2|, |q2|), extends the step-period to U union shrink(V, (|p|+|q|)/2)
/// and re-verifies it. U and V must be balls; throws with the achieved inner
/// radius when the overlap cannot be certified.
Region transfer_period(const Configuration& cfg, const Region& U, const GaussInt& p,
                       const GaussInt& q, const Region& V, const GaussInt& p2, const GaussInt& q2);

/// A rational lower bound on the squared radius of a ball inside the
/// intersection of two balls given by squared radii. When one ball contains
/// the other, the smaller radius is returned; when they are disjoint,
/// nothing is.
std::optional<Rat> ball_intersection_radius_sq(const GaussInt& c1, const Rat& r1_sq,
                                               const GaussInt& c2, const Rat& r2_sq);

/// Whether balls of radius (1 - 8/K) around all lattice points cover the
/// plane: exactly the integer condition 2 (K-8)^2 > K^2, since the covering
/// radius of Z[i] is sqrt(2)/2.
bool covering_check(unsigned long K);

struct Detection {
    Lattice lattice;
    std::vector<std::pair<GaussInt, std::string>> exceptions;
};

/// Searches for an eventual-periodicity witness: step vectors are harvested
/// from the exact autocorrelation of the radius-W window, candidate bases
/// ranked by |det|, and each candidate verified on the radius-V window with
/// per-class majority values; violating cells become the exception set and a
/// witness is accepted only if they all fit in the ball of radius W/2. A
/// returned witness is fully verified; absence proves nothing.
std::optional<Detection> detect_eventual_periodicity(const Configuration& cfg, const Rat& W,
                                                     const Rat& V);

}  // namespace gausscobham
