#pragma once

#include <map>
#include <string>
#include <vector>

#include "gausscobham/gaussint.hpp"

namespace gausscobham {

/// A finite ordered digit set. Must contain 0; duplicates are rejected.
class DigitSet {
public:
    DigitSet() = default;
    explicit DigitSet(std::vector<GaussInt> digits);

    const std::vector<GaussInt>& digits() const { return digits_; }
    std::size_t size() const { return digits_.size(); }
    const GaussInt& operator[](std::size_t k) const { return digits_[k]; }
    bool contains(const GaussInt& d) const { return index_.count(d) != 0; }
    /// Position of d, or -1 when absent.
    int index_of(const GaussInt& d) const;

    friend bool operator==(const DigitSet& a, const DigitSet& b) { return a.digits_ == b.digits_; }

private:
    std::vector<GaussInt> digits_;
    std::map<GaussInt, int> index_;
};

/// A word over a digit set, most-significant digit first. The empty word
/// evaluates to 0.
using Word = std::vector<GaussInt>;

/// Sum of w[j] * base^(n-1-j): the value of w read with the last entry as the
/// least significant digit. Requires norm(base) > 1.
GaussInt evaluate(const Word& w, const GaussInt& base);

/// The digit set {p + qi : 0 <= p < norm(base)/L, 0 <= q < L} where
/// L = gcd(re, im); always a complete residue system mod base.
DigitSet canonical_digits(const GaussInt& base);

/// The digits d with Re(d/base) and Im(d/base) in [-1/2, 1/2), computed via
/// the exact inequalities -N <= 2*Re(d*conj(base)) < N (N = norm(base)).
/// Requires norm(base) >= 5.
DigitSet ddg_digits(const GaussInt& base);

/// {0, 1, ..., norm(base)-1}.
DigitSet natural_digits(const GaussInt& base);

/// Whether D has exactly norm(base) digits, pairwise incongruent mod base.
bool is_complete_residue_system(const DigitSet& D, const GaussInt& base);

/// Result of the integrality decision for a numeration system.
struct NumerationCheck {
    bool integral = false;
    bool complete_residue = false;
    /// When complete_residue holds but the system is not integral: a nonzero
    /// cycle z0 -> z1 -> ... -> z0 of the digit-extraction iteration.
    std::vector<GaussInt> cycle;
};

/// Decides whether every Gaussian integer has a unique finite expansion in
/// (base, D). Requires 0 in D and a complete residue system; then runs the
/// extraction z -> (z - d(z))/base over the attractor ball of radius
/// M/(|base|-1) (M = max |d|), membership tested in cleared integer form.
/// The system is integral iff the only cycle there is the fixed point 0.
NumerationCheck is_numeration_system(const GaussInt& base, const DigitSet& D);

/// A validated positional numeration system for Z[i].
struct NumerationSystem {
    GaussInt base;
    DigitSet digits;
    bool complete_residue = false;
    bool integral = false;
    std::vector<GaussInt> cycle_witness;

    /// Runs both validations and builds the residue lookup.
    static NumerationSystem make(GaussInt base, DigitSet digits);

    /// The unique digit congruent to z mod base. Requires complete_residue.
    const GaussInt& digit_for(const GaussInt& z) const;

private:
    std::map<GaussInt, GaussInt> residue_to_digit_;
};

/// The unique expansion of z without leading zeros; empty for z = 0.
/// Requires sys.integral.
Word expand(const GaussInt& z, const NumerationSystem& sys);

/// All lattice points with norm(d) < r^2 * norm(base) (the open disk of
/// radius r*|base|), a superset of D. Requires r >= 2 and that every digit of
/// D lies inside; throws naming the first offending digit otherwise.
DigitSet enlarged_digit_set(const GaussInt& base, const DigitSet& D, const Rat& r);

/// Precomputed state for short-expansion queries against one (base, r) pair.
struct EnlargedContext {
    GaussInt base;
    Rat r;
    DigitSet digits;  // the full open-disk digit set
    // residue representative (divmod_nearest remainder) -> digits in that class
    std::map<GaussInt, std::vector<GaussInt>> by_residue;

    EnlargedContext(GaussInt base, Rat r);
};

/// A length-n word over the enlarged digit set evaluating to z, built by
/// repeatedly splitting off the digit z - q*base with q the per-coordinate
/// truncation of z/base toward the origin, padded with leading zeros. When a
/// split dead-ends on the disk boundary, backtracks over the other digits in
/// the same residue class while keeping norm(q) <= r^2 * norm(base)^(n-1) at
/// every level. Requires norm(z) <= r^2 * norm(base)^n.
Word short_expansion(const GaussInt& z, unsigned n, const EnlargedContext& ctx);
Word short_expansion(const GaussInt& z, const GaussInt& base, const Rat& r, unsigned n);

/// Smallest n >= 0 with norm(z) <= r^2 * norm(base)^n.
unsigned short_expansion_length(const GaussInt& z, const GaussInt& base, const Rat& r);

}  // namespace gausscobham
