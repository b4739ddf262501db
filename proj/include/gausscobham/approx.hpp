#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gausscobham/automata.hpp"

namespace gausscobham {

/// Exponents m, n with alpha^m close to beta^n in relative terms; error_sq is
/// exactly norm(alpha^m - beta^n) / norm(beta)^n.
struct PowerPair {
    unsigned long m = 0, n = 0;
    Rat error_sq;
};

/// The lexicographically (n, m)-least pair with m, n in [1, cap] and
/// norm(alpha^m - beta^n) < eps^2 * norm(beta)^n, verified in exact integers.
/// Floating point only narrows the m-window scanned for each n; every
/// accepted pair is certified exactly and a miss is reported, never invented.
/// Requires multiplicatively independent inputs of norm > 1 and eps > 0.
std::optional<PowerPair> dirichlet_pair(const GaussInt& alpha, const GaussInt& beta, const Rat& eps,
                                        unsigned long cap);

/// Signed exponent pairs (m, n) with |alpha^m beta^(-n) - 1| < delta, each
/// verified by the exact cross-multiplied norm inequality for its sign
/// pattern. Scans |m|, |n| <= cap, excluding (0, 0).
std::vector<std::pair<long, long>> non_isolation_witnesses(const GaussInt& alpha,
                                                           const GaussInt& beta, const Rat& delta,
                                                           long cap);

/// Exact collinearity of three points: Im(conj(v-u) * (w-u)) == 0.
inline bool collinear(const GaussInt& u, const GaussInt& v, const GaussInt& w) {
    return cross(u, v, w) == 0;
}

/// Three non-collinear values whose expansions end at the same state in each
/// of two machines, with the witnessing words (most-significant digit first).
struct NonCollinearTriple {
    int beta_state = 0, alpha_state = 0;
    GaussInt x, y, z;
    std::array<Word, 3> beta_words;
    std::array<Word, 3> alpha_words;
};

struct TripleCaps {
    std::size_t return_count = 200;
};

/// Generates return numbers to s in the beta machine, colors each by the
/// alpha-machine state its expansion reaches, and returns the first
/// monochromatic 3-term arithmetic progression of indices: its values cannot
/// be collinear when the beta base is not a root of an integer. Requires
/// s with an infinite language and a beta base that is not a root of an
/// integer.
NonCollinearTriple find_noncollinear_triple(const AutomaticConfiguration& beta_cfg,
                                            const AutomaticConfiguration& alpha_cfg, int s,
                                            const TripleCaps& caps = {});

/// p = (y - x) * d, q = (z - x) * d for d = alpha_m - beta_n != 0. The
/// results are checked to be Z-linearly independent and to satisfy
/// norm(p), norm(q) <= (2 xi)^2 norm(d) for xi = max magnitude of the triple
/// plus one.
std::pair<GaussInt, GaussInt> periods_from_triple(const NonCollinearTriple& t,
                                                  const GaussInt& alpha_m, const GaussInt& beta_n);

struct ShiftWitness {
    Word fed1, fed2;  // composed words in feeding order
    GaussInt point1, point2;
    std::string out1, out2;
};

struct ShiftCheck {
    bool passed = true;
    std::size_t samples = 0;
    std::optional<ShiftWitness> witness;
};

/// Samples the shifting identity: two expansions ending at state s, extended
/// by a common random suffix, must produce equal automaton outputs and equal
/// configuration values at the two composed points. Any of the four
/// quantities disagreeing yields a witness.
ShiftCheck shifting_property_check(const AutomaticConfiguration& cfg, int s, std::size_t samples,
                                   std::uint64_t seed);

}  // namespace gausscobham
