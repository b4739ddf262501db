#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gausscobham/numeration.hpp"

namespace gausscobham {

enum class Reading { msd_first, lsd_first };

/// A deterministic finite automaton with output over a Gaussian digit
/// alphabet. The reading tag fixes how a word (stored most-significant digit
/// first) is fed to the machine: msd_first left to right, lsd_first reversed.
struct Dfao {
    std::vector<std::string> states;       // state names; indices are the ids
    DigitSet alphabet;
    std::vector<std::vector<int>> delta;   // delta[state][digit index]
    int initial = 0;
    std::vector<std::string> outputs;      // per-state output symbol
    Reading reading = Reading::msd_first;

    int step(int s, int digit_index) const { return delta[s][digit_index]; }
    int step_digit(int s, const GaussInt& d) const;

    /// Steps through the digits exactly in the given order, ignoring the
    /// reading tag.
    int feed(int from, const Word& digits_in_feeding_order) const;

    /// State reached from `from` after feeding w in this machine's reading
    /// order. Throws when a digit is outside the alphabet.
    int state_on(const Word& w, int from) const;
    int state_on(const Word& w) const { return state_on(w, initial); }

    /// Output symbol for w.
    const std::string& run(const Word& w) const { return outputs[state_on(w)]; }

    /// Distinct output symbols in order of first appearance over states.
    std::vector<std::string> output_alphabet() const;

    /// Structural sanity: table sizes, ranges, totality.
    void validate() const;
};

/// The same word -> output function with the opposite reading order. States
/// of the result are the reachable transition-table compositions of the
/// original, so the output function is preserved on every word.
Dfao reverse_reading(const Dfao& a, std::size_t max_states = 200000);

/// A letter-to-letter transducer rewriting (base, from_digits)-expansions
/// into canonical (base, to_digits)-expansions. States are the carries
/// reachable from 0; each satisfies |carry| < m/(|base|-1) with
/// m = max |d' - d|, checked in cleared integer form.
struct CarryTransducer {
    GaussInt base;
    DigitSet from_digits;  // D', read
    DigitSet to_digits;    // D, emitted
    std::vector<GaussInt> carries;  // carries[0] = 0 is the start state
    // edge[carry][from-digit index] = (emitted to-digit index, next carry)
    std::vector<std::vector<std::pair<int, int>>> edge;
    // terminal[carry] = canonical expansion of the carry, appended at the end
    std::vector<Word> terminal;
};

/// Builds the transducer for an integral system (base, D) and a read alphabet
/// D' containing D. Each edge solves carry + d' = base * carry' + d for the
/// unique digit d congruent to carry + d'.
CarryTransducer build_carry_transducer(const NumerationSystem& sys, const DigitSet& from_digits);

/// Feeds w least-significant digit first through t, prepends the terminal
/// expansion of the final carry, and strips leading zeros: the canonical
/// (base, to_digits)-expansion of evaluate(w).
Word convert_expansion(const Word& w, const CarryTransducer& t);

/// Product of a carry transducer with a (base, D)-automaton, yielding an
/// equivalent lsd-first automaton over the larger read alphabet. An msd-first
/// input is converted with reverse_reading first. The output of a product
/// state flushes the pending carry's terminal expansion through the original
/// machine.
Dfao extend_automaton(const Dfao& a, const CarryTransducer& t);

struct ConsistencyResult {
    bool consistent = true;
    std::optional<std::pair<Word, Word>> counterexample;  // equal value, different output
};

/// Whether every pair of words with equal base-value gets equal outputs.
/// Explores the product of two copies of the automaton with a bounded
/// value-difference carry (|carry| < max|d1-d2| / (|base|-1)), allowing
/// either word to be shorter; any reachable zero-difference pair of states
/// with different outputs yields a concrete witness pair.
ConsistencyResult check_consistency(const Dfao& a, const GaussInt& base);

/// States s whose language {w : delta(initial, w) = s} is infinite: s is
/// reachable from the initial state through some state lying on a cycle.
std::vector<int> infinite_states(const Dfao& a);

/// A fully periodic configuration given by a positive integer period p:
/// values[a][b] is the symbol at a+bi for 0 <= a,b < p, and the value at z
/// depends only on z mod p, except at finitely many listed points.
struct PeriodicTable {
    unsigned long period = 1;
    std::vector<std::vector<std::string>> values;  // [re][im]
    std::vector<std::pair<GaussInt, std::string>> exceptions;

    const std::string& at(const GaussInt& z) const;
    void validate() const;
};

/// Compiles a periodic table into an lsd-first automaton over an arbitrary
/// digit set: states track (value mod p, exponent index) where the exponent
/// index follows the eventually periodic sequence base^j mod p. Exceptions
/// require expansions to be recognizable, so they are only supported through
/// the integral-system overload.
Dfao periodic_to_dfao(const PeriodicTable& table, const GaussInt& base, const DigitSet& digits);

/// Integral-system overload; supports exceptions by recognizing their
/// (finitely many, up to leading zeros) expansions with extra product states.
Dfao periodic_to_dfao(const PeriodicTable& table, const NumerationSystem& sys);

/// Return-number data for a state s: values u_j of the words w1 w2^j w3 where
/// w1 leads from the initial state to a cycle state s', w2 is a cycle at s',
/// and w3 leads from s' to s. Successive w1 candidates are tried in
/// length-lex order until u_0 != u_1, which makes all u_j distinct.
struct ReturnNumbers {
    std::vector<GaussInt> values;
    Word w1, w2, w3;  // in feeding order
    int cycle_state = 0;
};

ReturnNumbers return_numbers(const Dfao& a, const GaussInt& base, int s, std::size_t count);

/// Up to `count` distinct words leading from the initial state to `target`,
/// in feeding order, enumerated length-lexicographically.
std::vector<Word> words_to_state(const Dfao& a, int target, std::size_t count);

/// The value of a fed digit sequence under the machine's reading order.
GaussInt fed_word_value(const Dfao& a, const GaussInt& base, const Word& fed);

/// An automaton together with the numeration it reads; a total map
/// Z[i] -> output alphabet.
struct EnlargedSystem {
    GaussInt base;
    Rat r;
    EnlargedContext context;

    EnlargedSystem(GaussInt base_, Rat r_) : base(base_), r(r_), context(base_, r_) {}
};

class AutomaticConfiguration {
public:
    AutomaticConfiguration(Dfao dfao, NumerationSystem sys);
    AutomaticConfiguration(Dfao dfao, GaussInt base, Rat r);

    const Dfao& dfao() const { return dfao_; }
    const GaussInt& base() const { return base_; }
    bool integral() const { return std::holds_alternative<NumerationSystem>(system_); }
    const NumerationSystem& system() const { return std::get<NumerationSystem>(system_); }
    const EnlargedSystem& enlarged() const { return std::get<EnlargedSystem>(system_); }

    /// Whether the full consistency check has been run and passed. Fresh
    /// configurations over redundant digit sets start unverified; value_at
    /// additionally spot-checks two expansions per query.
    bool consistency_verified() const { return consistency_verified_; }

    /// Runs the full consistency check, remembering a positive verdict.
    ConsistencyResult verify_consistency();

    /// One expansion of z in the machine's numeration (canonical for an
    /// integral system, a shortest enlarged-digit expansion otherwise).
    Word expansion_of(const GaussInt& z) const;

    /// The configuration value at z. Evaluates two distinct expansions of z
    /// and throws (carrying both words) if the automaton disagrees on them.
    std::string value_at(const GaussInt& z) const;

    /// State reached on one expansion of z, for coloring arguments.
    int state_at(const GaussInt& z) const;

private:
    Dfao dfao_;
    GaussInt base_;
    std::variant<NumerationSystem, EnlargedSystem> system_;
    bool consistency_verified_ = false;
};

}  // namespace gausscobham
