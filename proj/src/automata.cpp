#include "gausscobham/automata.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <tuple>

namespace gausscobham {

int Dfao::step_digit(int s, const GaussInt& d) const {
    int k = alphabet.index_of(d);
    if (k < 0) throw std::invalid_argument("automaton: digit " + d.str() + " outside the input alphabet");
    return delta[s][k];
}

int Dfao::feed(int from, const Word& digits_in_feeding_order) const {
    int s = from;
    for (const auto& d : digits_in_feeding_order) s = step_digit(s, d);
    return s;
}

int Dfao::state_on(const Word& w, int from) const {
    int s = from;
    if (reading == Reading::msd_first) {
        for (const auto& d : w) s = step_digit(s, d);
    } else {
        for (auto it = w.rbegin(); it != w.rend(); ++it) s = step_digit(s, *it);
    }
    return s;
}

std::vector<std::string> Dfao::output_alphabet() const {
    std::vector<std::string> out;
    for (const auto& o : outputs)
        if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(o);
    return out;
}

void Dfao::validate() const {
    std::size_t n = states.size();
    if (n == 0) throw std::invalid_argument("automaton: no states");
    if (initial < 0 || static_cast<std::size_t>(initial) >= n)
        throw std::invalid_argument("automaton: initial state out of range");
    if (delta.size() != n || outputs.size() != n)
        throw std::invalid_argument("automaton: table sizes disagree with state count");
    for (const auto& row : delta) {
        if (row.size() != alphabet.size())
            throw std::invalid_argument("automaton: transition row size disagrees with alphabet");
        for (int t : row)
            if (t < 0 || static_cast<std::size_t>(t) >= n)
                throw std::invalid_argument("automaton: transition target out of range");
    }
}

Dfao reverse_reading(const Dfao& a, std::size_t max_states) {
    a.validate();
    std::size_t n = a.states.size();
    // States of the reversal are transition-table compositions f with
    // f(s) = state reached from s on the reverse of the input so far.
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> funcs;
    std::vector<int> identity(n);
    for (std::size_t k = 0; k < n; ++k) identity[k] = static_cast<int>(k);
    ids.emplace(identity, 0);
    funcs.push_back(identity);

    Dfao out;
    out.alphabet = a.alphabet;
    out.reading = a.reading == Reading::msd_first ? Reading::lsd_first : Reading::msd_first;
    out.initial = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (static_cast<std::size_t>(id) >= out.delta.size()) out.delta.resize(id + 1);
        out.delta[id].assign(a.alphabet.size(), 0);
        std::vector<int> f = funcs[id];
        for (std::size_t d = 0; d < a.alphabet.size(); ++d) {
            std::vector<int> g(n);
            for (std::size_t s = 0; s < n; ++s) g[s] = f[a.delta[s][d]];
            auto [it, fresh] = ids.emplace(g, static_cast<int>(funcs.size()));
            if (fresh) {
                funcs.push_back(std::move(g));
                queue.push_back(it->second);
                if (funcs.size() > max_states)
                    throw std::runtime_error("reverse_reading: state blow-up beyond limit");
            }
            out.delta[id][d] = it->second;
        }
    }
    out.states.reserve(funcs.size());
    out.outputs.reserve(funcs.size());
    for (std::size_t k = 0; k < funcs.size(); ++k) {
        out.states.push_back("r" + std::to_string(k));
        out.outputs.push_back(a.outputs[funcs[k][a.initial]]);
    }
    out.delta.resize(funcs.size(), std::vector<int>(a.alphabet.size(), 0));
    return out;
}

namespace {

// |c| < m/(|base|-1) in cleared integer form, where m2 = m^2:
//   nc(N-1) - m2 < 2 m |c|  <=>  LHS < 0, or LHS^2 < 4 m2 nc.
bool carry_in_bound(const GaussInt& c, const Int& base_norm, const Int& m2) {
    Int nc = c.norm();
    Int lhs = nc * (base_norm - 1) - m2;
    if (lhs < 0) return true;
    return lhs * lhs < 4 * m2 * nc;
}

}  // namespace

CarryTransducer build_carry_transducer(const NumerationSystem& sys, const DigitSet& from_digits) {
    if (!sys.integral)
        throw std::invalid_argument("build_carry_transducer: target numeration must be integral");
    for (const auto& d : sys.digits.digits())
        if (!from_digits.contains(d))
            throw std::invalid_argument("build_carry_transducer: target digit " + d.str() +
                                        " missing from the read alphabet");
    CarryTransducer t;
    t.base = sys.base;
    t.from_digits = from_digits;
    t.to_digits = sys.digits;

    Int m2 = 0;
    for (const auto& dp : from_digits.digits())
        for (const auto& d : sys.digits.digits()) m2 = std::max(m2, (dp - d).norm());
    Int n = sys.base.norm();

    std::map<GaussInt, int> carry_ids;
    carry_ids.emplace(GaussInt{}, 0);
    t.carries.push_back(GaussInt{});
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (static_cast<std::size_t>(id) >= t.edge.size()) t.edge.resize(id + 1);
        t.edge[id].assign(from_digits.size(), {0, 0});
        GaussInt carry = t.carries[id];
        for (std::size_t k = 0; k < from_digits.size(); ++k) {
            GaussInt sum = carry + from_digits[k];
            const GaussInt& d = sys.digit_for(sum);
            GaussInt next;
            divides(sys.base, sum - d, &next);
            if (!carry_in_bound(next, n, m2))
                throw std::logic_error("build_carry_transducer: carry escaped its bound");
            auto [it, fresh] = carry_ids.emplace(next, static_cast<int>(t.carries.size()));
            if (fresh) {
                t.carries.push_back(next);
                queue.push_back(it->second);
            }
            t.edge[id][k] = {sys.digits.index_of(d), it->second};
        }
    }
    t.edge.resize(t.carries.size(), std::vector<std::pair<int, int>>(from_digits.size(), {0, 0}));
    t.terminal.reserve(t.carries.size());
    for (const auto& c : t.carries) t.terminal.push_back(expand(c, sys));
    return t;
}

Word convert_expansion(const Word& w, const CarryTransducer& t) {
    int carry = 0;
    Word emitted;  // least significant digit first
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        int k = t.from_digits.index_of(*it);
        if (k < 0) throw std::invalid_argument("convert_expansion: digit " + it->str() + " not readable");
        auto [emit, next] = t.edge[carry][k];
        emitted.push_back(t.to_digits[emit]);
        carry = next;
    }
    Word out = t.terminal[carry];
    out.insert(out.end(), emitted.rbegin(), emitted.rend());
    auto first = std::find_if(out.begin(), out.end(), [](const GaussInt& d) { return !d.is_zero(); });
    return Word(first, out.end());
}

Dfao extend_automaton(const Dfao& a0, const CarryTransducer& t) {
    Dfao a = a0.reading == Reading::msd_first ? reverse_reading(a0) : a0;
    a.validate();
    // Map emitted-digit indices of the transducer into the machine's alphabet.
    std::vector<int> emit_to_input(t.to_digits.size());
    for (std::size_t k = 0; k < t.to_digits.size(); ++k) {
        int idx = a.alphabet.index_of(t.to_digits[k]);
        if (idx < 0)
            throw std::invalid_argument("extend_automaton: automaton cannot read digit " +
                                        t.to_digits[k].str());
        emit_to_input[k] = idx;
    }

    long ncarries = static_cast<long>(t.carries.size());
    auto pack = [&](int carry, int s) { return carry + ncarries * static_cast<long>(s); };
    std::map<long, int> ids;
    std::vector<std::pair<int, int>> nodes;  // (carry, state)
    ids.emplace(pack(0, a.initial), 0);
    nodes.emplace_back(0, a.initial);

    Dfao out;
    out.alphabet = t.from_digits;
    out.reading = Reading::lsd_first;
    out.initial = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (static_cast<std::size_t>(id) >= out.delta.size()) out.delta.resize(id + 1);
        out.delta[id].assign(t.from_digits.size(), 0);
        auto [carry, s] = nodes[id];
        for (std::size_t k = 0; k < t.from_digits.size(); ++k) {
            auto [emit, next_carry] = t.edge[carry][k];
            int s2 = a.delta[s][emit_to_input[emit]];
            auto [it, fresh] = ids.emplace(pack(next_carry, s2), static_cast<int>(nodes.size()));
            if (fresh) {
                nodes.emplace_back(next_carry, s2);
                queue.push_back(it->second);
            }
            out.delta[id][k] = it->second;
        }
    }
    out.delta.resize(nodes.size(), std::vector<int>(t.from_digits.size(), 0));
    out.states.reserve(nodes.size());
    out.outputs.reserve(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        auto [carry, s] = nodes[k];
        // Flush the pending carry: its expansion supplies the remaining most
        // significant digits, fed least significant first.
        int st = s;
        const Word& tail = t.terminal[carry];
        for (auto it = tail.rbegin(); it != tail.rend(); ++it)
            st = a.delta[st][a.alphabet.index_of(*it)];
        out.states.push_back("e" + std::to_string(k));
        out.outputs.push_back(a.outputs[st]);
    }
    return out;
}

namespace {

// Open-addressing map from packed consistency-product nodes to their BFS
// parent and edge, sized for a few million entries.
class NodeMap {
public:
    explicit NodeMap(std::size_t expected) {
        std::size_t cap = 64;
        while (cap < expected * 2) cap <<= 1U;
        keys_.assign(cap, kEmpty);
        vals_.assign(cap, 0);
    }

    // Returns true when inserted, false when already present.
    bool insert(std::uint64_t key, std::uint64_t value) {
        if (2 * (size_ + 1) > keys_.size()) grow();
        std::size_t mask = keys_.size() - 1;
        std::size_t h = hash(key) & mask;
        while (keys_[h] != kEmpty) {
            if (keys_[h] == key) return false;
            h = (h + 1) & mask;
        }
        keys_[h] = key;
        vals_[h] = value;
        ++size_;
        return true;
    }

    std::uint64_t at(std::uint64_t key) const {
        std::size_t mask = keys_.size() - 1;
        std::size_t h = hash(key) & mask;
        while (keys_[h] != key) h = (h + 1) & mask;
        return vals_[h];
    }

    std::size_t size() const { return size_; }

private:
    static constexpr std::uint64_t kEmpty = ~0ULL;
    static std::size_t hash(std::uint64_t x) {
        x ^= x >> 33U;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33U;
        return static_cast<std::size_t>(x);
    }
    void grow() {
        std::vector<std::uint64_t> ok = std::move(keys_), ov = std::move(vals_);
        keys_.assign(ok.size() * 2, kEmpty);
        vals_.assign(ok.size() * 2, 0);
        size_ = 0;
        for (std::size_t k = 0; k < ok.size(); ++k)
            if (ok[k] != kEmpty) insert(ok[k], ov[k]);
    }
    std::vector<std::uint64_t> keys_, vals_;
    std::size_t size_ = 0;
};

}  // namespace

ConsistencyResult check_consistency(const Dfao& a, const GaussInt& base) {
    a.validate();
    if (base.norm() <= 1) throw std::invalid_argument("check_consistency: norm(base) must be > 1");
    if (a.alphabet.size() > 254) throw std::invalid_argument("check_consistency: alphabet too large");
    const bool lsd = a.reading == Reading::lsd_first;
    const std::size_t nstates = a.states.size();
    const Int n = base.norm();

    Int m2 = 0;
    for (const auto& d1 : a.alphabet.digits())
        for (const auto& d2 : a.alphabet.digits()) m2 = std::max(m2, (d1 - d2).norm());
    if (m2 == 0) {
        // Alphabet is {0}: every word has value 0, so all-zero words of any
        // two lengths must agree.
        int s = a.initial;
        const std::string& want = a.outputs[s];
        for (std::size_t j = 1; j <= nstates + 1; ++j) {
            s = a.delta[s][0];
            if (a.outputs[s] != want) {
                ConsistencyResult out;
                out.consistent = false;
                out.counterexample = {Word{}, Word(j, GaussInt{})};
                return out;
            }
        }
        return {};
    }

    // Difference carries discovered on the fly; index 0 is the zero carry.
    std::map<GaussInt, int> carry_ids{{GaussInt{}, 0}};
    std::vector<GaussInt> carries{GaussInt{}};
    // carry transitions per (carry, d1, d2): -1 dead, else next carry id
    std::vector<std::vector<int>> carry_step;  // [carry][d1 * |D| + d2]
    const std::size_t dsz = a.alphabet.size() + 1;  // extra slot = pad
    auto digit_value = [&](std::size_t k) -> GaussInt {
        return k < a.alphabet.size() ? a.alphabet[k] : GaussInt{};
    };
    auto carry_next = [&](int cid, std::size_t k1, std::size_t k2) -> int {
        if (static_cast<std::size_t>(cid) >= carry_step.size())
            carry_step.resize(cid + 1, std::vector<int>(dsz * dsz, -2));
        int& memo = carry_step[cid][k1 * dsz + k2];
        if (memo != -2) return memo;
        GaussInt diff = digit_value(k1) - digit_value(k2);
        GaussInt next;
        if (lsd) {
            // c' = (c + d1 - d2)/base, dead unless divisible.
            if (!divides(base, carries[cid] + diff, &next)) return memo = -1;
        } else {
            // c' = c*base + d1 - d2, dead once |c'| >= m/(|base|-1).
            next = carries[cid] * base + diff;
            if (!carry_in_bound(next, n, m2)) return memo = -1;
        }
        auto [it, fresh] = carry_ids.emplace(next, static_cast<int>(carries.size()));
        if (fresh) carries.push_back(next);
        return memo = it->second;
    };

    // Node: carry, two automaton states, phase (0 joint, 1 track1 silent,
    // 2 track2 silent). A silent track is a shorter word: its missing digits
    // are at the start for msd reading and at the end for lsd reading.
    auto pack = [&](int c, int s1, int s2, int ph) {
        std::uint64_t v = ((static_cast<std::uint64_t>(c) * nstates + s1) * nstates + s2) * 4 + ph;
        if (v >= (1ULL << 48U)) throw std::runtime_error("check_consistency: product space too large");
        return v;
    };
    // visited value: parent node in the low 48 bits, edge digits above.
    NodeMap visited(1 << 16);
    constexpr std::size_t kNodeLimit = 8'000'000;
    std::deque<std::uint64_t> queue;
    std::uint64_t root = pack(0, a.initial, a.initial, 0);
    visited.insert(root, root);  // parent = self marks the root
    queue.push_back(root);

    auto unpack = [&](std::uint64_t v) {
        int ph = static_cast<int>(v % 4);
        v /= 4;
        int s2 = static_cast<int>(v % nstates);
        v /= nstates;
        int s1 = static_cast<int>(v % nstates);
        int c = static_cast<int>(v / nstates);
        return std::tuple<int, int, int, int>(c, s1, s2, ph);
    };

    std::uint64_t bad = 0;
    bool found = false;
    while (!queue.empty() && !found) {
        std::uint64_t node = queue.front();
        queue.pop_front();
        auto [c, s1, s2, ph] = unpack(node);
        auto try_edge = [&](std::size_t k1, std::size_t k2, int nph) {
            int c2 = carry_next(c, k1, k2);
            if (c2 < 0) return;
            int t1 = k1 == dsz - 1 ? s1 : a.delta[s1][k1];
            int t2 = k2 == dsz - 1 ? s2 : a.delta[s2][k2];
            std::uint64_t next = pack(c2, t1, t2, nph);
            std::uint64_t edge = (static_cast<std::uint64_t>(k1) << 8U) | k2;
            if (!visited.insert(next, node | (edge << 48U))) return;
            if (visited.size() > kNodeLimit)
                throw std::runtime_error("check_consistency: product exploration too large");
            if (c2 == 0 && a.outputs[t1] != a.outputs[t2]) {
                bad = next;
                found = true;
            }
            queue.push_back(next);
        };
        const std::size_t nd = a.alphabet.size();
        if (lsd) {
            // Joint digits first, then either track may end (missing most
            // significant positions); an ended track stays ended.
            if (ph == 0) {
                for (std::size_t k1 = 0; k1 < nd && !found; ++k1)
                    for (std::size_t k2 = 0; k2 < nd && !found; ++k2) try_edge(k1, k2, 0);
                for (std::size_t k1 = 0; k1 < nd && !found; ++k1) try_edge(k1, dsz - 1, 2);
                for (std::size_t k2 = 0; k2 < nd && !found; ++k2) try_edge(dsz - 1, k2, 1);
            } else if (ph == 2) {
                for (std::size_t k1 = 0; k1 < nd && !found; ++k1) try_edge(k1, dsz - 1, 2);
            } else {
                for (std::size_t k2 = 0; k2 < nd && !found; ++k2) try_edge(dsz - 1, k2, 1);
            }
        } else {
            // A shorter word misses leading positions: it starts late and
            // both tracks then run to the common end.
            bool track2_may_wait = (ph == 0 && node == root) || ph == 2;
            bool track1_may_wait = (ph == 0 && node == root) || ph == 1;
            for (std::size_t k1 = 0; k1 < nd && !found; ++k1)
                for (std::size_t k2 = 0; k2 < nd && !found; ++k2) try_edge(k1, k2, 0);
            if (track2_may_wait)
                for (std::size_t k1 = 0; k1 < nd && !found; ++k1) try_edge(k1, dsz - 1, 2);
            if (track1_may_wait)
                for (std::size_t k2 = 0; k2 < nd && !found; ++k2) try_edge(dsz - 1, k2, 1);
        }
    }
    if (!found) return {};

    // Walk parents back to the root and rebuild both words in feeding order.
    std::vector<std::pair<int, int>> edges;
    std::uint64_t cur = bad;
    while (cur != root) {
        std::uint64_t pv = visited.at(cur);
        std::uint64_t parent = pv & ((1ULL << 48U) - 1);
        std::uint64_t edge = pv >> 48U;
        edges.emplace_back(static_cast<int>(edge >> 8U), static_cast<int>(edge & 0xffU));
        if (parent == cur) break;
        cur = parent;
    }
    std::reverse(edges.begin(), edges.end());
    Word w1, w2;  // feeding order
    for (auto [k1, k2] : edges) {
        if (static_cast<std::size_t>(k1) < a.alphabet.size()) w1.push_back(a.alphabet[k1]);
        if (static_cast<std::size_t>(k2) < a.alphabet.size()) w2.push_back(a.alphabet[k2]);
    }
    if (lsd) {
        std::reverse(w1.begin(), w1.end());
        std::reverse(w2.begin(), w2.end());
    }
    ConsistencyResult out;
    out.consistent = false;
    out.counterexample = {std::move(w1), std::move(w2)};
    return out;
}

namespace {

std::vector<char> reachable_states(const Dfao& a) {
    std::vector<char> seen(a.states.size(), 0);
    std::deque<int> queue{a.initial};
    seen[a.initial] = 1;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int t : a.delta[s])
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
    }
    return seen;
}

// States lying on a directed cycle of the reachable subgraph.
std::vector<char> cyclic_states(const Dfao& a, const std::vector<char>& reachable) {
    std::size_t n = a.states.size();
    // Iterative Tarjan over the reachable subgraph.
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0), cyclic(n, 0);
    std::vector<int> stack;
    int counter = 0;
    struct Frame {
        int v;
        std::size_t edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (!reachable[root] || index[root] != -1) continue;
        std::vector<Frame> frames{{static_cast<int>(root), 0}};
        index[root] = low[root] = counter++;
        stack.push_back(static_cast<int>(root));
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < a.delta[f.v].size()) {
                int w = a.delta[f.v][f.edge++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    bool cyc = comp.size() > 1;
                    if (!cyc)
                        for (int t : a.delta[comp[0]])
                            if (t == comp[0]) cyc = true;
                    if (cyc)
                        for (int w : comp) cyclic[w] = 1;
                }
            }
        }
    }
    return cyclic;
}

}  // namespace

std::vector<int> infinite_states(const Dfao& a) {
    a.validate();
    auto reach = reachable_states(a);
    auto cyc = cyclic_states(a, reach);
    // Forward closure of the cyclic states.
    std::vector<char> inf(a.states.size(), 0);
    std::deque<int> queue;
    for (std::size_t s = 0; s < a.states.size(); ++s)
        if (reach[s] && cyc[s]) {
            inf[s] = 1;
            queue.push_back(static_cast<int>(s));
        }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int t : a.delta[s])
            if (!inf[t]) {
                inf[t] = 1;
                queue.push_back(t);
            }
    }
    std::vector<int> out;
    for (std::size_t s = 0; s < a.states.size(); ++s)
        if (inf[s]) out.push_back(static_cast<int>(s));
    return out;
}

const std::string& PeriodicTable::at(const GaussInt& z) const {
    for (const auto& [pt, sym] : exceptions)
        if (pt == z) return sym;
    Int p = static_cast<long>(period);
    std::size_t a = mod_floor(z.re, p).get_ui();
    std::size_t b = mod_floor(z.im, p).get_ui();
    return values[a][b];
}

void PeriodicTable::validate() const {
    if (period == 0) throw std::invalid_argument("periodic table: period must be positive");
    if (values.size() != period) throw std::invalid_argument("periodic table: row count != period");
    for (const auto& col : values)
        if (col.size() != period) throw std::invalid_argument("periodic table: column count != period");
}

namespace {

struct ModPowers {
    unsigned long preperiod = 0;  // smallest n with base^n == base^(n+m) mod p
    unsigned long cycle = 1;      // smallest such m > 0
    std::vector<std::pair<long, long>> pow;  // base^j mod p for j < n+m
};

ModPowers base_powers_mod(const GaussInt& base, unsigned long p) {
    ModPowers out;
    Int pz = static_cast<long>(p);
    std::map<std::pair<long, long>, unsigned long> seen;
    GaussInt w{1, 0};
    for (unsigned long j = 0;; ++j) {
        std::pair<long, long> key{mod_floor(w.re, pz).get_si(), mod_floor(w.im, pz).get_si()};
        auto it = seen.find(key);
        if (it != seen.end()) {
            out.preperiod = it->second;
            out.cycle = j - it->second;
            out.pow.resize(out.preperiod + out.cycle);
            return out;
        }
        seen.emplace(key, j);
        if (out.pow.size() <= j) out.pow.resize(j + 1);
        out.pow[j] = key;
        w = w * base;
        w.re = mod_floor(w.re, pz);
        w.im = mod_floor(w.im, pz);
        if (j > p * p + 2) throw std::logic_error("base_powers_mod: no repetition found");
    }
}

}  // namespace

Dfao periodic_to_dfao(const PeriodicTable& table, const GaussInt& base, const DigitSet& digits) {
    table.validate();
    if (!table.exceptions.empty())
        throw std::invalid_argument("periodic_to_dfao: exceptions require an integral numeration system");
    if (base.norm() <= 1) throw std::invalid_argument("periodic_to_dfao: norm(base) must be > 1");
    unsigned long p = table.period;
    auto mp = base_powers_mod(base, p);
    unsigned long span = mp.preperiod + mp.cycle;
    if (p * p * span > 5'000'000) throw std::invalid_argument("periodic_to_dfao: period too large");

    Dfao out;
    out.alphabet = digits;
    out.reading = Reading::lsd_first;
    // State (a, b, j): value so far congruent to a+bi mod p, next digit has
    // weight base^j (with j capped into the eventually periodic range).
    auto id = [&](unsigned long a, unsigned long b, unsigned long j) {
        return static_cast<int>((a * p + b) * span + j);
    };
    Int pz = static_cast<long>(p);
    std::vector<std::pair<long, long>> digit_mod;
    digit_mod.reserve(digits.size());
    for (const auto& d : digits.digits())
        digit_mod.emplace_back(mod_floor(d.re, pz).get_si(), mod_floor(d.im, pz).get_si());

    std::size_t nstates = p * p * span;
    out.states.reserve(nstates);
    out.outputs.reserve(nstates);
    out.delta.assign(nstates, std::vector<int>(digits.size(), 0));
    long pl = static_cast<long>(p);
    for (unsigned long a = 0; a < p; ++a) {
        for (unsigned long b = 0; b < p; ++b) {
            for (unsigned long j = 0; j < span; ++j) {
                int s = id(a, b, j);
                out.states.push_back("p" + std::to_string(a) + "_" + std::to_string(b) + "_" +
                                     std::to_string(j));
                out.outputs.push_back(table.values[a][b]);
                unsigned long j2 = j + 1 < span ? j + 1 : mp.preperiod;
                auto [wre, wim] = mp.pow[j];
                for (std::size_t k = 0; k < digits.size(); ++k) {
                    auto [dre, dim] = digit_mod[k];
                    long a2 = (static_cast<long>(a) + wre * dre - wim * dim) % pl;
                    long b2 = (static_cast<long>(b) + wre * dim + wim * dre) % pl;
                    if (a2 < 0) a2 += pl;
                    if (b2 < 0) b2 += pl;
                    out.delta[s][k] = id(a2, b2, j2);
                }
            }
        }
    }
    out.initial = id(0, 0, 0);
    return out;
}

namespace {

// Recognizer for the leading-zero-padded expansions of the exception points,
// fed least significant digit first.
struct ExceptionTrie {
    // children[node][digit index] -> node, or -1
    std::vector<std::vector<int>> children;
    std::vector<int> complete;  // exception index completed at this node, or -1
    int zero_digit = -1;

    ExceptionTrie(const std::vector<std::pair<GaussInt, std::string>>& exceptions,
                  const NumerationSystem& sys) {
        zero_digit = sys.digits.index_of(GaussInt{});
        children.emplace_back(sys.digits.size(), -1);
        complete.push_back(-1);
        for (std::size_t e = 0; e < exceptions.size(); ++e) {
            Word w = expand(exceptions[e].first, sys);
            int node = 0;
            for (auto it = w.rbegin(); it != w.rend(); ++it) {
                int k = sys.digits.index_of(*it);
                if (children[node][k] < 0) {
                    children[node][k] = static_cast<int>(children.size());
                    children.emplace_back(sys.digits.size(), -1);
                    complete.push_back(-1);
                }
                node = children[node][k];
            }
            if (complete[node] >= 0)
                throw std::invalid_argument("periodic_to_dfao: duplicate exception point " +
                                            exceptions[e].first.str());
            complete[node] = static_cast<int>(e);
        }
    }

    // Tracker state: (trie node or -1 once off every expansion, index of the
    // exception whose padded expansion the input still equals, or -1).
    std::pair<int, int> step(std::pair<int, int> st, int digit) const {
        auto [node, matched] = st;
        int next = node >= 0 ? children[node][digit] : -1;
        int m;
        if (digit == zero_digit)
            m = matched;  // zeros only extend the padding
        else
            m = (next >= 0 && complete[next] >= 0) ? complete[next] : -1;
        return {next, m};
    }

    std::pair<int, int> start() const { return {0, complete[0]}; }
};

}  // namespace

Dfao periodic_to_dfao(const PeriodicTable& table, const NumerationSystem& sys) {
    if (!sys.integral) throw std::invalid_argument("periodic_to_dfao: numeration system is not integral");
    PeriodicTable plain = table;
    plain.exceptions.clear();
    Dfao core = periodic_to_dfao(plain, sys.base, sys.digits);
    if (table.exceptions.empty()) return core;

    ExceptionTrie trie(table.exceptions, sys);
    // Product of the periodic machine with the exception tracker.
    std::map<std::tuple<int, int, int>, int> ids;
    std::vector<std::tuple<int, int, int>> nodes;
    auto add = [&](std::tuple<int, int, int> key) {
        auto [it, fresh] = ids.emplace(key, static_cast<int>(nodes.size()));
        if (fresh) nodes.push_back(key);
        return std::make_pair(it->second, fresh);
    };
    Dfao out;
    out.alphabet = sys.digits;
    out.reading = Reading::lsd_first;
    out.initial = 0;
    auto [troot, tmatch] = trie.start();
    add({core.initial, troot, tmatch});
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (static_cast<std::size_t>(id) >= out.delta.size()) out.delta.resize(id + 1);
        out.delta[id].assign(sys.digits.size(), 0);
        auto [cs, node, matched] = nodes[id];
        for (std::size_t k = 0; k < sys.digits.size(); ++k) {
            auto [n2, m2] = trie.step({node, matched}, static_cast<int>(k));
            auto [nid, fresh] = add({core.delta[cs][k], n2, m2});
            if (fresh) queue.push_back(nid);
            out.delta[id][k] = nid;
        }
    }
    out.delta.resize(nodes.size(), std::vector<int>(sys.digits.size(), 0));
    out.states.reserve(nodes.size());
    out.outputs.reserve(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        auto [cs, node, matched] = nodes[k];
        (void)node;
        out.states.push_back("x" + std::to_string(k));
        out.outputs.push_back(matched >= 0 ? table.exceptions[matched].second : core.outputs[cs]);
    }
    return out;
}

namespace {

// Lexicographically smallest shortest word from `from` to `to`, optionally
// requiring at least one step.
std::optional<std::vector<int>> shortest_word(const Dfao& a, int from, int to, bool nonempty) {
    if (from == to && !nonempty) return std::vector<int>{};
    struct Entry {
        int state;
        std::vector<int> word;
    };
    std::vector<char> seen(a.states.size(), 0);
    std::deque<Entry> queue;
    for (std::size_t k = 0; k < a.alphabet.size(); ++k) {
        int t = a.delta[from][k];
        Entry e{t, {static_cast<int>(k)}};
        if (t == to) return e.word;
        if (!seen[t]) {
            seen[t] = 1;
            queue.push_back(std::move(e));
        }
    }
    while (!queue.empty()) {
        Entry e = queue.front();
        queue.pop_front();
        for (std::size_t k = 0; k < a.alphabet.size(); ++k) {
            int t = a.delta[e.state][k];
            std::vector<int> w = e.word;
            w.push_back(static_cast<int>(k));
            if (t == to) return w;
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back({t, std::move(w)});
            }
        }
    }
    return std::nullopt;
}

// Words from `from` to `to` in length-lex order, produced lazily.
class WordEnumerator {
public:
    WordEnumerator(const Dfao& a, int from, int to) : a_(a), from_(from), to_(to) {
        // can_reach_[k] = states that reach `to` in exactly k steps.
        can_reach_.emplace_back(a.states.size(), 0);
        can_reach_[0][to] = 1;
    }

    std::optional<std::vector<int>> next() {
        while (length_ < 64) {
            ensure_layers(length_);
            if (!have_cursor_) {
                if (!can_reach_[length_][from_]) {
                    ++length_;
                    continue;
                }
                cursor_.assign(length_, 0);
                if (descend(0, from_)) {
                    have_cursor_ = true;
                    return current();
                }
                ++length_;
                continue;
            }
            if (advance()) return current();
            ++length_;
            have_cursor_ = false;
        }
        return std::nullopt;
    }

private:
    void ensure_layers(std::size_t n) {
        while (can_reach_.size() <= n) {
            std::vector<char> layer(a_.states.size(), 0);
            const auto& prev = can_reach_.back();
            for (std::size_t s = 0; s < a_.states.size(); ++s)
                for (int t : a_.delta[s])
                    if (prev[t]) layer[s] = 1;
            can_reach_.push_back(std::move(layer));
        }
    }

    // Fill cursor_[pos..] with the lex-least viable digits from state s.
    bool descend(std::size_t pos, int s) {
        if (pos == length_) return s == to_;
        for (std::size_t k = 0; k < a_.alphabet.size(); ++k) {
            int t = a_.delta[s][k];
            if (!can_reach_[length_ - pos - 1][t]) continue;
            cursor_[pos] = static_cast<int>(k);
            if (descend(pos + 1, t)) return true;
        }
        return false;
    }

    bool advance() {
        // Increment the last position that still has a viable larger digit.
        for (std::size_t pos = length_; pos-- > 0;) {
            int s = from_;
            for (std::size_t j = 0; j < pos; ++j) s = a_.delta[s][cursor_[j]];
            for (std::size_t k = cursor_[pos] + 1; k < a_.alphabet.size(); ++k) {
                int t = a_.delta[s][k];
                if (!can_reach_[length_ - pos - 1][t]) continue;
                cursor_[pos] = static_cast<int>(k);
                if (descend(pos + 1, t)) return true;
            }
        }
        return false;
    }

    std::vector<int> current() const { return cursor_; }

    const Dfao& a_;
    int from_, to_;
    std::size_t length_ = 0;
    bool have_cursor_ = false;
    std::vector<int> cursor_;
    std::vector<std::vector<char>> can_reach_;
};

Word indices_to_word(const Dfao& a, const std::vector<int>& idx) {
    Word w;
    w.reserve(idx.size());
    for (int k : idx) w.push_back(a.alphabet[k]);
    return w;
}

}  // namespace

ReturnNumbers return_numbers(const Dfao& a, const GaussInt& base, int s, std::size_t count) {
    auto inf = infinite_states(a);
    if (std::find(inf.begin(), inf.end(), s) == inf.end())
        throw std::invalid_argument("return_numbers: state has a finite language");
    auto reach = reachable_states(a);
    auto cyc = cyclic_states(a, reach);

    // Cycle anchor: s itself when it lies on a cycle, otherwise the nearest
    // cyclic ancestor that reaches s.
    int anchor = -1;
    Word w3;
    if (cyc[s]) {
        anchor = s;
    } else {
        std::size_t best = SIZE_MAX;
        std::vector<int> best_word;
        for (std::size_t c = 0; c < a.states.size(); ++c) {
            if (!reach[c] || !cyc[c]) continue;
            auto w = shortest_word(a, static_cast<int>(c), s, true);
            if (w && w->size() < best) {
                best = w->size();
                best_word = *w;
                anchor = static_cast<int>(c);
            }
        }
        if (anchor < 0) throw std::logic_error("return_numbers: no cyclic ancestor");
        w3 = indices_to_word(a, best_word);
    }
    const bool lsd = a.reading == Reading::lsd_first;
    auto word_value = [&](const Word& w) {
        if (!lsd) return evaluate(w, base);
        Word r(w.rbegin(), w.rend());
        return evaluate(r, base);
    };

    // The u_j obey u_{j+1} = base^|w2| u_j + const, so u_0 != u_1 makes the
    // sequence injective. Whether a choice is degenerate depends on the
    // reading order (an all-zero cycle pumps invisible leading zeros in
    // lsd reading), so both the cycle and the leading word are searched in
    // length-lex order.
    WordEnumerator cycles(a, anchor, anchor);
    std::vector<Word> cycle_cands;
    while (cycle_cands.size() < 24) {
        auto c = cycles.next();
        if (!c) break;
        if (c->empty()) continue;
        cycle_cands.push_back(indices_to_word(a, *c));
    }
    if (cycle_cands.empty()) throw std::logic_error("return_numbers: anchor lost its cycle");

    for (const Word& w2 : cycle_cands) {
        GaussInt pn = base.pow(w2.size());
        GaussInt h2 = word_value(w2);
        WordEnumerator w1s(a, a.initial, anchor);
        for (int tries = 0; tries < 256; ++tries) {
            auto cand = w1s.next();
            if (!cand) break;
            Word w1 = indices_to_word(a, *cand);
            // In msd reading the pumped block sits before w3; in lsd reading
            // the whole fed sequence is reversed, so w3 and w1 swap roles.
            GaussInt core0 = lsd ? word_value(w3) : word_value(w1);
            GaussInt pm = base.pow(lsd ? w1.size() : w3.size());
            GaussInt tail = lsd ? word_value(w1) : word_value(w3);
            GaussInt u0 = core0 * pm + tail;
            GaussInt u1 = (core0 * pn + h2) * pm + tail;
            if (u0 == u1) continue;

            ReturnNumbers out;
            out.w1 = w1;
            out.w2 = w2;
            out.w3 = w3;
            out.cycle_state = anchor;
            out.values.reserve(count);
            GaussInt core = core0;
            for (std::size_t j = 0; j < count; ++j) {
                out.values.push_back(core * pm + tail);
                core = core * pn + h2;
            }
            return out;
        }
    }
    throw std::runtime_error("return_numbers: no admissible cycle and leading word");
}

std::vector<Word> words_to_state(const Dfao& a, int target, std::size_t count) {
    WordEnumerator en(a, a.initial, target);
    std::vector<Word> out;
    while (out.size() < count) {
        auto w = en.next();
        if (!w) break;
        out.push_back(indices_to_word(a, *w));
    }
    return out;
}

GaussInt fed_word_value(const Dfao& a, const GaussInt& base, const Word& fed) {
    if (a.reading == Reading::msd_first) return evaluate(fed, base);
    Word r(fed.rbegin(), fed.rend());
    return evaluate(r, base);
}

AutomaticConfiguration::AutomaticConfiguration(Dfao dfao, NumerationSystem sys)
    : dfao_(std::move(dfao)), base_(sys.base), system_(std::move(sys)) {
    dfao_.validate();
    if (!integral() || !system().integral)
        throw std::invalid_argument("automatic configuration: numeration system is not integral");
    for (const auto& d : system().digits.digits())
        if (!dfao_.alphabet.contains(d))
            throw std::invalid_argument("automatic configuration: automaton cannot read digit " + d.str());
}

AutomaticConfiguration::AutomaticConfiguration(Dfao dfao, GaussInt base, Rat r)
    : dfao_(std::move(dfao)), base_(base), system_(EnlargedSystem(base, std::move(r))) {
    dfao_.validate();
    for (const auto& d : enlarged().context.digits.digits())
        if (!dfao_.alphabet.contains(d))
            throw std::invalid_argument("automatic configuration: automaton cannot read digit " + d.str());
}

ConsistencyResult AutomaticConfiguration::verify_consistency() {
    auto res = check_consistency(dfao_, base_);
    consistency_verified_ = res.consistent;
    return res;
}

Word AutomaticConfiguration::expansion_of(const GaussInt& z) const {
    if (integral()) return expand(z, system());
    const auto& es = enlarged();
    unsigned n = short_expansion_length(z, es.base, es.r);
    return short_expansion(z, n, es.context);
}

std::string AutomaticConfiguration::value_at(const GaussInt& z) const {
    Word w1 = expansion_of(z);
    Word w2;
    if (integral()) {
        w2 = Word{GaussInt{}};
        w2.insert(w2.end(), w1.begin(), w1.end());
    } else {
        const auto& es = enlarged();
        unsigned n = short_expansion_length(z, es.base, es.r);
        w2 = short_expansion(z, n + 1, es.context);
    }
    const std::string& o1 = dfao_.run(w1);
    const std::string& o2 = dfao_.run(w2);
    if (o1 != o2) {
        auto fmt = [](const Word& w) {
            std::string s = "[";
            for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + w[k].str();
            return s + "]";
        };
        throw std::runtime_error("inconsistent automaton at " + z.str() + ": " + fmt(w1) + " -> " + o1 +
                                 " but " + fmt(w2) + " -> " + o2);
    }
    return o1;
}

int AutomaticConfiguration::state_at(const GaussInt& z) const { return dfao_.state_on(expansion_of(z)); }

}  // namespace gausscobham
