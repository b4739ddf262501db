#pragma once

#include <string>

#include "gausscobham/periodicity.hpp"

namespace gausscobham {

/// Compact digits when the word uses only 0..9 ("1100"), bracketed
/// comma-separated "a+bi" forms otherwise ("[1,0,-1+i]"). The empty word
/// prints as "[]".
std::string format_word(const Word& w);

/// Accepts both forms produced by format_word plus bare digit strings.
Word parse_word(const std::string& text);

/// Comma-joined "a+bi" forms.
std::string format_digit_set(const DigitSet& d);
DigitSet parse_digit_set(const std::string& text);

/// Automaton interchange document: {base, digits, reading, states, initial,
/// transitions, outputs} with stable key order and no floating point.
struct DfaoFile {
    Dfao dfao;
    GaussInt base;
};

std::string dfao_to_json(const Dfao& a, const GaussInt& base);
DfaoFile dfao_from_json(const std::string& text);

/// Window text format: a header line
///   origin <a+bi> width <W> height <H> alphabet <s1,s2,...>
/// followed by H rows, top row = highest imaginary part. Cells are
/// concatenated when every symbol is one character, space-separated
/// otherwise.
std::string window_to_text(const Configuration& window_cfg);
Configuration window_from_text(const std::string& text);

/// Periodic table text format:
///   period <p>
///   alphabet <s1,s2,...>
///   <p rows of p space-separated symbols, top row = imaginary part p-1>
///   exception <a+bi> <symbol>   (zero or more)
std::string table_to_text(const PeriodicTable& t);
PeriodicTable table_from_text(const std::string& text);

/// "p1;p2" in the "a+bi" form.
std::string format_lattice(const Lattice& L);
Lattice parse_lattice(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace gausscobham
