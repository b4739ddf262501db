#include "gausscobham/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gausscobham {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

}  // namespace

std::string format_word(const Word& w) {
    bool compact = !w.empty();
    for (const auto& d : w)
        if (d.im != 0 || d.re < 0 || d.re > 9) compact = false;
    if (compact) {
        std::string s;
        for (const auto& d : w) s += static_cast<char>('0' + d.re.get_si());
        return s;
    }
    std::string s = "[";
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + w[k].str();
    return s + "]";
}

Word parse_word(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty word");
    Word w;
    if (text.front() == '[') {
        if (text.back() != ']') throw std::invalid_argument("unterminated word: '" + text + "'");
        std::string body = text.substr(1, text.size() - 2);
        if (body.empty()) return w;
        for (const auto& part : split(body, ',')) w.push_back(parse_gauss(part));
        return w;
    }
    for (char c : text) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("compact words use digits 0-9 only: '" + text + "'");
        w.push_back(GaussInt{c - '0', 0});
    }
    return w;
}

std::string format_digit_set(const DigitSet& d) {
    std::string s;
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + d[k].str();
    return s;
}

DigitSet parse_digit_set(const std::string& text) {
    std::vector<GaussInt> ds;
    for (const auto& part : split(text, ',')) ds.push_back(parse_gauss(part));
    return DigitSet(std::move(ds));
}

std::string dfao_to_json(const Dfao& a, const GaussInt& base) {
    a.validate();
    nlohmann::ordered_json j;
    j["base"] = base.str();
    auto digits = nlohmann::ordered_json::array();
    for (const auto& d : a.alphabet.digits()) digits.push_back(d.str());
    j["digits"] = std::move(digits);
    j["reading"] = a.reading == Reading::msd_first ? "msd-first" : "lsd-first";
    j["states"] = a.states;
    j["initial"] = a.states[a.initial];
    nlohmann::ordered_json transitions;
    for (std::size_t s = 0; s < a.states.size(); ++s) {
        nlohmann::ordered_json row;
        for (std::size_t k = 0; k < a.alphabet.size(); ++k)
            row[a.alphabet[k].str()] = a.states[a.delta[s][k]];
        transitions[a.states[s]] = std::move(row);
    }
    j["transitions"] = std::move(transitions);
    nlohmann::ordered_json outputs;
    for (std::size_t s = 0; s < a.states.size(); ++s) outputs[a.states[s]] = a.outputs[s];
    j["outputs"] = std::move(outputs);
    return j.dump(2) + "\n";
}

DfaoFile dfao_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DfaoFile out;
    out.base = parse_gauss(j.at("base").get<std::string>());
    std::vector<GaussInt> digits;
    for (const auto& d : j.at("digits")) digits.push_back(parse_gauss(d.get<std::string>()));
    out.dfao.alphabet = DigitSet(std::move(digits));
    std::string reading = j.at("reading").get<std::string>();
    if (reading == "msd-first")
        out.dfao.reading = Reading::msd_first;
    else if (reading == "lsd-first")
        out.dfao.reading = Reading::lsd_first;
    else
        throw std::invalid_argument("automaton: unknown reading '" + reading + "'");
    out.dfao.states = j.at("states").get<std::vector<std::string>>();
    std::map<std::string, int> ids;
    for (std::size_t s = 0; s < out.dfao.states.size(); ++s)
        if (!ids.emplace(out.dfao.states[s], static_cast<int>(s)).second)
            throw std::invalid_argument("automaton: duplicate state name " + out.dfao.states[s]);
    auto state_id = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it == ids.end()) throw std::invalid_argument("automaton: unknown state '" + name + "'");
        return it->second;
    };
    out.dfao.initial = state_id(j.at("initial").get<std::string>());
    out.dfao.delta.assign(out.dfao.states.size(), std::vector<int>(out.dfao.alphabet.size(), 0));
    const auto& transitions = j.at("transitions");
    for (std::size_t s = 0; s < out.dfao.states.size(); ++s) {
        const auto& row = transitions.at(out.dfao.states[s]);
        for (std::size_t k = 0; k < out.dfao.alphabet.size(); ++k)
            out.dfao.delta[s][k] = state_id(row.at(out.dfao.alphabet[k].str()).get<std::string>());
    }
    out.dfao.outputs.resize(out.dfao.states.size());
    const auto& outputs = j.at("outputs");
    for (std::size_t s = 0; s < out.dfao.states.size(); ++s)
        out.dfao.outputs[s] = outputs.at(out.dfao.states[s]).get<std::string>();
    out.dfao.validate();
    return out;
}

namespace {

std::string join_symbols(const std::vector<std::string>& syms) {
    std::string s;
    for (std::size_t k = 0; k < syms.size(); ++k) s += (k ? "," : "") + syms[k];
    return s;
}

bool all_single_char(const std::vector<std::string>& syms) {
    for (const auto& s : syms)
        if (s.size() != 1) return false;
    return true;
}

}  // namespace

std::string window_to_text(const Configuration& cfg) {
    if (!cfg.is_window()) throw std::invalid_argument("window_to_text: not a window configuration");
    auto alphabet = cfg.alphabet();
    std::ostringstream out;
    out << "origin " << cfg.window_origin().str() << " width " << cfg.window_width() << " height "
        << cfg.window_height() << " alphabet " << join_symbols(alphabet) << "\n";
    bool compact = all_single_char(alphabet);
    const auto& cells = cfg.window_cells();
    for (long r = 0; r < cfg.window_height(); ++r) {
        for (long c = 0; c < cfg.window_width(); ++c) {
            if (!compact && c) out << ' ';
            out << cells[static_cast<std::size_t>(r) * cfg.window_width() + c];
        }
        out << "\n";
    }
    return out.str();
}

Configuration window_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("window: missing header");
    auto ht = tokens(header);
    if (ht.size() != 8 || ht[0] != "origin" || ht[2] != "width" || ht[4] != "height" ||
        ht[6] != "alphabet")
        throw std::invalid_argument("window: bad header '" + header + "'");
    GaussInt origin = parse_gauss(ht[1]);
    long width = std::stol(ht[3]);
    long height = std::stol(ht[5]);
    auto alphabet = split(ht[7], ',');
    bool compact = all_single_char(alphabet);
    std::vector<std::string> cells;
    std::string line;
    for (long r = 0; r < height; ++r) {
        if (!std::getline(in, line)) throw std::invalid_argument("window: missing row");
        std::vector<std::string> row;
        if (compact) {
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) row.emplace_back(1, c);
        } else {
            row = tokens(line);
        }
        if (static_cast<long>(row.size()) != width)
            throw std::invalid_argument("window: row width mismatch at row " + std::to_string(r));
        for (auto& s : row) cells.push_back(std::move(s));
    }
    return Configuration::window(origin, width, height, std::move(cells));
}

std::string table_to_text(const PeriodicTable& t) {
    t.validate();
    std::ostringstream out;
    out << "period " << t.period << "\n";
    std::vector<std::string> alphabet;
    auto add = [&alphabet](const std::string& s) {
        if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end()) alphabet.push_back(s);
    };
    for (const auto& col : t.values)
        for (const auto& v : col) add(v);
    for (const auto& [z, s] : t.exceptions) add(s);
    out << "alphabet " << join_symbols(alphabet) << "\n";
    for (unsigned long r = 0; r < t.period; ++r) {
        unsigned long b = t.period - 1 - r;
        for (unsigned long a = 0; a < t.period; ++a) out << (a ? " " : "") << t.values[a][b];
        out << "\n";
    }
    for (const auto& [z, s] : t.exceptions) out << "exception " << z.str() << " " << s << "\n";
    return out.str();
}

PeriodicTable table_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    PeriodicTable t;
    if (!std::getline(in, line)) throw std::invalid_argument("table: empty input");
    auto ht = tokens(line);
    if (ht.size() != 2 || ht[0] != "period") throw std::invalid_argument("table: bad period line");
    long p = std::stol(ht[1]);
    if (p <= 0 || p > 4096) throw std::invalid_argument("table: period out of range");
    t.period = static_cast<unsigned long>(p);
    if (!std::getline(in, line)) throw std::invalid_argument("table: missing alphabet line");
    auto at = tokens(line);
    if (at.size() != 2 || at[0] != "alphabet") throw std::invalid_argument("table: bad alphabet line");
    t.values.assign(t.period, std::vector<std::string>(t.period));
    for (unsigned long r = 0; r < t.period; ++r) {
        if (!std::getline(in, line)) throw std::invalid_argument("table: missing row");
        auto row = tokens(line);
        if (row.size() != t.period) throw std::invalid_argument("table: bad row width");
        unsigned long b = t.period - 1 - r;
        for (unsigned long a = 0; a < t.period; ++a) t.values[a][b] = row[a];
    }
    while (std::getline(in, line)) {
        auto et = tokens(line);
        if (et.empty()) continue;
        if (et.size() != 3 || et[0] != "exception")
            throw std::invalid_argument("table: bad exception line '" + line + "'");
        t.exceptions.emplace_back(parse_gauss(et[1]), et[2]);
    }
    t.validate();
    return t;
}

std::string format_lattice(const Lattice& L) { return L.p1.str() + ";" + L.p2.str(); }

Lattice parse_lattice(const std::string& text) {
    auto parts = split(text, ';');
    if (parts.size() != 2) throw std::invalid_argument("lattice: expected 'p1;p2'");
    return {parse_gauss(parts[0]), parse_gauss(parts[1])};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

}  // namespace gausscobham
