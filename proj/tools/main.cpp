// gausscobham: Gaussian-integer numeration systems, digit automata, and
// periodicity analysis on Z[i].
//
// Exit codes: 0 success, 1 negative domain verdict or domain violation,
// 2 malformed input / usage error.

#include <CLI11.hpp>

#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>

#include "gausscobham/approx.hpp"
#include "gausscobham/io.hpp"
#include "gausscobham/parallel.hpp"
#include "gausscobham/periodicity.hpp"

using namespace gausscobham;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainExit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GaussInt parse_gauss_arg(const std::string& s) {
    try {
        return parse_gauss(s);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

Rat parse_rat_arg(const std::string& s) {
    try {
        return parse_rat(s);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

struct WindowSpec {
    long x0 = -50, y0 = -50, width = 101, height = 101;
};

WindowSpec parse_window_arg(const std::string& s) {
    WindowSpec w;
    std::istringstream in(s);
    char c1, c2, c3;
    if (!(in >> w.x0 >> c1 >> w.y0 >> c2 >> w.width >> c3 >> w.height) || c1 != ',' || c2 != ',' ||
        c3 != ',' || !(in >> std::ws).eof() || w.width <= 0 || w.height <= 0)
        throw UsageError("window spec must be x0,y0,W,H with positive W,H: '" + s + "'");
    return w;
}

DigitSet resolve_digits(const GaussInt& base, const std::string& digits, const std::string& preset) {
    try {
        if (!digits.empty() && !preset.empty())
            throw UsageError("give either --digits or --preset, not both");
        if (!digits.empty()) return parse_digit_set(digits);
        if (preset == "canonical" || preset.empty()) return canonical_digits(base);
        if (preset == "ddg") return ddg_digits(base);
        if (preset == "katai") return natural_digits(base);
        throw UsageError("unknown preset '" + preset + "' (canonical|ddg|katai)");
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

// An integral system for the base: explicit digits/preset when given,
// otherwise the first of the katai / canonical / ddg presets that validates.
NumerationSystem resolve_integral_system(const GaussInt& base, const std::string& digits,
                                         const std::string& preset) {
    if (!digits.empty() || !preset.empty()) {
        NumerationSystem sys = NumerationSystem::make(base, resolve_digits(base, digits, preset));
        if (!sys.integral)
            throw DomainExit("numeration system (" + base.str() + ", ...) is not integral");
        return sys;
    }
    std::vector<DigitSet> tries;
    tries.push_back(natural_digits(base));
    tries.push_back(canonical_digits(base));
    if (base.norm() >= 5) tries.push_back(ddg_digits(base));
    for (auto& d : tries) {
        NumerationSystem sys = NumerationSystem::make(base, std::move(d));
        if (sys.integral) return sys;
    }
    throw DomainExit("no integral digit preset found for base " + base.str() +
                     "; pass --digits explicitly");
}

std::string word_display(const Word& w) { return w.empty() ? "0" : format_word(w); }

AutomaticConfiguration config_from_file(const DfaoFile& f) {
    auto check = is_numeration_system(f.base, f.dfao.alphabet);
    if (check.integral) return {f.dfao, NumerationSystem::make(f.base, f.dfao.alphabet)};
    // Otherwise the alphabet must be a full open-disk digit set for some
    // small radius r >= 2; these are the two numerations value_at supports.
    for (const Rat& r : {Rat(2), Rat(5, 2), Rat(3), Rat(7, 2), Rat(4), Rat(5), Rat(6)}) {
        DigitSet full = enlarged_digit_set(f.base, DigitSet({0}), r);
        if (full == f.dfao.alphabet) return {f.dfao, f.base, r};
    }
    throw DomainExit("automaton digit set is neither integral nor a full digit disk");
}

std::string format_cycle(const std::vector<GaussInt>& cycle) {
    std::string s;
    for (const auto& z : cycle) s += z.str() + " -> ";
    return s + (cycle.empty() ? "" : cycle.front().str());
}

// Deterministic palettes keyed by the automaton's output-symbol order.
unsigned char gray_level(std::size_t index, std::size_t count) {
    if (count <= 1) return 0;
    return static_cast<unsigned char>(255 * index / (count - 1));
}

const unsigned char kPalette[16][3] = {
    {0, 0, 0},       {230, 25, 75},   {60, 180, 75},   {255, 225, 25},
    {0, 130, 200},   {245, 130, 48},  {145, 30, 180},  {70, 240, 240},
    {240, 50, 230},  {210, 245, 60},  {250, 190, 212}, {0, 128, 128},
    {220, 190, 255}, {170, 110, 40},  {255, 250, 200}, {128, 0, 0},
};

int run_validate(const std::string& base_s, const std::string& digits, const std::string& preset) {
    GaussInt base = parse_gauss_arg(base_s);
    DigitSet d = resolve_digits(base, digits, preset);
    auto check = is_numeration_system(base, d);
    std::cout << "base: " << base.str() << "\n";
    std::cout << "digits: " << format_digit_set(d) << "\n";
    std::cout << "complete_residue: " << (check.complete_residue ? "yes" : "no") << "\n";
    std::cout << "integral: " << (check.integral ? "yes" : "no") << "\n";
    if (!check.cycle.empty()) std::cout << "cycle: " << format_cycle(check.cycle) << "\n";
    return check.integral ? 0 : 1;
}

int run_digits(const std::string& base_s, const std::string& preset) {
    GaussInt base = parse_gauss_arg(base_s);
    std::cout << format_digit_set(resolve_digits(base, "", preset)) << "\n";
    return 0;
}

int run_expand(const std::string& z_s, const std::string& base_s, const std::string& digits,
               const std::string& preset) {
    GaussInt z = parse_gauss_arg(z_s);
    GaussInt base = parse_gauss_arg(base_s);
    NumerationSystem sys = resolve_integral_system(base, digits, preset);
    std::cout << word_display(expand(z, sys)) << "\n";
    return 0;
}

int run_eval(const std::string& word_s, const std::string& base_s) {
    Word w;
    try {
        w = parse_word(word_s);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    GaussInt base = parse_gauss_arg(base_s);
    std::cout << evaluate(w, base).str() << "\n";
    return 0;
}

int run_convert(const std::string& word_s, const std::string& base_s, const std::string& from_s,
                const std::string& to_s, const std::string& r_s) {
    GaussInt base = parse_gauss_arg(base_s);
    Word w;
    DigitSet from, to;
    try {
        w = parse_word(word_s);
        to = parse_digit_set(to_s);
        if (!from_s.empty() && !r_s.empty()) throw UsageError("give either --from or --r, not both");
        if (from_s.empty() && r_s.empty()) throw UsageError("one of --from or --r is required");
        from = from_s.empty() ? enlarged_digit_set(base, to, parse_rat_arg(r_s))
                              : parse_digit_set(from_s);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    NumerationSystem sys = NumerationSystem::make(base, to);
    if (!sys.integral) throw DomainExit("target numeration system is not integral");
    auto t = build_carry_transducer(sys, from);
    std::cout << word_display(convert_expansion(w, t)) << "\n";
    return 0;
}

int run_consistency(const std::string& in_path) {
    DfaoFile f = dfao_from_json(read_file(in_path));
    auto res = check_consistency(f.dfao, f.base);
    if (res.consistent) {
        std::cout << "consistent\n";
        return 0;
    }
    const auto& [w1, w2] = *res.counterexample;
    std::cout << "inconsistent w1=" << word_display(w1) << " w2=" << word_display(w2)
              << " value=" << evaluate(w1, f.base).str() << " out1=" << f.dfao.run(w1)
              << " out2=" << f.dfao.run(w2) << "\n";
    return 1;
}

int run_render(const std::string& in_path, const std::string& window_s, const std::string& out_path,
               std::string format) {
    WindowSpec w = parse_window_arg(window_s);
    DfaoFile f = dfao_from_json(read_file(in_path));
    AutomaticConfiguration cfg = config_from_file(f);

    if (format.empty()) {
        auto dot = out_path.rfind('.');
        std::string ext = dot == std::string::npos ? "" : out_path.substr(dot + 1);
        format = ext == "ppm" ? "ppm" : ext == "win" ? "window" : "pgm";
    }
    if (format != "pgm" && format != "ppm" && format != "window")
        throw UsageError("unknown render format '" + format + "' (pgm|ppm|window)");

    auto symbols = cfg.dfao().output_alphabet();
    std::map<std::string, std::size_t> palette;
    for (std::size_t k = 0; k < symbols.size(); ++k) palette[symbols[k]] = k;

    std::vector<std::string> cells(static_cast<std::size_t>(w.width) * w.height);
    std::optional<std::string> failure;
    std::mutex failure_lock;
    parallel_for(w.height, [&](long row) {
        Int y = Int(w.y0) + (w.height - 1 - row);
        for (long col = 0; col < w.width; ++col) {
            try {
                cells[static_cast<std::size_t>(row) * w.width + col] =
                    cfg.value_at(GaussInt{Int(w.x0) + col, y});
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> hold(failure_lock);
                if (!failure) failure = e.what();
                return;
            }
        }
    });
    if (failure) throw DomainExit(*failure);

    std::string data;
    if (format == "window") {
        data = window_to_text(Configuration::window(GaussInt{w.x0, w.y0}, w.width, w.height, cells));
    } else {
        std::ostringstream head;
        head << (format == "pgm" ? "P5" : "P6") << "\n" << w.width << " " << w.height << "\n255\n";
        data = head.str();
        for (const auto& c : cells) {
            std::size_t k = palette.at(c);
            if (format == "pgm") {
                data += static_cast<char>(gray_level(k, symbols.size()));
            } else {
                const unsigned char* rgb = kPalette[k % 16];
                data += static_cast<char>(rgb[0]);
                data += static_cast<char>(rgb[1]);
                data += static_cast<char>(rgb[2]);
            }
        }
    }
    write_file(out_path, data);
    std::cout << "wrote " << out_path << " " << w.width << "x" << w.height << " format=" << format
              << "\n";
    return 0;
}

int run_periodic2dfao(const std::string& base_s, const std::string& table_path,
                      const std::string& digits, const std::string& preset,
                      const std::string& out_path) {
    GaussInt base = parse_gauss_arg(base_s);
    PeriodicTable table;
    try {
        table = table_from_text(read_file(table_path));
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    NumerationSystem sys = resolve_integral_system(base, digits, preset);
    Dfao a = periodic_to_dfao(table, sys);
    write_file(out_path, dfao_to_json(a, base));
    std::cout << "wrote " << out_path << " states=" << a.states.size() << "\n";
    return 0;
}

int run_detect(const std::string& in_path, const std::string& w_s, const std::string& v_s) {
    Configuration cfg = window_from_text(read_file(in_path));
    long half = std::min(cfg.window_width(), cfg.window_height()) / 2;
    // The verification ball around the origin must fit inside the window.
    Rat v = v_s.empty() ? Rat(half - 1) : parse_rat_arg(v_s);
    Rat w = w_s.empty() ? v / 2 : parse_rat_arg(w_s);
    auto det = detect_eventual_periodicity(cfg, w, v);
    if (!det) {
        std::cout << "none-at-this-scale\n";
        return 1;
    }
    std::cout << "lattice " << format_lattice(det->lattice) << " index "
              << det->lattice.index().get_str() << " exceptions " << det->exceptions.size() << "\n";
    for (const auto& [z, sym] : det->exceptions)
        std::cout << "exception " << z.str() << " " << sym << "\n";
    return 0;
}

int run_dirichlet(const std::string& a_s, const std::string& b_s, const std::string& eps_s,
                  unsigned long cap) {
    GaussInt a = parse_gauss_arg(a_s), b = parse_gauss_arg(b_s);
    Rat eps = parse_rat_arg(eps_s);
    auto pp = dirichlet_pair(a, b, eps, cap);
    if (!pp) {
        std::cout << "not-found-within-cap " << cap << "\n";
        return 1;
    }
    std::cout << "m=" << pp->m << " n=" << pp->n << " err_sq=" << pp->error_sq.get_num().get_str()
              << "/" << pp->error_sq.get_den().get_str() << "\n";
    return 0;
}

int run_independent(const std::string& a_s, const std::string& b_s) {
    GaussInt a = parse_gauss_arg(a_s), b = parse_gauss_arg(b_s);
    auto res = multiplicatively_independent(a, b);
    std::cout << res.certificate(a, b) << "\n";
    return res.independent ? 0 : 1;
}

int run_demo(const std::string& base1_s, const std::string& base2_s, const std::string& table_path,
             const std::string& window_s, const std::string& radius_s) {
    GaussInt base1 = parse_gauss_arg(base1_s), base2 = parse_gauss_arg(base2_s);
    WindowSpec w = parse_window_arg(window_s);
    PeriodicTable table;
    try {
        table = table_from_text(read_file(table_path));
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }

    bool ok = true;
    auto indep = multiplicatively_independent(base1, base2);
    std::cout << "check=independence status=" << (indep.independent ? "ok" : "fail")
              << " detail=" << indep.certificate(base1, base2) << "\n";
    if (!indep.independent) return 1;

    bool r1 = is_root_of_integer(base1), r2 = is_root_of_integer(base2);
    std::cout << "check=root-of-integer base=" << base1.str() << " value=" << (r1 ? "yes" : "no")
              << "\n";
    std::cout << "check=root-of-integer base=" << base2.str() << " value=" << (r2 ? "yes" : "no")
              << "\n";
    if (r1 && r2) {
        std::cout << "check=hypothesis status=fail detail=both bases are roots of integers; such "
                     "pairs admit configurations automatic in both bases without being eventually "
                     "periodic\n";
        return 1;
    }

    std::optional<AutomaticConfiguration> first_cfg;
    for (const GaussInt& base : {base1, base2}) {
        NumerationSystem sys = resolve_integral_system(base, "", "");
        Dfao a = periodic_to_dfao(table, sys);
        auto cons = check_consistency(a, base);
        std::cout << "check=consistency base=" << base.str()
                  << " status=" << (cons.consistent ? "ok" : "fail") << " states=" << a.states.size()
                  << "\n";
        ok = ok && cons.consistent;

        AutomaticConfiguration cfg(a, sys);
        long mismatches = 0;
        for (long row = 0; row < w.height; ++row) {
            Int y = Int(w.y0) + (w.height - 1 - row);
            for (long col = 0; col < w.width; ++col) {
                GaussInt z{Int(w.x0) + col, y};
                if (cfg.value_at(z) != table.at(z)) ++mismatches;
            }
        }
        std::cout << "check=table-agreement base=" << base.str()
                  << " status=" << (mismatches == 0 ? "ok" : "fail") << " mismatches=" << mismatches
                  << " window=" << w.width << "x" << w.height << "\n";
        ok = ok && mismatches == 0;
        if (!first_cfg) first_cfg.emplace(std::move(cfg));
    }

    long half = std::min(w.width, w.height) / 2;
    Rat v = radius_s.empty() ? Rat(half - 1) : parse_rat_arg(radius_s);
    Configuration window_cfg = materialize_window(Configuration::automatic(*first_cfg),
                                                  GaussInt{w.x0, w.y0}, w.width, w.height);
    auto det = detect_eventual_periodicity(window_cfg, v / 2, v);
    if (det) {
        // Periods of the detected lattice must be periods of the table.
        bool refines = true;
        PeriodicTable plain = table;
        plain.exceptions.clear();
        Int p = static_cast<long>(table.period);
        for (const GaussInt& vec : {det->lattice.p1, det->lattice.p2})
            for (Int a = 0; a < p && refines; ++a)
                for (Int b = 0; b < p && refines; ++b)
                    if (GaussInt z{a, b}; plain.at(z) != plain.at(z + vec)) refines = false;
        std::cout << "check=detect status=ok lattice=" << format_lattice(det->lattice)
                  << " exceptions=" << det->exceptions.size()
                  << " refines-table=" << (refines ? "yes" : "no") << "\n";
        ok = ok && refines;
    } else {
        std::cout << "check=detect status=fail detail=no lattice found at this scale\n";
        ok = false;
    }
    std::cout << "summary=" << (ok ? "pass" : "fail") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-integer numeration systems, digit automata, and periodicity analysis"};
    app.require_subcommand(1);

    std::string base_s, base2_s, digits_s, preset_s, z_s, word_s, from_s, to_s, r_s;
    std::string in_path, out_path, table_path, format_s, window_s, eps_s = "1/2", w_s, v_s, radius_s;
    unsigned long cap = 200;

    auto* validate = app.add_subcommand("validate", "Check a digit set: complete residues, integrality");
    validate->add_option("--base", base_s)->required();
    validate->add_option("--digits", digits_s);
    validate->add_option("--preset", preset_s);

    auto* digits = app.add_subcommand("digits", "Print a preset digit set for a base");
    digits->add_option("--base", base_s)->required();
    digits->add_option("--preset", preset_s);

    auto* expand_cmd = app.add_subcommand("expand", "Expand a Gaussian integer in an integral system");
    expand_cmd->add_option("z", z_s)->required();
    expand_cmd->add_option("--base", base_s)->required();
    expand_cmd->add_option("--digits", digits_s);
    expand_cmd->add_option("--preset", preset_s);

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a digit word in a base");
    eval_cmd->add_option("word", word_s)->required();
    eval_cmd->add_option("--base", base_s)->required();

    auto* convert = app.add_subcommand("convert", "Rewrite an expansion into canonical digits");
    convert->add_option("word", word_s)->required();
    convert->add_option("--base", base_s)->required();
    convert->add_option("--from", from_s, "read digit set, comma-separated");
    convert->add_option("--r", r_s, "read the full digit disk of radius r*|base| instead");
    convert->add_option("--to", to_s)->required();

    auto* consistency = app.add_subcommand("consistency", "Check an automaton for value-consistency");
    consistency->add_option("--in", in_path)->required();

    auto* render = app.add_subcommand("render", "Render an automatic configuration to PGM/PPM/window");
    render->add_option("--in", in_path)->required();
    render->add_option("--window", window_s, "x0,y0,W,H; top row has the highest imaginary part")
        ->default_val("-32,-32,65,65");
    render->add_option("--out", out_path)->required();
    render->add_option("--format", format_s, "pgm|ppm|window (default from extension)");

    auto* p2d = app.add_subcommand("periodic2dfao", "Compile a periodic table into an automaton");
    p2d->add_option("--base", base_s)->required();
    p2d->add_option("--table", table_path)->required();
    p2d->add_option("--digits", digits_s);
    p2d->add_option("--preset", preset_s);
    p2d->add_option("--out", out_path)->required();

    auto* detect = app.add_subcommand("detect", "Search a window for an eventual-periodicity witness");
    detect->add_option("--in", in_path)->required();
    detect->add_option("--w", w_s, "harvest radius (rational)");
    detect->add_option("--v", v_s, "verification radius (rational)");

    auto* dirichlet = app.add_subcommand("dirichlet", "Find close powers alpha^m ~ beta^n");
    dirichlet->add_option("alpha", base_s)->required();
    dirichlet->add_option("beta", base2_s)->required();
    dirichlet->add_option("--eps", eps_s, "relative error bound, rational a/b");
    dirichlet->add_option("--cap", cap, "largest exponent tried");

    auto* independent = app.add_subcommand("independent", "Decide multiplicative independence");
    independent->add_option("alpha", base_s)->required();
    independent->add_option("beta", base2_s)->required();

    auto* demo = app.add_subcommand("demo-cobham", "Two-base periodic pipeline demonstration");
    demo->add_option("--base1", base_s)->required();
    demo->add_option("--base2", base2_s)->required();
    demo->add_option("--table", table_path)->required();
    demo->add_option("--window", window_s)->default_val("-50,-50,101,101");
    demo->add_option("--radius", radius_s, "detection radius (rational)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return run_validate(base_s, digits_s, preset_s);
        if (*digits) return run_digits(base_s, preset_s);
        if (*expand_cmd) return run_expand(z_s, base_s, digits_s, preset_s);
        if (*eval_cmd) return run_eval(word_s, base_s);
        if (*convert) return run_convert(word_s, base_s, from_s, to_s, r_s);
        if (*consistency) return run_consistency(in_path);
        if (*render) return run_render(in_path, window_s, out_path, format_s);
        if (*p2d) return run_periodic2dfao(base_s, table_path, digits_s, preset_s, out_path);
        if (*detect) return run_detect(in_path, w_s, v_s);
        if (*dirichlet) return run_dirichlet(base_s, base2_s, eps_s, cap);
        if (*independent) return run_independent(base_s, base2_s);
        if (*demo) return run_demo(base_s, base2_s, table_path, window_s, radius_s);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
