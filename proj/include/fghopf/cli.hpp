#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fghopf/constraints.hpp>
#include <fghopf/dsl.hpp>
#include <fghopf/extended_hopf.hpp>
#include <fghopf/fab.hpp>
#include <fghopf/fgl.hpp>
#include <fghopf/hopf_fgl.hpp>
#include <fghopf/report.hpp>

namespace fghopf::cli
{

struct options {
    // ANSI verdict colors in text output; the caller decides (tty, NO_COLOR).
    bool color = false;
};

/// Bad invocation or unusable input: exit code 2.
class usage_error : public error
{
public:
    using error::error;
};

namespace detail
{

inline constexpr int default_cutoff = 6;

class session
{
public:
    session(std::ostream &out, bool machine, bool color) : out_(out), machine_(machine), color_(color) {}

    void report(const verification_report &r)
    {
        out_ << (machine_ ? emit_machine(r) + "\n" : emit_text(r, color_));
        failed_ = failed_ || !r.passed();
    }

    /// A computed value: raw text, or one JSON object in machine format.
    void result(const std::string &subject, const std::string &command, const nlohmann::ordered_json &value,
                const std::string &text)
    {
        if (machine_) {
            nlohmann::ordered_json j;
            j["subject"] = subject;
            j["command"] = command;
            j["result"] = value;
            out_ << j.dump() << "\n";
        } else {
            out_ << text;
            if (!text.empty() && text.back() != '\n') {
                out_ << "\n";
            }
        }
    }

    [[nodiscard]] int exit_code() const { return failed_ ? 1 : 0; }

private:
    std::ostream &out_;
    bool machine_;
    bool color_;
    bool failed_ = false;
};

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw usage_error("cannot read '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline document load(const std::string &path)
{
    try {
        return parse_document(read_file(path));
    } catch (const parse_error &e) {
        throw usage_error(path + ":" + e.what());
    }
}

/// Largest declared trunc in the document, or the default when none.
inline int document_cutoff(const document &d)
{
    int w = -1;
    for (const auto &decl : d.declarations()) {
        if (const auto *s = std::get_if<series_decl>(&decl)) {
            w = std::max(w, s->series.cutoff());
        } else if (const auto *g = std::get_if<hopffgl_decl>(&decl)) {
            w = std::max(w, g->fgl.cutoff());
        }
    }
    return w < 0 ? default_cutoff : w;
}

template <class T>
const T &lookup(const document &d, const std::string &name, const char *what)
{
    if (const auto *x = d.find<T>(name)) {
        return *x;
    }
    if (const auto *other = d.find_any(name)) {
        throw usage_error("'" + name + "' is a " + decl_keyword(*other) + ", not a " + what);
    }
    throw usage_error("no " + std::string(what) + " named '" + name + "'");
}

inline const hopffgl_decl &lookup_fgl(const document &d, const std::string &name)
{
    return lookup<hopffgl_decl>(d, name, "hopffgl");
}

/// Name of the base ring a Hopf (or ring) declaration sits over.
inline std::string base_ring_name(const document &d, const std::string &over)
{
    if (const auto *h = d.find<hopf_decl>(over)) {
        return h->over;
    }
    return over;
}

inline pair_t parse_pair(const std::string &s)
{
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) {
            throw std::invalid_argument(s);
        }
        std::size_t n1 = 0;
        std::size_t n2 = 0;
        const auto a = std::stoll(s.substr(0, comma), &n1);
        const auto b = std::stoll(s.substr(comma + 1), &n2);
        if (n1 != comma || n2 != s.size() - comma - 1 || a < 1 || b < 1) {
            throw std::invalid_argument(s);
        }
        return {a, b};
    } catch (const std::logic_error &) {
        throw usage_error("expected a pair of positive integers 'k,l', got '" + s + "'");
    }
}

inline std::string series_line(const std::string &label, const truncated_series &f, int cutoff)
{
    return label + " = " + to_string(f) + " + O(" + std::to_string(cutoff + 1) + ")\n";
}

} // namespace detail

/// Runs one command line (without the program name). Returns the exit code:
/// 0 when every requested check passes, 1 when one fails, 2 on usage, parse
/// or internal errors.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, options opt = {})
{
    using detail::session;

    CLI::App app{"Formal groups over Hopf algebras and FAB arithmetic", "fghopf"};
    app.require_subcommand(1);
    // Subcommands created below inherit this: global options may come last.
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();

    std::string file, name, fgl_name, hopf_name, out_path, mode, from, to;
    std::optional<int> trunc;
    int max_degree = 0;
    std::vector<std::string> skip;
    std::vector<long long> numbers;

    auto with_file = [&](CLI::App *c) { c->add_option("FILE", file, "Document")->required(); };
    auto with_name = [&](CLI::App *c) { c->add_option("--name", name, "Declaration name")->required(); };
    auto with_trunc = [&](CLI::App *c) { c->add_option("--trunc", trunc, "Weight cutoff")->check(CLI::NonNegativeNumber); };

    auto *parse = app.add_subcommand("parse", "Parse a document and print its canonical form");
    with_file(parse);

    auto *check = app.add_subcommand("check", "Run verification checks");
    check->require_subcommand(1);
    auto *check_hopf = check->add_subcommand("hopf", "Hopf algebra axioms");
    auto *check_fgl = check->add_subcommand("fgl", "Ordinary formal group law axioms");
    auto *check_hfgl = check->add_subcommand("hopffgl", "Conditions 1-3 for a formal group over a Hopf algebra");
    for (auto *c : {check_hopf, check_fgl, check_hfgl}) {
        with_file(c);
        with_name(c);
        with_trunc(c);
    }
    check_hfgl->add_option("--skip", skip, "Condition to skip (1, 2 or 3)")
        ->check(CLI::IsMember({"1", "2", "3", "condition1", "condition2", "condition3"}));

    auto *inverse = app.add_subcommand("inverse", "Inverse series of an ordinary law");
    auto *theta = app.add_subcommand("theta", "Solve for Theta");
    auto *reduce = app.add_subcommand("reduce", "Reduce along the counit");
    auto *extend = app.add_subcommand("extend-hopf", "Hopf axioms on H[[x]]");
    auto *gseries = app.add_subcommand("gseries", "The series G(x,y)");
    auto *gprop = app.add_subcommand("gproperty", "Compatibility identity of G");
    for (auto *c : {inverse, theta, reduce, extend, gseries, gprop}) {
        with_file(c);
        with_name(c);
    }

    auto *trivial = app.add_subcommand("trivial-extend", "Lift an ordinary law to a Hopf algebra");
    with_file(trivial);
    trivial->add_option("--fgl", fgl_name, "Ordinary law")->required();
    trivial->add_option("--hopf", hopf_name, "Hopf algebra or ring")->required();
    trivial->add_option("--out", out_path, "Output document ('-' for standard output)")->required();

    auto *cons = app.add_subcommand("constraints", "Associativity or extension constraints");
    with_file(cons);
    with_name(cons);
    cons->add_option("--max-degree", max_degree, "Ansatz degree")->required()->check(CLI::PositiveNumber);

    auto *fab = app.add_subcommand("fab", "FAB arithmetic");
    fab->require_subcommand(1);
    auto *multiplier = fab->add_subcommand("multiplier", "gcd(m,n)/gcd(k,l)");
    multiplier->add_option("ENTRIES", numbers, "K L M N")->required()->expected(4);
    auto *chain = fab->add_subcommand("chain", "Validate a chain");
    with_file(chain);
    with_name(chain);
    chain->add_option("--mode", mode, "limit or stable")->required()->check(CLI::IsMember({"limit", "stable"}));
    chain->add_option("--from", from, "First pair 'k,l' (stable mode)");
    chain->add_option("--to", to, "Last pair 'm,n' (stable mode)");
    auto *limit = fab->add_subcommand("limit", "Direct limit of Z along multipliers");
    limit->add_option("MULTIPLIERS", numbers, "A1 A2 ...");

    std::vector<const char *> argv{"fghopf"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    session s(out, format == "machine", opt.color);
    try {
        if (*parse) {
            const auto d = detail::load(file);
            s.result(file, "parse", print_document(d), print_document(d));
        } else if (*check_hopf) {
            const auto d = detail::load(file);
            const auto &h = detail::lookup<hopf_decl>(d, name, "hopf");
            auto r = verify_hopf(h.algebra, trunc.value_or(detail::document_cutoff(d)));
            r.subject = name;
            s.report(r);
        } else if (*check_fgl) {
            const auto d = detail::load(file);
            const auto &F = detail::lookup<series_decl>(d, name, "series");
            s.report(verify_fgl(F.series, trunc.value_or(F.series.cutoff()), name));
        } else if (*check_hfgl) {
            const auto d = detail::load(file);
            const auto &G = detail::lookup_fgl(d, name).fgl;
            auto skipped = [&](char c) {
                return std::any_of(skip.begin(), skip.end(), [&](const std::string &k) { return k.back() == c; });
            };
            if (!skipped('1')) {
                s.report(verify_condition1(G, trunc));
            }
            if (!skipped('2')) {
                s.report(verify_condition2(G, trunc));
            }
            if (!skipped('3')) {
                s.report(solve_theta(G, trunc).report);
            }
        } else if (*inverse) {
            const auto d = detail::load(file);
            const auto &F = detail::lookup<series_decl>(d, name, "series");
            const int w = F.series.cutoff();
            verification_report r;
            r.subject = name;
            r.check = "inverse";
            r.cutoff = w;
            std::optional<truncated_series> th;
            {
                report_timer timer(r);
                try {
                    th = fgl_inverse(F.series, w);
                    const auto x = truncated_series::variable({"x"}, F.series.arity(), w, 0);
                    const auto back = substitute(F.series.renamed({"x", "y"}), {x, *th});
                    for (const auto &[a, c] : back.terms()) {
                        r.fail("multiply-back" + to_string(a), to_string(c, false));
                    }
                } catch (const error &e) {
                    r.error_message = e.what();
                }
            }
            if (th) {
                s.result(name, "inverse", to_string(*th), detail::series_line("theta(x)", *th, w));
            }
            s.report(r);
        } else if (*theta) {
            const auto d = detail::load(file);
            const auto &G = detail::lookup_fgl(d, name).fgl;
            const auto sol = solve_theta(G);
            if (sol.theta) {
                s.result(name, "theta", to_string(*sol.theta),
                         detail::series_line("Theta(x)", *sol.theta, G.cutoff()));
            }
            s.report(sol.report);
        } else if (*reduce) {
            const auto d = detail::load(file);
            const auto &g = detail::lookup_fgl(d, name);
            const series_decl red{name + "_red", detail::base_ring_name(d, g.over), epsilon_reduce(g.fgl)};
            const auto text = print_declaration(red);
            s.result(name, "reduce", text, text);
        } else if (*gseries) {
            const auto d = detail::load(file);
            const auto &g = detail::lookup_fgl(d, name);
            const series_decl gs{name + "_G", g.over, g_series(g.fgl)};
            const auto text = print_declaration(gs);
            s.result(name, "gseries", text, text);
        } else if (*gprop) {
            const auto d = detail::load(file);
            s.report(verify_g_property(detail::lookup_fgl(d, name).fgl));
        } else if (*extend) {
            const auto d = detail::load(file);
            s.report(extend_hopf(detail::lookup_fgl(d, name).fgl).report);
        } else if (*trivial) {
            auto d = detail::load(file);
            const auto &F = detail::lookup<series_decl>(d, fgl_name, "series");
            if (F.series.arity() != 0) {
                throw usage_error("'" + fgl_name + "' is not a law over a ring");
            }
            const auto H = d.hopf_named(hopf_name);
            if (!H) {
                throw usage_error("no hopf or ring named '" + hopf_name + "'");
            }
            const auto check_F = verify_fgl(F.series, F.series.cutoff(), fgl_name);
            if (!check_F.passed()) {
                s.report(check_F);
                return s.exit_code();
            }
            const auto new_name = fgl_name + "_" + hopf_name;
            if (d.find_any(new_name)) {
                throw usage_error("document already declares '" + new_name + "'");
            }
            hopffgl_decl decl{new_name, hopf_name, trivial_extension(F.series, *H, new_name)};
            const auto text = print_declaration(decl);
            d.add(std::move(decl));
            const auto doc = print_document(d);
            if (out_path == "-") {
                s.result(new_name, "trivial-extend", doc, doc);
            } else {
                std::ofstream o(out_path, std::ios::binary);
                if (!(o << doc)) {
                    throw usage_error("cannot write '" + out_path + "'");
                }
                s.result(new_name, "trivial-extend", text, text);
            }
        } else if (*cons) {
            const auto d = detail::load(file);
            if (const auto *r = d.find<ring_decl>(name)) {
                const auto F = builtin_fgl(builtin_fgl_kind::generic, max_degree, r->ring);
                auto arr = nlohmann::ordered_json::array();
                std::string text = name + " associativity constraints, generic commutative law, max degree " +
                                   std::to_string(max_degree) + ":\n";
                for (const auto &c : extract_associativity_constraints(F, max_degree)) {
                    arr.push_back({{"location", to_string(c.where)}, {"relation", to_string(c.relation, false)}});
                    text += "  " + to_string(c.where) + ": " + to_string(c.relation, false) + " = 0\n";
                }
                s.result(name, "constraints", arr, text);
            } else {
                const auto &h = detail::lookup<hopf_decl>(d, name, "ring or hopf");
                const auto sys = extract_extension_constraints(h.algebra, max_degree);
                const auto &U = *sys.ansatz.series().universe();
                nlohmann::ordered_json j;
                j["unknowns"] = sys.unknowns.size();
                j["equations"] = sys.equations.size();
                auto solved = nlohmann::ordered_json::array();
                std::string text = name + " extension constraints, max degree " + std::to_string(max_degree) + ": " +
                                   std::to_string(sys.unknowns.size()) + " unknowns, " +
                                   std::to_string(sys.equations.size()) + " equations\n";
                for (const auto &[id, v] : sys.solved) {
                    solved.push_back({{"unknown", U[id].name}, {"value", to_string(v, false)}});
                    text += "  solved " + U[id].name + " = " + to_string(v, false) + "\n";
                }
                auto remaining = nlohmann::ordered_json::array();
                for (const auto &e : sys.remaining) {
                    remaining.push_back({{"location", e.location}, {"relation", to_string(e.relation, false)}});
                    text += "  remaining " + e.location + ": " + to_string(e.relation, false) + " = 0\n";
                }
                j["solved"] = std::move(solved);
                j["remaining"] = std::move(remaining);
                s.result(name, "constraints", j, text);
            }
        } else if (*multiplier) {
            const auto m = transition_multiplier(numbers[0], numbers[1], numbers[2], numbers[3]);
            s.result("multiplier", "fab multiplier", m, std::to_string(m));
        } else if (*chain) {
            const auto d = detail::load(file);
            const auto &c = detail::lookup<chain_decl>(d, name, "chain").chain;
            if (mode == "limit") {
                auto r = validate_limit_sequence(c, name);
                if (r.passed()) {
                    r.notes.push_back("finite direct limit: " + to_string(finite_direct_limit(chain_multipliers(c))));
                }
                s.report(r);
            } else {
                if (c.pairs.empty()) {
                    throw usage_error("chain '" + name + "' is empty");
                }
                const auto first = from.empty() ? c.pairs.front() : detail::parse_pair(from);
                const auto last = to.empty() ? c.pairs.back() : detail::parse_pair(to);
                s.report(validate_stable_chain(c, first, last, name));
            }
        } else if (*limit) {
            const auto g = finite_direct_limit(std::vector<std::int64_t>(numbers.begin(), numbers.end()));
            s.result("limit", "fab limit", to_string(g), to_string(g));
        }
    } catch (const usage_error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return s.exit_code();
}

} // namespace fghopf::cli
