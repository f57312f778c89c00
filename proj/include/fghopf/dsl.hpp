#pragma once

#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <fghopf/error.hpp>
#include <fghopf/fab.hpp>
#include <fghopf/hopf.hpp>
#include <fghopf/hopf_fgl.hpp>
#include <fghopf/series.hpp>

namespace fghopf
{

struct source_pos {
    int line = 1;
    int column = 1;

    friend bool operator==(const source_pos &, const source_pos &) = default;
};

/// Rejected input. The position points at the first offending token; the
/// expected set lists what would have been accepted there (may be empty for
/// semantic errors).
class parse_error : public error
{
public:
    parse_error(source_pos at, std::string message, std::vector<std::string> expected = {})
        : error(format(at, message, expected)), at_(at), message_(std::move(message)), expected_(std::move(expected))
    {
    }

    [[nodiscard]] source_pos position() const noexcept { return at_; }
    [[nodiscard]] const std::string &message() const noexcept { return message_; }
    [[nodiscard]] const std::vector<std::string> &expected() const noexcept { return expected_; }

private:
    static std::string format(source_pos at, const std::string &message, const std::vector<std::string> &expected)
    {
        std::string s = std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + message;
        if (!expected.empty()) {
            s += "; expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                s += (i ? ", " : "") + expected[i];
            }
        }
        return s;
    }

    source_pos at_;
    std::string message_;
    std::vector<std::string> expected_;
};

struct ring_decl {
    std::string name;
    universe_ptr ring;

    friend bool operator==(const ring_decl &a, const ring_decl &b)
    {
        return a.name == b.name && (a.ring == b.ring || (a.ring && b.ring && *a.ring == *b.ring));
    }
};

struct hopf_decl {
    std::string name;
    std::string over;
    hopf_algebra algebra;

    friend bool operator==(const hopf_decl &, const hopf_decl &) = default;
};

/// Over a ring the coefficients have arity 0; over a Hopf algebra, arity 1.
struct series_decl {
    std::string name;
    std::string over;
    truncated_series series;

    friend bool operator==(const series_decl &a, const series_decl &b)
    {
        return a.name == b.name && a.over == b.over && a.series.identical(b.series);
    }
};

/// Over a ring R the Hopf algebra is R with its trivial structure.
struct hopffgl_decl {
    std::string name;
    std::string over;
    hopf_fgl fgl;

    friend bool operator==(const hopffgl_decl &a, const hopffgl_decl &b)
    {
        return a.name == b.name && a.over == b.over && a.fgl.hopf() == b.fgl.hopf() &&
               a.fgl.series().identical(b.fgl.series());
    }
};

struct chain_decl {
    std::string name;
    pair_chain chain;

    friend bool operator==(const chain_decl &, const chain_decl &) = default;
};

using declaration = std::variant<ring_decl, hopf_decl, series_decl, hopffgl_decl, chain_decl>;

inline const std::string &decl_name(const declaration &d)
{
    return std::visit([](const auto &x) -> const std::string & { return x.name; }, d);
}

inline const char *decl_keyword(const declaration &d)
{
    static constexpr const char *words[] = {"ring", "hopf", "series", "hopffgl", "chain"};
    return words[d.index()];
}

class document
{
public:
    [[nodiscard]] const std::vector<declaration> &declarations() const noexcept { return decls_; }

    /// Appends a declaration; the name must be fresh.
    void add(declaration d)
    {
        if (find_any(decl_name(d))) {
            throw precondition_error("duplicate declaration '" + decl_name(d) + "'");
        }
        decls_.push_back(std::move(d));
    }

    [[nodiscard]] const declaration *find_any(const std::string &name) const
    {
        for (const auto &d : decls_) {
            if (decl_name(d) == name) {
                return &d;
            }
        }
        return nullptr;
    }

    template <class T>
    [[nodiscard]] const T *find(const std::string &name) const
    {
        const auto *d = find_any(name);
        return d ? std::get_if<T>(d) : nullptr;
    }

    /// The Hopf algebra a ring or hopf name denotes.
    [[nodiscard]] std::optional<hopf_algebra> hopf_named(const std::string &name) const
    {
        if (const auto *h = find<hopf_decl>(name)) {
            return h->algebra;
        }
        if (const auto *r = find<ring_decl>(name)) {
            return trivial_hopf(r->ring, r->name);
        }
        return std::nullopt;
    }

    friend bool operator==(const document &, const document &) = default;

private:
    std::vector<declaration> decls_;
};

namespace dsl_detail
{

struct token {
    enum class kind { ident, integer, punct, end };
    kind k = kind::end;
    std::string text;
    source_pos at;
};

inline std::string describe(const token &t)
{
    switch (t.k) {
    case token::kind::end:
        return "end of input";
    case token::kind::integer:
        return "integer " + t.text;
    case token::kind::ident:
        return "'" + t.text + "'";
    case token::kind::punct:
        return "'" + t.text + "'";
    }
    return "?";
}

inline std::vector<token> lex(std::string_view s)
{
    std::vector<token> out;
    source_pos p;
    std::size_t i = 0;
    auto advance = [&] {
        const unsigned char c = static_cast<unsigned char>(s[i++]);
        if (c == '\n') {
            ++p.line;
            p.column = 1;
        } else if ((c & 0xC0) != 0x80) {
            ++p.column;
        }
    };
    auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
        } else if (c == '#') {
            while (i < s.size() && s[i] != '\n') {
                advance();
            }
        } else if (ident_start(c)) {
            token t{token::kind::ident, {}, p};
            while (i < s.size() && ident_char(s[i])) {
                t.text += s[i];
                advance();
            }
            out.push_back(std::move(t));
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            token t{token::kind::integer, {}, p};
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                t.text += s[i];
                advance();
            }
            if (i < s.size() && ident_char(s[i])) {
                throw parse_error(p, "malformed number");
            }
            out.push_back(std::move(t));
        } else if (std::string_view("{}[](),;:=+-*^/<>").find(c) != std::string_view::npos) {
            out.push_back({token::kind::punct, std::string(1, c), p});
            advance();
        } else {
            const unsigned char u = static_cast<unsigned char>(c);
            throw parse_error(p, u < 0x80 && std::isprint(u) ? std::string("unexpected character '") + c + "'"
                                                             : std::string("unexpected non-ASCII character"));
        }
    }
    out.push_back({token::kind::end, {}, p});
    return out;
}

/// Expression tree kept until every generator it may mention is declared.
struct expr {
    enum class op { number, name, neg, add, sub, mul, pow };
    op o = op::number;
    coefficient value;
    std::string name;
    std::optional<std::uint32_t> tag;
    source_pos tag_at;
    std::uint32_t exponent = 0;
    std::vector<expr> kids;
    source_pos at;
};

/// Which generators an expression may use: Hopf generators are untagged (or
/// tagged 1) at arity 1, tagged 1..arity at arity >= 2, absent at arity 0.
struct eval_context {
    universe_ptr uni;
    int arity = 0;
};

inline poly evaluate(const expr &e, const eval_context &ctx)
{
    switch (e.o) {
    case expr::op::number:
        return poly(e.value);
    case expr::op::name: {
        const auto idx = ctx.uni ? ctx.uni->find(e.name) : std::nullopt;
        if (!idx) {
            throw parse_error(e.at, "undeclared generator '" + e.name + "'");
        }
        const auto &g = (*ctx.uni)[*idx];
        if (g.kind == generator_kind::scalar) {
            if (e.tag) {
                throw parse_error(e.tag_at, "scalar '" + e.name + "' cannot carry a factor tag");
            }
            return poly::var(ctx.uni, {*idx, 0});
        }
        if (ctx.arity == 0) {
            throw parse_error(e.at, "Hopf generator '" + e.name + "' is not allowed in a base-ring expression");
        }
        if (!e.tag && ctx.arity > 1) {
            throw parse_error(e.at, "Hopf generator '" + e.name + "' needs a factor tag in a " +
                                        std::to_string(ctx.arity) + "-factor context");
        }
        const std::uint32_t t = e.tag.value_or(1);
        if (t < 1 || t > static_cast<std::uint32_t>(ctx.arity)) {
            throw parse_error(e.tag_at, "factor tag <" + std::to_string(t) + "> in a " + std::to_string(ctx.arity) +
                                            "-factor context");
        }
        return poly::var(ctx.uni, {*idx, t});
    }
    case expr::op::neg:
        return -evaluate(e.kids[0], ctx);
    case expr::op::add:
        return evaluate(e.kids[0], ctx) + evaluate(e.kids[1], ctx);
    case expr::op::sub:
        return evaluate(e.kids[0], ctx) - evaluate(e.kids[1], ctx);
    case expr::op::mul:
        return evaluate(e.kids[0], ctx) * evaluate(e.kids[1], ctx);
    case expr::op::pow:
        return pow(evaluate(e.kids[0], ctx), e.exponent);
    }
    return poly{};
}

class parser
{
public:
    explicit parser(std::string_view text) : toks_(lex(text)) {}

    document run()
    {
        document d;
        while (cur().k != token::kind::end) {
            if (accept_word("ring")) {
                d.add(ring(d));
            } else if (accept_word("hopf")) {
                d.add(hopf(d));
            } else if (accept_word("series")) {
                d.add(series(d));
            } else if (accept_word("hopffgl")) {
                d.add(hopffgl(d));
            } else if (accept_word("chain")) {
                d.add(chain(d));
            } else {
                fail();
            }
        }
        return d;
    }

private:
    // ---- token plumbing

    [[nodiscard]] const token &cur() const { return toks_[pos_]; }
    token take()
    {
        expected_.clear();
        return toks_[pos_++];
    }

    bool accept_punct(const char *p)
    {
        if (cur().k == token::kind::punct && cur().text == p) {
            take();
            return true;
        }
        expected_.insert(std::string("'") + p + "'");
        return false;
    }

    bool accept_word(const char *w)
    {
        if (cur().k == token::kind::ident && cur().text == w) {
            take();
            return true;
        }
        expected_.insert(std::string("'") + w + "'");
        return false;
    }

    [[noreturn]] void fail(std::string message = {})
    {
        if (message.empty()) {
            message = "unexpected " + describe(cur());
        }
        throw parse_error(cur().at, std::move(message), {expected_.begin(), expected_.end()});
    }

    token punct(const char *p)
    {
        const token t = cur();
        if (!accept_punct(p)) {
            fail();
        }
        return t;
    }

    void word(const char *w)
    {
        if (!accept_word(w)) {
            fail();
        }
    }

    token name()
    {
        if (cur().k != token::kind::ident) {
            expected_.insert("NAME");
            fail();
        }
        return take();
    }

    token integer_token()
    {
        if (cur().k != token::kind::integer) {
            expected_.insert("INT");
            fail();
        }
        return take();
    }

    long long small_int(long long lo, long long hi, const char *what, bool allow_sign)
    {
        const source_pos at = cur().at;
        bool neg = false;
        if (allow_sign && accept_punct("-")) {
            neg = true;
        }
        const token t = integer_token();
        long long v = 0;
        const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size()) {
            throw parse_error(neg ? at : t.at, std::string(what) + " out of range");
        }
        v = neg ? -v : v;
        if (v < lo || v > hi) {
            throw parse_error(neg ? at : t.at, std::string(what) + " must lie in [" + std::to_string(lo) + ", " +
                                                   std::to_string(hi) + "]");
        }
        return v;
    }

    void fresh(const document &d, const token &n)
    {
        if (const auto *prev = d.find_any(n.text)) {
            throw parse_error(n.at, "duplicate name '" + n.text + "' (already declared as " +
                                        decl_keyword(*prev) + ")");
        }
    }

    // ---- expressions

    expr expression()
    {
        expr e = term();
        for (;;) {
            const source_pos at = cur().at;
            if (accept_punct("+")) {
                e = binary(expr::op::add, std::move(e), term(), at);
            } else if (accept_punct("-")) {
                e = binary(expr::op::sub, std::move(e), term(), at);
            } else {
                return e;
            }
        }
    }

    static expr binary(expr::op o, expr a, expr b, source_pos at)
    {
        expr e;
        e.o = o;
        e.at = at;
        e.kids.push_back(std::move(a));
        e.kids.push_back(std::move(b));
        return e;
    }

    expr term()
    {
        expr e = power();
        for (;;) {
            const source_pos at = cur().at;
            if (!accept_punct("*")) {
                return e;
            }
            e = binary(expr::op::mul, std::move(e), power(), at);
        }
    }

    expr power()
    {
        expr base = unary();
        const source_pos at = cur().at;
        if (!accept_punct("^")) {
            return base;
        }
        expr e;
        e.o = expr::op::pow;
        e.at = at;
        e.exponent = static_cast<std::uint32_t>(small_int(0, 1 << 20, "exponent", false));
        e.kids.push_back(std::move(base));
        return e;
    }

    expr unary()
    {
        const source_pos at = cur().at;
        if (accept_punct("-")) {
            expr e;
            e.o = expr::op::neg;
            e.at = at;
            e.kids.push_back(unary());
            return e;
        }
        return primary();
    }

    expr primary()
    {
        expr e;
        e.at = cur().at;
        if (cur().k == token::kind::integer) {
            e.o = expr::op::number;
            e.value = mpz_class(take().text);
            if (accept_punct("/")) {
                const token den = integer_token();
                const mpz_class q(den.text);
                if (q == 0) {
                    throw parse_error(den.at, "zero denominator");
                }
                e.value /= q;
                e.value.canonicalize();
            }
            return e;
        }
        if (cur().k == token::kind::ident) {
            e.o = expr::op::name;
            e.name = take().text;
            if (accept_punct("<")) {
                e.tag_at = cur().at;
                e.tag = static_cast<std::uint32_t>(small_int(0, 1 << 20, "factor tag", false));
                punct(">");
            }
            return e;
        }
        if (accept_punct("(")) {
            e = expression();
            punct(")");
            return e;
        }
        expected_.insert("INT");
        expected_.insert("NAME");
        fail();
    }

    // ---- declarations

    ring_decl ring(const document &d)
    {
        const token n = name();
        fresh(d, n);
        punct("{");
        auto u = std::make_shared<universe>();
        while (!accept_punct("}")) {
            word("gen");
            const token g = name();
            punct(":");
            word("deg");
            punct("=");
            const int deg = static_cast<int>(small_int(-1000000, 1000000, "degree", true));
            int weight = 1;
            if (accept_punct(",")) {
                word("weight");
                punct("=");
                weight = static_cast<int>(small_int(1, 1000000, "weight", false));
            }
            punct(";");
            if (u->find(g.text)) {
                throw parse_error(g.at, "duplicate generator '" + g.text + "'");
            }
            u->add({g.text, deg, weight, generator_kind::scalar, false});
        }
        return {n.text, u};
    }

    const ring_decl &ring_ref(const document &d, const token &t)
    {
        if (const auto *r = d.find<ring_decl>(t.text)) {
            return *r;
        }
        if (d.find_any(t.text)) {
            throw parse_error(t.at, "'" + t.text + "' is not a ring");
        }
        throw parse_error(t.at, "undeclared ring '" + t.text + "'");
    }

    hopf_decl hopf(const document &d)
    {
        const token n = name();
        fresh(d, n);
        word("over");
        const token over = name();
        const auto &R = ring_ref(d, over);
        punct("{");
        struct pending {
            token name;
            int degree;
            int weight;
            expr delta, counit, antipode;
        };
        std::vector<pending> gens;
        while (!accept_punct("}")) {
            word("gen");
            pending p{name(), 0, 1, {}, {}, {}};
            punct(":");
            word("deg");
            punct("=");
            p.degree = static_cast<int>(small_int(-1000000, 1000000, "degree", true));
            if (accept_punct(",")) {
                word("weight");
                punct("=");
                p.weight = static_cast<int>(small_int(1, 1000000, "weight", false));
            }
            punct("{");
            word("delta");
            punct("=");
            p.delta = expression();
            punct(";");
            word("counit");
            punct("=");
            p.counit = expression();
            punct(";");
            word("antipode");
            punct("=");
            p.antipode = expression();
            punct(";");
            punct("}");
            gens.push_back(std::move(p));
        }
        // Structure maps may mention generators declared later in the block.
        auto u = extend_universe(R.ring);
        std::vector<std::uint32_t> idx;
        for (const auto &p : gens) {
            if (u->find(p.name.text)) {
                throw parse_error(p.name.at, "duplicate generator '" + p.name.text + "'");
            }
            idx.push_back(u->add({p.name.text, p.degree, p.weight, generator_kind::hopf, false}));
        }
        const universe_ptr U = u;
        std::vector<hopf_generator> hg;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            hopf_generator g;
            g.index = idx[k];
            g.delta = evaluate(gens[k].delta, {U, 2});
            g.counit = evaluate(gens[k].counit, {U, 0});
            g.antipode = evaluate(gens[k].antipode, {U, 1});
            hg.push_back(std::move(g));
        }
        try {
            return {n.text, over.text, hopf_algebra(n.text, R.ring, U, std::move(hg))};
        } catch (const parse_error &) {
            throw;
        } catch (const error &e) {
            throw parse_error(n.at, e.what());
        }
    }

    struct series_head {
        token name;
        token over;
        std::vector<std::string> vars;
        int trunc = 0;
    };

    series_head head(const document &d)
    {
        series_head h{name(), {}, {}, 0};
        fresh(d, h.name);
        word("over");
        h.over = name();
        word("vars");
        const token x = name();
        punct(",");
        const token y = name();
        if (x.text == y.text) {
            throw parse_error(y.at, "series variables must differ");
        }
        h.vars = {x.text, y.text};
        word("trunc");
        h.trunc = static_cast<int>(small_int(0, 10000, "trunc", false));
        return h;
    }

    void coefficients(truncated_series &F, const eval_context &ctx)
    {
        punct("{");
        std::set<multi_index> seen;
        while (!accept_punct("}")) {
            const token open = punct("[");
            const int i = static_cast<int>(small_int(0, 10000, "exponent", false));
            punct(",");
            const int j = static_cast<int>(small_int(0, 10000, "exponent", false));
            punct("]");
            punct("=");
            const expr e = expression();
            punct(";");
            const multi_index a{i, j};
            if (!seen.insert(a).second) {
                throw parse_error(open.at, "duplicate coefficient " + to_string(a));
            }
            F.add_to(a, evaluate(e, ctx));
        }
    }

    series_decl series(const document &d)
    {
        auto h = head(d);
        eval_context ctx;
        if (const auto *r = d.find<ring_decl>(h.over.text)) {
            ctx = {r->ring, 0};
        } else if (const auto *H = d.find<hopf_decl>(h.over.text)) {
            ctx = {H->algebra.universe(), 1};
        } else if (d.find_any(h.over.text)) {
            throw parse_error(h.over.at, "'" + h.over.text + "' is neither a ring nor a Hopf algebra");
        } else {
            throw parse_error(h.over.at, "undeclared name '" + h.over.text + "'");
        }
        truncated_series F(h.vars, ctx.arity, h.trunc);
        coefficients(F, ctx);
        return {h.name.text, h.over.text, std::move(F)};
    }

    hopffgl_decl hopffgl(const document &d)
    {
        auto h = head(d);
        if (d.find_any(h.over.text) && !d.find<ring_decl>(h.over.text) && !d.find<hopf_decl>(h.over.text)) {
            throw parse_error(h.over.at, "'" + h.over.text + "' is neither a ring nor a Hopf algebra");
        }
        const auto H = d.hopf_named(h.over.text);
        if (!H) {
            throw parse_error(h.over.at, "undeclared name '" + h.over.text + "'");
        }
        truncated_series F(h.vars, 2, h.trunc);
        coefficients(F, {H->universe(), 2});
        try {
            return {h.name.text, h.over.text, hopf_fgl(h.name.text, *H, std::move(F))};
        } catch (const error &e) {
            throw parse_error(h.name.at, e.what());
        }
    }

    chain_decl chain(const document &d)
    {
        const token n = name();
        fresh(d, n);
        punct("{");
        word("pairs");
        punct("=");
        pair_chain c;
        do {
            punct("(");
            const auto k = small_int(1, std::numeric_limits<std::int32_t>::max(), "chain entry", false);
            punct(",");
            const auto l = small_int(1, std::numeric_limits<std::int32_t>::max(), "chain entry", false);
            punct(")");
            c.pairs.emplace_back(k, l);
        } while (accept_punct(","));
        punct(";");
        if (accept_word("dim")) {
            punct("=");
            c.dim = small_int(0, std::numeric_limits<std::int32_t>::max(), "dim", false);
            punct(";");
        }
        punct("}");
        return {n.text, std::move(c)};
    }

    std::vector<token> toks_;
    std::size_t pos_ = 0;
    std::set<std::string> expected_;
};

} // namespace dsl_detail

/// Parses a whole document; throws parse_error on the first problem.
inline document parse_document(std::string_view text) { return dsl_detail::parser(text).run(); }

namespace dsl_detail
{

inline void print_coefficients(std::string &s, const truncated_series &F)
{
    const bool tags = F.arity() > 1;
    for (const auto &[a, c] : F.terms()) {
        s += "  " + to_string(a) + " = " + to_string(c, tags) + ";\n";
    }
}

inline std::string print_gen(const generator_decl &g)
{
    std::string s = "gen " + g.name + " : deg=" + std::to_string(g.degree);
    if (g.weight != 1) {
        s += ", weight=" + std::to_string(g.weight);
    }
    return s;
}

inline std::string print(const ring_decl &r)
{
    std::string s = "ring " + r.name + " {\n";
    if (r.ring) {
        for (const auto &g : r.ring->generators()) {
            s += "  " + print_gen(g) + ";\n";
        }
    }
    return s + "}\n";
}

inline std::string print(const hopf_decl &h)
{
    const auto &H = h.algebra;
    std::string s = "hopf " + h.name + " over " + h.over + " {\n";
    for (const auto &g : H.generators()) {
        s += "  " + print_gen((*H.universe())[g.index]) + " {\n";
        s += "    delta = " + to_string(g.delta, true) + ";\n";
        s += "    counit = " + to_string(g.counit, false) + ";\n";
        s += "    antipode = " + to_string(g.antipode, false) + ";\n";
        s += "  }\n";
    }
    return s + "}\n";
}

inline std::string head(const char *kw, const std::string &name, const std::string &over,
                        const truncated_series &F)
{
    return std::string(kw) + " " + name + " over " + over + " vars " + F.vars()[0] + "," + F.vars()[1] +
           " trunc " + std::to_string(F.cutoff()) + " {\n";
}

inline std::string print(const series_decl &d)
{
    std::string s = head("series", d.name, d.over, d.series);
    print_coefficients(s, d.series);
    return s + "}\n";
}

inline std::string print(const hopffgl_decl &d)
{
    std::string s = head("hopffgl", d.name, d.over, d.fgl.series());
    print_coefficients(s, d.fgl.series());
    return s + "}\n";
}

inline std::string print(const chain_decl &d)
{
    std::string s = "chain " + d.name + " {\n  pairs = ";
    for (std::size_t i = 0; i < d.chain.pairs.size(); ++i) {
        s += (i ? ", " : "") + to_string(d.chain.pairs[i]);
    }
    s += ";\n";
    if (d.chain.dim) {
        s += "  dim = " + std::to_string(*d.chain.dim) + ";\n";
    }
    return s + "}\n";
}

} // namespace dsl_detail

inline std::string print_declaration(const declaration &d)
{
    return std::visit([](const auto &x) { return dsl_detail::print(x); }, d);
}

/// Canonical text: 2-space indentation, a blank line between declarations,
/// LF line endings. parse_document(print_document(d)) == d.
inline std::string print_document(const document &d)
{
    std::string s;
    for (const auto &decl : d.declarations()) {
        if (!s.empty()) {
            s += "\n";
        }
        s += print_declaration(decl);
    }
    return s;
}

} // namespace fghopf
