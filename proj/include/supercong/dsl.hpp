#pragma once

/**
 * @file dsl.hpp
 * @brief Parser and serializer for the congruence description language.
 *
 * Grammar (.cdb files, UTF-8, '#' line comments):
 *
 *   block     := "congruence" ID "{" field* "}"
 *   field     := "status" "=" ("proved" | "conjectural" | "partial(" INT ")")
 *              | "for" "=" "p" ">" INT
 *              | "lhs" "=" "sum" "n" "in" "0" ".." bound "of" term
 *              | "rhs" "=" [INT "*"] ["L(" SINT ")" "*"] "p" ["^" INT]
 *              | "mod" "=" "p" "^" INT
 *              | "note" "=" STRING
 *   bound     := "p-1" | "(p-1)/2"
 *   term      := factor ("*" factor | "/" factor)*
 *   factor    := "poch(" RAT "," lin ")" ["^" INT] | "fact(" lin ")" ["^" INT]
 *              | "binom(" lin "," lin ")" ["^" INT] | "pow(" RAT "," lin ")"
 *              | "sign(" lin ")" | poly-in-n | "sum(k=0.." inner ")" "{" term "}"
 *   inner     := "n" | "floor(n/" INT ")"
 *   lin       := integer linear combination of n, k, and constants
 *
 * serialize() emits the canonical form this parser accepts, so
 * parse(serialize(s)) == s on the grammar-carried fields.
 */

#include "supercong/congruence.hpp"
#include "supercong/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace supercong {

namespace dsl {

enum class TokKind { ident, integer, str, punct, end };

struct Token {
    TokKind kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> toks;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            int line = line_, col = col_;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string s;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                        src_[pos_] == '_')) {
                    s += src_[pos_];
                    advance();
                }
                toks.push_back({TokKind::ident, s, line, col});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string s;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    s += src_[pos_];
                    advance();
                }
                toks.push_back({TokKind::integer, s, line, col});
                continue;
            }
            if (c == '"') {
                advance();
                std::string s;
                while (pos_ < src_.size() && src_[pos_] != '"') {
                    if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) {
                        advance();
                        s += src_[pos_];
                    } else {
                        s += src_[pos_];
                    }
                    advance();
                }
                if (pos_ >= src_.size())
                    throw ParseError(line, col, "unterminated string literal");
                advance(); // closing quote
                toks.push_back({TokKind::str, s, line, col});
                continue;
            }
            if (c == '.' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '.') {
                advance();
                advance();
                toks.push_back({TokKind::punct, "..", line, col});
                continue;
            }
            if (std::string("{}()=*/^,><+-").find(c) != std::string::npos) {
                toks.push_back({TokKind::punct, std::string(1, c), line, col});
                advance();
                continue;
            }
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        toks.push_back({TokKind::end, "", line_, col_});
        return toks;
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(Lexer(src).run()) {}

    std::vector<CongruenceSpec> database() {
        std::vector<CongruenceSpec> specs;
        while (!at_end())
            specs.push_back(block());
        return specs;
    }

    CongruenceSpec single() {
        CongruenceSpec s = block();
        if (!at_end())
            fail("expected end of input after congruence block");
        return s;
    }

private:
    const Token& peek(size_t ahead = 0) const {
        size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    bool at_end() const { return peek().kind == TokKind::end; }
    const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.kind == TokKind::end ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, msg + " (got " + got + ")");
    }

    bool is_punct(const std::string& p, size_t ahead = 0) const {
        return peek(ahead).kind == TokKind::punct && peek(ahead).text == p;
    }
    bool is_ident(const std::string& s, size_t ahead = 0) const {
        return peek(ahead).kind == TokKind::ident && peek(ahead).text == s;
    }

    void expect_punct(const std::string& p) {
        if (!is_punct(p))
            fail("expected '" + p + "'");
        take();
    }
    void expect_ident(const std::string& s) {
        if (!is_ident(s))
            fail("expected '" + s + "'");
        take();
    }

    long integer_lit() {
        if (peek().kind != TokKind::integer)
            fail("expected an integer");
        return std::stol(take().text);
    }

    long signed_integer() {
        bool neg = false;
        if (is_punct("-")) {
            take();
            neg = true;
        } else if (is_punct("+")) {
            take();
        }
        long v = integer_lit();
        return neg ? -v : v;
    }

    Rational rational_lit() {
        long num = signed_integer();
        if (is_punct("/")) {
            take();
            long den = integer_lit();
            return Rational(num, den);
        }
        return Rational(num);
    }

    // ---- grammar nonterminals -------------------------------------------

    CongruenceSpec block() {
        expect_ident("congruence");
        if (peek().kind != TokKind::ident)
            fail("expected a congruence identifier");
        CongruenceSpec spec;
        spec.id = take().text;
        expect_punct("{");
        bool saw_status = false, saw_for = false, saw_lhs = false, saw_rhs = false,
             saw_mod = false;
        while (!is_punct("}")) {
            if (peek().kind != TokKind::ident)
                fail("expected a field name or '}'");
            std::string field = take().text;
            expect_punct("=");
            if (field == "status") {
                if (saw_status)
                    fail("duplicate 'status' field");
                saw_status = true;
                parse_status(spec);
            } else if (field == "for") {
                if (saw_for)
                    fail("duplicate 'for' field");
                saw_for = true;
                expect_ident("p");
                expect_punct(">");
                spec.p_min = integer_lit();
            } else if (field == "lhs") {
                if (saw_lhs)
                    fail("duplicate 'lhs' field");
                saw_lhs = true;
                spec.lhs = parse_lhs();
            } else if (field == "rhs") {
                if (saw_rhs)
                    fail("duplicate 'rhs' field");
                saw_rhs = true;
                spec.rhs = parse_rhs();
            } else if (field == "mod") {
                if (saw_mod)
                    fail("duplicate 'mod' field");
                saw_mod = true;
                expect_ident("p");
                expect_punct("^");
                spec.modulus_exponent = static_cast<unsigned>(integer_lit());
            } else if (field == "note") {
                if (peek().kind != TokKind::str)
                    fail("expected a string literal");
                spec.note = take().text;
            } else {
                throw ParseError(peek().line, peek().col, "unknown field '" + field + "'");
            }
        }
        take(); // '}'
        if (!saw_status || !saw_for || !saw_lhs || !saw_rhs || !saw_mod)
            fail("congruence block is missing a required field "
                 "(status, for, lhs, rhs, mod)");
        if (spec.status == CongruenceStatus::partial &&
            spec.partial_order >= spec.modulus_exponent)
            fail("partial order must be smaller than the modulus exponent");
        return spec;
    }

    void parse_status(CongruenceSpec& spec) {
        if (peek().kind != TokKind::ident)
            fail("expected 'proved', 'conjectural' or 'partial(N)'");
        std::string s = take().text;
        if (s == "proved") {
            spec.status = CongruenceStatus::proved;
        } else if (s == "conjectural") {
            spec.status = CongruenceStatus::conjectural;
        } else if (s == "partial") {
            expect_punct("(");
            spec.partial_order = static_cast<unsigned>(integer_lit());
            expect_punct(")");
            spec.status = CongruenceStatus::partial;
        } else {
            fail("unknown status '" + s + "'");
        }
    }

    SumExpr parse_lhs() {
        SumExpr sum;
        expect_ident("sum");
        expect_ident("n");
        expect_ident("in");
        if (peek().kind != TokKind::integer || peek().text != "0")
            fail("outer sums start at 0");
        take();
        expect_punct("..");
        sum.bound = parse_bound();
        expect_ident("of");
        sum.body = parse_term(false);
        return sum;
    }

    SumExpr::Bound parse_bound() {
        if (is_ident("p")) {
            take();
            expect_punct("-");
            if (peek().kind != TokKind::integer || peek().text != "1")
                fail("malformed bound; expected p-1");
            take();
            return SumExpr::Bound::p_minus_one;
        }
        if (is_punct("(")) {
            take();
            expect_ident("p");
            expect_punct("-");
            if (peek().kind != TokKind::integer || peek().text != "1")
                fail("malformed bound; expected (p-1)/2");
            take();
            expect_punct(")");
            expect_punct("/");
            if (peek().kind != TokKind::integer || peek().text != "2")
                fail("malformed bound; expected (p-1)/2");
            take();
            return SumExpr::Bound::half_p_minus_one;
        }
        fail("malformed bound; expected p-1 or (p-1)/2");
    }

    RhsExpr parse_rhs() {
        RhsExpr rhs;
        if (peek().kind == TokKind::integer) {
            rhs.coefficient = Integer(take().text);
            expect_punct("*");
        }
        if (is_ident("L")) {
            take();
            expect_punct("(");
            rhs.legendre_disc = Integer(signed_integer());
            expect_punct(")");
            expect_punct("*");
        }
        expect_ident("p");
        if (is_punct("^")) {
            take();
            rhs.p_power = static_cast<unsigned>(integer_lit());
        } else {
            rhs.p_power = 1;
        }
        return rhs;
    }

    TermExpr parse_term(bool inside_inner) {
        TermExpr term;
        term.factors.push_back(parse_factor(inside_inner, term));
        while (is_punct("*") || is_punct("/")) {
            bool div = take().text == "/";
            Factor f = parse_factor(inside_inner, term);
            f.denominator = div;
            term.factors.push_back(std::move(f));
        }
        return term;
    }

    Factor parse_factor(bool inside_inner, const TermExpr& so_far) {
        if (is_punct("("))
            return Factor::poly(parse_poly());
        if (peek().kind != TokKind::ident)
            fail("expected a factor");
        std::string name = take().text;
        if (name == "poch") {
            expect_punct("(");
            Rational a = rational_lit();
            expect_punct(",");
            LinForm l = parse_lin();
            expect_punct(")");
            return Factor::poch(std::move(a), std::move(l), parse_exponent());
        }
        if (name == "fact") {
            expect_punct("(");
            LinForm l = parse_lin();
            expect_punct(")");
            return Factor::fact(std::move(l), parse_exponent());
        }
        if (name == "binom") {
            expect_punct("(");
            LinForm top = parse_lin();
            expect_punct(",");
            LinForm bottom = parse_lin();
            expect_punct(")");
            return Factor::binom(std::move(top), std::move(bottom), parse_exponent());
        }
        if (name == "pow") {
            expect_punct("(");
            Rational base = rational_lit();
            if (base.is_zero())
                fail("pow base must be nonzero");
            expect_punct(",");
            LinForm l = parse_lin();
            expect_punct(")");
            return Factor::pow(std::move(base), std::move(l));
        }
        if (name == "sign") {
            expect_punct("(");
            LinForm l = parse_lin();
            expect_punct(")");
            return Factor::sign(std::move(l));
        }
        if (name == "sum") {
            if (inside_inner)
                fail("inner sums cannot be nested");
            if (so_far.has_inner_sum())
                fail("a term may contain at most one inner sum");
            expect_punct("(");
            expect_ident("k");
            expect_punct("=");
            if (peek().kind != TokKind::integer || peek().text != "0")
                fail("inner sums start at 0");
            take();
            expect_punct("..");
            Factor::InnerBound bound;
            int divisor = 1;
            if (is_ident("n")) {
                take();
                bound = Factor::InnerBound::full_n;
            } else if (is_ident("floor")) {
                take();
                expect_punct("(");
                expect_ident("n");
                expect_punct("/");
                divisor = static_cast<int>(integer_lit());
                if (divisor < 1)
                    fail("floor divisor must be positive");
                expect_punct(")");
                bound = Factor::InnerBound::floor_n_over_d;
            } else {
                fail("expected inner bound n or floor(n/D)");
            }
            expect_punct(")");
            expect_punct("{");
            TermExpr body = parse_term(true);
            expect_punct("}");
            return Factor::inner_sum(bound, divisor, std::move(body));
        }
        throw ParseError(peek().line, peek().col, "unknown function '" + name + "'");
    }

    int parse_exponent() {
        if (!is_punct("^"))
            return 1;
        take();
        long e = integer_lit();
        if (e < 1)
            fail("exponent must be >= 1");
        return static_cast<int>(e);
    }

    /// Parenthesized integer polynomial in n, e.g. (120*n^2+34*n+3).
    BiPoly parse_poly() {
        expect_punct("(");
        BiPoly poly;
        bool first = true;
        while (true) {
            long sign = 1;
            if (is_punct("-")) {
                take();
                sign = -1;
            } else if (is_punct("+")) {
                take();
            } else if (!first) {
                break;
            }
            first = false;
            long coeff = 1;
            bool saw_coeff = false;
            if (peek().kind == TokKind::integer) {
                coeff = integer_lit();
                saw_coeff = true;
                if (is_punct("*"))
                    take();
                else {
                    poly.add_term(0, 0, Rational(sign * coeff));
                    continue;
                }
            }
            if (!is_ident("n")) {
                if (saw_coeff)
                    fail("expected 'n' after coefficient");
                fail("expected a monomial");
            }
            take();
            int deg = 1;
            if (is_punct("^")) {
                take();
                deg = static_cast<int>(integer_lit());
            }
            poly.add_term(deg, 0, Rational(sign * coeff));
        }
        expect_punct(")");
        if (poly.is_zero())
            fail("empty polynomial");
        return poly;
    }

    LinForm parse_lin() {
        LinForm l;
        bool first = true;
        while (true) {
            long sign = 1;
            if (is_punct("-")) {
                take();
                sign = -1;
            } else if (is_punct("+")) {
                take();
            } else if (!first) {
                break;
            }
            first = false;
            long coeff = 1;
            if (peek().kind == TokKind::integer) {
                coeff = integer_lit();
                if (is_punct("*"))
                    take();
                else {
                    l.constant += Rational(sign * coeff);
                    continue;
                }
            }
            if (is_ident("n")) {
                take();
                l.n_coef += sign * coeff;
            } else if (is_ident("k")) {
                take();
                l.k_coef += sign * coeff;
            } else {
                fail("expected n, k, or an integer in linear form");
            }
        }
        if (first)
            fail("expected a linear form");
        return l;
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

// ---- serialization -------------------------------------------------------

inline std::string serialize_lin(const LinForm& l) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](long coeff, const char* var) {
        if (coeff == 0)
            return;
        if (!first)
            os << (coeff < 0 ? "-" : "+");
        else if (coeff < 0)
            os << "-";
        long mag = coeff < 0 ? -coeff : coeff;
        if (mag != 1)
            os << mag << "*";
        os << var;
        first = false;
    };
    emit(l.n_coef, "n");
    emit(l.k_coef, "k");
    if (!l.constant.is_zero()) {
        if (!first)
            os << (l.constant.sign() < 0 ? "-" : "+");
        else if (l.constant.sign() < 0)
            os << "-";
        Rational mag = l.constant.sign() < 0 ? -l.constant : l.constant;
        os << mag.to_string();
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

inline std::string serialize_term(const TermExpr& t);

inline std::string serialize_factor(const Factor& f) {
    std::ostringstream os;
    switch (f.kind) {
    case Factor::Kind::poch:
        os << "poch(" << f.param.to_string() << "," << serialize_lin(f.arg) << ")";
        break;
    case Factor::Kind::fact:
        os << "fact(" << serialize_lin(f.arg) << ")";
        break;
    case Factor::Kind::binom:
        os << "binom(" << serialize_lin(f.arg) << "," << serialize_lin(f.arg2) << ")";
        break;
    case Factor::Kind::pow:
        os << "pow(" << f.param.to_string() << "," << serialize_lin(f.arg) << ")";
        break;
    case Factor::Kind::sign:
        os << "sign(" << serialize_lin(f.arg) << ")";
        break;
    case Factor::Kind::poly:
        os << "(" << f.poly_payload.to_string() << ")";
        break;
    case Factor::Kind::inner_sum:
        os << "sum(k=0..";
        if (f.inner_bound == Factor::InnerBound::full_n)
            os << "n";
        else
            os << "floor(n/" << f.inner_divisor << ")";
        os << ") { " << serialize_term(*f.body) << " }";
        break;
    }
    if (f.exponent != 1)
        os << "^" << f.exponent;
    return os.str();
}

inline std::string serialize_term(const TermExpr& t) {
    std::ostringstream os;
    bool first = true;
    for (const auto& f : t.factors) {
        if (!first)
            os << (f.denominator ? " / " : " * ");
        first = false;
        os << serialize_factor(f);
    }
    return os.str();
}

inline std::string serialize(const CongruenceSpec& s) {
    std::ostringstream os;
    os << "congruence " << s.id << " {\n";
    os << "  status = ";
    switch (s.status) {
    case CongruenceStatus::proved:
        os << "proved";
        break;
    case CongruenceStatus::conjectural:
        os << "conjectural";
        break;
    case CongruenceStatus::partial:
        os << "partial(" << s.partial_order << ")";
        break;
    }
    os << "\n";
    os << "  for = p > " << s.p_min << "\n";
    os << "  lhs = sum n in 0..";
    os << (s.lhs.bound == SumExpr::Bound::half_p_minus_one ? "(p-1)/2" : "p-1");
    os << " of " << serialize_term(s.lhs.body) << "\n";
    os << "  rhs = ";
    if (s.rhs.coefficient != 1)
        os << s.rhs.coefficient.get_str() << " * ";
    if (s.rhs.legendre_disc)
        os << "L(" << s.rhs.legendre_disc->get_str() << ") * ";
    os << "p";
    if (s.rhs.p_power != 1)
        os << "^" << s.rhs.p_power;
    os << "\n";
    os << "  mod = p^" << s.modulus_exponent << "\n";
    if (!s.note.empty()) {
        std::string escaped;
        for (char c : s.note) {
            if (c == '"' || c == '\\')
                escaped += '\\';
            escaped += c;
        }
        os << "  note = \"" << escaped << "\"\n";
    }
    os << "}\n";
    return os.str();
}

inline std::string serialize(const std::vector<CongruenceSpec>& specs) {
    std::ostringstream os;
    bool first = true;
    for (const auto& s : specs) {
        if (!first)
            os << "\n";
        first = false;
        os << serialize(s);
    }
    return os.str();
}

} // namespace dsl

/// Parse a sequence of congruence blocks.
inline std::vector<CongruenceSpec> parse_database_text(const std::string& text) {
    return dsl::Parser(text).database();
}

/// Parse exactly one congruence block.
inline CongruenceSpec parse_spec(const std::string& text) {
    return dsl::Parser(text).single();
}

inline std::vector<CongruenceSpec> parse_database_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open database file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_database_text(buf.str());
}

} // namespace supercong
