#include "parse.hpp"

#include "base.hpp"

#include <cctype>
#include <set>

namespace eqol {

namespace {

struct Token {
    enum Kind { IDENT, INT, SYM, END };
    Kind kind;
    std::string text;
    std::size_t pos;
};

const std::set<std::string> kReserved = {"false", "true", "O", "Id", "int", "T", "QF", "ox"};

std::vector<Token> lex(const std::string& s) {
    static const char* two_or_more[] = {"<=>", "<->", "->", "<=", "=>", "/\\", "\\/"};
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) { ++i; continue; }
        if (std::isalpha(static_cast<unsigned char>(s[i]))) {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::IDENT, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::INT, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        bool matched = false;
        for (const char* op : two_or_more) {
            std::size_t len = std::string(op).size();
            if (s.compare(i, len, op) == 0) {
                out.push_back({Token::SYM, op, i});
                i += len;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (std::string("~&|(){}[],;$.+*/=<!").find(s[i]) != std::string::npos) {
            out.push_back({Token::SYM, std::string(1, s[i]), i});
            ++i;
            continue;
        }
        throw parse_error(std::string("unexpected character '") + s[i] + "'", i);
    }
    out.push_back({Token::END, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    CF classical_all() {
        CF f = cform();
        expect_end();
        return f;
    }

    TermP term_all() {
        TermP t = term();
        expect_end();
        return t;
    }

    QF formula_all() {
        QF f = qform();
        expect_end();
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;

    const Token& peek() const { return toks_[at_]; }
    Token take() { return toks_[at_++]; }
    bool sym(const std::string& s) const { return peek().kind == Token::SYM && peek().text == s; }
    bool ident(const std::string& s) const { return peek().kind == Token::IDENT && peek().text == s; }
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, peek().pos); }

    void expect_sym(const std::string& s) {
        if (!sym(s)) fail("expected '" + s + "'");
        ++at_;
    }

    void expect_end() {
        if (peek().kind != Token::END) fail("trailing input after formula");
    }

    std::string expect_ident() {
        if (peek().kind != Token::IDENT) fail("expected an identifier");
        return take().text;
    }

    std::vector<std::string> qset() {
        expect_sym("{");
        std::vector<std::string> names;
        if (!sym("}")) {
            names.push_back(expect_ident());
            while (sym(",")) {
                ++at_;
                names.push_back(expect_ident());
            }
        }
        expect_sym("}");
        return names;
    }

    // --- classical level ---

    CF cform() { return c_iff(); }

    CF c_iff() {
        CF f = c_impl();
        while (sym("<->")) {
            ++at_;
            f = cf_iff(f, c_impl());
        }
        return f;
    }

    CF c_impl() {
        CF f = c_or();
        if (sym("->")) {
            ++at_;
            return cf_implies(f, c_impl());
        }
        return f;
    }

    CF c_or() {
        CF f = c_and();
        while (sym("|")) {
            ++at_;
            f = cf_or(f, c_and());
        }
        return f;
    }

    CF c_and() {
        CF f = c_unary();
        while (sym("&")) {
            ++at_;
            f = cf_and(f, c_unary());
        }
        return f;
    }

    CF c_unary() {
        if (sym("~")) {
            ++at_;
            return cf_not(c_unary());
        }
        return c_atom();
    }

    CF c_atom() {
        if (ident("false")) { ++at_; return cf_falsum(); }
        if (ident("true")) { ++at_; return cf_verum(); }
        if (sym("(")) {
            ++at_;
            CF f = cform();
            expect_sym(")");
            return f;
        }
        if (peek().kind == Token::IDENT) {
            if (kReserved.count(peek().text)) fail("reserved word used as an atom");
            return cf_atom(take().text);
        }
        fail("expected a classical formula");
    }

    // --- term level ---

    TermP term() { return t_add(); }

    TermP t_add() {
        TermP t = t_tensor();
        while (sym("+")) {
            ++at_;
            t = term_add(t, t_tensor());
        }
        return t;
    }

    TermP t_tensor() {
        TermP t = t_mul();
        while (ident("ox")) {
            ++at_;
            t = term_tensor(t, t_mul());
        }
        return t;
    }

    TermP t_mul() {
        TermP t = t_scale();
        while (sym("*")) {
            ++at_;
            t = term_compose(t, t_scale());
        }
        return t;
    }

    TermP t_scale() {
        if (peek().kind == Token::INT) {
            std::size_t where = peek().pos;
            long long num = std::stoll(take().text);
            long long den = 1;
            if (sym("/")) {
                ++at_;
                if (peek().kind != Token::INT) fail("expected a denominator");
                den = std::stoll(take().text);
                if (den == 0) throw parse_error("zero denominator", where);
            }
            Rational r(num, den);
            if (Rational(1) < r) throw parse_error("scale coefficient outside [0,1]", where);
            expect_sym(".");
            return term_scale(r, t_scale());
        }
        return t_primary();
    }

    TermP t_primary() {
        if (ident("O")) { ++at_; return term_null(); }
        if (ident("Id")) { ++at_; return term_ident(); }
        if (sym("$")) {
            ++at_;
            return term_var(expect_ident());
        }
        if (ident("int")) {
            ++at_;
            expect_sym("(");
            CF alpha = cform();
            expect_sym(")");
            return term_integral(alpha);
        }
        if (ident("T")) {
            std::size_t where = peek().pos;
            ++at_;
            expect_sym("[");
            std::vector<std::string> a = qset();
            expect_sym(";");
            std::vector<std::string> g = qset();
            expect_sym("]");
            try {
                return term_top(std::move(a), std::move(g));
            } catch (const model_error& e) {
                throw parse_error(e.what(), where);
            }
        }
        if (sym("(")) {
            ++at_;
            TermP t = term();
            expect_sym(")");
            return t;
        }
        fail("expected an operator term");
    }

    // --- quantum level ---

    QF qform() { return q_iff(); }

    QF q_iff() {
        QF f = q_impl();
        while (sym("<=>")) {
            ++at_;
            f = qf_iff(f, q_impl());
        }
        return f;
    }

    QF q_impl() {
        QF f = q_or();
        if (sym("=>")) {
            ++at_;
            return qf_implies(f, q_impl());
        }
        return f;
    }

    QF q_or() {
        QF f = q_and();
        while (sym("\\/")) {
            ++at_;
            f = qf_or(f, q_and());
        }
        return f;
    }

    QF q_and() {
        QF f = q_unary();
        while (sym("/\\")) {
            ++at_;
            f = qf_and(f, q_unary());
        }
        return f;
    }

    QF q_unary() {
        if (sym("!")) {
            ++at_;
            return qf_not(q_unary());
        }
        return q_atom();
    }

    bool starts_term() const {
        return ident("O") || ident("Id") || ident("int") || ident("T") || sym("$") ||
               peek().kind == Token::INT || sym("(");
    }

    QF q_atom() {
        if (ident("QF")) { ++at_; return qf_falsum(); }
        if (sym("[")) {
            ++at_;
            std::vector<std::string> g = qset();
            expect_sym("]");
            return qf_subsys(std::move(g));
        }
        if (starts_term()) {
            // "(" may open either a parenthesized formula or a term; try the
            // term reading first and fall back on failure.
            std::size_t mark = at_;
            bool ambiguous = sym("(");
            try {
                return q_relation();
            } catch (const parse_error&) {
                if (!ambiguous) throw;
                at_ = mark;
            }
            expect_sym("(");
            QF f = qform();
            expect_sym(")");
            return f;
        }
        fail("expected a quantum formula");
    }

    QF q_relation() {
        TermP t1 = term();
        if (sym("<=")) {
            ++at_;
            return qf_leq(t1, term());
        }
        if (sym("=")) {
            ++at_;
            return qf_term_eq(t1, term());
        }
        if (sym("<")) {
            ++at_;
            return qf_term_lt(t1, term());
        }
        return qf_term(t1);
    }
};

} // namespace

CF parse_classical(const std::string& text) { return Parser(text).classical_all(); }
TermP parse_term(const std::string& text) { return Parser(text).term_all(); }
QF parse_formula(const std::string& text) { return Parser(text).formula_all(); }

} // namespace eqol
