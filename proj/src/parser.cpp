#include "daestruct/parser.hpp"

#include "daestruct/errors.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace daestruct {

namespace {

enum class Tok { Ident, Int, Plus, Minus, Star, Caret, Slash, LParen, RParen, Comma, Equals, Primes, Newline, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '\n') {
                out.push_back({Tok::Newline, "\n", line_, col_});
                advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            // Unicode minus sign U+2212 (e2 88 92) treated as '-'.
            if (c == '\xe2' && pos_ + 2 < src_.size() && src_[pos_ + 1] == '\x88' &&
                src_[pos_ + 2] == '\x92') {
                out.push_back({Tok::Minus, "-", line_, col_});
                advance(); advance(); advance();
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                int l = line_, co = col_;
                std::string id;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    id.push_back(src_[pos_]);
                    advance();
                }
                out.push_back({Tok::Ident, id, l, co});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                int l = line_, co = col_;
                std::string num;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    num.push_back(src_[pos_]);
                    advance();
                }
                if (pos_ < src_.size() && src_[pos_] == '.')
                    throw ParseError("decimal literals are not supported; use p/q rationals", l, co);
                out.push_back({Tok::Int, num, l, co});
                continue;
            }
            if (c == '\'') {
                int l = line_, co = col_;
                std::string primes;
                while (pos_ < src_.size() && src_[pos_] == '\'') {
                    primes.push_back('\'');
                    advance();
                }
                out.push_back({Tok::Primes, primes, l, co});
                continue;
            }
            Tok k;
            switch (c) {
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '*': k = Tok::Star; break;
                case '^': k = Tok::Caret; break;
                case '/': k = Tok::Slash; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                case ',': k = Tok::Comma; break;
                case '=': k = Tok::Equals; break;
                case ':': {
                    // attach to the previous identifier as a section marker
                    out.push_back({Tok::Ident, ":", line_, col_});
                    advance();
                    continue;
                }
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
            }
            out.push_back({k, std::string(1, c), line_, col_});
            advance();
        }
        out.push_back({Tok::End, "", line_, col_});
        return out;
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
    Parser(std::vector<Token> toks, const DAESystem* context)
        : toks_(std::move(toks)) {
        if (context) {
            for (size_t i = 0; i < context->unknownNames.size(); ++i)
                symbols_[context->unknownNames[i]] = DerivVar::unknown(static_cast<int>(i), 0);
            for (size_t i = 0; i < context->paramNames.size(); ++i)
                symbols_[context->paramNames[i]] = DerivVar::param(static_cast<int>(i));
        }
    }

    DAESystem parse_file() {
        DAESystem sys;
        skip_newlines();
        bool sawUnknowns = false, sawEquations = false;
        while (peek().kind != Tok::End) {
            const Token& t = peek();
            if (t.kind != Tok::Ident) throw ParseError("expected a section header", t.line, t.col);
            std::string section = t.text;
            next();
            expect_colon(section);
            if (section == "params") {
                while (peek().kind == Tok::Ident && peek().text != ":" && !is_section_start()) {
                    declare(sys.paramNames, peek().text, true, sys);
                    next();
                }
            } else if (section == "unknowns") {
                sawUnknowns = true;
                while ((peek().kind == Tok::Ident && !is_section_start()) || peek().kind == Tok::Newline) {
                    if (peek().kind == Tok::Newline) { next(); continue; }
                    declare(sys.unknownNames, peek().text, false, sys);
                    next();
                }
                sys.n = static_cast<int>(sys.unknownNames.size());
            } else if (section == "equations") {
                sawEquations = true;
                skip_newlines();
                while (peek().kind != Tok::End && !is_section_start()) {
                    DiffPoly eq = parse_expr();
                    if (peek().kind == Tok::Equals) {
                        Token eqTok = next();
                        if (peek().kind != Tok::Int || peek().text != "0")
                            throw ParseError("right-hand side must be 0", eqTok.line, eqTok.col);
                        next();
                    }
                    sys.equations.push_back(std::move(eq));
                    if (peek().kind == Tok::Newline) skip_newlines();
                    else if (peek().kind != Tok::End && !is_section_start())
                        throw ParseError("expected end of equation", peek().line, peek().col);
                }
            } else {
                throw ParseError("unknown section '" + section + "'", t.line, t.col);
            }
            skip_newlines();
        }
        if (!sawUnknowns) throw ParseError("missing 'unknowns:' section", 1, 1);
        if (!sawEquations) throw ParseError("missing 'equations:' section", 1, 1);
        sys.validate();
        return sys;
    }

    DiffPoly parse_single_expr() {
        skip_newlines();
        DiffPoly p = parse_expr();
        skip_newlines();
        if (peek().kind != Tok::End)
            throw ParseError("trailing input after expression", peek().line, peek().col);
        return p;
    }

private:
    bool is_section_start() const {
        const Token& t = toks_[pos_];
        if (t.kind != Tok::Ident) return false;
        if (t.text != "params" && t.text != "unknowns" && t.text != "equations") return false;
        return pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == Tok::Ident &&
               toks_[pos_ + 1].text == ":";
    }

    void expect_colon(const std::string& section) {
        if (peek().kind == Tok::Ident && peek().text == ":") {
            next();
            return;
        }
        throw ParseError("expected ':' after '" + section + "'", peek().line, peek().col);
    }

    void declare(std::vector<std::string>& names, const std::string& name, bool isParam,
                 DAESystem& sys) {
        if (symbols_.count(name))
            throw ParseError("symbol '" + name + "' declared twice", peek().line, peek().col);
        int idx = static_cast<int>(names.size());
        names.push_back(name);
        symbols_[name] = isParam ? DerivVar::param(idx) : DerivVar::unknown(idx, 0);
        (void)sys;
    }

    DiffPoly parse_expr() {
        bool negate = false;
        if (peek().kind == Tok::Minus) {
            negate = true;
            next();
        } else if (peek().kind == Tok::Plus) {
            next();
        }
        DiffPoly acc = parse_term();
        if (negate) acc = -acc;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = next().kind == Tok::Minus;
            DiffPoly t = parse_term();
            if (minus) acc -= t;
            else acc += t;
        }
        return acc;
    }

    DiffPoly parse_term() {
        DiffPoly acc = parse_factor();
        while (peek().kind == Tok::Star) {
            next();
            acc = acc * parse_factor();
        }
        return acc;
    }

    DiffPoly parse_factor() {
        DiffPoly base = parse_primary();
        while (peek().kind == Tok::Caret) {
            Token caret = next();
            if (peek().kind == Tok::Minus || peek().kind == Tok::Slash)
                throw NonIntegerExponent(peek().line, peek().col);
            if (peek().kind != Tok::Int) throw NonIntegerExponent(caret.line, caret.col);
            Token expTok = next();
            if (expTok.text.size() > 4 || std::stoul(expTok.text) > 1000)
                throw ParseError("exponent larger than 1000", expTok.line, expTok.col);
            unsigned long exp = std::stoul(expTok.text);
            DiffPoly powed(Rational(1));
            for (unsigned long i = 0; i < exp; ++i) powed = powed * base;
            base = powed;
        }
        return base;
    }

    DiffPoly parse_primary() {
        const Token t = peek();
        if (t.kind == Tok::Int) {
            next();
            Integer num(t.text);
            if (peek().kind == Tok::Slash) {
                Token slash = next();
                if (peek().kind != Tok::Int)
                    throw ParseError("expected integer denominator", slash.line, slash.col);
                Integer den(next().text);
                if (den == 0) throw ParseError("zero denominator", slash.line, slash.col);
                return DiffPoly(make_rational(num, den));
            }
            return DiffPoly(Rational(num));
        }
        if (t.kind == Tok::LParen) {
            next();
            DiffPoly inner = parse_expr();
            if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().line, peek().col);
            next();
            return inner;
        }
        if (t.kind == Tok::Ident) {
            next();
            if (t.text == "D" && peek().kind == Tok::LParen) {
                next();
                if (peek().kind != Tok::Ident)
                    throw ParseError("expected variable in D(...)", peek().line, peek().col);
                Token var = next();
                if (peek().kind != Tok::Comma) throw ParseError("expected ','", peek().line, peek().col);
                next();
                if (peek().kind != Tok::Int)
                    throw ParseError("expected derivative order", peek().line, peek().col);
                int order = std::stoi(next().text);
                if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().line, peek().col);
                next();
                return make_var(var, order);
            }
            int order = 0;
            if (peek().kind == Tok::Primes) {
                order = static_cast<int>(peek().text.size());
                next();
            }
            return make_var(t, order);
        }
        throw ParseError("expected a number, variable, or '('", t.line, t.col);
    }

    DiffPoly make_var(const Token& nameTok, int order) {
        auto it = symbols_.find(nameTok.text);
        if (it == symbols_.end()) throw UndeclaredSymbol(nameTok.text, nameTok.line, nameTok.col);
        DerivVar v = it->second;
        if (v.isParam) {
            if (order > 0)
                throw ParseError("parameter '" + nameTok.text + "' cannot be differentiated",
                                 nameTok.line, nameTok.col);
            return DiffPoly::variable(v);
        }
        return DiffPoly::variable(DerivVar::unknown(v.index, order));
    }

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    void skip_newlines() {
        while (peek().kind == Tok::Newline) next();
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    std::map<std::string, DerivVar> symbols_;
};

std::string monomial_to_string(const DAESystem& s, const Monomial& m) {
    std::string out;
    for (const auto& [v, e] : m.factors()) {
        if (!out.empty()) out += "*";
        if (!v.isParam && v.order > 3)
            out += "D(" + s.unknown_name(v.index) + "," + std::to_string(v.order) + ")";
        else
            out += s.var_name(v);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

} // namespace

DAESystem parse_system(const std::string& text) {
    Lexer lex(text);
    Parser p(lex.run(), nullptr);
    return p.parse_file();
}

DiffPoly parse_poly(const DAESystem& context, const std::string& expr) {
    Lexer lex(expr);
    Parser p(lex.run(), &context);
    return p.parse_single_expr();
}

std::string poly_to_string(const DAESystem& s, const DiffPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        Rational coef = c;
        if (out.empty()) {
            if (coef < 0) {
                out += "-";
                coef = -coef;
            }
        } else {
            out += coef < 0 ? " - " : " + ";
            if (coef < 0) coef = -coef;
        }
        std::string mono = monomial_to_string(s, m);
        if (mono.empty()) {
            out += rational_to_string(coef);
        } else {
            if (coef != 1) out += rational_to_string(coef) + "*";
            out += mono;
        }
    }
    return out;
}

std::string serialize_system(const DAESystem& s) {
    std::ostringstream out;
    if (!s.paramNames.empty()) {
        out << "params:";
        for (const auto& p : s.paramNames) out << " " << p;
        out << "\n";
    }
    out << "unknowns:";
    for (const auto& u : s.unknownNames) out << " " << u;
    out << "\nequations:\n";
    for (const auto& eq : s.equations) out << "  " << poly_to_string(s, eq) << "\n";
    return out.str();
}

} // namespace daestruct
