#include "pbpois/expression.hpp"

#include <cctype>
#include <sstream>

namespace pbpois {

namespace {

enum class Tok { integer, ident, plus, minus, star, power, caret, slash, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::integer: return "integer";
        case Tok::ident: return "identifier";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::power: return "'**'";
        case Tok::caret: return "'^'";
        case Tok::slash: return "'/'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::end: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string text, int c) { out.push_back({k, std::move(text), line, c}); };
    while (i < s.size()) {
        const char ch = s[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        const int start = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            push(Tok::integer, std::string(s.substr(i, j - i)), start);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            push(Tok::ident, std::string(s.substr(i, j - i)), start);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        Tok k;
        int len = 1;
        switch (ch) {
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*':
                if (i + 1 < s.size() && s[i + 1] == '*') {
                    k = Tok::power;
                    len = 2;
                } else {
                    k = Tok::star;
                }
                break;
            case '^': k = Tok::caret; break;
            case '/': k = Tok::slash; break;
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            default:
                throw ParseError(line, col, std::string("unexpected character '") + ch + "'",
                                 {"number", "variable", "basis vector", "operator", "'('", "')'"});
        }
        push(k, std::string(s.substr(i, static_cast<std::size_t>(len))), start);
        col += len;
        i += static_cast<std::size_t>(len);
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, ExpressionMode mode, int nvars) : toks_(tokenize(text)), mode_(mode), nvars_(nvars) {}

    MultiVector run() {
        MultiVector r = sum();
        if (peek().kind != Tok::end) {
            fail(peek(), std::string("unexpected ") + describe(peek().kind), {"'+'", "'-'", "'^'", "'*'", "end of input"});
        }
        return r;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg, std::vector<std::string> expected = {}) const {
        throw ParseError(t.line, t.column, msg, std::move(expected));
    }

    MultiVector constant(const Scalar& c) const { return MultiVector::from_polynomial(Polynomial::constant(nvars_, c)); }

    MultiVector sum() {
        MultiVector acc = wedge_level();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const Token op = take();
            MultiVector rhs = wedge_level();
            const int lg = acc.grade();
            const int rg = rhs.grade();
            if (!acc.is_zero() && !rhs.is_zero() && lg != rg) {
                fail(op, "inconsistent grades in a sum: grade " + std::to_string(lg) + " and grade " + std::to_string(rg));
            }
            if (op.kind == Tok::plus) {
                acc += rhs;
            } else {
                acc -= rhs;
            }
        }
        return acc;
    }

    MultiVector wedge_level() {
        MultiVector acc = product();
        while (peek().kind == Tok::caret) {
            take();
            acc = wedge(acc, product());
        }
        return acc;
    }

    MultiVector product() {
        MultiVector acc = unary();
        while (peek().kind == Tok::star) {
            const Token op = take();
            MultiVector rhs = unary();
            if (acc.grade() == 0) {
                acc = acc.as_polynomial() * rhs;
            } else if (rhs.grade() == 0) {
                acc = rhs.as_polynomial() * acc;
            } else {
                fail(op, "'*' needs a scalar or polynomial factor; use '^' between multivectors");
            }
        }
        return acc;
    }

    MultiVector unary() {
        if (peek().kind == Tok::minus) {
            take();
            return -unary();
        }
        if (peek().kind == Tok::plus) {
            take();
            return unary();
        }
        return power();
    }

    MultiVector power() {
        const Token& base_tok = peek();
        MultiVector base = atom();
        if (peek().kind != Tok::power) return base;
        take();
        const Token& e = peek();
        if (e.kind != Tok::integer) fail(e, "exponent must be a nonnegative integer literal", {"integer"});
        take();
        if (base.grade() != 0) fail(base_tok, "'**' applies to scalars and polynomials only");
        if (e.text.size() > 3 || std::stoi(e.text) > 200) fail(e, "exponent " + e.text + " is too large");
        return MultiVector::from_polynomial(base.as_polynomial().pow(std::stoi(e.text)));
    }

    int index_of(const Token& t, char prefix_kind) const {
        const std::string& s = t.text;
        const int offset = mode_ == ExpressionMode::homogeneous ? 0 : 1;
        if (s.size() != 2 || !std::isdigit(static_cast<unsigned char>(s[1]))) return -1;
        const int k = s[1] - '0' - offset;
        if (k < 0) return -1;
        if (k >= nvars_) {
            fail(t, std::string(prefix_kind == 'e' ? "basis vector " : "variable ") + s + " is outside the " +
                        std::to_string(nvars_) + " variables");
        }
        return k;
    }

    MultiVector atom() {
        const Token t = take();
        switch (t.kind) {
            case Tok::integer: {
                std::string text = t.text;
                if (peek().kind == Tok::slash) {
                    take();
                    const Token& d = peek();
                    if (d.kind != Tok::integer) fail(d, "fraction needs an integer denominator", {"integer"});
                    take();
                    if (d.text.find_first_not_of('0') == std::string::npos) fail(d, "zero denominator");
                    text += "/" + d.text;
                }
                return constant(Scalar::parse(text));
            }
            case Tok::lparen: {
                MultiVector inner = sum();
                if (peek().kind != Tok::rparen) fail(peek(), std::string("unexpected ") + describe(peek().kind), {"')'"});
                take();
                return inner;
            }
            case Tok::ident: {
                if (t.text == "i") return constant(Scalar::imaginary_unit());
                const char p = t.text[0];
                const bool variable = p == 'x' || (p == 'y' && mode_ == ExpressionMode::affine);
                if (variable || p == 'e') {
                    const int k = index_of(t, p);
                    if (k >= 0) {
                        if (p == 'e') return MultiVector::basis_vector(nvars_, k);
                        return MultiVector::from_polynomial(Polynomial::variable(nvars_, k));
                    }
                }
                fail(t, "unknown identifier '" + t.text + "'",
                     {mode_ == ExpressionMode::homogeneous ? "x0..x9" : "x1..x9", mode_ == ExpressionMode::homogeneous ? "e0..e9" : "e1..e9", "i"});
            }
            default:
                fail(t, std::string("unexpected ") + describe(t.kind), {"number", "'i'", "variable", "basis vector", "'('"});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ExpressionMode mode_;
    int nvars_;
};

std::string join_expected(const std::vector<std::string>& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? ", " : "") + e[i];
    return s;
}

std::string format_message(int line, int column, const std::string& message, const std::vector<std::string>& expected) {
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << message;
    if (!expected.empty()) os << " (expected " << join_expected(expected) << ")";
    return os.str();
}

bool negative_sign(const Scalar& c) {
    if (c.re() != 0) return sgn(c.re()) < 0;
    return sgn(c.im()) < 0;
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message, std::vector<std::string> expected)
    : Error(format_message(line, column, message, expected)), line_(line), column_(column), expected_(std::move(expected)) {}

ExpressionMode parse_mode(std::string_view text) {
    if (text == "homogeneous") return ExpressionMode::homogeneous;
    if (text == "affine") return ExpressionMode::affine;
    throw StructuralError("unknown mode '" + std::string(text) + "' (homogeneous or affine)");
}

const char* to_string(ExpressionMode mode) { return mode == ExpressionMode::homogeneous ? "homogeneous" : "affine"; }

MultiVector parse_expression(std::string_view text, ExpressionMode mode, int nvars, std::optional<int> expected_grade) {
    if (nvars < 1 || nvars > (mode == ExpressionMode::homogeneous ? 10 : 9)) {
        throw StructuralError("variable count " + std::to_string(nvars) + " not expressible in " + to_string(mode) + " mode");
    }
    MultiVector r = Parser(text, mode, nvars).run();
    if (r.is_zero() && expected_grade) return MultiVector(nvars, *expected_grade);
    return r;
}

std::string format_scalar(const Scalar& c) {
    if (c.is_real()) return c.re().get_str();
    auto imag = [](const mpq_class& q) { return q == 1 ? std::string("i") : q.get_str() + "*i"; };
    if (c.re() == 0) return c.im() == -1 ? std::string("-i") : imag(c.im());
    std::string s = "(" + c.re().get_str();
    s += sgn(c.im()) > 0 ? "+" + imag(c.im()) : "-" + imag(mpq_class(-c.im()));
    return s + ")";
}

std::string format_expression(const MultiVector& a, ExpressionMode mode) {
    if (a.is_zero()) return "0";
    const int offset = mode == ExpressionMode::homogeneous ? 0 : 1;
    std::string out;
    bool first = true;
    for (const auto& [key, c] : a.terms()) {
        std::string body;
        for (int k = 0; k < a.nvars(); ++k) {
            const int e = key.mono.exponent(k);
            if (e == 0) continue;
            if (!body.empty()) body += "*";
            body += "x" + std::to_string(k + offset);
            if (e > 1) body += "**" + std::to_string(e);
        }
        std::string dirs;
        for (int k : direction_indices(key.dirs)) dirs += (dirs.empty() ? "e" : "^e") + std::to_string(k + offset);
        if (!dirs.empty()) body += (body.empty() ? "" : "*") + dirs;

        const bool neg = negative_sign(c);
        const Scalar mag = neg ? -c : c;
        std::string term;
        if (mag.is_one()) {
            term = body.empty() ? "1" : body;
        } else {
            term = format_scalar(mag);
            if (!body.empty()) term += "*" + body;
        }
        if (first) {
            out = (neg ? "-" : "") + term;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
    }
    return out;
}

}  // namespace pbpois
