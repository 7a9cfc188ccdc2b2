#include "exact/cli/parser.hpp"

#include <cctype>
#include <vector>

namespace exact::cli {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : RejectedInput(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column)
{
}

namespace {

enum class Tok { integer, ident, plus, minus, star, slash, caret, lparen, rparen, comma, equals, prime, end };

struct Token {
    Tok type;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token& t)
{
    switch (t.type) {
    case Tok::end:
        return "end of input";
    case Tok::integer:
    case Tok::ident:
        return "'" + t.text + "'";
    default:
        return "'" + t.text + "'";
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view in) : in_(in) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            std::size_t line = line_;
            std::size_t column = column_;
            if (pos_ >= in_.size()) {
                out.push_back({Tok::end, "", line, column});
                return out;
            }
            unsigned char c = static_cast<unsigned char>(in_[pos_]);
            if (std::isdigit(c)) {
                std::string digits;
                while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_]))) {
                    digits += in_[pos_];
                    advance(1);
                }
                out.push_back({Tok::integer, digits, line, column});
            } else if (std::isalpha(c) || c == '_') {
                std::string word;
                while (pos_ < in_.size() &&
                       (std::isalnum(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '_')) {
                    word += in_[pos_];
                    advance(1);
                }
                out.push_back({Tok::ident, word, line, column});
            } else if (match("\xCE\xB6")) { // ζ
                out.push_back({Tok::ident, "z", line, column});
            } else if (match("\xC2\xB7")) { // ·
                out.push_back({Tok::star, "*", line, column});
            } else if (match("\xE2\x88\x92")) { // −
                out.push_back({Tok::minus, "-", line, column});
            } else if (match("\xE2\x80\xB2")) { // ′
                out.push_back({Tok::prime, "'", line, column});
            } else {
                Tok type;
                switch (c) {
                case '+': type = Tok::plus; break;
                case '-': type = Tok::minus; break;
                case '*': type = Tok::star; break;
                case '/': type = Tok::slash; break;
                case '^': type = Tok::caret; break;
                case '(': type = Tok::lparen; break;
                case ')': type = Tok::rparen; break;
                case ',': type = Tok::comma; break;
                case '=': type = Tok::equals; break;
                case '\'': type = Tok::prime; break;
                default:
                    throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "'", line, column);
                }
                out.push_back({type, std::string(1, static_cast<char>(c)), line, column});
                advance(1);
            }
        }
    }

private:
    void skip_space()
    {
        while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) {
            advance(1);
        }
    }

    bool match(std::string_view s)
    {
        if (in_.substr(pos_, s.size()) == s) {
            advance(s.size());
            return true;
        }
        return false;
    }

    // Columns count code points, not bytes.
    void advance(std::size_t bytes)
    {
        for (std::size_t i = 0; i < bytes && pos_ < in_.size(); ++i, ++pos_) {
            unsigned char c = static_cast<unsigned char>(in_[pos_]);
            if (c == '\n') {
                ++line_;
                column_ = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++column_;
            }
        }
    }

    std::string_view in_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

constexpr int kSum = 10;
constexpr int kProduct = 20;
constexpr int kPrefix = 30;
constexpr int kPower = 40;

constexpr long kMaxExponent = 100000;

class Parser {
public:
    explicit Parser(std::string_view input) : tokens_(Lexer(input).run()) {}

    Expr expression(int rbp = 0)
    {
        Token t = next();
        Expr left = nud(t);
        while (rbp < left_power(peek())) {
            Token op = next();
            left = led(op, std::move(left));
        }
        return left;
    }

    const Token& peek() const { return tokens_[pos_]; }

    Token next()
    {
        Token t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) {
            ++pos_;
        }
        return t;
    }

    void expect(Tok type, const char* what)
    {
        if (peek().type != type) {
            throw ParseError(std::string("expected ") + what + ", found " + describe(peek()), peek().line, peek().column);
        }
        next();
    }

    void expect_end()
    {
        const Token& t = peek();
        if (t.type == Tok::end) {
            return;
        }
        if (t.type == Tok::integer || t.type == Tok::ident || t.type == Tok::lparen) {
            throw ParseError("missing operator before " + describe(t) + " (write products with '*')", t.line, t.column);
        }
        throw ParseError("unexpected " + describe(t), t.line, t.column);
    }

private:
    static int left_power(const Token& t)
    {
        switch (t.type) {
        case Tok::plus:
        case Tok::minus:
            return kSum;
        case Tok::star:
        case Tok::slash:
            return kProduct;
        case Tok::caret:
            return kPower;
        default:
            return 0;
        }
    }

    Expr nud(const Token& t)
    {
        switch (t.type) {
        case Tok::integer:
            return Expr::leaf(Expr::Kind::integer, t.text, t.line, t.column);
        case Tok::ident:
            return identifier(t);
        case Tok::lparen: {
            Expr inner = expression(0);
            expect(Tok::rparen, "')'");
            return inner;
        }
        case Tok::minus:
            return Expr::node(Expr::Kind::negate, {expression(kPrefix)}, t.line, t.column);
        default:
            throw ParseError("expected an expression, found " + describe(t), t.line, t.column);
        }
    }

    Expr led(const Token& op, Expr left)
    {
        switch (op.type) {
        case Tok::plus:
            return Expr::node(Expr::Kind::add, {std::move(left), expression(kSum)}, op.line, op.column);
        case Tok::minus:
            return Expr::node(Expr::Kind::sub, {std::move(left), expression(kSum)}, op.line, op.column);
        case Tok::star:
            return Expr::node(Expr::Kind::mul, {std::move(left), expression(kProduct)}, op.line, op.column);
        case Tok::slash:
            return Expr::node(Expr::Kind::div, {std::move(left), expression(kProduct)}, op.line, op.column);
        case Tok::caret: {
            const Token& at = peek();
            Expr exponent = expression(kPower - 1);
            check_exponent(left, exponent, at);
            return Expr::node(Expr::Kind::pow, {std::move(left), std::move(exponent)}, op.line, op.column);
        }
        default:
            throw ParseError("unexpected " + describe(op), op.line, op.column);
        }
    }

    static void check_exponent(const Expr& base, const Expr& exponent, const Token& at)
    {
        std::optional<Rational> value;
        try {
            value = constant_value(exponent);
        } catch (const Error& e) {
            throw ParseError(std::string("ill-typed exponent: ") + e.what(), at.line, at.column);
        }
        if (!value) {
            throw ParseError("ill-typed exponent: exponents must be constant", at.line, at.column);
        }
        if (!value->is_integer() && !(base.kind == Expr::Kind::variable && base.text == "t")) {
            throw ParseError("ill-typed exponent: rational exponent " + value->to_string() + " is only allowed on t",
                             at.line, at.column);
        }
        if (value->abs() > Rational(kMaxExponent)) {
            throw ParseError("exponent " + value->to_string() + " is too large", at.line, at.column);
        }
    }

    Expr identifier(const Token& t)
    {
        const std::string& w = t.text;
        if (w == "z" || w == "x" || w == "y" || w == "t") {
            return Expr::leaf(Expr::Kind::variable, w, t.line, t.column);
        }
        if (w == "geom" || w == "exp" || w == "factorial") {
            return Expr::leaf(Expr::Kind::generator, w, t.line, t.column);
        }
        if (w == "F") {
            std::string name = "F";
            if (peek().type == Tok::prime) {
                next();
                name = "F'";
            }
            // Optional argument: F(z), F'(z).
            if (peek().type == Tok::lparen && pos_ + 2 < tokens_.size() && tokens_[pos_ + 1].type == Tok::ident &&
                tokens_[pos_ + 1].text == "z" && tokens_[pos_ + 2].type == Tok::rparen) {
                next();
                next();
                next();
            }
            return Expr::leaf(Expr::Kind::unknown, name, t.line, t.column);
        }
        if (w == "derive") {
            expect(Tok::lparen, "'(' after derive");
            std::vector<Expr> args{expression(0)};
            if (peek().type == Tok::comma) {
                next();
                const Token& var = peek();
                Expr v = expression(0);
                if (v.kind != Expr::Kind::variable || v.text == "t") {
                    throw ParseError("derive: second argument must be one of z, x, y", var.line, var.column);
                }
                args.push_back(std::move(v));
            }
            expect(Tok::rparen, "')' closing derive");
            Expr call = Expr::node(Expr::Kind::call, std::move(args), t.line, t.column);
            call.text = "derive";
            return call;
        }
        throw ParseError("unknown identifier '" + w + "'", t.line, t.column);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view input)
{
    Parser p(input);
    Expr e = p.expression(0);
    p.expect_end();
    return e;
}

Equation parse_equation(std::string_view input)
{
    Parser p(input);
    Expr lhs = p.expression(0);
    p.expect(Tok::equals, "'='");
    Expr rhs = p.expression(0);
    p.expect_end();
    return {std::move(lhs), std::move(rhs)};
}

std::optional<Rational> constant_value(const Expr& e)
{
    auto arg = [&](std::size_t i) { return constant_value(e.args[i]); };
    switch (e.kind) {
    case Expr::Kind::integer:
        return Rational::parse(e.text);
    case Expr::Kind::negate: {
        auto v = arg(0);
        return v ? std::optional<Rational>(-*v) : std::nullopt;
    }
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div: {
        auto a = arg(0);
        auto b = arg(1);
        if (!a || !b) {
            return std::nullopt;
        }
        switch (e.kind) {
        case Expr::Kind::add:
            return *a + *b;
        case Expr::Kind::sub:
            return *a - *b;
        case Expr::Kind::mul:
            return *a * *b;
        default:
            return *a / *b;
        }
    }
    case Expr::Kind::pow: {
        auto a = arg(0);
        auto b = arg(1);
        if (!a || !b || !b->is_integer()) {
            return std::nullopt;
        }
        return a->pow(b->numerator().get_si());
    }
    default:
        return std::nullopt;
    }
}

} // namespace exact::cli
