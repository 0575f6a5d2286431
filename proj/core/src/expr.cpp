#include "tscalc/expr.hpp"

#include "tscalc/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <vector>

namespace tsc {

struct expr::node {
    expr_kind kind;
    double value = 0.0;
    int exponent = 0;
    builtin fn = builtin::sin;
    std::shared_ptr<const node> lhs;
    std::shared_ptr<const node> rhs;
};

expr expr::constant(double value)
{
    return expr(std::make_shared<const node>(node{expr_kind::constant, value, 0, {}, {}, {}}));
}

expr expr::variable()
{
    return expr(std::make_shared<const node>(node{expr_kind::variable, 0.0, 0, {}, {}, {}}));
}

expr expr::neg(expr operand)
{
    return expr(std::make_shared<const node>(
        node{expr_kind::neg, 0.0, 0, {}, std::move(operand.root_), {}}));
}

expr expr::binary(expr_kind kind, expr lhs, expr rhs)
{
    return expr(std::make_shared<const node>(
        node{kind, 0.0, 0, {}, std::move(lhs.root_), std::move(rhs.root_)}));
}

expr expr::pow(expr base, int exponent)
{
    return expr(std::make_shared<const node>(
        node{expr_kind::pow, 0.0, exponent, {}, std::move(base.root_), {}}));
}

expr expr::call(builtin fn, expr arg)
{
    return expr(std::make_shared<const node>(
        node{expr_kind::call, 0.0, 0, fn, std::move(arg.root_), {}}));
}

expr_kind expr::kind() const noexcept { return root_->kind; }
double expr::value() const noexcept { return root_->value; }
int expr::exponent() const noexcept { return root_->exponent; }
builtin expr::function() const noexcept { return root_->fn; }
expr expr::lhs() const { return expr(root_->lhs); }
expr expr::rhs() const { return expr(root_->rhs); }

namespace {

bool same_tree(const expr::node* x, const expr::node* y) noexcept
{
    if (x == y)
        return true;
    if (!x || !y || x->kind != y->kind)
        return false;
    switch (x->kind) {
    case expr_kind::constant: return x->value == y->value;
    case expr_kind::variable: return true;
    case expr_kind::pow:
        return x->exponent == y->exponent && same_tree(x->lhs.get(), y->lhs.get());
    case expr_kind::call: return x->fn == y->fn && same_tree(x->lhs.get(), y->lhs.get());
    case expr_kind::neg: return same_tree(x->lhs.get(), y->lhs.get());
    default:
        return same_tree(x->lhs.get(), y->lhs.get()) && same_tree(x->rhs.get(), y->rhs.get());
    }
}

} // namespace

bool operator==(const expr& x, const expr& y) noexcept
{
    return same_tree(x.root_.get(), y.root_.get());
}

// ---------------------------------------------------------------- parsing

namespace {

enum class tok { number, integer, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct token {
    tok kind;
    std::size_t pos;
    std::string_view text;
    double number = 0.0;
};

class lexer {
public:
    explicit lexer(std::string_view src)
        : src_(src)
    {
    }

    token next()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        const std::size_t start = pos_;
        if (pos_ == src_.size())
            return {tok::end, start, {}};

        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size()
                   && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            return {tok::ident, start, src_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (c) {
        case '+': return {tok::plus, start, src_.substr(start, 1)};
        case '-': return {tok::minus, start, src_.substr(start, 1)};
        case '*': return {tok::star, start, src_.substr(start, 1)};
        case '/': return {tok::slash, start, src_.substr(start, 1)};
        case '^': return {tok::caret, start, src_.substr(start, 1)};
        case '(': return {tok::lparen, start, src_.substr(start, 1)};
        case ')': return {tok::rparen, start, src_.substr(start, 1)};
        default: break;
        }
        throw syntax_error(start, std::string("unexpected character '") + c + "'");
    }

private:
    token number(std::size_t start)
    {
        bool integral = true;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t count = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            integral = false;
            ++pos_;
            count += digits();
        }
        if (count == 0)
            throw syntax_error(start, "malformed number");
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            integral = false;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                ++pos_;
            if (digits() == 0)
                throw syntax_error(pos_, "malformed exponent in number");
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw syntax_error(start, "number out of range");
        return {integral ? tok::integer : tok::number, start, text, value};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class parser {
public:
    explicit parser(std::string_view src)
        : lex_(src)
        , cur_(lex_.next())
    {
    }

    expr parse_all()
    {
        if (cur_.kind == tok::end)
            throw syntax_error(cur_.pos, "empty expression");
        expr e = parse_expr();
        if (cur_.kind != tok::end)
            throw syntax_error(cur_.pos, "unexpected '" + std::string(cur_.text) + "'");
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    expr parse_expr()
    {
        expr lhs = parse_term();
        while (cur_.kind == tok::plus || cur_.kind == tok::minus) {
            const expr_kind k = cur_.kind == tok::plus ? expr_kind::add : expr_kind::sub;
            advance();
            lhs = expr::binary(k, lhs, parse_term());
        }
        return lhs;
    }

    expr parse_term()
    {
        expr lhs = parse_unary();
        while (cur_.kind == tok::star || cur_.kind == tok::slash) {
            const expr_kind k = cur_.kind == tok::star ? expr_kind::mul : expr_kind::div;
            advance();
            lhs = expr::binary(k, lhs, parse_unary());
        }
        return lhs;
    }

    expr parse_unary()
    {
        if (cur_.kind == tok::minus) {
            advance();
            return expr::neg(parse_unary());
        }
        return parse_power();
    }

    expr parse_power()
    {
        expr base = parse_atom();
        if (cur_.kind != tok::caret)
            return base;
        // Exponents are integer literals; fold a^b^c right to left.
        std::vector<long long> exponents;
        while (cur_.kind == tok::caret) {
            advance();
            if (cur_.kind != tok::integer)
                throw syntax_error(cur_.pos, "exponent must be a non-negative integer literal");
            exponents.push_back(static_cast<long long>(cur_.number));
            advance();
        }
        long long folded = exponents.back();
        for (std::size_t i = exponents.size() - 1; i-- > 0;) {
            long long p = 1;
            for (long long k = 0; k < folded; ++k) {
                p *= exponents[i];
                if (p > std::numeric_limits<int>::max())
                    break;
            }
            folded = p;
        }
        if (folded > std::numeric_limits<int>::max())
            throw syntax_error(cur_.pos, "exponent too large");
        return expr::pow(base, static_cast<int>(folded));
    }

    expr parse_atom()
    {
        const token t = cur_;
        switch (t.kind) {
        case tok::number:
        case tok::integer:
            advance();
            return expr::constant(t.number);
        case tok::lparen: {
            advance();
            expr inner = parse_expr();
            expect(tok::rparen, "')'");
            return inner;
        }
        case tok::ident: {
            advance();
            if (t.text == "t")
                return expr::variable();
            const auto fn = lookup(t.text);
            if (cur_.kind != tok::lparen) {
                if (fn)
                    throw syntax_error(cur_.pos, "expected '(' after " + std::string(t.text));
                throw syntax_error(t.pos, "unknown symbol '" + std::string(t.text) + "'");
            }
            if (!fn)
                throw error(errc::unknown_function, std::string(t.text));
            advance();
            expr arg = parse_expr();
            expect(tok::rparen, "')'");
            return expr::call(*fn, arg);
        }
        case tok::end: throw syntax_error(t.pos, "expected an operand");
        default: throw syntax_error(t.pos, "unexpected '" + std::string(t.text) + "'");
        }
    }

    void expect(tok kind, const char* what)
    {
        if (cur_.kind != kind)
            throw syntax_error(cur_.pos, std::string("expected ") + what);
        advance();
    }

    static std::optional<builtin> lookup(std::string_view name)
    {
        if (name == "sin") return builtin::sin;
        if (name == "cos") return builtin::cos;
        if (name == "exp") return builtin::exp;
        if (name == "log") return builtin::log;
        return std::nullopt;
    }

    lexer lex_;
    token cur_;
};

} // namespace

expr parse(std::string_view text)
{
    return parser(text).parse_all();
}

// ------------------------------------------------------------- evaluation

namespace {

double int_power(double base, int n)
{
    double result = 1.0;
    while (n > 0) {
        if (n & 1)
            result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

double eval_node(const expr& e, double t)
{
    switch (e.kind()) {
    case expr_kind::constant: return e.value();
    case expr_kind::variable: return t;
    case expr_kind::neg: return -eval_node(e.lhs(), t);
    case expr_kind::add: return eval_node(e.lhs(), t) + eval_node(e.rhs(), t);
    case expr_kind::sub: return eval_node(e.lhs(), t) - eval_node(e.rhs(), t);
    case expr_kind::mul: return eval_node(e.lhs(), t) * eval_node(e.rhs(), t);
    case expr_kind::div: {
        const double num = eval_node(e.lhs(), t);
        const double den = eval_node(e.rhs(), t);
        if (den == 0.0)
            throw error(errc::domain_error, "division by zero at t = " + std::to_string(t));
        return num / den;
    }
    case expr_kind::pow: return int_power(eval_node(e.lhs(), t), e.exponent());
    case expr_kind::call: {
        const double x = eval_node(e.lhs(), t);
        switch (e.function()) {
        case builtin::sin: return std::sin(x);
        case builtin::cos: return std::cos(x);
        case builtin::exp: return std::exp(x);
        case builtin::log:
            if (!(x > 0))
                throw error(errc::domain_error, "log of a non-positive value at t = "
                                                    + std::to_string(t));
            return std::log(x);
        }
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

double eval_expr(const expr& e, double t)
{
    return eval_node(e, t);
}

// --------------------------------------------------------- differentiation

namespace {

bool is_const(const expr& e, double v)
{
    return e.kind() == expr_kind::constant && e.value() == v;
}

bool is_const(const expr& e)
{
    return e.kind() == expr_kind::constant;
}

expr make_add(expr a, expr b)
{
    if (is_const(a) && is_const(b)) return expr::constant(a.value() + b.value());
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    return expr::binary(expr_kind::add, a, b);
}

expr make_neg(expr a)
{
    if (is_const(a)) return expr::constant(-a.value());
    return expr::neg(a);
}

expr make_sub(expr a, expr b)
{
    if (is_const(a) && is_const(b)) return expr::constant(a.value() - b.value());
    if (is_const(b, 0)) return a;
    if (is_const(a, 0)) return make_neg(b);
    return expr::binary(expr_kind::sub, a, b);
}

expr make_mul(expr a, expr b)
{
    if (is_const(a) && is_const(b)) return expr::constant(a.value() * b.value());
    if (is_const(a, 0) || is_const(b, 0)) return expr::constant(0);
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    return expr::binary(expr_kind::mul, a, b);
}

expr make_div(expr a, expr b)
{
    if (is_const(a) && is_const(b) && b.value() != 0) return expr::constant(a.value() / b.value());
    if (is_const(a, 0)) return expr::constant(0);
    if (is_const(b, 1)) return a;
    return expr::binary(expr_kind::div, a, b);
}

expr make_pow(expr base, int n)
{
    if (n == 0) return expr::constant(1);
    if (is_const(base)) return expr::constant(int_power(base.value(), n));
    return expr::pow(base, n);
}

} // namespace

expr classical_derivative(const expr& e)
{
    switch (e.kind()) {
    case expr_kind::constant: return expr::constant(0);
    case expr_kind::variable: return expr::constant(1);
    case expr_kind::neg: return make_neg(classical_derivative(e.lhs()));
    case expr_kind::add:
        return make_add(classical_derivative(e.lhs()), classical_derivative(e.rhs()));
    case expr_kind::sub:
        return make_sub(classical_derivative(e.lhs()), classical_derivative(e.rhs()));
    case expr_kind::mul:
        return make_add(make_mul(classical_derivative(e.lhs()), e.rhs()),
                        make_mul(e.lhs(), classical_derivative(e.rhs())));
    case expr_kind::div:
        return make_div(make_sub(make_mul(classical_derivative(e.lhs()), e.rhs()),
                                 make_mul(e.lhs(), classical_derivative(e.rhs()))),
                        make_pow(e.rhs(), 2));
    case expr_kind::pow: {
        const int n = e.exponent();
        if (n == 0)
            return expr::constant(0);
        return make_mul(make_mul(expr::constant(n), make_pow(e.lhs(), n - 1)),
                        classical_derivative(e.lhs()));
    }
    case expr_kind::call: {
        const expr u = e.lhs();
        const expr du = classical_derivative(u);
        switch (e.function()) {
        case builtin::sin: return make_mul(expr::call(builtin::cos, u), du);
        case builtin::cos: return make_mul(make_neg(expr::call(builtin::sin, u)), du);
        case builtin::exp: return make_mul(expr::call(builtin::exp, u), du);
        case builtin::log: return make_div(du, u);
        }
    }
    }
    return expr::constant(0);
}

// ----------------------------------------------------------------- printing

namespace {

constexpr int prec_add = 1;
constexpr int prec_mul = 2;
constexpr int prec_neg = 3;
constexpr int prec_pow = 4;
constexpr int prec_atom = 5;

std::string format_constant(double v)
{
    char buf[32];
    for (int digits = 1; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        if (std::strtod(buf, nullptr) == v)
            break;
    }
    return buf;
}

const char* builtin_name(builtin fn)
{
    switch (fn) {
    case builtin::sin: return "sin";
    case builtin::cos: return "cos";
    case builtin::exp: return "exp";
    case builtin::log: return "log";
    }
    return "?";
}

int precedence(const expr& e)
{
    switch (e.kind()) {
    case expr_kind::add:
    case expr_kind::sub: return prec_add;
    case expr_kind::mul:
    case expr_kind::div: return prec_mul;
    case expr_kind::neg: return prec_neg;
    case expr_kind::pow: return prec_pow;
    case expr_kind::constant: return e.value() < 0 || std::signbit(e.value()) ? prec_neg : prec_atom;
    default: return prec_atom;
    }
}

std::string print(const expr& e);

std::string wrapped(const expr& e, int min_prec)
{
    std::string s = print(e);
    return precedence(e) >= min_prec ? s : "(" + s + ")";
}

std::string print(const expr& e)
{
    switch (e.kind()) {
    case expr_kind::constant: return format_constant(e.value());
    case expr_kind::variable: return "t";
    case expr_kind::neg: return "-" + wrapped(e.lhs(), prec_neg);
    case expr_kind::add: return wrapped(e.lhs(), prec_add) + " + " + wrapped(e.rhs(), prec_mul);
    case expr_kind::sub: return wrapped(e.lhs(), prec_add) + " - " + wrapped(e.rhs(), prec_mul);
    case expr_kind::mul: return wrapped(e.lhs(), prec_mul) + "*" + wrapped(e.rhs(), prec_neg);
    case expr_kind::div: return wrapped(e.lhs(), prec_mul) + "/" + wrapped(e.rhs(), prec_neg);
    case expr_kind::pow: return wrapped(e.lhs(), prec_atom) + "^" + std::to_string(e.exponent());
    case expr_kind::call: return std::string(builtin_name(e.function())) + "(" + print(e.lhs()) + ")";
    }
    return "?";
}

} // namespace

std::string to_string(const expr& e)
{
    return print(e);
}

real_function to_real_function(const expr& e)
{
    const expr d = classical_derivative(e);
    return real_function([e](double t) { return eval_expr(e, t); }, to_string(e),
                         [d](double t) { return eval_expr(d, t); });
}

} // namespace tsc
