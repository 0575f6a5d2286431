#ifndef TSCALC_EXPR_HPP
#define TSCALC_EXPR_HPP

#include "tscalc/calculus.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace tsc {

enum class expr_kind { constant, variable, neg, add, sub, mul, div, pow, call };
enum class builtin { sin, cos, exp, log };

/// Immutable expression tree in the single variable t.
///
/// Nodes are shared and never mutated, so copies are cheap and an expr may be
/// evaluated from several threads at once.
class expr {
public:
    struct node;

    static expr constant(double value);
    static expr variable();
    static expr neg(expr operand);
    static expr binary(expr_kind kind, expr lhs, expr rhs);
    /// u^exponent, exponent >= 0.
    static expr pow(expr base, int exponent);
    static expr call(builtin fn, expr arg);

    expr_kind kind() const noexcept;
    double value() const noexcept;
    int exponent() const noexcept;
    builtin function() const noexcept;
    expr lhs() const;
    expr rhs() const;

    friend bool operator==(const expr& x, const expr& y) noexcept;

private:
    explicit expr(std::shared_ptr<const node> root)
        : root_(std::move(root))
    {
    }

    std::shared_ptr<const node> root_;
};

/// Parses the expression grammar
///
///     expr   := term (('+' | '-') term)*
///     term   := unary (('*' | '/') unary)*
///     unary  := '-' unary | power
///     power  := atom ('^' INT)*          right associative
///     atom   := NUMBER | 't' | IDENT '(' expr ')' | '(' expr ')'
///
/// with IDENT one of sin, cos, exp, log. Whitespace is ignored; there is no
/// implicit multiplication. Throws syntax_error (with the offending offset)
/// or error(unknown_function).
expr parse(std::string_view text);

/// Evaluates e at t. Throws domain_error for division by zero and for log of
/// a non-positive argument.
double eval_expr(const expr& e, double t);

/// d/dt of e, with constant folding and the identities x*1, x*0, x+0, x-0
/// applied while building; no further simplification.
expr classical_derivative(const expr& e);

/// Canonical text: minimal parentheses, spaces around + and -, shortest
/// round-trip numbers. parse(to_string(parse(s))) == parse(s).
std::string to_string(const expr& e);

/// Wraps e and its classical derivative as a real_function labelled with the
/// canonical text of e.
real_function to_real_function(const expr& e);

} // namespace tsc

#endif
