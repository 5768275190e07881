#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace tscv {

enum class Variable { t, y, v };

/// Immutable expression tree over t, y, v with + - * / ^, unary minus and
/// sin, cos, exp, log, sqrt. Copies share structure.
class Expr {
public:
    enum class Kind { constant, variable, add, sub, mul, div, pow, neg, sin, cos, exp, log, sqrt };

    struct Node;

    Expr();
    static Expr constant(double c);
    static Expr var(Variable x);

    Kind kind() const noexcept;
    bool is_constant() const noexcept { return kind() == Kind::constant; }
    /// Only meaningful when is_constant().
    double constant_value() const noexcept;
    Variable variable() const noexcept;
    /// Children; the second is null for unary nodes.
    Expr lhs() const;
    Expr rhs() const;

    /// IEEE evaluation. Throws EvalError on log/sqrt of a negative number,
    /// log of zero, division by zero, or a non-real power.
    double eval(double t, double y, double v) const;

    /// Re-parseable text with 17-digit constants and minimal parentheses.
    std::string to_string() const;

    // Folding constructors: literal subtrees collapse, 0 and 1 are absorbed.
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    /// b^e; a non-constant exponent is rewritten as exp(e*log(b)).
    static Expr power(const Expr& base, const Expr& exponent);
    static Expr apply(Kind func, const Expr& arg);

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' factor)?
///   base   := number | t | y | v | func '(' expr ')' | '(' expr ')' | '-' base
/// Throws ParseError with the byte offset of the offending token.
Expr parse_expr(std::string_view text);

/// Exact symbolic partial derivative with constant folding.
Expr differentiate(const Expr& e, Variable x);

/// L(t, y, v) together with its partials in each slot.
struct Lagrangian {
    Expr L;
    Expr dL_dt;
    Expr dL_dy;
    Expr dL_dv;

    explicit Lagrangian(Expr expr);
    static Lagrangian parse(std::string_view text) { return Lagrangian(parse_expr(text)); }

    /// True when L depends on neither y nor v (both partials fold to 0).
    bool independent_of_state() const;
};

} // namespace tscv
