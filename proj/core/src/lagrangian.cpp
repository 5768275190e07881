#include "tscv/lagrangian.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

#include "tscv/error.hpp"
#include "text_util.hpp"

namespace tscv {

struct Expr::Node {
    Kind kind = Kind::constant;
    double value = 0.0;
    Variable var = Variable::t;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Expr::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool is_func(Expr::Kind k) {
    using K = Expr::Kind;
    return k == K::sin || k == K::cos || k == K::exp || k == K::log || k == K::sqrt;
}

const char* func_name(Expr::Kind k) {
    switch (k) {
    case Expr::Kind::sin: return "sin";
    case Expr::Kind::cos: return "cos";
    case Expr::Kind::exp: return "exp";
    case Expr::Kind::log: return "log";
    case Expr::Kind::sqrt: return "sqrt";
    default: return "?";
    }
}

} // namespace

Expr::Expr() : node_(make_node(Kind::constant)) {}

Expr Expr::constant(double c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = c;
    return Expr(std::move(n));
}

Expr Expr::var(Variable x) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    n->var = x;
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::constant_value() const noexcept { return node_->value; }
Variable Expr::variable() const noexcept { return node_->var; }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }

namespace {

bool is_const(const Expr& e, double c) { return e.is_constant() && e.constant_value() == c; }

std::optional<double> fold_func(Expr::Kind k, double x) {
    double r = 0.0;
    switch (k) {
    case Expr::Kind::sin: r = std::sin(x); break;
    case Expr::Kind::cos: r = std::cos(x); break;
    case Expr::Kind::exp: r = std::exp(x); break;
    case Expr::Kind::log:
        if (!(x > 0.0)) {
            return std::nullopt;
        }
        r = std::log(x);
        break;
    case Expr::Kind::sqrt:
        if (x < 0.0) {
            return std::nullopt;
        }
        r = std::sqrt(x);
        break;
    default: return std::nullopt;
    }
    return std::isfinite(r) ? std::optional<double>(r) : std::nullopt;
}

} // namespace

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) {
        return Expr::constant(a.constant_value() + b.constant_value());
    }
    if (is_const(a, 0.0)) {
        return b;
    }
    if (is_const(b, 0.0)) {
        return a;
    }
    return Expr(make_node(Expr::Kind::add, a.node_, b.node_));
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) {
        return Expr::constant(a.constant_value() - b.constant_value());
    }
    if (is_const(b, 0.0)) {
        return a;
    }
    if (is_const(a, 0.0)) {
        return -b;
    }
    return Expr(make_node(Expr::Kind::sub, a.node_, b.node_));
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) {
        return Expr::constant(a.constant_value() * b.constant_value());
    }
    if (is_const(a, 0.0) || is_const(b, 0.0)) {
        return Expr::constant(0.0);
    }
    if (is_const(a, 1.0)) {
        return b;
    }
    if (is_const(b, 1.0)) {
        return a;
    }
    if (is_const(a, -1.0)) {
        return -b;
    }
    if (is_const(b, -1.0)) {
        return -a;
    }
    return Expr(make_node(Expr::Kind::mul, a.node_, b.node_));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0) {
        return Expr::constant(a.constant_value() / b.constant_value());
    }
    if (is_const(a, 0.0) && !b.is_constant()) {
        return Expr::constant(0.0);
    }
    if (is_const(b, 1.0)) {
        return a;
    }
    return Expr(make_node(Expr::Kind::div, a.node_, b.node_));
}

Expr operator-(const Expr& a) {
    if (a.is_constant()) {
        return Expr::constant(-a.constant_value());
    }
    if (a.kind() == Expr::Kind::neg) {
        return a.lhs();
    }
    return Expr(make_node(Expr::Kind::neg, a.node_));
}

Expr Expr::power(const Expr& base, const Expr& exponent) {
    if (!exponent.is_constant()) {
        return apply(Kind::exp, exponent * apply(Kind::log, base));
    }
    const double c = exponent.constant_value();
    if (c == 0.0) {
        return constant(1.0);
    }
    if (c == 1.0) {
        return base;
    }
    if (base.is_constant()) {
        const double r = std::pow(base.constant_value(), c);
        if (std::isfinite(r)) {
            return constant(r);
        }
    }
    return Expr(make_node(Kind::pow, base.node_, exponent.node_));
}

Expr Expr::apply(Kind func, const Expr& arg) {
    if (!is_func(func)) {
        throw ParameterError("Expr::apply: not a function kind");
    }
    if (arg.is_constant()) {
        if (const auto r = fold_func(func, arg.constant_value())) {
            return constant(*r);
        }
    }
    return Expr(make_node(func, arg.node_));
}

namespace {

double eval_node(const Expr::Node& n, double t, double y, double v) {
    using K = Expr::Kind;
    auto fail = [&](const char* what) -> double {
        throw EvalError(std::string(what) + " at (t, y, v) = (" + detail::format_double(t) + ", " +
                            detail::format_double(y) + ", " + detail::format_double(v) + ")",
                        t, y, v);
    };
    switch (n.kind) {
    case K::constant: return n.value;
    case K::variable:
        switch (n.var) {
        case Variable::t: return t;
        case Variable::y: return y;
        case Variable::v: return v;
        }
        return 0.0;
    case K::add: return eval_node(*n.a, t, y, v) + eval_node(*n.b, t, y, v);
    case K::sub: return eval_node(*n.a, t, y, v) - eval_node(*n.b, t, y, v);
    case K::mul: return eval_node(*n.a, t, y, v) * eval_node(*n.b, t, y, v);
    case K::div: {
        const double num = eval_node(*n.a, t, y, v);
        const double den = eval_node(*n.b, t, y, v);
        if (den == 0.0) {
            return fail("division by zero");
        }
        return num / den;
    }
    case K::neg: return -eval_node(*n.a, t, y, v);
    case K::pow: {
        const double base = eval_node(*n.a, t, y, v);
        const double e = eval_node(*n.b, t, y, v);
        if (base == 0.0 && e < 0.0) {
            return fail("division by zero in power");
        }
        if (base < 0.0 && std::trunc(e) != e) {
            return fail("negative base with non-integer exponent");
        }
        const double r = std::pow(base, e);
        if (!std::isfinite(r)) {
            return fail("overflow in power");
        }
        return r;
    }
    case K::sin: return std::sin(eval_node(*n.a, t, y, v));
    case K::cos: return std::cos(eval_node(*n.a, t, y, v));
    case K::exp: {
        const double r = std::exp(eval_node(*n.a, t, y, v));
        if (!std::isfinite(r)) {
            return fail("overflow in exp");
        }
        return r;
    }
    case K::log: {
        const double x = eval_node(*n.a, t, y, v);
        if (!(x > 0.0)) {
            return fail("log of a non-positive argument");
        }
        return std::log(x);
    }
    case K::sqrt: {
        const double x = eval_node(*n.a, t, y, v);
        if (x < 0.0) {
            return fail("sqrt of a negative argument");
        }
        return std::sqrt(x);
    }
    }
    return 0.0;
}

// Binding strength of a node when printed as an operand.
int precedence(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
    case K::add:
    case K::sub: return 1;
    case K::mul:
    case K::div: return 2;
    case K::neg: return 3;
    case K::pow: return 4;
    case K::constant: return e.constant_value() < 0.0 ? 3 : 5;
    default: return 5;
    }
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, int min_prec, std::string& out) {
    if (precedence(e) < min_prec) {
        out += '(';
        print(e, out);
        out += ')';
    } else {
        print(e, out);
    }
}

void print(const Expr& e, std::string& out) {
    using K = Expr::Kind;
    switch (e.kind()) {
    case K::constant: out += detail::format_double(e.constant_value()); return;
    case K::variable:
        out += e.variable() == Variable::t ? 't' : e.variable() == Variable::y ? 'y' : 'v';
        return;
    case K::add:
    case K::sub:
        print_wrapped(e.lhs(), 1, out);
        out += e.kind() == K::add ? " + " : " - ";
        print_wrapped(e.rhs(), 2, out);
        return;
    case K::mul:
    case K::div:
        print_wrapped(e.lhs(), 2, out);
        out += e.kind() == K::mul ? '*' : '/';
        print_wrapped(e.rhs(), 3, out);
        return;
    case K::neg:
        out += '-';
        print_wrapped(e.lhs(), 5, out);
        return;
    case K::pow:
        print_wrapped(e.lhs(), 5, out);
        out += '^';
        print_wrapped(e.rhs(), 4, out);
        return;
    default:
        out += func_name(e.kind());
        out += '(';
        print(e.lhs(), out);
        out += ')';
        return;
    }
}

} // namespace

double Expr::eval(double t, double y, double v) const { return eval_node(*node_, t, y, v); }

std::string Expr::to_string() const {
    std::string out;
    print(*this, out);
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_), pos_);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (accept('*')) {
                e = e * factor();
            } else if (accept('/')) {
                e = e / factor();
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        Expr b = base();
        if (accept('^')) {
            return Expr::power(b, factor());
        }
        return b;
    }

    Expr base() {
        skip_ws();
        if (pos_ >= s_.size()) {
            fail("expected expression");
        }
        const char c = s_[pos_];
        if (c == '-') {
            ++pos_;
            return -base();
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return identifier();
        }
        fail("expected expression, got '" + std::string(1, c) + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
        };
        digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) {
                ++p;
            }
            if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
                pos_ = p;
                digits();
            }
        }
        const auto text = s_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
            pos_ = start;
            fail("invalid number '" + std::string(text) + "'");
        }
        return Expr::constant(value);
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
        }
        const auto name = s_.substr(start, pos_ - start);
        if (name == "t") {
            return Expr::var(Variable::t);
        }
        if (name == "y") {
            return Expr::var(Variable::y);
        }
        if (name == "v") {
            return Expr::var(Variable::v);
        }
        Expr::Kind k{};
        if (name == "sin") {
            k = Expr::Kind::sin;
        } else if (name == "cos") {
            k = Expr::Kind::cos;
        } else if (name == "exp") {
            k = Expr::Kind::exp;
        } else if (name == "log") {
            k = Expr::Kind::log;
        } else if (name == "sqrt") {
            k = Expr::Kind::sqrt;
        } else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        expect('(');
        Expr arg = expr();
        expect(')');
        return Expr::apply(k, arg);
    }
};

} // namespace

Expr parse_expr(std::string_view text) { return Parser(text).run(); }

Expr differentiate(const Expr& e, Variable x) {
    using K = Expr::Kind;
    const auto zero = Expr::constant(0.0);
    switch (e.kind()) {
    case K::constant: return zero;
    case K::variable: return Expr::constant(e.variable() == x ? 1.0 : 0.0);
    case K::add: return differentiate(e.lhs(), x) + differentiate(e.rhs(), x);
    case K::sub: return differentiate(e.lhs(), x) - differentiate(e.rhs(), x);
    case K::mul:
        return differentiate(e.lhs(), x) * e.rhs() + e.lhs() * differentiate(e.rhs(), x);
    case K::div: {
        const auto da = differentiate(e.lhs(), x);
        const auto db = differentiate(e.rhs(), x);
        return da / e.rhs() - e.lhs() * db / Expr::power(e.rhs(), Expr::constant(2.0));
    }
    case K::neg: return -differentiate(e.lhs(), x);
    case K::pow: {
        // exponent is always a literal here; variable exponents are rewritten
        const double c = e.rhs().constant_value();
        return Expr::constant(c) * Expr::power(e.lhs(), Expr::constant(c - 1.0)) *
               differentiate(e.lhs(), x);
    }
    case K::sin: return Expr::apply(K::cos, e.lhs()) * differentiate(e.lhs(), x);
    case K::cos: return -(Expr::apply(K::sin, e.lhs()) * differentiate(e.lhs(), x));
    case K::exp: return e * differentiate(e.lhs(), x);
    case K::log: return differentiate(e.lhs(), x) / e.lhs();
    case K::sqrt: return differentiate(e.lhs(), x) / (Expr::constant(2.0) * e);
    }
    return zero;
}

Lagrangian::Lagrangian(Expr expr)
    : L(expr),
      dL_dt(differentiate(expr, Variable::t)),
      dL_dy(differentiate(expr, Variable::y)),
      dL_dv(differentiate(expr, Variable::v)) {}

bool Lagrangian::independent_of_state() const {
    return dL_dy.is_constant() && dL_dy.constant_value() == 0.0 && dL_dv.is_constant() &&
           dL_dv.constant_value() == 0.0;
}

} // namespace tscv
