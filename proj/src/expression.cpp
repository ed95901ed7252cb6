#include "contactlab/expression.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace contactlab {

namespace {
enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Log };
} // namespace

struct Expression::Node {
    Op op = Op::Const;
    double value = 0.0; // Const
    int var = 0;        // Var
    NodePtr a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = Expression::NodePtr;

NodePtr make_const(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = v;
    return n;
}

NodePtr make_var(int i) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->var = i;
    return n;
}

NodePtr make_node(Op op, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }

double eval_node(const Node& n, const std::array<double, 4>& vars) {
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Var: return vars[static_cast<size_t>(n.var)];
        case Op::Add: return eval_node(*n.a, vars) + eval_node(*n.b, vars);
        case Op::Sub: return eval_node(*n.a, vars) - eval_node(*n.b, vars);
        case Op::Mul: return eval_node(*n.a, vars) * eval_node(*n.b, vars);
        case Op::Div: return eval_node(*n.a, vars) / eval_node(*n.b, vars);
        case Op::Pow: return std::pow(eval_node(*n.a, vars), eval_node(*n.b, vars));
        case Op::Neg: return -eval_node(*n.a, vars);
        case Op::Sin: return std::sin(eval_node(*n.a, vars));
        case Op::Cos: return std::cos(eval_node(*n.a, vars));
        case Op::Exp: return std::exp(eval_node(*n.a, vars));
        case Op::Log: return std::log(eval_node(*n.a, vars));
    }
    return 0.0;
}

// light simplification: constant folding and unit/zero elimination
NodePtr simplify(Op op, NodePtr a, NodePtr b) {
    if (b == nullptr) {
        if (a->op == Op::Const) return make_const(eval_node(*make_node(op, a), {}));
        return make_node(op, std::move(a));
    }
    if (a->op == Op::Const && b->op == Op::Const)
        return make_const(eval_node(*make_node(op, a, b), {}));
    switch (op) {
        case Op::Add:
            if (is_const(a, 0.0)) return b;
            if (is_const(b, 0.0)) return a;
            break;
        case Op::Sub:
            if (is_const(b, 0.0)) return a;
            if (is_const(a, 0.0)) return make_node(Op::Neg, std::move(b));
            break;
        case Op::Mul:
            if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
            if (is_const(a, 1.0)) return b;
            if (is_const(b, 1.0)) return a;
            break;
        case Op::Div:
            if (is_const(a, 0.0)) return make_const(0.0);
            if (is_const(b, 1.0)) return a;
            break;
        case Op::Pow:
            if (is_const(b, 1.0)) return a;
            if (is_const(b, 0.0)) return make_const(1.0);
            break;
        default: break;
    }
    return make_node(op, std::move(a), std::move(b));
}

NodePtr diff_node(const NodePtr& n, int var);

NodePtr diff_pow(const NodePtr& n, int var) {
    const NodePtr& base = n->a;
    const NodePtr& expo = n->b;
    if (expo->op == Op::Const) {
        // c a^(c-1) a'
        auto lower = simplify(Op::Pow, base, make_const(expo->value - 1.0));
        auto term = simplify(Op::Mul, make_const(expo->value), lower);
        return simplify(Op::Mul, term, diff_node(base, var));
    }
    // a^b (b' log a + b a' / a)
    auto t1 = simplify(Op::Mul, diff_node(expo, var), simplify(Op::Log, base, nullptr));
    auto t2 = simplify(Op::Div, simplify(Op::Mul, expo, diff_node(base, var)), base);
    return simplify(Op::Mul, n, simplify(Op::Add, t1, t2));
}

NodePtr diff_node(const NodePtr& n, int var) {
    switch (n->op) {
        case Op::Const: return make_const(0.0);
        case Op::Var: return make_const(n->var == var ? 1.0 : 0.0);
        case Op::Add: return simplify(Op::Add, diff_node(n->a, var), diff_node(n->b, var));
        case Op::Sub: return simplify(Op::Sub, diff_node(n->a, var), diff_node(n->b, var));
        case Op::Mul:
            return simplify(Op::Add, simplify(Op::Mul, diff_node(n->a, var), n->b),
                            simplify(Op::Mul, n->a, diff_node(n->b, var)));
        case Op::Div:
            return simplify(
                Op::Div,
                simplify(Op::Sub, simplify(Op::Mul, diff_node(n->a, var), n->b),
                         simplify(Op::Mul, n->a, diff_node(n->b, var))),
                simplify(Op::Pow, n->b, make_const(2.0)));
        case Op::Pow: return diff_pow(n, var);
        case Op::Neg: return simplify(Op::Neg, diff_node(n->a, var), nullptr);
        case Op::Sin:
            return simplify(Op::Mul, simplify(Op::Cos, n->a, nullptr), diff_node(n->a, var));
        case Op::Cos:
            return simplify(Op::Neg,
                            simplify(Op::Mul, simplify(Op::Sin, n->a, nullptr),
                                     diff_node(n->a, var)),
                            nullptr);
        case Op::Exp: return simplify(Op::Mul, n, diff_node(n->a, var));
        case Op::Log: return simplify(Op::Div, diff_node(n->a, var), n->a);
    }
    return make_const(0.0);
}

bool uses_var_node(const Node& n, int var) {
    switch (n.op) {
        case Op::Const: return false;
        case Op::Var: return n.var == var;
        default:
            return (n.a && uses_var_node(*n.a, var)) || (n.b && uses_var_node(*n.b, var));
    }
}

void print_node(const Node& n, std::ostringstream& out) {
    switch (n.op) {
        case Op::Const: out << format_g17(n.value); return;
        case Op::Var: out << "xyzs"[n.var]; return;
        case Op::Neg:
            out << "(-";
            print_node(*n.a, out);
            out << ")";
            return;
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Log: {
            const char* name = n.op == Op::Sin   ? "sin"
                               : n.op == Op::Cos ? "cos"
                               : n.op == Op::Exp ? "exp"
                                                 : "log";
            out << name << "(";
            print_node(*n.a, out);
            out << ")";
            return;
        }
        default: {
            const char sym = n.op == Op::Add   ? '+'
                             : n.op == Op::Sub ? '-'
                             : n.op == Op::Mul ? '*'
                             : n.op == Op::Div ? '/'
                                               : '^';
            out << "(";
            print_node(*n.a, out);
            out << ' ' << sym << ' ';
            print_node(*n.b, out);
            out << ")";
            return;
        }
    }
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        auto node = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw contract_error("expression: trailing characters at position " +
                                 std::to_string(pos_));
        return node;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        auto node = parse_term();
        for (;;) {
            if (consume('+'))
                node = simplify(Op::Add, node, parse_term());
            else if (consume('-'))
                node = simplify(Op::Sub, node, parse_term());
            else
                return node;
        }
    }

    NodePtr parse_term() {
        auto node = parse_factor();
        for (;;) {
            if (consume('*'))
                node = simplify(Op::Mul, node, parse_factor());
            else if (consume('/'))
                node = simplify(Op::Div, node, parse_factor());
            else
                return node;
        }
    }

    // '^' binds tighter than unary minus: -x^2 = -(x^2), and right assoc
    NodePtr parse_factor() {
        if (consume('-')) return simplify(Op::Neg, parse_factor(), nullptr);
        return parse_power();
    }

    NodePtr parse_power() {
        auto base = parse_primary();
        if (consume('^')) return simplify(Op::Pow, base, parse_factor());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw contract_error("expression: unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        if (consume('(')) {
            auto node = parse_expr();
            if (!consume(')')) throw contract_error("expression: missing ')'");
            return node;
        }
        throw contract_error(std::string("expression: unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        size_t end = pos_;
        while (end < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
                text_[end] == 'e' || text_[end] == 'E' ||
                ((text_[end] == '+' || text_[end] == '-') && end > pos_ &&
                 (text_[end - 1] == 'e' || text_[end - 1] == 'E'))))
            ++end;
        const std::string tok = text_.substr(pos_, end - pos_);
        try {
            const double v = std::stod(tok);
            pos_ = end;
            return make_const(v);
        } catch (const std::exception&) {
            throw contract_error("expression: bad number '" + tok + "'");
        }
    }

    NodePtr parse_ident() {
        size_t end = pos_;
        while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
        const std::string name = text_.substr(pos_, end - pos_);
        pos_ = end;
        if (name == "x") return make_var(0);
        if (name == "y") return make_var(1);
        if (name == "z") return make_var(2);
        if (name == "s") return make_var(3);
        if (name == "sin" || name == "cos" || name == "exp") {
            if (!consume('(')) throw contract_error("expression: " + name + " needs '('");
            auto arg = parse_expr();
            if (!consume(')')) throw contract_error("expression: missing ')'");
            const Op op = name == "sin" ? Op::Sin : name == "cos" ? Op::Cos : Op::Exp;
            return simplify(op, std::move(arg), nullptr);
        }
        throw contract_error("expression: unknown identifier '" + name + "'");
    }

    const std::string& text_;
    size_t pos_ = 0;
};

} // namespace

Expression Expression::parse(const std::string& text) {
    if (text.empty()) throw contract_error("expression: empty input");
    return Expression(Parser(text).run());
}

double Expression::eval(double x, double y, double z, double s) const {
    return eval_node(*root_, {x, y, z, s});
}

Expression Expression::derivative(int var) const {
    if (var < 0 || var > 3) throw contract_error("expression: variable index out of range");
    return Expression(diff_node(root_, var));
}

bool Expression::uses_variable(int var) const { return uses_var_node(*root_, var); }

std::string Expression::to_string() const {
    std::ostringstream out;
    print_node(*root_, out);
    return out.str();
}

} // namespace contactlab
