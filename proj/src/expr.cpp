#include "httlab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "httlab/errors.hpp"

namespace httlab {

struct Expr::Node {
    enum class Kind { Number, VarU, VarV, Param, Add, Sub, Mul, Div, Pow, Neg };
    Kind kind;
    double value = 0;
    std::string name;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
    const std::string& src;
    size_t pos = 0;
    std::vector<std::string>* params;

    explicit Parser(const std::string& s, std::vector<std::string>* p) : src(s), params(p) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) { ++pos; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    NodePtr make(Expr::Node::Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = k; n->lhs = std::move(l); n->rhs = std::move(r);
        return n;
    }

    NodePtr parse_expr() {
        NodePtr n = parse_term();
        for (;;) {
            if (eat('+')) n = make(Expr::Node::Kind::Add, n, parse_term());
            else if (eat('-')) n = make(Expr::Node::Kind::Sub, n, parse_term());
            else return n;
        }
    }
    NodePtr parse_term() {
        NodePtr n = parse_factor();
        for (;;) {
            if (eat('*')) n = make(Expr::Node::Kind::Mul, n, parse_factor());
            else if (eat('/')) n = make(Expr::Node::Kind::Div, n, parse_factor());
            else return n;
        }
    }
    NodePtr parse_factor() {
        NodePtr base = parse_unary();
        if (eat('^')) return make(Expr::Node::Kind::Pow, base, parse_factor());
        return base;
    }
    NodePtr parse_unary() {
        if (eat('-')) return make(Expr::Node::Kind::Neg, parse_unary());
        return parse_primary();
    }
    NodePtr parse_primary() {
        skip_ws();
        if (pos >= src.size()) throw ConfigError("expression: unexpected end of input");
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            NodePtr n = parse_expr();
            if (!eat(')')) throw ConfigError("expression: missing ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(src.c_str() + pos, &end);
            if (end == src.c_str() + pos) throw ConfigError("expression: bad number");
            pos = end - src.c_str();
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Kind::Number; n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            const std::string name = src.substr(start, pos - start);
            auto n = std::make_shared<Expr::Node>();
            if (name == "u") n->kind = Expr::Node::Kind::VarU;
            else if (name == "v") n->kind = Expr::Node::Kind::VarV;
            else {
                n->kind = Expr::Node::Kind::Param;
                n->name = name;
                if (std::find(params->begin(), params->end(), name) == params->end())
                    params->push_back(name);
            }
            return n;
        }
        throw ConfigError(std::string("expression: unexpected character '") + c + "'");
    }
};

double eval_node(const Expr::Node& n, double u, double v,
                 const std::map<std::string, double>& params) {
    using K = Expr::Node::Kind;
    switch (n.kind) {
        case K::Number: return n.value;
        case K::VarU: return u;
        case K::VarV: return v;
        case K::Param: {
            auto it = params.find(n.name);
            if (it == params.end())
                throw ConfigError("expression: parameter '" + n.name + "' not provided");
            return it->second;
        }
        case K::Add: return eval_node(*n.lhs, u, v, params) + eval_node(*n.rhs, u, v, params);
        case K::Sub: return eval_node(*n.lhs, u, v, params) - eval_node(*n.rhs, u, v, params);
        case K::Mul: return eval_node(*n.lhs, u, v, params) * eval_node(*n.rhs, u, v, params);
        case K::Div: return eval_node(*n.lhs, u, v, params) / eval_node(*n.rhs, u, v, params);
        case K::Pow: return std::pow(eval_node(*n.lhs, u, v, params),
                                     eval_node(*n.rhs, u, v, params));
        case K::Neg: return -eval_node(*n.lhs, u, v, params);
    }
    throw ConfigError("expression: corrupt node");
}

}  // namespace

Expr Expr::parse(const std::string& source) {
    Expr e;
    e.source_ = source;
    Parser p(source, &e.params_);
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != source.size())
        throw ConfigError("expression: trailing input at '" + source.substr(p.pos) + "'");
    return e;
}

double Expr::eval(double u, double v, const std::map<std::string, double>& params) const {
    return eval_node(*root_, u, v, params);
}

}  // namespace httlab
