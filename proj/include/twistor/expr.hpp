#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twistor/poly.hpp"

namespace twistor {

// Small expression tree shared by the polynomial reader and the CLI class reader.
struct Expr {
    enum Kind { num, ident, add, sub, mul, div, pow, neg } kind;
    Rational value;     // num
    std::string name;   // ident
    unsigned exponent = 0;
    std::size_t pos = 0;
    std::vector<std::unique_ptr<Expr>> args;
};

// When tau_prefix is set, "tau*label" is read as the single identifier "tau*label".
std::unique_ptr<Expr> parse_expr(const std::string& text, bool tau_prefix = false);

template <class T, class Leaf>
T eval_expr(const Expr& e, const Leaf& leaf) {
    switch (e.kind) {
        case Expr::num: return T(e.value);
        case Expr::ident: return leaf(e.name, e.pos);
        case Expr::add: return eval_expr<T>(*e.args[0], leaf) + eval_expr<T>(*e.args[1], leaf);
        case Expr::sub: return eval_expr<T>(*e.args[0], leaf) - eval_expr<T>(*e.args[1], leaf);
        case Expr::mul: return eval_expr<T>(*e.args[0], leaf) * eval_expr<T>(*e.args[1], leaf);
        case Expr::div: return eval_expr<T>(*e.args[0], leaf) * Rational(Rational(1) / e.value);
        case Expr::neg: return T(Rational(0)) - eval_expr<T>(*e.args[0], leaf);
        case Expr::pow: {
            T base = eval_expr<T>(*e.args[0], leaf);
            T r(Rational(1));
            for (unsigned i = 0; i < e.exponent; ++i) r = r * base;
            return r;
        }
    }
    return T(Rational(0));
}

}  // namespace twistor
