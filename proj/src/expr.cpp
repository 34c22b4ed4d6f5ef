#include "twistor/expr.hpp"

#include <cctype>

namespace twistor {

namespace {

class Parser {
public:
    Parser(const std::string& s, bool tau) : s_(s), tau_(tau) {}

    std::unique_ptr<Expr> run() {
        auto e = sum();
        skip();
        if (i_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
        return e;
    }

private:
    const std::string& s_;
    bool tau_;
    std::size_t i_ = 0;

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }

    static std::unique_ptr<Expr> node(Expr::Kind k, std::size_t pos) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->pos = pos;
        return e;
    }
    static std::unique_ptr<Expr> binary(Expr::Kind k, std::unique_ptr<Expr> a,
                                        std::unique_ptr<Expr> b, std::size_t pos) {
        auto e = node(k, pos);
        e->args.push_back(std::move(a));
        e->args.push_back(std::move(b));
        return e;
    }

    std::unique_ptr<Expr> sum() {
        auto e = product();
        while (true) {
            if (peek('+')) {
                std::size_t p = i_++;
                e = binary(Expr::add, std::move(e), product(), p);
            } else if (peek('-')) {
                std::size_t p = i_++;
                e = binary(Expr::sub, std::move(e), product(), p);
            } else {
                return e;
            }
        }
    }

    std::unique_ptr<Expr> product() {
        auto e = unary();
        while (true) {
            if (peek('*')) {
                std::size_t p = i_++;
                e = binary(Expr::mul, std::move(e), unary(), p);
            } else if (peek('/')) {
                std::size_t p = i_++;
                skip();
                std::size_t at = i_;
                mpz_class d(integer());
                if (d == 0) throw ParseError("division by zero", at);
                auto n = node(Expr::div, p);
                n->value = Rational(d);
                n->args.push_back(std::move(e));
                e = std::move(n);
            } else {
                return e;
            }
        }
    }

    std::unique_ptr<Expr> unary() {
        if (peek('-')) {
            std::size_t p = i_++;
            auto e = node(Expr::neg, p);
            e->args.push_back(unary());
            return e;
        }
        if (peek('+')) {
            ++i_;
            return unary();
        }
        return power();
    }

    std::unique_ptr<Expr> power() {
        auto e = atom();
        if (peek('^')) {
            std::size_t p = i_++;
            skip();
            std::size_t at = i_;
            std::string digits = integer();
            if (digits.size() > 4) throw ParseError("exponent too large", at);
            auto n = node(Expr::pow, p);
            n->exponent = static_cast<unsigned>(std::stoul(digits));
            n->args.push_back(std::move(e));
            return n;
        }
        return e;
    }

    std::string integer() {
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) throw ParseError("expected integer literal", start);
        return s_.substr(start, i_ - start);
    }

    std::string identifier() {
        std::size_t start = i_;
        while (i_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            ++i_;
        return s_.substr(start, i_ - start);
    }

    std::unique_ptr<Expr> atom() {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
        std::size_t p = i_;
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            auto e = sum();
            if (!peek(')')) throw ParseError("expected ')'", i_);
            ++i_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto e = node(Expr::num, p);
            e->value = Rational(mpz_class(integer()));
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = identifier();
            if (tau_ && name == "tau") {
                std::size_t save = i_;
                if (peek('*')) {
                    ++i_;
                    skip();
                    std::string label = identifier();
                    if (label.empty()) throw ParseError("expected base class label after tau*", i_);
                    name = "tau*" + label;
                } else {
                    i_ = save;
                }
            }
            auto e = node(Expr::ident, p);
            e->name = name;
            return e;
        }
        throw ParseError(std::string("unexpected '") + c + "'", p);
    }
};

}  // namespace

std::unique_ptr<Expr> parse_expr(const std::string& text, bool tau_prefix) {
    return Parser(text, tau_prefix).run();
}

}  // namespace twistor
