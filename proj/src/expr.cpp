#include "sgcalc/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace sgcalc {

namespace {

ExprPtr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("trailing input", pos_);
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr acc;
        if (eat('-')) {
            acc = node({.op = ExprNode::Op::neg, .lhs = term()});
        } else {
            eat('+');
            acc = term();
        }
        for (;;) {
            if (eat('+'))
                acc = node({.op = ExprNode::Op::add, .lhs = acc, .rhs = term()});
            else if (eat('-'))
                acc = node({.op = ExprNode::Op::sub, .lhs = acc, .rhs = term()});
            else
                return acc;
        }
    }

    ExprPtr term() {
        ExprPtr acc = factor();
        for (;;) {
            if (eat('*'))
                acc = node({.op = ExprNode::Op::mul, .lhs = acc, .rhs = factor()});
            else if (eat('/'))
                acc = node({.op = ExprNode::Op::div, .lhs = acc, .rhs = factor()});
            else
                return acc;
        }
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (eat('^')) {
            skip_ws();
            bool negative = false;
            if (eat('-')) negative = true;
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            if (pos_ == start) throw ParseError("integer exponent expected after '^'", pos_);
            long ex = std::stol(std::string(src_.substr(start, pos_ - start)));
            if (negative) ex = -ex;
            return node({.op = ExprNode::Op::pow, .exponent = ex, .lhs = b});
        }
        return b;
    }

    ExprPtr base() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   std::isalpha(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            const std::string_view word = src_.substr(start, pos_ - start);
            if (word == "z") return node({.op = ExprNode::Op::var});
            if (word == "i")
                return node({.op = ExprNode::Op::constant, .value = {0.0, 1.0}});
            if (word == "exp") {
                if (!eat('(')) throw ParseError("expected '(' after exp", pos_);
                ExprPtr e = expr();
                if (!eat(')')) throw ParseError("expected ')'", pos_);
                return node({.op = ExprNode::Op::exp, .lhs = e});
            }
            throw ParseError("unknown identifier '" + std::string(word) + "'", start);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' was not an exponent
            }
        }
        if (pos_ == start) throw ParseError("number expected", pos_);
        const double mag = std::stod(std::string(src_.substr(start, pos_ - start)));
        if (pos_ < src_.size() && src_[pos_] == 'i') {
            ++pos_;
            return node({.op = ExprNode::Op::constant, .value = {0.0, mag}});
        }
        return node({.op = ExprNode::Op::constant, .value = {mag, 0.0}});
    }
};

int precedence(ExprNode::Op op) {
    switch (op) {
        case ExprNode::Op::add:
        case ExprNode::Op::sub:
        case ExprNode::Op::neg: return 1;
        case ExprNode::Op::mul:
        case ExprNode::Op::div: return 2;
        case ExprNode::Op::pow: return 3;
        default: return 4;
    }
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void print_rec(const ExprPtr& e, int parent_prec, std::string& out) {
    const int prec = precedence(e->op);
    const bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (e->op) {
        case ExprNode::Op::var: out += 'z'; break;
        case ExprNode::Op::constant: {
            const auto v = e->value;
            if (v.imag() == 0.0) {
                if (v.real() < 0.0) {
                    out += '(';
                    out += fmt_double(v.real());
                    out += ')';
                } else
                    out += fmt_double(v.real());
            } else if (v.real() == 0.0) {
                if (v.imag() < 0.0) {
                    out += '(';
                    out += fmt_double(v.imag());
                    out += "i)";
                } else {
                    out += fmt_double(v.imag());
                    out += 'i';
                }
            } else {
                out += '(';
                out += fmt_double(v.real());
                if (v.imag() >= 0.0) out += '+';
                out += fmt_double(v.imag());
                out += "i)";
            }
            break;
        }
        case ExprNode::Op::neg:
            out += '-';
            print_rec(e->lhs, prec + 1, out);
            break;
        case ExprNode::Op::add:
            print_rec(e->lhs, prec, out);
            out += '+';
            print_rec(e->rhs, prec + 1, out);
            break;
        case ExprNode::Op::sub:
            print_rec(e->lhs, prec, out);
            out += '-';
            print_rec(e->rhs, prec + 1, out);
            break;
        case ExprNode::Op::mul:
            print_rec(e->lhs, prec, out);
            out += '*';
            print_rec(e->rhs, prec + 1, out);
            break;
        case ExprNode::Op::div:
            print_rec(e->lhs, prec, out);
            out += '/';
            print_rec(e->rhs, prec + 1, out);
            break;
        case ExprNode::Op::pow:
            print_rec(e->lhs, prec + 1, out);
            out += '^';
            out += std::to_string(e->exponent);
            break;
        case ExprNode::Op::exp:
            out += "exp(";
            print_rec(e->lhs, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

ExprPtr parse_expr(std::string_view src) { return Parser(src).run(); }

std::string print_expr(const ExprPtr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

std::complex<double> eval_expr(const ExprPtr& e, std::complex<double> z) {
    switch (e->op) {
        case ExprNode::Op::var: return z;
        case ExprNode::Op::constant: return e->value;
        case ExprNode::Op::neg: return -eval_expr(e->lhs, z);
        case ExprNode::Op::add: return eval_expr(e->lhs, z) + eval_expr(e->rhs, z);
        case ExprNode::Op::sub: return eval_expr(e->lhs, z) - eval_expr(e->rhs, z);
        case ExprNode::Op::mul: return eval_expr(e->lhs, z) * eval_expr(e->rhs, z);
        case ExprNode::Op::div: return eval_expr(e->lhs, z) / eval_expr(e->rhs, z);
        case ExprNode::Op::exp: return std::exp(eval_expr(e->lhs, z));
        case ExprNode::Op::pow: {
            const std::complex<double> b = eval_expr(e->lhs, z);
            long n = e->exponent;
            const bool inv = n < 0;
            if (inv) n = -n;
            std::complex<double> acc{1.0, 0.0};
            std::complex<double> base = b;
            while (n > 0) {
                if (n & 1) acc *= base;
                base *= base;
                n >>= 1;
            }
            return inv ? 1.0 / acc : acc;
        }
    }
    throw DomainError("eval_expr: unknown node");
}

ExprPtr expr_var() { return node({.op = ExprNode::Op::var}); }
ExprPtr expr_const(std::complex<double> c) {
    return node({.op = ExprNode::Op::constant, .value = c});
}
ExprPtr expr_mul(ExprPtr a, ExprPtr b) {
    return node({.op = ExprNode::Op::mul, .lhs = std::move(a), .rhs = std::move(b)});
}
ExprPtr expr_product(ExprPtr a, ExprPtr b) { return expr_mul(std::move(a), std::move(b)); }
ExprPtr expr_neg(ExprPtr a) { return node({.op = ExprNode::Op::neg, .lhs = std::move(a)}); }

}  // namespace sgcalc
