#ifndef SGCALC_EXPR_HPP
#define SGCALC_EXPR_HPP

#include <complex>
#include <memory>
#include <string>
#include <string_view>

#include "sgcalc/errors.hpp"

namespace sgcalc {

// Expression tree over { z, complex constants, + - * /, integer powers, exp }.
//
// Grammar (leading sign admitted so "-z" and "exp(-0.5*z)" parse):
//   expr   := ('+'|'-')? term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' int)?
//   base   := 'z' | number | '(' expr ')' | 'exp' '(' expr ')'
//   number := decimal (optionally scientific), optional 'i' suffix
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Op { var, constant, add, sub, mul, div, pow, exp, neg };
    Op op = Op::var;
    std::complex<double> value{0.0, 0.0};  // constant
    long exponent = 0;                     // pow
    ExprPtr lhs, rhs;
};

ExprPtr parse_expr(std::string_view src);  // throws ParseError
std::string print_expr(const ExprPtr& e);
std::complex<double> eval_expr(const ExprPtr& e, std::complex<double> z);

ExprPtr expr_var();
ExprPtr expr_const(std::complex<double> c);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);
ExprPtr expr_product(ExprPtr a, ExprPtr b);  // alias of expr_mul
ExprPtr expr_neg(ExprPtr a);

}  // namespace sgcalc

#endif
