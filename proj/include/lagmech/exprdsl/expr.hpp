#pragma once

// Expression trees for user-supplied Lagrangians and force components.
//
// Grammar (whitespace-insensitive):
//
//   expr    = term , { ("+" | "-") , term } ;
//   term    = unary , { ("*" | "/") , unary } ;
//   unary   = "-" , unary | power ;
//   power   = primary , [ "^" , unary ] ;          (* right-associative *)
//   primary = number | variable | parameter | call | "(" , expr , ")" ;
//   call    = function , "(" , expr , { "," , expr } , ")" ;
//   variable = ("x" | "y") , digit , { digit } ;    (* 1-based index *)
//   function = "sqrt" | "sin" | "cos" | "tan" | "exp" | "log" | "pow" ;
//
// Any other identifier is a named parameter, bound at evaluation time.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lagmech::exprdsl {

using Params = std::map<std::string, double, std::less<>>;

enum class Function { Sqrt, Sin, Cos, Tan, Exp, Log, Pow };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Literal {
  double value;
};
struct Variable {
  bool is_x;          // x^i when true, y^i otherwise
  std::size_t index;  // 0-based
};
struct Parameter {
  std::string name;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Function fn;
  std::vector<NodePtr> args;
};

struct Node {
  std::variant<Literal, Variable, Parameter, Negate, Binary, Call> v;
  bool depends_on_state = false;  // mentions some x^i or y^i
};

// Parsed, immutable expression over n-dimensional phase coordinates.
class Expr {
 public:
  Expr(NodePtr root, std::size_t dim);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  std::size_t dim() const noexcept { return dim_; }

  // Names of every parameter mentioned anywhere in the tree.
  std::set<std::string> parameters() const;

 private:
  NodePtr root_;
  std::size_t dim_;
};

// Parse `source` as an expression over coordinates x1..xn, y1..yn.
// Throws ParseError, ArityError or IndexError.
Expr parse(std::string_view source, std::size_t n);

// Re-parseable text form.
std::string to_string(const Expr& e);

bool structurally_equal(const Node& a, const Node& b);
inline bool structurally_equal(const Expr& a, const Expr& b) {
  return a.dim() == b.dim() && structurally_equal(a.root(), b.root());
}

std::string_view function_name(Function f);

}  // namespace lagmech::exprdsl
