#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>

#include "lagmech/error.hpp"
#include "lagmech/exprdsl/expr.hpp"

namespace lagmech::exprdsl {
namespace {

struct FunctionInfo {
  std::string_view name;
  Function fn;
  std::size_t arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"sqrt", Function::Sqrt, 1}, {"sin", Function::Sin, 1}, {"cos", Function::Cos, 1},
    {"tan", Function::Tan, 1},   {"exp", Function::Exp, 1}, {"log", Function::Log, 1},
    {"pow", Function::Pow, 2},
};

std::optional<FunctionInfo> lookup_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name) return f;
  return std::nullopt;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

NodePtr make(decltype(Node::v) v, bool depends) {
  auto node = std::make_shared<Node>();
  node->v = std::move(v);
  node->depends_on_state = depends;
  return node;
}

class Parser {
 public:
  Parser(std::string_view src, std::size_t n) : src_(src), n_(n) {}

  NodePtr parse_all() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, {"expression"}, "empty input");
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError(pos_, {"operator", "end of input"});
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(pos_, {std::string("'") + c + "'"});
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      BinaryOp op;
      if (accept('+')) {
        op = BinaryOp::Add;
      } else if (accept('-')) {
        op = BinaryOp::Sub;
      } else {
        return lhs;
      }
      NodePtr rhs = parse_term();
      const bool dep = lhs->depends_on_state || rhs->depends_on_state;
      lhs = make(Binary{op, lhs, rhs}, dep);
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      BinaryOp op;
      if (accept('*')) {
        op = BinaryOp::Mul;
      } else if (accept('/')) {
        op = BinaryOp::Div;
      } else {
        return lhs;
      }
      NodePtr rhs = parse_unary();
      const bool dep = lhs->depends_on_state || rhs->depends_on_state;
      lhs = make(Binary{op, lhs, rhs}, dep);
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) {
      NodePtr operand = parse_unary();
      const bool dep = operand->depends_on_state;
      return make(Negate{operand}, dep);
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) {
      NodePtr exponent = parse_unary();
      const bool dep = base->depends_on_state || exponent->depends_on_state;
      return make(Binary{BinaryOp::Pow, base, exponent}, dep);
    }
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, {"number", "identifier", "'('"});
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (is_ident_start(c)) return parse_identifier();
    throw ParseError(pos_, {"number", "identifier", "'('"});
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ParseError(start, {"number"}, "malformed number");
    return make(Literal{value}, false);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);

    if (auto var = parse_variable(name, start)) return *var;

    if (auto fn = lookup_function(name)) {
      if (!accept('(')) throw ParseError(pos_, {"'('"}, "function name used without arguments");
      std::vector<NodePtr> args;
      bool dep = false;
      args.push_back(parse_expr());
      while (accept(',')) args.push_back(parse_expr());
      expect(')');
      if (args.size() != fn->arity) {
        throw ArityError(std::string(fn->name) + " expects " + std::to_string(fn->arity) +
                         " argument(s), got " + std::to_string(args.size()));
      }
      for (const auto& a : args) dep = dep || a->depends_on_state;
      return make(Call{fn->fn, std::move(args)}, dep);
    }

    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      throw ParseError(start, {"sqrt", "sin", "cos", "tan", "exp", "log", "pow"},
                       "unknown function '" + std::string(name) + "'");
    }
    return make(Parameter{std::string(name)}, false);
  }

  std::optional<NodePtr> parse_variable(std::string_view name, std::size_t start) {
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y')) return std::nullopt;
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
    if (ec != std::errc() || index == 0 || index > n_) {
      throw IndexError("variable '" + std::string(name) + "' at offset " + std::to_string(start) +
                       " is outside 1.." + std::to_string(n_));
    }
    return make(Variable{name[0] == 'x', index - 1}, true);
  }

  std::string_view src_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

void collect_parameters(const Node& node, std::set<std::string>& out) {
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Parameter>) {
          out.insert(v.name);
        } else if constexpr (std::is_same_v<V, Negate>) {
          collect_parameters(*v.operand, out);
        } else if constexpr (std::is_same_v<V, Binary>) {
          collect_parameters(*v.lhs, out);
          collect_parameters(*v.rhs, out);
        } else if constexpr (std::is_same_v<V, Call>) {
          for (const auto& a : v.args) collect_parameters(*a, out);
        }
      },
      node.v);
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

void print(const Node& node, std::string& out) {
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Literal>) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", v.value);
          out += buf;
        } else if constexpr (std::is_same_v<V, Variable>) {
          out += v.is_x ? 'x' : 'y';
          out += std::to_string(v.index + 1);
        } else if constexpr (std::is_same_v<V, Parameter>) {
          out += v.name;
        } else if constexpr (std::is_same_v<V, Negate>) {
          out += "-(";
          print(*v.operand, out);
          out += ')';
        } else if constexpr (std::is_same_v<V, Binary>) {
          out += '(';
          print(*v.lhs, out);
          out += ' ';
          out += op_char(v.op);
          out += ' ';
          print(*v.rhs, out);
          out += ')';
        } else if constexpr (std::is_same_v<V, Call>) {
          out += function_name(v.fn);
          out += '(';
          for (std::size_t i = 0; i < v.args.size(); ++i) {
            if (i > 0) out += ", ";
            print(*v.args[i], out);
          }
          out += ')';
        }
      },
      node.v);
}

}  // namespace

Expr::Expr(NodePtr root, std::size_t dim) : root_(std::move(root)), dim_(dim) {}

std::set<std::string> Expr::parameters() const {
  std::set<std::string> out;
  collect_parameters(*root_, out);
  return out;
}

Expr parse(std::string_view source, std::size_t n) { return Expr(Parser(source, n).parse_all(), n); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e.root(), out);
  return out;
}

std::string_view function_name(Function f) {
  for (const auto& info : kFunctions)
    if (info.fn == f) return info.name;
  return "?";
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& va) -> bool {
        using V = std::decay_t<decltype(va)>;
        const auto& vb = std::get<V>(b.v);
        if constexpr (std::is_same_v<V, Literal>) {
          return va.value == vb.value;
        } else if constexpr (std::is_same_v<V, Variable>) {
          return va.is_x == vb.is_x && va.index == vb.index;
        } else if constexpr (std::is_same_v<V, Parameter>) {
          return va.name == vb.name;
        } else if constexpr (std::is_same_v<V, Negate>) {
          return structurally_equal(*va.operand, *vb.operand);
        } else if constexpr (std::is_same_v<V, Binary>) {
          return va.op == vb.op && structurally_equal(*va.lhs, *vb.lhs) &&
                 structurally_equal(*va.rhs, *vb.rhs);
        } else {
          if (va.fn != vb.fn || va.args.size() != vb.args.size()) return false;
          for (std::size_t i = 0; i < va.args.size(); ++i)
            if (!structurally_equal(*va.args[i], *vb.args[i])) return false;
          return true;
        }
      },
      a.v);
}

}  // namespace lagmech::exprdsl
