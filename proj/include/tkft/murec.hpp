#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tkft/numeric.hpp"

namespace tkft {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Kleene's partial recursive terms. Arities are checked when a node is
// built: Compose(g, f) needs g to take as many inputs as f produces,
// PrimRec(f, g) needs f: N^n -> N and g: N^(n+2) -> N, Mu(f) needs f to
// produce one value from n+1 inputs.
class Expr {
 public:
  enum class Kind { Const, Succ, Proj, Tuple, Compose, PrimRec, Mu };

  static ExprPtr constant(Natural k, int arity);
  static ExprPtr succ();
  static ExprPtr proj(int i, int arity);
  static ExprPtr tuple(std::vector<ExprPtr> components);
  static ExprPtr compose(ExprPtr g, ExprPtr f);
  static ExprPtr primrec(ExprPtr f, ExprPtr g);
  static ExprPtr mu(ExprPtr f);

  Kind kind() const { return kind_; }
  int arity() const { return arity_; }
  int outputs() const { return outputs_; }
  const Natural& value() const { return value_; }  // Const
  int index() const { return index_; }              // Proj, 1-based
  const std::vector<ExprPtr>& children() const { return children_; }

 private:
  Expr(Kind kind, int arity, int outputs) : kind_(kind), arity_(arity), outputs_(outputs) {}

  Kind kind_;
  int arity_;
  int outputs_;
  Natural value_;
  int index_ = 0;
  std::vector<ExprPtr> children_;
};

std::string format_expr(const ExprPtr& e);

// A program is a sequence of `let NAME = EXPR;` definitions followed by one
// expression in the syntax of format_expr:
//   const k/n   succ   proj i/n   tuple(e, ...)   comp(g, f)
//   primrec(f, g)   mu(f)   NAME
// `#` starts a comment.
ExprPtr parse_program(const std::string& text);

struct EvalResult {
  enum class Outcome { Value, OutOfFuel };
  Outcome outcome = Outcome::Value;
  std::vector<Natural> values;
  std::uint64_t fuel_used = 0;
};

// One unit of fuel per node visit, per recursion step and per probe of a
// minimisation. Throws MalformedInput when |args| != arity.
EvalResult eval(const ExprPtr& e, std::span<const Natural> args, std::uint64_t fuel);

// iota(x1, ..., xn) = p1^x1 ... pn^xn.
Natural pair_encode(std::span<const Natural> xs);
// Throws MalformedInput for n = 0 or a prime factor beyond the arity.
std::vector<Natural> pair_decode(const Natural& n, std::size_t arity);

// #PrimRec + #Mu nodes, counting a shared subterm once per occurrence.
std::size_t loop_nodes(const ExprPtr& e);

// Upper bound on how many times input i (1-based) is read when e is
// evaluated once; loops count as "many" (2).
int reads_of(const ExprPtr& e, int i);

}  // namespace tkft
