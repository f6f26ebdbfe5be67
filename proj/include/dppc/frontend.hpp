#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "dppc/hierarchy.hpp"

namespace dppc {

// Surface syntax of boolean probabilistic programs (format v1):
//
//   program := fndef+
//   fndef   := IDENT "(" params? ")" ":=" stmt* retlist
//   stmt    := "let" idlist "=" expr ";" | "observe" "(" expr ")" ";"
//   retlist := expr ("," expr)*
//   expr    := expr ("&&"|"∧") expr | expr ("||"|"∨") expr
//            | ("!"|"¬") expr | "flip" "(" rational ")" | "true" | "false"
//            | IDENT "(" args? ")" | IDENT | "(" expr ")"
//
// Precedence: not > and > or, both binary operators left-associative.
// Rationals accept decimal (0.99) and fraction (99/100) forms. "#" starts a
// line comment. let/observe/flip/true/false are reserved words.
struct Expr {
  enum class Kind { var, and_op, or_op, not_op, flip, call, literal };
  Kind kind = Kind::var;
  std::string name;        // var, call
  mpq_class prob;          // flip
  bool value = false;      // literal
  std::vector<Expr> args;  // operator operands, call arguments
  std::size_t line = 0, col = 0;
};

struct Stmt {
  bool is_observe = false;
  std::vector<std::string> targets;  // let only
  Expr expr;
  std::size_t line = 0, col = 0;
};

struct FnDef {
  std::string name;
  std::vector<std::string> params;
  std::vector<Stmt> stmts;
  std::vector<Expr> rets;
  std::size_t line = 0, col = 0;
};

struct ProgramAst {
  std::vector<FnDef> functions;
};

// Parse and fully resolve: calls must name functions defined strictly
// earlier (a self or forward call is reported as recursion), variables must
// be defined before use, call arities and result counts must match their
// use. A return list of a single call may be a tuple; everywhere else a call
// must produce exactly one value. All failures throw ErrorKind::parse with
// line:column positions.
ProgramAst parse_program(const std::string& text);

// Lower the program onto the boolean base signature: one hierarchy node per
// function in definition order, nested expressions flattened into
// single-symbol assignments in evaluation order, observe(e) an assignment
// with no outputs, true/false turned into flip(1)/flip(0), one flip symbol
// per distinct probability. The root is the function named by root_fn, or
// the last one when empty.
Hierarchy desugar(const ProgramAst& ast, const std::string& root_fn = "");

// Render a desugared-shaped hierarchy back to surface syntax: every body
// assignment must be a base boolean symbol or a call, each assigned variable
// defined exactly once and not a parameter. Deterministic names: parameters
// a0, a1, ...; assigned variables v<index>.
std::string pretty_print(const Hierarchy& h);

}  // namespace dppc
