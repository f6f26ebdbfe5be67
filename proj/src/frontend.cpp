#include "dppc/frontend.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "dppc/error.hpp"
#include "dppc/signature.hpp"

namespace dppc {

namespace {

bool is_reserved(const std::string& s) {
  return s == "let" || s == "observe" || s == "flip" || s == "true" || s == "false";
}

struct Tok {
  enum Type { ident, number, lparen, rparen, comma, semi, assign, eq, and_t, or_t, not_t, slash, end };
  Type type = end;
  std::string text;
  std::size_t line = 1, col = 1;
};

[[noreturn]] void fail_at(std::size_t line, std::size_t col, const std::string& msg) {
  raise(ErrorKind::parse,
        "line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

std::vector<Tok> lex(std::string_view s) {
  std::vector<Tok> out;
  std::size_t pos = 0, line = 1, col = 1;
  auto advance = [&](std::size_t k) {
    while (k--) {
      if (s[pos] == '\n') ++line, col = 1;
      else ++col;
      ++pos;
    }
  };
  auto starts = [&](std::string_view p) { return s.substr(pos, p.size()) == p; };

  while (true) {
    while (pos < s.size() &&
           (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r' || s[pos] == '\n'))
      advance(1);
    if (pos < s.size() && s[pos] == '#') {
      while (pos < s.size() && s[pos] != '\n') advance(1);
      continue;
    }
    Tok t;
    t.line = line;
    t.col = col;
    if (pos >= s.size()) {
      out.push_back(t);  // type end
      out.push_back(t);  // padding so two-token lookahead is always in range
      out.push_back(t);
      return out;
    }
    char c = s[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        advance(1);
      t.type = Tok::ident;
      t.text = std::string(s.substr(b, pos - b));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) advance(1);
      if (pos + 1 < s.size() && s[pos] == '.' &&
          std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
        advance(1);
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) advance(1);
      }
      t.type = Tok::number;
      t.text = std::string(s.substr(b, pos - b));
    } else if (starts(":=")) {
      t.type = Tok::assign;
      advance(2);
    } else if (starts("&&") || starts("\xE2\x88\xA7")) {
      t.type = Tok::and_t;
      advance(starts("&&") ? 2 : 3);
    } else if (starts("||") || starts("\xE2\x88\xA8")) {
      t.type = Tok::or_t;
      advance(starts("||") ? 2 : 3);
    } else if (c == '!' || starts("\xC2\xAC")) {
      t.type = Tok::not_t;
      advance(c == '!' ? 1 : 2);
    } else if (c == '(') {
      t.type = Tok::lparen;
      advance(1);
    } else if (c == ')') {
      t.type = Tok::rparen;
      advance(1);
    } else if (c == ',') {
      t.type = Tok::comma;
      advance(1);
    } else if (c == ';') {
      t.type = Tok::semi;
      advance(1);
    } else if (c == '=') {
      t.type = Tok::eq;
      advance(1);
    } else if (c == '/') {
      t.type = Tok::slash;
      advance(1);
    } else {
      fail_at(line, col, "unexpected character");
    }
    out.push_back(std::move(t));
  }
}

struct Parser {
  std::vector<Tok> ts;
  std::size_t i = 0;

  const Tok& peek(std::size_t k = 0) const { return ts[std::min(i + k, ts.size() - 1)]; }
  const Tok& take() { return ts[std::min(i++, ts.size() - 1)]; }
  [[noreturn]] void fail(const std::string& msg) const {
    fail_at(peek().line, peek().col, msg);
  }
  void expect(Tok::Type ty, const char* what) {
    if (peek().type != ty) fail(std::string("expected ") + what);
    ++i;
  }
  std::string take_name(const char* what) {
    if (peek().type != Tok::ident) fail(std::string("expected ") + what);
    if (is_reserved(peek().text)) fail("'" + peek().text + "' is reserved");
    return take().text;
  }

  // IDENT "(" idents? ")" ":=" starts a function definition; used to end the
  // return list of the previous function
  bool at_fndef() const {
    if (peek().type != Tok::ident || is_reserved(peek().text)) return false;
    if (peek(1).type != Tok::lparen) return false;
    std::size_t k = 2;
    if (peek(k).type == Tok::ident && !is_reserved(peek(k).text)) {
      ++k;
      while (peek(k).type == Tok::comma && peek(k + 1).type == Tok::ident &&
             !is_reserved(peek(k + 1).text))
        k += 2;
    }
    return peek(k).type == Tok::rparen && peek(k + 1).type == Tok::assign;
  }

  mpq_class parse_rational() {
    if (peek().type != Tok::number) fail("expected a probability");
    Tok first = take();
    mpq_class r;
    if (peek().type == Tok::slash) {
      take();
      if (peek().type != Tok::number) fail("expected a denominator");
      Tok second = take();
      if (first.text.find('.') != std::string::npos ||
          second.text.find('.') != std::string::npos)
        fail_at(first.line, first.col, "fraction parts must be integers");
      mpz_class den(second.text);
      if (den == 0) fail_at(second.line, second.col, "zero denominator");
      r = mpq_class(mpz_class(first.text, 10), den);
      r.canonicalize();
    } else {
      auto dot = first.text.find('.');
      if (dot == std::string::npos) {
        r = mpq_class(mpz_class(first.text, 10));
      } else {
        std::string digits = first.text.substr(0, dot) + first.text.substr(dot + 1);
        mpz_class den = 1;
        for (std::size_t k = dot + 1; k < first.text.size(); ++k) den *= 10;
        r = mpq_class(mpz_class(digits, 10), den);
        r.canonicalize();
      }
    }
    if (r < 0 || r > 1)
      fail_at(first.line, first.col, "flip probability outside [0,1]");
    return r;
  }

  Expr parse_atom() {
    const Tok& t = peek();
    Expr e;
    e.line = t.line;
    e.col = t.col;
    if (t.type == Tok::lparen) {
      take();
      e = parse_expr();
      expect(Tok::rparen, "')'");
      return e;
    }
    if (t.type != Tok::ident) fail("expected an expression");
    if (t.text == "flip") {
      take();
      expect(Tok::lparen, "'('");
      e.kind = Expr::Kind::flip;
      e.prob = parse_rational();
      expect(Tok::rparen, "')'");
      return e;
    }
    if (t.text == "true" || t.text == "false") {
      e.kind = Expr::Kind::literal;
      e.value = t.text == "true";
      take();
      return e;
    }
    if (is_reserved(t.text)) fail("'" + t.text + "' is reserved");
    e.name = take().text;
    if (peek().type == Tok::lparen) {
      take();
      e.kind = Expr::Kind::call;
      if (peek().type != Tok::rparen) {
        e.args.push_back(parse_expr());
        while (peek().type == Tok::comma) {
          take();
          e.args.push_back(parse_expr());
        }
      }
      expect(Tok::rparen, "')'");
      return e;
    }
    e.kind = Expr::Kind::var;
    return e;
  }

  Expr parse_unary() {
    if (peek().type == Tok::not_t) {
      Expr e;
      e.line = peek().line;
      e.col = peek().col;
      take();
      e.kind = Expr::Kind::not_op;
      e.args.push_back(parse_unary());
      return e;
    }
    return parse_atom();
  }

  Expr parse_binary(bool or_level) {
    Expr l = or_level ? parse_binary(false) : parse_unary();
    Tok::Type op = or_level ? Tok::or_t : Tok::and_t;
    while (peek().type == op) {
      Expr e;
      e.line = peek().line;
      e.col = peek().col;
      take();
      e.kind = or_level ? Expr::Kind::or_op : Expr::Kind::and_op;
      e.args.push_back(std::move(l));
      e.args.push_back(or_level ? parse_binary(false) : parse_unary());
      l = std::move(e);
    }
    return l;
  }

  Expr parse_expr() { return parse_binary(true); }

  Stmt parse_stmt() {
    Stmt st;
    st.line = peek().line;
    st.col = peek().col;
    if (peek().text == "observe") {
      take();
      st.is_observe = true;
      expect(Tok::lparen, "'('");
      st.expr = parse_expr();
      expect(Tok::rparen, "')'");
      expect(Tok::semi, "';'");
      return st;
    }
    take();  // "let"
    st.targets.push_back(take_name("a variable name"));
    while (peek().type == Tok::comma) {
      take();
      st.targets.push_back(take_name("a variable name"));
    }
    expect(Tok::eq, "'='");
    st.expr = parse_expr();
    expect(Tok::semi, "';'");
    return st;
  }

  FnDef parse_fndef() {
    FnDef fn;
    fn.line = peek().line;
    fn.col = peek().col;
    fn.name = take_name("a function name");
    expect(Tok::lparen, "'('");
    if (peek().type != Tok::rparen) {
      fn.params.push_back(take_name("a parameter name"));
      while (peek().type == Tok::comma) {
        take();
        fn.params.push_back(take_name("a parameter name"));
      }
    }
    expect(Tok::rparen, "')'");
    expect(Tok::assign, "':='");
    while (peek().type == Tok::ident && (peek().text == "let" || peek().text == "observe"))
      fn.stmts.push_back(parse_stmt());
    fn.rets.push_back(parse_expr());
    while (peek().type == Tok::comma) {
      take();
      fn.rets.push_back(parse_expr());
    }
    return fn;
  }
};

// Resolution pass: everything the grammar cannot express. fn_index maps the
// names defined so far, ret_count their result arities.
struct Resolver {
  const std::vector<FnDef>& fns;
  std::map<std::string, std::size_t> fn_index;
  std::vector<std::size_t> ret_counts;
  std::size_t current = 0;
  std::set<std::string> scope;

  void check_expr(const Expr& e, bool tuple_ok) {
    switch (e.kind) {
      case Expr::Kind::var:
        if (!scope.count(e.name))
          fail_at(e.line, e.col, "undefined variable '" + e.name + "'");
        break;
      case Expr::Kind::flip:
      case Expr::Kind::literal:
        break;
      case Expr::Kind::not_op:
      case Expr::Kind::and_op:
      case Expr::Kind::or_op:
        for (const Expr& a : e.args) check_expr(a, false);
        break;
      case Expr::Kind::call: {
        auto it = fn_index.find(e.name);
        if (it == fn_index.end()) {
          bool later = std::any_of(fns.begin() + std::ptrdiff_t(current), fns.end(),
                                   [&](const FnDef& f) { return f.name == e.name; });
          if (later)
            fail_at(e.line, e.col, "recursive call to '" + e.name +
                                       "': functions may only call earlier definitions");
          fail_at(e.line, e.col, "call to undefined function '" + e.name + "'");
        }
        const FnDef& callee = fns[it->second];
        if (e.args.size() != callee.params.size())
          fail_at(e.line, e.col, "'" + e.name + "' takes " +
                                     std::to_string(callee.params.size()) + " arguments, got " +
                                     std::to_string(e.args.size()));
        if (!tuple_ok && ret_counts[it->second] != 1)
          fail_at(e.line, e.col, "'" + e.name + "' returns " +
                                     std::to_string(ret_counts[it->second]) +
                                     " values and cannot be used as a single expression");
        for (const Expr& a : e.args) check_expr(a, false);
        break;
      }
    }
  }

  void run() {
    for (current = 0; current < fns.size(); ++current) {
      const FnDef& fn = fns[current];
      if (fn_index.count(fn.name))
        fail_at(fn.line, fn.col, "function '" + fn.name + "' is already defined");

      scope.clear();
      for (const std::string& p : fn.params)
        if (!scope.insert(p).second)
          fail_at(fn.line, fn.col, "duplicate parameter '" + p + "'");

      for (const Stmt& st : fn.stmts) {
        if (st.is_observe) {
          check_expr(st.expr, false);
          continue;
        }
        bool tuple = st.targets.size() > 1;
        check_expr(st.expr, tuple);
        if (tuple) {
          if (st.expr.kind != Expr::Kind::call)
            fail_at(st.line, st.col, "only a call can bind multiple variables");
          std::size_t n = ret_counts[fn_index.at(st.expr.name)];
          if (n != st.targets.size())
            fail_at(st.line, st.col, "'" + st.expr.name + "' returns " + std::to_string(n) +
                                         " values, bound to " +
                                         std::to_string(st.targets.size()));
        }
        std::set<std::string> uniq(st.targets.begin(), st.targets.end());
        if (uniq.size() != st.targets.size())
          fail_at(st.line, st.col, "duplicate binding in one let");
        for (const std::string& t : st.targets) scope.insert(t);
      }

      bool tuple_ret = fn.rets.size() == 1 && fn.rets[0].kind == Expr::Kind::call;
      for (const Expr& r : fn.rets) check_expr(r, tuple_ret);
      std::size_t n_ret = fn.rets.size();
      if (tuple_ret) n_ret = ret_counts[fn_index.at(fn.rets[0].name)];

      fn_index.emplace(fn.name, current);
      ret_counts.push_back(n_ret);
    }
  }
};

}  // namespace

ProgramAst parse_program(const std::string& text) {
  Parser p{lex(text)};
  ProgramAst ast;
  if (p.peek().type == Tok::end) p.fail("expected a function definition");
  while (p.peek().type != Tok::end) {
    if (!ast.functions.empty() && !p.at_fndef()) p.fail("expected a function definition");
    ast.functions.push_back(p.parse_fndef());
  }
  Resolver{ast.functions, {}, {}, 0, {}}.run();
  return ast;
}

namespace {

// Per-function lowering: a scope from names to body variables plus a fresh
// temporary per flattened subexpression, in evaluation order.
struct Lowerer {
  const Hierarchy& h;
  BoolStochSig& bs;
  const std::map<std::string, std::size_t>& fn_index;
  const std::vector<std::size_t>& ret_counts;
  Diagram body;
  std::map<std::string, VarId> scope;

  VarId fresh() {
    body.var_sort.push_back(bs.bool_sort);
    return VarId(body.var_sort.size() - 1);
  }

  VarId lower_expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::var:
        return scope.at(e.name);
      case Expr::Kind::literal:
      case Expr::Kind::flip: {
        mpq_class p = e.kind == Expr::Kind::flip ? e.prob : mpq_class(e.value ? 1 : 0);
        VarId v = fresh();
        body.assignments.push_back({{v}, bs.flip(p), {}});
        return v;
      }
      case Expr::Kind::not_op: {
        VarId a = lower_expr(e.args[0]);
        VarId v = fresh();
        body.assignments.push_back({{v}, bs.sym_not, {a}});
        return v;
      }
      case Expr::Kind::and_op:
      case Expr::Kind::or_op: {
        VarId a = lower_expr(e.args[0]);
        VarId b = lower_expr(e.args[1]);
        VarId v = fresh();
        body.assignments.push_back(
            {{v}, e.kind == Expr::Kind::and_op ? bs.sym_and : bs.sym_or, {a, b}});
        return v;
      }
      case Expr::Kind::call: {
        auto outs = lower_call(e);
        assert(outs.size() == 1);
        return outs[0];
      }
    }
    assert(false);
    return 0;
  }

  std::vector<VarId> lower_call(const Expr& e) {
    std::vector<VarId> ins;
    for (const Expr& a : e.args) ins.push_back(lower_expr(a));
    std::size_t callee = fn_index.at(e.name);
    std::vector<VarId> outs;
    for (std::size_t k = 0; k < ret_counts[callee]; ++k) outs.push_back(fresh());
    body.assignments.push_back({outs, h.call_symbol(NodeId(callee)), std::move(ins)});
    return outs;
  }

  Diagram lower(const FnDef& fn) {
    for (const std::string& p : fn.params) {
      VarId v = fresh();
      scope.emplace(p, v);
      body.in.push_back(v);
    }
    for (const Stmt& st : fn.stmts) {
      if (st.is_observe) {
        VarId v = lower_expr(st.expr);
        body.assignments.push_back({{}, bs.sym_observe, {v}});
      } else if (st.targets.size() > 1) {
        auto outs = lower_call(st.expr);
        for (std::size_t k = 0; k < outs.size(); ++k) scope[st.targets[k]] = outs[k];
      } else {
        scope[st.targets[0]] = lower_expr(st.expr);
      }
    }
    if (fn.rets.size() == 1 && fn.rets[0].kind == Expr::Kind::call) {
      body.out = lower_call(fn.rets[0]);
    } else {
      for (const Expr& r : fn.rets) body.out.push_back(lower_expr(r));
    }
    return std::move(body);
  }
};

void collect_flips(const Expr& e, BoolStochSig& bs) {
  if (e.kind == Expr::Kind::flip) bs.flip(e.prob);
  if (e.kind == Expr::Kind::literal) bs.flip(e.value ? 1 : 0);
  for (const Expr& a : e.args) collect_flips(a, bs);
}

}  // namespace

Hierarchy desugar(const ProgramAst& ast, const std::string& root_fn) {
  check(!ast.functions.empty(), ErrorKind::validation, "program has no functions");

  // the base signature is shared by all nodes: flips interned in program
  // appearance order, then one call symbol per function
  BoolStochSig bs;
  for (const FnDef& fn : ast.functions) {
    for (const Stmt& st : fn.stmts) collect_flips(st.expr, bs);
    for (const Expr& r : fn.rets) collect_flips(r, bs);
  }

  std::map<std::string, std::size_t> fn_index;
  std::vector<std::size_t> ret_counts;
  for (std::size_t k = 0; k < ast.functions.size(); ++k) {
    const FnDef& fn = ast.functions[k];
    std::size_t n = fn.rets.size();
    if (n == 1 && fn.rets[0].kind == Expr::Kind::call)
      n = ret_counts[fn_index.at(fn.rets[0].name)];
    fn_index.emplace(fn.name, k);
    ret_counts.push_back(n);
  }

  Hierarchy h;
  h.sig = bs.sig;
  h.n_base = bs.sig.symbols.size();
  for (std::size_t k = 0; k < ast.functions.size(); ++k) {
    const FnDef& fn = ast.functions[k];
    h.sig.add_symbol({fn.name, std::vector<SortId>(fn.params.size(), bs.bool_sort),
                      std::vector<SortId>(ret_counts[k], bs.bool_sort), std::nullopt});
    Lowerer lw{h, bs, fn_index, ret_counts, {}, {}};
    h.nodes.push_back({fn.name, lw.lower(fn)});
  }
  // flips interned during lowering already existed from the collection pass
  assert(h.n_base == bs.sig.symbols.size());

  if (root_fn.empty()) {
    h.root = NodeId(h.nodes.size() - 1);
  } else {
    auto it = fn_index.find(root_fn);
    check(it != fn_index.end(), ErrorKind::validation,
          "no function named '" + root_fn + "'");
    h.root = NodeId(it->second);
  }
  validate(h);
  return h;
}

std::string pretty_print(const Hierarchy& h) {
  // classify the base symbols of a boolean program signature
  std::optional<SymbolId> s_and, s_or, s_not, s_observe;
  for (SymbolId s = 0; s < h.n_base; ++s) {
    const SymbolInfo& info = h.sig.symbols[s];
    if (info.name == "and") s_and = s;
    if (info.name == "or") s_or = s;
    if (info.name == "not") s_not = s;
    if (info.name == "observe") s_observe = s;
  }

  std::ostringstream out;
  for (std::size_t k = 0; k < h.nodes.size(); ++k) {
    const Diagram& body = h.nodes[k].body;

    std::vector<std::string> var_name(body.n_vars());
    std::vector<char> named(body.n_vars(), 0);
    for (std::size_t p = 0; p < body.in.size(); ++p) {
      VarId v = body.in[p];
      check(!named[v], ErrorKind::validation, "parameter repeated; not in program form");
      var_name[v] = "a" + std::to_string(p);
      named[v] = 1;
    }
    for (const Assignment& a : body.assignments)
      for (VarId v : a.outs) {
        check(!named[v], ErrorKind::validation,
              "variable defined twice; not in program form");
        var_name[v] = "v" + std::to_string(v);
        named[v] = 1;
      }
    for (VarId v = 0; v < body.n_vars(); ++v)
      check(named[v], ErrorKind::validation, "variable never defined; not in program form");

    out << h.nodes[k].name << "(";
    for (std::size_t p = 0; p < body.in.size(); ++p)
      out << (p ? ", " : "") << var_name[body.in[p]];
    out << ") :=\n";

    auto args_of = [&](const Assignment& a) {
      std::string r;
      for (std::size_t j = 0; j < a.ins.size(); ++j)
        r += (j ? ", " : "") + var_name[a.ins[j]];
      return r;
    };
    for (const Assignment& a : body.assignments) {
      const SymbolInfo& info = h.sig.symbols[a.sym];
      out << "  ";
      if (s_observe && a.sym == *s_observe) {
        out << "observe(" << var_name[a.ins[0]] << ");\n";
        continue;
      }
      out << "let ";
      for (std::size_t j = 0; j < a.outs.size(); ++j)
        out << (j ? ", " : "") << var_name[a.outs[j]];
      out << " = ";
      if (s_and && a.sym == *s_and)
        out << var_name[a.ins[0]] << " \xE2\x88\xA7 " << var_name[a.ins[1]];
      else if (s_or && a.sym == *s_or)
        out << var_name[a.ins[0]] << " \xE2\x88\xA8 " << var_name[a.ins[1]];
      else if (s_not && a.sym == *s_not)
        out << "\xC2\xAC" << var_name[a.ins[0]];
      else if (info.param)
        out << "flip(" << info.param->get_str() << ")";
      else if (h.is_call(a.sym))
        out << h.nodes[h.callee(a.sym)].name << "(" << args_of(a) << ")";
      else
        raise(ErrorKind::validation,
              "symbol '" + info.name + "' has no surface form; not in program form");
      out << ";\n";
    }

    out << "  ";
    check(!body.out.empty(), ErrorKind::validation,
          "function without returns; not in program form");
    for (std::size_t j = 0; j < body.out.size(); ++j)
      out << (j ? ", " : "") << var_name[body.out[j]];
    out << "\n\n";
  }
  return out.str();
}

}  // namespace dppc
