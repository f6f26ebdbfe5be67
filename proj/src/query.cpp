#include "dppc/query.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "dppc/algebraise.hpp"
#include "dppc/circuit.hpp"

namespace dppc {

void validate(const ConjunctiveQuery& q) {
  check(q.relations.size() == q.arity.size(), ErrorKind::validation,
        "relation table misaligned");
  std::vector<char> used(q.n_vars(), 0);
  for (VarId v : q.free_vars) {
    check(v < q.n_vars(), ErrorKind::validation, "free variable out of range");
    used[v] = 1;
  }
  for (const auto& a : q.atoms) {
    check(a.rel < q.relations.size(), ErrorKind::validation, "atom relation out of range");
    check(a.args.size() == q.arity[a.rel], ErrorKind::validation,
          "atom arity mismatch for " + q.relations[a.rel]);
    for (VarId v : a.args) {
      check(v < q.n_vars(), ErrorKind::validation, "atom variable out of range");
      used[v] = 1;
    }
  }
  for (std::size_t v = 0; v < q.n_vars(); ++v)
    check(used[v], ErrorKind::validation, "variable " + q.var_names[v] + " occurs nowhere");
}

namespace {

struct QueryLexer {
  std::string_view s;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < s.size()) {
      if (s[pos] == '#') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
      } else {
        return;
      }
    }
  }

  // "", an identifier, or a single punctuation token (":-" stays together)
  std::string next() {
    skip_space();
    if (pos >= s.size()) return "";
    char c = s[pos];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      return std::string(s.substr(start, pos - start));
    }
    if (c == ':' && pos + 1 < s.size() && s[pos + 1] == '-') {
      pos += 2;
      return ":-";
    }
    ++pos;
    return std::string(1, c);
  }
};

bool is_ident(const std::string& t) {
  return !t.empty() && (std::isalnum(static_cast<unsigned char>(t[0])) || t[0] == '_');
}

}  // namespace

ConjunctiveQuery parse_query(const std::string& text) {
  QueryLexer lx{text};
  ConjunctiveQuery q;
  std::map<std::string, VarId> var_of;
  std::map<std::string, std::size_t> rel_of;

  auto intern_var = [&](const std::string& name) {
    auto [it, fresh] = var_of.emplace(name, VarId(q.var_names.size()));
    if (fresh) q.var_names.push_back(name);
    return it->second;
  };
  auto expect = [&](const std::string& want) {
    std::string t = lx.next();
    check(t == want, ErrorKind::parse,
          "expected '" + want + "', got '" + (t.empty() ? "end of input" : t) + "'");
  };
  // ident '(' [ident {',' ident}] ')'
  auto parse_args = [&]() {
    std::vector<VarId> args;
    expect("(");
    std::string t = lx.next();
    while (t != ")") {
      check(is_ident(t), ErrorKind::parse, "expected a variable, got '" + t + "'");
      args.push_back(intern_var(t));
      t = lx.next();
      if (t == ",") {
        t = lx.next();
        check(is_ident(t), ErrorKind::parse, "expected a variable after ','");
      } else {
        check(t == ")", ErrorKind::parse, "expected ',' or ')' in argument list");
      }
    }
    return args;
  };

  std::string head = lx.next();
  check(is_ident(head), ErrorKind::parse, "expected a query head");
  q.free_vars = parse_args();

  std::string t = lx.next();
  if (t == ":-") {
    t = lx.next();
    while (is_ident(t)) {
      auto [it, fresh] = rel_of.emplace(t, q.relations.size());
      std::vector<VarId> args = parse_args();
      if (fresh) {
        q.relations.push_back(t);
        q.arity.push_back(args.size());
      } else {
        check(q.arity[it->second] == args.size(), ErrorKind::parse,
              "relation " + t + " used with two different arities");
      }
      q.atoms.push_back({it->second, std::move(args)});
      t = lx.next();
      if (t != ",") break;
      t = lx.next();
    }
  }
  if (t == ".") t = lx.next();
  check(t.empty(), ErrorKind::parse, "trailing input after the query: '" + t + "'");
  validate(q);
  return q;
}

RelationalInstance load_instance_csv(std::istream& in, const ConjunctiveQuery& q) {
  RelationalInstance A;
  A.tuples.resize(q.relations.size());
  std::map<std::string, std::size_t> elem_of;
  auto intern = [&](const std::string& v) {
    auto [it, fresh] = elem_of.emplace(v, A.elements.size());
    if (fresh) A.elements.push_back(v);
    return it->second;
  };
  auto trim = [](std::string v) {
    std::size_t a = v.find_first_not_of(" \t\r");
    std::size_t b = v.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
  };

  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(trim(field));
    if (fields.empty() || fields[0].empty() || fields[0][0] == '#') continue;

    auto rel = std::find(q.relations.begin(), q.relations.end(), fields[0]);
    check(rel != q.relations.end(), ErrorKind::validation,
          "unknown relation in instance: " + fields[0]);
    std::size_t r = std::size_t(rel - q.relations.begin());
    check(fields.size() - 1 == q.arity[r], ErrorKind::validation,
          "tuple arity mismatch for " + fields[0]);
    std::vector<std::size_t> tuple;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      check(!fields[i].empty(), ErrorKind::validation, "empty value in " + fields[0]);
      tuple.push_back(intern(fields[i]));
    }
    A.tuples[r].push_back(std::move(tuple));
  }
  for (auto& ts : A.tuples) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  }
  return A;
}

QueryDiagram query_to_diagram(const ConjunctiveQuery& q) {
  validate(q);
  QueryDiagram qd;
  SortId d = qd.sig.add_sort("D");
  for (std::size_t r = 0; r < q.relations.size(); ++r)
    qd.sig.add_symbol({q.relations[r], std::vector<SortId>(q.arity[r], d), {}, {}});

  qd.f.var_sort.assign(q.n_vars(), d);
  for (const auto& a : q.atoms) qd.f.assignments.push_back({{}, SymbolId(a.rel), a.args});
  qd.f.in = q.free_vars;
  validate(qd.sig, qd.f);
  return qd;
}

Interpretation<BoolSemiring> instance_to_interpretation(const ConjunctiveQuery& q,
                                                        const RelationalInstance& A) {
  check(A.domain() > 0, ErrorKind::validation, "instance has an empty domain");
  Interpretation<BoolSemiring> I;
  I.dim.assign(1, A.domain());
  for (std::size_t r = 0; r < q.relations.size(); ++r) {
    std::size_t cols = checked_dim_product(
        std::vector<std::size_t>(q.arity[r], A.domain()), std::size_t(1) << 20, "relation");
    Matrix<std::uint8_t> m(1, cols, 0);
    for (const auto& t : A.tuples[r]) {
      std::size_t idx = 0;
      for (std::size_t v : t) {
        check(v < A.domain(), ErrorKind::validation, "tuple value out of domain");
        idx = idx * A.domain() + v;
      }
      m.at(0, idx) = 1;
    }
    I.sym.push_back(std::move(m));
  }
  return I;
}

std::vector<std::vector<std::size_t>> eval_query(const ConjunctiveQuery& q,
                                                 const RelationalInstance& A,
                                                 const EvalLimits& lim) {
  QueryDiagram qd = query_to_diagram(q);
  auto I = instance_to_interpretation(q, A);
  auto R = algebrise(qd.sig, qd.f);
  // the circuit path keeps wiring sparse, so wide interfaces cost gates only
  // where tuples actually meet
  BoolSemiring alg;
  auto ct = compile_term(alg, *R.store, I, R.root, lim);
  auto vals = eval_circuit(alg, ct.circuit);
  assert(ct.rows == 1);

  std::vector<std::vector<std::size_t>> out;
  for (std::size_t idx = 0; idx < ct.cols; ++idx) {
    if (!vals[ct.root_at(0, idx)]) continue;
    std::vector<std::size_t> tuple(q.free_vars.size());
    std::size_t rest = idx;
    for (std::size_t i = tuple.size(); i-- > 0;) {
      tuple[i] = rest % A.domain();
      rest /= A.domain();
    }
    out.push_back(std::move(tuple));
  }
  return out;  // ascending by construction: row-major index order
}

std::vector<std::vector<std::size_t>> naive_join(const ConjunctiveQuery& q,
                                                 const RelationalInstance& A) {
  validate(q);
  std::vector<std::set<std::vector<std::size_t>>> have(q.relations.size());
  for (std::size_t r = 0; r < q.relations.size(); ++r)
    have[r].insert(A.tuples[r].begin(), A.tuples[r].end());

  std::set<std::vector<std::size_t>> out;
  std::vector<std::size_t> asg(q.n_vars(), 0);
  if (A.domain() == 0 && q.n_vars() > 0) return {};
  for (;;) {
    bool ok = true;
    for (const auto& a : q.atoms) {
      std::vector<std::size_t> t;
      for (VarId v : a.args) t.push_back(asg[v]);
      if (!have[a.rel].count(t)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<std::size_t> tuple;
      for (VarId v : q.free_vars) tuple.push_back(asg[v]);
      out.insert(std::move(tuple));
    }
    std::size_t i = 0;
    while (i < asg.size() && ++asg[i] == A.domain()) asg[i++] = 0;
    if (i == asg.size()) break;
  }
  return {out.begin(), out.end()};
}

}  // namespace dppc
