#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dppc/diagram.hpp"
#include "dppc/interpret.hpp"
#include "dppc/term.hpp"

namespace dppc {

// Conjunctive query: an existentially quantified conjunction of relational
// atoms with an ordered tuple of free variables. Variables are 0..n_vars-1;
// the non-free ones are implicitly existential.
struct ConjunctiveQuery {
  std::vector<std::string> relations;  // names, parallel to arity
  std::vector<std::size_t> arity;
  std::vector<std::string> var_names;  // one per variable
  std::vector<VarId> free_vars;        // the query's head, in order
  struct Atom {
    std::size_t rel;
    std::vector<VarId> args;
  };
  std::vector<Atom> atoms;

  std::size_t n_vars() const { return var_names.size(); }
};

void validate(const ConjunctiveQuery& q);

// Datalog-style rule, e.g. "q(u, c) :- bookings(u, h, d), hotels(h, p),
// cities(c, p, k)." Relation arities are inferred from first use; '#' starts
// a comment; the final period is optional.
ConjunctiveQuery parse_query(const std::string& text);

// Tuple sets per relation over a domain of named elements.
struct RelationalInstance {
  std::vector<std::string> elements;  // domain is 0..elements.size()-1
  std::vector<std::vector<std::vector<std::size_t>>> tuples;  // per relation

  std::size_t domain() const { return elements.size(); }
};

// CSV rows "relation,value,value,..."; the domain is the set of values seen.
// Rejects unknown relations and arity mismatches against q.
RelationalInstance load_instance_csv(std::istream& in, const ConjunctiveQuery& q);

// One sort for the domain; one input-only symbol per relation; one
// zero-output assignment per atom; diagram inputs = the free variables.
struct QueryDiagram {
  Signature sig;
  Diagram f;
};
QueryDiagram query_to_diagram(const ConjunctiveQuery& q);

// Each relation as its 0/1 characteristic row: entry one at the mixed-radix
// index of each tuple (first argument most significant).
Interpretation<BoolSemiring> instance_to_interpretation(const ConjunctiveQuery& q,
                                                        const RelationalInstance& A);

// The satisfying assignments of the free variables, as element-index tuples
// in ascending order. eval_query goes through decomposition and term
// evaluation; naive_join enumerates all assignments directly.
std::vector<std::vector<std::size_t>> eval_query(const ConjunctiveQuery& q,
                                                 const RelationalInstance& A,
                                                 const EvalLimits& lim = {});
std::vector<std::vector<std::size_t>> naive_join(const ConjunctiveQuery& q,
                                                 const RelationalInstance& A);

}  // namespace dppc
