#include "dppc/attack.hpp"

#include <random>

#include "doctest.h"
#include "dppc/testkit.hpp"

using namespace dppc;

namespace {

AttackTree::Node leaf(std::string name, std::uint64_t cost) {
  return {std::move(name), AttackTree::Gate::leaf, cost, {}};
}
AttackTree::Node gate(std::string name, AttackTree::Gate g, std::vector<std::size_t> ch) {
  return {std::move(name), g, 0, std::move(ch)};
}

}  // namespace

TEST_CASE("two-leaf gates: or takes the min, and takes the sum") {
  AttackTree t;
  t.nodes = {leaf("a", 3), leaf("b", 7), gate("g", AttackTree::Gate::or_gate, {0, 1})};
  t.root = 2;
  CHECK(attack_min_cost(t) == 3);
  CHECK(attack_min_cost_exhaustive(t) == 3);

  t.nodes[2] = gate("g", AttackTree::Gate::and_gate, {0, 1});
  CHECK(attack_min_cost(t) == 10);
  CHECK(attack_min_cost_exhaustive(t) == 10);

  AttackTree single;
  single.nodes = {leaf("a", 5)};
  CHECK(attack_min_cost(single) == 5);
  CHECK(attack_min_cost_exhaustive(single) == 5);
}

TEST_CASE("a shared basic event is paid for once") {
  // and(x, or(x, y)): triggering x alone satisfies the root
  AttackTree t;
  t.nodes = {leaf("x", 5), leaf("y", 9), gate("o", AttackTree::Gate::or_gate, {0, 1}),
             gate("root", AttackTree::Gate::and_gate, {0, 2})};
  t.root = 3;
  CHECK(attack_min_cost(t) == 5);
  CHECK(attack_min_cost_exhaustive(t) == 5);

  // an unreferenced event is marginalized away at cost 0
  t.nodes.insert(t.nodes.begin() + 2, leaf("z", 100));
  t.nodes[3] = gate("o", AttackTree::Gate::or_gate, {0, 1});
  t.nodes[4] = gate("root", AttackTree::Gate::and_gate, {0, 3});
  t.root = 4;
  CHECK(attack_min_cost(t) == 5);
  CHECK(attack_min_cost_exhaustive(t) == 5);
}

TEST_CASE("wide gates expand to binary chains") {
  AttackTree t;
  t.nodes = {leaf("a", 1), leaf("b", 2), leaf("c", 3),
             gate("g", AttackTree::Gate::and_gate, {0, 1, 2})};
  t.root = 3;
  CHECK(attack_min_cost(t) == 6);
  auto ad = attack_to_diagram(t);
  CHECK(ad.f.var_sort.size() == 5);  // one intermediate for the 3-wide gate

  t.nodes[3] = gate("g", AttackTree::Gate::or_gate, {0, 1, 2});
  CHECK(attack_min_cost(t) == 1);
  CHECK(attack_min_cost_exhaustive(t) == 1);
}

TEST_CASE("attack tree JSON parsing") {
  auto t = parse_attack_tree(R"({
    "nodes": [
      {"name": "steal_key", "cost": 3},
      {"name": "pick_lock", "cost": 7},
      {"name": "enter", "gate": "or", "children": ["steal_key", "pick_lock"]}
    ],
    "root": "enter"
  })");
  CHECK(t.nodes.size() == 3);
  CHECK(t.root == 2);
  CHECK(attack_min_cost(t) == 3);

  // root defaults to the last node
  CHECK(parse_attack_tree(R"({"nodes": [{"name": "a", "cost": 1}]})").root == 0);

  CHECK_THROWS_AS(parse_attack_tree("not json"), Error);
  CHECK_THROWS_AS(parse_attack_tree(R"({"nodes": [{"name": "a"}]})"), Error);
  CHECK_THROWS_AS(parse_attack_tree(R"({"nodes": [{"name": "a", "cost": -2}]})"), Error);
  CHECK_THROWS_AS(
      parse_attack_tree(
          R"({"nodes": [{"name": "g", "gate": "or", "children": ["missing", "missing"]}]})"),
      Error);
  CHECK_THROWS_AS(
      parse_attack_tree(
          R"({"nodes": [{"name": "a", "cost": 1}, {"name": "a", "cost": 2}]})"),
      Error);
  CHECK_THROWS_AS(
      parse_attack_tree(
          R"({"nodes": [{"name": "a", "cost": 1}, {"name": "g", "gate": "xor", "children": ["a", "a"]}]})"),
      Error);
}

TEST_CASE("decomposition pipeline matches exhaustive minimization") {
  std::mt19937_64 rng(4077);
  int evaluated = 0;
  for (int it = 0; it < 60; ++it) {
    AttackTree t;
    std::size_t n_leaves = 3 + rng() % 8;
    for (std::size_t l = 0; l < n_leaves; ++l)
      t.nodes.push_back(leaf("e" + std::to_string(l), rng() % 12));
    std::size_t n_gates = 1 + rng() % 5;
    for (std::size_t g = 0; g < n_gates; ++g) {
      std::size_t width = 2 + rng() % 3;
      std::vector<std::size_t> ch;
      for (std::size_t k = 0; k < width; ++k) ch.push_back(rng() % t.nodes.size());
      t.nodes.push_back(gate("g" + std::to_string(g),
                             rng() % 2 ? AttackTree::Gate::and_gate : AttackTree::Gate::or_gate,
                             std::move(ch)));
    }
    t.root = t.nodes.size() - 1;
    // heavily shared children can realize wide terms; keep the per-matrix
    // budget small and skip the instances that trip it
    EvalLimits lim;
    lim.max_entries = std::size_t(1) << 20;
    std::uint64_t got;
    try {
      got = attack_min_cost(t, lim);
    } catch (const Error& e) {
      CHECK(e.kind == ErrorKind::resource);
      continue;
    }
    ++evaluated;
    CHECK(got == attack_min_cost_exhaustive(t));
  }
  CHECK(evaluated >= 40);
}
