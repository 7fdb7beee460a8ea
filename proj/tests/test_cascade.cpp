#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rumornet/cascade.hpp"
#include "rumornet/errors.hpp"

using namespace rumornet;

namespace {

UserNode user(const std::string& id) {
  UserNode u;
  u.id = id;
  return u;
}

InformationGraph star(std::size_t leaves) {
  InformationGraph g;
  g.add_user(user("hub"));
  for (std::size_t i = 0; i < leaves; ++i) {
    std::string leaf = "leaf" + std::to_string(i);
    g.add_user(user(leaf));
    g.add_edge("hub", leaf, 1);
  }
  return g;
}

InformationGraph random_graph(std::mt19937_64& rng, std::size_t n,
                              double edge_prob, std::uint64_t max_weight) {
  InformationGraph g;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id = "n" + std::to_string(i);
    ids.push_back(id);
    g.add_user(user(id));
  }
  std::uniform_real_distribution<double> unit(0, 1);
  for (const auto& a : ids)
    for (const auto& b : ids)
      if (a != b && unit(rng) < edge_prob)
        g.add_edge(a, b, 1 + rng() % max_weight);
  return g;
}

std::set<UserId> infected_set(const CascadeResult& r) {
  std::set<UserId> out;
  for (const auto& [id, role] : r.final_roles)
    if (role != Role::Ordinary) out.insert(id);
  return out;
}

}  // namespace

TEST_CASE("run_cascade hand-simulated traces") {
  SUBCASE("star, phi=1: all leaves flip in the first round") {
    auto g = star(5);
    CascadeConfig c;
    c.phi = 1;
    c.seed_users = {"hub"};
    auto r = run_cascade(g, c);
    CHECK(r.converged);
    CHECK(r.iterations_run == 2);
    REQUIRE(r.infected_fraction_per_iteration.size() == 2);
    CHECK(r.infected_fraction_per_iteration[0] == doctest::Approx(1.0));
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(r.final_roles.at("leaf" + std::to_string(i)) == Role::Infected);
    CHECK(r.final_roles.at("hub") == Role::Seed);
  }

  SUBCASE("star, phi=2: weight-1 edges need two rounds of accumulation") {
    auto g = star(5);
    CascadeConfig c;
    c.phi = 2;
    c.seed_users = {"hub"};
    auto r = run_cascade(g, c);
    CHECK(r.converged);
    CHECK(r.iterations_run == 3);
    REQUIRE(r.infected_fraction_per_iteration.size() == 3);
    CHECK(r.infected_fraction_per_iteration[0] == doctest::Approx(1.0 / 6.0));
    CHECK(r.infected_fraction_per_iteration[1] == doctest::Approx(1.0));
    CHECK(r.infected_fraction_per_iteration[2] == doctest::Approx(1.0));
  }

  SUBCASE("path A->B->C, phi=1: one hop per round") {
    InformationGraph g;
    for (const char* id : {"A", "B", "C"}) g.add_user(user(id));
    g.add_edge("A", "B", 1);
    g.add_edge("B", "C", 1);
    CascadeConfig c;
    c.phi = 1;
    c.seed_users = {"A"};
    auto r = run_cascade(g, c);
    CHECK(r.converged);
    CHECK(r.iterations_run == 3);
    CHECK(r.infected_fraction_per_iteration[0] == doctest::Approx(2.0 / 3.0));
    CHECK(r.infected_fraction_per_iteration[1] == doctest::Approx(1.0));
    CHECK(r.final_roles.at("C") == Role::Infected);
  }

  SUBCASE("path with infected_transmit off stops after one hop") {
    InformationGraph g;
    for (const char* id : {"A", "B", "C"}) g.add_user(user(id));
    g.add_edge("A", "B", 1);
    g.add_edge("B", "C", 1);
    CascadeConfig c;
    c.phi = 1;
    c.seed_users = {"A"};
    c.infected_transmit = false;
    auto r = run_cascade(g, c);
    CHECK(r.converged);
    CHECK(r.final_roles.at("B") == Role::Infected);
    CHECK(r.final_roles.at("C") == Role::Ordinary);
  }

  SUBCASE("complete weight-1 digraph, one seed, phi=1: all flip at once") {
    std::mt19937_64 rng(0);
    auto g = random_graph(rng, 10, 1.1, 1);  // prob > 1 forces every edge
    CascadeConfig c;
    c.phi = 1;
    c.seed_users = {"n0"};
    auto r = run_cascade(g, c);
    CHECK(r.infected_fraction_per_iteration[0] == doctest::Approx(1.0));
    CHECK(r.converged);
  }

  SUBCASE("spreaders transmit from the first round") {
    auto g = star(2);
    g.add_user(user("extra"));
    g.add_edge("extra", "leaf0", 1);
    CascadeConfig c;
    c.phi = 2;
    c.seed_users = {"hub"};
    c.spreader_users = {"extra"};
    auto r = run_cascade(g, c);
    // leaf0 sees weight 2 in round one, leaf1 only accumulates 1 per round.
    CHECK(r.final_roles.at("leaf0") == Role::Infected);
    CHECK(r.infected_fraction_per_iteration[0] == doctest::Approx(3.0 / 4.0));
  }
}

TEST_CASE("run_cascade config validation") {
  auto g = star(2);
  CascadeConfig c;
  CHECK_THROWS_AS(run_cascade(g, c), ConfigError);  // empty seeds
  c.seed_users = {"ghost"};
  CHECK_THROWS_AS(run_cascade(g, c), MissingNodeError);
  c.seed_users = {"hub"};
  c.per_node_thresholds = true;
  c.threshold_lo = 5;
  c.threshold_hi = 2;
  CHECK_THROWS_AS(run_cascade(g, c), RangeError);
}

TEST_CASE("no-edge graph converges immediately at the seed fraction") {
  InformationGraph g;
  for (int i = 0; i < 8; ++i) g.add_user(user("u" + std::to_string(i)));
  auto sweep = sweep_thresholds(g, {"u0", "u1"}, 1, 10, 50);
  REQUIRE(sweep.size() == 10);
  for (const auto& [phi, r] : sweep) {
    CHECK(r.converged);
    CHECK(r.iterations_run == 1);
    CHECK(r.infected_fraction_per_iteration.back() == doctest::Approx(2.0 / 8.0));
  }
}

TEST_CASE("cascade invariants on random graphs") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto g = random_graph(rng, 20 + rng() % 20, 0.15, 3);
    std::set<UserId> seeds = {"n0", "n1"};

    auto sweep = sweep_thresholds(g, seeds, 1, 10, 200);

    // Threshold monotonicity as sets, not just fractions.
    std::set<UserId> prev;
    bool first = true;
    for (auto it = sweep.rbegin(); it != sweep.rend(); ++it) {
      auto cur = infected_set(it->second);
      if (!first)
        for (const auto& id : prev) CHECK(cur.count(id) == 1);
      prev = std::move(cur);
      first = false;
    }

    for (const auto& [phi, r] : sweep) {
      CHECK(r.converged);
      // A hop can take up to phi rounds of accumulation, so the walltime
      // bound scales with the threshold; at phi=1 it reduces to |V|.
      CHECK(r.iterations_run <= phi * g.node_count() + 1);
      for (std::size_t i = 1; i < r.infected_fraction_per_iteration.size(); ++i)
        CHECK(r.infected_fraction_per_iteration[i] >=
              r.infected_fraction_per_iteration[i - 1]);
      CHECK(r.infected_fraction_per_iteration.back() <= 1.0);
    }

    // Seed monotonicity.
    CascadeConfig c;
    c.phi = 2;
    c.max_iterations = 200;
    c.seed_users = seeds;
    auto small = run_cascade(g, c);
    c.seed_users.insert("n5");
    auto big = run_cascade(g, c);
    for (const auto& id : infected_set(small)) {
      CHECK(infected_set(big).count(id) == 1);
    }
  }
}

TEST_CASE("reachability at minimal threshold") {
  std::mt19937_64 rng(23);
  auto g = random_graph(rng, 30, 0.1, 4);
  CascadeConfig c;
  c.phi = 1;
  c.max_iterations = 200;
  c.seed_users = {"n0"};
  auto r = run_cascade(g, c);

  // BFS over out-edges gives the reachable set; with phi=1 and weights >= 1
  // every reachable node must be infected.
  std::set<UserId> reach = {"n0"};
  std::vector<UserId> frontier = {"n0"};
  while (!frontier.empty()) {
    std::vector<UserId> next;
    for (const auto& u : frontier)
      for (const auto& [v, w] : g.out_neighbors(u))
        if (reach.insert(v).second) next.push_back(v);
    frontier = std::move(next);
  }
  CHECK(infected_set(r) == reach);
  CHECK(r.infected_fraction_per_iteration.back() ==
        doctest::Approx(static_cast<double>(reach.size()) / g.node_count()));
}

TEST_CASE("determinism with per-node thresholds") {
  std::mt19937_64 rng(31);
  auto g = random_graph(rng, 40, 0.12, 3);
  CascadeConfig c;
  c.per_node_thresholds = true;
  c.threshold_lo = 1;
  c.threshold_hi = 5;
  c.rng_seed = 99;
  c.max_iterations = 200;
  c.seed_users = {"n0", "n3"};
  auto a = run_cascade(g, c);
  auto b = run_cascade(g, c);
  CHECK(a == b);
}

TEST_CASE("sample_thresholds") {
  std::mt19937_64 rng(41);
  auto g = random_graph(rng, 1000, 0.0, 1);

  SUBCASE("degenerate range") {
    for (const auto& [id, t] : sample_thresholds(g, 3, 3, 7)) CHECK(t == 3);
  }

  SUBCASE("deterministic per seed, seeds differ") {
    auto a = sample_thresholds(g, 1, 10, 5);
    auto b = sample_thresholds(g, 1, 10, 5);
    auto c = sample_thresholds(g, 1, 10, 6);
    CHECK(a == b);
    CHECK(a != c);
  }

  SUBCASE("range respected and mean plausible") {
    auto t = sample_thresholds(g, 1, 10, 5);
    REQUIRE(t.size() == 1000);
    double sum = 0;
    for (const auto& [id, v] : t) {
      CHECK(v >= 1);
      CHECK(v <= 10);
      sum += static_cast<double>(v);
    }
    double mean = sum / 1000.0;
    CHECK(mean > 4.5);
    CHECK(mean < 6.5);
  }

  SUBCASE("lo > hi rejected") {
    CHECK_THROWS_AS(sample_thresholds(g, 4, 2, 0), RangeError);
  }
}
