#include <doctest.h>

#include <cmath>

#include "branch.hpp"
#include "generate.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace pmc;
using namespace pmc::test;

TEST_CASE("solve_pmc on the paper's small instances") {
    auto cube = solve_pmc(cube_graph());
    CHECK(cube.has_pmc);
    auto all = enumerate_pmcs(cube_graph());
    bool found = false;
    for (const auto& c : all) {
        Cut flipped = *cube.certificate;
        for (auto& s : flipped.side) s = flip(s);
        if (c == *cube.certificate || c == flipped) found = true;
    }
    CHECK(found);

    CHECK_FALSE(solve_pmc(cycle_graph(6)).has_pmc);
    CHECK(solve_pmc(cycle_graph(8)).has_pmc);
    CHECK_FALSE(solve_pmc(complete_graph(4)).has_pmc);
    CHECK_FALSE(solve_pmc(path_graph(5)).has_pmc);  // odd order
    CHECK(solve_pmc(path_graph(2)).has_pmc);
    CHECK_FALSE(solve_pmc(Graph{}).has_pmc);
}

TEST_CASE("stop guard keeps transiently pinched states alive") {
    // Unique cut {0,1,2 | 3,4,5}: after R3 pulls 1 and 2 into A from seed
    // (0,3), vertices 1 and 3 both pin their hopes on free vertex 4, yet a
    // separating cut exists because 3 is already matched to 0.
    Graph g = graph_of(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {3, 4}, {2, 5}});
    CHECK(has_pmc_oracle(g).has_pmc);
    auto res = solve_pmc(g);
    CHECK(res.has_pmc);
    CHECK(res.certificate->vertices_on(Side::X) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("solve_from_seed separates the seed edge") {
    Graph c4 = cycle_graph(4);
    auto res = solve_from_seed(c4, 0, 1);
    CHECK(res.has_pmc);
    CHECK(res.certificate->side[0] == Side::X);
    CHECK(res.certificate->side[1] == Side::Y);

    for (auto [a, b] : complete_graph(4).edges())
        CHECK_FALSE(solve_from_seed(complete_graph(4), a, b).has_pmc);

    // The unique cut of P4 crosses the two outer edges only; check against
    // the enumeration, then against the seeded search.
    Graph p4 = path_graph(4);
    Cut only = enumerate_pmcs(p4).at(0);
    CHECK(only.side[0] != only.side[1]);
    CHECK(only.side[1] == only.side[2]);
    CHECK(solve_from_seed(p4, 0, 1).has_pmc);
    CHECK_FALSE(solve_from_seed(p4, 1, 2).has_pmc);

    CHECK_THROWS_AS(solve_from_seed(p4, 0, 2), Error);
}

TEST_CASE("solve_from_seed accounts for other components") {
    Graph with_cube = disjoint_union(path_graph(4), cube_graph());
    CHECK(solve_from_seed(with_cube, 0, 1).has_pmc);
    Graph with_c6 = disjoint_union(path_graph(4), cycle_graph(6));
    CHECK_FALSE(solve_from_seed(with_c6, 0, 1).has_pmc);
}

TEST_CASE("apply_reductions rule firings") {
    SolverStats stats;
    SUBCASE("R6 sends the lone free neighbor across") {
        Graph g = path_graph(2);
        SolverState s(g, std::vector<Vertex>{0}, {});
        auto out = apply_reductions(s, stats);
        CHECK(out.kind == ReductionOutcome::Kind::Reduced);
        CHECK(s.label(1) == Label::InB);
        CHECK(s.trace().front() == "R6");
    }
    SUBCASE("adjacent seeds with a common free neighbor stop") {
        Graph triangle = complete_graph(3);
        SolverState s(triangle, 0, 1);
        auto out = apply_reductions(s, stats);
        CHECK(out.kind == ReductionOutcome::Kind::Infeasible);
        CHECK(out.reason.find("common free neighbor") != std::string::npos);
    }
    SUBCASE("R2 pulls a doubly-dominated vertex in") {
        Graph g = graph_of(6, {{0, 2}, {1, 2}, {2, 3}, {0, 4}, {1, 5}});
        SolverState s(g, std::vector<Vertex>{0, 1}, {});
        auto out = apply_reductions(s, stats);
        CHECK(out.kind == ReductionOutcome::Kind::Reduced);
        CHECK(s.label(2) == Label::InA);
        CHECK(s.trace().front() == "R2");
    }
    SUBCASE("exhausted state reports no rule") {
        Graph c6 = cycle_graph(6);
        SolverState s(c6, 0, 1);
        apply_reductions(s, stats);
        auto again = apply_reductions(s, stats);
        CHECK((again.kind == ReductionOutcome::Kind::Exhausted ||
               again.kind == ReductionOutcome::Kind::Infeasible));
    }
}

TEST_CASE("terminal_check") {
    Graph k2 = path_graph(2);
    SolverState s(k2, 0, 1);
    auto t = terminal_check(s);
    CHECK(t.is_pmc);
    CHECK(t.cut.side == std::vector<Side>{Side::X, Side::Y});

    SolverState open(cycle_graph(4), 0, 1);
    CHECK_THROWS_AS(terminal_check(open), Error);

    // an A-vertex with two B-neighbors is not a perfect matching cut
    Graph star = star_graph(2);
    SolverState bad(star, std::vector<Vertex>{0}, std::vector<Vertex>{1, 2});
    CHECK_FALSE(terminal_check(bad).is_pmc);
}

TEST_CASE("select_branch picks the paper's rules") {
    SolverStats stats;
    SUBCASE("B1: a shared pair with private neighbors") {
        Graph g = graph_of(6, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {3, 5}});
        SolverState s(g, std::vector<Vertex>{0}, std::vector<Vertex>{1});
        REQUIRE(apply_reductions(s, stats).kind == ReductionOutcome::Kind::Exhausted);
        auto choice = select_branch(s, stats);
        REQUIRE(choice.has_value());
        CHECK(choice->rule == "B1");
        REQUIRE(choice->children.size() == 2);
        for (int d : choice->decreases) CHECK(d >= 3);
    }
    SUBCASE("B3 with two private neighbors gives vector (4,2)") {
        Graph g = graph_of(9, {{0, 2}, {0, 3}, {1, 3}, {2, 4}, {2, 5}, {1, 6}, {6, 7}, {6, 8}});
        SolverState s(g, std::vector<Vertex>{0}, std::vector<Vertex>{1});
        REQUIRE(apply_reductions(s, stats).kind == ReductionOutcome::Kind::Exhausted);
        auto choice = select_branch(s, stats);
        REQUIRE(choice.has_value());
        CHECK(choice->rule == "B3");
        CHECK(choice->decreases == std::vector<int>{4, 2});
        CHECK(choice->minimums == std::vector<int>{4, 2});
    }
    SUBCASE("B4 with two anchorless neighbors gives vector (4,4)") {
        Graph g = graph_of(14, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6},
                                {7, 8}, {7, 9}, {8, 10}, {8, 11}, {9, 12}, {9, 13}});
        SolverState s(g, std::vector<Vertex>{0}, std::vector<Vertex>{7});
        REQUIRE(apply_reductions(s, stats).kind == ReductionOutcome::Kind::Exhausted);
        auto choice = select_branch(s, stats);
        REQUIRE(choice.has_value());
        CHECK(choice->rule == "B4");
        CHECK(choice->decreases == std::vector<int>{4, 4});
    }
    SUBCASE("no rule applies only when A and B see no free vertex") {
        Graph two = disjoint_union(path_graph(2), path_graph(2));
        SolverState s(two, 0, 1);
        REQUIRE(apply_reductions(s, stats).kind == ReductionOutcome::Kind::Exhausted);
        CHECK(s.free_count() == 2);
        CHECK_FALSE(select_branch(s, stats).has_value());
    }
}

namespace {

// Replaces every second edge by a degree-2 vertex; subdivided graphs stall
// the reductions and exercise the branching rules far more than dense ones.
Graph subdivide_alternate(const Graph& base, int parity) {
    std::vector<Edge> edges;
    int next = base.vertex_count();
    int i = 0;
    for (auto [u, v] : base.edges()) {
        if (i++ % 2 == parity) {
            edges.push_back({u, next});
            edges.push_back({v, next});
            ++next;
        } else {
            edges.push_back({u, v});
        }
    }
    return Graph::from_edges(next, edges);
}

// Search on a hand-built state through the public reduction/branching API.
bool mini_search(SolverState state, SolverStats& stats) {
    if (apply_reductions(state, stats).kind == ReductionOutcome::Kind::Infeasible) return false;
    if (state.free_count() == 0) return terminal_check(state).is_pmc;
    auto choice = select_branch(state, stats);
    REQUIRE(choice.has_value());
    for (auto& child : choice->children)
        if (mini_search(std::move(child), stats)) return true;
    return false;
}

// Ground truth for "a perfect matching cut separating A and B exists".
bool oracle_separates(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    for (const auto& cut : enumerate_pmcs(g)) {
        for (Side a_side : {Side::X, Side::Y}) {
            bool ok = true;
            for (Vertex v : a) ok = ok && cut.side[v] == a_side;
            for (Vertex v : b) ok = ok && cut.side[v] == flip(a_side);
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("crafted states exercise the rarer branching rules") {
    SolverStats stats;
    SUBCASE("B5: two anchored and one anchorless free neighbor") {
        // x=0 with u=3 (no anchor), v1=4 -> y1=1, v2=5 -> y2=2; the anchors
        // keep two further free neighbors each, everything padded to degree 3
        // with pendant paths.
        Graph g = graph_of(20, {{0, 3}, {0, 4}, {0, 5},  {1, 4},   {2, 5},   {3, 6},   {3, 7},
                                {1, 8},  {1, 9}, {2, 10}, {2, 11},  {8, 12},  {8, 13},  {9, 14},
                                {9, 15}, {10, 16}, {10, 17}, {11, 18}, {11, 19}});
        SolverState s(g, std::vector<Vertex>{0}, std::vector<Vertex>{1, 2});
        SolverStats local;
        REQUIRE(apply_reductions(s, local).kind == ReductionOutcome::Kind::Exhausted);
        auto choice = select_branch(s, local);
        REQUIRE(choice.has_value());
        CHECK(choice->rule == "B5");
        CHECK(choice->children.size() == 3);
        CHECK(mini_search(SolverState(g, {0}, {1, 2}), stats) ==
              oracle_separates(g, {0}, {1, 2}));
    }
    SUBCASE("B6 and B7: one anchored free neighbor beside anchorless ones") {
        // x=0 with u1=2, u2=3 (anchorless), v=4 anchored at y=1; y keeps
        // v1=5, v2=6; pendant paths pad all degrees.
        std::vector<Edge> base = {{0, 2},  {0, 3},   {0, 4},   {1, 4},   {1, 5},   {1, 6},
                                  {2, 7},  {7, 8},   {2, 9},   {9, 10},  {3, 11},  {11, 12},
                                  {3, 13}, {13, 14}, {5, 15},  {15, 16}, {5, 17},  {17, 18},
                                  {6, 19}, {19, 20}, {6, 21},  {21, 22}, {8, 23}};
        Graph g7 = Graph::from_edges(24, base);
        SolverState s7(g7, std::vector<Vertex>{0}, std::vector<Vertex>{1});
        SolverStats local;
        REQUIRE(apply_reductions(s7, local).kind == ReductionOutcome::Kind::Exhausted);
        auto choice7 = select_branch(s7, local);
        REQUIRE(choice7.has_value());
        CHECK(choice7->rule == "B7");
        CHECK(choice7->children.size() == 4);
        for (int d : choice7->decreases) CHECK(d >= 2 + 2 + 2);
        CHECK(mini_search(SolverState(g7, {0}, {1}), stats) == oracle_separates(g7, {0}, {1}));

        // u1 adjacent to both of y's other free neighbors turns it into B6
        auto b6_edges = base;
        b6_edges.push_back({2, 5});
        b6_edges.push_back({2, 6});
        Graph g6 = Graph::from_edges(24, b6_edges);
        SolverState s6(g6, std::vector<Vertex>{0}, std::vector<Vertex>{1});
        REQUIRE(apply_reductions(s6, local).kind == ReductionOutcome::Kind::Exhausted);
        auto choice6 = select_branch(s6, local);
        REQUIRE(choice6.has_value());
        CHECK(choice6->rule == "B6");
        REQUIRE(choice6->minimums.size() == 2);
        CHECK(choice6->minimums == std::vector<int>{5, 3});
        CHECK(mini_search(SolverState(g6, {0}, {1}), stats) == oracle_separates(g6, {0}, {1}));
    }
    SUBCASE("B2: both free neighbors anchored") {
        // x=0 with u=2 -> y1=1, v=3 -> y2=4; anchors padded to three free
        // neighbors so earlier rules stay quiet.
        Graph g = graph_of(17, {{0, 2}, {0, 3}, {1, 2},  {3, 4},  {1, 5},  {1, 6},  {4, 7},  {4, 8},
                                {5, 9}, {5, 10}, {6, 11}, {6, 12}, {7, 13}, {7, 14}, {8, 15}, {8, 16}});
        SolverState s(g, std::vector<Vertex>{0}, std::vector<Vertex>{1, 4});
        SolverStats local;
        REQUIRE(apply_reductions(s, local).kind == ReductionOutcome::Kind::Exhausted);
        auto choice = select_branch(s, local);
        REQUIRE(choice.has_value());
        CHECK(choice->rule == "B2");
        CHECK(mini_search(SolverState(g, {0}, {1, 4}), stats) == oracle_separates(g, {0}, {1, 4}));
    }
}

TEST_CASE("cubic and subdivided graphs agree with the oracle") {
    // Cubic graphs resist the reductions, so these sweeps actually walk
    // through the branching rules.
    SolverStats coverage;
    init_rule_counts(coverage, false);
    auto run = [&](const Graph& g) {
        auto res = solve_pmc(g);
        CHECK(res.has_pmc == has_pmc_oracle(g).has_pmc);
        coverage.merge(res.stats);
    };
    run(petersen());
    for (uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = random_cubic(12 + 2 * static_cast<int>(seed % 4), seed * 31 + 7);
        if (g.vertex_count() == 0) continue;
        CAPTURE(seed);
        run(g);
    }
    for (uint64_t seed = 0; seed < 25; ++seed) {
        Graph g = subdivide_alternate(random_connected_graph(8, 12, seed * 7 + 11),
                                      static_cast<int>(seed % 2));
        CAPTURE(seed);
        run(g);
    }
    uint64_t branchings = 0;
    for (const auto& [k, v] : coverage.rule_counts)
        if (k[0] == 'B') branchings += v;
    CHECK(branchings > 100);
}

TEST_CASE("exhaustive agreement with the oracle up to 5 vertices") {
    for (int n = 1; n <= 5; ++n) {
        for (const Graph& g : all_graphs(n)) {
            if (connected_components(g).size() != 1) continue;
            CAPTURE(format_graph(g));
            CHECK(solve_pmc(g).has_pmc == has_pmc_oracle(g).has_pmc);
        }
    }
}

TEST_CASE("random graphs agree with the oracle") {
    SolverOptions with_r10;
    with_r10.enable_r10 = true;
    for (uint64_t seed = 0; seed < 60; ++seed) {
        int n = 8 + static_cast<int>(seed % 5);
        int m = n + static_cast<int>(seed % 9);
        Graph g = random_connected_graph(n, m, seed * 31 + 1);
        CAPTURE(seed);
        bool expected = has_pmc_oracle(g).has_pmc;
        CHECK(solve_pmc(g).has_pmc == expected);
        CHECK(solve_pmc(g, with_r10).has_pmc == expected);
    }
}

TEST_CASE("deterministic results across thread counts") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = random_connected_graph(12, 18, seed + 500);
        SolverOptions serial, parallel;
        parallel.threads = 4;
        auto a = solve_pmc(g, serial);
        auto b = solve_pmc(g, parallel);
        CHECK(a.has_pmc == b.has_pmc);
        CHECK(a.certificate == b.certificate);
        CHECK(a.stats.nodes == b.stats.nodes);
        CHECK(a.stats.rule_counts == b.stats.rule_counts);
        CHECK(a.stats.seed_edge == b.stats.seed_edge);
    }
}

TEST_CASE("branching_factor") {
    const double tol = 1e-8;
    CHECK(branching_factor({{1, 1}}, tol) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(branching_factor({{2, 2}}, tol) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    // closed form: x^4 = x^2 + 1 has root sqrt of the golden ratio
    CHECK(branching_factor({{4, 2}}, tol) ==
          doctest::Approx(std::sqrt((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-7));
    CHECK(branching_factor({{3, 3}}, tol) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-7));
    CHECK(branching_factor({{5, 3}}, tol) < 1.1939);
    CHECK(branching_factor({{2, 4}}, tol) == branching_factor({{4, 2}}, tol));

    CHECK_THROWS_AS(branching_factor({{3}}, tol), Error);
    CHECK_THROWS_AS(branching_factor({{0, 2}}, tol), Error);
    CHECK_THROWS_AS(branching_factor({{2, 2}}, 0.0), Error);
}

TEST_CASE("the worst branching factor over all rules is B3's") {
    auto factors = certify_branching_factors();
    double tau42 = branching_factor({{4, 2}}, 1e-9);
    CHECK(factors.at("B3") == doctest::Approx(tau42).epsilon(1e-8));
    double worst = 0;
    for (const auto& [rule, f] : factors) worst = std::max(worst, f);
    CHECK(worst == doctest::Approx(tau42).epsilon(1e-8));
    CHECK(worst < 1.2721);
    CHECK(factors.at("B1") == doctest::Approx(std::cbrt(2.0)).epsilon(1e-6));
    CHECK(factors.at("B6") == doctest::Approx(branching_factor({{5, 3}}, 1e-9)).epsilon(1e-8));
    for (const auto& [rule, f] : factors)
        if (rule != "B3") CHECK(f < tau42);
}

TEST_CASE("solver stats carry the seed edge and rule counts") {
    auto res = solve_pmc(cube_graph());
    REQUIRE(res.stats.seed_edge.has_value());
    CHECK(res.stats.seed_edge == Edge{0, 1});
    CHECK(res.stats.nodes > 0);
    CHECK(res.stats.rule_counts.count("R1") == 1);
    CHECK(res.stats.rule_counts.count("B7") == 1);
    CHECK(res.stats.rule_counts.count("R10") == 0);
}
