#include "poly.hpp"

#include <algorithm>
#include <numeric>

namespace pmc {

namespace {

void verify_pmc_certificate(const Graph& g, SolveResult& res) {
    if (!res.has_pmc) return;
    PMC_CHECK(res.certificate.has_value(), "positive answer without certificate");
    PMC_CHECK(classify_cut(g, *res.certificate) == CutClass::PerfectMatchingCut,
              "certificate failed verification");
}

}  // namespace

SolveResult solve_max_deg2(const Graph& g) {
    const int n = g.vertex_count();
    if (max_degree(g) > 2) fail(ErrorKind::Precondition, "solve_max_deg2 requires maximum degree 2");
    if (!is_connected(g)) fail(ErrorKind::Precondition, "solve_max_deg2 requires a connected graph");

    SolveResult res;
    res.algorithm = "deg2";
    const bool cycle = g.edge_count() == n;
    if (cycle ? n % 4 != 0 : n % 2 != 0) return res;
    if (n < 2) return res;

    // Order vertices along the path or cycle.
    Vertex start = 0;
    if (!cycle)
        for (Vertex v = 0; v < n; ++v)
            if (g.degree(v) <= 1 && (g.degree(start) > 1 || v < start)) start = v;
    std::vector<Vertex> order{start};
    std::vector<bool> used(n, false);
    used[start] = true;
    while (static_cast<int>(order.size()) < n) {
        Vertex cur = order.back();
        Vertex nxt = -1;
        for (Vertex w : g.neighbors(cur))
            if (!used[w]) {
                nxt = w;
                break;
            }
        PMC_CHECK(nxt >= 0, "walk covers the whole path or cycle");
        used[nxt] = true;
        order.push_back(nxt);
    }

    Cut cut;
    cut.side.resize(n);
    for (int pos = 0; pos < n; ++pos) {
        // Cycle: sides XXYY along the walk. Path: matched pairs (0,1),(2,3),..
        // give the pattern XYYX.
        int phase = pos % 4;
        bool x_side = cycle ? phase <= 1 : (phase == 0 || phase == 3);
        cut.side[order[pos]] = x_side ? Side::X : Side::Y;
    }
    res.has_pmc = true;
    res.certificate = std::move(cut);
    verify_pmc_certificate(g, res);
    return res;
}

SolveResult caterpillar_criterion(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0 || !is_connected(g) || g.edge_count() != n - 1)
        fail(ErrorKind::Precondition, "caterpillar_criterion requires a tree");

    SolveResult res;
    res.algorithm = "caterpillar";
    if (n == 1) return res;
    if (n == 2) {
        res.has_pmc = true;
        res.certificate = Cut{{Side::X, Side::Y}};
        return res;
    }

    // Spine = non-leaf vertices; a tree is a caterpillar iff the spine is a
    // path (it is always a subtree).
    std::vector<Vertex> spine;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) >= 2) spine.push_back(v);
    std::vector<bool> on_spine(n, false);
    for (Vertex v : spine) on_spine[v] = true;
    for (Vertex v : spine) {
        int spine_deg = 0;
        for (Vertex w : g.neighbors(v))
            if (on_spine[w]) ++spine_deg;
        if (spine_deg > 2) return res;  // not a caterpillar
    }

    // Basic path: lowest leaf of one spine end, the spine, lowest leaf of the
    // other end. Degenerate spine of one vertex takes its two lowest leaves.
    auto lowest_leaf = [&](Vertex s, Vertex skip) -> Vertex {
        for (Vertex w : g.neighbors(s))
            if (!on_spine[w] && w != skip) return w;
        PMC_CHECK(false, "spine end always has an attached leaf");
        return -1;
    };
    std::vector<Vertex> path;
    if (spine.size() == 1) {
        Vertex c = spine[0];
        Vertex l1 = lowest_leaf(c, -1);
        path = {l1, c, lowest_leaf(c, l1)};
    } else {
        std::vector<Vertex> ends;
        for (Vertex v : spine) {
            int spine_deg = 0;
            for (Vertex w : g.neighbors(v))
                if (on_spine[w]) ++spine_deg;
            if (spine_deg == 1) ends.push_back(v);
        }
        PMC_CHECK(ends.size() == 2, "spine of a caterpillar is a path");
        path.push_back(lowest_leaf(ends[0], -1));
        Vertex prev = -1, cur = ends[0];
        while (cur != -1) {
            path.push_back(cur);
            Vertex nxt = -1;
            for (Vertex w : g.neighbors(cur))
                if (on_spine[w] && w != prev) {
                    nxt = w;
                    break;
                }
            prev = cur;
            cur = nxt;
        }
        path.push_back(lowest_leaf(path.back(), -1));
    }

    const int k = static_cast<int>(path.size());
    std::vector<bool> on_path(n, false);
    for (Vertex v : path) on_path[v] = true;

    // Leaves hanging off each basic-path vertex.
    std::vector<std::vector<Vertex>> hanging(k);
    for (int i = 0; i < k; ++i)
        for (Vertex w : g.neighbors(path[i]))
            if (!on_path[w]) hanging[i].push_back(w);
    PMC_CHECK(hanging.front().empty() && hanging.back().empty(), "basic path ends carry no leaves");

    for (int i = 1; i + 1 < k; ++i)
        if (hanging[i].size() >= 2) return res;  // inner vertex with two leaves

    // Maximal leafless sub-paths must have even order.
    for (int i = 0; i < k;) {
        if (!hanging[i].empty()) {
            ++i;
            continue;
        }
        int j = i;
        while (j < k && hanging[j].empty()) ++j;
        if ((j - i) % 2 != 0) return res;
        i = j;
    }

    // Build the cut: a vertex with a hanging leaf is matched to it, leafless
    // runs pair up consecutively.
    Cut cut;
    cut.side.assign(n, Side::X);
    std::vector<bool> matched_to_next(k, false);
    for (int i = 0; i < k;) {
        if (!hanging[i].empty()) {
            ++i;
            continue;
        }
        int j = i;
        while (j < k && hanging[j].empty()) ++j;
        for (int t = i; t < j; t += 2) matched_to_next[t] = true;
        i = j;
    }
    Side side = Side::X;
    for (int i = 0; i < k; ++i) {
        cut.side[path[i]] = side;
        for (Vertex leaf : hanging[i]) cut.side[leaf] = flip(side);
        if (i + 1 < k && matched_to_next[i]) side = flip(side);
    }
    res.has_pmc = true;
    res.certificate = std::move(cut);
    verify_pmc_certificate(g, res);
    return res;
}

PseudoChordalCheck is_pseudo_chordal(const Graph& g) {
    BlockDecomposition bd = biconnected_blocks(g);
    for (size_t b = 0; b < bd.blocks.size(); ++b) {
        if (!bd.nontrivial[b]) continue;
        for (const auto& [u, v] : bd.block_edges[b]) {
            bool in_triangle = false;
            for (Vertex w : g.neighbors(u))
                if (w != v && g.has_edge(w, v)) {
                    in_triangle = true;
                    break;
                }
            if (!in_triangle) return {false, Edge{u, v}};
        }
    }
    return {true, std::nullopt};
}

SupernodeTree build_supernode_tree(const Graph& g) {
    PMC_CHECK(is_connected(g), "supernode tree needs a connected graph");
    const int n = g.vertex_count();
    TriangleSaturated ts = triangle_saturated_components(g);

    SupernodeTree tree;
    tree.node_of.assign(n, -1);
    for (const auto& comp : ts.components) {
        SupernodeTree::Node node;
        node.vertices = comp;
        node.supernode = true;
        for (Vertex v : comp) tree.node_of[v] = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(std::move(node));
    }
    for (Vertex v = 0; v < n; ++v) {
        if (tree.node_of[v] >= 0) continue;
        SupernodeTree::Node node;
        node.vertices = {v};
        tree.node_of[v] = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(std::move(node));
    }
    if (n == 0) return tree;

    // Bridges (edges outside the saturated subgraph) are the tree edges.
    std::vector<std::vector<std::pair<int, Edge>>> adj(tree.nodes.size());
    for (const auto& [u, v] : g.edges()) {
        int nu = tree.node_of[u], nv = tree.node_of[v];
        if (nu == nv) continue;  // inside a supernode
        adj[nu].push_back({nv, {u, v}});
        adj[nv].push_back({nu, {v, u}});
    }

    tree.root = tree.node_of[0];
    std::vector<int> queue{tree.root};
    std::vector<bool> seen(tree.nodes.size(), false);
    seen[tree.root] = true;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int cur = queue[qi];
        for (const auto& [nxt, edge] : adj[cur]) {
            if (seen[nxt]) {
                bool parent_edge =
                    (tree.nodes[nxt].parent == cur && tree.nodes[nxt].parent_vertex == edge.first &&
                     tree.nodes[nxt].attach == edge.second) ||
                    (tree.nodes[cur].parent == nxt && tree.nodes[cur].attach == edge.first &&
                     tree.nodes[cur].parent_vertex == edge.second);
                PMC_CHECK(parent_edge, "contracted structure is a tree");
                continue;
            }
            seen[nxt] = true;
            tree.nodes[nxt].parent = cur;
            tree.nodes[nxt].parent_vertex = edge.first;  // vertex inside cur
            tree.nodes[nxt].attach = edge.second;        // r(S), inside nxt
            tree.nodes[cur].children.push_back(nxt);
            queue.push_back(nxt);
        }
    }
    PMC_CHECK(queue.size() == tree.nodes.size(), "all nodes reached");
    return tree;
}

namespace {

struct DpChoices {
    // per node: vertex -> child node chosen as its crossing mate
    std::vector<std::vector<std::pair<Vertex, int>>> pmc_mate, m_mate;
};

// One vertex of the table rule: among its children, one with m set and all
// the others with pmc set.
std::optional<int> pick_mate(const SupernodeTree& tree, const std::vector<int>& kids) {
    if (kids.empty()) return std::nullopt;
    int not_pmc = -1, count_not = 0;
    for (int c : kids)
        if (!tree.nodes[c].pmc) {
            not_pmc = c;
            ++count_not;
        }
    if (count_not > 1) return std::nullopt;
    if (count_not == 1) return tree.nodes[not_pmc].m ? std::optional<int>(not_pmc) : std::nullopt;
    for (int c : kids)
        if (tree.nodes[c].m) return c;
    return std::nullopt;
}

DpChoices compute_supernode_dp(SupernodeTree& tree) {
    DpChoices choices;
    choices.pmc_mate.resize(tree.nodes.size());
    choices.m_mate.resize(tree.nodes.size());

    // Post-order: children first.
    std::vector<int> order;
    std::vector<std::pair<int, size_t>> stack{{tree.root, 0}};
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < tree.nodes[node].children.size()) {
            stack.push_back({tree.nodes[node].children[next++], 0});
        } else {
            order.push_back(node);
            stack.pop_back();
        }
    }

    for (int ni : order) {
        auto& node = tree.nodes[ni];
        std::vector<std::vector<int>> kids_at(node.vertices.size());
        auto vertex_index = [&](Vertex v) {
            return static_cast<size_t>(
                std::lower_bound(node.vertices.begin(), node.vertices.end(), v) -
                node.vertices.begin());
        };
        for (int c : node.children) kids_at[vertex_index(tree.nodes[c].parent_vertex)].push_back(c);

        bool pmc_ok = true, m_ok = true;
        for (size_t i = 0; i < node.vertices.size(); ++i) {
            Vertex v = node.vertices[i];
            auto mate = pick_mate(tree, kids_at[i]);
            if (mate)
                choices.pmc_mate[ni].push_back({v, *mate});
            else
                pmc_ok = false;
            if (v == node.attach) {
                for (int c : kids_at[i])
                    if (!tree.nodes[c].pmc) m_ok = false;
            } else if (mate) {
                choices.m_mate[ni].push_back({v, *mate});
            } else {
                m_ok = false;
            }
        }
        node.pmc = pmc_ok;
        node.m = ni != tree.root && m_ok;
    }
    return choices;
}

}  // namespace

void run_supernode_dp(SupernodeTree& tree) { compute_supernode_dp(tree); }

SolveResult solve_pseudo_chordal(const Graph& g) {
    if (!is_connected(g)) fail(ErrorKind::Precondition, "solve_pseudo_chordal requires a connected graph");
    auto check = is_pseudo_chordal(g);
    if (!check.pseudo_chordal)
        fail(ErrorKind::Precondition,
             "input is not pseudo-chordal: edge (" + std::to_string(check.violating_edge->first + 1) +
                 ", " + std::to_string(check.violating_edge->second + 1) +
                 ") of a non-trivial block lies in no triangle");

    SolveResult res;
    res.algorithm = "pseudochordal";
    const int n = g.vertex_count();
    if (n == 0) return res;

    SupernodeTree tree = build_supernode_tree(g);
    DpChoices choices = compute_supernode_dp(tree);

    if (!tree.nodes[tree.root].pmc) return res;

    // Reconstruct: a node used through pmc keeps its side and every vertex
    // crosses into its chosen mate child; through m the attach vertex is
    // matched by the parent instead and the attach's children stand alone.
    Cut cut;
    cut.side.assign(n, Side::X);
    struct Item {
        int node;
        bool as_m;
        Side side;
    };
    std::vector<Item> work{{tree.root, false, Side::X}};
    while (!work.empty()) {
        auto [ni, as_m, side] = work.back();
        work.pop_back();
        const auto& node = tree.nodes[ni];
        for (Vertex v : node.vertices) cut.side[v] = side;

        // Mate children take the flipped side through their m table; every
        // other child is matched internally on this side.
        const auto& mates = as_m ? choices.m_mate[ni] : choices.pmc_mate[ni];
        std::vector<bool> is_mate(tree.nodes.size(), false);
        for (const auto& [v, c] : mates) {
            is_mate[c] = true;
            work.push_back({c, true, flip(side)});
        }
        for (int c : node.children)
            if (!is_mate[c]) work.push_back({c, false, side});
    }
    res.has_pmc = true;
    res.certificate = std::move(cut);
    verify_pmc_certificate(g, res);

    // Every supernode is monochromatic by construction; keep it checked.
    for (const auto& node : tree.nodes)
        for (Vertex v : node.vertices)
            PMC_CHECK(res.certificate->side[v] == res.certificate->side[node.vertices[0]],
                      "supernode split across the cut");
    return res;
}

bool validate_t_witness(const Graph& g, const TWitness& w) {
    auto vs = w.vertices();
    for (Vertex v : vs)
        if (v < 0 || v >= g.vertex_count()) return false;
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j]) return false;
    auto expect = [&](Vertex a, Vertex b) { return g.has_edge(a, b); };
    if (!(expect(w.center, w.leg1_mid) && expect(w.leg1_mid, w.leg1_end) &&
          expect(w.center, w.leg2_mid) && expect(w.leg2_mid, w.leg2_end) &&
          expect(w.center, w.leaf)))
        return false;
    int edges = 0;
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (g.has_edge(vs[i], vs[j])) ++edges;
    return edges == 5;
}

std::optional<TWitness> find_induced_t(const Graph& g) {
    const int n = g.vertex_count();
    for (Vertex c = 0; c < n; ++c) {
        if (g.degree(c) < 3) continue;
        auto nb = g.neighbors(c);
        const size_t d = nb.size();
        for (size_t i = 0; i < d; ++i)
            for (size_t j = i + 1; j < d; ++j) {
                if (g.has_edge(nb[i], nb[j])) continue;
                for (size_t k = j + 1; k < d; ++k) {
                    if (g.has_edge(nb[i], nb[k]) || g.has_edge(nb[j], nb[k])) continue;
                    std::array<Vertex, 3> triple{nb[i], nb[j], nb[k]};
                    // Each triple member may play the short leg.
                    for (int leaf_pos = 0; leaf_pos < 3; ++leaf_pos) {
                        Vertex leaf = triple[leaf_pos];
                        Vertex m1 = triple[leaf_pos == 0 ? 1 : 0];
                        Vertex m2 = triple[leaf_pos == 2 ? 1 : 2];
                        for (Vertex a : g.neighbors(m1)) {
                            if (a == c || a == leaf || a == m2) continue;
                            if (g.has_edge(a, c) || g.has_edge(a, leaf) || g.has_edge(a, m2)) continue;
                            for (Vertex e : g.neighbors(m2)) {
                                if (e == c || e == leaf || e == m1 || e == a) continue;
                                if (g.has_edge(e, c) || g.has_edge(e, leaf) || g.has_edge(e, m1) ||
                                    g.has_edge(e, a))
                                    continue;
                                TWitness w{c, m1, a, m2, e, leaf};
                                PMC_CHECK(validate_t_witness(g, w), "constructed witness induces T");
                                return w;
                            }
                        }
                    }
                }
            }
    }
    return std::nullopt;
}

TFreeViolation::TFreeViolation(TWitness w)
    : Error(ErrorKind::Precondition,
            "input contains the subdivided claw as an induced subgraph"),
      witness(w) {}

namespace {

// Case analysis for a seed whose reductions stalled with free vertices left:
// either no separating cut exists (nullopt) or an induced T is found.
std::optional<TWitness> stuck_seed_analysis(const SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();

    auto cross_count = [&](Vertex v, Label own) {
        return own == Label::InA ? s.count_b(v) : s.count_a(v);
    };
    auto free_nbrs = [&](Vertex v) {
        std::vector<Vertex> out;
        for (Vertex w : g.neighbors(v))
            if (s.label(w) == Label::Free) out.push_back(w);
        return out;
    };

    // Probe: x fixed without cross neighbors, adjacent to x* that has one.
    Label own = Label::Free;
    Vertex x = -1, x_star = -1;
    for (Label side : {Label::InA, Label::InB}) {
        for (Vertex v = 0; v < n && x < 0; ++v) {
            if (s.label(v) != side || cross_count(v, side) != 0) continue;
            for (Vertex w : g.neighbors(v))
                if (s.label(w) == side && cross_count(w, side) >= 1) {
                    own = side;
                    x = v;
                    x_star = w;
                    break;
                }
        }
        if (x >= 0) break;
    }
    PMC_CHECK(x >= 0, "connectivity provides a starred neighbor when F is non-empty");

    const Label opp = own == Label::InA ? Label::InB : Label::InA;
    Vertex y_star = -1;
    for (Vertex w : g.neighbors(x_star))
        if (s.label(w) == opp) y_star = w;
    PMC_CHECK(y_star >= 0, "starred vertex has its unique cross neighbor");

    auto fn = free_nbrs(x);
    PMC_CHECK(fn.size() >= 2, "unmatched fixed vertices keep two free neighbors");

    // Opposite-side vertex sharing two free neighbors with x.
    for (Vertex y = 0; y < n; ++y) {
        if (s.label(y) != opp) continue;
        std::vector<Vertex> common;
        for (Vertex w : fn)
            if (g.has_edge(w, y)) common.push_back(w);
        if (common.size() < 2) continue;
        Vertex u = common[0], v = common[1];
        for (Vertex w : g.neighbors(u))
            if (s.label(w) == Label::Free && g.has_edge(w, v))
                return std::nullopt;  // u and v cannot be split: no separating cut
        for (Vertex w : g.neighbors(u))
            if (s.label(w) == Label::Free && !g.has_edge(w, v))
                return TWitness{x, u, w, x_star, y_star, v};
        for (Vertex w : g.neighbors(v))
            if (s.label(w) == Label::Free && !g.has_edge(w, u))
                return TWitness{x, v, w, x_star, y_star, u};
        PMC_CHECK(false, "one of the pair has a private free neighbor");
    }
    // From here on, x shares at most one free neighbor with any opposite
    // vertex.

    // Unstarred opposite vertices touching N(x) must reach y*.
    for (Vertex z = 0; z < n; ++z) {
        if (s.label(z) != opp || cross_count(z, opp) != 0) continue;
        if (g.has_edge(z, y_star)) continue;
        for (Vertex w : fn) {
            if (!g.has_edge(z, w)) continue;
            for (Vertex v : fn)
                if (v != w) return TWitness{x, w, z, x_star, y_star, v};
        }
    }

    Vertex u = fn[0], v = fn[1];
    for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
        if (cross_count(a, own) != 0) continue;  // a has an opposite anchor
        for (Vertex t : g.neighbors(a))
            if (s.label(t) == Label::Free && !g.has_edge(t, b))
                return TWitness{x, a, t, x_star, y_star, b};
        PMC_CHECK(false, "anchorless free neighbor has a private free neighbor");
    }

    auto anchor = [&](Vertex w) {
        Vertex found = -1;
        for (Vertex z : g.neighbors(w))
            if (s.label(z) == opp) found = z;
        return found;
    };
    Vertex y1 = anchor(u), y2 = anchor(v);
    PMC_CHECK(y1 >= 0 && y2 >= 0 && y1 != y2, "distinct anchors after the shared-pair case");
    PMC_CHECK(g.has_edge(y1, y_star) && g.has_edge(y2, y_star), "anchors reach the starred vertex");

    if (!g.has_edge(y1, y2)) return TWitness{y_star, y1, u, y2, v, x_star};

    auto second_free = [&](Vertex y, Vertex not_this) {
        for (Vertex w : g.neighbors(y))
            if (s.label(w) == Label::Free && w != not_this) return w;
        PMC_CHECK(false, "anchor has a second free neighbor");
        return Vertex{-1};
    };
    Vertex u2 = second_free(y1, u), v2 = second_free(y2, v);
    PMC_CHECK(u2 != v2, "a shared second neighbor would carry two anchors");

    if (g.has_edge(u, v2)) return TWitness{x, u, v2, x_star, y_star, v};
    if (g.has_edge(v, u2)) return TWitness{x, v, u2, x_star, y_star, u};
    if (!g.has_edge(u2, v2)) return TWitness{y1, y2, v2, u, x, u2};
    return TWitness{y2, v2, u2, y_star, x_star, v};
}

}  // namespace

SolveResult solve_t_free(const Graph& g) {
    if (!is_connected(g)) fail(ErrorKind::Precondition, "solve_t_free requires a connected graph");

    SolveResult res;
    res.algorithm = "tfree";
    init_rule_counts(res.stats, /*enable_r10=*/true);
    const int n = g.vertex_count();
    if (n % 2 == 1 || n < 2) return res;

    for (const Edge& e : g.edges()) {
        SolverState state(g, e.first, e.second);
        ++res.stats.nodes;
        auto outcome = apply_reductions(state, res.stats, /*enable_r10=*/true);
        if (outcome.kind == ReductionOutcome::Kind::Infeasible) continue;
        if (state.free_count() == 0) {
            auto terminal = terminal_check(state);
            if (terminal.is_pmc) {
                res.has_pmc = true;
                res.certificate = std::move(terminal.cut);
                res.stats.seed_edge = e;
                break;
            }
            continue;
        }
        if (auto witness = stuck_seed_analysis(state)) {
            PMC_CHECK(validate_t_witness(g, *witness), "extracted witness induces T");
            throw TFreeViolation(*witness);
        }
        // No separating cut for this seed; try the next edge.
    }
    verify_pmc_certificate(g, res);
    return res;
}

}  // namespace pmc
