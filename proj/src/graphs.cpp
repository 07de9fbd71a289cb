#include "crncert/graphs.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace crncert {

ComplexDigraph complex_digraph(const Network& net) {
    Network exp = irreversible_expansion(net);
    ComplexDigraph g;
    g.species = exp.species;
    auto vertex_of = [&](const Complex& c) {
        for (size_t i = 0; i < g.vertices.size(); ++i)
            if (g.vertices[i] == c) return int(i);
        g.vertices.push_back(c);
        return int(g.vertices.size()) - 1;
    };
    for (const Reaction& r : exp.reactions) {
        int u = vertex_of(r.left), v = vertex_of(r.right);
        g.arcs.emplace_back(u, v);
    }
    int n = int(exp.species.size()), c = int(g.vertices.size()), m = int(g.arcs.size());
    g.Y = RatMatrix(n, c);
    for (int v = 0; v < c; ++v)
        for (const auto& [i, mult] : g.vertices[v]) g.Y.at(i, v) = mult;
    g.theta = RatMatrix(c, m);
    for (int j = 0; j < m; ++j) {
        auto [u, v] = g.arcs[j];
        g.theta.at(u, j) -= 1;
        g.theta.at(v, j) += 1;
    }
    return g;
}

namespace {

// Tarjan strongly connected components; returns component id per vertex.
std::vector<int> scc_ids(int nv, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<std::vector<int>> adj(nv);
    for (auto& [u, v] : arcs) adj[u].push_back(v);
    std::vector<int> idx(nv, -1), low(nv, 0), comp(nv, -1);
    std::vector<int> stack;
    std::vector<bool> on_stack(nv, false);
    int counter = 0, ncomp = 0;
    std::function<void(int)> strongconnect = [&](int v) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w : adj[v]) {
            if (idx[w] < 0) {
                strongconnect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], idx[w]);
            }
        }
        if (low[v] == idx[v]) {
            while (true) {
                int w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = ncomp;
                if (w == v) break;
            }
            ++ncomp;
        }
    };
    for (int v = 0; v < nv; ++v)
        if (idx[v] < 0) strongconnect(v);
    return comp;
}

}  // namespace

bool is_weakly_reversible(const ComplexDigraph& g) {
    auto comp = scc_ids(int(g.vertices.size()), g.arcs);
    for (auto& [u, v] : g.arcs)
        if (comp[u] != comp[v]) return false;
    return true;
}

std::vector<long> arc_cycle_counts(const ComplexDigraph& g) {
    int nv = int(g.vertices.size());
    std::vector<long> counts(g.arcs.size(), 0);
    // out-arcs as (target, arc index)
    std::vector<std::vector<std::pair<int, int>>> out(nv);
    for (size_t j = 0; j < g.arcs.size(); ++j) out[g.arcs[j].first].emplace_back(g.arcs[j].second, int(j));

    std::vector<bool> on_path(nv, false);
    std::vector<int> path_arcs;
    // Enumerate elementary circuits anchored at their smallest vertex.
    std::function<void(int, int)> dfs = [&](int anchor, int v) {
        on_path[v] = true;
        for (auto& [w, a] : out[v]) {
            if (w < anchor) continue;
            if (w == anchor) {
                ++counts[a];
                for (int pa : path_arcs) ++counts[pa];
            } else if (!on_path[w]) {
                path_arcs.push_back(a);
                dfs(anchor, w);
                path_arcs.pop_back();
            }
        }
        on_path[v] = false;
    };
    for (int anchor = 0; anchor < nv; ++anchor) dfs(anchor, anchor);
    return counts;
}

DSRGraph dsr_graph(const Network& net, DSRMode mode) {
    const Network src = (mode == DSRMode::ReversibleAsPairs) ? irreversible_expansion(net) : net;
    StoichTriple st = stoichiometric_matrices(src);
    SignPatternMatrix minus_dv = rate_pattern(src).negated();  // m x n pattern of -Dv
    DSRGraph g;
    g.species_names = src.species;
    g.n_reactions = int(src.reactions.size());
    int n = int(src.species.size());
    for (int j = 0; j < g.n_reactions; ++j) {
        for (int i = 0; i < n; ++i) {
            const Rat& a = st.gamma.at(i, j);
            SignEntry b = minus_dv.at(j, i);
            // S->R edge signs contributed by -Dv (ANY contributes both)
            std::vector<int> s_to_r;
            if (b == SignEntry::POS) s_to_r = {+1};
            else if (b == SignEntry::NEG) s_to_r = {-1};
            else if (b == SignEntry::ANY) s_to_r = {+1, -1};
            if (a != 0) {
                int asign = a > 0 ? +1 : -1;
                auto match = std::find(s_to_r.begin(), s_to_r.end(), asign);
                if (match != s_to_r.end()) {
                    g.edges.push_back({i, j, asign, abs(a), EdgeDir::Undirected});
                    s_to_r.erase(match);
                } else {
                    g.edges.push_back({i, j, asign, abs(a), EdgeDir::ReactionToSpecies});
                }
            }
            for (int s : s_to_r) g.edges.push_back({i, j, s, std::nullopt, EdgeDir::SpeciesToReaction});
        }
    }
    return g;
}

DSRGraph sr_graph(const RatMatrix& A) {
    DSRGraph g;
    g.n_reactions = A.cols();
    for (int i = 0; i < A.rows(); ++i) g.species_names.push_back("x" + std::to_string(i + 1));
    for (int j = 0; j < A.cols(); ++j)
        for (int i = 0; i < A.rows(); ++i)
            if (A.at(i, j) != 0)
                g.edges.push_back({i, j, A.at(i, j) > 0 ? +1 : -1, abs(A.at(i, j)), EdgeDir::Undirected});
    return g;
}

namespace {

struct Arc {
    int to;
    int edge_id;
    bool forward;  // species -> reaction
};

struct CycleKey {
    std::vector<int> vertices;
    std::vector<int> edge_ids;
    bool operator<(const CycleKey& o) const {
        if (vertices != o.vertices) return vertices < o.vertices;
        return edge_ids < o.edge_ids;
    }
};

}  // namespace

std::vector<DSRCycle> enumerate_cycles(const DSRGraph& g) {
    int n = int(g.species_names.size());
    int nv = n + g.n_reactions;
    std::vector<std::vector<Arc>> out(nv);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const DSREdge& ed = g.edges[e];
        int sv = ed.species, rv = n + ed.reaction;
        if (ed.dir == EdgeDir::Undirected || ed.dir == EdgeDir::SpeciesToReaction)
            out[sv].push_back({rv, int(e), true});
        if (ed.dir == EdgeDir::Undirected || ed.dir == EdgeDir::ReactionToSpecies)
            out[rv].push_back({sv, int(e), false});
    }
    std::set<CycleKey> seen;
    std::vector<DSRCycle> cycles;

    std::vector<bool> on_path(nv, false), edge_used(g.edges.size(), false);
    DSRCycle cur;

    auto record = [&](const DSRCycle& c) {
        // canonical key: the traversal or its reversal, whichever is smaller
        CycleKey fwd{c.vertices, c.edge_ids};
        size_t k = c.vertices.size();
        CycleKey rev;
        rev.vertices.push_back(c.vertices[0]);
        for (size_t t = k; t-- > 1;) rev.vertices.push_back(c.vertices[t]);
        for (size_t t = k; t-- > 0;) rev.edge_ids.push_back(c.edge_ids[t]);
        const CycleKey& key = std::min(fwd, rev);
        if (seen.insert(key).second) cycles.push_back(c);
    };

    std::function<void(int, int)> dfs = [&](int anchor, int v) {
        on_path[v] = true;
        for (const Arc& a : out[v]) {
            if (a.to < anchor || edge_used[a.edge_id]) continue;
            if (a.to == anchor) {
                if (cur.vertices.size() >= 2) {
                    DSRCycle c = cur;
                    c.edge_ids.push_back(a.edge_id);
                    c.forward.push_back(a.forward);
                    record(c);
                }
            } else if (!on_path[a.to]) {
                cur.vertices.push_back(a.to);
                cur.edge_ids.push_back(a.edge_id);
                cur.forward.push_back(a.forward);
                edge_used[a.edge_id] = true;
                dfs(anchor, a.to);
                edge_used[a.edge_id] = false;
                cur.vertices.pop_back();
                cur.edge_ids.pop_back();
                cur.forward.pop_back();
            }
        }
        on_path[v] = false;
    };
    for (int anchor = 0; anchor < nv; ++anchor) {
        cur.vertices = {anchor};
        cur.edge_ids.clear();
        cur.forward.clear();
        dfs(anchor, anchor);
    }
    std::sort(cycles.begin(), cycles.end(), [](const DSRCycle& a, const DSRCycle& b) {
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
        if (a.vertices != b.vertices) return a.vertices < b.vertices;
        return a.edge_ids < b.edge_ids;
    });
    return cycles;
}

bool is_e_cycle(const DSRGraph& g, const DSRCycle& c) {
    int sign = 1;
    for (int e : c.edge_ids) sign *= g.edges[e].sign;
    int half = int(c.edge_ids.size()) / 2;
    int p = ((half % 2) ? -1 : 1) * sign;
    return p == 1;
}

bool is_s_cycle(const DSRGraph& g, const DSRCycle& c) {
    Rat odd = 1, even = 1;
    for (size_t t = 0; t < c.edge_ids.size(); ++t) {
        const auto& lbl = g.edges[c.edge_ids[t]].label;
        if (!lbl) return false;  // infinite label
        ((t % 2) ? odd : even) *= *lbl;
    }
    return odd == even;
}

bool has_s_to_r_intersection(const DSRGraph& g, const DSRCycle& a, const DSRCycle& b) {
    (void)g;
    std::set<int> ea(a.edge_ids.begin(), a.edge_ids.end());
    std::set<int> shared;
    for (int e : b.edge_ids)
        if (ea.count(e)) shared.insert(e);
    if (shared.empty()) return false;

    // compatible orientation: some orientation pair induces the same direction
    // on every shared edge; a cycle traversing any directed edge has only its
    // forward orientation.
    auto orientations = [&](const DSRCycle& c) {
        std::vector<std::vector<bool>> out{c.forward};
        bool reversible = true;
        for (int e : c.edge_ids)
            if (g.edges[e].dir != EdgeDir::Undirected) reversible = false;
        if (reversible) {
            std::vector<bool> rev;
            for (size_t t = c.forward.size(); t-- > 0;) rev.push_back(!c.forward[t]);
            out.push_back(rev);
        }
        return out;
    };
    auto dir_map = [&](const DSRCycle& c, const std::vector<bool>& fwd) {
        std::map<int, bool> m;
        for (size_t t = 0; t < c.edge_ids.size(); ++t) m[c.edge_ids[t]] = fwd[t];
        return m;
    };
    bool compatible = false;
    for (const auto& oa : orientations(a)) {
        auto ma = dir_map(a, oa);
        for (const auto& ob : orientations(b)) {
            auto mb = dir_map(b, ob);
            bool ok = true;
            for (int e : shared)
                if (ma[e] != mb[e]) { ok = false; break; }
            if (ok) compatible = true;
        }
    }
    if (!compatible) return false;

    // components of the intersection (shared vertices + shared edges): every
    // component must contain an odd number of edges; an isolated shared vertex
    // is an even (zero-edge) component.
    std::set<int> va(a.vertices.begin(), a.vertices.end());
    std::set<int> shared_v;
    for (int v : b.vertices)
        if (va.count(v)) shared_v.insert(v);
    std::map<int, int> parent;
    for (int v : shared_v) parent[v] = v;
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    int n = int(g.species_names.size());
    for (int e : shared) {
        int u = g.edges[e].species, v = n + g.edges[e].reaction;
        parent[find(u)] = find(v);
    }
    std::map<int, int> edge_count;
    for (int v : shared_v) edge_count[find(v)] = 0;
    for (int e : shared) ++edge_count[find(g.edges[e].species)];
    for (auto& [root, cnt] : edge_count)
        if (cnt % 2 == 0) return false;
    return true;
}

StarVerdict condition_star(const DSRGraph& g) {
    auto cycles = enumerate_cycles(g);
    std::vector<const DSRCycle*> e_cycles;
    for (const DSRCycle& c : cycles) {
        if (!is_e_cycle(g, c)) continue;
        if (!is_s_cycle(g, c)) return {false, StarViolation{StarViolation::ECycleNotSCycle, c, std::nullopt}};
        e_cycles.push_back(&c);
    }
    for (size_t i = 0; i < e_cycles.size(); ++i)
        for (size_t j = i + 1; j < e_cycles.size(); ++j)
            if (has_s_to_r_intersection(g, *e_cycles[i], *e_cycles[j]))
                return {false, StarViolation{StarViolation::ECyclePairSRIntersection, *e_cycles[i], *e_cycles[j]}};
    return {true, std::nullopt};
}

namespace {

std::string label_str(const std::optional<Rat>& l) {
    return l ? to_string(*l) : std::string("inf");
}

}  // namespace

std::string export_dot(const DSRGraph& g) {
    std::ostringstream os;
    os << "digraph DSR {\n";
    for (size_t i = 0; i < g.species_names.size(); ++i)
        os << "  \"S_" << g.species_names[i] << "\" [shape=circle];\n";
    for (int j = 0; j < g.n_reactions; ++j) os << "  \"R_" << j << "\" [shape=box, style=filled, fillcolor=black, width=0.12, height=0.12, label=\"\"];\n";
    for (const DSREdge& e : g.edges) {
        std::string sname = "\"S_" + g.species_names[e.species] + "\"";
        std::string rname = "\"R_" + std::to_string(e.reaction) + "\"";
        std::string from = sname, to = rname, dirattr;
        if (e.dir == EdgeDir::ReactionToSpecies) {
            from = rname;
            to = sname;
        } else if (e.dir == EdgeDir::Undirected) {
            dirattr = ", dir=none";
        }
        os << "  " << from << " -> " << to << " [label=\"" << label_str(e.label) << "\"";
        if (e.sign < 0) os << ", style=dashed";
        os << dirattr << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string export_dot(const ComplexDigraph& g) {
    std::ostringstream os;
    os << "digraph complexes {\n";
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        std::string lbl;
        if (g.vertices[v].empty()) lbl = "0";
        for (const auto& [i, mult] : g.vertices[v]) {
            if (!lbl.empty()) lbl += "+";
            if (mult != 1) lbl += to_string(mult);
            lbl += g.species[i];
        }
        os << "  \"C_" << v << "\" [label=\"" << lbl << "\"];\n";
    }
    for (const auto& [u, v] : g.arcs) os << "  \"C_" << u << "\" -> \"C_" << v << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace crncert
