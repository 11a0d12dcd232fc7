#pragma once

// The class-similarity graph and the two community detectors that run on
// it: Girvan-Newman (in the literal smallest-weight-removal reading and the
// classical betweenness variant) and multi-level Louvain.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "monosplit/model.hpp"
#include "monosplit/rng.hpp"

namespace monosplit {

struct Edge {
    std::size_t u = 0;  // u < v always
    std::size_t v = 0;
    double w = 0.0;
};

/// Undirected weighted graph over the project's classes. Weights are class
/// similarities in (0,1]; zero-similarity pairs simply have no edge.
struct SimilarityGraph {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;

    double total_weight() const {
        double m = 0.0;
        for (const Edge& e : edges) m += e.w;
        return m;
    }
};

/// Keeps every pair with similarity strictly above `threshold` (default:
/// every positive-similarity pair). Isolated nodes are retained.
inline SimilarityGraph build_graph(const SimilarityMatrix& cs,
                                   const std::vector<std::string>& names,
                                   double threshold = 0.0) {
    if (cs.size() != names.size())
        throw std::invalid_argument("matrix/name size mismatch");
    if (threshold < 0.0)
        throw std::invalid_argument("threshold must be >= 0");
    SimilarityGraph g;
    g.nodes = names;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            if (cs.at(i, j) > threshold) g.edges.push_back({i, j, cs.at(i, j)});
    return g;
}

namespace graph_detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

/// Component id per node, ids ordered by each component's smallest member.
inline std::vector<int> components(std::size_t n,
                                   const std::vector<Edge>& edges) {
    UnionFind uf(n);
    for (const Edge& e : edges) uf.unite(e.u, e.v);
    std::vector<int> comp(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = uf.find(i);
        if (comp[root] == -1) comp[root] = next++;
        comp[i] = comp[root];
    }
    return comp;
}

inline Decomposition partition_from_components(
    const std::vector<std::string>& names, const std::vector<int>& comp) {
    return decomposition_from_labels(names, comp);
}

/// Brandes edge betweenness on the weighted graph, edge length = 1/w.
/// Returns per-edge centrality aligned with `edges`.
inline std::vector<double> edge_betweenness(std::size_t n,
                                            const std::vector<Edge>& edges) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        adj[edges[k].u].push_back({edges[k].v, k});
        adj[edges[k].v].push_back({edges[k].u, k});
    }
    std::vector<double> centrality(edges.size(), 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> dist(n, std::numeric_limits<double>::infinity());
        std::vector<double> sigma(n, 0.0);
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pred(n);
        std::vector<std::size_t> settle_order;
        std::vector<bool> settled(n, false);
        using QItem = std::pair<double, std::size_t>;
        std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;
        dist[s] = 0.0;
        sigma[s] = 1.0;
        pq.push({0.0, s});
        while (!pq.empty()) {
            const auto [d, u] = pq.top();
            pq.pop();
            if (settled[u]) continue;
            settled[u] = true;
            settle_order.push_back(u);
            for (const auto& [v, k] : adj[u]) {
                const double nd = d + 1.0 / edges[k].w;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    sigma[v] = sigma[u];
                    pred[v].assign(1, {u, k});
                    pq.push({nd, v});
                } else if (nd == dist[v] && !settled[v]) {
                    sigma[v] += sigma[u];
                    pred[v].push_back({u, k});
                }
            }
        }
        std::vector<double> delta(n, 0.0);
        for (auto it = settle_order.rbegin(); it != settle_order.rend(); ++it) {
            const std::size_t w = *it;
            for (const auto& [v, k] : pred[w]) {
                const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                centrality[k] += c;
                delta[v] += c;
            }
        }
    }
    // every unordered pair was counted from both endpoints
    for (double& c : centrality) c /= 2.0;
    return centrality;
}

}  // namespace graph_detail

/// Weighted Newman modularity of a partition. Every graph node must be
/// assigned to exactly one service. An edgeless graph scores 0.
inline double modularity(const SimilarityGraph& g, const Decomposition& d) {
    const std::size_t n = g.nodes.size();
    std::vector<int> community(n, -1);
    int next = 0;
    for (const auto& [name, members] : d.services) {
        for (const auto& c : members) {
            auto it = std::find(g.nodes.begin(), g.nodes.end(), c);
            if (it == g.nodes.end())
                throw std::invalid_argument("class not in graph: " + c);
            const std::size_t idx =
                static_cast<std::size_t>(it - g.nodes.begin());
            if (community[idx] != -1)
                throw std::invalid_argument("class assigned twice: " + c);
            community[idx] = next;
        }
        ++next;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (community[i] == -1)
            throw std::invalid_argument("node not covered: " + g.nodes[i]);

    const double m = g.total_weight();
    if (m == 0.0) return 0.0;
    std::vector<double> internal(static_cast<std::size_t>(next), 0.0);
    std::vector<double> degree(n, 0.0);
    for (const Edge& e : g.edges) {
        degree[e.u] += e.w;
        degree[e.v] += e.w;
        if (community[e.u] == community[e.v])
            internal[static_cast<std::size_t>(community[e.u])] += e.w;
    }
    std::vector<double> total(static_cast<std::size_t>(next), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        total[static_cast<std::size_t>(community[i])] += degree[i];
    double q = 0.0;
    for (int c = 0; c < next; ++c) {
        const double in = internal[static_cast<std::size_t>(c)];
        const double tot = total[static_cast<std::size_t>(c)];
        q += in / m - (tot / (2.0 * m)) * (tot / (2.0 * m));
    }
    return q;
}

enum class GnMode { paper_literal, betweenness };

struct GirvanNewmanResult {
    std::vector<Decomposition> levels;       // levels[0] = initial components
    std::vector<double> level_modularity;    // evaluated on the input graph
    std::size_t recommended = 0;             // argmax modularity, first wins
};

/// Divisive community detection. paper_literal removes edges in ascending
/// similarity order (the similarity weight read directly as the edge's
/// interdependence centrality); betweenness removes the edge with the
/// highest weighted shortest-path betweenness, recomputed after every
/// removal. A dendrogram level is recorded whenever the component count
/// changes; removal continues until no edges remain.
inline GirvanNewmanResult girvan_newman(const SimilarityGraph& g,
                                        GnMode mode = GnMode::paper_literal) {
    if (g.nodes.empty()) throw std::invalid_argument("empty graph");
    using namespace graph_detail;
    const std::size_t n = g.nodes.size();
    GirvanNewmanResult result;

    std::vector<Edge> edges = g.edges;
    auto record = [&](const std::vector<int>& comp) {
        result.levels.push_back(partition_from_components(g.nodes, comp));
        result.level_modularity.push_back(modularity(g, result.levels.back()));
    };
    std::vector<int> comp = components(n, edges);
    record(comp);
    int comp_count = 1 + *std::max_element(comp.begin(), comp.end());

    if (mode == GnMode::paper_literal) {
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            if (a.w != b.w) return a.w < b.w;
            if (a.u != b.u) return a.u < b.u;
            return a.v < b.v;
        });
        for (std::size_t k = 0; k < edges.size(); ++k) {
            std::vector<Edge> rest(edges.begin() + static_cast<long>(k) + 1,
                                   edges.end());
            comp = components(n, rest);
            const int count = 1 + *std::max_element(comp.begin(), comp.end());
            if (count != comp_count) {
                comp_count = count;
                record(comp);
            }
        }
    } else {
        std::vector<Edge> remaining = g.edges;
        while (!remaining.empty()) {
            const auto centrality = edge_betweenness(n, remaining);
            std::size_t pick = 0;
            for (std::size_t k = 1; k < remaining.size(); ++k) {
                if (centrality[k] > centrality[pick] ||
                    (centrality[k] == centrality[pick] &&
                     (remaining[k].u < remaining[pick].u ||
                      (remaining[k].u == remaining[pick].u &&
                       remaining[k].v < remaining[pick].v))))
                    pick = k;
            }
            remaining.erase(remaining.begin() + static_cast<long>(pick));
            comp = components(n, remaining);
            const int count = 1 + *std::max_element(comp.begin(), comp.end());
            if (count != comp_count) {
                comp_count = count;
                record(comp);
            }
        }
    }

    result.recommended = 0;
    for (std::size_t i = 1; i < result.levels.size(); ++i)
        if (result.level_modularity[i] >
            result.level_modularity[result.recommended])
            result.recommended = i;
    return result;
}

namespace louvain_detail {

/// One aggregation level: adjacency maps between super-nodes plus self
/// weights holding twice the internal weight of each super-node.
struct LevelGraph {
    std::vector<std::map<std::size_t, double>> adj;  // no self entries
    std::vector<double> self;                        // both-orders sum
    double two_m = 0.0;

    std::size_t size() const { return adj.size(); }

    double degree(std::size_t i) const {
        double k = self[i];
        for (const auto& [j, w] : adj[i]) k += w;
        return k;
    }
};

/// Phase 1: local moves in a seeded order until no move strictly improves
/// modularity. Returns the community of each node; ties go to the lowest
/// community id.
inline std::vector<std::size_t> local_moves(const LevelGraph& lg,
                                            std::mt19937_64& rng) {
    const std::size_t n = lg.size();
    std::vector<std::size_t> com(n);
    std::iota(com.begin(), com.end(), 0);
    std::vector<double> tot(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) tot[i] = lg.degree(i);
    if (lg.two_m == 0.0) return com;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    deterministic_shuffle(order, rng);

    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t i : order) {
            const double k_i = lg.degree(i);
            const std::size_t old_com = com[i];
            std::map<std::size_t, double> links;  // community -> weight to it
            for (const auto& [j, w] : lg.adj[i]) links[com[j]] += w;
            tot[old_com] -= k_i;
            double best_gain = links.count(old_com)
                                   ? links[old_com] - tot[old_com] * k_i / lg.two_m
                                   : -tot[old_com] * k_i / lg.two_m;
            std::size_t best_com = old_com;
            for (const auto& [c, w] : links) {
                if (c == old_com) continue;
                const double gain = w - tot[c] * k_i / lg.two_m;
                if (gain > best_gain ||
                    (gain == best_gain && c < best_com)) {
                    best_gain = gain;
                    best_com = c;
                }
            }
            tot[best_com] += k_i;
            if (best_com != old_com) {
                com[i] = best_com;
                moved = true;
            }
        }
    }
    return com;
}

/// Renumbers community ids to 0..k-1 in order of first appearance.
inline std::size_t normalize(std::vector<std::size_t>& com) {
    std::map<std::size_t, std::size_t> remap;
    for (std::size_t& c : com) {
        auto it = remap.find(c);
        if (it == remap.end())
            it = remap.emplace(c, remap.size()).first;
        c = it->second;
    }
    return remap.size();
}

/// Phase 2: communities become super-nodes. Both directions of each cross
/// pair are visited once, so the accumulated adjacency stays a correct
/// both-endpoint representation; internal weight lands in `self` twice,
/// matching its both-orders convention.
inline LevelGraph aggregate(const LevelGraph& lg,
                            const std::vector<std::size_t>& com,
                            std::size_t k) {
    LevelGraph next;
    next.adj.assign(k, {});
    next.self.assign(k, 0.0);
    next.two_m = lg.two_m;
    for (std::size_t i = 0; i < lg.size(); ++i) {
        next.self[com[i]] += lg.self[i];
        for (const auto& [j, w] : lg.adj[i]) {
            if (com[i] == com[j])
                next.self[com[i]] += w;
            else
                next.adj[com[i]][com[j]] += w;
        }
    }
    return next;
}

}  // namespace louvain_detail

/// Multi-level Louvain on weighted modularity (resolution 1). Node visit
/// order is a seeded shuffle per level; everything else is deterministic,
/// so a fixed seed gives a fixed partition. Services are numbered by their
/// lowest class index.
inline Decomposition louvain(const SimilarityGraph& g, std::uint64_t seed) {
    if (g.nodes.empty()) throw std::invalid_argument("empty graph");
    using namespace louvain_detail;
    const std::size_t n = g.nodes.size();

    LevelGraph lg;
    lg.adj.assign(n, {});
    lg.self.assign(n, 0.0);
    for (const Edge& e : g.edges) {
        lg.adj[e.u][e.v] += e.w;
        lg.adj[e.v][e.u] += e.w;
        lg.two_m += 2.0 * e.w;
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> node_to_com(n);
    std::iota(node_to_com.begin(), node_to_com.end(), 0);

    while (true) {
        std::vector<std::size_t> com = local_moves(lg, rng);
        const std::size_t k = normalize(com);
        if (k == lg.size()) break;  // no node moved anywhere
        for (std::size_t i = 0; i < n; ++i)
            node_to_com[i] = com[node_to_com[i]];
        lg = aggregate(lg, com, k);
        if (k == 1) break;
    }

    // stable service numbering: first appearance by class index
    std::map<std::size_t, int> remap;
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = remap.find(node_to_com[i]);
        if (it == remap.end())
            it = remap.emplace(node_to_com[i], static_cast<int>(remap.size()))
                     .first;
        labels[i] = it->second;
    }
    return decomposition_from_labels(g.nodes, labels);
}

namespace dot_detail {

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace dot_detail

/// Graphviz export. Node label = class name; edge weight = similarity.
/// When a decomposition is given, each node carries its service id as
/// `group` and a fill color cycling through a 12-color palette; noise
/// classes stay unfilled.
inline std::string to_dot(const SimilarityGraph& g,
                          const Decomposition* d = nullptr) {
    using dot_detail::escape;
    std::map<std::string, int> service_of;
    if (d) {
        int id = 0;
        for (const auto& [name, members] : d->services) {
            for (const auto& c : members) service_of[c] = id;
            ++id;
        }
    }
    std::string out = "graph class_similarity {\n";
    out += "  node [shape=ellipse];\n";
    for (const auto& node : g.nodes) {
        out += "  \"" + escape(node) + "\"";
        auto it = service_of.find(node);
        if (it != service_of.end()) {
            const int color = it->second % 12 + 1;
            out += " [group=" + std::to_string(it->second) +
                   ", style=filled, colorscheme=set312, fillcolor=" +
                   std::to_string(color) + "]";
        }
        out += ";\n";
    }
    for (const Edge& e : g.edges)
        out += "  \"" + escape(g.nodes[e.u]) + "\" -- \"" +
               escape(g.nodes[e.v]) + "\" [weight=" + format_double(e.w) +
               "];\n";
    out += "}\n";
    return out;
}

}  // namespace monosplit
