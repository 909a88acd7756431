#pragma once

// Independent reference implementations used to check the library: exhaustive
// path enumeration scored straight from the objective, a subset-DP shortest
// path, a dense PageRank iteration and a term-frequency ranking. None of them
// share code with the implementations they audit.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "msc/corpus.hpp"
#include "msc/keywords.hpp"
#include "msc/solver.hpp"
#include "msc/word_graph.hpp"

namespace oracle {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Exhaustive enumeration of simple begin->end paths over instance arcs.

inline void enumerate_rec(const std::vector<std::vector<int>>& adj, int v, int end,
                          std::vector<int>& path, std::vector<bool>& visited,
                          std::vector<std::vector<int>>& out) {
    if (v == end) {
        out.push_back(path);
        return;
    }
    for (int u : adj[static_cast<std::size_t>(v)]) {
        if (visited[static_cast<std::size_t>(u)]) continue;
        visited[static_cast<std::size_t>(u)] = true;
        path.push_back(u);
        enumerate_rec(adj, u, end, path, visited, out);
        path.pop_back();
        visited[static_cast<std::size_t>(u)] = false;
    }
}

/// Every simple begin->end path (full vertex sequences, sentinels included).
inline std::vector<std::vector<int>> all_simple_paths(const msc::CompressionInstance& inst) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(inst.vertex_count));
    for (const msc::InstanceArc& a : inst.arcs)
        if (std::isfinite(a.cost)) adj[static_cast<std::size_t>(a.from)].push_back(a.to);
    for (auto& v : adj) std::sort(v.begin(), v.end());
    std::vector<std::vector<int>> paths;
    std::vector<int> path{inst.begin};
    std::vector<bool> visited(static_cast<std::size_t>(inst.vertex_count), false);
    visited[static_cast<std::size_t>(inst.begin)] = true;
    enumerate_rec(adj, inst.begin, inst.end, path, visited, paths);
    return paths;
}

/// Objective value of a full path, computed directly from the model:
/// alpha * arc costs - beta * distinct color costs - gamma * trigram costs
/// for consecutive triples.
inline double score_path(const msc::CompressionInstance& inst, const std::vector<int>& full) {
    std::map<std::pair<int, int>, double> cost;
    for (const msc::InstanceArc& a : inst.arcs) cost[{a.from, a.to}] = a.cost;
    double arcs = 0.0;
    for (std::size_t i = 0; i + 1 < full.size(); ++i)
        arcs += cost.at({full[i], full[i + 1]});
    std::set<int> colors;
    for (int v : full)
        if (inst.color[static_cast<std::size_t>(v)] > 0)
            colors.insert(inst.color[static_cast<std::size_t>(v)]);
    double color_bonus = 0.0;
    for (int k : colors) color_bonus += inst.color_cost[static_cast<std::size_t>(k)];
    double trig_bonus = 0.0;
    for (const msc::InstanceTrigram& t : inst.trigrams)
        for (std::size_t i = 0; i + 2 < full.size(); ++i)
            if (full[i] == t.a && full[i + 1] == t.b && full[i + 2] == t.c) {
                trig_bonus += t.cost;
                break;
            }
    return inst.alpha * arcs - inst.beta * color_bonus - inst.gamma * trig_bonus;
}

inline int word_count(const msc::CompressionInstance& inst, const std::vector<int>& full) {
    int n = 0;
    for (int v : full)
        if (inst.is_word[static_cast<std::size_t>(v)]) ++n;
    return n;
}

/// Scores of the k best feasible paths, ascending, by brute force.
inline std::vector<double> kbest_scores(const msc::CompressionInstance& inst, int k) {
    std::vector<double> scores;
    for (const auto& full : all_simple_paths(inst))
        if (word_count(inst, full) >= inst.pmin) scores.push_back(score_path(inst, full));
    std::sort(scores.begin(), scores.end());
    if (static_cast<int>(scores.size()) > k) scores.resize(static_cast<std::size_t>(k));
    return scores;
}

// ---------------------------------------------------------------------------
// Brute-force candidate enumeration over a word graph, sorted by
// (cohesion sum, lexicographic word path).

struct BruteCandidate {
    std::vector<int> path;   // word vertices only
    double cohesion_sum = 0.0;
    int length = 0;
};

inline std::vector<BruteCandidate> brute_candidates(const msc::WordGraph& g, int min_words) {
    msc::CompressionInstance skeleton;
    skeleton.vertex_count = static_cast<int>(g.vertex_count());
    skeleton.begin = g.begin_id();
    skeleton.end = g.end_id();
    for (auto [from, to, w] : g.arcs())
        if (std::isfinite(w)) skeleton.arcs.push_back({from, to, w});
    std::vector<BruteCandidate> out;
    if (skeleton.begin < 0 || skeleton.end < 0) return out;
    for (const auto& full : all_simple_paths(skeleton)) {
        if (static_cast<int>(full.size()) - 2 < min_words) continue;
        BruteCandidate c;
        c.path.assign(full.begin() + 1, full.end() - 1);
        c.length = static_cast<int>(c.path.size());
        for (std::size_t i = 0; i + 1 < full.size(); ++i)
            c.cohesion_sum += g.weight(full[i], full[i + 1]);
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const BruteCandidate& a, const BruteCandidate& b) {
        if (a.cohesion_sum != b.cohesion_sum) return a.cohesion_sum < b.cohesion_sum;
        return a.path < b.path;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Subset-DP constrained shortest path (the beta = gamma = 0 special case):
// cheapest simple begin->end path over word vertices with >= pmin of them.

inline double dp_shortest_constrained(const msc::CompressionInstance& inst) {
    std::vector<int> words;
    for (int v = 0; v < inst.vertex_count; ++v)
        if (inst.is_word[static_cast<std::size_t>(v)]) words.push_back(v);
    const int n = static_cast<int>(words.size());
    if (n > 20) throw std::invalid_argument("dp oracle: too many word vertices");
    std::vector<int> index(static_cast<std::size_t>(inst.vertex_count), -1);
    for (int i = 0; i < n; ++i) index[static_cast<std::size_t>(words[static_cast<std::size_t>(i)])] = i;

    std::map<std::pair<int, int>, double> cost;
    for (const msc::InstanceArc& a : inst.arcs) {
        auto it = cost.find({a.from, a.to});
        if (it == cost.end() || a.cost < it->second) cost[{a.from, a.to}] = a.cost;
    }
    auto arc = [&](int u, int v) {
        auto it = cost.find({u, v});
        return it == cost.end() ? kInf : it->second;
    };

    const std::size_t masks = std::size_t{1} << n;
    std::vector<std::vector<double>> dist(masks, std::vector<double>(static_cast<std::size_t>(n), kInf));
    for (int i = 0; i < n; ++i) {
        double c = arc(inst.begin, words[static_cast<std::size_t>(i)]);
        if (c < kInf) dist[std::size_t{1} << i][static_cast<std::size_t>(i)] = c;
    }
    double best = kInf;
    for (std::size_t mask = 1; mask < masks; ++mask) {
        for (int i = 0; i < n; ++i) {
            double d = dist[mask][static_cast<std::size_t>(i)];
            if (d == kInf || !(mask >> i & 1)) continue;
            if (std::popcount(mask) >= inst.pmin) {
                double c = arc(words[static_cast<std::size_t>(i)], inst.end);
                if (c < kInf) best = std::min(best, inst.alpha * (d + c));
            }
            for (int j = 0; j < n; ++j) {
                if (mask >> j & 1) continue;
                double c = arc(words[static_cast<std::size_t>(i)], words[static_cast<std::size_t>(j)]);
                if (c == kInf) continue;
                double& slot = dist[mask | (std::size_t{1} << j)][static_cast<std::size_t>(j)];
                if (d + c < slot) slot = d + c;
            }
        }
    }
    return best;   // kInf when infeasible
}

// ---------------------------------------------------------------------------
// Dense damped power iteration over a word graph (PageRank with uniform
// redistribution of dangling mass), run to near fixed point.

inline std::map<std::string, double> dense_textrank(const msc::WordGraph& g,
                                                    double damping = 0.85) {
    const int n = static_cast<int>(g.vertex_count());
    std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (auto [from, to, weight] : g.arcs())
        if (std::isfinite(weight) && weight > 0.0)
            w[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] = weight;
    if (g.begin_id() >= 0 && g.end_id() >= 0 &&
        w[static_cast<std::size_t>(g.end_id())][static_cast<std::size_t>(g.begin_id())] == 0.0)
        w[static_cast<std::size_t>(g.end_id())][static_cast<std::size_t>(g.begin_id())] = 1.0;

    std::vector<double> strength(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) strength[static_cast<std::size_t>(i)] += w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

    std::vector<double> x(static_cast<std::size_t>(n), 1.0 / n), y(static_cast<std::size_t>(n));
    for (int it = 0; it < 2000; ++it) {
        double dangling = 0.0;
        for (int i = 0; i < n; ++i)
            if (strength[static_cast<std::size_t>(i)] <= 0.0) dangling += x[static_cast<std::size_t>(i)];
        double delta = 0.0;
        for (int j = 0; j < n; ++j) {
            double mass = dangling / n;
            for (int i = 0; i < n; ++i)
                if (strength[static_cast<std::size_t>(i)] > 0.0 && w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0.0)
                    mass += x[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / strength[static_cast<std::size_t>(i)];
            y[static_cast<std::size_t>(j)] = (1.0 - damping) / n + damping * mass;
            delta = std::max(delta, std::abs(y[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(j)]));
        }
        x.swap(y);
        if (delta < 1e-13) break;
    }
    double total = 0.0;
    for (double v : x) total += v;
    std::map<std::string, double> scores;
    for (const msc::Vertex& v : g.vertices())
        scores[v.lower] += x[static_cast<std::size_t>(v.id)] / total;
    return scores;
}

// ---------------------------------------------------------------------------
// Term-frequency keyword ranking over non-stopword lowercase forms.

inline std::vector<std::string> frequency_ranking(const msc::Cluster& cluster,
                                                  const msc::StopwordSet& stopwords) {
    std::map<std::string, int> counts;
    for (const msc::Sentence& s : cluster.sentences)
        for (const msc::Token& t : s.tokens)
            if (!t.is_stopword && !stopwords.contains(t.lower)) ++counts[t.lower];
    std::vector<std::string> forms;
    for (const auto& [form, c] : counts) forms.push_back(form);
    std::stable_sort(forms.begin(), forms.end(), [&](const std::string& a, const std::string& b) {
        if (counts[a] != counts[b]) return counts[a] > counts[b];
        return a < b;
    });
    return forms;
}

}  // namespace oracle
