#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "msc/keywords.hpp"
#include "msc/solver.hpp"
#include "msc/word_graph.hpp"

// The two published baselines: pick among the k lowest-cohesion simple
// begin->end paths, either by plain length normalization (Filippova) or by
// TextRank keyphrase rescoring (Boudin-Morin).

namespace msc {

struct CandidatePath {
    std::vector<int> path;      // word vertices only
    double cohesion_sum = 0.0;  // over all arcs, sentinel arcs included
    int length = 0;             // word count
};

/// Default keyphrase tag prefixes: nouns and adjectives.
inline const std::vector<std::string> kDefaultKeyphrasePrefixes = {"N", "A"};

/// Enumerates the k lowest-cohesion-sum simple begin->end paths with at
/// least `min_words` word vertices, ascending by sum with lexicographic
/// vertex-id tie order. Best-first expansion of partial paths guided by the
/// unconstrained distance to the end vertex; shorter-than-minimum paths are
/// enumerated and filtered, so the pool keeps growing until k survive or the
/// graph is exhausted. `max_expansions` (0 = unlimited) caps the search on
/// degenerate inputs.
inline std::vector<CandidatePath> k_shortest_paths(const WordGraph& graph, int k,
                                                   int min_words,
                                                   std::size_t max_expansions = 0) {
    std::vector<CandidatePath> result;
    if (k < 1 || graph.begin_id() < 0 || graph.end_id() < 0) return result;
    const int begin = graph.begin_id();
    const int end = graph.end_id();
    const auto n = graph.vertex_count();
    constexpr double inf = std::numeric_limits<double>::infinity();

    // unconstrained shortest distance to end (reverse Dijkstra)
    std::vector<double> to_end(n, inf);
    {
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        to_end[static_cast<std::size_t>(end)] = 0.0;
        pq.push({0.0, end});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d > to_end[static_cast<std::size_t>(v)]) continue;
            for (int u : graph.in_neighbors(v)) {
                double w = graph.weight(u, v);
                if (!std::isfinite(w)) continue;
                if (d + w < to_end[static_cast<std::size_t>(u)]) {
                    to_end[static_cast<std::size_t>(u)] = d + w;
                    pq.push({d + w, u});
                }
            }
        }
    }
    if (to_end[static_cast<std::size_t>(begin)] == inf) return result;

    struct Node {
        double bound;           // g + distance-to-end estimate
        std::vector<int> path;  // full path so far, begin included
        double g;

        bool operator>(const Node& other) const {
            if (bound != other.bound) return bound > other.bound;
            return path > other.path;
        }
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<>> pq;
    pq.push({to_end[static_cast<std::size_t>(begin)], {begin}, 0.0});
    std::size_t expansions = 0;

    while (!pq.empty()) {
        Node node = pq.top();
        pq.pop();
        int tip = node.path.back();
        if (tip == end) {
            int words = static_cast<int>(node.path.size()) - 2;
            if (words >= min_words) {
                CandidatePath c;
                c.path.assign(node.path.begin() + 1, node.path.end() - 1);
                c.cohesion_sum = node.g;
                c.length = words;
                result.push_back(std::move(c));
                if (static_cast<int>(result.size()) == k) break;
            }
            continue;
        }
        if (max_expansions && ++expansions > max_expansions) break;
        for (int u : graph.out_neighbors(tip)) {
            double w = graph.weight(tip, u);
            if (!std::isfinite(w)) continue;
            if (std::find(node.path.begin(), node.path.end(), u) != node.path.end()) continue;
            if (to_end[static_cast<std::size_t>(u)] == inf) continue;
            Node next;
            next.g = node.g + w;
            next.bound = next.g + to_end[static_cast<std::size_t>(u)];
            next.path = node.path;
            next.path.push_back(u);
            pq.push(std::move(next));
        }
    }
    return result;
}

namespace detail {

inline Solution candidate_to_solution(const WordGraph& graph, const CandidatePath& c,
                                      double selection_score,
                                      const std::vector<std::string>& verb_prefixes) {
    Solution sol;
    sol.path = c.path;
    sol.raw_score = c.cohesion_sum;
    sol.normalized_score = selection_score;
    for (int v : c.path)
        if (pos_matches_any(graph.vertex(v).pos, verb_prefixes)) { sol.has_verb = true; break; }
    return sol;
}

}  // namespace detail

/// Filippova's selection: cohesion sum divided by word count, minimum among
/// the verb-bearing candidates.
inline std::optional<Solution> filippova_select(const WordGraph& graph,
                                                const std::vector<CandidatePath>& candidates,
                                                const std::vector<std::string>& verb_prefixes =
                                                    kDefaultVerbPrefixes) {
    const CandidatePath* best = nullptr;
    double best_score = 0.0;
    for (const CandidatePath& c : candidates) {
        bool has_verb = false;
        for (int v : c.path)
            if (pos_matches_any(graph.vertex(v).pos, verb_prefixes)) { has_verb = true; break; }
        if (!has_verb) continue;
        double score = c.cohesion_sum / c.length;
        if (!best || score < best_score) { best = &c; best_score = score; }
    }
    if (!best) return std::nullopt;
    return detail::candidate_to_solution(graph, *best, best_score, verb_prefixes);
}

/// Keyphrases of a candidate: maximal runs of consecutive non-stopword
/// vertices whose POS starts with one of the given prefixes.
inline std::vector<std::vector<int>> extract_keyphrases(const WordGraph& graph,
                                                        const std::vector<int>& path,
                                                        const std::vector<std::string>& kp_prefixes =
                                                            kDefaultKeyphrasePrefixes) {
    std::vector<std::vector<int>> phrases;
    std::vector<int> run;
    for (int v : path) {
        const Vertex& vx = graph.vertex(v);
        if (!vx.is_stopword && pos_matches_any(vx.pos, kp_prefixes)) {
            run.push_back(v);
        } else if (!run.empty()) {
            phrases.push_back(std::move(run));
            run.clear();
        }
    }
    if (!run.empty()) phrases.push_back(std::move(run));
    return phrases;
}

/// Boudin-Morin rescoring: score(c) = cohesion sum / (word count * sum of
/// keyphrase relevances), keyphrase relevance being the TextRank mass of its
/// words over length+1. Candidates with zero keyphrase mass rank last;
/// minimum among verb-bearing candidates wins.
inline std::optional<Solution> bm_select(const WordGraph& graph,
                                         const std::vector<CandidatePath>& candidates,
                                         const WordScores& scores,
                                         const std::vector<std::string>& kp_prefixes =
                                             kDefaultKeyphrasePrefixes,
                                         const std::vector<std::string>& verb_prefixes =
                                             kDefaultVerbPrefixes) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const CandidatePath* best = nullptr;
    double best_score = 0.0;
    for (const CandidatePath& c : candidates) {
        bool has_verb = false;
        for (int v : c.path)
            if (pos_matches_any(graph.vertex(v).pos, verb_prefixes)) { has_verb = true; break; }
        if (!has_verb) continue;
        double kp_mass = 0.0;
        for (const std::vector<int>& phrase : extract_keyphrases(graph, c.path, kp_prefixes)) {
            double word_mass = 0.0;
            for (int v : phrase) word_mass += scores.at(graph.vertex(v).lower);
            kp_mass += word_mass / (static_cast<double>(phrase.size()) + 1.0);
        }
        double score = kp_mass > 0.0 ? c.cohesion_sum / (c.length * kp_mass) : inf;
        if (!best || score < best_score) { best = &c; best_score = score; }
    }
    if (!best) return std::nullopt;
    return detail::candidate_to_solution(graph, *best, best_score, verb_prefixes);
}

}  // namespace msc
