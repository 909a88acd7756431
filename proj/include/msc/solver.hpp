#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "msc/keywords.hpp"
#include "msc/word_graph.hpp"

// Exact solver for the compression model: minimize
//   alpha * sum of arc costs  -  beta * sum of used keyword-color costs
//                              -  gamma * sum of used trigram costs
// over simple begin->end paths with at least pmin word vertices. A color
// counts once no matter how many of its vertices appear; a trigram counts
// only when its two arcs are consecutive on the path. The k best solutions
// come from prohibiting each found arc set and re-solving.

namespace msc {

struct InstanceArc {
    int from = -1, to = -1;
    double cost = 0.0;
};

struct InstanceTrigram {
    int a = -1, b = -1, c = -1;
    double cost = 0.0;
};

struct CompressionInstance {
    int vertex_count = 0;
    int begin = -1, end = -1;
    std::vector<InstanceArc> arcs;
    std::vector<bool> is_word;     // per vertex
    std::vector<int> color;        // per vertex, 0 = no keyword
    std::vector<double> color_cost;  // indexed by color, [0] = 0
    std::vector<InstanceTrigram> trigrams;
    std::vector<bool> has_verb;    // per vertex
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;
    int pmin = 8;
};

struct Solution {
    std::vector<int> path;          // word vertices only; begin/end implicit
    double raw_score = 0.0;         // may be negative
    double normalized_score = 0.0;  // exp(raw_score) / word count
    bool has_verb = false;
    std::vector<int> used_colors;   // sorted, distinct
    std::vector<int> used_trigrams; // sorted indices into instance trigrams
};

struct SolveTimeout : std::runtime_error {
    explicit SolveTimeout(const std::string& what) : std::runtime_error(what) {}
};

inline bool pos_matches_any(const std::string& pos, const std::vector<std::string>& prefixes) {
    for (const std::string& p : prefixes)
        if (pos.rfind(p, 0) == 0) return true;
    return false;
}

/// Default verb tag prefixes ("V" catches V, VPP, VINF, ...).
inline const std::vector<std::string> kDefaultVerbPrefixes = {"V"};

/// Assembles a solver instance from a weighted graph, keyword colors and the
/// frequent-trigram set. Arcs with non-finite cohesion are dropped.
inline CompressionInstance make_instance(const WordGraph& graph, const KeywordSet& keywords,
                                         const std::vector<Trigram>& trigrams,
                                         double alpha, double beta, double gamma, int pmin,
                                         const std::vector<std::string>& verb_prefixes =
                                             kDefaultVerbPrefixes) {
    if (alpha <= 0.0) throw std::invalid_argument("make_instance: alpha must be > 0");
    if (beta < 0.0 || gamma < 0.0)
        throw std::invalid_argument("make_instance: beta and gamma must be >= 0");
    if (pmin < 1) throw std::invalid_argument("make_instance: pmin must be >= 1");

    CompressionInstance inst;
    inst.vertex_count = static_cast<int>(graph.vertex_count());
    inst.begin = graph.begin_id();
    inst.end = graph.end_id();
    inst.alpha = alpha;
    inst.beta = beta;
    inst.gamma = gamma;
    inst.pmin = pmin;
    inst.is_word.resize(graph.vertex_count());
    inst.color.resize(graph.vertex_count(), 0);
    inst.has_verb.resize(graph.vertex_count(), false);
    for (const Vertex& v : graph.vertices()) {
        auto id = static_cast<std::size_t>(v.id);
        inst.is_word[id] = v.is_word();
        if (v.is_word()) {
            inst.color[id] = keywords.color_of(v.lower);
            inst.has_verb[id] = pos_matches_any(v.pos, verb_prefixes);
        }
    }
    inst.color_cost.resize(keywords.size() + 1, 1.0);
    inst.color_cost[0] = 0.0;
    for (auto [from, to, w] : graph.arcs())
        if (std::isfinite(w)) inst.arcs.push_back({from, to, w});
    for (const Trigram& t : trigrams)
        inst.trigrams.push_back({t.a, t.b, t.c, t.cost});
    return inst;
}

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Depth-first branch and bound over partial paths. The lower bound adds the
// unconstrained shortest-path distance to the end vertex and subtracts every
// bonus that is still collectible, so it never overestimates the best
// completion. Neighbors are explored by ascending vertex id, which makes the
// search (and the incumbent chosen among ties) fully deterministic.
class ExactSolver {
public:
    explicit ExactSolver(const CompressionInstance& inst,
                         std::chrono::steady_clock::duration budget =
                             std::chrono::seconds(30))
        : inst_(inst), deadline_(std::chrono::steady_clock::now() + budget) {
        const auto n = static_cast<std::size_t>(inst.vertex_count);
        if (inst.begin < 0 || inst.end < 0 ||
            inst.begin >= inst.vertex_count || inst.end >= inst.vertex_count)
            throw std::invalid_argument("solver: instance lacks begin/end vertices");
        out_.resize(n);
        std::vector<std::vector<std::pair<int, double>>> rev(n);
        for (const InstanceArc& a : inst.arcs) {
            if (!std::isfinite(a.cost)) continue;
            out_[static_cast<std::size_t>(a.from)].push_back(a.to);
            rev[static_cast<std::size_t>(a.to)].push_back({a.from, a.cost});
            arc_cost_[key(a.from, a.to)] = a.cost;
        }
        for (auto& adj : out_) {
            std::sort(adj.begin(), adj.end());
            adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        }
        to_end_ = dijkstra_to_end(rev);
        by_middle_.resize(n);
        for (std::size_t t = 0; t < inst.trigrams.size(); ++t)
            by_middle_[static_cast<std::size_t>(inst.trigrams[t].b)].push_back(static_cast<int>(t));
        word_total_ = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (inst.is_word[v]) ++word_total_;
    }

    /// Best solution whose full begin->end vertex path differs from every
    /// entry of `excluded` (prohibiting a path prohibits exactly its arc
    /// set, since a simple path and its arc set determine each other).
    std::optional<Solution> solve(const std::vector<std::vector<int>>& excluded) {
        if (std::chrono::steady_clock::now() > deadline_)
            throw SolveTimeout("solver exceeded its time budget");
        excluded_ = &excluded;
        const auto n = static_cast<std::size_t>(inst_.vertex_count);
        visited_.assign(n, false);
        color_used_.assign(inst_.color_cost.size(), false);
        trig_state_.assign(inst_.trigrams.size(), Live);
        path_.clear();
        best_path_.clear();
        best_score_ = kInf;
        have_best_ = false;
        arc_sum_ = 0.0;
        bonus_collected_ = 0.0;
        words_ = 0;
        words_left_ = word_total_;
        nodes_ = 0;

        collectible_colors_ = 0.0;
        {
            std::vector<bool> seen(inst_.color_cost.size(), false);
            for (std::size_t v = 0; v < n; ++v) {
                int k = inst_.color[v];
                if (k > 0 && !seen[static_cast<std::size_t>(k)]) {
                    seen[static_cast<std::size_t>(k)] = true;
                    collectible_colors_ += inst_.beta * inst_.color_cost[static_cast<std::size_t>(k)];
                }
            }
        }
        collectible_trigs_ = 0.0;
        for (const InstanceTrigram& t : inst_.trigrams)
            collectible_trigs_ += inst_.gamma * t.cost;

        if (to_end_[static_cast<std::size_t>(inst_.begin)] == kInf) return std::nullopt;
        visited_[static_cast<std::size_t>(inst_.begin)] = true;
        path_.push_back(inst_.begin);
        dfs(inst_.begin);

        if (!have_best_) return std::nullopt;
        return build_solution();
    }

private:
    enum TrigState : unsigned char { Live, Dead, Used };

    static std::uint64_t key(int from, int to) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 32) |
               static_cast<std::uint32_t>(to);
    }

    double arc_cost(int from, int to) const { return arc_cost_.at(key(from, to)); }

    std::vector<double> dijkstra_to_end(
        const std::vector<std::vector<std::pair<int, double>>>& rev) const {
        const auto n = static_cast<std::size_t>(inst_.vertex_count);
        std::vector<double> dist(n, kInf);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[static_cast<std::size_t>(inst_.end)] = 0.0;
        pq.push({0.0, inst_.end});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[static_cast<std::size_t>(v)]) continue;
            for (auto [u, w] : rev[static_cast<std::size_t>(v)]) {
                double nd = d + w;
                if (nd < dist[static_cast<std::size_t>(u)]) {
                    dist[static_cast<std::size_t>(u)] = nd;
                    pq.push({nd, u});
                }
            }
        }
        return dist;
    }

    struct Undo {
        double bonus_collected, collectible_colors, collectible_trigs;
        int color_marked;                 // 0 when none
        std::vector<int> trigs_touched;   // indices whose state changed
    };

    // State changes caused by extending the path tip from v to u.
    Undo push_vertex(int u) {
        Undo undo{bonus_collected_, collectible_colors_, collectible_trigs_, 0, {}};
        int v = path_.back();
        path_.push_back(u);
        visited_[static_cast<std::size_t>(u)] = true;
        if (inst_.is_word[static_cast<std::size_t>(u)]) { ++words_; --words_left_; }
        arc_sum_ += arc_cost(v, u);

        int k = inst_.color[static_cast<std::size_t>(u)];
        if (k > 0 && !color_used_[static_cast<std::size_t>(k)]) {
            color_used_[static_cast<std::size_t>(k)] = true;
            undo.color_marked = k;
            double b = inst_.beta * inst_.color_cost[static_cast<std::size_t>(k)];
            bonus_collected_ += b;
            collectible_colors_ -= b;
        }

        // v is now interior with predecessor p and successor u: trigrams
        // centered on v either complete right here or can never complete.
        if (path_.size() >= 3) {
            int p = path_[path_.size() - 3];
            for (int t : by_middle_[static_cast<std::size_t>(v)]) {
                if (trig_state_[static_cast<std::size_t>(t)] != Live) continue;
                const InstanceTrigram& tg = inst_.trigrams[static_cast<std::size_t>(t)];
                double b = inst_.gamma * tg.cost;
                if (tg.a == p && tg.c == u) {
                    trig_state_[static_cast<std::size_t>(t)] = Used;
                    bonus_collected_ += b;
                } else {
                    trig_state_[static_cast<std::size_t>(t)] = Dead;
                }
                collectible_trigs_ -= b;
                undo.trigs_touched.push_back(t);
            }
        }
        // u's predecessor is fixed to v: trigrams centered on u that expect a
        // different predecessor are dead.
        for (int t : by_middle_[static_cast<std::size_t>(u)]) {
            if (trig_state_[static_cast<std::size_t>(t)] != Live) continue;
            const InstanceTrigram& tg = inst_.trigrams[static_cast<std::size_t>(t)];
            if (tg.a != v) {
                trig_state_[static_cast<std::size_t>(t)] = Dead;
                collectible_trigs_ -= inst_.gamma * tg.cost;
                undo.trigs_touched.push_back(t);
            }
        }
        return undo;
    }

    void pop_vertex(int u, const Undo& undo) {
        int v = path_[path_.size() - 2];
        arc_sum_ -= arc_cost(v, u);
        if (inst_.is_word[static_cast<std::size_t>(u)]) { --words_; ++words_left_; }
        visited_[static_cast<std::size_t>(u)] = false;
        path_.pop_back();
        if (undo.color_marked) color_used_[static_cast<std::size_t>(undo.color_marked)] = false;
        for (int t : undo.trigs_touched) trig_state_[static_cast<std::size_t>(t)] = Live;
        bonus_collected_ = undo.bonus_collected;
        collectible_colors_ = undo.collectible_colors;
        collectible_trigs_ = undo.collectible_trigs;
    }

    double current_score() const { return inst_.alpha * arc_sum_ - bonus_collected_; }

    void dfs(int v) {
        if (++nodes_ % 4096 == 0 && std::chrono::steady_clock::now() > deadline_)
            throw SolveTimeout("solver exceeded its time budget");
        for (int u : out_[static_cast<std::size_t>(v)]) {
            if (visited_[static_cast<std::size_t>(u)]) continue;
            if (u == inst_.end) {
                Undo undo = push_vertex(u);
                if (words_ >= inst_.pmin) {
                    double score = current_score();
                    if ((!have_best_ || score < best_score_) && !is_excluded()) {
                        best_score_ = score;
                        best_path_ = path_;
                        have_best_ = true;
                    }
                }
                pop_vertex(u, undo);
                continue;
            }
            double h = to_end_[static_cast<std::size_t>(u)];
            if (h == kInf) continue;
            Undo undo = push_vertex(u);
            bool enough_words = words_ + words_left_ >= inst_.pmin;
            double lower_bound = current_score() + inst_.alpha * h -
                                 collectible_colors_ - collectible_trigs_;
            if (enough_words && (!have_best_ || lower_bound < best_score_))
                dfs(u);
            pop_vertex(u, undo);
        }
    }

    bool is_excluded() const {
        for (const std::vector<int>& p : *excluded_)
            if (p == path_) return true;
        return false;
    }

    Solution build_solution() const {
        Solution sol;
        sol.raw_score = best_score_;
        std::vector<bool> color_seen(inst_.color_cost.size(), false);
        for (std::size_t i = 1; i + 1 < best_path_.size(); ++i) {
            int v = best_path_[i];
            sol.path.push_back(v);
            if (inst_.has_verb[static_cast<std::size_t>(v)]) sol.has_verb = true;
            int k = inst_.color[static_cast<std::size_t>(v)];
            if (k > 0 && !color_seen[static_cast<std::size_t>(k)]) {
                color_seen[static_cast<std::size_t>(k)] = true;
                sol.used_colors.push_back(k);
            }
        }
        std::sort(sol.used_colors.begin(), sol.used_colors.end());
        for (std::size_t t = 0; t < inst_.trigrams.size(); ++t) {
            const InstanceTrigram& tg = inst_.trigrams[t];
            for (std::size_t i = 0; i + 2 < best_path_.size(); ++i)
                if (best_path_[i] == tg.a && best_path_[i + 1] == tg.b &&
                    best_path_[i + 2] == tg.c) {
                    sol.used_trigrams.push_back(static_cast<int>(t));
                    break;
                }
        }
        sol.normalized_score = std::exp(sol.raw_score) / static_cast<double>(sol.path.size());
        return sol;
    }

public:
    /// The full begin->end vertex path of a solution, the unit prohibited by
    /// a no-good cut.
    std::vector<int> full_path(const Solution& sol) const {
        std::vector<int> p;
        p.reserve(sol.path.size() + 2);
        p.push_back(inst_.begin);
        p.insert(p.end(), sol.path.begin(), sol.path.end());
        p.push_back(inst_.end);
        return p;
    }

private:
    const CompressionInstance& inst_;
    std::chrono::steady_clock::time_point deadline_;
    std::vector<std::vector<int>> out_;
    std::unordered_map<std::uint64_t, double> arc_cost_;
    std::vector<double> to_end_;
    std::vector<std::vector<int>> by_middle_;
    int word_total_ = 0;

    const std::vector<std::vector<int>>* excluded_ = nullptr;
    std::vector<bool> visited_;
    std::vector<bool> color_used_;
    std::vector<TrigState> trig_state_;
    std::vector<int> path_, best_path_;
    double best_score_ = kInf;
    bool have_best_ = false;
    double arc_sum_ = 0.0;
    double bonus_collected_ = 0.0;
    double collectible_colors_ = 0.0;
    double collectible_trigs_ = 0.0;
    int words_ = 0;
    int words_left_ = 0;
    long long nodes_ = 0;
};

}  // namespace detail

/// Optimal simple begin->end path with >= pmin words, skipping every path in
/// `excluded` (full begin->end vertex paths, i.e. exact arc sets of earlier
/// solutions). Returns nullopt when no feasible path remains.
inline std::optional<Solution> solve_best(const CompressionInstance& inst,
                                          const std::vector<std::vector<int>>& excluded = {},
                                          std::chrono::steady_clock::duration budget =
                                              std::chrono::seconds(30)) {
    detail::ExactSolver solver(inst, budget);
    return solver.solve(excluded);
}

/// Up to k solutions in nondecreasing raw score, obtained by prohibiting each
/// found arc set and re-solving. The time budget covers the whole call.
inline std::vector<Solution> solve_kbest(const CompressionInstance& inst, int k = 50,
                                         std::chrono::steady_clock::duration budget =
                                             std::chrono::seconds(30)) {
    if (k < 1) throw std::invalid_argument("solve_kbest: k must be >= 1");
    detail::ExactSolver solver(inst, budget);
    std::vector<Solution> solutions;
    std::vector<std::vector<int>> excluded;
    for (int i = 0; i < k; ++i) {
        std::optional<Solution> sol = solver.solve(excluded);
        if (!sol) break;
        excluded.push_back(solver.full_path(*sol));
        solutions.push_back(std::move(*sol));
    }
    return solutions;
}

/// Applies the exponential length normalization exp(raw)/words and returns
/// the verb-bearing solution with the smallest normalized score (the first
/// one on ties). Returns nullopt when no solution contains a verb.
inline std::optional<Solution> normalize_and_select(const std::vector<Solution>& solutions) {
    const Solution* best = nullptr;
    for (const Solution& s : solutions) {
        if (!s.has_verb) continue;
        if (!best || s.normalized_score < best->normalized_score) best = &s;
    }
    if (!best) return std::nullopt;
    return *best;
}

}  // namespace msc
