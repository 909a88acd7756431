#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "msc/corpus.hpp"

// The word graph: one vertex per word/POS equivalence class, arcs for observed
// adjacencies, begin/end sentinels, cohesion arc weights and the frequent
// 3-gram bonus set.

namespace msc {

enum class VertexKind { begin, end, word };

struct Occurrence {
    int sentence = 0;   // 0-based sentence index
    int position = 0;   // 1-based token position; begin is 0, end is length+1
};

struct Vertex {
    int id = -1;
    VertexKind kind = VertexKind::word;
    std::string lower;
    std::string pos;
    bool is_stopword = false;
    std::vector<Occurrence> occurrences;

    int freq() const { return static_cast<int>(occurrences.size()); }
    bool is_word() const { return kind == VertexKind::word; }
};

inline constexpr double kUnusableWeight = std::numeric_limits<double>::infinity();

/// A 3-gram of vertices seen more than once in the cluster. `cost` is the
/// min-max normalized relevance in [0, 1].
struct Trigram {
    int a = -1, b = -1, c = -1;
    int count = 0;
    double cost = 0.0;
};

class WordGraph {
public:
    int add_vertex(VertexKind kind, std::string lower, std::string pos,
                   bool is_stopword = false) {
        Vertex v;
        v.id = static_cast<int>(vertices_.size());
        v.kind = kind;
        v.lower = std::move(lower);
        v.pos = std::move(pos);
        v.is_stopword = is_stopword;
        if (kind == VertexKind::begin) begin_id_ = v.id;
        if (kind == VertexKind::end) end_id_ = v.id;
        vertices_.push_back(std::move(v));
        out_.emplace_back();
        in_.emplace_back();
        return static_cast<int>(vertices_.size()) - 1;
    }

    // Parallel arcs collapse onto one; the last weight wins.
    void add_arc(int from, int to, double weight = 0.0) {
        auto key = arc_key(from, to);
        if (!weights_.count(key)) {
            insert_sorted(out_[from], to);
            insert_sorted(in_[to], from);
        }
        weights_[key] = weight;
    }

    bool has_arc(int from, int to) const { return weights_.count(arc_key(from, to)) > 0; }

    double weight(int from, int to) const {
        auto it = weights_.find(arc_key(from, to));
        return it == weights_.end() ? kUnusableWeight : it->second;
    }

    void set_weight(int from, int to, double w) {
        if (!has_arc(from, to)) throw std::out_of_range("set_weight: no such arc");
        weights_[arc_key(from, to)] = w;
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    Vertex& vertex(int id) { return vertices_.at(static_cast<std::size_t>(id)); }
    const Vertex& vertex(int id) const { return vertices_.at(static_cast<std::size_t>(id)); }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arc_count() const { return weights_.size(); }

    const std::vector<int>& out_neighbors(int v) const { return out_[v]; }
    const std::vector<int>& in_neighbors(int v) const { return in_[v]; }

    int begin_id() const { return begin_id_; }
    int end_id() const { return end_id_; }

    /// Per-sentence vertex walks, begin/end included.
    const std::vector<std::vector<int>>& walks() const { return walks_; }
    void add_walk(std::vector<int> walk) { walks_.push_back(std::move(walk)); }

    /// All arcs as (from, to, weight), ordered by (from, to).
    std::vector<std::tuple<int, int, double>> arcs() const {
        std::vector<std::tuple<int, int, double>> out;
        out.reserve(weights_.size());
        for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
            for (int u : out_[v]) out.emplace_back(v, u, weight(v, u));
        return out;
    }

private:
    static std::uint64_t arc_key(int from, int to) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 32) |
               static_cast<std::uint32_t>(to);
    }
    static void insert_sorted(std::vector<int>& v, int x) {
        v.insert(std::lower_bound(v.begin(), v.end(), x), x);
    }

    std::vector<Vertex> vertices_;
    std::vector<std::vector<int>> out_, in_;
    std::unordered_map<std::uint64_t, double> weights_;
    std::vector<std::vector<int>> walks_;
    int begin_id_ = -1;
    int end_id_ = -1;
};

namespace detail {

inline const std::string kBeginForm = "-begin-";
inline const std::string kEndForm = "-end-";

// Lowercase forms around position `idx` (0-based) at the given distance,
// with sentinel pseudo-forms just outside the sentence.
inline std::set<std::string> sentence_context(const Sentence& s, std::size_t idx, int dist) {
    std::set<std::string> ctx;
    int left = static_cast<int>(idx) - dist;
    int right = static_cast<int>(idx) + dist;
    if (left >= 0) ctx.insert(s.tokens[static_cast<std::size_t>(left)].lower);
    else if (left == -1) ctx.insert(kBeginForm);
    if (right < static_cast<int>(s.tokens.size())) ctx.insert(s.tokens[static_cast<std::size_t>(right)].lower);
    else if (right == static_cast<int>(s.tokens.size())) ctx.insert(kEndForm);
    return ctx;
}

// Lowercase forms adjacent to `v` in the graph (in and out arcs), and the
// two-step neighborhood for the distance-2 refinement.
inline std::set<std::string> graph_context(const WordGraph& g, int v, int dist) {
    std::set<int> frontier{v};
    for (int step = 0; step < dist; ++step) {
        std::set<int> next;
        for (int x : frontier) {
            for (int u : g.out_neighbors(x)) next.insert(u);
            for (int u : g.in_neighbors(x)) next.insert(u);
        }
        frontier = std::move(next);
    }
    std::set<std::string> ctx;
    for (int x : frontier) {
        if (x == v) continue;
        ctx.insert(g.vertex(x).lower);
    }
    return ctx;
}

inline int overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
    int n = 0;
    for (const auto& s : a) n += b.count(s) ? 1 : 0;
    return n;
}

}  // namespace detail

/// Builds the word graph from a cluster. The first sentence is inserted
/// verbatim between the begin/end sentinels; each later sentence is mapped in
/// three passes: (1) non-stopwords with no candidate or a single unambiguous
/// one, (2) non-stopwords with several candidates or repeated in the
/// sentence, (3) stopwords. Ambiguous tokens merge into the candidate whose
/// graph neighborhood best overlaps the token's sentence neighborhood
/// (distance 1, then distance 2, then higher frequency, then lower id); a
/// token sharing no context with any candidate gets a fresh vertex.
inline WordGraph build_graph(const Cluster& cluster) {
    if (cluster.sentences.empty())
        throw std::invalid_argument("build_graph: cluster has no sentences");

    WordGraph g;
    int begin = g.add_vertex(VertexKind::begin, detail::kBeginForm, "-");
    int end = g.add_vertex(VertexKind::end, detail::kEndForm, "-");

    // candidate lookup: lower|pos -> vertex ids, in creation order
    std::map<std::pair<std::string, std::string>, std::vector<int>> by_form;

    for (int s_idx = 0; s_idx < static_cast<int>(cluster.sentences.size()); ++s_idx) {
        const Sentence& sent = cluster.sentences[static_cast<std::size_t>(s_idx)];
        const std::size_t n = sent.tokens.size();
        std::vector<int> mapped(n, -1);
        std::set<int> used_here;

        auto place_new = [&](std::size_t i) {
            const Token& t = sent.tokens[i];
            int id = g.add_vertex(VertexKind::word, t.lower, t.pos, t.is_stopword);
            by_form[{t.lower, t.pos}].push_back(id);
            mapped[i] = id;
            used_here.insert(id);
        };
        auto place_at = [&](std::size_t i, int id) {
            mapped[i] = id;
            used_here.insert(id);
        };

        if (s_idx == 0) {
            for (std::size_t i = 0; i < n; ++i) place_new(i);
        } else {
            // intra-sentence repetition of a word/POS form sends every copy to group 2
            std::map<std::pair<std::string, std::string>, int> form_count;
            for (const Token& t : sent.tokens) ++form_count[{t.lower, t.pos}];

            std::vector<std::size_t> group1, group2, group3;
            for (std::size_t i = 0; i < n; ++i) {
                const Token& t = sent.tokens[i];
                if (t.is_stopword) { group3.push_back(i); continue; }
                auto it = by_form.find({t.lower, t.pos});
                std::size_t candidates = it == by_form.end() ? 0 : it->second.size();
                if (candidates >= 2 || form_count[{t.lower, t.pos}] > 1) group2.push_back(i);
                else group1.push_back(i);
            }

            auto available = [&](std::size_t i) {
                std::vector<int> out;
                auto it = by_form.find({sent.tokens[i].lower, sent.tokens[i].pos});
                if (it != by_form.end())
                    for (int id : it->second)
                        if (!used_here.count(id)) out.push_back(id);
                return out;
            };

            for (std::size_t i : group1) {
                std::vector<int> cand = available(i);
                if (cand.empty()) place_new(i);
                else place_at(i, cand.front());
            }

            auto resolve_by_context = [&](std::size_t i) {
                std::vector<int> cand = available(i);
                if (cand.empty()) { place_new(i); return; }
                auto sc1 = detail::sentence_context(sent, i, 1);
                auto sc2 = detail::sentence_context(sent, i, 2);
                int best = -1, best_d1 = -1, best_d2 = -1, best_freq = -1;
                for (int id : cand) {
                    int d1 = detail::overlap(sc1, detail::graph_context(g, id, 1));
                    int d2 = detail::overlap(sc2, detail::graph_context(g, id, 2));
                    int freq = g.vertex(id).freq();
                    bool better = std::tie(d1, d2, freq) > std::tie(best_d1, best_d2, best_freq);
                    if (better) { best = id; best_d1 = d1; best_d2 = d2; best_freq = freq; }
                }
                if (best_d1 + best_d2 == 0) place_new(i);   // no shared context
                else place_at(i, best);
            };

            for (std::size_t i : group2) resolve_by_context(i);
            for (std::size_t i : group3) resolve_by_context(i);
        }

        // occurrences + walk + adjacency arcs (weights filled later)
        g.vertex(begin).occurrences.push_back({s_idx, 0});
        g.vertex(end).occurrences.push_back({s_idx, static_cast<int>(n) + 1});
        std::vector<int> walk;
        walk.reserve(n + 2);
        walk.push_back(begin);
        for (std::size_t i = 0; i < n; ++i) {
            g.vertex(mapped[i]).occurrences.push_back({s_idx, static_cast<int>(i) + 1});
            walk.push_back(mapped[i]);
        }
        walk.push_back(end);
        for (std::size_t i = 0; i + 1 < walk.size(); ++i)
            if (!g.has_arc(walk[i], walk[i + 1])) g.add_arc(walk[i], walk[i + 1], 0.0);
        g.add_walk(std::move(walk));
    }
    return g;
}

/// Fills every arc weight with the cohesion formula
///   w(i,j) = [ (freq(i)+freq(j)) / sum_f 1/dist(f,i,j) ] / (freq(i)*freq(j))
/// where dist(f,i,j) is the positive position gap when i precedes j in
/// sentence f and is skipped otherwise. An arc whose gap sum is zero gets an
/// infinite weight and is excluded from solutions.
inline void cohesion_weights(WordGraph& graph) {
    std::size_t nsent = graph.walks().size();
    for (const Vertex& v : graph.vertices())
        for (const Occurrence& o : v.occurrences)
            nsent = std::max(nsent, static_cast<std::size_t>(o.sentence) + 1);
    // position of each vertex per sentence; -1 when absent
    std::vector<std::vector<int>> pos(graph.vertex_count(), std::vector<int>(nsent, -1));
    for (const Vertex& v : graph.vertices())
        for (const Occurrence& o : v.occurrences)
            pos[static_cast<std::size_t>(v.id)][static_cast<std::size_t>(o.sentence)] = o.position;

    for (auto [from, to, w] : graph.arcs()) {
        (void)w;
        double inv_sum = 0.0;
        for (std::size_t f = 0; f < nsent; ++f) {
            int pi = pos[static_cast<std::size_t>(from)][f];
            int pj = pos[static_cast<std::size_t>(to)][f];
            if (pi >= 0 && pj >= 0 && pi < pj) inv_sum += 1.0 / (pj - pi);
        }
        if (inv_sum <= 0.0) {
            graph.set_weight(from, to, kUnusableWeight);
            continue;
        }
        double fi = graph.vertex(from).freq();
        double fj = graph.vertex(to).freq();
        double cohesion = (fi + fj) / inv_sum;
        graph.set_weight(from, to, cohesion / (fi * fj));
    }
}

/// Collects the word-vertex triples realized by at least two adjacent token
/// triples. Raw relevance is qt3/max_qt3 * (w(a,b)+w(b,c))/2, then min-max
/// normalized over the kept set (a lone trigram gets cost 1).
inline std::vector<Trigram> extract_trigrams(const WordGraph& graph) {
    std::map<std::tuple<int, int, int>, int> counts;
    for (const std::vector<int>& walk : graph.walks()) {
        for (std::size_t i = 0; i + 2 < walk.size(); ++i) {
            int a = walk[i], b = walk[i + 1], c = walk[i + 2];
            if (!graph.vertex(a).is_word() || !graph.vertex(b).is_word() ||
                !graph.vertex(c).is_word())
                continue;
            ++counts[{a, b, c}];
        }
    }
    int max_count = 0;
    for (const auto& [key, n] : counts) max_count = std::max(max_count, n);

    std::vector<Trigram> kept;
    for (const auto& [key, n] : counts) {
        if (n < 2) continue;
        auto [a, b, c] = key;
        Trigram t;
        t.a = a; t.b = b; t.c = c;
        t.count = n;
        double wab = graph.weight(a, b);
        double wbc = graph.weight(b, c);
        t.cost = (static_cast<double>(n) / max_count) * (wab + wbc) / 2.0;  // raw for now
        kept.push_back(t);
    }
    if (kept.empty()) return kept;

    double lo = kept.front().cost, hi = kept.front().cost;
    for (const Trigram& t : kept) { lo = std::min(lo, t.cost); hi = std::max(hi, t.cost); }
    for (Trigram& t : kept)
        t.cost = hi > lo ? (t.cost - lo) / (hi - lo) : 1.0;
    return kept;
}

/// Plain-text adjacency listing for inspection and golden-file tests.
inline std::string dump_graph(const WordGraph& graph) {
    std::string out = "vertices " + std::to_string(graph.vertex_count()) + "\n";
    for (const Vertex& v : graph.vertices()) {
        const char* kind = v.kind == VertexKind::begin ? "begin"
                         : v.kind == VertexKind::end ? "end" : "word";
        out += std::to_string(v.id) + " " + v.lower + "/" + v.pos +
               " kind=" + kind + " freq=" + std::to_string(v.freq()) + "\n";
    }
    out += "arcs " + std::to_string(graph.arc_count()) + "\n";
    char buf[64];
    for (auto [from, to, w] : graph.arcs()) {
        std::snprintf(buf, sizeof buf, "%g", w);
        out += std::to_string(from) + " -> " + std::to_string(to) + " w=" + buf + "\n";
    }
    return out;
}

}  // namespace msc
