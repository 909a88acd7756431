#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "msc/corpus.hpp"
#include "msc/word_graph.hpp"

// Cluster keyword extraction (single-topic LDA over the non-stopword
// vocabulary) and TextRank word relevance for the Boudin-Morin baseline.

namespace msc {

/// Keyword "colors": color 0 is reserved for non-keywords and costs 0; every
/// keyword color k >= 1 costs 1. Identity is the lowercase form, so one
/// keyword may color several vertices.
class KeywordSet {
public:
    KeywordSet() = default;
    explicit KeywordSet(std::vector<std::string> words) : words_(std::move(words)) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            index_[words_[i]] = static_cast<int>(i) + 1;
    }

    /// 0 when the form is not a keyword, otherwise the color in 1..size().
    int color_of(const std::string& lower) const {
        auto it = index_.find(lower);
        return it == index_.end() ? 0 : it->second;
    }
    double cost(int color) const { return color == 0 ? 0.0 : 1.0; }
    const std::vector<std::string>& words() const { return words_; }
    std::size_t size() const { return words_.size(); }
    bool contains(const std::string& lower) const { return index_.count(lower) > 0; }

private:
    std::vector<std::string> words_;
    std::map<std::string, int> index_;
};

struct WordScores {
    std::map<std::string, double> by_form;

    double at(const std::string& lower) const {
        auto it = by_form.find(lower);
        return it == by_form.end() ? 0.0 : it->second;
    }
    double sum() const {
        double s = 0.0;
        for (const auto& [form, x] : by_form) s += x;
        return s;
    }
};

namespace detail {

// Collapsed Gibbs sampler. With a single topic the conditional is degenerate
// and the chain is stationary from the start; the machinery still runs so the
// topic count and seed stay honest knobs.
class LdaSampler {
public:
    LdaSampler(std::vector<std::vector<int>> docs, int vocab, int topics,
               double doc_topic_prior, double topic_word_prior, unsigned seed)
        : docs_(std::move(docs)), vocab_(vocab), topics_(topics),
          alpha_(doc_topic_prior), beta_(topic_word_prior), rng_(seed),
          topic_word_(static_cast<std::size_t>(topics), std::vector<int>(static_cast<std::size_t>(vocab), 0)),
          doc_topic_(docs_.size(), std::vector<int>(static_cast<std::size_t>(topics), 0)),
          topic_total_(static_cast<std::size_t>(topics), 0) {
        assignments_.resize(docs_.size());
        for (std::size_t d = 0; d < docs_.size(); ++d) {
            assignments_[d].resize(docs_[d].size());
            for (std::size_t n = 0; n < docs_[d].size(); ++n) {
                int z = static_cast<int>(rng_() % static_cast<unsigned>(topics_));
                assignments_[d][n] = z;
                add(d, n, z, +1);
            }
        }
    }

    void run(int iterations) {
        std::vector<double> dist(static_cast<std::size_t>(topics_));
        for (int it = 0; it < iterations; ++it) {
            for (std::size_t d = 0; d < docs_.size(); ++d) {
                for (std::size_t n = 0; n < docs_[d].size(); ++n) {
                    int old_z = assignments_[d][n];
                    add(d, n, old_z, -1);
                    int w = docs_[d][n];
                    double total = 0.0;
                    for (int k = 0; k < topics_; ++k) {
                        double p = (doc_topic_[d][static_cast<std::size_t>(k)] + alpha_) *
                                   (topic_word_[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] + beta_) /
                                   (topic_total_[static_cast<std::size_t>(k)] + beta_ * vocab_);
                        dist[static_cast<std::size_t>(k)] = p;
                        total += p;
                    }
                    double u = std::uniform_real_distribution<double>(0.0, total)(rng_);
                    int z = topics_ - 1;
                    for (int k = 0; k < topics_; ++k) {
                        u -= dist[static_cast<std::size_t>(k)];
                        if (u <= 0.0) { z = k; break; }
                    }
                    assignments_[d][n] = z;
                    add(d, n, z, +1);
                }
            }
        }
    }

    /// Topic-word posterior weight of word w under topic k (unnormalized).
    double word_weight(int k, int w) const {
        return topic_word_[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] + beta_;
    }

private:
    void add(std::size_t d, std::size_t n, int z, int delta) {
        int w = docs_[d][n];
        topic_word_[static_cast<std::size_t>(z)][static_cast<std::size_t>(w)] += delta;
        doc_topic_[d][static_cast<std::size_t>(z)] += delta;
        topic_total_[static_cast<std::size_t>(z)] += delta;
    }

    std::vector<std::vector<int>> docs_;
    int vocab_;
    int topics_;
    double alpha_, beta_;
    std::mt19937 rng_;
    std::vector<std::vector<int>> topic_word_;
    std::vector<std::vector<int>> doc_topic_;
    std::vector<int> topic_total_;
    std::vector<std::vector<int>> assignments_;
};

}  // namespace detail

/// The pc most probable words of a single-topic LDA fit over the cluster's
/// non-stopword lowercase tokens (one document per sentence, priors 0.5/0.01,
/// 200 sweeps). With one topic the ranking coincides with term frequency;
/// ties break lexicographically. Asking for more words than the vocabulary
/// holds returns the whole vocabulary ranked.
inline KeywordSet lda_keywords(const Cluster& cluster, const StopwordSet& stopwords,
                               int pc, unsigned seed = 42) {
    if (pc < 1) throw std::invalid_argument("lda_keywords: pc must be >= 1");

    std::map<std::string, int> word_id;   // ordered: ids follow lexicographic order
    for (const Sentence& s : cluster.sentences)
        for (const Token& t : s.tokens)
            if (!t.is_stopword && !stopwords.contains(t.lower))
                word_id.emplace(t.lower, 0);
    int next = 0;
    std::vector<std::string> forms;
    forms.reserve(word_id.size());
    for (auto& [form, id] : word_id) { id = next++; forms.push_back(form); }
    if (forms.empty()) return KeywordSet{};

    std::vector<std::vector<int>> docs;
    docs.reserve(cluster.sentences.size());
    for (const Sentence& s : cluster.sentences) {
        std::vector<int> doc;
        for (const Token& t : s.tokens)
            if (!t.is_stopword && !stopwords.contains(t.lower))
                doc.push_back(word_id[t.lower]);
        docs.push_back(std::move(doc));
    }

    detail::LdaSampler sampler(std::move(docs), static_cast<int>(forms.size()),
                               /*topics=*/1, /*doc_topic_prior=*/0.5,
                               /*topic_word_prior=*/0.01, seed);
    sampler.run(200);

    std::vector<int> order(forms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        double wa = sampler.word_weight(0, a), wb = sampler.word_weight(0, b);
        if (wa != wb) return wa > wb;
        return forms[static_cast<std::size_t>(a)] < forms[static_cast<std::size_t>(b)];
    });

    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(pc), order.size());
    std::vector<std::string> top;
    top.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        top.push_back(forms[static_cast<std::size_t>(order[i])]);
    return KeywordSet{std::move(top)};
}

/// Damped power iteration (d = 0.85) over the word graph with the end->begin
/// closure arc; arc weights act as transition affinities and vertices without
/// outgoing mass redistribute uniformly. Stops when the largest per-vertex
/// delta falls under `tol` (or after `max_iters`); the result is normalized
/// to sum to 1 and aggregated by lowercase form.
inline WordScores textrank_scores(const WordGraph& graph, double damping = 0.85,
                                  double tol = 1e-6, int max_iters = 100) {
    const int n = static_cast<int>(graph.vertex_count());
    WordScores result;
    if (n == 0) return result;

    struct Edge { int from; double w; };
    std::vector<std::vector<Edge>> incoming(static_cast<std::size_t>(n));
    std::vector<double> out_strength(static_cast<std::size_t>(n), 0.0);
    auto add_edge = [&](int from, int to, double w) {
        if (!std::isfinite(w) || w <= 0.0) return;
        incoming[static_cast<std::size_t>(to)].push_back({from, w});
        out_strength[static_cast<std::size_t>(from)] += w;
    };
    for (auto [from, to, w] : graph.arcs()) add_edge(from, to, w);
    if (graph.begin_id() >= 0 && graph.end_id() >= 0 &&
        !graph.has_arc(graph.end_id(), graph.begin_id()))
        add_edge(graph.end_id(), graph.begin_id(), 1.0);

    std::vector<double> score(static_cast<std::size_t>(n), 1.0 / n);
    std::vector<double> next(static_cast<std::size_t>(n));
    for (int it = 0; it < max_iters; ++it) {
        double dangling = 0.0;
        for (int v = 0; v < n; ++v)
            if (out_strength[static_cast<std::size_t>(v)] <= 0.0)
                dangling += score[static_cast<std::size_t>(v)];
        double max_delta = 0.0;
        for (int v = 0; v < n; ++v) {
            double in_mass = dangling / n;
            for (const Edge& e : incoming[static_cast<std::size_t>(v)])
                in_mass += score[static_cast<std::size_t>(e.from)] * e.w /
                           out_strength[static_cast<std::size_t>(e.from)];
            next[static_cast<std::size_t>(v)] = (1.0 - damping) / n + damping * in_mass;
            max_delta = std::max(max_delta,
                                 std::abs(next[static_cast<std::size_t>(v)] - score[static_cast<std::size_t>(v)]));
        }
        score.swap(next);
        if (max_delta < tol) break;
    }

    double total = 0.0;
    for (double x : score) total += x;
    for (const Vertex& v : graph.vertices())
        result.by_form[v.lower] += score[static_cast<std::size_t>(v.id)] / total;
    return result;
}

}  // namespace msc
