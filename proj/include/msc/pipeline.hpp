#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msc/baselines.hpp"
#include "msc/corpus.hpp"
#include "msc/keywords.hpp"
#include "msc/solver.hpp"
#include "msc/word_graph.hpp"

// Ties the stages together: graph construction, keyword extraction, solving
// or baseline selection, and the final pick for one cluster.

namespace msc {

enum class Method { filippova, bm, opt };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::filippova: return "filippova";
        case Method::bm: return "bm";
        case Method::opt: return "opt";
    }
    return "?";
}

inline Method method_from_name(const std::string& name) {
    if (name == "filippova") return Method::filippova;
    if (name == "bm") return Method::bm;
    if (name == "opt") return Method::opt;
    throw std::invalid_argument("unknown method: " + name);
}

/// Defaults mirror the configuration selected in the experiments:
/// alpha = 1.0, beta = 0.8, gamma = 0.1, pc = 9, pmin = 8, k = 50.
struct RunConfig {
    Method method = Method::opt;
    double alpha = 1.0;
    double beta = 0.8;
    double gamma = 0.1;
    int pc = 9;
    int pmin = 8;
    int k_best = 50;
    unsigned seed = 42;
    double timeout_secs = 30.0;
    std::vector<std::string> verb_prefixes = kDefaultVerbPrefixes;
    std::string stopword_path;
    std::string corpus_path;
    std::string output_path;

    void validate() const {
        if (method == Method::opt && alpha <= 0.0)
            throw std::invalid_argument("method=opt requires alpha > 0");
        if (beta < 0.0 || gamma < 0.0)
            throw std::invalid_argument("beta and gamma must be >= 0");
        if (pc < 1) throw std::invalid_argument("pc must be >= 1");
        if (pmin < 1) throw std::invalid_argument("pmin must be >= 1");
        if (k_best < 1) throw std::invalid_argument("k must be >= 1");
        if (timeout_secs <= 0.0) throw std::invalid_argument("timeout must be > 0");
    }
};

struct CompressionOutcome {
    std::optional<Solution> selected;
    KeywordSet keywords;
    std::string text;       // lowercase forms joined by spaces
    Sentence sentence;      // the compression as a Sentence, for evaluation
    int keyword_hits = 0;   // distinct keywords on the selected path
};

inline Sentence path_to_sentence(const WordGraph& graph, const std::vector<int>& path) {
    Sentence s;
    s.tokens.reserve(path.size());
    for (int v : path) {
        const Vertex& vx = graph.vertex(v);
        s.tokens.push_back({vx.lower, vx.lower, vx.pos, vx.is_stopword});
    }
    return s;
}

/// Runs the configured method on one parsed cluster. The returned outcome has
/// no selected solution when no verb-bearing path of at least pmin words
/// exists; solver timeouts propagate as SolveTimeout.
inline CompressionOutcome compress_cluster(const Cluster& cluster,
                                           const StopwordSet& stopwords,
                                           const RunConfig& config) {
    config.validate();
    CompressionOutcome outcome;

    WordGraph graph = build_graph(cluster);
    cohesion_weights(graph);
    outcome.keywords = lda_keywords(cluster, stopwords, config.pc, config.seed);

    std::optional<Solution> selected;
    switch (config.method) {
        case Method::opt: {
            std::vector<Trigram> trigrams = extract_trigrams(graph);
            CompressionInstance inst =
                make_instance(graph, outcome.keywords, trigrams, config.alpha, config.beta,
                              config.gamma, config.pmin, config.verb_prefixes);
            auto budget = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(config.timeout_secs));
            std::vector<Solution> solutions = solve_kbest(inst, config.k_best, budget);
            selected = normalize_and_select(solutions);
            break;
        }
        case Method::filippova: {
            auto candidates = k_shortest_paths(graph, config.k_best, config.pmin);
            selected = filippova_select(graph, candidates, config.verb_prefixes);
            break;
        }
        case Method::bm: {
            auto candidates = k_shortest_paths(graph, config.k_best, config.pmin);
            WordScores scores = textrank_scores(graph);
            selected = bm_select(graph, candidates, scores, kDefaultKeyphrasePrefixes,
                                 config.verb_prefixes);
            break;
        }
    }

    if (selected) {
        outcome.sentence = path_to_sentence(graph, selected->path);
        for (std::size_t i = 0; i < outcome.sentence.tokens.size(); ++i) {
            if (i) outcome.text.push_back(' ');
            outcome.text += outcome.sentence.tokens[i].lower;
        }
        std::vector<std::string> seen;
        for (const Token& t : outcome.sentence.tokens)
            if (outcome.keywords.contains(t.lower) &&
                std::find(seen.begin(), seen.end(), t.lower) == seen.end())
                seen.push_back(t.lower);
        outcome.keyword_hits = static_cast<int>(seen.size());
        outcome.selected = std::move(selected);
    }
    return outcome;
}

}  // namespace msc
