#pragma once

// Seeded random word graphs, solver instances and clusters for the property
// and oracle-equivalence suites.

#include <random>
#include <string>
#include <vector>

#include "msc/corpus.hpp"
#include "msc/keywords.hpp"
#include "msc/solver.hpp"
#include "msc/word_graph.hpp"

namespace testgen {

struct RandomModel {
    msc::WordGraph graph;
    msc::CompressionInstance instance;
};

/// A begin/end graph over `n_words` word vertices with arc probability `p`,
/// uniform weights in [0, 2], up to 3 keyword colors, up to 3 trigrams over
/// existing arc pairs, and pmin drawn from 1..5. Vertices share lowercase
/// forms so one color can span several vertices; roughly a third of the
/// vertices are tagged as verbs.
inline RandomModel random_model(std::mt19937& rng, int n_words, double arc_prob,
                                double beta_max = 1.0, double gamma_max = 1.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.0, 2.0);

    RandomModel m;
    int begin = m.graph.add_vertex(msc::VertexKind::begin, "-begin-", "-");
    int end = m.graph.add_vertex(msc::VertexKind::end, "-end-", "-");
    int form_groups = std::max(2, n_words - 2);   // a couple of duplicated forms
    std::vector<int> words;
    for (int i = 0; i < n_words; ++i) {
        std::string form = "w" + std::to_string(i % form_groups);
        std::string pos = unit(rng) < 0.33 ? "V" : "X";
        words.push_back(m.graph.add_vertex(msc::VertexKind::word, form, pos));
    }
    for (int w : words) {
        if (unit(rng) < arc_prob) m.graph.add_arc(begin, w, weight(rng));
        if (unit(rng) < arc_prob) m.graph.add_arc(w, end, weight(rng));
    }
    for (int a : words)
        for (int b : words)
            if (a != b && unit(rng) < arc_prob) m.graph.add_arc(a, b, weight(rng));

    std::uniform_int_distribution<int> color_count(0, 3);
    int n_colors = color_count(rng);
    std::vector<std::string> keyword_forms;
    for (int k = 0; k < n_colors && k < form_groups; ++k)
        keyword_forms.push_back("w" + std::to_string(k));
    msc::KeywordSet keywords(keyword_forms);

    std::vector<msc::Trigram> trigrams;
    std::uniform_int_distribution<int> trig_count(0, 3);
    int want = trig_count(rng);
    auto arcs = m.graph.arcs();
    if (!arcs.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, arcs.size() - 1);
        for (int attempts = 0; attempts < 40 && static_cast<int>(trigrams.size()) < want;
             ++attempts) {
            auto [i, j, w1] = arcs[pick(rng)];
            (void)w1;
            auto next = m.graph.out_neighbors(j);
            if (next.empty()) continue;
            std::uniform_int_distribution<std::size_t> pick2(0, next.size() - 1);
            int l = next[pick2(rng)];
            if (i == l || !m.graph.vertex(i).is_word() || !m.graph.vertex(j).is_word() ||
                !m.graph.vertex(l).is_word())
                continue;
            bool dup = false;
            for (const msc::Trigram& t : trigrams)
                if (t.a == i && t.b == j && t.c == l) dup = true;
            if (dup) continue;
            trigrams.push_back({i, j, l, 2, unit(rng)});
        }
    }

    std::uniform_int_distribution<int> pmin_dist(1, 5);
    m.instance = msc::make_instance(m.graph, keywords, trigrams, /*alpha=*/1.0,
                                    beta_max * unit(rng), gamma_max * unit(rng),
                                    pmin_dist(rng));
    return m;
}

/// A random POS-tagged cluster over a small vocabulary; roughly a quarter of
/// the forms are stopwords.
inline std::pair<msc::Cluster, msc::StopwordSet> random_cluster(std::mt19937& rng) {
    std::uniform_int_distribution<int> vocab_size(4, 12);
    std::uniform_int_distribution<int> sent_count(2, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    static const std::vector<std::string> tags = {"NC", "V", "ADJ", "DET"};

    int vocab = vocab_size(rng);
    msc::StopwordSet stopwords;
    std::vector<std::string> pos_of;
    for (int i = 0; i < vocab; ++i) {
        if (unit(rng) < 0.25) stopwords.insert("t" + std::to_string(i));
        pos_of.push_back(tags[static_cast<std::size_t>(rng() % tags.size())]);
    }

    msc::Cluster cluster;
    cluster.id = "random";
    int sentences = sent_count(rng);
    std::uniform_int_distribution<int> sent_len(3, 12);
    std::uniform_int_distribution<int> pick(0, vocab - 1);
    for (int s = 0; s < sentences; ++s) {
        msc::Sentence sent;
        int len = sent_len(rng);
        for (int i = 0; i < len; ++i) {
            int w = pick(rng);
            std::string form = "t" + std::to_string(w);
            sent.tokens.push_back({form, form, pos_of[static_cast<std::size_t>(w)],
                                   stopwords.contains(form)});
        }
        cluster.sentences.push_back(std::move(sent));
    }
    return {std::move(cluster), std::move(stopwords)};
}

}  // namespace testgen
