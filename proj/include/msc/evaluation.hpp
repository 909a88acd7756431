#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "msc/corpus.hpp"
#include "msc/pipeline.hpp"

// Scoring of system outputs against reference compressions: ROUGE-1/2
// coverage and compression ratio, plus the per-corpus experiment runner.

namespace msc {

namespace detail {

inline std::map<std::string, int> ngram_counts(const Sentence& s, int n) {
    std::map<std::string, int> counts;
    if (static_cast<int>(s.tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= s.tokens.size(); ++i) {
        std::string key;
        for (int j = 0; j < n; ++j) {
            if (j) key.push_back(' ');
            key += s.tokens[i + static_cast<std::size_t>(j)].lower;
        }
        ++counts[key];
    }
    return counts;
}

}  // namespace detail

/// Recall-style n-gram coverage over lowercase forms, stopwords included:
/// clipped matches summed across references over the total reference n-gram
/// count. References shorter than n contribute zero to both sums.
inline double rouge_n(const Sentence& candidate, const std::vector<Sentence>& references,
                      int n) {
    if (n < 1) throw std::invalid_argument("rouge_n: n must be >= 1");
    if (references.empty()) throw std::invalid_argument("rouge_n: no references");
    auto cand = detail::ngram_counts(candidate, n);
    long long matched = 0, total = 0;
    for (const Sentence& ref : references) {
        for (const auto& [gram, count] : detail::ngram_counts(ref, n)) {
            total += count;
            auto it = cand.find(gram);
            if (it != cand.end()) matched += std::min(count, it->second);
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
}

/// Candidate length over the mean source length.
inline double compression_ratio(const Sentence& candidate,
                                const std::vector<Sentence>& sources) {
    if (sources.empty()) throw std::invalid_argument("compression_ratio: no sources");
    double mean = 0.0;
    for (const Sentence& s : sources) mean += static_cast<double>(s.size());
    mean /= static_cast<double>(sources.size());
    return static_cast<double>(candidate.size()) / mean;
}

struct ClusterEval {
    std::string id;
    bool ok = false;
    double rouge1 = 0.0, rouge2 = 0.0, tc = 0.0;
    std::string compression;
    std::string error;   // set when !ok
};

struct EvalReport {
    std::vector<ClusterEval> per_cluster;  // sorted by cluster id
    int evaluated = 0;
    int failed = 0;
    double mean_rouge1 = 0.0, mean_rouge2 = 0.0, mean_tc = 0.0;
};

/// Compresses and scores each cluster; clusters with no verb-bearing solution
/// are counted as failures and left out of the means. Requires references.
inline EvalReport run_experiment(const std::vector<Cluster>& corpus,
                                 const StopwordSet& stopwords, const RunConfig& config) {
    EvalReport report;
    for (const Cluster& cluster : corpus) {
        ClusterEval row;
        row.id = cluster.id;
        if (cluster.references.empty()) {
            row.error = "no references";
        } else {
            CompressionOutcome outcome = compress_cluster(cluster, stopwords, config);
            if (!outcome.selected) {
                row.error = "no verb-bearing compression";
            } else {
                row.ok = true;
                row.compression = outcome.text;
                row.rouge1 = rouge_n(outcome.sentence, cluster.references, 1);
                row.rouge2 = rouge_n(outcome.sentence, cluster.references, 2);
                row.tc = compression_ratio(outcome.sentence, cluster.sentences);
            }
        }
        report.per_cluster.push_back(std::move(row));
    }
    std::sort(report.per_cluster.begin(), report.per_cluster.end(),
              [](const ClusterEval& a, const ClusterEval& b) { return a.id < b.id; });
    for (const ClusterEval& row : report.per_cluster) {
        if (!row.ok) { ++report.failed; continue; }
        ++report.evaluated;
        report.mean_rouge1 += row.rouge1;
        report.mean_rouge2 += row.rouge2;
        report.mean_tc += row.tc;
    }
    if (report.evaluated > 0) {
        report.mean_rouge1 /= report.evaluated;
        report.mean_rouge2 /= report.evaluated;
        report.mean_tc /= report.evaluated;
    }
    return report;
}

namespace detail {

inline std::string fixed5(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", x);
    return buf;
}

}  // namespace detail

/// Tab-separated per-cluster report with a trailing MEAN row.
inline std::string report_dsv(const EvalReport& report) {
    std::string out = "cluster\trouge1\trouge2\ttc\tstatus\tcompression\n";
    for (const ClusterEval& row : report.per_cluster) {
        out += row.id + '\t';
        if (row.ok) {
            out += detail::fixed5(row.rouge1) + '\t' + detail::fixed5(row.rouge2) + '\t' +
                   detail::fixed5(row.tc) + "\tok\t" + row.compression + '\n';
        } else {
            out += "-\t-\t-\tfailed: " + row.error + "\t\n";
        }
    }
    out += "MEAN\t" + detail::fixed5(report.mean_rouge1) + '\t' +
           detail::fixed5(report.mean_rouge2) + '\t' + detail::fixed5(report.mean_tc) +
           '\t' + std::to_string(report.evaluated) + "/" +
           std::to_string(report.evaluated + report.failed) + " ok\t\n";
    return out;
}

/// Human-readable table of the same rows.
inline std::string report_table(const EvalReport& report) {
    std::size_t idw = 7;
    for (const ClusterEval& row : report.per_cluster) idw = std::max(idw, row.id.size());
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf, "%-*s %8s %8s %8s  %s\n", static_cast<int>(idw),
                  "cluster", "ROUGE-1", "ROUGE-2", "TC", "compression");
    out += buf;
    for (const ClusterEval& row : report.per_cluster) {
        if (row.ok) {
            std::snprintf(buf, sizeof buf, "%-*s %8.5f %8.5f %8.5f  %s\n",
                          static_cast<int>(idw), row.id.c_str(), row.rouge1, row.rouge2,
                          row.tc, row.compression.c_str());
        } else {
            std::snprintf(buf, sizeof buf, "%-*s %8s %8s %8s  failed: %s\n",
                          static_cast<int>(idw), row.id.c_str(), "-", "-", "-",
                          row.error.c_str());
        }
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "%-*s %8.5f %8.5f %8.5f  %d/%d ok\n",
                  static_cast<int>(idw), "MEAN", report.mean_rouge1, report.mean_rouge2,
                  report.mean_tc, report.evaluated, report.evaluated + report.failed);
    out += buf;
    return out;
}

/// The experiment grid: beta and gamma in {0.0, 0.1, ..., 0.9} with
/// beta + gamma < 1.0 (55 lattice points), alpha pinned at 1.0.
inline std::vector<std::pair<double, double>> parameter_grid() {
    std::vector<std::pair<double, double>> grid;
    for (int b = 0; b <= 9; ++b)
        for (int g = 0; b + g <= 9; ++g)
            grid.emplace_back(b / 10.0, g / 10.0);
    return grid;
}

struct GridRow {
    double beta = 0.0, gamma = 0.0;
    EvalReport report;
};

inline std::vector<GridRow> run_grid(const std::vector<Cluster>& corpus,
                                     const StopwordSet& stopwords, RunConfig config) {
    config.alpha = 1.0;
    std::vector<GridRow> rows;
    for (auto [beta, gamma] : parameter_grid()) {
        config.beta = beta;
        config.gamma = gamma;
        rows.push_back({beta, gamma, run_experiment(corpus, stopwords, config)});
    }
    return rows;
}

inline std::string grid_dsv(const std::vector<GridRow>& rows) {
    std::string out = "beta\tgamma\trouge1\trouge2\ttc\tok\n";
    char buf[32];
    for (const GridRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%.1f\t%.1f\t", row.beta, row.gamma);
        out += buf;
        out += detail::fixed5(row.report.mean_rouge1) + '\t' +
               detail::fixed5(row.report.mean_rouge2) + '\t' +
               detail::fixed5(row.report.mean_tc) + '\t' +
               std::to_string(row.report.evaluated) + "/" +
               std::to_string(row.report.evaluated + row.report.failed) + '\n';
    }
    return out;
}

}  // namespace msc
