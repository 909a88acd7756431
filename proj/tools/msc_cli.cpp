// Command-line driver: compress one cluster file or evaluate a corpus
// directory against its reference compressions.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "msc/corpus.hpp"
#include "msc/evaluation.hpp"
#include "msc/pipeline.hpp"

namespace {

struct CliOptions {
    msc::RunConfig config;
    std::string method = "opt";
    bool grid = false;
    std::string dump_graph_path;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--method", opt.method, "Compression method: filippova | bm | opt")
        ->check(CLI::IsMember({"filippova", "bm", "opt"}))
        ->capture_default_str();
    cmd->add_option("--alpha", opt.config.alpha, "Cohesion weight")->capture_default_str();
    cmd->add_option("--beta", opt.config.beta, "Keyword bonus weight")->capture_default_str();
    cmd->add_option("--gamma", opt.config.gamma, "Trigram bonus weight")->capture_default_str();
    cmd->add_option("--pc", opt.config.pc, "Number of keywords to extract")->capture_default_str();
    cmd->add_option("--pmin", opt.config.pmin, "Minimum words per compression")->capture_default_str();
    cmd->add_option("--k", opt.config.k_best, "Candidate paths to enumerate "
                    "(defaults to 50; 200 for method=bm when not given)");
    cmd->add_option("--seed", opt.config.seed, "Random seed for keyword extraction")
        ->capture_default_str();
    cmd->add_option("--timeout-secs", opt.config.timeout_secs, "Solver budget per cluster")
        ->capture_default_str();
    cmd->add_option("--verb-prefixes", opt.config.verb_prefixes,
                    "POS prefixes that mark a verb")->delimiter(',')->capture_default_str();
    cmd->add_option("--stopwords", opt.config.stopword_path, "Stopword file")->required();
    cmd->add_option("--out", opt.config.output_path, "Output file path");
}

void finalize_config(const CLI::App* cmd, CliOptions& opt) {
    opt.config.method = msc::method_from_name(opt.method);
    if (opt.config.method == msc::Method::bm && cmd->count("--k") == 0)
        opt.config.k_best = 200;
    opt.config.validate();
}

std::string describe(const CliOptions& opt, const std::string& command) {
    char buf[512];
    std::string verbs;
    for (std::size_t i = 0; i < opt.config.verb_prefixes.size(); ++i) {
        if (i) verbs.push_back(',');
        verbs += opt.config.verb_prefixes[i];
    }
    std::snprintf(buf, sizeof buf,
                  "# %s method=%s alpha=%g beta=%g gamma=%g pc=%d pmin=%d k=%d seed=%u "
                  "timeout=%gs verb-prefixes=%s corpus=%s stopwords=%s",
                  command.c_str(), opt.method.c_str(), opt.config.alpha, opt.config.beta,
                  opt.config.gamma, opt.config.pc, opt.config.pmin, opt.config.k_best,
                  opt.config.seed, opt.config.timeout_secs, verbs.c_str(),
                  opt.config.corpus_path.c_str(), opt.config.stopword_path.c_str());
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

int run_compress(CliOptions& opt) {
    msc::StopwordSet stopwords = msc::load_stopwords_file(opt.config.stopword_path);
    msc::Cluster cluster = msc::load_cluster_file(opt.config.corpus_path, stopwords);
    if (!opt.dump_graph_path.empty()) {
        msc::WordGraph graph = msc::build_graph(cluster);
        msc::cohesion_weights(graph);
        write_file(opt.dump_graph_path, msc::dump_graph(graph));
    }
    msc::CompressionOutcome outcome = msc::compress_cluster(cluster, stopwords, opt.config);

    std::cout << describe(opt, "compress") << "\n";
    if (!outcome.selected) {
        std::cerr << "error: no verb-bearing compression with at least " << opt.config.pmin
                  << " words\n";
        return 1;
    }
    const msc::Solution& sol = *outcome.selected;
    char buf[128];
    std::cout << "compression: " << outcome.text << "\n";
    std::snprintf(buf, sizeof buf, "raw_score: %.6f", sol.raw_score);
    std::cout << buf << "\n";
    std::snprintf(buf, sizeof buf, "normalized_score: %.6f", sol.normalized_score);
    std::cout << buf << "\n";
    std::cout << "words: " << sol.path.size() << "\n";
    std::cout << "keywords:";
    for (const std::string& w : outcome.keywords.words()) std::cout << ' ' << w;
    std::cout << "\n";
    std::cout << "keyword_hits: " << outcome.keyword_hits << "\n";
    std::snprintf(buf, sizeof buf, "tc: %.6f",
                  msc::compression_ratio(outcome.sentence, cluster.sentences));
    std::cout << buf << "\n";
    if (!opt.config.output_path.empty())
        write_file(opt.config.output_path, outcome.text + "\n");
    return 0;
}

int run_evaluate(CliOptions& opt) {
    if (opt.grid && opt.config.method != msc::Method::opt)
        throw std::invalid_argument("--grid requires --method opt");
    msc::StopwordSet stopwords = msc::load_stopwords_file(opt.config.stopword_path);
    std::vector<msc::Cluster> corpus = msc::load_corpus_dir(opt.config.corpus_path, stopwords);
    if (corpus.empty()) {
        std::cerr << "error: no cluster files in " << opt.config.corpus_path << "\n";
        return 1;
    }
    std::vector<msc::Cluster> with_refs;
    for (msc::Cluster& c : corpus) {
        if (c.references.empty())
            std::cerr << "warning: cluster '" << c.id << "' has no references, skipped\n";
        else
            with_refs.push_back(std::move(c));
    }
    if (with_refs.empty()) {
        std::cerr << "error: no cluster has references\n";
        return 1;
    }

    std::cout << describe(opt, opt.grid ? "evaluate --grid" : "evaluate") << "\n";
    std::string dsv;
    if (opt.grid) {
        std::vector<msc::GridRow> rows = msc::run_grid(with_refs, stopwords, opt.config);
        dsv = msc::grid_dsv(rows);
        std::cout << dsv;
    } else {
        msc::EvalReport report = msc::run_experiment(with_refs, stopwords, opt.config);
        dsv = msc::report_dsv(report);
        std::cout << msc::report_table(report);
    }
    if (!opt.config.output_path.empty()) write_file(opt.config.output_path, dsv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-sentence compression over word graphs"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Key-value config file with [compress]/[evaluate] sections; "
                   "command-line flags win");

    CliOptions compress_opt, evaluate_opt;

    CLI::App* compress = app.add_subcommand("compress", "Fuse one cluster file into a sentence");
    add_common_flags(compress, compress_opt);
    compress->add_option("--corpus", compress_opt.config.corpus_path, "Cluster file")->required();
    compress->add_option("--dump-graph", compress_opt.dump_graph_path,
                         "Write the weighted word graph as a plain-text adjacency listing");

    CLI::App* evaluate = app.add_subcommand("evaluate", "Score a corpus directory against references");
    add_common_flags(evaluate, evaluate_opt);
    evaluate->add_option("--corpus", evaluate_opt.config.corpus_path, "Corpus directory")->required();
    evaluate->add_flag("--grid", evaluate_opt.grid,
                       "Sweep beta,gamma over the 55-point lattice (beta+gamma < 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compress->parsed()) {
            finalize_config(compress, compress_opt);
            return run_compress(compress_opt);
        }
        finalize_config(evaluate, evaluate_opt);
        return run_evaluate(evaluate_opt);
    } catch (const msc::SolveTimeout& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
