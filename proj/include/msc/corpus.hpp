#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

// POS-tagged sentence clusters, stopword lists and reference compressions.
// Input files are plain UTF-8 text, one sentence per line, tokens encoded as
// surface/POS; a line consisting of "---" (or the first blank line) starts the
// reference-compressions block.

namespace msc {

/// Lowercases a UTF-8 string. Handles ASCII, the Latin-1 supplement
/// (enough for French and Portuguese corpora) and the OE/Y-diaeresis pairs.
/// Anything else passes through unchanged.
inline std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c >= 'A' && c <= 'Z') {
            out.push_back(static_cast<char>(c + 32));
        } else if (c == 0xC3 && i + 1 < s.size()) {
            unsigned char d = static_cast<unsigned char>(s[i + 1]);
            // U+00C0..U+00DE -> U+00E0..U+00FE, skipping U+00D7 (multiplication sign)
            if (d >= 0x80 && d <= 0x9E && d != 0x97) {
                out.push_back(static_cast<char>(c));
                out.push_back(static_cast<char>(d + 0x20));
            } else {
                out.push_back(static_cast<char>(c));
                out.push_back(static_cast<char>(d));
            }
            ++i;
        } else if (c == 0xC5 && i + 1 < s.size()) {
            unsigned char d = static_cast<unsigned char>(s[i + 1]);
            if (d == 0x92) {            // OE ligature
                out.push_back(static_cast<char>(0xC5));
                out.push_back(static_cast<char>(0x93));
            } else if (d == 0xB8) {     // Y with diaeresis
                out.push_back(static_cast<char>(0xC3));
                out.push_back(static_cast<char>(0xBF));
            } else {
                out.push_back(static_cast<char>(c));
                out.push_back(static_cast<char>(d));
            }
            ++i;
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

struct Token {
    std::string surface;
    std::string lower;   // case-folded surface
    std::string pos;     // never empty
    bool is_stopword = false;

    friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
    std::vector<Token> tokens;

    std::size_t size() const { return tokens.size(); }

    friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Cluster {
    std::string id;
    std::vector<Sentence> sentences;
    std::vector<Sentence> references;   // may be empty

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

class StopwordSet {
public:
    StopwordSet() = default;

    void insert(std::string_view word) { words_.insert(to_lower(word)); }
    bool contains(std::string_view lower) const {
        return words_.count(std::string(lower)) > 0;
    }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

struct ParseError : std::runtime_error {
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : std::runtime_error("parse error at line " + std::to_string(line) +
                             ", column " + std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    explicit ParseError(std::string msg)
        : std::runtime_error(std::move(msg)), line(0), column(0) {}

    std::size_t line;
    std::size_t column;
};

/// One word per line, '#' comment lines and blank lines ignored,
/// everything case-folded, duplicates collapsed.
inline StopwordSet load_stopwords(std::string_view raw) {
    StopwordSet set;
    std::size_t pos = 0;
    while (pos <= raw.size()) {
        std::size_t nl = raw.find('\n', pos);
        std::string_view line = raw.substr(pos, nl == std::string_view::npos ? raw.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? raw.size() + 1 : nl + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (line.empty() || line.front() == '#') continue;
        set.insert(line);
    }
    return set;
}

namespace detail {

// Splits "surface/POS" on the LAST '/' so surfaces containing '/' survive.
inline Token parse_token(std::string_view field, const StopwordSet& stopwords,
                         std::size_t line_no, std::size_t col) {
    std::size_t slash = field.rfind('/');
    if (slash == std::string_view::npos)
        throw ParseError("token '" + std::string(field) + "' has no POS tag", line_no, col);
    if (slash == 0)
        throw ParseError("token '" + std::string(field) + "' has an empty surface", line_no, col);
    if (slash + 1 == field.size())
        throw ParseError("token '" + std::string(field) + "' has an empty POS tag", line_no, col);
    Token t;
    t.surface = std::string(field.substr(0, slash));
    t.lower = to_lower(t.surface);
    t.pos = std::string(field.substr(slash + 1));
    t.is_stopword = stopwords.contains(t.lower);
    return t;
}

inline Sentence parse_sentence_line(std::string_view line, const StopwordSet& stopwords,
                                    std::size_t line_no) {
    Sentence s;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') { ++i; continue; }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        s.tokens.push_back(parse_token(line.substr(start, i - start), stopwords, line_no, start + 1));
    }
    return s;
}

inline bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

inline bool is_separator(std::string_view line) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return false;
    std::size_t b = line.find_last_not_of(" \t\r");
    return line.substr(a, b - a + 1) == "---";
}

}  // namespace detail

/// Parses a cluster file: source sentences, then an optional reference block
/// introduced by a "---" line (a blank line is accepted as well). Stopword
/// flags are assigned by lowercase-form membership.
inline Cluster parse_cluster(std::string_view raw, const StopwordSet& stopwords,
                             std::string id = "") {
    Cluster cluster;
    cluster.id = std::move(id);
    bool in_references = false;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < raw.size()) {
        std::size_t nl = raw.find('\n', pos);
        std::string_view line = raw.substr(pos, nl == std::string_view::npos ? raw.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? raw.size() : nl + 1;
        ++line_no;
        if (detail::is_separator(line)) { in_references = true; continue; }
        if (detail::is_blank(line)) {
            if (!cluster.sentences.empty()) in_references = true;
            continue;
        }
        Sentence s = detail::parse_sentence_line(line, stopwords, line_no);
        (in_references ? cluster.references : cluster.sentences).push_back(std::move(s));
    }
    if (cluster.sentences.empty())
        throw ParseError("cluster file contains no sentences");
    if (cluster.sentences.size() < 2)
        throw ParseError("a cluster needs at least 2 sentences, got 1");
    return cluster;
}

inline std::string serialize_sentence(const Sentence& s) {
    std::string out;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += s.tokens[i].surface;
        out.push_back('/');
        out += s.tokens[i].pos;
    }
    return out;
}

inline std::string serialize_cluster(const Cluster& cluster) {
    std::string out;
    for (const Sentence& s : cluster.sentences) { out += serialize_sentence(s); out.push_back('\n'); }
    if (!cluster.references.empty()) {
        out += "---\n";
        for (const Sentence& s : cluster.references) { out += serialize_sentence(s); out.push_back('\n'); }
    }
    return out;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline StopwordSet load_stopwords_file(const std::filesystem::path& path) {
    return load_stopwords(read_file(path));
}

inline Cluster load_cluster_file(const std::filesystem::path& path, const StopwordSet& stopwords) {
    return parse_cluster(read_file(path), stopwords, path.stem().string());
}

/// Loads every regular file of a directory as a cluster, sorted by filename.
inline std::vector<Cluster> load_corpus_dir(const std::filesystem::path& dir,
                                            const StopwordSet& stopwords) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().filename().string().front() != '.')
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<Cluster> corpus;
    corpus.reserve(files.size());
    for (const auto& f : files) corpus.push_back(load_cluster_file(f, stopwords));
    return corpus;
}

}  // namespace msc
