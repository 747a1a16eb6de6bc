#include "mdist/profile.hpp"

#include <algorithm>
#include <sstream>

namespace mdist {

VoteProfile::VoteProfile(int num_candidates, std::vector<std::vector<int>> rankings)
    : n_(num_candidates), m_(static_cast<int>(rankings.size())), rankings_(std::move(rankings)) {
    if (n_ < 1) throw std::invalid_argument("profile needs at least one candidate");
    if (m_ < 1) throw std::invalid_argument("profile needs at least one voter");
    positions_.assign(m_, std::vector<int>(n_, -1));
    for (int v = 0; v < m_; ++v) {
        const auto& r = rankings_[v];
        if (static_cast<int>(r.size()) != n_)
            throw std::invalid_argument("ranking of voter " + std::to_string(v + 1) +
                                        " has wrong length");
        for (int pos = 0; pos < n_; ++pos) {
            int x = r[pos];
            if (x < 0 || x >= n_)
                throw std::invalid_argument("ranking of voter " + std::to_string(v + 1) +
                                            ": candidate index out of range");
            if (positions_[v][x] != -1)
                throw std::invalid_argument("ranking of voter " + std::to_string(v + 1) +
                                            " is not a permutation");
            positions_[v][x] = pos;
        }
    }
}

namespace {

// Reads the next non-comment line; returns false at EOF. `line` tracks the
// physical line number including comments and blanks.
bool next_content_line(std::istream& in, std::string& out, int& line) {
    std::string raw;
    while (std::getline(in, raw)) {
        ++line;
        auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (raw[first] == '#') continue;
        out = raw;
        return true;
    }
    return false;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

int parse_int_token(const std::string& tok, int line, const char* what) {
    try {
        size_t used = 0;
        int value = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    }
}

}  // namespace

VoteProfile parse_profile(std::istream& in) {
    int line = 0;
    std::string content;
    if (!next_content_line(in, content, line)) throw ParseError(line + 1, "missing header");
    auto header = split_ws(content);
    if (header.size() != 2) throw ParseError(line, "header must be 'n m'");
    int n = parse_int_token(header[0], line, "candidate count");
    int m = parse_int_token(header[1], line, "voter count");
    if (n < 1) throw ParseError(line, "candidate count must be >= 1");
    if (m < 1) throw ParseError(line, "voter count must be >= 1");

    std::vector<std::vector<int>> rankings;
    rankings.reserve(m);
    for (int v = 0; v < m; ++v) {
        if (!next_content_line(in, content, line))
            throw ParseError(line + 1, "expected " + std::to_string(m) + " rankings, got " +
                                           std::to_string(v));
        auto toks = split_ws(content);
        if (static_cast<int>(toks.size()) != n)
            throw ParseError(line, "expected " + std::to_string(n) + " candidate indices");
        std::vector<int> ranking(n);
        std::vector<bool> seen(n, false);
        for (int i = 0; i < n; ++i) {
            int x = parse_int_token(toks[i], line, "candidate index");
            if (x < 0 || x >= n) throw ParseError(line, "candidate index out of range");
            if (seen[x]) throw ParseError(line, "not a permutation");
            seen[x] = true;
            ranking[i] = x;
        }
        rankings.push_back(std::move(ranking));
    }
    return VoteProfile(n, std::move(rankings));
}

VoteProfile parse_profile(const std::string& text) {
    std::istringstream iss(text);
    return parse_profile(iss);
}

std::string write_profile(const VoteProfile& profile) {
    std::ostringstream out;
    out << profile.candidates() << ' ' << profile.voters() << '\n';
    for (const auto& r : profile.rankings()) {
        for (size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
        out << '\n';
    }
    return out.str();
}

PseudoMetric parse_metric(std::istream& in) {
    int line = 0;
    std::string content;
    PseudoMetric metric;
    size_t width = 0;
    while (next_content_line(in, content, line)) {
        auto toks = split_ws(content);
        std::vector<Rational> row;
        row.reserve(toks.size());
        for (const auto& tok : toks) {
            try {
                row.push_back(parse_rational(tok));
            } catch (const std::exception& e) {
                throw ParseError(line, e.what());
            }
            if (row.back() < 0) throw ParseError(line, "negative distance '" + tok + "'");
        }
        if (metric.dist.empty()) {
            width = row.size();
        } else if (row.size() != width) {
            throw ParseError(line, "row has " + std::to_string(row.size()) +
                                       " entries, expected " + std::to_string(width));
        }
        metric.dist.push_back(std::move(row));
    }
    if (metric.dist.empty()) throw ParseError(line + 1, "empty metric file");
    return metric;
}

PseudoMetric parse_metric(const std::string& text) {
    std::istringstream iss(text);
    return parse_metric(iss);
}

std::string write_metric(const PseudoMetric& metric) {
    std::ostringstream out;
    for (const auto& row : metric.dist) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? " " : "") << format_rational(row[i]);
        out << '\n';
    }
    return out.str();
}

std::uint64_t profile_hash(const VoteProfile& profile) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : write_profile(profile)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

Rational pairwise_fraction(const VoteProfile& profile, int x, int y) {
    if (x == y) throw std::invalid_argument("pairwise_fraction: candidates must differ");
    int count = 0;
    for (int v = 0; v < profile.voters(); ++v)
        if (profile.prefers(v, x, y)) ++count;
    return Rational(count, profile.voters());
}

VoterSet voters_ranking_first(const VoteProfile& profile, int x, const CandidateSet& ys) {
    VoterSet out(profile.voters());
    for (int v = 0; v < profile.voters(); ++v) {
        bool all = true;
        for (auto y = ys.find_first(); y != CandidateSet::npos; y = ys.find_next(y))
            if (!profile.prefers(v, x, static_cast<int>(y))) {
                all = false;
                break;
            }
        if (all) out.set(v);
    }
    return out;
}

VoterSet voters_ranking_last(const VoteProfile& profile, int x, const CandidateSet& ys) {
    VoterSet out(profile.voters());
    for (int v = 0; v < profile.voters(); ++v) {
        bool all = true;
        for (auto y = ys.find_first(); y != CandidateSet::npos; y = ys.find_next(y))
            if (!profile.prefers(v, static_cast<int>(y), x)) {
                all = false;
                break;
            }
        if (all) out.set(v);
    }
    return out;
}

Rational social_cost(const PseudoMetric& metric, int x) {
    Rational total = 0;
    for (const auto& row : metric.dist) total += row.at(x);
    return total;
}

ConsistencyVerdict check_consistency(const PseudoMetric& metric, const VoteProfile& profile) {
    if (metric.voters() != profile.voters() || metric.candidates() != profile.candidates())
        throw std::invalid_argument("check_consistency: dimension mismatch");
    // Along each ranking, distances must be non-decreasing; adjacent pairs
    // suffice, and the first inversion pinpoints the violation.
    for (int v = 0; v < profile.voters(); ++v) {
        const auto& r = profile.ranking(v);
        for (int i = 0; i + 1 < profile.candidates(); ++i)
            if (metric.dist[v][r[i]] > metric.dist[v][r[i + 1]])
                return {false, v, r[i], r[i + 1]};
    }
    return {};
}

TriangleVerdict check_triangle(const PseudoMetric& metric) {
    const int m = metric.voters();
    const int n = metric.candidates();
    for (int v = 0; v < m; ++v)
        for (int x = 0; x < n; ++x)
            if (metric.dist[v][x] < 0) return {false, v, v, x, x};
    for (int v = 0; v < m; ++v)
        for (int v2 = 0; v2 < m; ++v2)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (metric.dist[v][x] >
                        metric.dist[v][y] + metric.dist[v2][y] + metric.dist[v2][x])
                        return {false, v, v2, x, y};
    return {};
}

RestrictedProfile restrict_profile(const VoteProfile& profile, const CandidateSet& keep) {
    if (keep.none()) throw std::invalid_argument("restrict_profile: empty candidate set");
    std::vector<int> kept;
    for (auto x = keep.find_first(); x != CandidateSet::npos; x = keep.find_next(x))
        kept.push_back(static_cast<int>(x));
    std::vector<int> new_index(profile.candidates(), -1);
    for (size_t i = 0; i < kept.size(); ++i) new_index[kept[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> rankings(profile.voters());
    for (int v = 0; v < profile.voters(); ++v) {
        rankings[v].reserve(kept.size());
        for (int x : profile.ranking(v))
            if (new_index[x] >= 0) rankings[v].push_back(new_index[x]);
    }
    return {VoteProfile(static_cast<int>(kept.size()), std::move(rankings)), std::move(kept)};
}

CandidateSet candidate_set(int n, std::initializer_list<int> members) {
    CandidateSet out(n);
    for (int x : members) out.set(x);
    return out;
}

CandidateSet candidate_set(int n, const std::vector<int>& members) {
    CandidateSet out(n);
    for (int x : members) out.set(x);
    return out;
}

}  // namespace mdist
