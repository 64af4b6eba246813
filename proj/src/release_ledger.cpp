#include "rotclus/release_ledger.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rotclus/error.hpp"

namespace rotclus {

namespace {

// Union-find over subset indices 1..m.
struct DisjointSets {
    std::vector<int> parent;

    explicit DisjointSets(int m) : parent(static_cast<std::size_t>(m) + 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }

    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

ReleaseLedger::ReleaseLedger(int m) : m_(m) {
    if (m < 1)
        throw Error(ErrorKind::precondition, "subset count must be positive");
}

void ReleaseLedger::check_indices(int i, int j) const {
    if (i < 1 || i > m_ || j < 1 || j > m_)
        throw Error(ErrorKind::precondition,
                    "subset indices must lie in [1, " + std::to_string(m_) + "], got (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
    if (i == j)
        throw Error(ErrorKind::precondition,
                    "self-unification request (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is invalid");
}

ReleaseCheck ReleaseLedger::can_release(int i, int j) const {
    check_indices(i, j);

    std::string violations;
    auto add = [&violations](const std::string& v) {
        if (!violations.empty())
            violations += "; ";
        violations += v;
    };

    DisjointSets sets(m_);
    for (const Edge& e : edges_) {
        if ((e.i == i && e.j == j) || (e.i == j && e.j == i))
            add("parameter for (" + std::to_string(i) + ", " + std::to_string(j) +
                ") was already released");
        sets.unite(e.i, e.j);
    }
    if (violations.empty() && sets.find(i) == sets.find(j))
        add("release would close a cycle in the constraint graph, making the "
            "released equations dependent");
    if (static_cast<int>(edges_.size()) >= m_ - 1)
        add("release count limit reached: at most m-1 = " + std::to_string(m_ - 1) +
            " parameters may be released");

    if (violations.empty())
        return {true, ""};
    return {false, violations};
}

void ReleaseLedger::record_release(int i, int j, Angle theta_ij) {
    ReleaseCheck check = can_release(i, j);
    if (!check.allowed)
        throw Error(ErrorKind::policy, "release (" + std::to_string(i) + ", " +
                                           std::to_string(j) + ") refused: " + check.reason);
    edges_.push_back(Edge{i, j, theta_ij});
}

int ReleaseLedger::attacker_rank() const {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(edges_.size());
    for (const Edge& e : edges_)
        pairs.emplace_back(e.i, e.j);
    return difference_system_rank(m_, pairs);
}

int difference_system_rank(int m, const std::vector<std::pair<int, int>>& edges) {
    if (edges.empty())
        return 0;
    // One row theta_j - theta_i = theta_ij per edge: +1 at j, -1 at i.
    std::vector<std::vector<double>> rows;
    rows.reserve(edges.size());
    for (const auto& [i, j] : edges) {
        std::vector<double> row(static_cast<std::size_t>(m), 0.0);
        row[static_cast<std::size_t>(j - 1)] = 1.0;
        row[static_cast<std::size_t>(i - 1)] = -1.0;
        rows.push_back(std::move(row));
    }

    int rank = 0;
    std::size_t pivot_row = 0;
    for (int col = 0; col < m && pivot_row < rows.size(); ++col) {
        std::size_t best = pivot_row;
        for (std::size_t r = pivot_row; r < rows.size(); ++r)
            if (std::fabs(rows[r][static_cast<std::size_t>(col)]) >
                std::fabs(rows[best][static_cast<std::size_t>(col)]))
                best = r;
        if (std::fabs(rows[best][static_cast<std::size_t>(col)]) < 1e-9)
            continue;
        std::swap(rows[pivot_row], rows[best]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row)
                continue;
            const double factor = rows[r][static_cast<std::size_t>(col)] /
                                  rows[pivot_row][static_cast<std::size_t>(col)];
            if (factor == 0.0)
                continue;
            for (int c = 0; c < m; ++c)
                rows[r][static_cast<std::size_t>(c)] -=
                    factor * rows[pivot_row][static_cast<std::size_t>(c)];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

void ReleaseLedger::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
    out << "m " << m_ << "\n";
    for (const Edge& e : edges_) {
        char buf[40];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), e.theta_ij.degrees(),
                                       std::chars_format::general, 17);
        out << e.i << " " << e.j << " " << std::string_view(buf, ptr) << "\n";
    }
    if (!out)
        throw Error(ErrorKind::io, "failed writing " + path.string());
}

ReleaseLedger ReleaseLedger::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for reading");

    std::string header;
    int m = 0;
    if (!(in >> header >> m) || header != "m" || m < 1)
        throw Error(ErrorKind::io, path.string() + ": malformed ledger header");

    ReleaseLedger ledger(m);
    int i, j;
    double theta;
    while (in >> i >> j >> theta)
        ledger.record_release(i, j, Angle(theta));
    if (!in.eof() && in.fail())
        throw Error(ErrorKind::io, path.string() + ": malformed ledger entry");
    return ledger;
}

} // namespace rotclus
