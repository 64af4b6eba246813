// Shared helpers for the test suites. Everything here is independent of the
// library's own computation paths so it can serve as an oracle.
#ifndef ROTCLUS_TESTS_SUPPORT_HPP
#define ROTCLUS_TESTS_SUPPORT_HPP

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include <Eigen/Dense>

#include "rotclus/clustering.hpp"
#include "rotclus/dataset.hpp"

namespace test_support {

// Temporary directory removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("rotclus_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline bool rel_close(double a, double b, double rel_tol, double abs_tol = 1e-12) {
    const double diff = std::fabs(a - b);
    if (diff <= abs_tol)
        return true;
    return diff <= rel_tol * std::max(std::fabs(a), std::fabs(b));
}

// Hand-rolled pairwise column distance matrix: explicit sum-then-sqrt loop,
// independent of Eigen's norm path.
inline Eigen::MatrixXd distance_matrix(const Eigen::MatrixXd& columns) {
    const Eigen::Index n = columns.cols();
    Eigen::MatrixXd dist(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        for (Eigen::Index q = 0; q < n; ++q) {
            double acc = 0.0;
            for (Eigen::Index a = 0; a < columns.rows(); ++a) {
                const double d = columns(a, p) - columns(a, q);
                acc += d * d;
            }
            dist(p, q) = std::sqrt(acc);
        }
    }
    return dist;
}

inline double max_rel_deviation(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < got.rows(); ++r) {
        for (Eigen::Index c = 0; c < got.cols(); ++c) {
            const double denom = std::max({std::fabs(got(r, c)), std::fabs(want(r, c)), 1e-30});
            worst = std::max(worst, std::fabs(got(r, c) - want(r, c)) / denom);
        }
    }
    return worst;
}

// Union-find cycle oracle over 1-based node indices.
class GraphOracle {
public:
    explicit GraphOracle(int m) : parent_(static_cast<std::size_t>(m) + 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    bool creates_cycle(int i, int j) { return find(i) == find(j); }
    void add_edge(int i, int j) { parent_[static_cast<std::size_t>(find(i))] = find(j); }

private:
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x)
            x = parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
        return x;
    }
    std::vector<int> parent_;
};

// Row-reduction rank oracle over a dense matrix; written apart from the
// library's elimination so the two can check each other.
inline int rank_oracle(std::vector<std::vector<double>> rows, int cols) {
    int rank = 0;
    int lead_row = 0;
    for (int col = 0; col < cols && lead_row < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = lead_row; r < static_cast<int>(rows.size()); ++r) {
            if (std::fabs(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) > 1e-9) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            continue;
        std::swap(rows[static_cast<std::size_t>(lead_row)], rows[static_cast<std::size_t>(pivot)]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == lead_row)
                continue;
            const double f = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                             rows[static_cast<std::size_t>(lead_row)][static_cast<std::size_t>(col)];
            if (f == 0.0)
                continue;
            for (int c = 0; c < cols; ++c)
                rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * rows[static_cast<std::size_t>(lead_row)][static_cast<std::size_t>(c)];
        }
        ++lead_row;
        ++rank;
    }
    return rank;
}

// Verifies the Lloyd fixed-point conditions by exhaustive nearest-centroid
// checks (ties resolved to the lowest index, matching the library contract).
inline bool is_lloyd_fixed_point(const rotclus::Clustering& c, const Eigen::MatrixXd& data,
                                 double tol = 1e-9) {
    const Eigen::Index n = data.cols();
    for (Eigen::Index r = 0; r < n; ++r) {
        int best = 0;
        double best_dist = (data.col(r) - c.centroids.col(0)).squaredNorm();
        for (Eigen::Index k = 1; k < c.k; ++k) {
            const double d = (data.col(r) - c.centroids.col(k)).squaredNorm();
            if (d < best_dist) {
                best_dist = d;
                best = static_cast<int>(k);
            }
        }
        if (best != c.assignments[static_cast<std::size_t>(r)])
            return false;
    }
    for (Eigen::Index k = 0; k < c.k; ++k) {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(data.rows());
        Eigen::Index count = 0;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (c.assignments[static_cast<std::size_t>(r)] == static_cast<int>(k)) {
                sum += data.col(r);
                ++count;
            }
        }
        if (count == 0)
            continue;
        if (((sum / static_cast<double>(count)) - c.centroids.col(k)).norm() > tol)
            return false;
    }
    return true;
}

inline rotclus::Dataset random_dataset(Eigen::Index attributes, Eigen::Index records,
                                       std::uint64_t seed, double lo = -10.0, double hi = 10.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::MatrixXd values(attributes, records);
    for (Eigen::Index r = 0; r < records; ++r)
        for (Eigen::Index a = 0; a < attributes; ++a)
            values(a, r) = dist(rng);
    return rotclus::Dataset(std::move(values));
}

} // namespace test_support

#endif
