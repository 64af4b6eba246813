#include "rotclus/clustering.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "rotclus/error.hpp"

namespace rotclus {

double euclidean_dist(const Eigen::Ref<const Eigen::VectorXd>& r1,
                      const Eigen::Ref<const Eigen::VectorXd>& r2) {
    if (r1.size() != r2.size())
        throw Error(ErrorKind::precondition,
                    "records have different dimensions: " + std::to_string(r1.size()) + " vs " +
                        std::to_string(r2.size()));
    return (r1 - r2).norm();
}

namespace {

int nearest_centroid(const Eigen::MatrixXd& data, const Eigen::MatrixXd& centroids,
                     Eigen::Index record) {
    int best = 0;
    double best_dist = (data.col(record) - centroids.col(0)).squaredNorm();
    for (int c = 1; c < centroids.cols(); ++c) {
        const double dist = (data.col(record) - centroids.col(c)).squaredNorm();
        if (dist < best_dist) { // strict: ties stay with the lower index
            best_dist = dist;
            best = c;
        }
    }
    return best;
}

struct LloydResult {
    long long iterations = 0;
    double wcss = 0.0;
};

// Runs assign/update passes until at most epsilon * n records move in a
// pass. assignments entries may start at -1 (unassigned).
LloydResult lloyd(const Eigen::MatrixXd& data, std::vector<int>& assignments,
                  Eigen::MatrixXd& centroids, long long max_iterations, double epsilon) {
    const Eigen::Index n = data.cols();
    const Eigen::Index k = centroids.cols();
    const double moved_allowance = epsilon * static_cast<double>(n);

    LloydResult result;
    for (long long iter = 1; iter <= max_iterations; ++iter) {
        Eigen::Index moved = 0;
        for (Eigen::Index r = 0; r < n; ++r) {
            const int nearest = nearest_centroid(data, centroids, r);
            if (nearest != assignments[static_cast<std::size_t>(r)]) {
                assignments[static_cast<std::size_t>(r)] = nearest;
                ++moved;
            }
        }

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(data.rows(), k);
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index r = 0; r < n; ++r) {
            const int c = assignments[static_cast<std::size_t>(r)];
            sums.col(c) += data.col(r);
            ++counts[static_cast<std::size_t>(c)];
        }
        for (Eigen::Index c = 0; c < k; ++c)
            if (counts[static_cast<std::size_t>(c)] > 0) // empty clusters keep their centroid
                centroids.col(c) = sums.col(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);

        result.iterations = iter;
        if (static_cast<double>(moved) <= moved_allowance)
            break;
    }

    result.wcss = 0.0;
    for (Eigen::Index r = 0; r < n; ++r)
        result.wcss += (data.col(r) - centroids.col(assignments[static_cast<std::size_t>(r)])).squaredNorm();
    return result;
}

} // namespace

Clustering kmeans(const Dataset& d, const KMeansConfig& cfg) {
    const Eigen::Index n = d.records();
    if (cfg.k < 1)
        throw Error(ErrorKind::precondition, "cluster count must be positive");
    if (cfg.k > n)
        throw Error(ErrorKind::precondition,
                    "cluster count " + std::to_string(cfg.k) + " exceeds record count " +
                        std::to_string(n));
    if (cfg.max_iterations < 1)
        throw Error(ErrorKind::precondition, "max_iterations must be at least 1");
    if (cfg.epsilon < 0.0 || cfg.epsilon >= 1.0)
        throw Error(ErrorKind::precondition, "epsilon must lie in [0, 1)");

    Eigen::MatrixXd centroids(d.attributes(), cfg.k);
    if (cfg.init == KMeansInit::sequential) {
        centroids = d.values().leftCols(cfg.k);
    } else {
        std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), Eigen::Index{0});
        std::vector<Eigen::Index> picks;
        picks.reserve(static_cast<std::size_t>(cfg.k));
        std::mt19937_64 rng(cfg.rng_seed);
        std::sample(all.begin(), all.end(), std::back_inserter(picks),
                    static_cast<std::size_t>(cfg.k), rng);
        for (Eigen::Index c = 0; c < cfg.k; ++c)
            centroids.col(c) = d.values().col(picks[static_cast<std::size_t>(c)]);
    }

    Clustering result;
    result.k = cfg.k;
    result.assignments.assign(static_cast<std::size_t>(n), -1);
    LloydResult run = lloyd(d.values(), result.assignments, centroids, cfg.max_iterations,
                            cfg.epsilon);
    result.centroids = std::move(centroids);
    result.iterations_used = run.iterations;
    result.wcss = run.wcss;
    return result;
}

Clustering warm_start_merge(const Clustering& ci, const Clustering& cj, const Dataset& unified) {
    if (ci.k != cj.k)
        throw Error(ErrorKind::precondition,
                    "cluster counts differ: " + std::to_string(ci.k) + " vs " + std::to_string(cj.k));
    const Eigen::Index ni = ci.records();
    const Eigen::Index nj = cj.records();
    if (ni + nj != unified.records())
        throw Error(ErrorKind::precondition,
                    "unified pair holds " + std::to_string(unified.records()) +
                        " records but the clusterings cover " + std::to_string(ni + nj));
    const Eigen::Index k = ci.k;
    const Eigen::Index a = unified.attributes();

    // Centroids of the cj clusters, recomputed in the unified frame.
    Eigen::MatrixXd target_centroids(a, k);
    std::vector<Eigen::Index> target_counts(static_cast<std::size_t>(k), 0);
    target_centroids.setZero();
    for (Eigen::Index r = 0; r < nj; ++r) {
        const int c = cj.assignments[static_cast<std::size_t>(r)];
        target_centroids.col(c) += unified.values().col(ni + r);
        ++target_counts[static_cast<std::size_t>(c)];
    }
    for (Eigen::Index c = 0; c < k; ++c) {
        if (target_counts[static_cast<std::size_t>(c)] > 0)
            target_centroids.col(c) /= static_cast<double>(target_counts[static_cast<std::size_t>(c)]);
        else
            target_centroids.col(c) = cj.centroids.col(c);
    }

    // Step 1: move each ci cluster wholesale to the nearest cj cluster.
    std::vector<int> assignments(static_cast<std::size_t>(ni + nj), -1);
    for (Eigen::Index c = 0; c < k; ++c) {
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(a);
        Eigen::Index count = 0;
        for (Eigen::Index r = 0; r < ni; ++r) {
            if (ci.assignments[static_cast<std::size_t>(r)] == c) {
                centroid += unified.values().col(r);
                ++count;
            }
        }
        if (count == 0)
            continue;
        centroid /= static_cast<double>(count);

        int best = 0;
        double best_dist = (centroid - target_centroids.col(0)).squaredNorm();
        for (Eigen::Index t = 1; t < k; ++t) {
            const double dist = (centroid - target_centroids.col(t)).squaredNorm();
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(t);
            }
        }
        for (Eigen::Index r = 0; r < ni; ++r)
            if (ci.assignments[static_cast<std::size_t>(r)] == c)
                assignments[static_cast<std::size_t>(r)] = best;
    }
    for (Eigen::Index r = 0; r < nj; ++r)
        assignments[static_cast<std::size_t>(ni + r)] = cj.assignments[static_cast<std::size_t>(r)];

    // Centroids of the merged clusters seed the refinement.
    Eigen::MatrixXd centroids(a, k);
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    centroids.setZero();
    for (Eigen::Index r = 0; r < ni + nj; ++r) {
        const int c = assignments[static_cast<std::size_t>(r)];
        centroids.col(c) += unified.values().col(r);
        ++counts[static_cast<std::size_t>(c)];
    }
    for (Eigen::Index c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0)
            centroids.col(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
        else
            centroids.col(c) = target_centroids.col(c);
    }

    Clustering result;
    result.k = k;
    result.assignments = std::move(assignments);
    LloydResult run = lloyd(unified.values(), result.assignments, centroids, 100, 0.0);
    result.centroids = std::move(centroids);
    result.iterations_used = run.iterations;
    result.wcss = run.wcss;
    return result;
}

double label_agreement(const Clustering& c1, const Clustering& c2) {
    if (c1.records() != c2.records())
        throw Error(ErrorKind::precondition, "clusterings cover different record counts");
    if (c1.k != c2.k)
        throw Error(ErrorKind::precondition, "clusterings have different k");
    if (c1.k > 8)
        throw Error(ErrorKind::precondition,
                    "label agreement enumerates all k! permutations and supports k <= 8; "
                    "got k = " + std::to_string(c1.k));

    const std::size_t n = c1.assignments.size();
    std::vector<int> perm(static_cast<std::size_t>(c1.k));
    std::iota(perm.begin(), perm.end(), 0);

    std::size_t best = 0;
    do {
        std::size_t matches = 0;
        for (std::size_t r = 0; r < n; ++r)
            if (perm[static_cast<std::size_t>(c1.assignments[r])] == c2.assignments[r])
                ++matches;
        best = std::max(best, matches);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(n);
}

void save_clustering_csv(const Clustering& c, const std::filesystem::path& assignments_path,
                         const std::filesystem::path& centroids_path) {
    std::ofstream out(assignments_path, std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io, "cannot open " + assignments_path.string() + " for writing");
    out << "record,cluster\n";
    for (std::size_t r = 0; r < c.assignments.size(); ++r)
        out << (r + 1) << "," << (c.assignments[r] + 1) << "\n";
    if (!out)
        throw Error(ErrorKind::io, "failed writing " + assignments_path.string());

    save_csv(Dataset(c.centroids), centroids_path); // one centroid per row on disk
}

Clustering load_clustering_csv(const std::filesystem::path& assignments_path,
                               const std::filesystem::path& centroids_path) {
    std::ifstream in(assignments_path);
    if (!in)
        throw Error(ErrorKind::io, "cannot open " + assignments_path.string() + " for reading");

    std::string header;
    if (!std::getline(in, header) || header != "record,cluster")
        throw Error(ErrorKind::io, assignments_path.string() + ": expected 'record,cluster' header");

    Clustering c;
    std::string line;
    std::size_t expected_record = 1;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(ErrorKind::io, assignments_path.string() + ": malformed line '" + line + "'");
        long long record = 0, label = 0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, record);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), label);
        if (r1.ec != std::errc{} || r2.ec != std::errc{} || record != static_cast<long long>(expected_record) ||
            label < 1)
            throw Error(ErrorKind::io, assignments_path.string() + ": malformed line '" + line + "'");
        c.assignments.push_back(static_cast<int>(label - 1));
        ++expected_record;
    }
    if (c.assignments.empty())
        throw Error(ErrorKind::io, assignments_path.string() + ": no assignments found");

    Dataset centroids = load_csv(centroids_path); // one centroid per row
    c.centroids = centroids.values();
    c.k = c.centroids.cols();
    for (int label : c.assignments)
        if (label >= c.k)
            throw Error(ErrorKind::io,
                        assignments_path.string() + ": cluster label " + std::to_string(label + 1) +
                            " exceeds the centroid count " + std::to_string(c.k));
    return c;
}

} // namespace rotclus
