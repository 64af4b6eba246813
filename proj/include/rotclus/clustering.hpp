#ifndef ROTCLUS_CLUSTERING_HPP
#define ROTCLUS_CLUSTERING_HPP

#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "rotclus/dataset.hpp"

namespace rotclus {

enum class KMeansInit {
    random,     // k distinct records drawn uniformly via rng_seed
    sequential, // the first k records in storage order
};

struct KMeansConfig {
    Eigen::Index k = 2;
    KMeansInit init = KMeansInit::random;
    long long max_iterations = 100;
    double epsilon = 0.0; // fraction of records allowed to move at termination
    Seed rng_seed = 0;
};

// Assignment of every record to one of k clusters. Assignments are stored
// 0-based; the CSV form is 1-based.
struct Clustering {
    Eigen::Index k = 0;
    std::vector<int> assignments;
    Eigen::MatrixXd centroids; // a x k
    long long iterations_used = 0;
    double wcss = 0.0;

    Eigen::Index records() const { return static_cast<Eigen::Index>(assignments.size()); }
};

double euclidean_dist(const Eigen::Ref<const Eigen::VectorXd>& r1,
                      const Eigen::Ref<const Eigen::VectorXd>& r2);

// Lloyd iteration: assign to nearest centroid (ties to the lowest index),
// recompute centroids (an empty cluster keeps its previous centroid), stop
// when moved/n <= epsilon or max_iterations is reached. Deterministic for
// a fixed config.
Clustering kmeans(const Dataset& d, const KMeansConfig& cfg);

// Merge clustering for a unified pair: every cluster of ci is reassigned
// wholesale to the nearest cj cluster, then Lloyd refinement runs to a
// fixed point. ci covers the first ci.records() columns of unified, cj the
// rest, and both must share k.
Clustering warm_start_merge(const Clustering& ci, const Clustering& cj, const Dataset& unified);

// Maximum fraction of records with matching labels over all k! label
// permutations. Exhaustive, so k <= 8.
double label_agreement(const Clustering& c1, const Clustering& c2);

// Assignments file: header "record,cluster" then 1-based pairs. Centroids
// file: one row per centroid, loadable as a dataset.
void save_clustering_csv(const Clustering& c, const std::filesystem::path& assignments_path,
                         const std::filesystem::path& centroids_path);
Clustering load_clustering_csv(const std::filesystem::path& assignments_path,
                               const std::filesystem::path& centroids_path);

} // namespace rotclus

#endif
