#ifndef ROTCLUS_DATASET_HPP
#define ROTCLUS_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotclus/rotation.hpp"

namespace rotclus {

// Numeric dataset held as an a x n matrix: one column per record, one row
// per attribute. On disk the orientation is flipped (records as rows).
class Dataset {
public:
    Dataset() = default;

    explicit Dataset(Eigen::MatrixXd values, std::vector<std::string> attribute_names = {});

    Eigen::Index attributes() const { return values_.rows(); }
    Eigen::Index records() const { return values_.cols(); }
    const Eigen::MatrixXd& values() const { return values_; }
    const std::vector<std::string>& attribute_names() const { return attribute_names_; }

private:
    Eigen::MatrixXd values_;
    std::vector<std::string> attribute_names_;
};

struct PartitionedDataset {
    std::vector<Dataset> blocks;

    int m() const { return static_cast<int>(blocks.size()); }
};

enum class NormMethod {
    min_max,
    z_score,
    unary_max,
};

// Per-attribute statistics captured by fit_normalizer. The meaning of the
// two stat vectors depends on the method: {min, max}, {mean, stddev}, or
// {max absolute, unused}.
struct NormalizationSpec {
    NormMethod method = NormMethod::min_max;
    Eigen::VectorXd stat_a;
    Eigen::VectorXd stat_b;

    Eigen::Index attributes() const { return stat_a.size(); }
};

// Records-as-rows CSV with '.' decimals and an optional single header row
// (detected when any first-row cell fails to parse as a number).
Dataset load_csv(const std::filesystem::path& path);

// Writes records as rows with 17 significant digits so a reload reproduces
// the values. A header row is emitted only when attribute names are set.
void save_csv(const Dataset& d, const std::filesystem::path& path);

NormalizationSpec fit_normalizer(const Dataset& d, NormMethod method);

Dataset apply_normalizer(const NormalizationSpec& spec, const Dataset& d);

// Contiguous column ranges in record order, floor(n/m) records per block
// with the last block absorbing the remainder. Requires floor(n/m) > a.
PartitionedDataset partition(const Dataset& d, int m);

// Appends one all-zero attribute when the attribute count is odd; identity
// otherwise. Pairwise record distances are unchanged exactly.
Dataset pad_to_even(const Dataset& d);

// i.i.d. Gaussian entries with the given mean and variance, reproducible
// from the seed. Entries are drawn record by record, attribute-major.
Dataset gen_synthetic(Eigen::Index records, Eigen::Index attributes, double mu,
                      double sigma_sq, Seed seed);

struct BlobData {
    Dataset data;
    std::vector<int> labels;      // generating cluster per record, 0-based
    Eigen::MatrixXd centers;      // a x k
};

// k Gaussian blobs for clustering experiments: centers drawn in [0, 100]^a
// with pairwise separation at least 25, records assigned round-robin across
// blobs. Small stddev gives cleanly separated clusters.
BlobData gen_blobs(Eigen::Index records, Eigen::Index attributes, int k,
                   double stddev, Seed seed);

} // namespace rotclus

#endif
