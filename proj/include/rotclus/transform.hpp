#ifndef ROTCLUS_TRANSFORM_HPP
#define ROTCLUS_TRANSFORM_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotclus/dataset.hpp"
#include "rotclus/release_ledger.hpp"
#include "rotclus/rotation.hpp"

namespace rotclus {

// Per-subset seeds and the angles derived from them. Stays on the client;
// only the seeds are ever written to the secrets file, never to any output
// destined for the miner.
struct ClientSecrets {
    std::vector<Seed> seeds;
    std::vector<Angle> angles;

    int m() const { return static_cast<int>(seeds.size()); }
};

// Rotated blocks Y_1..Y_m stored contiguously with per-block extents.
// Carries no angle or seed information.
class TransformedDataset {
public:
    TransformedDataset() = default;
    TransformedDataset(Eigen::MatrixXd values, std::vector<Eigen::Index> widths,
                       std::vector<int> subset_indices);

    Eigen::Index dim() const { return values_.rows(); }
    Eigen::Index records() const { return values_.cols(); }
    int block_count() const { return static_cast<int>(widths_.size()); }
    Eigen::Index block_width(int block) const { return widths_[static_cast<std::size_t>(block - 1)]; }
    int subset_index(int block) const { return subsets_[static_cast<std::size_t>(block - 1)]; }
    const Eigen::MatrixXd& values() const { return values_; }

    // Columns of block b (1-based), as a view into the contiguous storage.
    auto block(int b) const {
        return values_.middleCols(offsets_[static_cast<std::size_t>(b - 1)],
                                  widths_[static_cast<std::size_t>(b - 1)]);
    }

private:
    friend void rotate_blocks_into(const Dataset& d, const std::vector<Angle>& angles,
                                   const std::vector<Eigen::Index>& widths,
                                   TransformedDataset& out);

    Eigen::MatrixXd values_;
    std::vector<Eigen::Index> offsets_;
    std::vector<Eigen::Index> widths_;
    std::vector<int> subsets_;
};

struct MrbtResult {
    TransformedDataset transformed;
    ClientSecrets secrets;
};

// Merged block matrix [Y_i*, Y_j] produced by server_unify: block i rotated
// into block j's frame, then both concatenated, block i's columns first.
struct UnifiedPair {
    Dataset merged;
    int subset_i = 0;
    int subset_j = 0;
    Eigen::Index width_i = 0;
    Eigen::Index width_j = 0;
};

// Outcome of a client-side release request. A policy refusal is an expected
// outcome, distinct from errors.
struct ReleaseOutcome {
    bool released = false;
    Angle theta_ij;
    std::string refusal_reason;
};

// Y = f(seed_to_angle(seed)) * A as a single block. The attribute count
// must already be even (pad_to_even first).
TransformedDataset rbt(const Dataset& d, Seed seed);

// Partitions into m contiguous blocks (floor(n/m) > a required) and rotates
// each with its own seed. With m = 1 this is exactly rbt.
MrbtResult mrbt(const Dataset& d, int m, std::span<const Seed> seeds);

// Variants that write into existing objects, reusing their storage when
// the shape matches the previous call. Repeated transforms of same-shaped
// data then allocate nothing, which keeps timing loops free of allocator
// noise.
void rbt_into(const Dataset& d, Seed seed, TransformedDataset& out);
void mrbt_into(const Dataset& d, int m, std::span<const Seed> seeds, MrbtResult& out);

// Full Gram matrix Ya^T * Yb, which is the block matrix of per-subset
// products. Only the diagonal blocks are guaranteed to match the plaintext
// inner products. Both inputs need the same block structure.
Eigen::MatrixXd inner_product_blocks(const TransformedDataset& ya, const TransformedDataset& yb);

// Computes and records theta_ij when the ledger allows it; otherwise
// reports the refusal without touching the secrets.
ReleaseOutcome arbt_client_release(const ClientSecrets& secrets, int i, int j,
                                   ReleaseLedger& ledger);

// Y_i* = f(theta_ij) * Y_i merged with Y_j. Subset indices are 1-based.
UnifiedPair server_unify(const TransformedDataset& y, int i, int j, Angle theta_ij);

// The re-rotation half of server_unify: f(theta) applied to one block
// (1-based), written into the leading columns of out. out is only resized
// when it cannot hold the block, so a reused buffer makes this
// allocation-free.
void rotate_block_into(const TransformedDataset& y, int block, Angle theta, Eigen::MatrixXd& out);

struct RefreshResult {
    TransformedDataset transformed;
    ClientSecrets secrets;
    ReleaseLedger ledger;
};

// Re-keying: fresh seeds derived from the master seed, data re-transformed,
// ledger reset. Previously released parameters are useless afterwards.
RefreshResult refresh_parameters(const Dataset& d, const ClientSecrets& old_secrets,
                                 Seed master_seed);

// One CSV per block plus a plain-text manifest (m, dim, block widths and
// subset indices). No secret-bearing fields exist in this format.
void save_transformed(const TransformedDataset& t, const std::filesystem::path& directory);
TransformedDataset load_transformed(const std::filesystem::path& directory);

void save_secrets(const ClientSecrets& secrets, const std::filesystem::path& path);
ClientSecrets load_secrets(const std::filesystem::path& path);

} // namespace rotclus

#endif
