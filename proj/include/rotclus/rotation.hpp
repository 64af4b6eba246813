#ifndef ROTCLUS_ROTATION_HPP
#define ROTCLUS_ROTATION_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rotclus/angle.hpp"

namespace rotclus {

using Seed = std::uint64_t;

// SplitMix64 sequence generator (Vigna). Used both as the fixed seed->angle
// map and to derive per-subset seeds from one master seed.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// Orthonormal block-diagonal matrix: identical 2x2 blocks
// [[cos t, sin t], [-sin t, cos t]] built from a single angle.
class RotationMatrix {
public:
    Eigen::Index dim() const { return entries_.rows(); }
    const Eigen::MatrixXd& entries() const { return entries_; }
    Angle source_angle() const { return source_angle_; }

private:
    RotationMatrix(Eigen::MatrixXd entries, Angle source_angle)
        : entries_(std::move(entries)), source_angle_(source_angle) {}

    friend RotationMatrix build_rotation(Angle theta, Eigen::Index dim);
    friend RotationMatrix compose(const RotationMatrix& r1, const RotationMatrix& r2);

    Eigen::MatrixXd entries_;
    Angle source_angle_;
};

// dim must be even and >= 2.
RotationMatrix build_rotation(Angle theta, Eigen::Index dim);

// Matrix product; the source angle of the result is the normalized sum of
// the operands' angles. Dimensions must match.
RotationMatrix compose(const RotationMatrix& r1, const RotationMatrix& r2);

// R * block. The block's row count must equal the rotation dimension.
Eigen::MatrixXd apply(const RotationMatrix& r, const Eigen::Ref<const Eigen::MatrixXd>& block);

// The angle t_ij with (theta_i + t_ij) mod 360 == theta_j:
// theta_j - theta_i when theta_j > theta_i, else 360 - (theta_i - theta_j).
Angle unification_angle(Angle theta_i, Angle theta_j);

// Deterministic map from a 64-bit seed to an angle, approximately uniform
// over [0, 360): one SplitMix64 draw scaled into the range.
Angle seed_to_angle(Seed seed);

// m subset seeds drawn from the SplitMix64 stream starting at master.
std::vector<Seed> derive_seeds(Seed master, std::size_t count);

} // namespace rotclus

#endif
