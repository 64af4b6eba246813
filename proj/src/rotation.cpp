#include "rotclus/rotation.hpp"

#include <cmath>
#include <string>

#include "rotclus/error.hpp"

namespace rotclus {

RotationMatrix build_rotation(Angle theta, Eigen::Index dim) {
    if (dim < 2 || dim % 2 != 0)
        throw Error(ErrorKind::precondition,
                    "rotation dimension must be a positive even number, got " +
                        std::to_string(dim));

    const double c = std::cos(theta.radians());
    const double s = std::sin(theta.radians());

    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; b += 2) {
        entries(b, b) = c;
        entries(b, b + 1) = s;
        entries(b + 1, b) = -s;
        entries(b + 1, b + 1) = c;
    }
    return RotationMatrix(std::move(entries), theta);
}

RotationMatrix compose(const RotationMatrix& r1, const RotationMatrix& r2) {
    if (r1.dim() != r2.dim())
        throw Error(ErrorKind::precondition,
                    "cannot compose rotations of dimensions " + std::to_string(r1.dim()) +
                        " and " + std::to_string(r2.dim()));
    return RotationMatrix(r1.entries() * r2.entries(),
                          r1.source_angle() + r2.source_angle());
}

Eigen::MatrixXd apply(const RotationMatrix& r, const Eigen::Ref<const Eigen::MatrixXd>& block) {
    if (block.rows() != r.dim())
        throw Error(ErrorKind::precondition,
                    "block has " + std::to_string(block.rows()) +
                        " rows but the rotation dimension is " + std::to_string(r.dim()));
    return r.entries() * block;
}

Angle unification_angle(Angle theta_i, Angle theta_j) {
    const double ti = theta_i.degrees();
    const double tj = theta_j.degrees();
    if (tj > ti)
        return Angle(tj - ti);
    if (ti > tj)
        return Angle(360.0 - (ti - tj));
    return Angle(0.0);
}

Angle seed_to_angle(Seed seed) {
    SplitMix64 rng{seed};
    // Top 53 bits give a uniform double in [0, 1); scaling stays below 360.
    const double unit = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    return Angle(unit * 360.0);
}

std::vector<Seed> derive_seeds(Seed master, std::size_t count) {
    SplitMix64 rng{master};
    std::vector<Seed> seeds(count);
    for (auto& s : seeds)
        s = rng.next();
    return seeds;
}

} // namespace rotclus
