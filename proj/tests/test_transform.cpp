#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <cmath>

#include "rotclus/error.hpp"
#include "rotclus/transform.hpp"
#include "support.hpp"

using namespace rotclus;
using test_support::TempDir;

namespace {

// Finds a seed whose derived angle falls inside [lo, hi) degrees. Keeps the
// tests honest: block angles are always reached through seed_to_angle.
Seed seed_with_angle_near(double lo, double hi, Seed start = 0) {
    for (Seed s = start; s < start + 200000; ++s) {
        const double deg = seed_to_angle(s).degrees();
        if (deg >= lo && deg < hi)
            return s;
    }
    FAIL("no seed found with angle in range");
    return 0;
}

// Plaintext Gram block A_i^T * B_i computed with explicit loops.
Eigen::MatrixXd gram_oracle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd gram(a.cols(), b.cols());
    for (Eigen::Index p = 0; p < a.cols(); ++p) {
        for (Eigen::Index q = 0; q < b.cols(); ++q) {
            double acc = 0.0;
            for (Eigen::Index k = 0; k < a.rows(); ++k)
                acc += a(k, p) * b(k, q);
            gram(p, q) = acc;
        }
    }
    return gram;
}

} // namespace

TEST_CASE("rbt is the seeded rotation of the whole dataset") {
    const Dataset d = test_support::random_dataset(4, 12, 501);
    const TransformedDataset t = rbt(d, 42);
    REQUIRE(t.block_count() == 1);
    CHECK(t.block_width(1) == 12);

    const RotationMatrix r = build_rotation(seed_to_angle(42), 4);
    CHECK((t.values() - r.entries() * d.values()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("rbt preserves the distance matrix") {
    for (Seed seed : {Seed{1}, Seed{99}, Seed{123456}}) {
        const Dataset d = test_support::random_dataset(6, 30, 600 + seed);
        const TransformedDataset t = rbt(d, seed);
        CHECK(test_support::max_rel_deviation(test_support::distance_matrix(t.values()),
                                              test_support::distance_matrix(d.values())) < 1e-9);
    }
}

TEST_CASE("rbt rejects odd attribute counts") {
    const Dataset odd = test_support::random_dataset(3, 10, 77);
    CHECK_THROWS_AS(rbt(odd, 1), Error);
    CHECK_NOTHROW(rbt(pad_to_even(odd), 1));
}

TEST_CASE("mrbt with m=1 matches rbt bitwise") {
    const Dataset d = test_support::random_dataset(4, 15, 700);
    const Seed seed = 3141;
    const MrbtResult result = mrbt(d, 1, std::vector<Seed>{seed});
    const TransformedDataset single = rbt(d, seed);
    CHECK(result.transformed.values() == single.values());
    CHECK(result.secrets.m() == 1);
}

TEST_CASE("mrbt validates seed count and partition shape") {
    const Dataset d = test_support::random_dataset(4, 20, 701);
    CHECK_THROWS_AS(mrbt(d, 2, std::vector<Seed>{1}), Error);
    CHECK_THROWS_AS(mrbt(d, 5, std::vector<Seed>{1, 2, 3, 4, 5}), Error); // c = 4 is not > a = 4
}

TEST_CASE("mrbt blocks equal the per-subset rotations and keep distances within blocks") {
    const Dataset d = test_support::random_dataset(4, 23, 702);
    const std::vector<Seed> seeds = derive_seeds(88, 3);
    const MrbtResult result = mrbt(d, 3, seeds);
    REQUIRE(result.transformed.block_count() == 3);
    CHECK(result.transformed.block_width(1) == 7);
    CHECK(result.transformed.block_width(2) == 7);
    CHECK(result.transformed.block_width(3) == 9); // remainder lands in the last block

    const PartitionedDataset parts = partition(d, 3);
    for (int b = 1; b <= 3; ++b) {
        const Dataset& plain = parts.blocks[static_cast<std::size_t>(b - 1)];
        const RotationMatrix r =
            build_rotation(result.secrets.angles[static_cast<std::size_t>(b - 1)], 4);
        CHECK((Eigen::MatrixXd(result.transformed.block(b)) - r.entries() * plain.values())
                  .cwiseAbs()
                  .maxCoeff() < 1e-13);
        CHECK(test_support::max_rel_deviation(
                  test_support::distance_matrix(result.transformed.block(b)),
                  test_support::distance_matrix(plain.values())) < 1e-9);
    }
}

TEST_CASE("mrbt does not preserve cross-block distances") {
    // Two records that coincide in plaintext but land in different blocks
    // rotated roughly 90 degrees apart.
    const Seed near_zero = seed_with_angle_near(0.0, 2.0);
    const Seed near_ninety = seed_with_angle_near(89.0, 91.0);

    Eigen::MatrixXd values(2, 6);
    values << 1.0, 5.0, 6.0, 1.0, 7.0, 8.0,
              0.0, 5.0, 6.0, 0.0, 7.0, 8.0;
    const Dataset d(values);

    const MrbtResult result = mrbt(d, 2, std::vector<Seed>{near_zero, near_ninety});
    // record 0 lives in block 1, record 3 is the first record of block 2
    const double plain_dist = (d.values().col(0) - d.values().col(3)).norm();
    const double rotated_dist =
        (result.transformed.values().col(0) - result.transformed.values().col(3)).norm();
    CHECK(plain_dist == 0.0);
    CHECK(rotated_dist > 1.0); // roughly sqrt(2) for a quarter turn
}

TEST_CASE("transformed Gram diagonal blocks match the plaintext inner products") {
    const Dataset a = test_support::random_dataset(4, 20, 710);
    const Dataset b = test_support::random_dataset(4, 20, 711);
    const std::vector<Seed> seeds = derive_seeds(55, 2);
    const MrbtResult ya = mrbt(a, 2, seeds);
    const MrbtResult yb = mrbt(b, 2, seeds); // same per-subset rotations

    const Eigen::MatrixXd gram = inner_product_blocks(ya.transformed, yb.transformed);
    REQUIRE(gram.rows() == 20);
    REQUIRE(gram.cols() == 20);

    const PartitionedDataset pa = partition(a, 2);
    const PartitionedDataset pb = partition(b, 2);
    Eigen::Index offset = 0;
    for (int blockIdx = 0; blockIdx < 2; ++blockIdx) {
        const Eigen::MatrixXd oracle =
            gram_oracle(pa.blocks[static_cast<std::size_t>(blockIdx)].values(),
                        pb.blocks[static_cast<std::size_t>(blockIdx)].values());
        const Eigen::MatrixXd got =
            gram.block(offset, offset, oracle.rows(), oracle.cols());
        CHECK(test_support::max_rel_deviation(got, oracle) < 1e-9);
        offset += oracle.rows();
    }
}

TEST_CASE("off-diagonal Gram blocks are not preserved under distinct rotations") {
    const Seed near_zero = seed_with_angle_near(0.0, 2.0);
    const Seed near_ninety = seed_with_angle_near(89.0, 91.0);

    Eigen::MatrixXd values(2, 6);
    values << 1.0, 2.0, 3.0, 1.0, 2.0, 3.0,
              0.5, 1.5, 2.5, 0.5, 1.5, 2.5;
    const Dataset d(values);
    const MrbtResult y = mrbt(d, 2, std::vector<Seed>{near_zero, near_ninety});

    const Eigen::MatrixXd gram = inner_product_blocks(y.transformed, y.transformed);
    const Eigen::MatrixXd plain = gram_oracle(d.values(), d.values());
    // Cross block: records 0..2 against records 3..5.
    const double deviation =
        (gram.block(0, 3, 3, 3) - plain.block(0, 3, 3, 3)).cwiseAbs().maxCoeff();
    CHECK(deviation > 1e-3);
}

TEST_CASE("inner_product_blocks rejects mismatched block structure") {
    const Dataset a = test_support::random_dataset(4, 20, 712);
    const Dataset b = test_support::random_dataset(4, 24, 713);
    const MrbtResult ya = mrbt(a, 2, derive_seeds(1, 2));
    const MrbtResult yb = mrbt(b, 2, derive_seeds(1, 2));
    CHECK_THROWS_AS(inner_product_blocks(ya.transformed, yb.transformed), Error);
}

TEST_CASE("client release returns the unification angle and records it") {
    const Dataset d = test_support::random_dataset(4, 40, 720);
    const MrbtResult y = mrbt(d, 4, derive_seeds(9, 4));
    ReleaseLedger ledger(4);

    const ReleaseOutcome outcome = arbt_client_release(y.secrets, 1, 2, ledger);
    REQUIRE(outcome.released);
    CHECK(outcome.theta_ij.degrees() ==
          unification_angle(y.secrets.angles[0], y.secrets.angles[1]).degrees());
    CHECK(ledger.edges().size() == 1);

    // Frame equation for the released parameter.
    const RotationMatrix lhs =
        compose(build_rotation(outcome.theta_ij, 4), build_rotation(y.secrets.angles[0], 4));
    const RotationMatrix rhs = build_rotation(y.secrets.angles[1], 4);
    CHECK((lhs.entries() - rhs.entries()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("client release refuses the triangle closure without mutating anything") {
    const Dataset d = test_support::random_dataset(4, 40, 721);
    const MrbtResult y = mrbt(d, 3, derive_seeds(10, 3));
    ReleaseLedger ledger(3);

    CHECK(arbt_client_release(y.secrets, 1, 2, ledger).released);
    CHECK(arbt_client_release(y.secrets, 1, 3, ledger).released);
    const ReleaseOutcome third = arbt_client_release(y.secrets, 2, 3, ledger);
    CHECK(!third.released);
    CHECK(third.refusal_reason.find("cycle") != std::string::npos);
    CHECK(ledger.edges().size() == 2);

    CHECK_THROWS_AS(arbt_client_release(y.secrets, 2, 2, ledger), Error);
    CHECK_THROWS_AS(arbt_client_release(y.secrets, 0, 3, ledger), Error);
}

TEST_CASE("server_unify restores cross-subset distances") {
    const Dataset d = test_support::random_dataset(4, 40, 722);
    const MrbtResult y = mrbt(d, 2, derive_seeds(11, 2));
    ReleaseLedger ledger(2);
    const ReleaseOutcome release = arbt_client_release(y.secrets, 1, 2, ledger);
    REQUIRE(release.released);

    const UnifiedPair unified = server_unify(y.transformed, 1, 2, release.theta_ij);
    CHECK(unified.width_i == 20);
    CHECK(unified.width_j == 20);
    CHECK(unified.merged.records() == 40);

    // Cross-subset distances differ before unification...
    const Eigen::MatrixXd plain_dist = test_support::distance_matrix(d.values());
    const Eigen::MatrixXd pre_dist = test_support::distance_matrix(y.transformed.values());
    CHECK(test_support::max_rel_deviation(pre_dist, plain_dist) > 1e-3);
    // ...and match the plaintext everywhere afterwards.
    const Eigen::MatrixXd post_dist = test_support::distance_matrix(unified.merged.values());
    CHECK(test_support::max_rel_deviation(post_dist, plain_dist) < 1e-9);
}

TEST_CASE("unify with angle zero returns block i unchanged") {
    const Dataset d = test_support::random_dataset(4, 30, 723);
    const MrbtResult y = mrbt(d, 2, derive_seeds(12, 2));
    const UnifiedPair unified = server_unify(y.transformed, 1, 2, Angle(0.0));
    CHECK(unified.merged.values().leftCols(15) == Eigen::MatrixXd(y.transformed.block(1)));
    CHECK(unified.merged.values().rightCols(15) == Eigen::MatrixXd(y.transformed.block(2)));
}

TEST_CASE("server_unify rejects bad subset indices") {
    const Dataset d = test_support::random_dataset(4, 30, 724);
    const MrbtResult y = mrbt(d, 2, derive_seeds(13, 2));
    CHECK_THROWS_AS(server_unify(y.transformed, 1, 3, Angle(5.0)), Error);
    CHECK_THROWS_AS(server_unify(y.transformed, 2, 2, Angle(5.0)), Error);
}

TEST_CASE("refresh_parameters re-keys the transform and resets the ledger") {
    const Dataset d = test_support::random_dataset(4, 40, 725);
    const MrbtResult original = mrbt(d, 3, derive_seeds(14, 3));
    ReleaseLedger ledger(3);
    const ReleaseOutcome old_release = arbt_client_release(original.secrets, 1, 2, ledger);
    REQUIRE(old_release.released);

    const RefreshResult refreshed = refresh_parameters(d, original.secrets, 9000);
    CHECK(refreshed.secrets.m() == 3);
    CHECK(refreshed.ledger.edges().empty());
    CHECK(refreshed.transformed.values() != original.transformed.values());

    // The previously released angle no longer bridges the new frames.
    const RotationMatrix stale = compose(build_rotation(old_release.theta_ij, 4),
                                         build_rotation(refreshed.secrets.angles[0], 4));
    const RotationMatrix target = build_rotation(refreshed.secrets.angles[1], 4);
    CHECK((stale.entries() - target.entries()).cwiseAbs().maxCoeff() > 1e-6);

    const RefreshResult other = refresh_parameters(d, original.secrets, 9001);
    CHECK(other.transformed.values() != refreshed.transformed.values());

    // m = 1 refresh is an rbt re-keying.
    const MrbtResult single = mrbt(d, 1, derive_seeds(15, 1));
    const RefreshResult rekeyed = refresh_parameters(d, single.secrets, 16);
    CHECK(rekeyed.transformed.values() == rbt(d, derive_seeds(16, 1)[0]).values());
}

TEST_CASE("transformed datasets round-trip through the block directory format") {
    TempDir dir("blocks");
    const Dataset d = test_support::random_dataset(4, 23, 726);
    const MrbtResult y = mrbt(d, 3, derive_seeds(17, 3));
    save_transformed(y.transformed, dir.path());

    const TransformedDataset back = load_transformed(dir.path());
    CHECK(back.block_count() == 3);
    CHECK(back.dim() == 4);
    CHECK(back.values() == y.transformed.values());
    for (int b = 1; b <= 3; ++b) {
        CHECK(back.block_width(b) == y.transformed.block_width(b));
        CHECK(back.subset_index(b) == b);
    }
}

TEST_CASE("released artifacts carry no angle or seed fields") {
    TempDir dir("noleak");
    const Dataset d = test_support::random_dataset(4, 23, 727);
    const MrbtResult y = mrbt(d, 3, derive_seeds(18, 3));
    save_transformed(y.transformed, dir.path());

    std::string manifest = test_support::read_file(dir.path() / "manifest.txt");
    std::transform(manifest.begin(), manifest.end(), manifest.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    CHECK(manifest.find("angle") == std::string::npos);
    CHECK(manifest.find("seed") == std::string::npos);
    CHECK(manifest.find("theta") == std::string::npos);

    // Block files hold nothing but the rotated numbers.
    for (const char* name : {"block_001.csv", "block_002.csv", "block_003.csv"}) {
        const Dataset block = load_csv(dir.path() / name);
        CHECK(block.attribute_names().empty());
        CHECK(block.attributes() == 4);
    }
}

TEST_CASE("secrets round-trip and stay out of the block directory") {
    TempDir dir("secrets");
    const Dataset d = test_support::random_dataset(4, 23, 728);
    const MrbtResult y = mrbt(d, 3, derive_seeds(19, 3));

    const auto path = dir.path() / "client.secrets";
    save_secrets(y.secrets, path);
    const ClientSecrets back = load_secrets(path);
    CHECK(back.seeds == y.secrets.seeds);
    REQUIRE(back.angles.size() == y.secrets.angles.size());
    for (std::size_t i = 0; i < back.angles.size(); ++i)
        CHECK(back.angles[i].degrees() == y.secrets.angles[i].degrees());
}
