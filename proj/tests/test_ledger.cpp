#include <doctest.h>

#include <random>

#include "rotclus/error.hpp"
#include "rotclus/release_ledger.hpp"
#include "support.hpp"

using namespace rotclus;
using test_support::TempDir;

namespace {

// Independent rank oracle: explicit row reduction over the incidence rows.
int difference_rank_oracle(int m, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<double>> rows;
    for (const auto& [i, j] : edges) {
        std::vector<double> row(static_cast<std::size_t>(m), 0.0);
        row[static_cast<std::size_t>(j - 1)] = 1.0;
        row[static_cast<std::size_t>(i - 1)] = -1.0;
        rows.push_back(std::move(row));
    }
    return test_support::rank_oracle(std::move(rows), m);
}

} // namespace

TEST_CASE("an empty ledger allows any distinct pair") {
    const ReleaseLedger ledger(5);
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= 5; ++j)
            if (i != j)
                CHECK(ledger.can_release(i, j).allowed);
}

TEST_CASE("can_release rejects invalid indices as errors") {
    const ReleaseLedger ledger(4);
    CHECK_THROWS_AS(ledger.can_release(0, 2), Error);
    CHECK_THROWS_AS(ledger.can_release(1, 5), Error);
    CHECK_THROWS_AS(ledger.can_release(3, 3), Error);
}

TEST_CASE("the triangle closure is refused with a cycle reason") {
    ReleaseLedger ledger(3);
    ledger.record_release(1, 2, Angle(150.0));
    ledger.record_release(1, 3, Angle(40.0));

    const ReleaseCheck check = ledger.can_release(2, 3);
    CHECK(!check.allowed);
    CHECK(check.reason.find("cycle") != std::string::npos);
}

TEST_CASE("chain plus closing edge trips both rules on m=4") {
    ReleaseLedger ledger(4);
    ledger.record_release(1, 2, Angle(10.0));
    ledger.record_release(2, 3, Angle(20.0));
    ledger.record_release(3, 4, Angle(30.0));

    // Graph oracle confirms (1,4) closes a cycle.
    test_support::GraphOracle oracle(4);
    oracle.add_edge(1, 2);
    oracle.add_edge(2, 3);
    oracle.add_edge(3, 4);
    CHECK(oracle.creates_cycle(1, 4));

    const ReleaseCheck check = ledger.can_release(1, 4);
    CHECK(!check.allowed);
    CHECK(check.reason.find("cycle") != std::string::npos);
    CHECK(check.reason.find("m-1") != std::string::npos);
}

TEST_CASE("disjoint components are legal releases") {
    ReleaseLedger ledger(4);
    ledger.record_release(1, 2, Angle(5.0));
    CHECK_NOTHROW(ledger.record_release(3, 4, Angle(6.0)));
    CHECK(ledger.edges().size() == 2);
}

TEST_CASE("a full chain exhausts the release budget on m=5") {
    ReleaseLedger ledger(5);
    for (int i = 1; i < 5; ++i)
        ledger.record_release(i, i + 1, Angle(static_cast<double>(i)));
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= 5; ++j)
            if (i != j)
                CHECK(!ledger.can_release(i, j).allowed);
}

TEST_CASE("re-recording an edge is rejected as a duplicate") {
    ReleaseLedger ledger(4);
    ledger.record_release(1, 2, Angle(5.0));
    const ReleaseCheck check = ledger.can_release(2, 1);
    CHECK(!check.allowed);
    CHECK(check.reason.find("already released") != std::string::npos);
    CHECK_THROWS_AS(ledger.record_release(1, 2, Angle(5.0)), Error);
}

TEST_CASE("recording a disallowed edge throws a policy error") {
    ReleaseLedger ledger(3);
    ledger.record_release(1, 2, Angle(1.0));
    ledger.record_release(2, 3, Angle(2.0));
    try {
        ledger.record_release(1, 3, Angle(3.0));
        FAIL("expected a policy error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::policy);
    }
}

TEST_CASE("can_release is pure") {
    ReleaseLedger ledger(4);
    ledger.record_release(1, 2, Angle(9.0));
    const auto before = ledger.edges().size();
    (void)ledger.can_release(3, 4);
    (void)ledger.can_release(2, 1);
    CHECK(ledger.edges().size() == before);
}

TEST_CASE("attacker rank matches the row-reduction oracle") {
    CHECK(ReleaseLedger(3).attacker_rank() == 0);

    ReleaseLedger spanning(4);
    spanning.record_release(1, 2, Angle(1.0));
    spanning.record_release(2, 3, Angle(2.0));
    spanning.record_release(3, 4, Angle(3.0));
    const std::vector<std::pair<int, int>> tree_edges{{1, 2}, {2, 3}, {3, 4}};
    CHECK(difference_rank_oracle(4, tree_edges) == 3);
    CHECK(spanning.attacker_rank() == 3);
    CHECK(spanning.attacker_rank() < 4);

    // The triangle, recorded by bypassing the policy: rank 2 over 3
    // unknowns, so even this dependent set never pins absolute angles.
    const std::vector<std::pair<int, int>> triangle{{1, 2}, {1, 3}, {2, 3}};
    CHECK(difference_rank_oracle(3, triangle) == 2);
    CHECK(difference_system_rank(3, triangle) == 2);
}

TEST_CASE("random release sequences never break the policy invariants") {
    std::mt19937_64 rng(4242);
    for (int m = 3; m <= 10; ++m) {
        for (int trial = 0; trial < 60; ++trial) {
            ReleaseLedger ledger(m);
            test_support::GraphOracle oracle(m);
            int accepted = 0;
            for (int request = 0; request < 4 * m; ++request) {
                const int i = 1 + static_cast<int>(rng() % static_cast<unsigned>(m));
                int j = 1 + static_cast<int>(rng() % static_cast<unsigned>(m));
                if (i == j)
                    continue;
                const ReleaseCheck check = ledger.can_release(i, j);
                if (check.allowed) {
                    // The oracle agrees this edge cannot close a cycle.
                    CHECK(!oracle.creates_cycle(i, j));
                    ledger.record_release(i, j, seed_to_angle(rng()));
                    oracle.add_edge(i, j);
                    ++accepted;
                }
                CHECK(static_cast<int>(ledger.edges().size()) <= m - 1);
            }
            CHECK(static_cast<int>(ledger.edges().size()) == accepted);
            CHECK(ledger.attacker_rank() == accepted);
            CHECK(ledger.attacker_rank() < m);
        }
    }
}

TEST_CASE("ledgers round-trip through the text format") {
    TempDir dir("ledger");
    ReleaseLedger ledger(6);
    ledger.record_release(1, 2, Angle(150.5));
    ledger.record_release(4, 3, Angle(0.25));
    ledger.record_release(5, 6, Angle(359.999));

    const auto path = dir.path() / "releases.txt";
    ledger.save(path);
    const ReleaseLedger back = ReleaseLedger::load(path);
    CHECK(back.m() == 6);
    REQUIRE(back.edges().size() == 3);
    CHECK(back.edges()[0].i == 1);
    CHECK(back.edges()[0].j == 2);
    CHECK(back.edges()[0].theta_ij.degrees() == 150.5);
    CHECK(back.edges()[1].i == 4);
    CHECK(back.edges()[1].theta_ij.degrees() == 0.25);
    CHECK(back.edges()[2].theta_ij.degrees() == 359.999);

    CHECK_THROWS_AS(ReleaseLedger::load(dir.path() / "absent.txt"), Error);
}

TEST_CASE("ledger file format is the documented header plus edge lines") {
    TempDir dir("ledgerfmt");
    ReleaseLedger ledger(3);
    ledger.record_release(1, 2, Angle(150.0));
    const auto path = dir.path() / "releases.txt";
    ledger.save(path);
    CHECK(test_support::read_file(path) == "m 3\n1 2 150\n");
}
