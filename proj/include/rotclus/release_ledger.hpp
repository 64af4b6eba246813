#ifndef ROTCLUS_RELEASE_LEDGER_HPP
#define ROTCLUS_RELEASE_LEDGER_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rotclus/angle.hpp"

namespace rotclus {

struct ReleaseCheck {
    bool allowed = false;
    std::string reason; // names the violated rule when not allowed
};

// Record of released unification angles over m subsets. Accepted releases
// keep the constraint graph acyclic and the edge count at most m - 1, so
// the released difference constraints never determine the subset angles.
class ReleaseLedger {
public:
    struct Edge {
        int i;
        int j;
        Angle theta_ij;
    };

    explicit ReleaseLedger(int m);

    int m() const { return m_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Pure check: true iff adding {i, j} keeps the graph acyclic and the
    // edge count within m - 1. Indices are 1-based; i == j or out-of-range
    // indices are errors, not refusals.
    ReleaseCheck can_release(int i, int j) const;

    // Stores the edge with its angle. Recording an edge can_release would
    // refuse is a policy violation and throws.
    void record_release(int i, int j, Angle theta_ij);

    // Rank of the linear system {theta_j - theta_i = theta_ij} implied by
    // the released edges, over the m unknown subset angles.
    int attacker_rank() const;

    void save(const std::filesystem::path& path) const;
    static ReleaseLedger load(const std::filesystem::path& path);

private:
    void check_indices(int i, int j) const;

    int m_;
    std::vector<Edge> edges_;
};

// Rank of the difference-constraint system for an arbitrary edge set, not
// necessarily one a ledger would accept. Gaussian elimination over the
// |edges| x m coefficient matrix.
int difference_system_rank(int m, const std::vector<std::pair<int, int>>& edges);

} // namespace rotclus

#endif
