#ifndef ROTCLUS_BENCH_HPP
#define ROTCLUS_BENCH_HPP

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rotclus/dataset.hpp"

namespace rotclus {

// Replaces measurements greater than 3x the median with the mean of the
// remaining ones, preserving order. Needs at least 3 measurements; the
// boundary (exactly 3x the median) is kept.
std::pair<std::vector<double>, int> outlier_filter(std::span<const double> timings);

struct LadderEntry {
    std::string label;
    long long records = 0;
    long long attributes = 0;
};

// Benchmark dataset sizes, strictly increasing in record count.
class DatasetLadder {
public:
    explicit DatasetLadder(std::vector<LadderEntry> entries);

    // s1..s15: 3,125 through 46,875 records in steps of 3,125, 4 attributes.
    static DatasetLadder table_default();

    // Comma-separated record counts, e.g. "3125,6250,9375".
    static DatasetLadder parse(const std::string& counts_csv, long long attributes);

    const std::vector<LadderEntry>& entries() const { return entries_; }

private:
    std::vector<LadderEntry> entries_;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct BenchRow {
    int experiment = 0;
    std::string label;
    long long records = 0;
    std::string scheme;
    std::string metric; // time_ms or iterations
    int repetitions = 0;
    int outliers = 0;
    double mean = 0.0;
    double stddev = 0.0;
    std::vector<double> raw; // unfiltered measurements, in order
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string summary; // human-readable lines, not persisted in the CSV
};

void write_report(const BenchReport& report, const std::filesystem::path& path);
BenchReport parse_report(const std::filesystem::path& path);

struct BenchOptions {
    int experiment = 1;
    int repetitions = 0; // 0 -> per-experiment default
    int warmup = 3;      // unmeasured repetitions before each timing loop
    Seed seed = 1;
    int m = 100;
    Eigen::Index k = 7;
    long long n = 0;          // 0 -> per-experiment default
    long long attributes = 0; // 0 -> per-experiment default
    DatasetLadder ladder = DatasetLadder::table_default();
};

// Experiments: 1 transform time over the ladder, 2 repeated-measurement
// filtering, 3 RBT vs MRBT overhead, 4 large synthetic dataset, 5 client
// cost of a further release, 6/7 centroid initialization (iterations /
// time), 10 warm-start versus cold clustering. All measurement loops are
// single-threaded.
BenchReport run_experiment(const BenchOptions& opts);

} // namespace rotclus

#endif
