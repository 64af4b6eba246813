#include "rotclus/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rotclus/clustering.hpp"
#include "rotclus/error.hpp"
#include "rotclus/transform.hpp"

namespace rotclus {

std::pair<std::vector<double>, int> outlier_filter(std::span<const double> timings) {
    if (timings.size() < 3)
        throw Error(ErrorKind::precondition,
                    "outlier filtering needs at least 3 measurements, got " +
                        std::to_string(timings.size()));

    std::vector<double> sorted(timings.begin(), timings.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    const double median = (sorted.size() % 2 == 1)
                              ? sorted[mid]
                              : 0.5 * (sorted[mid - 1] + sorted[mid]);
    const double threshold = 3.0 * median;

    double kept_sum = 0.0;
    std::size_t kept = 0;
    for (double t : timings) {
        if (t <= threshold) {
            kept_sum += t;
            ++kept;
        }
    }
    const double replacement = kept_sum / static_cast<double>(kept);

    std::vector<double> filtered(timings.begin(), timings.end());
    int outliers = 0;
    for (double& t : filtered) {
        if (t > threshold) {
            t = replacement;
            ++outliers;
        }
    }
    return {std::move(filtered), outliers};
}

DatasetLadder::DatasetLadder(std::vector<LadderEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty())
        throw Error(ErrorKind::precondition, "ladder must have at least one entry");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].records < 1 || entries_[i].attributes < 1)
            throw Error(ErrorKind::precondition, "ladder entries need positive shapes");
        if (i > 0 && entries_[i].records <= entries_[i - 1].records)
            throw Error(ErrorKind::precondition, "ladder record counts must be strictly increasing");
    }
}

DatasetLadder DatasetLadder::table_default() {
    std::vector<LadderEntry> entries;
    for (int i = 1; i <= 15; ++i)
        entries.push_back({"s" + std::to_string(i), 3125LL * i, 4});
    return DatasetLadder(std::move(entries));
}

DatasetLadder DatasetLadder::parse(const std::string& counts_csv, long long attributes) {
    std::vector<LadderEntry> entries;
    std::stringstream stream(counts_csv);
    std::string token;
    int index = 1;
    while (std::getline(stream, token, ',')) {
        long long records = 0;
        auto res = std::from_chars(token.data(), token.data() + token.size(), records);
        if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
            throw Error(ErrorKind::precondition, "ladder entry '" + token + "' is not an integer");
        entries.push_back({"s" + std::to_string(index++), records, attributes});
    }
    return DatasetLadder(std::move(entries));
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorKind::precondition, "linear fit needs two equal-length samples");
    const double n = static_cast<double>(x.size());
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

namespace {

double mean_of(std::span<const double> values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev_of(std::span<const double> values, double mean) {
    double acc = 0.0;
    for (double v : values)
        acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(values.size()));
}

template <typename Op>
std::vector<double> time_reps(int reps, int warmup, Op&& op) {
    using clock = std::chrono::steady_clock;
    for (int i = 0; i < warmup; ++i)
        op();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(reps));
    for (int i = 0; i < reps; ++i) {
        const auto t0 = clock::now();
        op();
        const auto t1 = clock::now();
        out.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return out;
}

BenchRow time_row(int experiment, std::string label, long long records, std::string scheme,
                  std::vector<double> raw) {
    auto [filtered, outliers] = outlier_filter(raw);
    BenchRow row;
    row.experiment = experiment;
    row.label = std::move(label);
    row.records = records;
    row.scheme = std::move(scheme);
    row.metric = "time_ms";
    row.repetitions = static_cast<int>(raw.size());
    row.outliers = outliers;
    row.mean = mean_of(filtered);
    row.stddev = stddev_of(filtered, row.mean);
    row.raw = std::move(raw);
    return row;
}

BenchRow count_row(int experiment, std::string label, long long records, std::string scheme,
                   std::string metric, std::vector<double> raw) {
    BenchRow row;
    row.experiment = experiment;
    row.label = std::move(label);
    row.records = records;
    row.scheme = std::move(scheme);
    row.metric = std::move(metric);
    row.repetitions = static_cast<int>(raw.size());
    row.outliers = 0; // counts are not noise-filtered
    row.mean = mean_of(raw);
    row.stddev = stddev_of(raw, row.mean);
    row.raw = std::move(raw);
    return row;
}

int default_reps(int experiment) {
    switch (experiment) {
    case 2:
        return 500;
    case 4:
        return 25;
    case 6:
    case 7:
        return 3;
    case 10:
        return 10;
    default:
        return 50;
    }
}

std::string format_pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", fraction * 100.0);
    return buf;
}

// Keeps the optimizer from dropping a timed transform.
volatile double g_sink = 0.0;

BenchReport experiment_transform_ladder(const BenchOptions& opts, int reps) {
    const std::size_t sizes = opts.ladder.entries().size();
    std::vector<Dataset> datasets;
    std::vector<TransformedDataset> outputs(sizes);
    datasets.reserve(sizes);
    for (std::size_t i = 0; i < sizes; ++i) {
        const LadderEntry& entry = opts.ladder.entries()[i];
        datasets.push_back(pad_to_even(gen_synthetic(entry.records, entry.attributes, 100.0,
                                                     100.0, opts.seed + static_cast<Seed>(i))));
    }

    // Sizes are visited round-robin so a burst of machine noise lands on a
    // few repetitions of many sizes instead of every repetition of one.
    using clock = std::chrono::steady_clock;
    std::vector<std::vector<double>> raw(sizes);
    for (int rep = -opts.warmup; rep < reps; ++rep) {
        for (std::size_t i = 0; i < sizes; ++i) {
            const Seed rotation_seed = opts.seed + 1000 + static_cast<Seed>(i);
            const auto t0 = clock::now();
            rbt_into(datasets[i], rotation_seed, outputs[i]);
            const auto t1 = clock::now();
            g_sink = outputs[i].values()(0, 0);
            if (rep >= 0)
                raw[i].push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
    }

    BenchReport report;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < sizes; ++i) {
        const LadderEntry& entry = opts.ladder.entries()[i];
        BenchRow row = time_row(1, entry.label, entry.records, "rbt", std::move(raw[i]));
        xs.push_back(static_cast<double>(entry.records));
        ys.push_back(row.mean);
        report.rows.push_back(std::move(row));
    }
    const LinearFit fit = fit_line(xs, ys);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "linear fit of mean time vs records: slope=%.6g ms/record, intercept=%.6g ms, "
                  "R^2=%.4f",
                  fit.slope, fit.intercept, fit.r_squared);
    report.summary = buf;
    return report;
}

BenchReport experiment_repeat_filter(const BenchOptions& opts, int reps) {
    const long long n = opts.n > 0 ? opts.n : 31250;
    const long long a = opts.attributes > 0 ? opts.attributes : 4;
    Dataset d = pad_to_even(gen_synthetic(n, a, 100.0, 100.0, opts.seed));

    int rep_counter = 0;
    MrbtResult scratch;
    std::vector<double> raw = time_reps(reps, opts.warmup, [&] {
        const std::vector<Seed> seeds =
            derive_seeds(opts.seed + 7919ULL * static_cast<Seed>(++rep_counter), static_cast<std::size_t>(opts.m));
        mrbt_into(d, opts.m, seeds, scratch);
        g_sink = scratch.transformed.values()(0, 0);
    });
    BenchRow row = time_row(2, n == 31250 ? "s10" : "custom", n, "mrbt", std::move(raw));
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%d of %d measurements exceeded 3x the median and were replaced; filtered mean "
                  "%.3f ms",
                  row.outliers, row.repetitions, row.mean);
    BenchReport report;
    report.summary = buf;
    report.rows.push_back(std::move(row));
    return report;
}

BenchReport experiment_scheme_overhead(const BenchOptions& opts, int reps, int experiment,
                                       long long default_n, long long default_a) {
    const long long n = opts.n > 0 ? opts.n : default_n;
    const long long a = opts.attributes > 0 ? opts.attributes : default_a;
    Dataset d = pad_to_even(gen_synthetic(n, a, 100.0, 100.0, opts.seed));
    const std::string label = experiment == 4 ? "synthetic" : (n == 31250 ? "s10" : "custom");

    // Schemes alternate within each repetition and write into one shared
    // buffer, so machine noise and page-mapping luck hit both alike and
    // the loop allocates nothing.
    const Seed rbt_seed = opts.seed + 101;
    MrbtResult scratch;
    std::vector<double> rbt_raw, mrbt_raw;
    using clock = std::chrono::steady_clock;
    int rep_counter = 0;
    for (int rep = -opts.warmup; rep < reps; ++rep) {
        const auto t0 = clock::now();
        rbt_into(d, rbt_seed, scratch.transformed);
        const auto t1 = clock::now();
        g_sink = scratch.transformed.values()(0, 0);

        const auto t2 = clock::now();
        const std::vector<Seed> seeds =
            derive_seeds(opts.seed + 7919ULL * static_cast<Seed>(++rep_counter),
                         static_cast<std::size_t>(opts.m));
        mrbt_into(d, opts.m, seeds, scratch);
        const auto t3 = clock::now();
        g_sink = scratch.transformed.values()(0, 0);

        if (rep >= 0) {
            rbt_raw.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            mrbt_raw.push_back(std::chrono::duration<double, std::milli>(t3 - t2).count());
        }
    }

    BenchReport report;
    report.rows.push_back(time_row(experiment, label, n, "rbt", std::move(rbt_raw)));
    report.rows.push_back(time_row(experiment, label, n, "mrbt", std::move(mrbt_raw)));

    const double rbt_mean = report.rows[0].mean;
    const double mrbt_mean = report.rows[1].mean;
    std::string summary = "rbt mean " + std::to_string(rbt_mean) + " ms, mrbt(m=" +
                          std::to_string(opts.m) + ") mean " + std::to_string(mrbt_mean) +
                          " ms, overhead " + format_pct((mrbt_mean - rbt_mean) / rbt_mean);
    if (experiment == 4) {
        const double mean = d.values().mean();
        const double var = (d.values().array() - mean).square().mean();
        char buf[96];
        std::snprintf(buf, sizeof(buf), "; sample mean %.3f, sample variance %.3f", mean, var);
        summary += buf;
    }
    report.summary = std::move(summary);
    return report;
}

BenchReport experiment_release_cost(const BenchOptions& opts, int reps) {
    const long long n = opts.n > 0 ? opts.n : 31250;
    const long long a = opts.attributes > 0 ? opts.attributes : 4;
    Dataset d = pad_to_even(gen_synthetic(n, a, 100.0, 100.0, opts.seed));

    const Seed rbt_seed = opts.seed + 101;
    const std::vector<Seed> seeds = derive_seeds(opts.seed + 211, 2);

    // The further-release step re-rotates one of the two subsets.
    MrbtResult split = mrbt(d, 2, seeds);
    ReleaseLedger ledger(2);
    ReleaseOutcome release = arbt_client_release(split.secrets, 1, 2, ledger);

    MrbtResult scratch;
    Eigen::MatrixXd rotated;
    std::vector<double> rbt_raw, mrbt_raw, step3_raw;
    using clock = std::chrono::steady_clock;
    for (int rep = -opts.warmup; rep < reps; ++rep) {
        const auto t0 = clock::now();
        rbt_into(d, rbt_seed, scratch.transformed);
        const auto t1 = clock::now();
        g_sink = scratch.transformed.values()(0, 0);

        const auto t2 = clock::now();
        mrbt_into(d, 2, seeds, scratch);
        const auto t3 = clock::now();
        g_sink = scratch.transformed.values()(0, 0);

        const auto t4 = clock::now();
        rotate_block_into(split.transformed, 1, release.theta_ij, rotated);
        const auto t5 = clock::now();
        g_sink = rotated(0, 0);

        if (rep >= 0) {
            rbt_raw.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            mrbt_raw.push_back(std::chrono::duration<double, std::milli>(t3 - t2).count());
            step3_raw.push_back(std::chrono::duration<double, std::milli>(t5 - t4).count());
        }
    }

    BenchReport report;
    const std::string label = n == 31250 ? "s10" : "custom";
    report.rows.push_back(time_row(5, label, n, "rbt", std::move(rbt_raw)));
    report.rows.push_back(time_row(5, label, n, "mrbt_m2", std::move(mrbt_raw)));
    report.rows.push_back(time_row(5, label, n, "arbt_release_step", std::move(step3_raw)));

    const double total = report.rows[1].mean + report.rows[2].mean;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "arbt client total (mrbt + release step) %.3f ms = %.2fx the rbt cost of %.3f ms",
                  total, total / report.rows[0].mean, report.rows[0].mean);
    report.summary = buf;
    return report;
}

BenchReport experiment_init_strategies(const BenchOptions& opts, int reps, bool measure_time) {
    const int experiment = measure_time ? 7 : 6;
    BenchReport report;
    double random_total = 0.0, sequential_total = 0.0;
    int index = 0;
    for (const LadderEntry& entry : opts.ladder.entries()) {
        std::vector<double> random_vals, sequential_vals;
        random_vals.reserve(static_cast<std::size_t>(reps));
        sequential_vals.reserve(static_cast<std::size_t>(reps));
        for (int rep = 0; rep < reps; ++rep) {
            const Seed instance_seed = opts.seed + 131 * static_cast<Seed>(index) + static_cast<Seed>(rep);
            BlobData blobs = gen_blobs(entry.records, entry.attributes,
                                       static_cast<int>(opts.k), 6.0, instance_seed);

            // Stored record order correlates with position in space, as in
            // data extracted sorted from a warehouse: records grouped by
            // their generating blob. Sequential init therefore starts
            // inside one region; random init spreads across all of them.
            Eigen::MatrixXd grouped(blobs.data.attributes(), blobs.data.records());
            Eigen::Index pos = 0;
            for (int cluster = 0; cluster < static_cast<int>(opts.k); ++cluster)
                for (Eigen::Index r = 0; r < blobs.data.records(); ++r)
                    if (blobs.labels[static_cast<std::size_t>(r)] == cluster)
                        grouped.col(pos++) = blobs.data.values().col(r);
            const Dataset data(std::move(grouped));

            for (KMeansInit init : {KMeansInit::random, KMeansInit::sequential}) {
                KMeansConfig cfg;
                cfg.k = opts.k;
                cfg.init = init;
                cfg.rng_seed = instance_seed + 17;
                using clock = std::chrono::steady_clock;
                const auto t0 = clock::now();
                Clustering c = kmeans(data, cfg);
                const auto t1 = clock::now();
                const double value =
                    measure_time ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                                 : static_cast<double>(c.iterations_used);
                (init == KMeansInit::random ? random_vals : sequential_vals).push_back(value);
            }
        }
        random_total += mean_of(random_vals);
        sequential_total += mean_of(sequential_vals);
        const std::string metric = measure_time ? "time_ms" : "iterations";
        if (measure_time) {
            report.rows.push_back(time_row(experiment, entry.label, entry.records, "kmeans_random",
                                           std::move(random_vals)));
            report.rows.push_back(time_row(experiment, entry.label, entry.records,
                                           "kmeans_sequential", std::move(sequential_vals)));
        } else {
            report.rows.push_back(count_row(experiment, entry.label, entry.records, "kmeans_random",
                                            metric, std::move(random_vals)));
            report.rows.push_back(count_row(experiment, entry.label, entry.records,
                                            "kmeans_sequential", metric, std::move(sequential_vals)));
        }
        ++index;
    }
    const double sets = static_cast<double>(opts.ladder.entries().size());
    char buf[160];
    std::snprintf(buf, sizeof(buf), "average %s per dataset: random %.4f, sequential %.4f",
                  measure_time ? "time (ms)" : "iterations", random_total / sets,
                  sequential_total / sets);
    report.summary = buf;
    return report;
}

BenchReport experiment_warm_start(const BenchOptions& opts, int reps) {
    const long long n = opts.n > 0 ? opts.n : 31250;
    const long long a = opts.attributes > 0 ? opts.attributes : 4;

    std::vector<double> cold_times, warm_times, cold_iters, warm_iters;
    int warm_wins = 0;
    std::vector<double> savings;
    for (int rep = 0; rep < reps; ++rep) {
        const Seed instance_seed = opts.seed + 977 * static_cast<Seed>(rep);
        BlobData blobs = gen_blobs(n, a, static_cast<int>(opts.k), 6.0, instance_seed);
        Dataset d = pad_to_even(blobs.data);

        const std::vector<Seed> seeds = derive_seeds(instance_seed + 31, 2);
        MrbtResult split = mrbt(d, 2, seeds);
        ReleaseLedger ledger(2);
        ReleaseOutcome release = arbt_client_release(split.secrets, 1, 2, ledger);
        UnifiedPair unified = server_unify(split.transformed, 1, 2, release.theta_ij);

        KMeansConfig cfg;
        cfg.k = opts.k;
        // Sequential init: the round-robin blob layout seeds every cluster,
        // so the per-subset clusterings are sound, which is the situation
        // the warm start is designed for. The cold baseline uses the same
        // config.
        cfg.init = KMeansInit::sequential;
        cfg.rng_seed = instance_seed + 53;

        // The two subsets arrive already clustered; that cost is not part
        // of either path.
        Dataset part_i(unified.merged.values().leftCols(unified.width_i));
        Dataset part_j(unified.merged.values().rightCols(unified.width_j));
        Clustering ci = kmeans(part_i, cfg);
        Clustering cj = kmeans(part_j, cfg);

        using clock = std::chrono::steady_clock;
        auto t0 = clock::now();
        Clustering warm = warm_start_merge(ci, cj, unified.merged);
        auto t1 = clock::now();
        Clustering cold = kmeans(unified.merged, cfg);
        auto t2 = clock::now();

        const double warm_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        const double cold_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
        warm_times.push_back(warm_ms);
        cold_times.push_back(cold_ms);
        warm_iters.push_back(static_cast<double>(warm.iterations_used));
        cold_iters.push_back(static_cast<double>(cold.iterations_used));
        if (warm.iterations_used <= cold.iterations_used)
            ++warm_wins;
        savings.push_back((cold_ms - warm_ms) / cold_ms);
    }

    BenchReport report;
    report.rows.push_back(time_row(10, "blobs", n, "cold", std::move(cold_times)));
    report.rows.push_back(time_row(10, "blobs", n, "warm", std::move(warm_times)));
    report.rows.push_back(count_row(10, "blobs", n, "cold", "iterations", std::move(cold_iters)));
    report.rows.push_back(count_row(10, "blobs", n, "warm", "iterations", std::move(warm_iters)));

    std::sort(savings.begin(), savings.end());
    const double median_saving = savings[savings.size() / 2];
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "warm start used <= cold iterations in %d/%d trials; median time saving %s",
                  warm_wins, reps, format_pct(median_saving).c_str());
    report.summary = buf;
    return report;
}

} // namespace

BenchReport run_experiment(const BenchOptions& opts) {
    const int reps = opts.repetitions > 0 ? opts.repetitions : default_reps(opts.experiment);
    switch (opts.experiment) {
    case 1:
        return experiment_transform_ladder(opts, reps);
    case 2:
        return experiment_repeat_filter(opts, reps);
    case 3:
        return experiment_scheme_overhead(opts, reps, 3, 31250, 4);
    case 4:
        return experiment_scheme_overhead(opts, reps, 4, 1000000, 10);
    case 5:
        return experiment_release_cost(opts, reps);
    case 6:
        return experiment_init_strategies(opts, reps, false);
    case 7:
        return experiment_init_strategies(opts, reps, true);
    case 10:
        return experiment_warm_start(opts, reps);
    default:
        throw Error(ErrorKind::precondition,
                    "unknown experiment " + std::to_string(opts.experiment) +
                        "; available: 1-7, 10");
    }
}

namespace {

void format_double(std::string& out, double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    out.append(buf, ptr);
}

} // namespace

void write_report(const BenchReport& report, const std::filesystem::path& path) {
    std::string out = "experiment,label,records,scheme,metric,repetitions,outliers,mean,stddev,raw\n";
    for (const BenchRow& row : report.rows) {
        out += std::to_string(row.experiment);
        out.push_back(',');
        out += row.label;
        out.push_back(',');
        out += std::to_string(row.records);
        out.push_back(',');
        out += row.scheme;
        out.push_back(',');
        out += row.metric;
        out.push_back(',');
        out += std::to_string(row.repetitions);
        out.push_back(',');
        out += std::to_string(row.outliers);
        out.push_back(',');
        format_double(out, row.mean);
        out.push_back(',');
        format_double(out, row.stddev);
        out.push_back(',');
        for (std::size_t i = 0; i < row.raw.size(); ++i) {
            if (i > 0)
                out.push_back(';');
            format_double(out, row.raw[i]);
        }
        out.push_back('\n');
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file)
        throw Error(ErrorKind::io, "failed writing " + path.string());
}

BenchReport parse_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for reading");

    std::string line;
    if (!std::getline(in, line) ||
        line != "experiment,label,records,scheme,metric,repetitions,outliers,mean,stddev,raw")
        throw Error(ErrorKind::io, path.string() + ": unrecognized report header");

    BenchReport report;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (int f = 0; f < 9; ++f) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos)
                throw Error(ErrorKind::io, path.string() + ": malformed report row '" + line + "'");
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        fields.push_back(line.substr(start)); // raw

        BenchRow row;
        try {
            row.experiment = std::stoi(fields[0]);
            row.label = fields[1];
            row.records = std::stoll(fields[2]);
            row.scheme = fields[3];
            row.metric = fields[4];
            row.repetitions = std::stoi(fields[5]);
            row.outliers = std::stoi(fields[6]);
            row.mean = std::stod(fields[7]);
            row.stddev = std::stod(fields[8]);
            std::stringstream raw_stream(fields[9]);
            std::string token;
            while (std::getline(raw_stream, token, ';'))
                row.raw.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw Error(ErrorKind::io, path.string() + ": malformed report row '" + line + "'");
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace rotclus
