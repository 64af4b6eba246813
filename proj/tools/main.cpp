// Command-line front end. Talks to the library exclusively through the C
// API in rotclus.h.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <rotclus.h>

namespace {

template <auto FreeFn>
struct FnDeleter {
    template <typename T>
    void operator()(T* p) const {
        FreeFn(p);
    }
};

using DatasetPtr = std::unique_ptr<rotclus_dataset, FnDeleter<rotclus_dataset_free>>;
using NormalizerPtr = std::unique_ptr<rotclus_normalizer, FnDeleter<rotclus_normalizer_free>>;
using TransformedPtr = std::unique_ptr<rotclus_transformed, FnDeleter<rotclus_transformed_free>>;
using SecretsPtr = std::unique_ptr<rotclus_secrets, FnDeleter<rotclus_secrets_free>>;
using LedgerPtr = std::unique_ptr<rotclus_ledger, FnDeleter<rotclus_ledger_free>>;
using ClusteringPtr = std::unique_ptr<rotclus_clustering, FnDeleter<rotclus_clustering_free>>;

int exit_code_for(rotclus_status status) {
    switch (status) {
    case ROTCLUS_OK:
        return 0;
    case ROTCLUS_ERROR_IO:
        return 1;
    case ROTCLUS_ERROR_PRECONDITION:
        return 2;
    case ROTCLUS_REFUSED_POLICY:
        return 3;
    default:
        return 1;
    }
}

int fail(rotclus_status status) {
    std::fprintf(stderr, "error: %s\n", rotclus_last_error());
    return exit_code_for(status);
}

#define CHECK_CALL(call)                                                                           \
    do {                                                                                           \
        rotclus_status status_ = (call);                                                           \
        if (status_ != ROTCLUS_OK)                                                                 \
            return fail(status_);                                                                  \
    } while (0)

bool path_inside(const std::filesystem::path& candidate, const std::filesystem::path& directory) {
    const auto c = std::filesystem::weakly_canonical(std::filesystem::absolute(candidate));
    const auto d = std::filesystem::weakly_canonical(std::filesystem::absolute(directory));
    auto it = d.begin();
    auto cit = c.begin();
    for (; it != d.end() && cit != c.end(); ++it, ++cit)
        if (*it != *cit)
            return false;
    return it == d.end();
}

struct GenArgs {
    long long n = 0;
    long long a = 0;
    double mu = 100.0;
    double var = 100.0;
    std::uint64_t seed = 1;
    std::string out;
};

int run_gen(const GenArgs& args) {
    rotclus_dataset* raw = nullptr;
    CHECK_CALL(rotclus_dataset_generate_gaussian(args.n, args.a, args.mu, args.var, args.seed, &raw));
    DatasetPtr d(raw);
    CHECK_CALL(rotclus_dataset_save_csv(d.get(), args.out.c_str()));
    std::printf("wrote %lld records x %lld attributes to %s\n", args.n, args.a, args.out.c_str());
    return 0;
}

struct NormalizeArgs {
    std::string in;
    std::string out;
    rotclus_norm_method method = ROTCLUS_NORM_MIN_MAX;
};

int run_normalize(const NormalizeArgs& args) {
    rotclus_dataset* raw = nullptr;
    CHECK_CALL(rotclus_dataset_load_csv(args.in.c_str(), &raw));
    DatasetPtr d(raw);

    rotclus_normalizer* norm_raw = nullptr;
    CHECK_CALL(rotclus_normalizer_fit(d.get(), args.method, &norm_raw));
    NormalizerPtr norm(norm_raw);

    rotclus_dataset* out_raw = nullptr;
    CHECK_CALL(rotclus_normalizer_apply(norm.get(), d.get(), &out_raw));
    DatasetPtr normalized(out_raw);
    CHECK_CALL(rotclus_dataset_save_csv(normalized.get(), args.out.c_str()));
    return 0;
}

struct TransformArgs {
    std::string scheme;
    std::string in;
    std::string out_dir;
    std::uint64_t seed = 1;
    long long m = 1;
    std::string secrets;
    std::string ledger;
};

int run_transform(const TransformArgs& args) {
    rotclus_dataset* loaded = nullptr;
    CHECK_CALL(rotclus_dataset_load_csv(args.in.c_str(), &loaded));
    DatasetPtr input(loaded);

    rotclus_dataset* padded_raw = nullptr;
    CHECK_CALL(rotclus_dataset_pad_to_even(input.get(), &padded_raw));
    DatasetPtr padded(padded_raw);

    TransformedPtr transformed;
    SecretsPtr secrets;
    if (args.scheme == "rbt") {
        rotclus_transformed* t = nullptr;
        CHECK_CALL(rotclus_transform_rbt(padded.get(), args.seed, &t));
        transformed.reset(t);
    } else {
        // mrbt and arbt share the transformation phase.
        if (args.secrets.empty()) {
            std::fprintf(stderr, "error: --secrets is required for scheme %s\n", args.scheme.c_str());
            return 1;
        }
        if (path_inside(args.secrets, args.out_dir)) {
            std::fprintf(stderr,
                         "error: the secrets file must not live inside the released output "
                         "directory %s\n",
                         args.out_dir.c_str());
            return 1;
        }
        rotclus_transformed* t = nullptr;
        rotclus_secrets* s = nullptr;
        CHECK_CALL(rotclus_transform_mrbt(padded.get(), args.m, args.seed, &t, &s));
        transformed.reset(t);
        secrets.reset(s);
    }

    CHECK_CALL(rotclus_transformed_save(transformed.get(), args.out_dir.c_str()));
    if (secrets)
        CHECK_CALL(rotclus_secrets_save(secrets.get(), args.secrets.c_str()));
    if (!args.ledger.empty()) {
        rotclus_ledger* l = nullptr;
        CHECK_CALL(rotclus_ledger_new(args.scheme == "rbt" ? 1 : args.m, &l));
        LedgerPtr ledger(l);
        CHECK_CALL(rotclus_ledger_save(ledger.get(), args.ledger.c_str()));
    }
    std::printf("wrote %lld block(s) to %s\n",
                rotclus_transformed_block_count(transformed.get()), args.out_dir.c_str());
    return 0;
}

struct ReleaseArgs {
    std::string secrets;
    std::string ledger;
    long long i = 0;
    long long j = 0;
};

int run_release(const ReleaseArgs& args) {
    rotclus_secrets* s = nullptr;
    CHECK_CALL(rotclus_secrets_load(args.secrets.c_str(), &s));
    SecretsPtr secrets(s);

    LedgerPtr ledger;
    if (std::filesystem::exists(args.ledger)) {
        rotclus_ledger* l = nullptr;
        CHECK_CALL(rotclus_ledger_load(args.ledger.c_str(), &l));
        ledger.reset(l);
    } else {
        rotclus_ledger* l = nullptr;
        CHECK_CALL(rotclus_ledger_new(rotclus_secrets_m(secrets.get()), &l));
        ledger.reset(l);
    }

    double theta = 0.0;
    rotclus_status status =
        rotclus_release_request(secrets.get(), ledger.get(), args.i, args.j, &theta);
    if (status == ROTCLUS_REFUSED_POLICY) {
        std::fprintf(stderr, "refused: %s\n", rotclus_last_error());
        return 3;
    }
    if (status != ROTCLUS_OK)
        return fail(status);

    CHECK_CALL(rotclus_ledger_save(ledger.get(), args.ledger.c_str()));
    std::printf("%.17g\n", theta);
    return 0;
}

struct ClusterOpts {
    long long k = 7;
    std::string init = "random";
    std::uint64_t rng_seed = 1;
    double epsilon = 0.0;
    long long max_iter = 100;
};

void add_cluster_opts(CLI::App* cmd, ClusterOpts& opts) {
    cmd->add_option("--k", opts.k, "number of clusters");
    cmd->add_option("--init", opts.init, "initial centroid selection")
        ->check(CLI::IsMember({"random", "sequential"}));
    cmd->add_option("--rng-seed", opts.rng_seed, "seed for random initialization");
    cmd->add_option("--epsilon", opts.epsilon,
                    "fraction of records allowed to move at termination");
    cmd->add_option("--max-iter", opts.max_iter, "iteration cap");
}

rotclus_kmeans_init init_from(const std::string& name) {
    return name == "sequential" ? ROTCLUS_INIT_SEQUENTIAL : ROTCLUS_INIT_RANDOM;
}

int cluster_and_report(const rotclus_dataset* data, const ClusterOpts& opts,
                       const rotclus_clustering* warm_i, const rotclus_clustering* warm_j,
                       const std::string& out_clusters, const std::string& out_centroids) {
    using clock = std::chrono::steady_clock;
    ClusteringPtr clustering;
    const auto t0 = clock::now();
    if (warm_i && warm_j) {
        rotclus_clustering* c = nullptr;
        CHECK_CALL(rotclus_warm_start_merge(warm_i, warm_j, data, &c));
        clustering.reset(c);
    } else {
        rotclus_clustering* c = nullptr;
        CHECK_CALL(rotclus_kmeans(data, opts.k, init_from(opts.init), opts.max_iter, opts.epsilon,
                                  opts.rng_seed, &c));
        clustering.reset(c);
    }
    const auto t1 = clock::now();

    CHECK_CALL(rotclus_clustering_save_csv(clustering.get(), out_clusters.c_str(),
                                           out_centroids.c_str()));
    std::printf("iterations=%lld wcss=%.6f time_ms=%.3f\n",
                rotclus_clustering_iterations(clustering.get()),
                rotclus_clustering_wcss(clustering.get()),
                std::chrono::duration<double, std::milli>(t1 - t0).count());
    return 0;
}

struct UnifyArgs {
    std::string blocks_dir;
    long long i = 0;
    long long j = 0;
    double theta = 0.0;
    std::string out_unified;
    std::string out_clusters;
    std::string out_centroids;
    std::string warm_i_assignments, warm_i_centroids;
    std::string warm_j_assignments, warm_j_centroids;
    ClusterOpts cluster;
};

int run_unify(const UnifyArgs& args) {
    rotclus_transformed* t = nullptr;
    CHECK_CALL(rotclus_transformed_load(args.blocks_dir.c_str(), &t));
    TransformedPtr transformed(t);

    rotclus_dataset* merged_raw = nullptr;
    CHECK_CALL(rotclus_unify(transformed.get(), args.i, args.j, args.theta, &merged_raw));
    DatasetPtr merged(merged_raw);
    CHECK_CALL(rotclus_dataset_save_csv(merged.get(), args.out_unified.c_str()));

    ClusteringPtr warm_i, warm_j;
    const bool warm = !args.warm_i_assignments.empty();
    if (warm) {
        rotclus_clustering* ci = nullptr;
        CHECK_CALL(rotclus_clustering_load_csv(args.warm_i_assignments.c_str(),
                                               args.warm_i_centroids.c_str(), &ci));
        warm_i.reset(ci);
        rotclus_clustering* cj = nullptr;
        CHECK_CALL(rotclus_clustering_load_csv(args.warm_j_assignments.c_str(),
                                               args.warm_j_centroids.c_str(), &cj));
        warm_j.reset(cj);
    }
    return cluster_and_report(merged.get(), args.cluster, warm_i.get(), warm_j.get(),
                              args.out_clusters, args.out_centroids);
}

struct ClusterArgs {
    std::string in;
    std::string out_clusters;
    std::string out_centroids;
    ClusterOpts cluster;
};

int run_cluster(const ClusterArgs& args) {
    rotclus_dataset* raw = nullptr;
    CHECK_CALL(rotclus_dataset_load_csv(args.in.c_str(), &raw));
    DatasetPtr d(raw);
    return cluster_and_report(d.get(), args.cluster, nullptr, nullptr, args.out_clusters,
                              args.out_centroids);
}

struct BenchArgs {
    int experiment = 1;
    int reps = 0;
    std::uint64_t seed = 1;
    long long m = 100;
    long long k = 7;
    long long n = 0;
    long long a = 0;
    std::string ladder;
    std::string out;
};

int run_bench(const BenchArgs& args) {
    rotclus_bench_options opts{};
    opts.experiment = args.experiment;
    opts.repetitions = args.reps;
    opts.seed = args.seed;
    opts.m = args.m;
    opts.k = args.k;
    opts.n = args.n;
    opts.attributes = args.a;
    opts.ladder = args.ladder.empty() ? nullptr : args.ladder.c_str();

    char summary[512] = {0};
    CHECK_CALL(rotclus_bench_run(&opts, args.out.c_str(), summary, sizeof(summary)));
    std::printf("%s\n", summary);
    std::printf("report written to %s\n", args.out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"privacy-preserving data clustering via rotation transformations"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a seeded Gaussian dataset CSV");
    gen->add_option("--n", gen_args.n, "record count")->required();
    gen->add_option("--a", gen_args.a, "attribute count")->required();
    gen->add_option("--mu", gen_args.mu, "mean");
    gen->add_option("--var", gen_args.var, "variance")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("--out", gen_args.out, "output CSV path")->required();

    NormalizeArgs norm_args;
    std::string method_name = "minmax";
    CLI::App* normalize = app.add_subcommand("normalize", "normalize a dataset per attribute");
    normalize->add_option("--in", norm_args.in, "input CSV")->required();
    normalize->add_option("--out", norm_args.out, "output CSV")->required();
    normalize->add_option("--method", method_name, "minmax, zscore, or unarymax")
        ->check(CLI::IsMember({"minmax", "zscore", "unarymax"}));

    TransformArgs transform_args;
    CLI::App* transform = app.add_subcommand("transform", "rotate a dataset (rbt, mrbt, or arbt)");
    transform->add_option("--scheme", transform_args.scheme, "rbt, mrbt, or arbt")
        ->required()
        ->check(CLI::IsMember({"rbt", "mrbt", "arbt"}));
    transform->add_option("--in", transform_args.in, "input CSV")->required();
    transform->add_option("--out", transform_args.out_dir, "output directory for blocks + manifest")
        ->required();
    transform->add_option("--seed", transform_args.seed, "master seed");
    transform->add_option("--m", transform_args.m, "subset count for mrbt/arbt");
    transform->add_option("--secrets", transform_args.secrets,
                          "client-side secrets file (kept outside --out)");
    transform->add_option("--ledger", transform_args.ledger,
                          "optionally (re)initialize an empty release ledger here");

    ReleaseArgs release_args;
    CLI::App* release = app.add_subcommand("release", "request a unification angle");
    release->add_option("--secrets", release_args.secrets, "client secrets file")->required();
    release->add_option("--ledger", release_args.ledger, "ledger file (created when missing)")
        ->required();
    release->add_option("--i", release_args.i, "source subset index (1-based)")->required();
    release->add_option("--j", release_args.j, "target subset index (1-based)")->required();

    UnifyArgs unify_args;
    CLI::App* unify = app.add_subcommand("unify", "rotate subset i into subset j's frame and cluster");
    unify->add_option("--blocks", unify_args.blocks_dir, "transformed blocks directory")->required();
    unify->add_option("--i", unify_args.i, "source subset index")->required();
    unify->add_option("--j", unify_args.j, "target subset index")->required();
    unify->add_option("--theta", unify_args.theta, "released unification angle in degrees")
        ->required();
    unify->add_option("--out-unified", unify_args.out_unified, "unified dataset CSV")->required();
    unify->add_option("--out-clusters", unify_args.out_clusters, "assignments CSV")->required();
    unify->add_option("--out-centroids", unify_args.out_centroids, "centroids CSV")->required();
    auto* wia = unify->add_option("--warm-i-assignments", unify_args.warm_i_assignments,
                                  "existing clustering of subset i (assignments CSV)");
    auto* wic = unify->add_option("--warm-i-centroids", unify_args.warm_i_centroids,
                                  "existing clustering of subset i (centroids CSV)");
    auto* wja = unify->add_option("--warm-j-assignments", unify_args.warm_j_assignments,
                                  "existing clustering of subset j (assignments CSV)");
    auto* wjc = unify->add_option("--warm-j-centroids", unify_args.warm_j_centroids,
                                  "existing clustering of subset j (centroids CSV)");
    wia->needs(wic)->needs(wja)->needs(wjc);
    wic->needs(wia);
    wja->needs(wia);
    wjc->needs(wia);
    add_cluster_opts(unify, unify_args.cluster);

    ClusterArgs cluster_args;
    CLI::App* cluster = app.add_subcommand("cluster", "k-means over a dataset CSV");
    cluster->add_option("--in", cluster_args.in, "input CSV")->required();
    cluster->add_option("--out-clusters", cluster_args.out_clusters, "assignments CSV")->required();
    cluster->add_option("--out-centroids", cluster_args.out_centroids, "centroids CSV")->required();
    add_cluster_opts(cluster, cluster_args.cluster);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "run a timing experiment and write a report CSV");
    bench->add_option("--experiment", bench_args.experiment, "experiment id (1-7 or 10)")
        ->required();
    bench->add_option("--reps", bench_args.reps, "repetitions (0 = experiment default)");
    bench->add_option("--seed", bench_args.seed, "seed for data and rotations");
    bench->add_option("--m", bench_args.m, "subset count for mrbt experiments");
    bench->add_option("--k", bench_args.k, "clusters for clustering experiments");
    bench->add_option("--n", bench_args.n, "record count override");
    bench->add_option("--a", bench_args.a, "attribute count override");
    bench->add_option("--ladder", bench_args.ladder, "comma-separated record counts");
    bench->add_option("--out", bench_args.out, "report CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*gen)
        return run_gen(gen_args);
    if (*normalize) {
        norm_args.method = method_name == "zscore"     ? ROTCLUS_NORM_Z_SCORE
                           : method_name == "unarymax" ? ROTCLUS_NORM_UNARY_MAX
                                                       : ROTCLUS_NORM_MIN_MAX;
        return run_normalize(norm_args);
    }
    if (*transform)
        return run_transform(transform_args);
    if (*release) {
        if (release_args.i == release_args.j) {
            std::fprintf(stderr, "error: subset indices i and j must differ\n");
            return 1;
        }
        return run_release(release_args);
    }
    if (*unify)
        return run_unify(unify_args);
    if (*cluster)
        return run_cluster(cluster_args);
    if (*bench)
        return run_bench(bench_args);
    return 1;
}
