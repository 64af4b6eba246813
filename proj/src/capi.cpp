#include "rotclus.h"

#include <cstring>
#include <string>

#include "rotclus/bench.hpp"
#include "rotclus/clustering.hpp"
#include "rotclus/dataset.hpp"
#include "rotclus/error.hpp"
#include "rotclus/release_ledger.hpp"
#include "rotclus/transform.hpp"

struct rotclus_dataset {
    rotclus::Dataset impl;
};
struct rotclus_normalizer {
    rotclus::NormalizationSpec impl;
};
struct rotclus_transformed {
    rotclus::TransformedDataset impl;
};
struct rotclus_secrets {
    rotclus::ClientSecrets impl;
};
struct rotclus_ledger {
    rotclus::ReleaseLedger impl;
};
struct rotclus_clustering {
    rotclus::Clustering impl;
};

namespace {

thread_local std::string g_last_error;

rotclus_status status_from(const rotclus::Error& e) {
    switch (e.kind()) {
    case rotclus::ErrorKind::io:
        return ROTCLUS_ERROR_IO;
    case rotclus::ErrorKind::precondition:
        return ROTCLUS_ERROR_PRECONDITION;
    case rotclus::ErrorKind::policy:
        return ROTCLUS_REFUSED_POLICY;
    }
    return ROTCLUS_ERROR_INTERNAL;
}

template <typename Fn>
rotclus_status guarded(Fn&& fn) {
    try {
        fn();
        return ROTCLUS_OK;
    } catch (const rotclus::Error& e) {
        g_last_error = e.what();
        return status_from(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ROTCLUS_ERROR_INTERNAL;
    }
}

rotclus_status require(bool condition, const char* message) {
    if (condition)
        return ROTCLUS_OK;
    g_last_error = message;
    return ROTCLUS_ERROR_PRECONDITION;
}

} // namespace

extern "C" {

const char* rotclus_last_error(void) {
    return g_last_error.c_str();
}

/* ---- datasets ---------------------------------------------------------- */

rotclus_status rotclus_dataset_load_csv(const char* path, rotclus_dataset** out) {
    if (auto s = require(path && out, "path and out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] { *out = new rotclus_dataset{rotclus::load_csv(path)}; });
}

rotclus_status rotclus_dataset_save_csv(const rotclus_dataset* d, const char* path) {
    if (auto s = require(d && path, "dataset and path must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] { rotclus::save_csv(d->impl, path); });
}

rotclus_status rotclus_dataset_generate_gaussian(long long records, long long attributes,
                                                 double mean, double variance, uint64_t seed,
                                                 rotclus_dataset** out) {
    if (auto s = require(out != nullptr, "out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        *out = new rotclus_dataset{
            rotclus::gen_synthetic(records, attributes, mean, variance, seed)};
    });
}

rotclus_status rotclus_dataset_pad_to_even(const rotclus_dataset* d, rotclus_dataset** out) {
    if (auto s = require(d && out, "dataset and out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] { *out = new rotclus_dataset{rotclus::pad_to_even(d->impl)}; });
}

long long rotclus_dataset_attributes(const rotclus_dataset* d) {
    return d ? d->impl.attributes() : 0;
}

long long rotclus_dataset_records(const rotclus_dataset* d) {
    return d ? d->impl.records() : 0;
}

double rotclus_dataset_value(const rotclus_dataset* d, long long attribute, long long record) {
    return d->impl.values()(attribute, record);
}

void rotclus_dataset_free(rotclus_dataset* d) {
    delete d;
}

/* ---- normalization ------------------------------------------------------ */

rotclus_status rotclus_normalizer_fit(const rotclus_dataset* d, rotclus_norm_method method,
                                      rotclus_normalizer** out) {
    if (auto s = require(d && out, "dataset and out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        *out = new rotclus_normalizer{
            rotclus::fit_normalizer(d->impl, static_cast<rotclus::NormMethod>(method))};
    });
}

rotclus_status rotclus_normalizer_apply(const rotclus_normalizer* norm, const rotclus_dataset* d,
                                        rotclus_dataset** out) {
    if (auto s = require(norm && d && out, "normalizer, dataset and out must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    return guarded(
        [&] { *out = new rotclus_dataset{rotclus::apply_normalizer(norm->impl, d->impl)}; });
}

void rotclus_normalizer_free(rotclus_normalizer* norm) {
    delete norm;
}

/* ---- transformation ----------------------------------------------------- */

rotclus_status rotclus_transform_rbt(const rotclus_dataset* d, uint64_t seed,
                                     rotclus_transformed** out) {
    if (auto s = require(d && out, "dataset and out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] { *out = new rotclus_transformed{rotclus::rbt(d->impl, seed)}; });
}

rotclus_status rotclus_transform_mrbt(const rotclus_dataset* d, long long m, uint64_t master_seed,
                                      rotclus_transformed** out, rotclus_secrets** out_secrets) {
    if (auto s = require(d != nullptr, "dataset must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        const std::vector<rotclus::Seed> seeds =
            rotclus::derive_seeds(master_seed, m > 0 ? static_cast<std::size_t>(m) : 0);
        rotclus::MrbtResult result = rotclus::mrbt(d->impl, static_cast<int>(m), seeds);
        if (out)
            *out = new rotclus_transformed{std::move(result.transformed)};
        if (out_secrets)
            *out_secrets = new rotclus_secrets{std::move(result.secrets)};
    });
}

rotclus_status rotclus_transformed_save(const rotclus_transformed* t, const char* directory) {
    if (auto s = require(t && directory, "transform and directory must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    return guarded([&] { rotclus::save_transformed(t->impl, directory); });
}

rotclus_status rotclus_transformed_load(const char* directory, rotclus_transformed** out) {
    if (auto s = require(directory && out, "directory and out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] { *out = new rotclus_transformed{rotclus::load_transformed(directory)}; });
}

long long rotclus_transformed_block_count(const rotclus_transformed* t) {
    return t ? t->impl.block_count() : 0;
}

long long rotclus_transformed_dim(const rotclus_transformed* t) {
    return t ? t->impl.dim() : 0;
}

long long rotclus_transformed_block_records(const rotclus_transformed* t, long long block) {
    return t->impl.block_width(static_cast<int>(block));
}

void rotclus_transformed_free(rotclus_transformed* t) {
    delete t;
}

rotclus_status rotclus_secrets_save(const rotclus_secrets* s, const char* path) {
    if (auto st = require(s && path, "secrets and path must be non-NULL"); st != ROTCLUS_OK)
        return st;
    return guarded([&] { rotclus::save_secrets(s->impl, path); });
}

rotclus_status rotclus_secrets_load(const char* path, rotclus_secrets** out) {
    if (auto s = require(path && out, "path and out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] { *out = new rotclus_secrets{rotclus::load_secrets(path)}; });
}

long long rotclus_secrets_m(const rotclus_secrets* s) {
    return s ? s->impl.m() : 0;
}

void rotclus_secrets_free(rotclus_secrets* s) {
    delete s;
}

rotclus_status rotclus_refresh_parameters(const rotclus_dataset* d,
                                          const rotclus_secrets* old_secrets, uint64_t master_seed,
                                          rotclus_transformed** out, rotclus_secrets** out_secrets,
                                          rotclus_ledger** out_ledger) {
    if (auto s = require(d && old_secrets, "dataset and old secrets must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        rotclus::RefreshResult result =
            rotclus::refresh_parameters(d->impl, old_secrets->impl, master_seed);
        if (out)
            *out = new rotclus_transformed{std::move(result.transformed)};
        if (out_secrets)
            *out_secrets = new rotclus_secrets{std::move(result.secrets)};
        if (out_ledger)
            *out_ledger = new rotclus_ledger{std::move(result.ledger)};
    });
}

/* ---- release policy ----------------------------------------------------- */

rotclus_status rotclus_ledger_new(long long m, rotclus_ledger** out) {
    if (auto s = require(out != nullptr, "out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded(
        [&] { *out = new rotclus_ledger{rotclus::ReleaseLedger(static_cast<int>(m))}; });
}

rotclus_status rotclus_ledger_load(const char* path, rotclus_ledger** out) {
    if (auto s = require(path && out, "path and out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] { *out = new rotclus_ledger{rotclus::ReleaseLedger::load(path)}; });
}

rotclus_status rotclus_ledger_save(const rotclus_ledger* ledger, const char* path) {
    if (auto s = require(ledger && path, "ledger and path must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] { ledger->impl.save(path); });
}

long long rotclus_ledger_m(const rotclus_ledger* ledger) {
    return ledger ? ledger->impl.m() : 0;
}

long long rotclus_ledger_edge_count(const rotclus_ledger* ledger) {
    return ledger ? static_cast<long long>(ledger->impl.edges().size()) : 0;
}

long long rotclus_ledger_attacker_rank(const rotclus_ledger* ledger) {
    return ledger ? ledger->impl.attacker_rank() : 0;
}

void rotclus_ledger_free(rotclus_ledger* ledger) {
    delete ledger;
}

rotclus_status rotclus_release_request(const rotclus_secrets* secrets, rotclus_ledger* ledger,
                                       long long i, long long j, double* theta_out) {
    if (auto s = require(secrets && ledger && theta_out,
                         "secrets, ledger and theta_out must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    rotclus_status status = ROTCLUS_OK;
    rotclus_status guard = guarded([&] {
        rotclus::ReleaseOutcome outcome = rotclus::arbt_client_release(
            secrets->impl, static_cast<int>(i), static_cast<int>(j), ledger->impl);
        if (outcome.released) {
            *theta_out = outcome.theta_ij.degrees();
        } else {
            g_last_error = outcome.refusal_reason;
            status = ROTCLUS_REFUSED_POLICY;
        }
    });
    return guard != ROTCLUS_OK ? guard : status;
}

/* ---- unification -------------------------------------------------------- */

rotclus_status rotclus_unify(const rotclus_transformed* t, long long i, long long j,
                             double theta_ij, rotclus_dataset** merged_out) {
    if (auto s = require(t && merged_out, "transform and merged_out must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        rotclus::UnifiedPair pair = rotclus::server_unify(
            t->impl, static_cast<int>(i), static_cast<int>(j), rotclus::Angle(theta_ij));
        *merged_out = new rotclus_dataset{std::move(pair.merged)};
    });
}

/* ---- clustering --------------------------------------------------------- */

rotclus_status rotclus_kmeans(const rotclus_dataset* d, long long k, rotclus_kmeans_init init,
                              long long max_iterations, double epsilon, uint64_t rng_seed,
                              rotclus_clustering** out) {
    if (auto s = require(d && out, "dataset and out must be non-NULL"); s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        rotclus::KMeansConfig cfg;
        cfg.k = k;
        cfg.init = init == ROTCLUS_INIT_SEQUENTIAL ? rotclus::KMeansInit::sequential
                                                   : rotclus::KMeansInit::random;
        cfg.max_iterations = max_iterations;
        cfg.epsilon = epsilon;
        cfg.rng_seed = rng_seed;
        *out = new rotclus_clustering{rotclus::kmeans(d->impl, cfg)};
    });
}

rotclus_status rotclus_warm_start_merge(const rotclus_clustering* ci, const rotclus_clustering* cj,
                                        const rotclus_dataset* unified, rotclus_clustering** out) {
    if (auto s = require(ci && cj && unified && out,
                         "clusterings, unified dataset and out must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        *out = new rotclus_clustering{
            rotclus::warm_start_merge(ci->impl, cj->impl, unified->impl)};
    });
}

long long rotclus_clustering_k(const rotclus_clustering* c) {
    return c ? c->impl.k : 0;
}

long long rotclus_clustering_records(const rotclus_clustering* c) {
    return c ? c->impl.records() : 0;
}

long long rotclus_clustering_iterations(const rotclus_clustering* c) {
    return c ? c->impl.iterations_used : 0;
}

double rotclus_clustering_wcss(const rotclus_clustering* c) {
    return c ? c->impl.wcss : 0.0;
}

long long rotclus_clustering_label(const rotclus_clustering* c, long long record) {
    return c->impl.assignments[static_cast<std::size_t>(record)] + 1;
}

rotclus_status rotclus_clustering_save_csv(const rotclus_clustering* c,
                                           const char* assignments_path,
                                           const char* centroids_path) {
    if (auto s = require(c && assignments_path && centroids_path,
                         "clustering and both paths must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    return guarded([&] { rotclus::save_clustering_csv(c->impl, assignments_path, centroids_path); });
}

rotclus_status rotclus_clustering_load_csv(const char* assignments_path,
                                           const char* centroids_path, rotclus_clustering** out) {
    if (auto s = require(assignments_path && centroids_path && out,
                         "both paths and out must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        *out = new rotclus_clustering{
            rotclus::load_clustering_csv(assignments_path, centroids_path)};
    });
}

void rotclus_clustering_free(rotclus_clustering* c) {
    delete c;
}

/* ---- benchmarks --------------------------------------------------------- */

rotclus_status rotclus_outlier_filter(const double* values, long long count, double* filtered_out,
                                      long long* outliers_out) {
    if (auto s = require(values && filtered_out && outliers_out,
                         "values, filtered_out and outliers_out must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        auto [filtered, outliers] = rotclus::outlier_filter(
            std::span<const double>(values, static_cast<std::size_t>(count)));
        std::memcpy(filtered_out, filtered.data(), filtered.size() * sizeof(double));
        *outliers_out = outliers;
    });
}

rotclus_status rotclus_bench_run(const rotclus_bench_options* options, const char* report_path,
                                 char* summary_out, long long summary_len) {
    if (auto s = require(options && report_path, "options and report_path must be non-NULL");
        s != ROTCLUS_OK)
        return s;
    return guarded([&] {
        rotclus::BenchOptions opts;
        opts.experiment = options->experiment;
        opts.repetitions = options->repetitions;
        opts.seed = options->seed;
        if (options->m > 0)
            opts.m = static_cast<int>(options->m);
        if (options->k > 0)
            opts.k = options->k;
        opts.n = options->n;
        opts.attributes = options->attributes;
        if (options->ladder && options->ladder[0] != '\0')
            opts.ladder = rotclus::DatasetLadder::parse(options->ladder,
                                                        options->attributes > 0 ? options->attributes : 4);
        rotclus::BenchReport report = rotclus::run_experiment(opts);
        rotclus::write_report(report, report_path);
        if (summary_out && summary_len > 0) {
            const std::size_t n = std::min(report.summary.size(),
                                           static_cast<std::size_t>(summary_len - 1));
            std::memcpy(summary_out, report.summary.data(), n);
            summary_out[n] = '\0';
        }
    });
}

} // extern "C"
