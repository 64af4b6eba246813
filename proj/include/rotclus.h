/*
 * C interface to the rotclus privacy-preserving clustering library.
 *
 * All functions that can fail return a rotclus_status; rotclus_last_error()
 * describes the most recent failure on the calling thread. Objects returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function.
 */
#ifndef ROTCLUS_H
#define ROTCLUS_H

#include <stdint.h>

#if defined(_WIN32)
#define ROTCLUS_API __declspec(dllexport)
#else
#define ROTCLUS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rotclus_status {
    ROTCLUS_OK = 0,
    ROTCLUS_ERROR_IO = 1,           /* file access or parse failure */
    ROTCLUS_ERROR_PRECONDITION = 2, /* invalid argument or violated contract */
    ROTCLUS_REFUSED_POLICY = 3,     /* release denied by the safety policy */
    ROTCLUS_ERROR_INTERNAL = 4,
} rotclus_status;

typedef struct rotclus_dataset rotclus_dataset;
typedef struct rotclus_normalizer rotclus_normalizer;
typedef struct rotclus_transformed rotclus_transformed;
typedef struct rotclus_secrets rotclus_secrets;
typedef struct rotclus_ledger rotclus_ledger;
typedef struct rotclus_clustering rotclus_clustering;

/* Message for the last failing call on this thread. Never NULL. */
ROTCLUS_API const char* rotclus_last_error(void);

/* ---- datasets ---------------------------------------------------------- */

ROTCLUS_API rotclus_status rotclus_dataset_load_csv(const char* path, rotclus_dataset** out);
ROTCLUS_API rotclus_status rotclus_dataset_save_csv(const rotclus_dataset* d, const char* path);
ROTCLUS_API rotclus_status rotclus_dataset_generate_gaussian(long long records,
                                                             long long attributes, double mean,
                                                             double variance, uint64_t seed,
                                                             rotclus_dataset** out);
ROTCLUS_API rotclus_status rotclus_dataset_pad_to_even(const rotclus_dataset* d,
                                                       rotclus_dataset** out);
ROTCLUS_API long long rotclus_dataset_attributes(const rotclus_dataset* d);
ROTCLUS_API long long rotclus_dataset_records(const rotclus_dataset* d);
ROTCLUS_API double rotclus_dataset_value(const rotclus_dataset* d, long long attribute,
                                         long long record);
ROTCLUS_API void rotclus_dataset_free(rotclus_dataset* d);

/* ---- normalization ------------------------------------------------------ */

typedef enum rotclus_norm_method {
    ROTCLUS_NORM_MIN_MAX = 0,
    ROTCLUS_NORM_Z_SCORE = 1,
    ROTCLUS_NORM_UNARY_MAX = 2,
} rotclus_norm_method;

ROTCLUS_API rotclus_status rotclus_normalizer_fit(const rotclus_dataset* d,
                                                  rotclus_norm_method method,
                                                  rotclus_normalizer** out);
ROTCLUS_API rotclus_status rotclus_normalizer_apply(const rotclus_normalizer* norm,
                                                    const rotclus_dataset* d,
                                                    rotclus_dataset** out);
ROTCLUS_API void rotclus_normalizer_free(rotclus_normalizer* norm);

/* ---- transformation ----------------------------------------------------- */

/* Single-rotation transform. The attribute count must be even. */
ROTCLUS_API rotclus_status rotclus_transform_rbt(const rotclus_dataset* d, uint64_t seed,
                                                 rotclus_transformed** out);

/* Multi-rotation transform over m subsets; the per-subset seeds are derived
 * from master_seed. Both outputs are optional-free: pass NULL to skip. */
ROTCLUS_API rotclus_status rotclus_transform_mrbt(const rotclus_dataset* d, long long m,
                                                  uint64_t master_seed,
                                                  rotclus_transformed** out,
                                                  rotclus_secrets** out_secrets);

ROTCLUS_API rotclus_status rotclus_transformed_save(const rotclus_transformed* t,
                                                    const char* directory);
ROTCLUS_API rotclus_status rotclus_transformed_load(const char* directory,
                                                    rotclus_transformed** out);
ROTCLUS_API long long rotclus_transformed_block_count(const rotclus_transformed* t);
ROTCLUS_API long long rotclus_transformed_dim(const rotclus_transformed* t);
ROTCLUS_API long long rotclus_transformed_block_records(const rotclus_transformed* t,
                                                        long long block);
ROTCLUS_API void rotclus_transformed_free(rotclus_transformed* t);

ROTCLUS_API rotclus_status rotclus_secrets_save(const rotclus_secrets* s, const char* path);
ROTCLUS_API rotclus_status rotclus_secrets_load(const char* path, rotclus_secrets** out);
ROTCLUS_API long long rotclus_secrets_m(const rotclus_secrets* s);
ROTCLUS_API void rotclus_secrets_free(rotclus_secrets* s);

/* Re-keying: fresh seeds from master_seed, data re-transformed, and a reset
 * ledger returned alongside the new transform and secrets. */
ROTCLUS_API rotclus_status rotclus_refresh_parameters(const rotclus_dataset* d,
                                                      const rotclus_secrets* old_secrets,
                                                      uint64_t master_seed,
                                                      rotclus_transformed** out,
                                                      rotclus_secrets** out_secrets,
                                                      rotclus_ledger** out_ledger);

/* ---- release policy ----------------------------------------------------- */

ROTCLUS_API rotclus_status rotclus_ledger_new(long long m, rotclus_ledger** out);
ROTCLUS_API rotclus_status rotclus_ledger_load(const char* path, rotclus_ledger** out);
ROTCLUS_API rotclus_status rotclus_ledger_save(const rotclus_ledger* ledger, const char* path);
ROTCLUS_API long long rotclus_ledger_m(const rotclus_ledger* ledger);
ROTCLUS_API long long rotclus_ledger_edge_count(const rotclus_ledger* ledger);
ROTCLUS_API long long rotclus_ledger_attacker_rank(const rotclus_ledger* ledger);
ROTCLUS_API void rotclus_ledger_free(rotclus_ledger* ledger);

/* Requests the unification angle for subsets (i, j), 1-based. On ROTCLUS_OK
 * the angle is stored in *theta_out and the release is recorded in the
 * ledger. ROTCLUS_REFUSED_POLICY reports a denial; the reason is available
 * via rotclus_last_error(). */
ROTCLUS_API rotclus_status rotclus_release_request(const rotclus_secrets* secrets,
                                                   rotclus_ledger* ledger, long long i,
                                                   long long j, double* theta_out);

/* ---- unification -------------------------------------------------------- */

/* Rotates block i by theta_ij and concatenates it with block j (block i's
 * columns first). The result is an ordinary dataset. */
ROTCLUS_API rotclus_status rotclus_unify(const rotclus_transformed* t, long long i, long long j,
                                         double theta_ij, rotclus_dataset** merged_out);

/* ---- clustering --------------------------------------------------------- */

typedef enum rotclus_kmeans_init {
    ROTCLUS_INIT_RANDOM = 0,
    ROTCLUS_INIT_SEQUENTIAL = 1,
} rotclus_kmeans_init;

ROTCLUS_API rotclus_status rotclus_kmeans(const rotclus_dataset* d, long long k,
                                          rotclus_kmeans_init init, long long max_iterations,
                                          double epsilon, uint64_t rng_seed,
                                          rotclus_clustering** out);

/* ci covers the first ci-record columns of unified, cj the rest. */
ROTCLUS_API rotclus_status rotclus_warm_start_merge(const rotclus_clustering* ci,
                                                    const rotclus_clustering* cj,
                                                    const rotclus_dataset* unified,
                                                    rotclus_clustering** out);

ROTCLUS_API long long rotclus_clustering_k(const rotclus_clustering* c);
ROTCLUS_API long long rotclus_clustering_records(const rotclus_clustering* c);
ROTCLUS_API long long rotclus_clustering_iterations(const rotclus_clustering* c);
ROTCLUS_API double rotclus_clustering_wcss(const rotclus_clustering* c);
/* 1-based cluster label of a 0-based record index. */
ROTCLUS_API long long rotclus_clustering_label(const rotclus_clustering* c, long long record);
ROTCLUS_API rotclus_status rotclus_clustering_save_csv(const rotclus_clustering* c,
                                                       const char* assignments_path,
                                                       const char* centroids_path);
ROTCLUS_API rotclus_status rotclus_clustering_load_csv(const char* assignments_path,
                                                       const char* centroids_path,
                                                       rotclus_clustering** out);
ROTCLUS_API void rotclus_clustering_free(rotclus_clustering* c);

/* ---- benchmarks --------------------------------------------------------- */

typedef struct rotclus_bench_options {
    int experiment;       /* 1-7 or 10 */
    int repetitions;      /* 0 -> per-experiment default */
    uint64_t seed;
    long long m;          /* subsets for mrbt experiments (default 100) */
    long long k;          /* clusters for clustering experiments (default 7) */
    long long n;          /* 0 -> per-experiment default */
    long long attributes; /* 0 -> per-experiment default */
    const char* ladder;   /* comma-separated record counts, NULL -> default */
} rotclus_bench_options;

ROTCLUS_API rotclus_status rotclus_outlier_filter(const double* values, long long count,
                                                  double* filtered_out, long long* outliers_out);

/* Runs one experiment, writes the report CSV, and copies a short summary
 * into summary_out (truncated to summary_len, always NUL-terminated). */
ROTCLUS_API rotclus_status rotclus_bench_run(const rotclus_bench_options* options,
                                             const char* report_path, char* summary_out,
                                             long long summary_len);

#ifdef __cplusplus
}
#endif

#endif /* ROTCLUS_H */
