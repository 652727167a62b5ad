/* hurstlab C API: tick ingestion, resampling, log returns, descriptive
 * statistics, DFA Hurst estimation, rolling windows, rank correlation and
 * synthetic long-memory generators behind a stable shared-library surface.
 *
 * Conventions:
 *   - functions return hl_status; HL_OK is 0, anything else is a failure and
 *     hl_last_error() carries a thread-local diagnostic message;
 *   - objects created by hl_*_new / parse / compute calls are owned by the
 *     caller and released with the matching hl_*_free (NULL is a no-op);
 *   - timestamps are epoch seconds; missing values travel as NaN where a
 *     double array is filled, and as missing cells inside tables.
 */
#ifndef HURSTLAB_H
#define HURSTLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HURSTLAB_BUILD)
#define HURSTLAB_API __declspec(dllexport)
#else
#define HURSTLAB_API __declspec(dllimport)
#endif
#else
#define HURSTLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
    HL_OK = 0,
    HL_ERROR_INVALID_ARGUMENT = 1,
    HL_ERROR_PARSE = 2,
    HL_ERROR_VALIDATION = 3,
    HL_ERROR_DEGENERATE = 4,
    HL_ERROR_IO = 5,
    HL_ERROR_INTERNAL = 6,
} hl_status;

/* Opaque handles. */
typedef struct hl_ticks hl_ticks;
typedef struct hl_prices hl_prices;
typedef struct hl_returns hl_returns;
typedef struct hl_hurst_series hl_hurst_series;
typedef struct hl_table hl_table;

HURSTLAB_API const char* hl_version(void);

/* Message for the most recent failure on this thread; never NULL. */
HURSTLAB_API const char* hl_last_error(void);

/* ---------------------------------------------------------------- ingest */

typedef struct hl_csv_config {
    char delimiter; /* default ',' */
    int skip_rows;  /* leading lines to discard, default 0 */
} hl_csv_config;

HURSTLAB_API void hl_csv_config_init(hl_csv_config* config);

/* Parse headerless `unixtime,price,volume` rows; records end up sorted by
 * timestamp (stable). `config` may be NULL for defaults. */
HURSTLAB_API hl_status hl_ticks_parse_csv(const char* text, size_t len,
                                          const hl_csv_config* config, hl_ticks** out);
HURSTLAB_API hl_status hl_ticks_parse_csv_file(const char* path, const hl_csv_config* config,
                                               hl_ticks** out);
HURSTLAB_API size_t hl_ticks_count(const hl_ticks* ticks);
HURSTLAB_API hl_status hl_ticks_get(const hl_ticks* ticks, size_t index, int64_t* timestamp,
                                    double* price, double* volume);
HURSTLAB_API void hl_ticks_free(hl_ticks* ticks);

/* Parse `date,close` daily rows (ISO-8601 dates, header required). */
HURSTLAB_API hl_status hl_prices_parse_daily_csv(const char* text, size_t len,
                                                 const hl_csv_config* config, hl_prices** out);
HURSTLAB_API hl_status hl_prices_parse_daily_csv_file(const char* path,
                                                      const hl_csv_config* config,
                                                      hl_prices** out);

/* --------------------------------------------------------------- series */

typedef enum hl_gap_policy {
    HL_GAP_CARRY_FORWARD = 0,
    HL_GAP_FAIL = 1,
} hl_gap_policy;

#define HL_ANCHOR_AUTO (-1) /* first tick rounded up to a whole hour */

typedef struct hl_sampling_spec {
    int interval_hours; /* in [1, 168], default 5 */
    int64_t anchor;     /* epoch seconds or HL_ANCHOR_AUTO */
    int gap_policy;     /* hl_gap_policy, default carry-forward */
} hl_sampling_spec;

HURSTLAB_API void hl_sampling_spec_init(hl_sampling_spec* spec);

/* Last trade price at or before each grid point, anchor..last tick. */
HURSTLAB_API hl_status hl_resample_last(const hl_ticks* ticks, const hl_sampling_spec* spec,
                                        hl_prices** out);
HURSTLAB_API size_t hl_prices_count(const hl_prices* prices);
HURSTLAB_API hl_status hl_prices_get(const hl_prices* prices, size_t index, int64_t* timestamp,
                                     double* price);
HURSTLAB_API void hl_prices_free(hl_prices* prices);

/* r_t = scale * (ln P_{t+1} - ln P_t); scale 100 gives percent log returns. */
HURSTLAB_API hl_status hl_log_returns(const hl_prices* prices, double scale, hl_returns** out);
HURSTLAB_API size_t hl_returns_count(const hl_returns* returns);
/* Borrowed view, valid until the handle is freed. */
HURSTLAB_API const double* hl_returns_values(const hl_returns* returns);
/* Timestamp of the later price point of return `index`; fails when the
 * source series carried no timestamps. */
HURSTLAB_API hl_status hl_returns_timestamp(const hl_returns* returns, size_t index,
                                            int64_t* timestamp);
HURSTLAB_API void hl_returns_free(hl_returns* returns);

/* ---------------------------------------------------------------- stats */

typedef struct hl_descriptive_stats {
    uint64_t n;
    double mean;
    double median;
    double min;
    double max;
    double std_dev;     /* sample, n-1 denominator */
    double skewness;    /* m3 / m2^1.5, 1/n moments */
    double kurtosis;    /* raw m4 / m2^2 */
    double jarque_bera; /* (n/6) (S^2 + (K-3)^2 / 4) */
    double jb_p_value;  /* chi-squared, 2 dof, upper tail */
} hl_descriptive_stats;

HURSTLAB_API hl_status hl_describe(const double* values, size_t n, hl_descriptive_stats* out);
HURSTLAB_API double hl_jarque_bera(uint64_t n, double skewness, double kurtosis);

/* Spearman's rho with average ranks for ties. */
HURSTLAB_API hl_status hl_spearman_rho(const double* x, const double* y, size_t n, double* out);

/* Table with columns offset,rho; degenerate windows yield missing cells. */
HURSTLAB_API hl_status hl_rolling_spearman(const double* x, const double* y, size_t n,
                                           size_t window, size_t step, hl_table** out);

/* ------------------------------------------------------------------ dfa */

#define HL_MAX_SCALES 32

typedef struct hl_dfa_config {
    int scales[HL_MAX_SCALES];
    size_t n_scales; /* 0 = derive from the series/window length */
    int poly_order;  /* detrending degree, default 1 */
} hl_dfa_config;

HURSTLAB_API void hl_dfa_config_init(hl_dfa_config* config);

/* Powers of two from 4 up to min(128, window_len / 2). */
HURSTLAB_API hl_status hl_default_scales(size_t window_len, int* out, size_t capacity,
                                         size_t* n_out);

typedef struct hl_hurst_estimate {
    double h;
    double intercept;
    double r_squared;
    size_t n_points;
    int scale[HL_MAX_SCALES];
    double fluctuation[HL_MAX_SCALES];
} hl_hurst_estimate;

/* Integrated profile x[i] = sum of mean-subtracted y; out has n slots. */
HURSTLAB_API hl_status hl_profile(const double* y, size_t n, double* out);

/* RMS residual of per-block polynomial detrending at one block size. */
HURSTLAB_API hl_status hl_fluctuation(const double* x, size_t n, int block_size, int poly_order,
                                      double* out);

/* Full DFA fit of one series. `config` may be NULL for defaults. */
HURSTLAB_API hl_status hl_hurst_dfa(const double* y, size_t n, const hl_dfa_config* config,
                                    hl_hurst_estimate* out);

/* -------------------------------------------------------------- rolling */

/* DFA over sliding windows. threads: 0 = hardware concurrency, 1 = serial;
 * results are identical either way. */
HURSTLAB_API hl_status hl_rolling_hurst(const double* y, size_t n, size_t window, size_t step,
                                        const hl_dfa_config* config, int threads,
                                        hl_hurst_series** out);
HURSTLAB_API size_t hl_hurst_series_count(const hl_hurst_series* series);
HURSTLAB_API size_t hl_hurst_series_window(const hl_hurst_series* series);
HURSTLAB_API size_t hl_hurst_series_step(const hl_hurst_series* series);
/* `missing` is set to 1 (and *estimate left untouched) for degenerate
 * windows. `estimate` may be NULL when only the flag is wanted. */
HURSTLAB_API hl_status hl_hurst_series_get(const hl_hurst_series* series, size_t index,
                                           size_t* offset, int* missing,
                                           hl_hurst_estimate* estimate);
HURSTLAB_API void hl_hurst_series_free(hl_hurst_series* series);

typedef enum hl_alignment {
    HL_ALIGN_WINDOW_END = 0,  /* H_k pairs with covariate[offset_k + window - 1] */
    HL_ALIGN_WINDOW_START = 1 /* H_k pairs with covariate[offset_k] */
} hl_alignment;

/* Fill hurst_out/covariate_out (each hl_hurst_series_count slots) with the
 * aligned pairs; missing estimates become NaN. */
HURSTLAB_API hl_status hl_align_hurst_with(const hl_hurst_series* series, const double* covariate,
                                           size_t covariate_len, int alignment,
                                           double* hurst_out, double* covariate_out);

/* ---------------------------------------------------------------- synth */

typedef enum hl_generator_kind {
    HL_GEN_WHITE_NOISE = 0,
    HL_GEN_FGN = 1,
    HL_GEN_AR1 = 2,
} hl_generator_kind;

typedef struct hl_generator_spec {
    int kind; /* hl_generator_kind */
    uint64_t n;
    double h;   /* fgn only, in (0, 1) */
    double phi; /* ar1 only, in (-1, 1) */
    double sigma;
    uint64_t seed;
} hl_generator_spec;

HURSTLAB_API hl_status hl_synth_white_noise(uint64_t n, double sigma, uint64_t seed, double* out);
HURSTLAB_API hl_status hl_synth_fgn(uint64_t n, double h, double sigma, uint64_t seed,
                                    double* out);
HURSTLAB_API hl_status hl_synth_ar1(uint64_t n, double phi, double sigma, uint64_t seed,
                                    double* out);
/* Concatenate independently generated segments into `out`, which must hold
 * the summed lengths. */
HURSTLAB_API hl_status hl_synth_regime_concat(const hl_generator_spec* specs, size_t n_specs,
                                              double* out);

/* ---------------------------------------------------------------- table */

typedef enum hl_format {
    HL_FORMAT_CSV = 0,
    HL_FORMAT_JSON = 1,
} hl_format;

HURSTLAB_API hl_table* hl_table_new(void);
HURSTLAB_API hl_status hl_table_add_column(hl_table* table, const char* name);
/* One numeric row; NaN cells are stored as missing. */
HURSTLAB_API hl_status hl_table_add_row(hl_table* table, const double* cells, size_t n);
HURSTLAB_API size_t hl_table_n_rows(const hl_table* table);
HURSTLAB_API size_t hl_table_n_cols(const hl_table* table);
/* `missing` set to 1 when the cell is empty (value untouched). */
HURSTLAB_API hl_status hl_table_cell(const hl_table* table, size_t row, size_t col, double* value,
                                     int* missing);

/* Deterministic rendering: fixed column order, 17-significant-digit reals.
 * A non-NULL, non-empty `comment` becomes a leading `# ...` line in CSV and
 * a {"config": ..., "rows": [...]} wrapper in JSON. */
HURSTLAB_API hl_status hl_table_write_file(const hl_table* table, int format, const char* path,
                                           const char* comment);
/* Result is heap-allocated; release with hl_string_free. */
HURSTLAB_API hl_status hl_table_write_string(const hl_table* table, int format,
                                             const char* comment, char** out);
/* Parse a numeric CSV written by this library (comment lines skipped). */
HURSTLAB_API hl_status hl_table_read_csv_file(const char* path, hl_table** out);
HURSTLAB_API void hl_string_free(char* s);
HURSTLAB_API void hl_table_free(hl_table* table);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HURSTLAB_H */
