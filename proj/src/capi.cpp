#define HURSTLAB_BUILD
#include "hurstlab.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "hurstlab/csv.hpp"
#include "hurstlab/dfa.hpp"
#include "hurstlab/error.hpp"
#include "hurstlab/rolling.hpp"
#include "hurstlab/series.hpp"
#include "hurstlab/stats.hpp"
#include "hurstlab/synth.hpp"
#include "hurstlab/table.hpp"
#include "hurstlab/tick.hpp"

struct hl_ticks {
    hurstlab::TickSeries v;
};
struct hl_prices {
    hurstlab::PriceSeries v;
};
struct hl_returns {
    hurstlab::ReturnSeries v;
};
struct hl_hurst_series {
    hurstlab::HurstSeries v;
};
struct hl_table {
    hurstlab::Table v;
};

namespace {

thread_local std::string t_last_error;

hl_status from_errc(hurstlab::errc code) {
    switch (code) {
        case hurstlab::errc::invalid_argument: return HL_ERROR_INVALID_ARGUMENT;
        case hurstlab::errc::parse: return HL_ERROR_PARSE;
        case hurstlab::errc::validation: return HL_ERROR_VALIDATION;
        case hurstlab::errc::degenerate: return HL_ERROR_DEGENERATE;
        case hurstlab::errc::io: return HL_ERROR_IO;
    }
    return HL_ERROR_INTERNAL;
}

template <typename Fn>
hl_status guarded(Fn&& fn) {
    try {
        fn();
        return HL_OK;
    } catch (const hurstlab::Error& e) {
        t_last_error = e.what();
        return from_errc(e.code());
    } catch (const std::bad_alloc&) {
        t_last_error = "out of memory";
        return HL_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return HL_ERROR_INTERNAL;
    }
}

hl_status fail_invalid(const char* message) {
    t_last_error = message;
    return HL_ERROR_INVALID_ARGUMENT;
}

hurstlab::CsvConfig to_csv_config(const hl_csv_config* config) {
    hurstlab::CsvConfig out;
    if (config != nullptr) {
        out.delimiter = config->delimiter;
        out.skip_rows = config->skip_rows;
    }
    return out;
}

hurstlab::DfaConfig to_dfa_config(const hl_dfa_config* config) {
    hurstlab::DfaConfig out;
    if (config != nullptr) {
        if (config->n_scales > HL_MAX_SCALES) {
            throw hurstlab::Error(hurstlab::errc::invalid_argument,
                                  "n_scales exceeds HL_MAX_SCALES");
        }
        out.scales.assign(config->scales, config->scales + config->n_scales);
        out.poly_order = config->poly_order;
    }
    return out;
}

void fill_estimate(const hurstlab::HurstEstimate& src, hl_hurst_estimate* dst) {
    dst->h = src.h;
    dst->intercept = src.intercept;
    dst->r_squared = src.r_squared;
    dst->n_points = src.n_points();
    for (std::size_t i = 0; i < src.fluctuations.size() && i < HL_MAX_SCALES; ++i) {
        dst->scale[i] = src.fluctuations[i].first;
        dst->fluctuation[i] = src.fluctuations[i].second;
    }
}

std::ifstream open_input(const char* path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw hurstlab::Error(hurstlab::errc::io,
                              "cannot open file: " + std::string(path == nullptr ? "" : path));
    }
    return in;
}

}  // namespace

extern "C" {

const char* hl_version(void) { return "0.1.0"; }

const char* hl_last_error(void) { return t_last_error.c_str(); }

/* ---------------------------------------------------------------- ingest */

void hl_csv_config_init(hl_csv_config* config) {
    if (config == nullptr) return;
    config->delimiter = ',';
    config->skip_rows = 0;
}

hl_status hl_ticks_parse_csv(const char* text, size_t len, const hl_csv_config* config,
                             hl_ticks** out) {
    if (text == nullptr || out == nullptr) return fail_invalid("text and out must be non-NULL");
    return guarded([&] {
        auto handle = std::make_unique<hl_ticks>();
        handle->v = hurstlab::parse_tick_csv(std::string_view(text, len), to_csv_config(config));
        *out = handle.release();
    });
}

hl_status hl_ticks_parse_csv_file(const char* path, const hl_csv_config* config, hl_ticks** out) {
    if (path == nullptr || out == nullptr) return fail_invalid("path and out must be non-NULL");
    return guarded([&] {
        std::ifstream in = open_input(path);
        auto handle = std::make_unique<hl_ticks>();
        handle->v = hurstlab::parse_tick_csv(in, to_csv_config(config));
        *out = handle.release();
    });
}

size_t hl_ticks_count(const hl_ticks* ticks) { return ticks == nullptr ? 0 : ticks->v.size(); }

hl_status hl_ticks_get(const hl_ticks* ticks, size_t index, int64_t* timestamp, double* price,
                       double* volume) {
    if (ticks == nullptr) return fail_invalid("ticks must be non-NULL");
    if (index >= ticks->v.size()) return fail_invalid("tick index out of range");
    const hurstlab::TickRecord& rec = ticks->v.records[index];
    if (timestamp != nullptr) *timestamp = rec.timestamp;
    if (price != nullptr) *price = rec.price;
    if (volume != nullptr) *volume = rec.volume;
    return HL_OK;
}

void hl_ticks_free(hl_ticks* ticks) { delete ticks; }

hl_status hl_prices_parse_daily_csv(const char* text, size_t len, const hl_csv_config* config,
                                    hl_prices** out) {
    if (text == nullptr || out == nullptr) return fail_invalid("text and out must be non-NULL");
    return guarded([&] {
        auto handle = std::make_unique<hl_prices>();
        handle->v = hurstlab::parse_daily_csv(std::string_view(text, len), to_csv_config(config));
        *out = handle.release();
    });
}

hl_status hl_prices_parse_daily_csv_file(const char* path, const hl_csv_config* config,
                                         hl_prices** out) {
    if (path == nullptr || out == nullptr) return fail_invalid("path and out must be non-NULL");
    return guarded([&] {
        std::ifstream in = open_input(path);
        auto handle = std::make_unique<hl_prices>();
        handle->v = hurstlab::parse_daily_csv(in, to_csv_config(config));
        *out = handle.release();
    });
}

/* --------------------------------------------------------------- series */

void hl_sampling_spec_init(hl_sampling_spec* spec) {
    if (spec == nullptr) return;
    spec->interval_hours = 5;
    spec->anchor = HL_ANCHOR_AUTO;
    spec->gap_policy = HL_GAP_CARRY_FORWARD;
}

hl_status hl_resample_last(const hl_ticks* ticks, const hl_sampling_spec* spec, hl_prices** out) {
    if (ticks == nullptr || spec == nullptr || out == nullptr) {
        return fail_invalid("ticks, spec and out must be non-NULL");
    }
    return guarded([&] {
        hurstlab::SamplingSpec s;
        s.interval_hours = spec->interval_hours;
        s.anchor = spec->anchor == HL_ANCHOR_AUTO ? hurstlab::SamplingSpec::kAutoAnchor
                                                  : spec->anchor;
        if (spec->gap_policy != HL_GAP_CARRY_FORWARD && spec->gap_policy != HL_GAP_FAIL) {
            throw hurstlab::Error(hurstlab::errc::invalid_argument, "unknown gap policy");
        }
        s.gap_policy = spec->gap_policy == HL_GAP_FAIL ? hurstlab::GapPolicy::fail
                                                       : hurstlab::GapPolicy::carry_forward;
        auto handle = std::make_unique<hl_prices>();
        handle->v = hurstlab::resample_last(ticks->v, s);
        *out = handle.release();
    });
}

size_t hl_prices_count(const hl_prices* prices) {
    return prices == nullptr ? 0 : prices->v.size();
}

hl_status hl_prices_get(const hl_prices* prices, size_t index, int64_t* timestamp,
                        double* price) {
    if (prices == nullptr) return fail_invalid("prices must be non-NULL");
    if (index >= prices->v.size()) return fail_invalid("price index out of range");
    if (timestamp != nullptr) *timestamp = prices->v.timestamp_at(index);
    if (price != nullptr) *price = prices->v.prices[index];
    return HL_OK;
}

void hl_prices_free(hl_prices* prices) { delete prices; }

hl_status hl_log_returns(const hl_prices* prices, double scale, hl_returns** out) {
    if (prices == nullptr || out == nullptr) return fail_invalid("prices and out must be non-NULL");
    return guarded([&] {
        auto handle = std::make_unique<hl_returns>();
        handle->v = hurstlab::log_returns(prices->v, scale);
        *out = handle.release();
    });
}

size_t hl_returns_count(const hl_returns* returns) {
    return returns == nullptr ? 0 : returns->v.size();
}

const double* hl_returns_values(const hl_returns* returns) {
    return returns == nullptr || returns->v.values.empty() ? nullptr
                                                           : returns->v.values.data();
}

hl_status hl_returns_timestamp(const hl_returns* returns, size_t index, int64_t* timestamp) {
    if (returns == nullptr || timestamp == nullptr) {
        return fail_invalid("returns and timestamp must be non-NULL");
    }
    if (index >= returns->v.size()) return fail_invalid("return index out of range");
    if (returns->v.labels.empty()) {
        t_last_error = "return series carries no timestamps";
        return HL_ERROR_VALIDATION;
    }
    *timestamp = returns->v.labels[index];
    return HL_OK;
}

void hl_returns_free(hl_returns* returns) { delete returns; }

/* ---------------------------------------------------------------- stats */

hl_status hl_describe(const double* values, size_t n, hl_descriptive_stats* out) {
    if (values == nullptr || out == nullptr) return fail_invalid("values and out must be non-NULL");
    return guarded([&] {
        const hurstlab::DescriptiveStats s = hurstlab::describe({values, n});
        out->n = s.n;
        out->mean = s.mean;
        out->median = s.median;
        out->min = s.min;
        out->max = s.max;
        out->std_dev = s.std_dev;
        out->skewness = s.skewness;
        out->kurtosis = s.kurtosis;
        out->jarque_bera = s.jarque_bera;
        out->jb_p_value = s.jb_p_value;
    });
}

double hl_jarque_bera(uint64_t n, double skewness, double kurtosis) {
    return hurstlab::jarque_bera(n, skewness, kurtosis);
}

hl_status hl_spearman_rho(const double* x, const double* y, size_t n, double* out) {
    if (x == nullptr || y == nullptr || out == nullptr) {
        return fail_invalid("x, y and out must be non-NULL");
    }
    return guarded([&] { *out = hurstlab::spearman_rho({x, n}, {y, n}); });
}

hl_status hl_rolling_spearman(const double* x, const double* y, size_t n, size_t window,
                              size_t step, hl_table** out) {
    if (x == nullptr || y == nullptr || out == nullptr) {
        return fail_invalid("x, y and out must be non-NULL");
    }
    return guarded([&] {
        const auto points = hurstlab::rolling_spearman({x, n}, {y, n}, window, step);
        auto handle = std::make_unique<hl_table>();
        handle->v.columns = {"offset", "rho"};
        for (const auto& point : points) {
            std::vector<hurstlab::Table::Cell> row;
            row.emplace_back(static_cast<std::int64_t>(point.offset));
            if (point.rho) {
                row.emplace_back(*point.rho);
            } else {
                row.emplace_back(std::monostate{});
            }
            handle->v.add_row(std::move(row));
        }
        *out = handle.release();
    });
}

/* ------------------------------------------------------------------ dfa */

void hl_dfa_config_init(hl_dfa_config* config) {
    if (config == nullptr) return;
    std::memset(config->scales, 0, sizeof config->scales);
    config->n_scales = 0;
    config->poly_order = 1;
}

hl_status hl_default_scales(size_t window_len, int* out, size_t capacity, size_t* n_out) {
    if (out == nullptr || n_out == nullptr) return fail_invalid("out and n_out must be non-NULL");
    return guarded([&] {
        const std::vector<int> scales = hurstlab::default_scales(window_len);
        if (scales.size() > capacity) {
            throw hurstlab::Error(hurstlab::errc::invalid_argument,
                                  "scale buffer too small: need " +
                                      std::to_string(scales.size()));
        }
        std::copy(scales.begin(), scales.end(), out);
        *n_out = scales.size();
    });
}

hl_status hl_profile(const double* y, size_t n, double* out) {
    if (y == nullptr || out == nullptr) return fail_invalid("y and out must be non-NULL");
    return guarded([&] {
        const std::vector<double> x = hurstlab::profile({y, n});
        std::copy(x.begin(), x.end(), out);
    });
}

hl_status hl_fluctuation(const double* x, size_t n, int block_size, int poly_order, double* out) {
    if (x == nullptr || out == nullptr) return fail_invalid("x and out must be non-NULL");
    return guarded([&] { *out = hurstlab::fluctuation({x, n}, block_size, poly_order); });
}

hl_status hl_hurst_dfa(const double* y, size_t n, const hl_dfa_config* config,
                       hl_hurst_estimate* out) {
    if (y == nullptr || out == nullptr) return fail_invalid("y and out must be non-NULL");
    return guarded([&] {
        const hurstlab::HurstEstimate est = hurstlab::hurst_dfa({y, n}, to_dfa_config(config));
        fill_estimate(est, out);
    });
}

/* -------------------------------------------------------------- rolling */

hl_status hl_rolling_hurst(const double* y, size_t n, size_t window, size_t step,
                           const hl_dfa_config* config, int threads, hl_hurst_series** out) {
    if (y == nullptr || out == nullptr) return fail_invalid("y and out must be non-NULL");
    if (threads < 0) return fail_invalid("threads must be >= 0");
    return guarded([&] {
        auto handle = std::make_unique<hl_hurst_series>();
        handle->v = hurstlab::rolling_hurst({y, n}, window, step, to_dfa_config(config),
                                            static_cast<unsigned>(threads));
        *out = handle.release();
    });
}

size_t hl_hurst_series_count(const hl_hurst_series* series) {
    return series == nullptr ? 0 : series->v.size();
}

size_t hl_hurst_series_window(const hl_hurst_series* series) {
    return series == nullptr ? 0 : series->v.window;
}

size_t hl_hurst_series_step(const hl_hurst_series* series) {
    return series == nullptr ? 0 : series->v.step;
}

hl_status hl_hurst_series_get(const hl_hurst_series* series, size_t index, size_t* offset,
                              int* missing, hl_hurst_estimate* estimate) {
    if (series == nullptr) return fail_invalid("series must be non-NULL");
    if (index >= series->v.size()) return fail_invalid("window index out of range");
    if (offset != nullptr) *offset = series->v.offsets[index];
    const auto& est = series->v.estimates[index];
    if (missing != nullptr) *missing = est ? 0 : 1;
    if (est && estimate != nullptr) fill_estimate(*est, estimate);
    return HL_OK;
}

void hl_hurst_series_free(hl_hurst_series* series) { delete series; }

hl_status hl_align_hurst_with(const hl_hurst_series* series, const double* covariate,
                              size_t covariate_len, int alignment, double* hurst_out,
                              double* covariate_out) {
    if (series == nullptr || covariate == nullptr || hurst_out == nullptr ||
        covariate_out == nullptr) {
        return fail_invalid("series, covariate and outputs must be non-NULL");
    }
    if (alignment != HL_ALIGN_WINDOW_END && alignment != HL_ALIGN_WINDOW_START) {
        return fail_invalid("unknown alignment");
    }
    return guarded([&] {
        const hurstlab::AlignedSeries aligned = hurstlab::align_hurst_with(
            series->v, {covariate, covariate_len},
            alignment == HL_ALIGN_WINDOW_END ? hurstlab::Alignment::window_end
                                             : hurstlab::Alignment::window_start);
        std::copy(aligned.hurst.begin(), aligned.hurst.end(), hurst_out);
        std::copy(aligned.covariate.begin(), aligned.covariate.end(), covariate_out);
    });
}

/* ---------------------------------------------------------------- synth */

hl_status hl_synth_white_noise(uint64_t n, double sigma, uint64_t seed, double* out) {
    if (out == nullptr) return fail_invalid("out must be non-NULL");
    return guarded([&] {
        const std::vector<double> v = hurstlab::white_noise(n, sigma, seed);
        std::copy(v.begin(), v.end(), out);
    });
}

hl_status hl_synth_fgn(uint64_t n, double h, double sigma, uint64_t seed, double* out) {
    if (out == nullptr) return fail_invalid("out must be non-NULL");
    return guarded([&] {
        const std::vector<double> v = hurstlab::fgn(n, h, sigma, seed);
        std::copy(v.begin(), v.end(), out);
    });
}

hl_status hl_synth_ar1(uint64_t n, double phi, double sigma, uint64_t seed, double* out) {
    if (out == nullptr) return fail_invalid("out must be non-NULL");
    return guarded([&] {
        const std::vector<double> v = hurstlab::ar1(n, phi, sigma, seed);
        std::copy(v.begin(), v.end(), out);
    });
}

hl_status hl_synth_regime_concat(const hl_generator_spec* specs, size_t n_specs, double* out) {
    if (specs == nullptr || out == nullptr) return fail_invalid("specs and out must be non-NULL");
    return guarded([&] {
        std::vector<hurstlab::GeneratorSpec> core_specs;
        core_specs.reserve(n_specs);
        for (size_t i = 0; i < n_specs; ++i) {
            hurstlab::GeneratorSpec s;
            switch (specs[i].kind) {
                case HL_GEN_WHITE_NOISE: s.kind = hurstlab::GeneratorKind::white_noise; break;
                case HL_GEN_FGN: s.kind = hurstlab::GeneratorKind::fgn; break;
                case HL_GEN_AR1: s.kind = hurstlab::GeneratorKind::ar1; break;
                default:
                    throw hurstlab::Error(hurstlab::errc::invalid_argument,
                                          "unknown generator kind");
            }
            s.n = specs[i].n;
            s.h = specs[i].h;
            s.phi = specs[i].phi;
            s.sigma = specs[i].sigma;
            s.seed = specs[i].seed;
            core_specs.push_back(s);
        }
        const std::vector<double> v = hurstlab::regime_concat(core_specs);
        std::copy(v.begin(), v.end(), out);
    });
}

/* ---------------------------------------------------------------- table */

hl_table* hl_table_new(void) { return new (std::nothrow) hl_table; }

hl_status hl_table_add_column(hl_table* table, const char* name) {
    if (table == nullptr || name == nullptr) return fail_invalid("table and name must be non-NULL");
    if (!table->v.rows.empty()) return fail_invalid("cannot add columns after rows");
    table->v.columns.emplace_back(name);
    return HL_OK;
}

hl_status hl_table_add_row(hl_table* table, const double* cells, size_t n) {
    if (table == nullptr || (cells == nullptr && n > 0)) {
        return fail_invalid("table and cells must be non-NULL");
    }
    return guarded([&] {
        std::vector<hurstlab::Table::Cell> row;
        row.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            if (std::isnan(cells[i])) {
                row.emplace_back(std::monostate{});
            } else {
                row.emplace_back(cells[i]);
            }
        }
        table->v.add_row(std::move(row));
    });
}

size_t hl_table_n_rows(const hl_table* table) { return table == nullptr ? 0 : table->v.n_rows(); }

size_t hl_table_n_cols(const hl_table* table) { return table == nullptr ? 0 : table->v.n_cols(); }

hl_status hl_table_cell(const hl_table* table, size_t row, size_t col, double* value,
                        int* missing) {
    if (table == nullptr || value == nullptr || missing == nullptr) {
        return fail_invalid("table, value and missing must be non-NULL");
    }
    if (row >= table->v.n_rows() || col >= table->v.rows[row].size()) {
        return fail_invalid("cell index out of range");
    }
    const hurstlab::Table::Cell& cell = table->v.rows[row][col];
    *missing = 0;
    if (std::holds_alternative<std::monostate>(cell)) {
        *missing = 1;
    } else if (const auto* d = std::get_if<double>(&cell)) {
        *value = *d;
    } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        *value = static_cast<double>(*i);
    } else {
        return fail_invalid("cell holds a string, not a number");
    }
    return HL_OK;
}

namespace {
hurstlab::TableFormat to_format(int format) {
    if (format == HL_FORMAT_CSV) return hurstlab::TableFormat::csv;
    if (format == HL_FORMAT_JSON) return hurstlab::TableFormat::json;
    throw hurstlab::Error(hurstlab::errc::invalid_argument, "unknown table format");
}
}  // namespace

hl_status hl_table_write_file(const hl_table* table, int format, const char* path,
                              const char* comment) {
    if (table == nullptr || path == nullptr) return fail_invalid("table and path must be non-NULL");
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw hurstlab::Error(hurstlab::errc::io,
                                  "cannot open file for writing: " + std::string(path));
        }
        hurstlab::write_table(table->v, to_format(format), out,
                              comment == nullptr ? std::string_view{} : std::string_view(comment));
    });
}

hl_status hl_table_write_string(const hl_table* table, int format, const char* comment,
                                char** out) {
    if (table == nullptr || out == nullptr) return fail_invalid("table and out must be non-NULL");
    return guarded([&] {
        const std::string text = hurstlab::to_string(
            table->v, to_format(format),
            comment == nullptr ? std::string_view{} : std::string_view(comment));
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
    });
}

hl_status hl_table_read_csv_file(const char* path, hl_table** out) {
    if (path == nullptr || out == nullptr) return fail_invalid("path and out must be non-NULL");
    return guarded([&] {
        std::ifstream in = open_input(path);
        auto handle = std::make_unique<hl_table>();
        handle->v = hurstlab::read_numeric_csv(in);
        *out = handle.release();
    });
}

void hl_string_free(char* s) { delete[] s; }

void hl_table_free(hl_table* table) { delete table; }

} /* extern "C" */
