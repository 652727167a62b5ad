// hurstlab command line: tick/daily ingestion, resampling, log returns,
// descriptive statistics, DFA Hurst estimation (whole-series and rolling)
// and Hurst-covariate rank correlation, emitting plot-ready CSV/JSON tables.
//
// Exit codes: 0 success, 1 data/validation error, 2 usage error.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hurstlab.h"

namespace {

struct CliError {
    int exit_code;
    std::string message;
};

void check(hl_status status) {
    if (status != HL_OK) throw CliError{1, hl_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw CliError{2, message}; }

// RAII wrappers over the C handles.
template <typename T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    ~Handle() { Free(ptr); }
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    T** out() { return &ptr; }
    operator T*() const { return ptr; }
};
using TicksHandle = Handle<hl_ticks, hl_ticks_free>;
using PricesHandle = Handle<hl_prices, hl_prices_free>;
using ReturnsHandle = Handle<hl_returns, hl_returns_free>;
using HurstSeriesHandle = Handle<hl_hurst_series, hl_hurst_series_free>;
using TableHandle = Handle<hl_table, hl_table_free>;

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

struct CommonOpts {
    std::string input;
    std::string kind = "ticks";  // ticks | daily | series
    int interval_hours = 0;      // 0 = all of 5..12 where a sweep makes sense
    double scale = 100.0;
    std::string gap_policy = "carry-forward";
    std::string format = "csv";
    std::string output;  // empty = stdout
};

struct DfaOpts {
    std::vector<int> scales;
    int poly_order = 1;
};

struct RollingOpts {
    std::size_t window = 500;
    std::size_t step = 1;
    int threads = 0;
    std::string alignment = "window-end";  // stamp for the timestamp column
};

void add_common_options(CLI::App* cmd, CommonOpts& opts, bool with_interval = true) {
    cmd->add_option("--input", opts.input, "Input file path")->required();
    cmd->add_option("--kind", opts.kind, "Input kind")
        ->check(CLI::IsMember({"ticks", "daily", "series"}))
        ->capture_default_str();
    if (with_interval) {
        cmd->add_option("--interval-hours", opts.interval_hours,
                        "Tick sampling interval in hours (ticks only)")
            ->check(CLI::Range(1, 168));
    }
    cmd->add_option("--scale", opts.scale, "Log-return scale (100 = percent returns)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--gap-policy", opts.gap_policy, "Empty-interval handling when resampling")
        ->check(CLI::IsMember({"carry-forward", "fail"}))
        ->capture_default_str();
    cmd->add_option("--format", opts.format, "Output table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", opts.output, "Output path (default: stdout)");
}

void add_dfa_options(CLI::App* cmd, DfaOpts& opts) {
    cmd->add_option("--scales", opts.scales, "DFA block sizes (default: derived)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    cmd->add_option("--poly-order", opts.poly_order, "Detrending polynomial order")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
}

void add_rolling_options(CLI::App* cmd, RollingOpts& opts) {
    cmd->add_option("--window", opts.window, "Sliding window length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--step", opts.step, "Window step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = auto)")
        ->check(CLI::Range(0, 1024))
        ->capture_default_str();
    cmd->add_option("--alignment", opts.alignment,
                    "Observation stamped into the timestamp column")
        ->check(CLI::IsMember({"window-end", "window-start"}))
        ->capture_default_str();
}

hl_dfa_config make_dfa_config(const DfaOpts& opts) {
    hl_dfa_config config;
    hl_dfa_config_init(&config);
    if (opts.scales.size() > HL_MAX_SCALES) usage_error("too many --scales values");
    if (!opts.scales.empty() && opts.scales.size() < 3) {
        usage_error("--scales needs at least 3 block sizes for the regression");
    }
    for (std::size_t i = 0; i < opts.scales.size(); ++i) {
        if (i > 0 && opts.scales[i] <= opts.scales[i - 1]) {
            usage_error("--scales must be strictly increasing");
        }
        if (opts.scales[i] < opts.poly_order + 2) {
            usage_error("--scales entries must be at least poly-order + 2");
        }
        config.scales[i] = opts.scales[i];
    }
    config.n_scales = opts.scales.size();
    config.poly_order = opts.poly_order;
    return config;
}

// --output is resolved against HURSTLAB_OUTPUT_DIR when it is set and the
// path is relative; the one environment knob the tool honors.
std::string resolve_output(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("HURSTLAB_OUTPUT_DIR");
    if (dir == nullptr || *dir == '\0') return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

void emit_table(const hl_table* table, const CommonOpts& opts, const std::string& comment,
                const std::string& path_override = "") {
    const int format = opts.format == "json" ? HL_FORMAT_JSON : HL_FORMAT_CSV;
    const std::string path =
        resolve_output(path_override.empty() ? opts.output : path_override);
    if (path.empty()) {
        char* text = nullptr;
        check(hl_table_write_string(table, format, comment.c_str(), &text));
        std::cout << text;
        hl_string_free(text);
    } else {
        check(hl_table_write_file(table, format, path.c_str(), comment.c_str()));
    }
}

// Single-column numeric series: `#` comment lines and one optional header
// line are skipped, everything else must parse as a finite real.
std::vector<double> load_series_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{1, "cannot open file: " + path};
    std::vector<double> values;
    std::string line;
    bool first_content = true;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        const bool parsed = ec == std::errc{} && ptr == line.data() + line.size();
        if (!parsed) {
            if (first_content) {  // header such as "value"
                first_content = false;
                continue;
            }
            throw CliError{1, path + ": line " + std::to_string(line_no) +
                                  ": cannot parse number '" + line + "'"};
        }
        if (!std::isfinite(v)) {
            throw CliError{1, path + ": line " + std::to_string(line_no) + ": non-finite value"};
        }
        first_content = false;
        values.push_back(v);
    }
    if (values.empty()) throw CliError{1, path + ": no values found"};
    return values;
}

struct LoadedReturns {
    std::vector<double> values;
    std::vector<std::int64_t> timestamps;  // empty when the input carries none

    [[nodiscard]] bool has_timestamps() const { return !timestamps.empty(); }
};

LoadedReturns returns_from_handle(const ReturnsHandle& returns) {
    LoadedReturns out;
    const std::size_t n = hl_returns_count(returns);
    const double* values = hl_returns_values(returns);
    out.values.assign(values, values + n);
    out.timestamps.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        check(hl_returns_timestamp(returns, i, &out.timestamps[i]));
    }
    return out;
}

int to_gap_policy(const std::string& name) {
    return name == "fail" ? HL_GAP_FAIL : HL_GAP_CARRY_FORWARD;
}

// Returns for one concrete interval (ticks) or straight from the file.
LoadedReturns load_returns(const CommonOpts& opts, int interval_hours) {
    if (opts.kind == "series") {
        LoadedReturns out;
        out.values = load_series_file(opts.input);
        return out;
    }
    if (opts.kind == "daily") {
        PricesHandle prices;
        check(hl_prices_parse_daily_csv_file(opts.input.c_str(), nullptr, prices.out()));
        ReturnsHandle returns;
        check(hl_log_returns(prices, opts.scale, returns.out()));
        return returns_from_handle(returns);
    }
    TicksHandle ticks;
    check(hl_ticks_parse_csv_file(opts.input.c_str(), nullptr, ticks.out()));
    hl_sampling_spec spec;
    hl_sampling_spec_init(&spec);
    spec.interval_hours = interval_hours;
    spec.gap_policy = to_gap_policy(opts.gap_policy);
    PricesHandle prices;
    check(hl_resample_last(ticks, &spec, prices.out()));
    ReturnsHandle returns;
    check(hl_log_returns(prices, opts.scale, returns.out()));
    return returns_from_handle(returns);
}

std::vector<int> requested_intervals(const CommonOpts& opts) {
    if (opts.kind != "ticks") return {0};
    if (opts.interval_hours > 0) return {opts.interval_hours};
    return {5, 6, 7, 8, 9, 10, 11, 12};  // the multiscale sweep
}

std::string common_config_string(const std::string& command, const CommonOpts& opts,
                                 int interval_hours) {
    std::ostringstream out;
    out << "hurstlab " << command << " input=" << opts.input << " kind=" << opts.kind;
    if (opts.kind == "ticks" && interval_hours > 0) {
        out << " interval_hours=" << interval_hours << " gap_policy=" << opts.gap_policy;
    }
    if (opts.kind != "series") out << " scale=" << opts.scale;
    out << " format=" << opts.format;
    return out.str();
}

std::string dfa_config_string(const DfaOpts& opts, const std::vector<int>& resolved_scales) {
    std::ostringstream out;
    out << " poly_order=" << opts.poly_order << " scales=";
    for (std::size_t i = 0; i < resolved_scales.size(); ++i) {
        out << (i > 0 ? "," : "") << resolved_scales[i];
    }
    return out.str();
}

std::string with_suffix(const std::string& path, int interval_hours) {
    if (path.empty()) return path;
    const std::filesystem::path p(path);
    std::filesystem::path renamed = p.parent_path();
    renamed /= p.stem().string() + "_" + std::to_string(interval_hours) + "h" +
               p.extension().string();
    return renamed.string();
}

std::vector<int> resolve_scales_for(std::size_t length, const DfaOpts& opts) {
    if (!opts.scales.empty()) return opts.scales;
    std::vector<int> scales(HL_MAX_SCALES);
    std::size_t n_scales = 0;
    check(hl_default_scales(length, scales.data(), scales.size(), &n_scales));
    scales.resize(n_scales);
    return scales;
}

/* ------------------------------------------------------------- commands */

int cmd_ingest_check(const CommonOpts& opts) {
    TableHandle table{};
    table.ptr = hl_table_new();
    check(hl_table_add_column(table, "records"));
    check(hl_table_add_column(table, "first_timestamp"));
    check(hl_table_add_column(table, "last_timestamp"));

    double row[3] = {0.0, kMissing, kMissing};
    if (opts.kind == "ticks") {
        TicksHandle ticks;
        check(hl_ticks_parse_csv_file(opts.input.c_str(), nullptr, ticks.out()));
        const std::size_t n = hl_ticks_count(ticks);
        std::int64_t first = 0, last = 0;
        check(hl_ticks_get(ticks, 0, &first, nullptr, nullptr));
        check(hl_ticks_get(ticks, n - 1, &last, nullptr, nullptr));
        row[0] = static_cast<double>(n);
        row[1] = static_cast<double>(first);
        row[2] = static_cast<double>(last);
    } else if (opts.kind == "daily") {
        PricesHandle prices;
        check(hl_prices_parse_daily_csv_file(opts.input.c_str(), nullptr, prices.out()));
        const std::size_t n = hl_prices_count(prices);
        std::int64_t first = 0, last = 0;
        check(hl_prices_get(prices, 0, &first, nullptr));
        check(hl_prices_get(prices, n - 1, &last, nullptr));
        row[0] = static_cast<double>(n);
        row[1] = static_cast<double>(first);
        row[2] = static_cast<double>(last);
    } else {
        row[0] = static_cast<double>(load_series_file(opts.input).size());
    }
    check(hl_table_add_row(table, row, 3));
    emit_table(table, opts, common_config_string("ingest-check", opts, opts.interval_hours));
    return 0;
}

int cmd_stats(const CommonOpts& opts) {
    TableHandle table{};
    table.ptr = hl_table_new();
    for (const char* name : {"n", "mean", "median", "min", "max", "std_dev", "skewness",
                             "kurtosis", "jarque_bera", "jb_p_value"}) {
        check(hl_table_add_column(table, name));
    }

    const std::vector<int> intervals = requested_intervals(opts);
    for (const int interval : intervals) {
        const LoadedReturns returns = load_returns(opts, interval);
        hl_descriptive_stats stats;
        check(hl_describe(returns.values.data(), returns.values.size(), &stats));
        const double row[10] = {static_cast<double>(stats.n),
                                stats.mean,
                                stats.median,
                                stats.min,
                                stats.max,
                                stats.std_dev,
                                stats.skewness,
                                stats.kurtosis,
                                stats.jarque_bera,
                                stats.jb_p_value};
        check(hl_table_add_row(table, row, 10));
    }

    std::string comment = common_config_string("stats", opts, opts.interval_hours);
    if (opts.kind == "ticks" && intervals.size() > 1) {
        comment = common_config_string("stats", opts, 0) + " intervals=5..12h (one row each)";
    }
    emit_table(table, opts, comment);
    return 0;
}

int cmd_returns(const CommonOpts& opts) {
    if (opts.kind == "series") {
        usage_error("--kind series is already a return series; nothing to compute");
    }
    const int interval = opts.interval_hours > 0 ? opts.interval_hours : 5;
    const LoadedReturns returns = load_returns(opts, interval);

    TableHandle table{};
    table.ptr = hl_table_new();
    for (const char* name : {"index", "timestamp", "value"}) {
        check(hl_table_add_column(table, name));
    }
    for (std::size_t i = 0; i < returns.values.size(); ++i) {
        const double row[3] = {static_cast<double>(i),
                               static_cast<double>(returns.timestamps[i]), returns.values[i]};
        check(hl_table_add_row(table, row, 3));
    }
    emit_table(table, opts, common_config_string("returns", opts, interval));
    return 0;
}

int cmd_dfa(const CommonOpts& opts, const DfaOpts& dfa_opts) {
    const int interval = opts.interval_hours > 0 ? opts.interval_hours : 5;
    const LoadedReturns returns = load_returns(opts, interval);

    const hl_dfa_config config = make_dfa_config(dfa_opts);
    hl_hurst_estimate estimate;
    check(hl_hurst_dfa(returns.values.data(), returns.values.size(), &config, &estimate));

    TableHandle table{};
    table.ptr = hl_table_new();
    check(hl_table_add_column(table, "scale"));
    check(hl_table_add_column(table, "fluctuation"));
    for (std::size_t i = 0; i < estimate.n_points; ++i) {
        const double row[2] = {static_cast<double>(estimate.scale[i]),
                               estimate.fluctuation[i]};
        check(hl_table_add_row(table, row, 2));
    }

    std::ostringstream comment;
    comment << common_config_string("dfa", opts, interval)
            << dfa_config_string(dfa_opts, resolve_scales_for(returns.values.size(), dfa_opts))
            << " n=" << returns.values.size() << " h=" << estimate.h
            << " intercept=" << estimate.intercept << " r_squared=" << estimate.r_squared;
    emit_table(table, opts, comment.str());
    return 0;
}

int cmd_rolling_hurst(const CommonOpts& opts, const DfaOpts& dfa_opts,
                      const RollingOpts& rolling) {
    const std::vector<int> intervals = requested_intervals(opts);
    const hl_dfa_config config = make_dfa_config(dfa_opts);

    for (const int interval : intervals) {
        const LoadedReturns returns = load_returns(opts, interval);
        HurstSeriesHandle series;
        check(hl_rolling_hurst(returns.values.data(), returns.values.size(), rolling.window,
                               rolling.step, &config, rolling.threads, series.out()));

        TableHandle table{};
        table.ptr = hl_table_new();
        for (const char* name : {"offset", "timestamp", "h", "intercept", "r_squared"}) {
            check(hl_table_add_column(table, name));
        }
        const std::size_t count = hl_hurst_series_count(series);
        const bool stamp_at_end = rolling.alignment == "window-end";
        for (std::size_t k = 0; k < count; ++k) {
            std::size_t offset = 0;
            int missing = 0;
            hl_hurst_estimate estimate;
            check(hl_hurst_series_get(series, k, &offset, &missing, &estimate));
            const std::size_t stamp_index = stamp_at_end ? offset + rolling.window - 1 : offset;
            // epoch seconds when the input carries timestamps, else the index
            const double stamp = returns.has_timestamps()
                                     ? static_cast<double>(returns.timestamps[stamp_index])
                                     : static_cast<double>(stamp_index);
            const double row[5] = {static_cast<double>(offset), stamp,
                                   missing ? kMissing : estimate.h,
                                   missing ? kMissing : estimate.intercept,
                                   missing ? kMissing : estimate.r_squared};
            check(hl_table_add_row(table, row, 5));
        }

        std::ostringstream comment;
        comment << common_config_string("rolling-hurst", opts, interval)
                << dfa_config_string(dfa_opts, resolve_scales_for(rolling.window, dfa_opts))
                << " window=" << rolling.window << " step=" << rolling.step
                << " alignment=" << rolling.alignment;
        const std::string path =
            intervals.size() > 1 ? with_suffix(opts.output, interval) : opts.output;
        emit_table(table, opts, comment.str(), path);
    }
    return 0;
}

struct SpearmanOpts {
    std::string hurst_table;
    std::string covariate;
    std::size_t hurst_window = 500;
    std::size_t window = 500;
    std::size_t step = 1;
    std::string alignment = "window-end";
};

int cmd_spearman(const CommonOpts& opts, const SpearmanOpts& sp) {
    TableHandle hurst;
    check(hl_table_read_csv_file(sp.hurst_table.c_str(), hurst.out()));

    // rolling-hurst schema: offset,timestamp,h,intercept,r_squared
    const std::size_t offset_col = 0;
    const std::size_t h_col = 2;
    const std::size_t n_rows = hl_table_n_rows(hurst);
    if (n_rows == 0) throw CliError{1, sp.hurst_table + ": empty hurst table"};
    if (hl_table_n_cols(hurst) < 3) {
        throw CliError{1, sp.hurst_table + ": expected the rolling-hurst schema "
                          "offset,timestamp,h,intercept,r_squared"};
    }

    std::vector<double> h_values(n_rows);
    std::vector<std::size_t> offsets(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        double value = 0.0;
        int missing = 0;
        check(hl_table_cell(hurst, r, offset_col, &value, &missing));
        if (missing) throw CliError{1, sp.hurst_table + ": missing offset cell"};
        offsets[r] = static_cast<std::size_t>(value);
        check(hl_table_cell(hurst, r, h_col, &value, &missing));
        h_values[r] = missing ? kMissing : value;
    }

    const std::vector<double> covariate = load_series_file(sp.covariate);

    // Pair H with the covariate: an equal-length covariate is taken as
    // already aligned; otherwise it lives on the returns grid and is indexed
    // through the window offsets.
    std::vector<double> paired_cov(n_rows);
    if (covariate.size() == n_rows) {
        paired_cov = covariate;
    } else {
        const std::size_t shift =
            sp.alignment == "window-start" ? 0 : sp.hurst_window - 1;
        const std::size_t required = offsets.back() + shift + 1;
        if (covariate.size() < required) {
            throw CliError{1, "alignment failed: covariate has " +
                                  std::to_string(covariate.size()) +
                                  " values but the hurst table requires " +
                                  std::to_string(required) + " (or exactly " +
                                  std::to_string(n_rows) + " pre-aligned values)"};
        }
        for (std::size_t r = 0; r < n_rows; ++r) {
            paired_cov[r] = covariate[offsets[r] + shift];
        }
    }

    // drop missing pairs before correlating
    std::vector<double> x, y;
    x.reserve(n_rows);
    y.reserve(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (std::isnan(h_values[r]) || std::isnan(paired_cov[r])) continue;
        x.push_back(h_values[r]);
        y.push_back(paired_cov[r]);
    }
    if (x.size() < 3) throw CliError{1, "fewer than 3 usable (H, covariate) pairs"};

    double whole_period = 0.0;
    check(hl_spearman_rho(x.data(), y.data(), x.size(), &whole_period));
    std::cerr << "whole-period rho = " << whole_period << " over " << x.size() << " pairs\n";

    const std::size_t window = std::min(sp.window, x.size());
    TableHandle rolling;
    check(hl_rolling_spearman(x.data(), y.data(), x.size(), window, sp.step, rolling.out()));

    std::ostringstream comment;
    comment << "hurstlab spearman hurst_table=" << sp.hurst_table
            << " covariate=" << sp.covariate << " alignment=" << sp.alignment
            << " hurst_window=" << sp.hurst_window << " window=" << window
            << " step=" << sp.step << " pairs=" << x.size()
            << " whole_period_rho=" << whole_period << " format=" << opts.format;
    emit_table(rolling, opts, comment.str());
    return 0;
}

struct SynthOpts {
    std::string generator = "fgn";
    std::uint64_t n = 10000;
    double h = 0.5;
    double phi = 0.0;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::string> segments;
    std::string format = "csv";
    std::string output;
};

hl_generator_spec parse_segment(const std::string& text) {
    // kind:n:param:sigma:seed with param = h for fgn, phi for ar1
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(':', start);
        parts.push_back(text.substr(start, pos == std::string::npos ? pos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts.size() != 5) {
        usage_error("--segment expects kind:n:param:sigma:seed, got '" + text + "'");
    }
    hl_generator_spec spec{};
    if (parts[0] == "white-noise") {
        spec.kind = HL_GEN_WHITE_NOISE;
    } else if (parts[0] == "fgn") {
        spec.kind = HL_GEN_FGN;
    } else if (parts[0] == "ar1") {
        spec.kind = HL_GEN_AR1;
    } else {
        usage_error("unknown segment kind '" + parts[0] + "'");
    }
    try {
        spec.n = std::stoull(parts[1]);
        const double param = std::stod(parts[2]);
        spec.h = spec.kind == HL_GEN_FGN ? param : 0.5;
        spec.phi = spec.kind == HL_GEN_AR1 ? param : 0.0;
        spec.sigma = std::stod(parts[3]);
        spec.seed = std::stoull(parts[4]);
    } catch (const std::exception&) {
        usage_error("cannot parse segment '" + text + "'");
    }
    return spec;
}

int cmd_synth(const SynthOpts& opts) {
    std::vector<hl_generator_spec> specs;
    if (!opts.segments.empty()) {
        for (const std::string& segment : opts.segments) specs.push_back(parse_segment(segment));
    } else {
        hl_generator_spec spec{};
        if (opts.generator == "white-noise") {
            spec.kind = HL_GEN_WHITE_NOISE;
        } else if (opts.generator == "fgn") {
            spec.kind = HL_GEN_FGN;
        } else {
            spec.kind = HL_GEN_AR1;
        }
        spec.n = opts.n;
        spec.h = opts.h;
        spec.phi = opts.phi;
        spec.sigma = opts.sigma;
        spec.seed = opts.seed;
        specs.push_back(spec);
    }
    std::uint64_t total = 0;
    for (const auto& spec : specs) total += spec.n;

    std::vector<double> values(total);
    check(hl_synth_regime_concat(specs.data(), specs.size(), values.data()));

    TableHandle table{};
    table.ptr = hl_table_new();
    check(hl_table_add_column(table, "value"));
    for (const double v : values) check(hl_table_add_row(table, &v, 1));

    std::ostringstream comment;
    comment << "hurstlab synth";
    if (!opts.segments.empty()) {
        for (const std::string& segment : opts.segments) comment << " segment=" << segment;
    } else {
        comment << " generator=" << opts.generator << " n=" << opts.n;
        if (opts.generator == "fgn") comment << " hurst=" << opts.h;
        if (opts.generator == "ar1") comment << " phi=" << opts.phi;
        comment << " sigma=" << opts.sigma << " seed=" << opts.seed;
    }
    comment << " format=" << opts.format;

    CommonOpts common;
    common.format = opts.format;
    common.output = opts.output;
    emit_table(table, common, comment.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Long-memory analysis of price series: resampling, moments, "
                 "DFA Hurst estimation and rank correlation"};
    app.require_subcommand(1);
    app.fallthrough();
    // flags beat config-file values, which beat compiled defaults; keys live
    // under a [subcommand] section in the file
    app.set_config("--config", "", "Read option defaults from an INI/TOML file");
    app.get_formatter()->column_width(30);

    CommonOpts ingest_opts;
    CLI::App* ingest = app.add_subcommand("ingest-check", "Parse an input file and summarize it");
    add_common_options(ingest, ingest_opts, false);

    CommonOpts stats_opts;
    CLI::App* stats = app.add_subcommand("stats", "Descriptive statistics of returns");
    add_common_options(stats, stats_opts);

    CommonOpts returns_opts;
    CLI::App* returns = app.add_subcommand("returns", "Log returns on the sampling grid");
    add_common_options(returns, returns_opts);

    CommonOpts dfa_common;
    DfaOpts dfa_opts;
    CLI::App* dfa = app.add_subcommand("dfa", "Whole-series DFA fit and per-scale fluctuations");
    add_common_options(dfa, dfa_common);
    add_dfa_options(dfa, dfa_opts);

    CommonOpts rolling_common;
    DfaOpts rolling_dfa;
    RollingOpts rolling_opts;
    CLI::App* rolling =
        app.add_subcommand("rolling-hurst", "Sliding-window Hurst exponent trajectory");
    add_common_options(rolling, rolling_common);
    add_dfa_options(rolling, rolling_dfa);
    add_rolling_options(rolling, rolling_opts);

    CommonOpts spearman_common;
    SpearmanOpts spearman_opts;
    CLI::App* spearman = app.add_subcommand(
        "spearman", "Spearman's rho between a Hurst trajectory and a covariate");
    spearman->add_option("--hurst-table", spearman_opts.hurst_table,
                         "CSV written by rolling-hurst")
        ->required();
    spearman->add_option("--covariate", spearman_opts.covariate,
                         "Single-column covariate series (e.g. turnover)")
        ->required();
    spearman->add_option("--hurst-window", spearman_opts.hurst_window,
                         "Window used when the hurst table was produced")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    spearman->add_option("--window", spearman_opts.window, "Rolling rho window")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    spearman->add_option("--step", spearman_opts.step, "Rolling rho step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    spearman->add_option("--alignment", spearman_opts.alignment,
                         "Covariate index for each window")
        ->check(CLI::IsMember({"window-end", "window-start"}))
        ->capture_default_str();
    spearman->add_option("--format", spearman_common.format, "Output table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    spearman->add_option("--output", spearman_common.output, "Output path (default: stdout)");

    SynthOpts synth_opts;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic series");
    synth->add_option("--generator", synth_opts.generator, "Generator kind")
        ->check(CLI::IsMember({"white-noise", "fgn", "ar1"}))
        ->capture_default_str();
    synth->add_option("--n", synth_opts.n, "Series length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--hurst", synth_opts.h, "Hurst exponent for fgn, in (0, 1)")
        ->capture_default_str();
    synth->add_option("--phi", synth_opts.phi, "AR(1) coefficient, in (-1, 1)")
        ->capture_default_str();
    synth->add_option("--sigma", synth_opts.sigma, "Innovation standard deviation")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    synth->add_option("--seed", synth_opts.seed, "PRNG seed")->capture_default_str();
    synth->add_option("--segment", synth_opts.segments,
                      "Concatenated segment kind:n:param:sigma:seed (repeatable)");
    synth->add_option("--format", synth_opts.format, "Output table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    synth->add_option("--output", synth_opts.output, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (ingest->parsed()) return cmd_ingest_check(ingest_opts);
        if (stats->parsed()) return cmd_stats(stats_opts);
        if (returns->parsed()) return cmd_returns(returns_opts);
        if (dfa->parsed()) return cmd_dfa(dfa_common, dfa_opts);
        if (rolling->parsed()) return cmd_rolling_hurst(rolling_common, rolling_dfa, rolling_opts);
        if (spearman->parsed()) return cmd_spearman(spearman_common, spearman_opts);
        if (synth->parsed()) {
            if (synth_opts.segments.empty() && synth_opts.generator == "fgn" &&
                !(synth_opts.h > 0.0 && synth_opts.h < 1.0)) {
                usage_error("--hurst must lie strictly inside (0, 1)");
            }
            if (synth_opts.segments.empty() && synth_opts.generator == "ar1" &&
                !(std::abs(synth_opts.phi) < 1.0)) {
                usage_error("--phi must lie strictly inside (-1, 1)");
            }
            return cmd_synth(synth_opts);
        }
    } catch (const CliError& e) {
        std::cerr << (e.exit_code == 2 ? "usage error: " : "error: ") << e.message << '\n';
        return e.exit_code;
    }
    return 0;
}
