#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "uwofdm/version.hpp"

namespace uwofdm::cli {

namespace {

std::string trim(std::string_view text)
{
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos)
        return {};
    const auto end = text.find_last_not_of(" \t\r");
    return std::string{text.substr(begin, end - begin + 1)};
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::string current;
    std::istringstream stream(text);
    while (std::getline(stream, current, ','))
        items.push_back(trim(current));
    return items;
}

int parse_int(const std::string& text)
{
    int value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("expected an integer, got '" + text + "'");
    return value;
}

std::uint64_t parse_u64(const std::string& text)
{
    std::uint64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("expected an unsigned integer, got '" + text + "'");
    return value;
}

bool parse_bool(const std::string& text)
{
    if (text == "0" || text == "false")
        return false;
    if (text == "1" || text == "true")
        return true;
    throw std::invalid_argument("expected a boolean (0/1/true/false), got '" + text + "'");
}

std::vector<double> parse_number_list(const std::string& text)
{
    std::vector<double> values;
    for (const std::string& item : split_list(text))
        values.push_back(parse_number(item));
    if (values.empty())
        throw std::invalid_argument("expected a nonempty list");
    return values;
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> values;
    for (const std::string& item : split_list(text))
        values.push_back(parse_int(item));
    if (values.empty())
        throw std::invalid_argument("expected a nonempty list");
    return values;
}

std::vector<Algorithm> parse_algorithm_list(const std::string& text)
{
    std::vector<Algorithm> values;
    for (const std::string& item : split_list(text)) {
        const auto algorithm = algorithm_from_name(item);
        if (!algorithm)
            throw std::invalid_argument("unknown algorithm '" + item + "'");
        values.push_back(*algorithm);
    }
    if (values.empty())
        throw std::invalid_argument("expected at least one algorithm");
    return values;
}

std::string_view doppler_mode_name(DopplerMode mode)
{
    switch (mode) {
    case DopplerMode::TimeInvariant:
        return "time-invariant";
    case DopplerMode::Narrowband:
        return "narrowband";
    case DopplerMode::Wideband:
        return "wideband";
    }
    throw std::invalid_argument("unknown Doppler mode");
}

DopplerMode doppler_mode_from_name(const std::string& name)
{
    if (name == "time-invariant")
        return DopplerMode::TimeInvariant;
    if (name == "narrowband")
        return DopplerMode::Narrowband;
    if (name == "wideband")
        return DopplerMode::Wideband;
    throw std::invalid_argument("unknown Doppler mode '" + name + "'");
}

template <typename T, typename Fn>
std::string join(const std::vector<T>& values, Fn&& render)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0)
            out += ',';
        out += render(values[i]);
    }
    return out;
}

} // namespace

std::string format_number(double value)
{
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{})
        throw std::runtime_error("format_number: conversion failed");
    return {buf, end};
}

double parse_number(const std::string& text)
{
    if (text.empty())
        throw std::invalid_argument("expected a number, got an empty string");
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + text.size())
        throw std::invalid_argument("expected a number, got '" + text + "'");
    return value;
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text)
{
    std::vector<std::pair<std::string, std::string>> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto newline = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, newline == std::string_view::npos ? text.size() - pos
                                                               : newline - pos);
        pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key = trim(std::string_view{stripped}.substr(0, eq));
        const std::string value = trim(std::string_view{stripped}.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        entries.emplace_back(key, value);
    }
    return entries;
}

void apply_config_entry(ExperimentSpec& spec, const std::string& key, const std::string& value)
{
    if (key == "version") {
        return; // informational echo; accepted for round-tripping
    } else if (key == "bit_mapping") {
        if (value != "gray")
            throw std::invalid_argument("bit_mapping: only 'gray' is supported");
    } else if (key == "k") {
        spec.system.num_subcarriers = parse_int(value);
    } else if (key == "q") {
        spec.system.constellation_order = parse_int(value);
    } else if (key == "bandwidth_hz") {
        spec.system.bandwidth_hz = parse_number(value);
    } else if (key == "carrier_hz") {
        spec.system.carrier_hz = parse_number(value);
    } else if (key == "taps") {
        spec.system.num_taps = parse_int(value);
    } else if (key == "pilots") {
        spec.system.pilots_per_band = parse_int(value);
    } else if (key == "doppler_mode") {
        spec.system.doppler_mode = doppler_mode_from_name(value);
    } else if (key == "channel_fixed") {
        spec.system.channel_fixed = parse_bool(value);
    } else if (key == "snr_db") {
        spec.snr_db_axis = parse_number_list(value);
    } else if (key == "doppler") {
        spec.doppler_axis = parse_number_list(value);
    } else if (key == "subblocks") {
        spec.subblock_axis = parse_int_list(value);
    } else if (key == "subbands") {
        spec.subband_axis = parse_int_list(value);
    } else if (key == "algorithms") {
        spec.algorithm_axis = parse_algorithm_list(value);
    } else if (key == "mu") {
        spec.step_size_axis = parse_number_list(value);
    } else if (key == "blocks") {
        spec.blocks_per_point = parse_int(value);
    } else if (key == "seed") {
        spec.master_seed = parse_u64(value);
    } else if (key == "workers") {
        spec.workers = parse_int(value);
    } else {
        throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
}

void apply_config_file(ExperimentSpec& spec, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    for (const auto& [key, value] : parse_config_text(buffer.str()))
        apply_config_entry(spec, key, value);
}

void apply_preset(ExperimentSpec& spec, std::string_view name)
{
    SystemConfig system;
    system.num_subcarriers = 1024;
    system.constellation_order = 4;
    system.bandwidth_hz = 4096.0;
    system.carrier_hz = 6000.0;
    system.num_taps = 48;
    system.doppler_mode = DopplerMode::Wideband;
    spec.blocks_per_point = 500;
    if (name == "fig2") {
        system.pilots_per_band = 32;
        spec.snr_db_axis = {5, 10, 15, 20, 25, 30};
        spec.doppler_axis = {1.5e-4, 2.5e-4};
        spec.subblock_axis = {8};
        spec.subband_axis = {1};
        spec.algorithm_axis = {Algorithm::SingleFft, Algorithm::Eigen, Algorithm::Adaptive};
        spec.step_size_axis = {0.005, 0.05};
    } else if (name == "fig3") {
        system.pilots_per_band = 128;
        spec.snr_db_axis = {25};
        spec.doppler_axis = {1e-4, 2e-4, 3e-4, 4e-4, 5e-4};
        spec.subblock_axis = {1, 2, 4, 8, 16, 32};
        spec.subband_axis = {1};
        spec.algorithm_axis = {Algorithm::Eigen};
        spec.step_size_axis = {0};
    } else if (name == "fig4") {
        system.pilots_per_band = 32;
        spec.snr_db_axis = {5, 10, 15, 20, 25, 30};
        spec.doppler_axis = {5e-4};
        spec.subblock_axis = {8};
        spec.subband_axis = {1, 2, 4, 8};
        spec.algorithm_axis = {Algorithm::EigenWideband};
        spec.step_size_axis = {0};
    } else {
        throw std::invalid_argument("unknown preset '" + std::string{name} + "'");
    }
    spec.system = system;
}

void write_csv_header(std::ostream& out, const ExperimentSpec& spec)
{
    const auto& system = spec.system;
    out << "# version = " << version_string << "\n";
    out << "# bit_mapping = gray\n";
    out << "# k = " << system.num_subcarriers << "\n";
    out << "# q = " << system.constellation_order << "\n";
    out << "# bandwidth_hz = " << format_number(system.bandwidth_hz) << "\n";
    out << "# carrier_hz = " << format_number(system.carrier_hz) << "\n";
    out << "# taps = " << system.num_taps << "\n";
    out << "# pilots = " << system.pilots_per_band << "\n";
    out << "# doppler_mode = " << doppler_mode_name(system.doppler_mode) << "\n";
    out << "# channel_fixed = " << (system.channel_fixed ? 1 : 0) << "\n";
    out << "# snr_db = " << join(spec.snr_db_axis, format_number) << "\n";
    out << "# doppler = " << join(spec.doppler_axis, format_number) << "\n";
    out << "# subblocks = "
        << join(spec.subblock_axis, [](int v) { return std::to_string(v); }) << "\n";
    out << "# subbands = "
        << join(spec.subband_axis, [](int v) { return std::to_string(v); }) << "\n";
    out << "# algorithms = "
        << join(spec.algorithm_axis,
                [](Algorithm a) { return std::string{algorithm_name(a)}; })
        << "\n";
    out << "# mu = " << join(spec.step_size_axis, format_number) << "\n";
    out << "# blocks = " << spec.blocks_per_point << "\n";
    out << "# seed = " << spec.master_seed << "\n";
    out << "# workers = " << spec.workers << "\n";
    out << "snr_db,doppler_a,M,N,I,algorithm,mu,blocks,bit_errors,total_bits,ber,"
           "lambda_min_mean,degenerate_count\n";
}

void write_csv_row(std::ostream& out, const ExperimentSpec& spec, const BerRecord& record)
{
    out << format_number(record.axis.snr_db) << ',' << format_number(record.axis.doppler_scale)
        << ',' << record.axis.subblocks << ',' << record.axis.subbands << ','
        << spec.system.pilots_per_band << ',' << algorithm_name(record.axis.algorithm) << ','
        << format_number(record.axis.step_size) << ',' << record.blocks << ','
        << record.bit_errors << ',' << record.total_bits << ',' << format_number(record.ber)
        << ',' << format_number(record.lambda_min_mean) << ',' << record.degenerate_count
        << '\n';
}

ParseResult parse_arguments(int argc, const char* const* argv)
{
    ParseResult result;
    Invocation invocation;

    CLI::App app{"Monte-Carlo BER sweeps for differential OFDM with partial-FFT combining",
                 "uwofdm"};
    std::string config_path;
    std::string preset;
    std::string mode_name;
    std::vector<std::string> snr_list;
    std::vector<std::string> doppler_list;
    std::vector<std::string> mu_list;
    std::vector<std::string> algorithm_list;
    std::vector<int> subblock_list;
    std::vector<int> subband_list;
    int pilots = 0;
    int blocks = 0;
    int workers = 0;
    int k = 0;
    int q = 0;
    int taps = 0;
    double bandwidth = 0.0;
    double carrier = 0.0;
    std::uint64_t seed = 0;
    bool channel_fixed = false;

    auto* preset_opt =
        app.add_option("--preset", preset, "Canned experiment: fig2, fig3, or fig4")
            ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
    auto* config_opt =
        app.add_option("--config", config_path, "Configuration file (key = value lines)");
    auto* snr_opt =
        app.add_option("--snr", snr_list, "SNR grid in dB (comma separated, inf allowed)")
            ->delimiter(',');
    auto* doppler_opt =
        app.add_option("--doppler", doppler_list, "Doppler scaling factors a")->delimiter(',');
    auto* subblocks_opt =
        app.add_option("--subblocks", subblock_list, "Time segment counts M")->delimiter(',');
    auto* subbands_opt =
        app.add_option("--subbands", subband_list, "Subband counts N (eigen-wideband)")
            ->delimiter(',');
    auto* pilots_opt = app.add_option("--pilots", pilots, "Pilot symbols per band I");
    auto* algorithm_opt =
        app.add_option("--algorithm", algorithm_list,
                       "Receivers: single-fft, eigen, eigen-wideband, adaptive")
            ->delimiter(',');
    auto* mu_opt = app.add_option("--mu", mu_list, "Adaptive step sizes")->delimiter(',');
    auto* blocks_opt = app.add_option("--blocks", blocks, "Monte-Carlo blocks per point");
    auto* seed_opt = app.add_option("--seed", seed, "Master seed");
    auto* workers_opt =
        app.add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");
    app.add_option("--out", invocation.output_path, "Output CSV path")
        ->capture_default_str();
    auto* k_opt = app.add_option("--k", k, "Subcarrier count K (power of two)");
    auto* q_opt = app.add_option("--q", q, "Constellation order Q (power of two)");
    auto* bandwidth_opt = app.add_option("--bandwidth", bandwidth, "Bandwidth B in Hz");
    auto* carrier_opt = app.add_option("--carrier", carrier, "Carrier frequency f_c in Hz");
    auto* taps_opt = app.add_option("--taps", taps, "Channel impulse response length");
    auto* mode_opt =
        app.add_option("--mode", mode_name, "Doppler mode")
            ->check(CLI::IsMember({"time-invariant", "narrowband", "wideband"}));
    auto* fixed_opt = app.add_flag("--channel-fixed", channel_fixed,
                                   "Draw one channel per sweep point instead of per block");
    app.add_flag("-v,--verbose", invocation.verbose, "Report per-point progress on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        result.exit_code = app.exit(e);
        return result;
    }

    ExperimentSpec spec;
    if (preset_opt->count() > 0)
        apply_preset(spec, preset);
    if (config_opt->count() > 0)
        apply_config_file(spec, config_path);

    if (k_opt->count() > 0)
        spec.system.num_subcarriers = k;
    if (q_opt->count() > 0)
        spec.system.constellation_order = q;
    if (bandwidth_opt->count() > 0)
        spec.system.bandwidth_hz = bandwidth;
    if (carrier_opt->count() > 0)
        spec.system.carrier_hz = carrier;
    if (taps_opt->count() > 0)
        spec.system.num_taps = taps;
    if (pilots_opt->count() > 0)
        spec.system.pilots_per_band = pilots;
    if (mode_opt->count() > 0)
        spec.system.doppler_mode = doppler_mode_from_name(mode_name);
    if (fixed_opt->count() > 0)
        spec.system.channel_fixed = channel_fixed;
    if (snr_opt->count() > 0) {
        spec.snr_db_axis.clear();
        for (const std::string& s : snr_list)
            spec.snr_db_axis.push_back(parse_number(s));
    }
    if (doppler_opt->count() > 0) {
        spec.doppler_axis.clear();
        for (const std::string& s : doppler_list)
            spec.doppler_axis.push_back(parse_number(s));
    }
    if (subblocks_opt->count() > 0)
        spec.subblock_axis = subblock_list;
    if (subbands_opt->count() > 0)
        spec.subband_axis = subband_list;
    if (algorithm_opt->count() > 0) {
        spec.algorithm_axis.clear();
        for (const std::string& s : algorithm_list) {
            const auto algorithm = algorithm_from_name(s);
            if (!algorithm)
                throw std::invalid_argument("unknown algorithm '" + s + "'");
            spec.algorithm_axis.push_back(*algorithm);
        }
    }
    if (mu_opt->count() > 0) {
        spec.step_size_axis.clear();
        for (const std::string& s : mu_list)
            spec.step_size_axis.push_back(parse_number(s));
    }
    if (blocks_opt->count() > 0)
        spec.blocks_per_point = blocks;
    if (seed_opt->count() > 0)
        spec.master_seed = seed;
    if (workers_opt->count() > 0)
        spec.workers = workers;

    invocation.spec = spec;
    result.invocation = std::move(invocation);
    return result;
}

int run(int argc, const char* const* argv)
{
    try {
        ParseResult parsed = parse_arguments(argc, argv);
        if (!parsed.invocation)
            return parsed.exit_code;
        Invocation& invocation = *parsed.invocation;
        validate_spec(invocation.spec);

        std::ofstream out(invocation.output_path);
        if (!out) {
            std::cerr << "error: cannot open output file '" << invocation.output_path << "'\n";
            return 1;
        }
        write_csv_header(out, invocation.spec);

        int count = 0;
        run_sweep(invocation.spec, [&](const BerRecord& record) {
            write_csv_row(out, invocation.spec, record);
            out.flush();
            ++count;
            if (invocation.verbose)
                std::cerr << "point " << count << ": snr_db=" << format_number(record.axis.snr_db)
                          << " a=" << format_number(record.axis.doppler_scale)
                          << " M=" << record.axis.subblocks << " N=" << record.axis.subbands
                          << " " << algorithm_name(record.axis.algorithm)
                          << " mu=" << format_number(record.axis.step_size)
                          << " ber=" << format_number(record.ber) << "\n";
        });
        if (!out) {
            std::cerr << "error: write failure on '" << invocation.output_path << "'\n";
            return 1;
        }
        std::cout << "wrote " << count << " records to " << invocation.output_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace uwofdm::cli
