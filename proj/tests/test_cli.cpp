#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "cli.hpp"

using namespace uwofdm;
using namespace uwofdm::cli;

namespace {

ParseResult parse(std::initializer_list<const char*> args)
{
    std::vector<const char*> argv{"uwofdm"};
    argv.insert(argv.end(), args.begin(), args.end());
    return parse_arguments(static_cast<int>(argv.size()), argv.data());
}

bool same_spec(const ExperimentSpec& a, const ExperimentSpec& b)
{
    return a.system.num_subcarriers == b.system.num_subcarriers &&
           a.system.constellation_order == b.system.constellation_order &&
           a.system.bandwidth_hz == b.system.bandwidth_hz &&
           a.system.carrier_hz == b.system.carrier_hz && a.system.num_taps == b.system.num_taps &&
           a.system.pilots_per_band == b.system.pilots_per_band &&
           a.system.doppler_mode == b.system.doppler_mode &&
           a.system.channel_fixed == b.system.channel_fixed && a.snr_db_axis == b.snr_db_axis &&
           a.doppler_axis == b.doppler_axis && a.subblock_axis == b.subblock_axis &&
           a.subband_axis == b.subband_axis && a.algorithm_axis == b.algorithm_axis &&
           a.step_size_axis == b.step_size_axis && a.blocks_per_point == b.blocks_per_point &&
           a.master_seed == b.master_seed && a.workers == b.workers;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    REQUIRE(bool(out));
    out << text;
}

} // namespace

TEST_CASE("numbers render in round-trip-exact shortest form")
{
    for (double value : {0.0, 1.0, 15.0, 0.5, 0.007, 2.5e-4, 1.0 / 3.0, 6.02214076e23,
                         -1.25e-7, 4096.0})
        CHECK(parse_number(format_number(value)) == value);
    CHECK(format_number(15.0) == "15");
    CHECK(format_number(2.5e-4) == "0.00025");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(std::isnan(parse_number(format_number(std::numeric_limits<double>::quiet_NaN()))));
}

TEST_CASE("number parsing accepts inf and rejects junk")
{
    CHECK(parse_number("inf") == std::numeric_limits<double>::infinity());
    CHECK(parse_number("-inf") == -std::numeric_limits<double>::infinity());
    CHECK(std::isnan(parse_number("nan")));
    CHECK(parse_number("1e-4") == 1e-4);
    CHECK_THROWS_AS(parse_number(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_number("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_number("ten"), std::invalid_argument);
}

TEST_CASE("config text splits into ordered key-value pairs")
{
    const auto entries = parse_config_text("# a comment\n"
                                           "k = 256\n"
                                           "\n"
                                           "snr_db = 5,10 # trailing comment\n"
                                           "  seed=42  \n");
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].first == "k");
    CHECK(entries[0].second == "256");
    CHECK(entries[1].first == "snr_db");
    CHECK(entries[1].second == "5,10");
    CHECK(entries[2].first == "seed");
    CHECK(entries[2].second == "42");

    CHECK_THROWS_AS(parse_config_text("no equals sign"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("= value"), std::invalid_argument);
}

TEST_CASE("every configuration key lands on the right field")
{
    ExperimentSpec spec;
    apply_config_entry(spec, "k", "256");
    apply_config_entry(spec, "q", "8");
    apply_config_entry(spec, "bandwidth_hz", "2048");
    apply_config_entry(spec, "carrier_hz", "12000");
    apply_config_entry(spec, "taps", "16");
    apply_config_entry(spec, "pilots", "16");
    apply_config_entry(spec, "doppler_mode", "narrowband");
    apply_config_entry(spec, "channel_fixed", "true");
    apply_config_entry(spec, "snr_db", "5, 10, inf");
    apply_config_entry(spec, "doppler", "1e-4,2e-4");
    apply_config_entry(spec, "subblocks", "2,4");
    apply_config_entry(spec, "subbands", "1,2");
    apply_config_entry(spec, "algorithms", "single-fft, eigen-wideband");
    apply_config_entry(spec, "mu", "0.005");
    apply_config_entry(spec, "blocks", "42");
    apply_config_entry(spec, "seed", "9000000000000000001");
    apply_config_entry(spec, "workers", "3");

    CHECK(spec.system.num_subcarriers == 256);
    CHECK(spec.system.constellation_order == 8);
    CHECK(spec.system.bandwidth_hz == 2048.0);
    CHECK(spec.system.carrier_hz == 12000.0);
    CHECK(spec.system.num_taps == 16);
    CHECK(spec.system.pilots_per_band == 16);
    CHECK(spec.system.doppler_mode == DopplerMode::Narrowband);
    CHECK(spec.system.channel_fixed);
    REQUIRE(spec.snr_db_axis.size() == 3);
    CHECK(spec.snr_db_axis[2] == std::numeric_limits<double>::infinity());
    CHECK(spec.doppler_axis == std::vector<double>{1e-4, 2e-4});
    CHECK(spec.subblock_axis == std::vector<int>{2, 4});
    CHECK(spec.subband_axis == std::vector<int>{1, 2});
    CHECK(spec.algorithm_axis ==
          std::vector<Algorithm>{Algorithm::SingleFft, Algorithm::EigenWideband});
    CHECK(spec.step_size_axis == std::vector<double>{0.005});
    CHECK(spec.blocks_per_point == 42);
    CHECK(spec.master_seed == 9000000000000000001ULL);
    CHECK(spec.workers == 3);

    apply_config_entry(spec, "version", "anything"); // informational, ignored
    apply_config_entry(spec, "bit_mapping", "gray");
    CHECK_THROWS_AS(apply_config_entry(spec, "bit_mapping", "natural"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_entry(spec, "kk", "1"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_entry(spec, "blocks", "many"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_entry(spec, "algorithms", "fft"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_entry(spec, "channel_fixed", "maybe"), std::invalid_argument);
}

TEST_CASE("presets fill the three canned experiments")
{
    ExperimentSpec fig2;
    apply_preset(fig2, "fig2");
    CHECK(fig2.system.num_subcarriers == 1024);
    CHECK(fig2.system.constellation_order == 4);
    CHECK(fig2.system.bandwidth_hz == 4096.0);
    CHECK(fig2.system.carrier_hz == 6000.0);
    CHECK(fig2.system.num_taps == 48);
    CHECK(fig2.system.pilots_per_band == 32);
    CHECK(fig2.system.doppler_mode == DopplerMode::Wideband);
    CHECK(fig2.snr_db_axis == std::vector<double>{5, 10, 15, 20, 25, 30});
    CHECK(fig2.doppler_axis == std::vector<double>{1.5e-4, 2.5e-4});
    CHECK(fig2.subblock_axis == std::vector<int>{8});
    CHECK(fig2.algorithm_axis == std::vector<Algorithm>{Algorithm::SingleFft, Algorithm::Eigen,
                                                        Algorithm::Adaptive});
    CHECK(fig2.step_size_axis == std::vector<double>{0.005, 0.05});
    CHECK(fig2.blocks_per_point == 500);

    ExperimentSpec fig3;
    apply_preset(fig3, "fig3");
    CHECK(fig3.system.pilots_per_band == 128);
    CHECK(fig3.snr_db_axis == std::vector<double>{25});
    CHECK(fig3.doppler_axis == std::vector<double>{1e-4, 2e-4, 3e-4, 4e-4, 5e-4});
    CHECK(fig3.subblock_axis == std::vector<int>{1, 2, 4, 8, 16, 32});
    CHECK(fig3.algorithm_axis == std::vector<Algorithm>{Algorithm::Eigen});

    ExperimentSpec fig4;
    apply_preset(fig4, "fig4");
    CHECK(fig4.system.pilots_per_band == 32);
    CHECK(fig4.doppler_axis == std::vector<double>{5e-4});
    CHECK(fig4.subblock_axis == std::vector<int>{8});
    CHECK(fig4.subband_axis == std::vector<int>{1, 2, 4, 8});
    CHECK(fig4.algorithm_axis == std::vector<Algorithm>{Algorithm::EigenWideband});

    ExperimentSpec bad;
    CHECK_THROWS_AS(apply_preset(bad, "fig5"), std::invalid_argument);
}

TEST_CASE("flags override config which overrides preset")
{
    const std::string config_path = "/tmp/uwofdm_precedence.cfg";
    write_file(config_path, "blocks = 100\npilots = 64\n");

    const ParseResult preset_only = parse({"--preset", "fig3"});
    REQUIRE(preset_only.invocation.has_value());
    CHECK(preset_only.invocation->spec.blocks_per_point == 500);
    CHECK(preset_only.invocation->spec.system.pilots_per_band == 128);

    const ParseResult with_config =
        parse({"--preset", "fig3", "--config", config_path.c_str()});
    REQUIRE(with_config.invocation.has_value());
    CHECK(with_config.invocation->spec.blocks_per_point == 100);
    CHECK(with_config.invocation->spec.system.pilots_per_band == 64);
    CHECK(with_config.invocation->spec.snr_db_axis == std::vector<double>{25}); // preset kept

    const ParseResult with_flags =
        parse({"--preset", "fig3", "--config", config_path.c_str(), "--blocks", "7"});
    REQUIRE(with_flags.invocation.has_value());
    CHECK(with_flags.invocation->spec.blocks_per_point == 7);
    CHECK(with_flags.invocation->spec.system.pilots_per_band == 64);

    std::remove(config_path.c_str());
}

TEST_CASE("argument parsing covers help, defaults, and errors")
{
    const ParseResult help = parse({"--help"});
    CHECK_FALSE(help.invocation.has_value());
    CHECK(help.exit_code == 0);

    const ParseResult bad_flag = parse({"--frobnicate"});
    CHECK_FALSE(bad_flag.invocation.has_value());
    CHECK(bad_flag.exit_code != 0);

    const ParseResult bad_preset = parse({"--preset", "fig9"});
    CHECK_FALSE(bad_preset.invocation.has_value());
    CHECK(bad_preset.exit_code != 0);

    const ParseResult defaults = parse({});
    REQUIRE(defaults.invocation.has_value());
    CHECK(defaults.invocation->output_path == "./results.csv");
    CHECK_FALSE(defaults.invocation->verbose);
    CHECK(same_spec(defaults.invocation->spec, ExperimentSpec{}));

    const ParseResult flags = parse({"--snr", "5,inf", "--algorithm", "eigen,adaptive", "--mu",
                                     "0.01", "--mode", "narrowband", "--channel-fixed", "--out",
                                     "/tmp/x.csv", "-v"});
    REQUIRE(flags.invocation.has_value());
    const ExperimentSpec& spec = flags.invocation->spec;
    REQUIRE(spec.snr_db_axis.size() == 2);
    CHECK(spec.snr_db_axis[1] == std::numeric_limits<double>::infinity());
    CHECK(spec.algorithm_axis ==
          std::vector<Algorithm>{Algorithm::Eigen, Algorithm::Adaptive});
    CHECK(spec.step_size_axis == std::vector<double>{0.01});
    CHECK(spec.system.doppler_mode == DopplerMode::Narrowband);
    CHECK(spec.system.channel_fixed);
    CHECK(flags.invocation->output_path == "/tmp/x.csv");
    CHECK(flags.invocation->verbose);

    CHECK_THROWS_AS(parse({"--algorithm", "fft"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"--config", "/tmp/definitely_missing.cfg"}), std::invalid_argument);
}

TEST_CASE("the CSV header re-describes the exact run")
{
    ExperimentSpec spec;
    apply_preset(spec, "fig2");
    spec.master_seed = 77;
    spec.workers = 2;
    spec.system.channel_fixed = true;

    std::ostringstream out;
    write_csv_header(out, spec);
    const std::string header = out.str();

    std::string config_text;
    std::string columns;
    std::istringstream lines(header);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("# ", 0) == 0)
            config_text += line.substr(2) + "\n";
        else
            columns = line;
    }
    CHECK(columns == "snr_db,doppler_a,M,N,I,algorithm,mu,blocks,bit_errors,total_bits,ber,"
                     "lambda_min_mean,degenerate_count");

    ExperimentSpec rebuilt;
    for (const auto& [key, value] : parse_config_text(config_text))
        apply_config_entry(rebuilt, key, value);
    CHECK(same_spec(rebuilt, spec));
}

TEST_CASE("CSV rows follow the pinned column order")
{
    ExperimentSpec spec;
    spec.system.pilots_per_band = 32;

    BerRecord record;
    record.axis.snr_db = 15.0;
    record.axis.doppler_scale = 2.5e-4;
    record.axis.subblocks = 8;
    record.axis.subbands = 2;
    record.axis.algorithm = Algorithm::EigenWideband;
    record.axis.step_size = 0.0;
    record.blocks = 10;
    record.bit_errors = 7;
    record.total_bits = 1000;
    record.ber = 0.007;
    record.lambda_min_mean = 0.5;
    record.degenerate_count = 2;

    std::ostringstream out;
    write_csv_row(out, spec, record);
    CHECK(out.str() == "15,0.00025,8,2,32,eigen-wideband,0,10,7,1000,0.007,0.5,2\n");

    record.axis.algorithm = Algorithm::SingleFft;
    record.lambda_min_mean = std::numeric_limits<double>::quiet_NaN();
    std::ostringstream nan_row;
    write_csv_row(nan_row, spec, record);
    CHECK(nan_row.str() == "15,0.00025,8,2,32,single-fft,0,10,7,1000,0.007,nan,2\n");
}

TEST_CASE("a run rebuilt from its own CSV header reproduces the file")
{
    const std::string first_path = "/tmp/uwofdm_roundtrip_1.csv";
    const std::string second_path = "/tmp/uwofdm_roundtrip_2.csv";
    const std::string config_path = "/tmp/uwofdm_roundtrip.cfg";

    std::vector<const char*> argv{"uwofdm",      "--k",     "64",    "--taps",   "4",
                                  "--pilots",    "8",       "--snr", "15",       "--doppler",
                                  "2e-4",        "--subblocks", "4", "--algorithm", "eigen",
                                  "--blocks",    "5",       "--seed", "3",       "--workers",
                                  "1",           "--out",   first_path.c_str()};
    REQUIRE(run(static_cast<int>(argv.size()), argv.data()) == 0);

    const std::string first = read_file(first_path);
    std::string config_text;
    std::istringstream lines(first);
    std::string line;
    int data_rows = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("# ", 0) == 0)
            config_text += line.substr(2) + "\n";
        else if (!line.empty() && line.find("snr_db,") != 0)
            ++data_rows;
    }
    CHECK(data_rows == 1);
    write_file(config_path, config_text);

    std::vector<const char*> rerun{"uwofdm", "--config", config_path.c_str(), "--out",
                                   second_path.c_str()};
    REQUIRE(run(static_cast<int>(rerun.size()), rerun.data()) == 0);
    CHECK(read_file(second_path) == first);

    std::remove(first_path.c_str());
    std::remove(second_path.c_str());
    std::remove(config_path.c_str());
}

TEST_CASE("the front end reports failures through the exit code")
{
    std::vector<const char*> bad_out{"uwofdm", "--blocks", "1", "--out",
                                     "/nonexistent_dir/x.csv"};
    CHECK(run(static_cast<int>(bad_out.size()), bad_out.data()) == 1);

    std::vector<const char*> bad_spec{"uwofdm", "--k", "48", "--out", "/tmp/uwofdm_bad.csv"};
    CHECK(run(static_cast<int>(bad_spec.size()), bad_spec.data()) == 1);
}
