// ppfim command-line front end: mine | bench | dispersion | split-report.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppfim/ppfim.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading: " + path);
  return buffer.str();
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << body;
  if (!out) throw IoError("failed while writing: " + path);
}

// accepts values in (0, 1]
const CLI::Validator UnitInterval(
    [](std::string& value) -> std::string {
      try {
        const double v = std::stod(value);
        if (!(v > 0.0) || v > 1.0) return "value must be in (0, 1]";
      } catch (...) {
        return "value must be a number in (0, 1]";
      }
      return {};
    },
    "FLOAT in (0,1]");

struct KeyFlags {
  int caesar_shift = 5;
  int stream_key = 85;

  ppfim::DoubleEncryptionKey to_key() const {
    ppfim::DoubleEncryptionKey key{caesar_shift, stream_key};
    key.validate();
    return key;
  }
};

// Flags override the PPFIM_* environment variables, which override defaults.
void add_key_flags(CLI::App* cmd, KeyFlags& flags) {
  cmd->add_option("--caesar-shift", flags.caesar_shift, "Caesar shift in [1, 127]")
      ->envname("PPFIM_CAESAR_SHIFT")
      ->check(CLI::Range(1, 127))
      ->capture_default_str();
  cmd->add_option("--stream-key", flags.stream_key, "7-bit XOR stream key in [0, 127]")
      ->envname("PPFIM_STREAM_KEY")
      ->check(CLI::Range(0, 127))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ppfim — frequent-itemset and association-rule mining over encrypted,\n"
      "horizontally partitioned transaction databases, simulated in one process"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read option defaults from an INI/TOML file");

  // ---- mine -----------------------------------------------------------------
  auto* mine = app.add_subcommand("mine", "Run the full pipeline on a basket file");
  struct {
    std::string input;
    std::string out;
    double sigma = 0.5;
    double min_conf = 0.5;
    std::size_t ics = 4;
    std::size_t owners = 1;
    std::uint64_t seed = 42;
    std::string mode = "union";
    std::size_t max_level = 0;
    KeyFlags key;
  } mine_args;
  mine->add_option("--input", mine_args.input, "Basket file (one transaction per line)")->required();
  mine->add_option("--sigma", mine_args.sigma, "Relative support threshold")
      ->check(UnitInterval)
      ->capture_default_str();
  mine->add_option("--min-conf", mine_args.min_conf, "Rule confidence threshold")
      ->check(UnitInterval)
      ->capture_default_str();
  mine->add_option("--ics", mine_args.ics, "Number of intermediate servers (partitions)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mine->add_option("--owners", mine_args.owners, "Number of data owners the input represents")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mine->add_option("--seed", mine_args.seed, "Partitioning seed")->capture_default_str();
  mine->add_option("--mode", mine_args.mode, "Aggregation mode")
      ->check(CLI::IsMember({"union", "sum"}))
      ->capture_default_str();
  mine->add_option("--max-level", mine_args.max_level, "Cap on itemset size (0 = unlimited)")
      ->capture_default_str();
  add_key_flags(mine, mine_args.key);
  mine->add_option("--out", mine_args.out, "Report path (default: stdout)");

  mine->callback([&] {
    ppfim::PipelineConfig config;
    config.n_ics = mine_args.ics;
    config.sigma = mine_args.sigma;
    config.min_conf = mine_args.min_conf;
    config.mode = ppfim::aggregation_mode_from_string(mine_args.mode);
    config.key = mine_args.key.to_key();
    config.seed = mine_args.seed;
    config.n_data_owners = mine_args.owners;
    config.max_level = mine_args.max_level;

    const auto db = ppfim::parse_basket_file(read_file(mine_args.input));
    const auto run = ppfim::run_pipeline(db, config);
    write_output(mine_args.out, ppfim::format_mine_report(config, run.result, run.metrics));
  });

  // ---- bench ----------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Sweep a (t, c, sigma, tx) grid on synthetic data");
  ppfim::BenchOptions bench_options;
  std::string bench_mode = "union";
  std::string bench_out;
  KeyFlags bench_key;
  bench->add_option("--tx", bench_options.tx_grid, "Transaction counts (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--ics", bench_options.ics_grid, "Server counts (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--sigma", bench_options.sigma_grid, "Support thresholds (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--owners", bench_options.owners_grid, "Data-owner counts (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--items", bench_options.n_items, "Synthetic alphabet size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--max-len", bench_options.max_len, "Max synthetic transaction length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bench_options.seed, "Base seed for the grid")->capture_default_str();
  bench->add_option("--mode", bench_mode, "Aggregation mode")
      ->check(CLI::IsMember({"union", "sum"}))
      ->capture_default_str();
  bench->add_option("--min-conf", bench_options.min_conf, "Rule confidence threshold")
      ->check(UnitInterval)
      ->capture_default_str();
  bench->add_option("--max-level", bench_options.max_level, "Cap on itemset size (0 = unlimited)")
      ->capture_default_str();
  add_key_flags(bench, bench_key);
  bench->add_option("--out", bench_out, "CSV path (default: stdout)");

  bench->callback([&] {
    for (double sigma : bench_options.sigma_grid)
      if (!(sigma > 0.0) || sigma > 1.0)
        throw CLI::ValidationError("--sigma", "every sigma must be in (0, 1]");
    bench_options.mode = ppfim::aggregation_mode_from_string(bench_mode);
    bench_options.key = bench_key.to_key();
    write_output(bench_out, ppfim::format_bench_csv(ppfim::run_bench(bench_options)));
  });

  // ---- dispersion -----------------------------------------------------------
  auto* dispersion = app.add_subcommand(
      "dispersion", "Per-block cipher-item frequency spread of the encrypted, split input");
  struct {
    std::string input;
    std::string out;
    std::size_t ics = 2;
    std::uint64_t seed = 42;
    std::size_t seeds = 1;
    KeyFlags key;
  } dispersion_args;
  dispersion->add_option("--input", dispersion_args.input, "Basket file")->required();
  dispersion->add_option("--ics", dispersion_args.ics, "Number of blocks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  dispersion->add_option("--seed", dispersion_args.seed, "Base split seed")->capture_default_str();
  dispersion->add_option("--seeds", dispersion_args.seeds, "Number of consecutive seeds to average")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_key_flags(dispersion, dispersion_args.key);
  dispersion->add_option("--out", dispersion_args.out, "Report path (default: stdout)");

  dispersion->callback([&] {
    const auto db = ppfim::parse_basket_file(read_file(dispersion_args.input));
    const auto encrypted = ppfim::encrypt_database(db, dispersion_args.key.to_key());
    const auto report = ppfim::compute_dispersion(encrypted, dispersion_args.ics,
                                                  dispersion_args.seed, dispersion_args.seeds);
    write_output(dispersion_args.out, ppfim::format_dispersion_report(report));
  });

  // ---- split-report ----------------------------------------------------------
  auto* split_report =
      app.add_subcommand("split-report", "Partition the input's transaction ids and report blocks");
  struct {
    std::string input;
    std::string out;
    std::size_t ics = 2;
    std::uint64_t seed = 42;
  } split_args;
  split_report->add_option("--input", split_args.input, "Basket file")->required();
  split_report->add_option("--ics", split_args.ics, "Number of blocks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  split_report->add_option("--seed", split_args.seed, "Split seed")->capture_default_str();
  split_report->add_option("--out", split_args.out, "Report path (default: stdout)");

  split_report->callback([&] {
    const auto db = ppfim::parse_basket_file(read_file(split_args.input));
    const auto assignment = ppfim::split(db.ids(), split_args.ics, split_args.seed);
    write_output(split_args.out, ppfim::format_split_report(assignment));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ppfim::InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ppfim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
