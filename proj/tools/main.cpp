#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "streamshare/cli/commands.hpp"

namespace cli = streamshare::cli;

int main(int argc, char** argv) {
  CLI::App app{"Streaming revenue allocation through claims rules"};
  app.require_subcommand(1);

  cli::RunConfig config;
  std::string input;
  std::string output;
  std::string format = "table";
  cli::GenerationSpec gen;

  auto* allocate = app.add_subcommand("allocate", "Allocate revenue among artists");
  allocate->add_option("--input", input, "Streams CSV (rows artists, columns users)")->required();
  allocate->add_option("--method", config.method,
                       "pro-rata | user-centric | shapley | two-stage:<prop|cea>,<prop|cea> | "
                       "weighted:<user-weights.csv>")
      ->capture_default_str();
  allocate->add_option("--price", config.price_per_user, "Amount paid by each user")
      ->capture_default_str();
  allocate->add_option("--format", format, "json | table | csv")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check index / claims-rule identities");
  auto* verify_input = verify->add_option("--input", input, "Streams CSV");
  auto* trials = verify->add_option("--trials", config.trials, "Number of generated instances");
  verify->add_option("--seed", config.seed, "Seed of the first generated instance");
  verify->add_option("--artists", gen.artists, "Artists per generated instance")->capture_default_str();
  verify->add_option("--users", gen.users, "Users per generated instance")->capture_default_str();
  verify->add_option("--max-streams", gen.max_streams, "Largest generated entry")->capture_default_str();
  verify->add_option("--tol", config.tolerance, "Componentwise tolerance")->capture_default_str();
  verify->add_option("--format", format, "json | table | csv")->capture_default_str();
  verify_input->excludes(trials);

  auto* generate = app.add_subcommand("gen", "Write a random streams CSV");
  generate->add_option("--seed", config.seed, "Generator seed")->required();
  generate->add_option("--artists", gen.artists, "Number of artists")->required();
  generate->add_option("--users", gen.users, "Number of users")->required();
  generate->add_option("--max-streams", gen.max_streams, "Largest entry")->required();
  generate->add_option("--out", output, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInputError;
  }

  try {
    config.format = cli::parse_format(format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInputError;
  }
  if (!input.empty()) config.input = input;
  if (!output.empty()) config.output = output;

  if (allocate->parsed()) return cli::cmd_allocate(config, std::cout, std::cerr);
  if (verify->parsed()) {
    if (!config.input) config.generation = gen;
    return cli::cmd_verify(config, std::cout, std::cerr);
  }
  config.generation = gen;
  return cli::cmd_gen(config, std::cout, std::cerr);
}
