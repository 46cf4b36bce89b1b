#include "streamshare/cli/commands.hpp"

#include <fstream>
#include <ostream>

#include "streamshare/bridge.hpp"
#include "streamshare/cli/csv_io.hpp"
#include "streamshare/cli/generate.hpp"
#include "streamshare/error.hpp"

namespace streamshare::cli {

void RunConfig::validate() const {
  if (input.has_value() == generation.has_value()) {
    throw Error(ErrorKind::validation, "give exactly one of an input file or a generation spec");
  }
  if (!(price_per_user > 0.0)) throw Error(ErrorKind::validation, "price must be positive");
  if (!(tolerance >= 0.0)) throw Error(ErrorKind::validation, "tolerance must be nonnegative");
  parse_method(method);
}

namespace {

ClaimsRule named_rule(std::string_view name) {
  if (name == "prop") return proportional_rule();
  if (name == "cea") return cea_rule();
  throw Error(ErrorKind::unknown_method, "unknown claims rule '" + std::string(name) + "'");
}

}  // namespace

Method parse_method(std::string_view text) {
  Method m;
  if (text == "pro-rata") {
    m.kind = Method::Kind::pro_rata;
  } else if (text == "user-centric") {
    m.kind = Method::Kind::user_centric;
  } else if (text == "shapley") {
    m.kind = Method::Kind::shapley;
  } else if (text.starts_with("two-stage:")) {
    const auto rules = text.substr(10);
    const auto comma = rules.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorKind::unknown_method, "two-stage needs '<first>,<second>'");
    }
    m.kind = Method::Kind::two_stage;
    m.first = std::string(rules.substr(0, comma));
    m.second = std::string(rules.substr(comma + 1));
    named_rule(m.first);
    named_rule(m.second);
  } else if (text.starts_with("weighted:") && text.size() > 9) {
    m.kind = Method::Kind::weighted;
    m.weights_file = std::string(text.substr(9));
  } else {
    throw Error(ErrorKind::unknown_method, "unknown method '" + std::string(text) + "'");
  }
  return m;
}

AllocationReport allocate(const StreamingProblem& problem, std::string_view method_text) {
  const Method method = parse_method(method_text);
  AllocationReport report;
  report.method = std::string(method_text);
  report.price_per_user = problem.price_per_user();
  report.revenue = problem.revenue();
  report.artists = problem.artists();

  switch (method.kind) {
    case Method::Kind::pro_rata:
      report.rewards = pro_rata_rewards(problem).amounts;
      break;
    case Method::Kind::user_centric:
      report.rewards = user_centric_rewards(problem).amounts;
      break;
    case Method::Kind::shapley:
      report.rewards = shapley_rewards(problem).amounts;
      break;
    case Method::Kind::two_stage: {
      auto stages = two_stage(to_multi_issue(problem), named_rule(method.first),
                              IssueRules::uniform(named_rule(method.second)));
      report.rewards = stages.total.amounts;
      report.breakdown = BreakdownReport{problem.users(), std::move(stages)};
      break;
    }
    case Method::Kind::weighted: {
      auto weights = parse_user_weights(method.weights_file, problem);
      report.rewards = weighted_index_rewards(problem, WeightSystem::user_weighted(std::move(weights))).amounts;
      break;
    }
  }
  return report;
}

namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace

int cmd_allocate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.input) throw Error(ErrorKind::validation, "allocate needs --input");
    config.validate();
    const auto problem = parse_streams_csv(*config.input, config.price_per_user);
    emit_report(allocate(problem, config.method), config.format, out);
    return kExitOk;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    std::vector<EquivalenceReport> reports;
    if (config.input) {
      const auto problem = parse_streams_csv(*config.input, config.price_per_user);
      reports.push_back(verify_equivalences(problem, {config.tolerance, config.seed}));
    } else {
      const auto& g = *config.generation;
      for (std::size_t t = 0; t < config.trials; ++t) {
        const std::uint64_t seed = config.seed + t;
        const auto problem = generate_random_problem(seed, g.artists, g.users, g.max_streams);
        reports.push_back(verify_equivalences(problem, {config.tolerance, seed}));
      }
    }
    emit_verify_report(reports, config.format, out);
    for (const auto& r : reports) {
      if (!r.all_passed()) return kExitVerifyFailed;
    }
    return kExitOk;
  });
}

int cmd_gen(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.generation) throw Error(ErrorKind::validation, "gen needs a generation spec");
    const auto& g = *config.generation;
    const auto problem = generate_random_problem(config.seed, g.artists, g.users, g.max_streams);
    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) throw Error(ErrorKind::validation, "cannot write " + config.output->string());
      write_streams_csv(problem, file);
    } else {
      write_streams_csv(problem, out);
    }
    return kExitOk;
  });
}

}  // namespace streamshare::cli
