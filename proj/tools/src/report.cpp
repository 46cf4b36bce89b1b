#include "streamshare/cli/report.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include <nlohmann/json.hpp>

#include "streamshare/error.hpp"

namespace streamshare::cli {

using json = nlohmann::ordered_json;

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "table") return Format::table;
  if (name == "csv") return Format::csv;
  throw Error(ErrorKind::validation, "unknown format '" + std::string(name) + "'");
}

double AllocationReport::total() const noexcept {
  double sum = 0.0;
  for (double r : rewards) sum += r;
  return sum;
}

namespace {

std::size_t id_width(const std::vector<std::string>& ids, std::size_t floor) {
  std::size_t w = floor;
  for (const auto& id : ids) w = std::max(w, id.size());
  return w;
}

json breakdown_json(const AllocationReport& r) {
  const auto& b = *r.breakdown;
  json out;
  out["users"] = b.users;
  out["first_stage"] = b.stages.first_stage.amounts;
  json levels = json::array();
  for (const auto& l : b.stages.second_stage_levels) {
    levels.push_back(l ? json(*l) : json(nullptr));
  }
  out["second_stage_levels"] = std::move(levels);
  json rows = json::array();
  const auto& s = b.stages.second_stage;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < s.cols(); ++j) row.push_back(s(i, j));
    rows.push_back(std::move(row));
  }
  out["second_stage"] = std::move(rows);
  return out;
}

void emit_json(const AllocationReport& r, std::ostream& out) {
  json doc;
  doc["method"] = r.method;
  doc["price_per_user"] = r.price_per_user;
  doc["revenue"] = r.revenue;
  json artists = json::array();
  for (std::size_t i = 0; i < r.artists.size(); ++i) {
    artists.push_back(json{{"artist", r.artists[i]}, {"reward", r.rewards[i]}});
  }
  doc["artists"] = std::move(artists);
  doc["total"] = r.total();
  if (r.breakdown) doc["breakdown"] = breakdown_json(r);
  out << doc.dump(2) << '\n';
}

void emit_table(const AllocationReport& r, std::ostream& out) {
  const auto w = static_cast<int>(id_width(r.artists, 6));
  out << "method: " << r.method << '\n';
  out << std::left << std::setw(w) << "artist" << "  " << std::right << std::setw(14) << "reward" << '\n';
  out << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < r.artists.size(); ++i) {
    out << std::left << std::setw(w) << r.artists[i] << "  " << std::right << std::setw(14)
        << r.rewards[i] << '\n';
  }
  out << std::left << std::setw(w) << "total" << "  " << std::right << std::setw(14) << r.total()
      << '\n';
  if (!r.breakdown) return;

  const auto& b = *r.breakdown;
  const auto uw = static_cast<int>(id_width(b.users, 4));
  out << "\nfirst stage\n";
  out << std::left << std::setw(uw) << "user" << "  " << std::right << std::setw(14) << "share"
      << std::setw(14) << "level" << '\n';
  for (std::size_t j = 0; j < b.users.size(); ++j) {
    out << std::left << std::setw(uw) << b.users[j] << "  " << std::right << std::setw(14)
        << b.stages.first_stage[j];
    const auto& level = b.stages.second_stage_levels[j];
    if (level) {
      out << std::setw(14) << *level;
    } else {
      out << std::setw(14) << "-";
    }
    out << '\n';
  }
  out << "\nsecond stage (artist x user)\n";
  out << std::left << std::setw(w) << "artist";
  for (const auto& u : b.users) out << "  " << std::right << std::setw(12) << u;
  out << '\n';
  const auto& s = b.stages.second_stage;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    out << std::left << std::setw(w) << r.artists[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < s.cols(); ++j) out << "  " << std::right << std::setw(12) << s(i, j);
    out << '\n';
  }
}

void emit_csv(const AllocationReport& r, std::ostream& out) {
  out << "artist,reward\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < r.artists.size(); ++i) out << r.artists[i] << ',' << r.rewards[i] << '\n';
}

}  // namespace

void emit_report(const AllocationReport& report, Format format, std::ostream& out) {
  switch (format) {
    case Format::json: emit_json(report, out); return;
    case Format::table: emit_table(report, out); return;
    case Format::csv: emit_csv(report, out); return;
  }
}

void emit_verify_report(const std::vector<EquivalenceReport>& reports, Format format,
                        std::ostream& out) {
  std::size_t passed = 0;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    passed += r.passed_count();
    failed += r.failed_count();
  }

  if (format == Format::json) {
    json doc;
    json instances = json::array();
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const auto& r = reports[k];
      json checks = json::array();
      for (const auto& c : r.checks) {
        checks.push_back(json{{"name", c.name},
                              {"instance", c.instance},
                              {"deviation", c.deviation},  // inf serializes as null
                              {"passed", c.passed}});
      }
      instances.push_back(json{{"index", k},
                               {"instance", r.instance},
                               {"tolerance", r.tolerance},
                               {"passed", r.passed_count()},
                               {"failed", r.failed_count()},
                               {"checks", std::move(checks)}});
    }
    doc["instances"] = std::move(instances);
    doc["summary"] = json{{"instances", reports.size()}, {"passed", passed}, {"failed", failed}};
    doc["note"] = "families are sampled from a fixed generator set; a pass is evidence, not proof";
    out << doc.dump(2) << '\n';
    return;
  }

  if (format == Format::csv) {
    out << "instance,check,deviation,passed\n";
    out << std::setprecision(17);
    for (std::size_t k = 0; k < reports.size(); ++k) {
      for (const auto& c : reports[k].checks) {
        out << k << ',' << c.name << ',' << c.deviation << ',' << (c.passed ? "true" : "false") << '\n';
      }
    }
    return;
  }

  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    out << "instance " << k << ": " << r.instance << "  " << (r.all_passed() ? "PASS" : "FAIL")
        << " (" << r.passed_count() << '/' << r.checks.size() << ")\n";
    for (const auto& c : r.checks) {
      if (c.passed) continue;
      out << "  FAIL " << c.name << " [" << c.instance << "] deviation " << std::scientific
          << std::setprecision(3) << c.deviation << std::defaultfloat << '\n';
    }
  }
  out << "checks: " << passed << " passed, " << failed << " failed\n";
}

}  // namespace streamshare::cli
