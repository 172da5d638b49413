#include "app.hpp"

#include "commands.hpp"
#include "config.hpp"

#include "treelab/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace treelab::cli {

namespace {

namespace fs = std::filesystem;

struct Args {
  std::string command;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string replay;
  unsigned jobs = 1;
  std::vector<std::string> report_paths;
};

std::string render_csv(const std::vector<std::string>& columns, const std::vector<Record>& records) {
  std::ostringstream s;
  for (std::size_t i = 0; i < columns.size(); ++i)
    s << (i ? "," : "") << csv_escape(columns[i]);
  s << '\n';
  for (const auto& r : records) {
    if (r.value("type", "") == "case")
      continue;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      s << (i ? "," : "");
      if (r.contains(columns[i]))
        s << csv_cell(r[columns[i]]);
    }
    s << '\n';
  }
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
    throw ConfigError("cannot write " + path.string());
  f << text;
}

int run_command(const Args& a, std::ostream& out, std::ostream& err) {
  if (!a.replay.empty() && a.config.empty()) {
    const Record rec = replay_case(a.replay);
    out << rec.dump() << '\n';
    return rec["status"] == "pass" ? exit_ok : exit_contract;
  }
  if (a.config.empty())
    throw ConfigError("--config is required for `" + a.command + "`");

  const Config config = Config::load(a.config);
  Runner runner = resolve_command(a.command, config, {a.seed, a.jobs});

  const auto start = std::chrono::steady_clock::now();
  CommandOutput result;
  try {
    result = runner();
  } catch (const Error& e) {
    Record rec;
    rec["id"] = a.command + ":error";
    rec["type"] = "error";
    rec["command"] = a.command;
    rec["error"] = e.what();
    rec["status"] = "fail";
    out << rec.dump() << '\n';
    err << "error: " << e.what() << '\n';
    return exit_contract;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!a.replay.empty()) {
    auto it = std::find_if(result.records.begin(), result.records.end(),
                           [&](const Record& r) { return r.value("id", "") == a.replay; });
    if (it == result.records.end())
      throw ConfigError("no record with id `" + a.replay + "`");
    out << it->dump() << '\n';
    return it->value("status", "") == "pass" ? exit_ok : exit_contract;
  }

  std::string jsonl;
  for (const auto& r : result.records)
    jsonl += r.dump() + "\n";
  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  write_file(dir / (a.command + ".jsonl"), jsonl);
  write_file(dir / (a.command + ".csv"), render_csv(result.columns, result.records));

  for (const auto& r : result.records)
    if (r.value("type", "") != "case")
      out << (r.value("status", "") == "pass" ? "PASS " : "FAIL ") << r.value("id", "") << '\n';
  err << a.command << ": " << result.records.size() << " records in " << seconds << " s\n";
  return result.ok ? exit_ok : exit_contract;
}

std::string key_cell(const Record& r, const char* key) {
  return r.contains(key) ? csv_cell(r[key]) : std::string();
}

int run_report(const Args& a, std::ostream& out) {
  if (a.report_paths.empty())
    throw ConfigError("report needs at least one records file");
  struct Tally {
    std::size_t records = 0, passed = 0, failed = 0;
  };
  std::map<std::tuple<std::string, std::string, std::string>, Tally> table;
  for (const auto& path : a.report_paths) {
    std::ifstream f(path);
    if (!f)
      throw ConfigError("cannot read " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        continue;
      Record r;
      try {
        r = Record::parse(line);
      } catch (const nlohmann::json::exception&) {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed record");
      }
      if (!r.is_object() || r.value("type", "") == "case")
        continue;
      const std::string suite = r.contains("suite") ? r["suite"].get<std::string>() : r.value("command", "");
      Tally& t = table[{suite, key_cell(r, "q"), key_cell(r, "depth")}];
      ++t.records;
      (r.value("status", "") == "pass" ? t.passed : t.failed)++;
    }
  }
  std::ostringstream s;
  s << "suite,q,depth,records,passed,failed\n";
  for (const auto& [key, t] : table)
    s << csv_escape(std::get<0>(key)) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << t.records
      << ',' << t.passed << ',' << t.failed << '\n';
  out << s.str();
  return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Exact computations on regular trees and averaged liftings"};
  app.require_subcommand(1, 1);
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", a.config, "experiment configuration file");
    sub->add_option("--seed", a.seed, "overrides the configured seed");
    sub->add_option("--out", a.out, "output directory")->capture_default_str();
    sub->add_option("--replay", a.replay, "rerun a single record by id");
    sub->add_option("--jobs", a.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    sub->callback([&a, name] { a.command = name; });
  }
  CLI::App* report = app.add_subcommand("report", "aggregate records files into a summary table");
  report->add_option("paths", a.report_paths, "records files")->required();
  report->callback([&a] { a.command = "report"; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  }

  try {
    if (a.command == "report")
      return run_report(a, out);
    return run_command(a, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_contract;
  }
}

} // namespace treelab::cli
