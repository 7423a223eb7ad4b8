#include "arw/cli.hpp"
#include "cli/internal.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace arw::cli {

Json RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  j["argv"] = argv;
  j["m"] = m;
  j["from"] = m_from;
  j["to"] = m_to;
  j["budget"] = budget;
  j["surface"] = surface;
  j["samples"] = samples;
  j["resolution"] = resolution;
  j["multiplier"] = multiplier;
  j["seed"] = seed;
  j["with_area"] = with_area;
  j["op"] = op;
  j["kind"] = kind;
  j["radius"] = radius;
  j["angle"] = angle;
  j["center"] = center;
  j["order"] = order;
  j["out"] = out;
  j["format"] = format;
  j["threads"] = threads;
  j["cache"] = cache ? Json(cache->string()) : Json(nullptr);
  j["inputs"] = inputs;
  return j;
}

std::filesystem::path output_dir(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  std::string name = cfg.command;
  if (cfg.m > 0) name += "-m" + std::to_string(cfg.m);
  if (cfg.command == "simulate" || cfg.command == "chaos" || cfg.command == "limit-sample" ||
      cfg.command == "kacrice")
    name += "-seed" + std::to_string(cfg.seed);
  return std::filesystem::path("arw_runs") / name;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw RuntimeError("cannot write " + file.string());
  out << text;
}

void write_manifest(const std::filesystem::path& dir, const RunConfig& cfg, const Json& extra) {
  Json j;
  j["tool"] = "arw";
  j["version"] = kVersion;
  j["command"] = cfg.command;
  j["seed"] = cfg.seed;
  j["config"] = cfg.to_json();
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  write_text(dir / "manifest.json", j.dump(2) + "\n");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(long v) { return std::to_string(v); }

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return int(i);
  return -1;
}

std::string Table::csv() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

Json Table::records() const {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json rec;
    for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) {
      // numbers stay numbers
      char* end = nullptr;
      double v = std::strtod(r[i].c_str(), &end);
      if (!r[i].empty() && end && *end == '\0') rec[header[i]] = v;
      else rec[header[i]] = r[i];
    }
    arr.push_back(rec);
  }
  return arr;
}

std::string write_table(const std::filesystem::path& dir, const std::string& name, const Table& t,
                        const RunConfig& cfg) {
  if (cfg.format == "json") {
    write_text(dir / (name + ".json"), t.records().dump(2) + "\n");
    return name + ".json";
  }
  write_text(dir / (name + ".csv"), t.csv());
  return name + ".csv";
}

namespace {

using Handler = Json (*)(const RunConfig&);

int dispatch(const RunConfig& cfg) {
  static const std::map<std::string, Handler> handlers = {
      {"lattice", cmd_lattice},   {"corr", cmd_corr},         {"scan", cmd_scan},
      {"surface", cmd_surface},   {"simulate", cmd_simulate}, {"chaos", cmd_chaos},
      {"limit-sample", cmd_limit_sample}, {"kacrice", cmd_kacrice}, {"report", cmd_report}};
  Json summary = handlers.at(cfg.command)(cfg);
  if (!summary.is_null()) std::cout << summary.dump(2) << std::endl;
  return 0;
}

void add_surface_option(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--surface", cfg.surface, "sphere:R, hemisphere:R or cap:R:ANGLE, optional @x,y,z")
      ->capture_default_str();
  sub->add_option("--order", cfg.order, "Gauss order per chart edge")->capture_default_str()->check(CLI::Range(2, 512));
}

}  // namespace

int run(const std::vector<std::string>& args) {
  RunConfig cfg;
  cfg.argv = args;
  if (const char* env = std::getenv("ARW_CACHE_DIR"); env && *env) cfg.cache = std::filesystem::path(env);

  CLI::App app{"Nodal statistics of random arithmetic waves restricted to surfaces", "arw"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  app.add_option("--out", cfg.out, "output directory (default arw_runs/<command>...)");
  app.add_option("--format", cfg.format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker cap, 0 = OpenMP default")->check(CLI::NonNegativeNumber);
  std::string cache_flag;
  app.add_option("--cache", cache_flag, "lattice cache directory (overrides ARW_CACHE_DIR)");

  auto* lattice = app.add_subcommand("lattice", "lattice points of norm m");
  lattice->add_option("m", cfg.m)->required()->check(CLI::PositiveNumber);

  auto* corr = app.add_subcommand("corr", "correlation counts and separation sums");
  corr->add_option("m", cfg.m)->required()->check(CLI::PositiveNumber);

  auto* scan = app.add_subcommand("scan", "rank m by max N^2 S_l");
  scan->add_option("--from", cfg.m_from)->required()->check(CLI::PositiveNumber);
  scan->add_option("--to", cfg.m_to)->required()->check(CLI::PositiveNumber);
  scan->add_option("--budget", cfg.budget, "max m with S_4, S_6 computed, 0 = no cap")->capture_default_str();

  auto* surface = app.add_subcommand("surface", "geometric functionals of a built-in surface");
  std::string action;
  surface->add_option("action", action)->required()->check(CLI::IsMember({"report"}));
  surface->add_option("--kind", cfg.kind)->check(CLI::IsMember({"sphere", "hemisphere", "cap"}))->capture_default_str();
  surface->add_option("--radius", cfg.radius)->capture_default_str();
  surface->add_option("--angle", cfg.angle, "cap half-angle")->capture_default_str();
  surface->add_option("--center", cfg.center)->capture_default_str();
  surface->add_option("--order", cfg.order)->capture_default_str()->check(CLI::Range(2, 512));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo nodal lengths");
  simulate->add_option("--m", cfg.m)->required()->check(CLI::PositiveNumber);
  add_surface_option(simulate, cfg);
  simulate->add_option("--samples", cfg.samples)->capture_default_str()->check(CLI::Range(2L, 100000000L));
  simulate->add_option("--seed", cfg.seed)->capture_default_str();
  simulate->add_option("--resolution", cfg.resolution, "cells per chart edge, 0 = rule")->check(CLI::NonNegativeNumber);
  simulate->add_option("--multiplier", cfg.multiplier)->capture_default_str()->check(CLI::Range(1.0, 64.0));
  simulate->add_flag("--with-area", cfg.with_area, "also compute nodal areas in the unit cell");

  auto* chaos = app.add_subcommand("chaos", "chaos projections L[0], L[2], L[4] per sample");
  chaos->add_option("--m", cfg.m)->required()->check(CLI::PositiveNumber);
  add_surface_option(chaos, cfg);
  chaos->add_option("--samples", cfg.samples)->capture_default_str()->check(CLI::Range(2L, 100000000L));
  chaos->add_option("--seed", cfg.seed)->capture_default_str();
  chaos->add_option("--multiplier", cfg.multiplier)->capture_default_str()->check(CLI::Range(1.0, 64.0));

  auto* limit = app.add_subcommand("limit-sample", "draws of the normalized limit form");
  add_surface_option(limit, cfg);
  limit->add_option("--n", cfg.samples)->required()->check(CLI::Range(1L, 100000000L));
  limit->add_option("--seed", cfg.seed)->capture_default_str();

  auto* kacrice = app.add_subcommand("kacrice", "two-point function and moment integrals");
  kacrice->add_option("--m", cfg.m)->required()->check(CLI::PositiveNumber);
  add_surface_option(kacrice, cfg);
  kacrice->add_option("--op", cfg.op, "2pt, second-moment, moment:{r2,r4,trX,trYY}")->capture_default_str();
  kacrice->add_option("--seed", cfg.seed, "picks the point pair for 2pt")->capture_default_str();
  kacrice->add_option("--budget", cfg.budget, "QMC budget for 2pt, 0 = deterministic quadrature");
  kacrice->add_option("--sigma", cfg.inputs, "two points x,y,z for 2pt")->expected(2);

  auto* report = app.add_subcommand("report", "compare simulate runs against predictions");
  report->add_option("dirs", cfg.inputs, "run directories");

  std::vector<char*> argv;
  std::string prog = "arw";
  argv.push_back(prog.data());
  std::vector<std::string> copy = args;
  for (auto& a : copy) argv.push_back(a.data());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return 0;
    }
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* shown = &app;
    for (const auto* sub : app.get_subcommands()) shown = sub;
    std::cerr << shown->help();
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!cache_flag.empty()) cfg.cache = std::filesystem::path(cache_flag);
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  if (cfg.command == "kacrice" && cfg.inputs.size() != 0 && cfg.inputs.size() != 2) {
    std::cerr << "error: --sigma takes two points\n";
    return 2;
  }

  try {
    return dispatch(cfg);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}

}  // namespace arw::cli
