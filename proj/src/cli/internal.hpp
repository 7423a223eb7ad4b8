#pragma once

#include "arw/surface.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace arw::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::vector<std::string> argv;
  long m = 0;
  long m_from = 1;
  long m_to = 100;
  long budget = 0;
  std::string surface = "sphere:0.24";
  long samples = 100;
  int resolution = 0;
  double multiplier = 2.0;
  std::uint64_t seed = 1;
  bool with_area = false;
  std::string op = "2pt";
  std::string kind = "sphere";
  double radius = 0.24;
  double angle = 1.0471975511965976;
  std::string center = "0.5,0.5,0.5";
  int order = Surface::kDefaultOrder;
  std::string out;
  std::string format = "csv";
  int threads = 0;
  std::optional<std::filesystem::path> cache;
  std::vector<std::string> inputs;

  Json to_json() const;
};

// "sphere:0.24", "hemisphere:0.24", "cap:0.24:1.0472", optional "@x,y,z".
SurfaceSpec parse_surface(const std::string& text);
Vec3 parse_point(const std::string& text);

std::filesystem::path output_dir(const RunConfig& cfg);
void write_manifest(const std::filesystem::path& dir, const RunConfig& cfg, const Json& extra = Json::object());
void write_text(const std::filesystem::path& file, const std::string& text);

// Each returns the summary printed on stdout.
Json cmd_lattice(const RunConfig& cfg);
Json cmd_corr(const RunConfig& cfg);
Json cmd_scan(const RunConfig& cfg);
Json cmd_surface(const RunConfig& cfg);
Json cmd_simulate(const RunConfig& cfg);
Json cmd_chaos(const RunConfig& cfg);
Json cmd_limit_sample(const RunConfig& cfg);
Json cmd_kacrice(const RunConfig& cfg);
Json cmd_report(const RunConfig& cfg);

// Tabular output; written as CSV or as a JSON array of records.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
  std::string csv() const;
  Json records() const;
};

std::string fmt(double v);
std::string fmt(long v);

// Writes name.csv or name.json by cfg.format and returns the file name.
std::string write_table(const std::filesystem::path& dir, const std::string& name, const Table& t,
                        const RunConfig& cfg);
// Reads either format back.
Table read_table(const std::filesystem::path& file);

}  // namespace arw::cli
