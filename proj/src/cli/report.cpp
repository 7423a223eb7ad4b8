#include "cli/internal.hpp"

#include "arw/chaos.hpp"
#include "arw/lattice.hpp"
#include "arw/nodal.hpp"
#include "arw/stats.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace arw::cli {

Table read_table(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw RuntimeError("cannot read " + file.string());
  Table t;
  if (file.extension() == ".json") {
    Json arr = Json::parse(in);
    if (!arr.is_array()) throw RuntimeError(file.string() + ": expected an array of records");
    for (const auto& rec : arr) {
      if (t.header.empty())
        for (auto it = rec.begin(); it != rec.end(); ++it) t.header.push_back(it.key());
      std::vector<std::string> row;
      for (const auto& h : t.header) {
        const Json& v = rec.at(h);
        row.push_back(v.is_number() ? fmt(v.get<double>()) : v.is_string() ? v.get<std::string>() : v.dump());
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  }
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) return t;
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) throw RuntimeError(file.string() + ": ragged row");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

namespace {

struct Row {
  long m;
  std::vector<std::string> cells;
};

std::optional<Row> report_row(const std::filesystem::path& dir, const RunConfig& cfg) {
  auto manifest = dir / "manifest.json";
  if (!std::filesystem::exists(manifest)) {
    std::cerr << "warning: " << dir.string() << ": no manifest.json, skipped\n";
    return std::nullopt;
  }
  Json man = Json::parse(std::ifstream(manifest));
  std::string command = man.value("command", "");
  if (command != "simulate" && command != "chaos") {
    std::cerr << "warning: " << dir.string() << ": '" << command << "' run has no lengths, skipped\n";
    return std::nullopt;
  }
  const Json& conf = man.at("config");
  std::string file = man.at("outputs").at(0).get<std::string>();
  Table t = read_table(dir / file);
  int col = t.column(command == "simulate" ? "length" : "L");
  if (col < 0) throw RuntimeError((dir / file).string() + ": no length column");
  std::vector<double> xs;
  for (const auto& r : t.rows) xs.push_back(std::stod(r[col]));
  Moments mo = describe(xs);

  long m = conf.at("m").get<long>();
  FrequencySet E = cached_enumerate(m, cfg.cache);
  Surface s = Surface::builtin(parse_surface(conf.at("surface").get<std::string>()), conf.value("order", Surface::kDefaultOrder));
  double pm = expected_length(m, area(s));
  Regime rg = is_static(s, 1e-4).is_static ? Regime::static_surface : Regime::generic;
  std::string pv_cell, rv_cell;
  try {
    double pv = predict_variance(E, s, rg);
    pv_cell = fmt(pv);
    rv_cell = fmt(mo.variance / pv);
  } catch (const InvalidArgument&) {
  }
  return Row{m,
             {fmt(m), fmt(long(E.size())), s.label(), fmt(mo.count), conf.at("seed").dump(), fmt(mo.mean),
              fmt(mo.variance), fmt(pm), fmt(mo.mean / pm), to_string(rg), pv_cell, rv_cell, dir.string()}};
}

}  // namespace

Json cmd_report(const RunConfig& cfg) {
  std::vector<Row> rows;
  for (const auto& d : cfg.inputs)
    if (auto r = report_row(d, cfg)) rows.push_back(std::move(*r));
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.m < b.m; });
  Table t;
  t.header = {"m", "N", "surface", "samples", "seed", "mean", "var", "predicted_mean", "ratio_mean",
              "regime", "predicted_var", "ratio_var", "dir"};
  for (auto& r : rows) t.rows.push_back(std::move(r.cells));

  auto dir = output_dir(cfg);
  std::string file = write_table(dir, "report", t, cfg);
  write_manifest(dir, cfg, {{"outputs", {file}}});
  if (cfg.format == "json") std::cout << t.records().dump(2) << std::endl;
  else std::cout << t.csv();
  return nullptr;
}

}  // namespace arw::cli
