#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hslab/field.hpp"
#include "hslab/verify.hpp"

namespace hslab {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// RFC-4180 style quoting, applied only when needed.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string csv_render(const CsvTable& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open for writing: " + path.string());
  os.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!os) throw InputError("write failed: " + path.string());
}

inline void write_csv(const std::filesystem::path& path, const CsvTable& t) {
  write_text_file(path, csv_render(t));
}

// One CSV per claim id; an empty report leaves an explicit sentinel.
inline std::filesystem::path write_ratio_report_csv(const std::filesystem::path& dir,
                                                    const RatioReport& rep) {
  std::filesystem::path path = dir / (rep.claim + ".csv");
  if (rep.samples.empty()) {
    write_text_file(path, "no samples\n");
    return path;
  }
  CsvTable t;
  t.header = {"claim_id", "params", "lhs", "rhs", "ratio"};
  for (const RatioSample& s : rep.samples)
    t.rows.push_back({rep.claim, s.params, fmt17(s.lhs), fmt17(s.rhs), fmt17(s.ratio)});
  write_csv(path, t);
  return path;
}

inline nlohmann::ordered_json ratio_report_json(const RatioReport& rep) {
  nlohmann::ordered_json j;
  j["claim"] = rep.claim;
  j["seed"] = rep.seed;
  j["bound"] = rep.bound;
  j["verdict"] = rep.pass() ? "pass" : "fail";
  j["samples"] = rep.samples.size();
  j["skipped"] = rep.skipped;
  if (!rep.samples.empty()) {
    j["min_ratio"] = rep.min_ratio();
    j["max_ratio"] = rep.max_ratio();
    j["spread"] = rep.spread();
  }
  return j;
}

// ---------------------------------------------------------------------------
// Field storage: raw doubles plus a JSON sidecar describing the grid.
// ---------------------------------------------------------------------------

namespace detail {

inline const char* role_name(AxisRole r) {
  switch (r) {
    case AxisRole::Normal: return "normal";
    case AxisRole::Tangential: return "tangential";
    case AxisRole::Time: return "time";
  }
  return "?";
}

inline AxisRole role_from_name(const std::string& s) {
  if (s == "normal") return AxisRole::Normal;
  if (s == "tangential") return AxisRole::Tangential;
  if (s == "time") return AxisRole::Time;
  throw InputError("unknown axis role '" + s + "'");
}

}  // namespace detail

inline void write_field(const std::filesystem::path& base, const DiscreteField& f) {
  f.validate();
  const long total = f.axis_total();
  std::vector<double> raw;
  raw.reserve(2 * f.values.size());
  for (const Complex& z : f.values) {
    raw.push_back(z.real());
    raw.push_back(z.imag());
  }
  std::filesystem::path bin = base;
  bin += ".bin";
  if (bin.has_parent_path()) std::filesystem::create_directories(bin.parent_path());
  {
    std::ofstream os(bin, std::ios::binary);
    if (!os) throw InputError("cannot open for writing: " + bin.string());
    os.write(reinterpret_cast<const char*>(raw.data()),
             static_cast<std::streamsize>(raw.size() * sizeof(double)));
  }
  nlohmann::ordered_json j;
  j["components"] = f.components;
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (const Axis& a : f.axes) {
    nlohmann::ordered_json ja;
    ja["role"] = detail::role_name(a.role);
    ja["count"] = a.count;
    ja["extent"] = a.extent;
    ja["spacing"] = a.spacing == Spacing::Uniform ? "uniform" : "graded";
    ja["grading"] = a.grading;
    ja["origin"] = a.origin;
    axes.push_back(ja);
  }
  j["axes"] = axes;
  j["aniso"] = {{"dims", f.aniso.dims}, {"weights", f.aniso.weights}};
  j["data"] = bin.filename().string();
  j["values"] = 2 * f.components * total;
  std::filesystem::path side = base;
  side += ".json";
  write_text_file(side, j.dump(2) + "\n");
}

inline DiscreteField read_field(const std::filesystem::path& base) {
  std::filesystem::path side = base;
  side += ".json";
  std::ifstream is(side);
  if (!is) throw InputError("cannot open field sidecar: " + side.string());
  nlohmann::json j = nlohmann::json::parse(is);
  DiscreteField f;
  f.components = j.at("components").get<int>();
  for (const auto& ja : j.at("axes")) {
    Axis a;
    a.role = detail::role_from_name(ja.at("role").get<std::string>());
    a.count = ja.at("count").get<int>();
    a.extent = ja.at("extent").get<double>();
    a.spacing = ja.at("spacing").get<std::string>() == "graded" ? Spacing::GradedAtZero
                                                                : Spacing::Uniform;
    a.grading = ja.at("grading").get<double>();
    a.origin = ja.at("origin").get<double>();
    f.axes.push_back(a);
  }
  f.aniso.dims = j.at("aniso").at("dims").get<std::vector<int>>();
  f.aniso.weights = j.at("aniso").at("weights").get<std::vector<double>>();
  const long n = j.at("values").get<long>();
  std::filesystem::path bin = base.parent_path() / j.at("data").get<std::string>();
  std::ifstream bs(bin, std::ios::binary);
  if (!bs) throw InputError("cannot open field data: " + bin.string());
  std::vector<double> raw(n);
  bs.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (bs.gcount() != static_cast<std::streamsize>(n * sizeof(double)))
    throw InputError("field data truncated: " + bin.string());
  f.values.resize(n / 2);
  for (long i = 0; i < n / 2; ++i) f.values[i] = Complex(raw[2 * i], raw[2 * i + 1]);
  f.validate();
  return f;
}

}  // namespace hslab
