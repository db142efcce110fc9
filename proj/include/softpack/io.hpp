#pragma once
// File formats: packings (JSON / CSV), bound tables, boundary walks and
// optimizer dumps. Numbers are written with 12 significant digits.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "softpack/bounds.hpp"
#include "softpack/core.hpp"
#include "softpack/geom2d.hpp"
#include "softpack/optimizer.hpp"

namespace softpack {

/// Malformed or unreadable input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Packings
// ---------------------------------------------------------------------------

inline nlohmann::json packing_to_json(const Packing& p) {
  nlohmann::json centers = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto c = p.center(i);
    centers.push_back(std::vector<double>(c.begin(), c.end()));
  }
  return {{"dim", p.dim()}, {"centers", centers}};
}

inline Packing packing_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("centers"))
      throw InputError("packing JSON needs \"dim\" and \"centers\"");
    const int dim = j.at("dim").get<int>();
    const auto pts = j.at("centers").get<std::vector<std::vector<double>>>();
    return Packing::from_points(dim, pts);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("packing JSON: ") + e.what());
  } catch (const StructuralError& e) {
    throw InputError(std::string("packing JSON: ") + e.what());
  }
}

inline std::string packing_to_csv(const Packing& p) {
  std::ostringstream os;
  os << "# dim=" << p.dim() << "\n";
  for (int k = 0; k < p.dim(); ++k) os << (k ? "," : "") << "x" << (k + 1);
  os << "\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int k = 0; k < p.dim(); ++k) os << (k ? "," : "") << format_number(p.center(i)[k]);
    os << "\n";
  }
  return os.str();
}

inline Packing packing_from_csv(std::istream& in) {
  int dim = 0;
  bool header = false;
  std::vector<std::vector<double>> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("dim=");
      if (pos != std::string::npos) dim = std::atoi(line.c_str() + pos + 4);
      continue;
    }
    if (!header && line[0] == 'x') {
      header = true;
      const int cols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
      if (dim == 0) dim = cols;
      if (cols != dim) throw InputError("packing CSV: header has " + std::to_string(cols) + " columns, dim=" + std::to_string(dim));
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InputError("packing CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    pts.push_back(std::move(row));
  }
  if (dim == 0) throw InputError("packing CSV: no '# dim=' line or header");
  try {
    return Packing::from_points(dim, pts);
  } catch (const StructuralError& e) {
    throw InputError(std::string("packing CSV: ") + e.what());
  }
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Reads .csv as CSV and anything else as JSON.
inline Packing read_packing(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  if (ends_with(path, ".csv")) return packing_from_csv(in);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return packing_from_json(j);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

inline void write_packing(const std::string& path, const Packing& p) {
  write_text(path, ends_with(path, ".csv") ? packing_to_csv(p) : packing_to_json(p).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Bound tables
// ---------------------------------------------------------------------------

inline std::string metadata_lines(const std::vector<std::string>& meta) {
  std::string s;
  for (const auto& m : meta) s += "# " + m + "\n";
  return s;
}

/// name,d,lambda,value,valid,domain_note,std_error
inline std::string bounds_csv_long(const std::vector<BoundReport>& rows, const std::vector<std::string>& meta = {}) {
  std::ostringstream os;
  os << metadata_lines(meta) << "name,d,lambda,value,valid,domain_note,std_error\n";
  for (const auto& r : rows)
    for (const auto& e : r.entries)
      os << e.name << "," << r.d << "," << format_number(r.lambda) << "," << format_number(e.value) << ","
         << (e.valid ? "true" : "false") << ",\"" << e.domain_note << "\"," << format_number(e.std_error) << "\n";
  return os.str();
}

/// One row per lambda; each entry contributes <name>,<name>_valid and, for
/// Monte Carlo entries, <name>_stderr.
inline std::string bounds_csv_wide(const std::vector<BoundReport>& rows, const std::vector<std::string>& meta = {}) {
  std::ostringstream os;
  os << metadata_lines(meta);
  if (rows.empty()) return os.str();
  const auto names = bound_names(rows.front().d);
  auto is_mc = [](const std::string& n) { return n == "tau3" || n == "tau_bar3" || n == "sigma_d" || n == "sigma_bar_d"; };
  os << "lambda";
  for (const auto& n : names) {
    os << "," << n << "," << n << "_valid";
    if (is_mc(n)) os << "," << n << "_stderr";
  }
  os << "\n";
  for (const auto& r : rows) {
    os << format_number(r.lambda);
    for (const auto& n : names) {
      const BoundEntry* e = r.find(n);
      os << "," << format_number(e ? e->value : NAN) << "," << (e && e->valid ? 1 : 0);
      if (is_mc(n)) os << "," << format_number(e ? e->std_error : NAN);
    }
    os << "\n";
  }
  return os.str();
}

inline nlohmann::json bounds_to_json(const std::vector<BoundReport>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& e : r.entries) {
      nlohmann::json v = {{"valid", e.valid}, {"domain_note", e.domain_note}};
      v["value"] = std::isfinite(e.value) ? nlohmann::json(e.value) : nlohmann::json(nullptr);
      if (e.std_error > 0.0) v["std_error"] = e.std_error;
      entries[e.name] = v;
    }
    out.push_back({{"d", r.d}, {"lambda", r.lambda}, {"entries", entries}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundary walks and optimizer dumps
// ---------------------------------------------------------------------------

inline nlohmann::json boundary_walk_to_json(const BoundaryWalk& w, const Packing& p) {
  nlohmann::json cycles = nlohmann::json::array();
  for (const auto& vc : w.vertex_cycles) {
    nlohmann::json pts = nlohmann::json::array();
    for (std::size_t v : vc) pts.push_back({p.center(v)[0], p.center(v)[1]});
    cycles.push_back(pts);
  }
  return {{"perim", w.perim},
          {"components", w.component_count},
          {"edge_cycles", w.cycles},
          {"vertex_cycles", w.vertex_cycles},
          {"cycles", cycles}};
}

inline nlohmann::json optimizer_result_to_json(const OptimizerResult& r, double lambda) {
  nlohmann::json j = packing_to_json(r.best);
  j["n"] = r.best.size();
  j["lambda"] = lambda;
  j["objective"] = r.objective;
  j["density"] = r.density;
  j["contact_count"] = r.contact_count;
  j["lambda_edge_count"] = r.lambda_edge_count;
  j["converged"] = r.converged;
  return j;
}

inline std::string history_csv(const OptimizerResult& r, const std::vector<std::string>& meta = {}) {
  std::ostringstream os;
  os << metadata_lines(meta) << "iteration,objective\n";
  for (const auto& h : r.history) os << h.iteration << "," << format_number(h.objective) << "\n";
  return os.str();
}

}  // namespace softpack
