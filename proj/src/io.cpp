#include "rpia/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rpia/errors.hpp"

namespace rpia {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_field(const std::string& field, std::size_t line_no) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": not a number: '" + field + "'");
  }
  if (pos != field.size()) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": trailing characters in '" + field + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_curve_csv(const std::filesystem::path& path, const Matrix& points) {
  if (points.cols() != 2 && points.cols() != 3) {
    throw ArgumentError("curve points must be 2D or 3D");
  }
  auto out = open_out(path);
  out << (points.cols() == 2 ? "x,y" : "x,y,z") << "\n";
  for (Index j = 0; j < points.rows(); ++j) {
    for (Index c = 0; c < points.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(points(j, c));
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Matrix read_curve_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1: empty file");
  const int dim = line == "x,y" ? 2 : line == "x,y,z" ? 3 : 0;
  if (dim == 0) throw ParseError("line 1: expected header x,y or x,y,z");

  std::vector<std::array<double, 3>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != dim) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(dim) + " fields");
    }
    std::array<double, 3> row{};
    for (int c = 0; c < dim; ++c) row[c] = parse_field(fields[c], line_no);
    rows.push_back(row);
  }
  if (rows.size() < 2) throw ParseError("need at least two data rows");
  Matrix points(static_cast<Index>(rows.size()), dim);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (int c = 0; c < dim; ++c) {
      points(static_cast<Index>(j), c) = rows[j][c];
    }
  }
  return points;
}

void write_surface_csv(const std::filesystem::path& path, const Grid3& grid) {
  auto out = open_out(path);
  out << "h,l,x,y,z\n";
  for (Index h = 0; h < grid.rows(); ++h) {
    for (Index l = 0; l < grid.cols(); ++l) {
      out << h << ',' << l;
      for (int t = 0; t < 3; ++t) {
        out << ',' << format_double(grid.slice[t](h, l));
      }
      out << "\n";
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Grid3 read_surface_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1: empty file");
  if (line != "h,l,x,y,z") throw ParseError("line 1: expected header h,l,x,y,z");

  std::vector<std::array<double, 5>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 5 fields");
    }
    std::array<double, 5> row{};
    for (int c = 0; c < 5; ++c) row[c] = parse_field(fields[c], line_no);
    rows.push_back(row);
  }
  if (rows.empty()) throw ParseError("no data rows");

  const auto m = static_cast<Index>(rows.back()[0]);
  const auto p = static_cast<Index>(rows.back()[1]);
  if (rows.size() != static_cast<std::size_t>((m + 1) * (p + 1))) {
    throw ParseError("surface grid is incomplete");
  }
  Grid3 grid(m + 1, p + 1);
  std::size_t r = 0;
  for (Index h = 0; h <= m; ++h) {
    for (Index l = 0; l <= p; ++l, ++r) {
      if (static_cast<Index>(rows[r][0]) != h ||
          static_cast<Index>(rows[r][1]) != l) {
        throw ParseError("line " + std::to_string(r + 2) +
                         ": rows must be in row-major h,l order");
      }
      grid.set(h, l, {rows[r][2], rows[r][3], rows[r][4]});
    }
  }
  return grid;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  {
    auto in = open_in(path);
    std::string header;
    if (!std::getline(in, header)) throw ParseError("line 1: empty file");
    Dataset ds;
    if (header == "h,l,x,y,z") {
      ds.is_surface = true;
    } else if (header == "x,y" || header == "x,y,z") {
      ds.is_surface = false;
    } else {
      throw ParseError("line 1: unrecognized header '" + header + "'");
    }
    if (ds.is_surface) {
      ds.surface = read_surface_csv(path);
    } else {
      ds.curve = read_curve_csv(path);
    }
    return ds;
  }
}

void write_history_csv(const std::filesystem::path& path,
                       const std::vector<FitReport>& runs) {
  auto out = open_out(path);
  out << "run,k,E_k\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (std::size_t k = 0; k < runs[r].errors.size(); ++k) {
      out << r << ',' << k << ',' << format_double(runs[r].errors[k]) << "\n";
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::string report_json(const std::vector<FitReport>& runs,
                        const std::string& history_path) {
  if (runs.empty()) throw ArgumentError("no runs to report");
  const FitReport& first = runs.front();

  json doc;
  doc["method"] = first.method;
  doc["m"] = first.m;
  doc["n"] = first.n;
  if (first.is_surface()) doc["p"] = first.p;
  if (first.tau > 0) doc["tau"] = first.tau;

  json seeds = json::array();
  json per_run = json::array();
  double mean_iterations = 0.0;
  for (const FitReport& run : runs) {
    seeds.push_back(run.seed);
    per_run.push_back({{"seed", run.seed},
                       {"iterations", run.iterations},
                       {"e_final", run.final_error()},
                       {"wall_ms", run.wall_ms}});
    mean_iterations += static_cast<double>(run.iterations);
  }
  doc["seeds"] = seeds;
  doc["per_run"] = per_run;
  doc["mean_iterations"] = mean_iterations / static_cast<double>(runs.size());
  doc["history_path"] = history_path;
  return doc.dump(2);
}

void write_report_json(const std::filesystem::path& path,
                       const std::vector<FitReport>& runs,
                       const std::string& history_path) {
  auto out = open_out(path);
  out << report_json(runs, history_path) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

void write_report_csv(const std::filesystem::path& path,
                      const std::vector<FitReport>& runs) {
  auto out = open_out(path);
  out << "method,run,seed,iterations,e_final,wall_ms\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const FitReport& run = runs[r];
    out << run.method << ',' << r << ',' << run.seed << ',' << run.iterations
        << ',' << format_double(run.final_error()) << ','
        << format_double(run.wall_ms) << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace rpia
