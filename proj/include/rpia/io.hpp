#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rpia/curve_fitters.hpp"
#include "rpia/types.hpp"

namespace rpia {

// Curve CSV: header "x,y" or "x,y,z", one point per row.
void write_curve_csv(const std::filesystem::path& path, const Matrix& points);
Matrix read_curve_csv(const std::filesystem::path& path);

// Surface CSV: header "h,l,x,y,z", row-major in h then l.
void write_surface_csv(const std::filesystem::path& path, const Grid3& grid);
Grid3 read_surface_csv(const std::filesystem::path& path);

struct Dataset {
  bool is_surface = false;
  Matrix curve;
  Grid3 surface;
};

// Dispatches on the header line.
Dataset read_dataset_csv(const std::filesystem::path& path);

// Iteration history of a batch of runs, columns run,k,E_k.
void write_history_csv(const std::filesystem::path& path,
                       const std::vector<FitReport>& runs);

// Aggregate report. Field names are part of the CLI contract.
std::string report_json(const std::vector<FitReport>& runs,
                        const std::string& history_path);
void write_report_json(const std::filesystem::path& path,
                       const std::vector<FitReport>& runs,
                       const std::string& history_path);

// Flat per-run table, one row per seed.
void write_report_csv(const std::filesystem::path& path,
                      const std::vector<FitReport>& runs);

std::string format_double(double v);

}  // namespace rpia
