#pragma once

#include <string>
#include <vector>

#include "hygrofrac/driver.hpp"
#include "hygrofrac/mesh.hpp"

namespace hygrofrac {

class OutputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Legacy ASCII VTK unstructured-grid snapshot with point fields
/// displacement (3 components, z = 0), damage, concentration, indicator,
/// point-averaged stress components, and per-cell region/history data.
void write_vtk(const Simulation& sim, const std::string& path);

/// Mesh-only VTK export (points, cells, region tags) for inspection.
void write_mesh_vtk(const Mesh& mesh, const std::string& path);

/// CSV with header time_s,reaction_force_N,C_center,total_moisture,
/// elongation_mm,max_damage,stage; rows strictly time-ordered.
void write_timeseries(const std::vector<TimeSeriesRow>& rows, const std::string& path);

/// Human-readable run summary block.
std::string format_summary(const std::string& scenario, const RunSummary& summary,
                           const std::string& out_dir);

}  // namespace hygrofrac
