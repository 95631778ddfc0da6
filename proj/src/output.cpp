#include "hygrofrac/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hygrofrac {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw OutputError("cannot write to '" + path + "'");
  return os;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_vtk_grid(std::ostream& os, const Mesh& mesh, double time) {
  os << "# vtk DataFile Version 3.0\n";
  os << "hygrofrac snapshot t=" << fmt(time) << " s\n";
  os << "ASCII\n";
  os << "DATASET UNSTRUCTURED_GRID\n";
  os << "FIELD FieldData 1\nTIME 1 1 double\n" << fmt(time) << "\n";

  const int nn = mesh.node_count();
  os << "POINTS " << nn << " double\n";
  for (int n = 0; n < nn; ++n) os << fmt(mesh.x[n]) << " " << fmt(mesh.y[n]) << " 0\n";

  const int nen = mesh.nodes_per_elem();
  const int nel = mesh.element_count();
  os << "CELLS " << nel << " " << nel * (nen + 1) << "\n";
  for (int e = 0; e < nel; ++e) {
    os << nen;
    for (int a = 0; a < nen; ++a) os << " " << mesh.conn[e][a];
    os << "\n";
  }
  os << "CELL_TYPES " << nel << "\n";
  const int vtk_type = mesh.order == ElementOrder::Bilinear4 ? 9 : 23;
  for (int e = 0; e < nel; ++e) os << vtk_type << "\n";
}

void write_scalars(std::ostream& os, const std::string& name, const Eigen::VectorXd& v) {
  os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < v.size(); ++i) os << fmt(v[i]) << "\n";
}

}  // namespace

void write_vtk(const Simulation& sim, const std::string& path) {
  const Mesh& mesh = sim.mesh();
  std::ofstream os = open_or_throw(path);
  write_vtk_grid(os, mesh, sim.time());

  const int nn = mesh.node_count();
  const int nel = mesh.element_count();
  const int nqp = mesh.qp_per_elem();
  const QPState qp = sim.qp_state();

  // element-mean stress averaged over the elements adjacent to each node
  Eigen::MatrixXd node_stress = Eigen::MatrixXd::Zero(nn, 3);
  Eigen::VectorXd node_hits = Eigen::VectorXd::Zero(nn);
  Eigen::VectorXd cell_history = Eigen::VectorXd::Zero(nel);
  for (int e = 0; e < nel; ++e) {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    double h_mean = 0.0;
    for (int q = 0; q < nqp; ++q) {
      mean += qp.stress[static_cast<std::size_t>(e) * nqp + q];
      h_mean += sim.history()[static_cast<std::size_t>(e) * nqp + q];
    }
    mean /= nqp;
    cell_history[e] = h_mean / nqp;
    for (int a = 0; a < mesh.nodes_per_elem(); ++a) {
      node_stress.row(mesh.conn[e][a]) += mean.transpose();
      node_hits[mesh.conn[e][a]] += 1.0;
    }
  }
  for (int n = 0; n < nn; ++n) {
    if (node_hits[n] > 0) node_stress.row(n) /= node_hits[n];
  }

  os << "POINT_DATA " << nn << "\n";
  os << "VECTORS displacement double\n";
  for (int n = 0; n < nn; ++n) {
    os << fmt(sim.displacement()[2 * n]) << " " << fmt(sim.displacement()[2 * n + 1]) << " 0\n";
  }
  write_scalars(os, "damage", sim.damage());
  write_scalars(os, "concentration", sim.concentration());
  write_scalars(os, "indicator", sim.indicator().values);
  write_scalars(os, "stress_xx", node_stress.col(0));
  write_scalars(os, "stress_yy", node_stress.col(1));
  write_scalars(os, "stress_xy", node_stress.col(2));

  os << "CELL_DATA " << nel << "\n";
  os << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < nel; ++e) os << mesh.region[e] << "\n";
  write_scalars(os, "history", cell_history);
}

void write_mesh_vtk(const Mesh& mesh, const std::string& path) {
  std::ofstream os = open_or_throw(path);
  write_vtk_grid(os, mesh, 0.0);
  os << "CELL_DATA " << mesh.element_count() << "\n";
  os << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < mesh.element_count(); ++e) os << mesh.region[e] << "\n";
}

void write_timeseries(const std::vector<TimeSeriesRow>& rows, const std::string& path) {
  std::ofstream os = open_or_throw(path);
  os << "time_s,reaction_force_N,C_center,total_moisture,elongation_mm,max_damage,stage\n";
  for (const auto& row : rows) {
    os << fmt(row.time) << "," << fmt(row.reaction_force) << "," << fmt(row.C_center) << ","
       << fmt(row.total_moisture) << "," << fmt(row.elongation) << "," << fmt(row.max_damage)
       << "," << row.stage << "\n";
  }
}

std::string format_summary(const std::string& scenario, const RunSummary& summary,
                           const std::string& out_dir) {
  std::ostringstream os;
  os << "scenario: " << scenario << "\n"
     << "status: " << (summary.completed ? "completed" : "aborted") << "\n"
     << "final_time_s: " << fmt(summary.final_time) << "\n"
     << "steps_accepted: " << summary.steps_accepted << "\n"
     << "steps_rejected: " << summary.steps_rejected << "\n"
     << "peak_reaction_force_N: " << fmt(summary.peak_force_abs) << "\n"
     << "final_elongation_mm: " << fmt(summary.final_elongation) << "\n"
     << "peak_damage: " << fmt(summary.peak_damage) << "\n"
     << "irreversibility_violations: " << summary.irreversibility_violations << "\n"
     << "max_damage_decrease: " << fmt(summary.max_phi_decrease) << "\n"
     << "wall_time_s: " << fmt(summary.wall_seconds) << "\n"
     << "outputs: " << out_dir << "\n";
  return os.str();
}

}  // namespace hygrofrac
