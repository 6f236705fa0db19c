#pragma once

#include <iosfwd>
#include <string>

#include "sg/grid.hpp"

namespace sg {

// Raw binary dump: magic "SGGRID01", three uint64 LE dims, six float64 LE box
// extents (xmin,xmax,ymin,ymax,zmin,zmax), uint64 LE component count, then
// float64 LE values in x-fastest node order, components consecutive per node.
inline constexpr char kGridMagic[8] = {'S', 'G', 'G', 'R', 'I', 'D', '0', '1'};

void write_grid_binary(std::ostream& os, const ScalarGridField& f);
void write_grid_binary(std::ostream& os, const VecGridField& f);
void write_grid_binary(const std::string& path, const ScalarGridField& f);
void write_grid_binary(const std::string& path, const VecGridField& f);

struct GridDump {
  Grid3 grid;
  std::int64_t components = 0;
  Eigen::MatrixXd values;  // node-major rows, one column per component
};
GridDump read_grid_binary(std::istream& is);
GridDump read_grid_binary(const std::string& path);

// CSV rows: x,y,z,components... (for small grids).
void write_grid_csv(std::ostream& os, const ScalarGridField& f);
void write_grid_csv(std::ostream& os, const VecGridField& f);

// z-slice exports of a scalar field: plain-text matrix (rows = y, cols = x)
// and 8-bit binary graymap scaled to [min,max].
void write_slice_text(std::ostream& os, const ScalarGridField& f,
                      std::int64_t iz);
void write_slice_pgm(std::ostream& os, const ScalarGridField& f,
                     std::int64_t iz);

}  // namespace sg
