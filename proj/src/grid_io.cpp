#include "sg/grid_io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace sg {

namespace {

// The format is little-endian by definition; this code targets LE hosts and
// the round-trip test guards the assumption.
void put_u64(std::ostream& os, std::uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}
double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

void write_header(std::ostream& os, const Grid3& g, std::uint64_t ncomp) {
  os.write(kGridMagic, sizeof kGridMagic);
  for (int a = 0; a < 3; ++a) put_u64(os, static_cast<std::uint64_t>(g.dims[a]));
  for (int a = 0; a < 3; ++a) {
    put_f64(os, -g.halfwidth[a]);
    put_f64(os, g.halfwidth[a]);
  }
  put_u64(os, ncomp);
}

template <typename F>
void write_values(std::ostream& os, const Grid3& g, std::int64_t ncomp, F get) {
  for (std::int64_t n = 0; n < g.size(); ++n)
    for (std::int64_t c = 0; c < ncomp; ++c) put_f64(os, get(n, c));
}

}  // namespace

void write_grid_binary(std::ostream& os, const ScalarGridField& f) {
  write_header(os, f.grid, 1);
  write_values(os, f.grid, 1, [&](std::int64_t n, std::int64_t) {
    return f.values[n];
  });
}

void write_grid_binary(std::ostream& os, const VecGridField& f) {
  write_header(os, f.grid, 3);
  write_values(os, f.grid, 3, [&](std::int64_t n, std::int64_t c) {
    return f.values(n, c);
  });
}

void write_grid_binary(const std::string& path, const ScalarGridField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_grid_binary(os, f);
}

void write_grid_binary(const std::string& path, const VecGridField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_grid_binary(os, f);
}

GridDump read_grid_binary(std::istream& is) {
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kGridMagic, sizeof magic) != 0)
    throw std::runtime_error("bad grid dump magic");
  GridDump d;
  for (int a = 0; a < 3; ++a)
    d.grid.dims[a] = static_cast<std::int64_t>(get_u64(is));
  for (int a = 0; a < 3; ++a) {
    const double lo = get_f64(is);
    const double hi = get_f64(is);
    if (hi + lo != 0.0 || !(hi > 0.0))
      throw std::runtime_error("grid dump extents must be symmetric about 0");
    d.grid.halfwidth[a] = hi;
  }
  d.components = static_cast<std::int64_t>(get_u64(is));
  if (d.components <= 0 || d.grid.size() <= 0)
    throw std::runtime_error("bad grid dump header");
  d.values.resize(d.grid.size(), d.components);
  for (std::int64_t n = 0; n < d.grid.size(); ++n)
    for (std::int64_t c = 0; c < d.components; ++c) d.values(n, c) = get_f64(is);
  if (!is) throw std::runtime_error("truncated grid dump");
  return d;
}

GridDump read_grid_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_grid_binary(is);
}

namespace {

template <typename F>
void write_csv(std::ostream& os, const Grid3& g, std::int64_t ncomp, F get) {
  os << "x,y,z";
  for (std::int64_t c = 0; c < ncomp; ++c) os << ",v" << c;
  os << '\n';
  os << std::setprecision(17);
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz)
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy)
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
        const Vec3 x = g.node(ix, iy, iz);
        os << x.x() << ',' << x.y() << ',' << x.z();
        for (std::int64_t c = 0; c < ncomp; ++c)
          os << ',' << get(g.index(ix, iy, iz), c);
        os << '\n';
      }
}

}  // namespace

void write_grid_csv(std::ostream& os, const ScalarGridField& f) {
  write_csv(os, f.grid, 1,
            [&](std::int64_t n, std::int64_t) { return f.values[n]; });
}

void write_grid_csv(std::ostream& os, const VecGridField& f) {
  write_csv(os, f.grid, 3,
            [&](std::int64_t n, std::int64_t c) { return f.values(n, c); });
}

void write_slice_text(std::ostream& os, const ScalarGridField& f,
                      std::int64_t iz) {
  const Grid3& g = f.grid;
  if (iz < 0 || iz >= g.dims[2]) throw std::invalid_argument("slice out of range");
  os << std::setprecision(17);
  for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
    for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
      if (ix) os << ' ';
      os << f.values[g.index(ix, iy, iz)];
    }
    os << '\n';
  }
}

void write_slice_pgm(std::ostream& os, const ScalarGridField& f,
                     std::int64_t iz) {
  const Grid3& g = f.grid;
  if (iz < 0 || iz >= g.dims[2]) throw std::invalid_argument("slice out of range");
  Real lo = f.values[g.index(0, 0, iz)], hi = lo;
  for (std::int64_t iy = 0; iy < g.dims[1]; ++iy)
    for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
      const Real v = f.values[g.index(ix, iy, iz)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const Real span = hi > lo ? hi - lo : 1.0;
  os << "P5\n" << g.dims[0] << ' ' << g.dims[1] << "\n255\n";
  for (std::int64_t iy = 0; iy < g.dims[1]; ++iy)
    for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
      const Real v = (f.values[g.index(ix, iy, iz)] - lo) / span;
      os.put(static_cast<char>(static_cast<unsigned char>(255.0 * v + 0.5)));
    }
}

}  // namespace sg
