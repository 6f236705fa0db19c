#include "sg/detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sg {

const char* model_name(ModelKind m) {
  switch (m) {
    case ModelKind::rigid_sphere: return "rigid_sphere";
    case ModelKind::point_particle: return "point_particle";
    case ModelKind::pauli_qm: return "pauli_qm";
    case ModelKind::dirac_field: return "dirac_field";
  }
  return "unknown";
}

namespace {

struct Marginal {
  std::vector<Real> z;
  std::vector<Real> w;  // normalized weights
};

Marginal z_marginal(const ScalarGridField& dens) {
  const Grid3& g = dens.grid;
  Marginal m;
  m.z.resize(g.dims[2]);
  m.w.assign(g.dims[2], 0.0);
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        m.w[iz] += std::abs(dens.values[row]);
      }
    }
  }
  Real total = 0.0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    m.z[iz] = g.coord(2, iz);
    total += m.w[iz];
  }
  if (!(total > 0.0)) throw std::invalid_argument("cluster fit: empty density");
  for (Real& w : m.w) w /= total;
  return m;
}

Real weighted_quantile(const Marginal& m, Real q) {
  Real acc = 0.0;
  for (std::size_t i = 0; i < m.z.size(); ++i) {
    acc += m.w[i];
    if (acc >= q) return m.z[i];
  }
  return m.z.back();
}

}  // namespace

ZClusters cluster_z_marginal(const ScalarGridField& dens) {
  const Marginal m = z_marginal(dens);
  const Real hz = dens.grid.spacing(2);

  // Two-center weighted k-means, initialized at the 10%/90% quantiles.
  Real c0 = weighted_quantile(m, 0.10), c1 = weighted_quantile(m, 0.90);
  for (int iter = 0; iter < 200; ++iter) {
    Real s0 = 0, sz0 = 0, s1 = 0, sz1 = 0;
    const Real mid = 0.5 * (c0 + c1);
    for (std::size_t i = 0; i < m.z.size(); ++i) {
      if (m.z[i] < mid) {
        s0 += m.w[i];
        sz0 += m.w[i] * m.z[i];
      } else {
        s1 += m.w[i];
        sz1 += m.w[i] * m.z[i];
      }
    }
    const Real n0 = s0 > 0 ? sz0 / s0 : c0;
    const Real n1 = s1 > 0 ? sz1 / s1 : c1;
    const bool done = std::abs(n0 - c0) + std::abs(n1 - c1) < 1e-14 * hz;
    c0 = n0;
    c1 = n1;
    if (done) break;
  }

  // Cluster moments under the converged split.
  Real s[2] = {0, 0}, mean[2] = {c0, c1}, var[2] = {0, 0};
  const Real mid = 0.5 * (c0 + c1);
  for (std::size_t i = 0; i < m.z.size(); ++i) {
    const int j = m.z[i] < mid ? 0 : 1;
    s[j] += m.w[i];
    var[j] += m.w[i] * (m.z[i] - mean[j]) * (m.z[i] - mean[j]);
  }
  for (int j = 0; j < 2; ++j) var[j] = s[j] > 0 ? var[j] / s[j] : 0.0;

  ZClusters out;
  const Real sig_floor = 0.5 * hz;  // delta-like lumps: floor at grid scale
  const Real max_sig =
      std::max({std::sqrt(var[0]), std::sqrt(var[1]), sig_floor});
  const Real separation = std::abs(c1 - c0);
  out.separation_ratio = separation / max_sig;

  const bool two = s[0] > 1e-6 && s[1] > 1e-6 && out.separation_ratio >= 4.0;
  if (two) {
    out.k = 2;
    out.center = {c0, c1};
    out.weight = {s[0], s[1]};
    out.sigma = {std::sqrt(var[0]), std::sqrt(var[1])};
    return out;
  }
  if (s[0] > 1e-6 && s[1] > 1e-6 && out.separation_ratio > 3.0) {
    std::ostringstream msg;
    msg << "lumps not yet separated: separation " << separation << " is only "
        << out.separation_ratio << " cluster widths (need 4)";
    throw std::runtime_error(msg.str());
  }

  // Unimodal: overall weighted moments.
  out.k = 1;
  Real mu = 0.0, v2 = 0.0;
  for (std::size_t i = 0; i < m.z.size(); ++i) mu += m.w[i] * m.z[i];
  for (std::size_t i = 0; i < m.z.size(); ++i) {
    v2 += m.w[i] * (m.z[i] - mu) * (m.z[i] - mu);
  }
  out.center = {mu, 0.0};
  out.weight = {1.0, 0.0};
  out.sigma = {std::sqrt(v2), 0.0};
  return out;
}

DetectorRecord to_detector(ModelKind m, const Vec3& end_velocity,
                           Real flight_time, Real theta, Real phi_s) {
  DetectorRecord r;
  r.model = m;
  r.flight_time = flight_time;
  r.theta = theta;
  r.phi_s = phi_s;
  r.arrivals.push_back({end_velocity.z() * flight_time, 1.0});
  return r;
}

DetectorRecord to_detector(ModelKind m, const ScalarGridField& density,
                           Real t_sep, Real flight_time, Real theta,
                           Real phi_s) {
  if (!(t_sep > 0.0)) {
    throw std::invalid_argument("to_detector: separation time must be > 0");
  }
  const ZClusters c = cluster_z_marginal(density);
  DetectorRecord r;
  r.model = m;
  r.flight_time = flight_time;
  r.theta = theta;
  r.phi_s = phi_s;
  for (int j = 0; j < c.k; ++j) {
    const Real v = c.center[j] / t_sep;  // ballistic from the origin
    r.arrivals.push_back({v * flight_time, c.weight[j]});
  }
  std::sort(r.arrivals.begin(), r.arrivals.end(),
            [](const Arrival& a, const Arrival& b) { return a.z < b.z; });
  Real sum = 0.0;
  for (const Arrival& a : r.arrivals) sum += a.weight;
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::runtime_error("detector record: arrival weights do not sum to 1");
  }
  return r;
}

std::vector<OutcomeClassification> classify_sweep(
    const std::vector<DetectorRecord>& records, Real expected_deflection,
    Real tol) {
  std::map<ModelKind, OutcomeClassification> by_model;
  for (const DetectorRecord& r : records) {
    auto [it, fresh] = by_model.try_emplace(r.model);
    OutcomeClassification& c = it->second;
    if (fresh) {
      c.model = r.model;
      c.unique = true;
      c.discrete = true;
    }
    if (r.arrivals.size() != 1) c.unique = false;
    for (const Arrival& a : r.arrivals) {
      c.cluster_centers.push_back(a.z);
      const bool on_spot = std::abs(a.z - expected_deflection) <= tol ||
                           std::abs(a.z + expected_deflection) <= tol;
      if (!on_spot) c.discrete = false;
    }
  }
  std::vector<OutcomeClassification> out;
  for (auto& [k, c] : by_model) {
    if (k == ModelKind::pauli_qm && !c.unique) {
      c.uniqueness_requires_interpretation = true;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string emit_table(const std::vector<OutcomeClassification>& cls) {
  if (cls.empty()) return "";

  struct Column {
    std::string title;
    std::string unique, discrete;
  };
  std::vector<Column> cols;
  bool caveat = false;
  for (const OutcomeClassification& c : cls) {
    Column col;
    switch (c.model) {
      case ModelKind::rigid_sphere: col.title = "classical rigid body"; break;
      case ModelKind::point_particle: col.title = "classical point particle"; break;
      case ModelKind::pauli_qm: col.title = "nonrel. quantum particle"; break;
      case ModelKind::dirac_field: col.title = "classical Dirac field"; break;
    }
    col.unique = c.unique ? "yes" : "no";
    if (c.uniqueness_requires_interpretation) {
      col.unique += "*";
      caveat = true;
    }
    col.discrete = c.discrete ? "yes" : "no";
    cols.push_back(col);
  }
  cols.push_back({"rel. quantum particle", "out of scope", "out of scope"});
  cols.push_back({"rel. quantum field", "out of scope", "out of scope"});

  const std::string rows[3] = {"feature", "uniqueness", "discreteness"};
  std::vector<std::size_t> width(cols.size() + 1);
  width[0] = 12;  // widest row label
  for (std::size_t j = 0; j < cols.size(); ++j) {
    width[j + 1] = std::max({cols[j].title.size(), cols[j].unique.size(),
                             cols[j].discrete.size()});
  }
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };

  std::ostringstream os;
  os << pad(rows[0], width[0]);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    os << " | " << pad(cols[j].title, width[j + 1]);
  }
  os << '\n';
  os << std::string(width[0], '-');
  for (std::size_t j = 0; j < cols.size(); ++j) {
    os << "-+-" << std::string(width[j + 1], '-');
  }
  os << '\n';
  os << pad(rows[1], width[0]);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    os << " | " << pad(cols[j].unique, width[j + 1]);
  }
  os << '\n';
  os << pad(rows[2], width[0]);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    os << " | " << pad(cols[j].discrete, width[j + 1]);
  }
  os << '\n';
  if (caveat) {
    os << "\n* pre-interpretation verdict of the unitary theory: the wave\n"
          "  splits into both branches; a solution of the measurement problem\n"
          "  restores a single outcome per run.\n";
  }
  return os.str();
}

void write_sweep_csv(std::ostream& os, const std::vector<DetectorRecord>& recs) {
  os << "model,theta,arrival_z,weight\n";
  os.precision(17);
  for (const DetectorRecord& r : recs) {
    for (const Arrival& a : r.arrivals) {
      os << model_name(r.model) << ',' << r.theta << ',' << a.z << ','
         << a.weight << '\n';
    }
  }
}

void write_sweep_csv(const std::string& path,
                     const std::vector<DetectorRecord>& recs) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_sweep_csv(os, recs);
}

}  // namespace sg
