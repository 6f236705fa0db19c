#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "sg/grid.hpp"
#include "sg/types.hpp"

namespace sg {

enum class ModelKind { rigid_sphere, point_particle, pauli_qm, dirac_field };

const char* model_name(ModelKind m);

struct Arrival {
  Real z;       // detector-plane deflection
  Real weight;  // fraction of the electron (norm or charge) arriving there
};

struct DetectorRecord {
  ModelKind model;
  std::vector<Arrival> arrivals;  // weights sum to 1
  Real flight_time = 0.0;
  Real theta = 0.0;  // spin preparation polar angle
  Real phi_s = 0.0;  // spin preparation azimuth
};

// z-marginal cluster fit: weighted 1-D k-means with k in {1,2}. k = 2 is
// accepted only when the centroid separation is at least 4x the widest
// cluster; a fit between 3x and 4x is genuinely ambiguous (lumps not yet
// separated) and rejected as an error.
struct ZClusters {
  int k = 1;
  std::array<Real, 2> center{0.0, 0.0};
  std::array<Real, 2> weight{0.0, 0.0};
  std::array<Real, 2> sigma{0.0, 0.0};
  Real separation_ratio = 0.0;  // two-cluster separation / max cluster sigma
};

ZClusters cluster_z_marginal(const ScalarGridField& dens);

// Classical route: ballistic arrival at z = v_z * T, weight 1.
DetectorRecord to_detector(ModelKind m, const Vec3& end_velocity,
                           Real flight_time, Real theta, Real phi_s = 0.0);

// Field route: cluster the z marginal of a density snapshot taken at t_sep
// (packets launched from the origin), read each lump's velocity off its
// centroid, and propagate ballistically to the detector.
DetectorRecord to_detector(ModelKind m, const ScalarGridField& density,
                           Real t_sep, Real flight_time, Real theta,
                           Real phi_s = 0.0);

struct OutcomeClassification {
  ModelKind model;
  bool unique = false;    // every run lands in a single cluster
  bool discrete = false;  // all clusters sit on {+expected, -expected}
  std::vector<Real> cluster_centers;
  // The unitary theory alone leaves a split wave; a solution of the
  // measurement problem would restore a single outcome. Set for the quantum
  // wave-function model when unique is false.
  bool uniqueness_requires_interpretation = false;
};

// expected_deflection: the maximal kick deflection v_kick * T; tol: absolute
// window around +/- expected for the discreteness verdict.
std::vector<OutcomeClassification> classify_sweep(
    const std::vector<DetectorRecord>& records, Real expected_deflection,
    Real tol);

// Plain-text feature table over the classified models, plus annotated
// out-of-scope columns. Empty input renders an empty string.
std::string emit_table(const std::vector<OutcomeClassification>& cls);

// Columns: model, theta, arrival_z, weight (one row per arrival).
void write_sweep_csv(std::ostream& os, const std::vector<DetectorRecord>& recs);
void write_sweep_csv(const std::string& path,
                     const std::vector<DetectorRecord>& recs);

}  // namespace sg
