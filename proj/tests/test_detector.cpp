#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sg/detector.hpp"
#include "sg/grid.hpp"

using namespace sg;

namespace {

// Density depending on z only: rho(z) as a sum of Gaussians (center, sigma,
// weight). The x/y dependence is irrelevant to the z marginal.
ScalarGridField z_profile(const Grid3& g,
                          const std::vector<std::array<Real, 3>>& lumps) {
  ScalarGridField f;
  f.grid = g;
  f.values.resize(g.size());
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    const Real z = g.coord(2, iz);
    Real rho = 0.0;
    for (const auto& [c, s, w] : lumps) {
      rho += w / s * std::exp(-0.5 * (z - c) * (z - c) / (s * s));
    }
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        f.values[row] = rho;
      }
    }
  }
  return f;
}

}  // namespace

TEST_CASE("cluster fit separates well-split lumps") {
  const Grid3 g(64, 10.0);
  const ScalarGridField dens =
      z_profile(g, {{-4.0, 0.3, 0.6}, {4.0, 0.3, 0.4}});
  const ZClusters c = cluster_z_marginal(dens);
  REQUIRE(c.k == 2);
  CHECK(std::abs(c.center[0] + 4.0) < 0.02);
  CHECK(std::abs(c.center[1] - 4.0) < 0.02);
  CHECK(c.weight[0] == doctest::Approx(0.6).epsilon(1e-3));
  CHECK(c.weight[1] == doctest::Approx(0.4).epsilon(1e-3));
  CHECK(c.sigma[0] == doctest::Approx(0.3).epsilon(0.02));
  CHECK(c.separation_ratio > 4.0);
}

TEST_CASE("cluster fit keeps a single lump whole") {
  const Grid3 g(64, 8.0);
  const ZClusters c = cluster_z_marginal(z_profile(g, {{0.5, 1.0, 1.0}}));
  REQUIRE(c.k == 1);
  CHECK(std::abs(c.center[0] - 0.5) < 0.01);
  CHECK(c.weight[0] == 1.0);
  CHECK(c.sigma[0] == doctest::Approx(1.0).epsilon(0.01));
  // A split-in-half Gaussian would show separation ~2.65 widths: below the
  // two-lump threshold.
  CHECK(c.separation_ratio < 3.0);

  // Two lumps merged within a width of each other also read as one.
  const ZClusters m = cluster_z_marginal(
      z_profile(g, {{-1.0, 1.0, 0.5}, {1.0, 1.0, 0.5}}));
  CHECK(m.k == 1);
}

TEST_CASE("ambiguous separation is an error, not a guess") {
  const Grid3 g(64, 8.0);
  // Centers 3.5 sigma apart: the fit ratio lands between 3 and 4.
  const ScalarGridField dens =
      z_profile(g, {{-1.75, 1.0, 0.5}, {1.75, 1.0, 0.5}});
  CHECK_THROWS_WITH_AS(cluster_z_marginal(dens),
                       doctest::Contains("lumps not yet separated"),
                       std::runtime_error);
}

TEST_CASE("classical arrivals are ballistic") {
  const DetectorRecord r =
      to_detector(ModelKind::rigid_sphere, Vec3(0.1, 0.0, 2.0), 5.0, 0.3);
  CHECK(r.arrivals.size() == 1);
  CHECK(r.arrivals[0].z == 10.0);
  CHECK(r.arrivals[0].weight == 1.0);
  CHECK(r.theta == 0.3);
}

TEST_CASE("field arrivals extrapolate each lump from the snapshot") {
  const Grid3 g(96, 5.0);
  const ScalarGridField dens =
      z_profile(g, {{-3.0, 0.1, 0.7}, {3.0, 0.1, 0.3}});
  const DetectorRecord r =
      to_detector(ModelKind::dirac_field, dens, 1.0, 10.0, 1.0);
  REQUIRE(r.arrivals.size() == 2);
  CHECK(std::abs(r.arrivals[0].z + 30.0) < 1e-2);
  CHECK(std::abs(r.arrivals[1].z - 30.0) < 1e-2);
  CHECK(r.arrivals[0].weight == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(r.arrivals[1].weight == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(r.arrivals[0].z < r.arrivals[1].z);  // sorted ascending

  CHECK_THROWS_AS(to_detector(ModelKind::dirac_field, dens, 0.0, 10.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("sweep classification: unique vs discrete") {
  std::vector<DetectorRecord> recs;
  const Real T = 10.0, zmax = 30.0;
  for (const Real theta : {0.0, 0.8, 1.6, 2.4, pi}) {
    // Classical models: one arrival on the continuum z = zmax cos(theta).
    for (const ModelKind m :
         {ModelKind::rigid_sphere, ModelKind::point_particle}) {
      DetectorRecord r;
      r.model = m;
      r.theta = theta;
      r.flight_time = T;
      r.arrivals.push_back({zmax * std::cos(theta), 1.0});
      recs.push_back(r);
    }
    // Wave models: two discrete arrivals at +/- zmax.
    for (const ModelKind m : {ModelKind::pauli_qm, ModelKind::dirac_field}) {
      DetectorRecord r;
      r.model = m;
      r.theta = theta;
      r.flight_time = T;
      const Real wu = std::cos(theta / 2) * std::cos(theta / 2);
      if (wu < 1.0) r.arrivals.push_back({-zmax, 1.0 - wu});
      if (wu > 0.0) r.arrivals.push_back({zmax, wu});
      recs.push_back(r);
    }
  }

  const auto cls = classify_sweep(recs, zmax, 0.6);
  REQUIRE(cls.size() == 4);
  for (const auto& c : cls) {
    switch (c.model) {
      case ModelKind::rigid_sphere:
      case ModelKind::point_particle:
        CHECK(c.unique);
        CHECK_FALSE(c.discrete);
        CHECK_FALSE(c.uniqueness_requires_interpretation);
        break;
      case ModelKind::pauli_qm:
        CHECK_FALSE(c.unique);
        CHECK(c.discrete);
        CHECK(c.uniqueness_requires_interpretation);
        break;
      case ModelKind::dirac_field:
        CHECK_FALSE(c.unique);
        CHECK(c.discrete);
        CHECK_FALSE(c.uniqueness_requires_interpretation);
        break;
    }
  }

  SUBCASE("rendered feature table") {
    const std::string table = emit_table(cls);
    CHECK(table.find("feature      | classical rigid body") == 0);
    CHECK(table.find("classical point particle") != std::string::npos);
    CHECK(table.find("nonrel. quantum particle") != std::string::npos);
    CHECK(table.find("classical Dirac field") != std::string::npos);
    CHECK(table.find("rel. quantum particle") != std::string::npos);
    CHECK(table.find("out of scope") != std::string::npos);
    CHECK(table.find("uniqueness") != std::string::npos);
    CHECK(table.find("discreteness") != std::string::npos);
    CHECK(table.find("no*") != std::string::npos);
    CHECK(table.find("* pre-interpretation verdict of the unitary theory") !=
          std::string::npos);
    CHECK(emit_table({}) == "");
  }

  SUBCASE("sweep CSV") {
    std::ostringstream os;
    write_sweep_csv(os, recs);
    const std::string csv = os.str();
    CHECK(csv.rfind("model,theta,arrival_z,weight\n", 0) == 0);
    CHECK(csv.find("rigid_sphere,0,30,1\n") != std::string::npos);
    CHECK(csv.find("pauli_qm,") != std::string::npos);
  }
}

TEST_CASE("model names round-trip") {
  CHECK(std::string(model_name(ModelKind::rigid_sphere)) == "rigid_sphere");
  CHECK(std::string(model_name(ModelKind::point_particle)) == "point_particle");
  CHECK(std::string(model_name(ModelKind::pauli_qm)) == "pauli_qm");
  CHECK(std::string(model_name(ModelKind::dirac_field)) == "dirac_field");
}
