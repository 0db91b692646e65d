#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "common/generators.hpp"
#include "common/oracle_values.hpp"
#include "common/spectral_oracle.hpp"
#include "fracwave/analysis.hpp"
#include "fracwave/error.hpp"
#include "fracwave/fft.hpp"
#include "fracwave/field_io.hpp"
#include "fracwave/mittag_leffler.hpp"
#include "fracwave/parallel.hpp"
#include "fracwave/spectral.hpp"

using namespace fracwave;
using std::numbers::pi;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Field random_field(const Grid& g, gen::Source& src, Domain domain = Domain::Space) {
  std::vector<cplx> v(g.size());
  for (auto& c : v) c = {src.uniform(-1, 1), src.uniform(-1, 1)};
  return Field(g, domain, std::move(v));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no fracwave::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Grid, NodesAndSpacing) {
  const Grid g = Grid::uniform(1, 16, 8.0);
  EXPECT_DOUBLE_EQ(g.dx(0), 0.5);
  EXPECT_DOUBLE_EQ(g.x(0, 8), 0.0);
  EXPECT_DOUBLE_EQ(g.x(0, 0), -4.0);
  EXPECT_DOUBLE_EQ(g.xi(0, 0), -pi * 2.0);
  EXPECT_DOUBLE_EQ(g.xi(0, 8), 0.0);
  EXPECT_DOUBLE_EQ(g.nyquist(), 2.0 * pi);
  EXPECT_EQ(g.size(), 16u);
}

TEST(Grid, RejectsBadShapes) {
  EXPECT_EQ(code_of([] { Grid::uniform(1, 12, 1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Grid::uniform(1, 4, 1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Grid::uniform(4, 8, 1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Grid::uniform(2, 8, -1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Field(Grid::uniform(1, 8, 1.0), Domain::Space, std::vector<cplx>(7)); }),
            ErrorCode::ShapeMismatch);
}

TEST(Transform, GaussianIsSelfDual) {
  const Grid g = Grid::uniform(1, 1024, 40.0);
  const Field phi = make_preset("gaussian", g);
  const Field hat = transform(phi);
  double err = 0.0;
  for (int m = 0; m < 1024; ++m) {
    const double xi = g.xi(0, m);
    err = std::max(err, std::abs(hat[m] - std::sqrt(2 * pi) * std::exp(-xi * xi / 2)));
  }
  EXPECT_LT(err, 1e-10);
}

TEST(Transform, ZeroStaysZero) {
  const Grid g = Grid::uniform(2, 16, 5.0);
  const Field z = transform(Field(g, Domain::Space));
  EXPECT_EQ(linf_norm(z), 0.0);
}

TEST(Transform, AnnulusWaveMatchesDirectQuadrature) {
  const Grid g = Grid::uniform(1, 4096, 512.0);
  const Field hat = transform(make_preset("annulus_wave", g));
  const int c = 2048;
  EXPECT_NEAR(hat[c + 41].real(), oracle::kAnnulusTransform41, 1e-3);
  EXPECT_NEAR(hat[c + 122].real(), oracle::kAnnulusTransform122, 1e-3);
  EXPECT_NEAR(hat[c + 245].real(), oracle::kAnnulusTransform245, 1e-3);
  EXPECT_NEAR(hat[c + 204].real(), oracle::kAnnulusTransform204, 1e-3);
  // the plateau of the annulus sits at pi
  EXPECT_NEAR(hat[c + 122].real(), pi, 0.02);
  EXPECT_NEAR(hat[c - 122].real(), pi, 0.02);
}

TEST(Transform, WrongDomainIsShapeMismatch) {
  const Grid g = Grid::uniform(1, 8, 1.0);
  EXPECT_EQ(code_of([&] { transform(Field(g, Domain::Frequency)); }), ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([&] { inverse_transform(Field(g, Domain::Space)); }), ErrorCode::ShapeMismatch);
}

TEST(TransformProperty, RoundTripAndParseval) {
  gen::Source src(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = src.integer(1, 3);
    const int n = 1 << src.integer(3, d == 3 ? 5 : 7);
    std::vector<int> pts(d, n);
    std::vector<double> ext(d);
    for (auto& e : ext) e = src.log_uniform(1.0, 100.0);
    const Grid g(d, pts, ext);
    const Field f = random_field(g, src);
    const Field hat = transform(f);
    const Field back = inverse_transform(hat);
    EXPECT_LT(max_abs_diff(back, f), 1e-12 * linf_norm(f) * 10);
    EXPECT_NEAR(l2_norm(hat), l2_norm(f), 1e-12 * l2_norm(f));
  }
}

TEST(Propagate, TimeZeroReturnsInputExactly) {
  const Grid g = Grid::uniform(1, 64, 20.0);
  const Field phi = make_preset("bump", g);
  const Field u = propagate_ml(phi, {0.3, 0.7, 0.5}, 0.0);
  EXPECT_EQ(u.samples(), phi.samples());
  const Field h = propagate_halfwave(phi, 0.0);
  EXPECT_LT(max_abs_diff(h, phi), 1e-15);
}

TEST(Propagate, SchroedingerGaussianClosedForm) {
  const Grid g = Grid::uniform(1, 2048, 200.0);
  const Field phi = make_preset("gaussian", g);
  for (double t : {0.5, 2.0, 7.0}) {
    const Field u = propagate_ml(phi, {1.0, 2.0, 1.0}, t);
    const double s = 1.0 + 4.0 * t * t;
    double err = 0.0;
    for (int j = 0; j < 2048; ++j) {
      const double x = g.x(0, j);
      err = std::max(err, std::abs(std::abs(u[j]) - std::pow(s, -0.25) * std::exp(-x * x / (2 * s))));
    }
    EXPECT_LT(err, 1e-10) << t;
  }
}

TEST(Propagate, HalfWaveSplitsIntoTranslates) {
  const Grid g = Grid::uniform(1, 4096, 200.0);
  const Field phi = make_preset("gaussian", g);
  for (double t : {2.0, 5.0}) {
    const Field u = propagate_ml(phi, {1.0, 1.0, 1.0}, t);
    const Field h = propagate_halfwave(phi, t);
    double err = 0.0;
    for (int j = 0; j < 4096; ++j) {
      const double x = g.x(0, j);
      const double expect = 0.5 * (std::exp(-(x - t) * (x - t) / 2) + std::exp(-(x + t) * (x + t) / 2));
      err = std::max(err, std::abs(u[j].real() - expect));
    }
    EXPECT_LT(err, 1e-6) << t;
    EXPECT_LT(max_abs_diff(u, h), 1e-10);
  }
}

TEST(Propagate, NonTemperedNeedsOverride) {
  const Grid g = Grid::uniform(1, 64, 20.0);
  const Field phi = make_preset("gaussian", g);
  EXPECT_EQ(code_of([&] { propagate_ml(phi, {0.5, 1.0, 0.2}, 1.0); }), ErrorCode::NotTempered);
  EXPECT_NO_THROW(propagate_ml(phi, {0.5, 1.0, 0.2}, 0.1, true));
  EXPECT_EQ(code_of([&] { propagate_ml(transform(phi), {0.5, 1.0, 0.5}, 1.0); }),
            ErrorCode::ShapeMismatch);
}

TEST(PropagateProperty, UnitaryFlowsPreserveL2) {
  gen::Source src(22);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = src.integer(1, 2);
    const Grid g = Grid::uniform(d, d == 1 ? 256 : 32, src.uniform(10, 60));
    const Field phi = random_field(g, src);
    const double t = src.log_uniform(0.01, 100.0);
    const double n0 = l2_norm(phi);
    EXPECT_NEAR(l2_norm(propagate_halfwave(phi, t)), n0, 1e-12 * n0);
    EXPECT_NEAR(l2_norm(propagate_ml(phi, {1.0, src.uniform(0.5, 2.0), 1.0}, t)), n0, 1e-12 * n0);
    for (const char* w : {"abs", "square", "power:1.5", "indicator", "linear:0.7"}) {
      EXPECT_NEAR(l2_norm(propagate_unitary(phi, Dispersion::parse(w), t)), n0, 1e-12 * n0) << w;
    }
  }
}

TEST(PropagateProperty, TemperedFlowIsBoundedBySymbolSup) {
  gen::Source src(23);
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = src.uniform(0.2, 1.0);
    const SymbolSpec spec{alpha, src.uniform(0.3, 2.0), src.uniform(alpha, 1.0)};
    const Grid g = Grid::uniform(1, 256, 40.0);
    const Field phi = random_field(g, src);
    const double t = src.log_uniform(0.1, 50.0);
    const RadialFrequencies radial(g);
    double sup = 0.0;
    for (double r : radial.radii()) sup = std::max(sup, std::abs(ml_symbol(spec, t, r)));
    EXPECT_LE(l2_norm(propagate_ml(phi, spec, t)), sup * l2_norm(phi) * (1 + 1e-12));
  }
}

TEST(Unitary, IndicatorPreservesSupportAtFullPeriod) {
  const Grid g = Grid::uniform(1, 8192, 400.0);
  const Field phi = make_preset("bump", g);
  const Dispersion w = Dispersion::indicator();
  EXPECT_LT(tail_mass(propagate_unitary(phi, w, 2 * pi), 1.1), 1e-8);
  EXPECT_GT(tail_mass(propagate_unitary(phi, w, pi), 1.1), 1e-3);
}

TEST(Unitary, LinearSymbolTranslates) {
  const Grid g = Grid::uniform(1, 1024, 64.0);
  const Field phi = make_preset("bump", g);
  const double c = 1.5;
  const double t = 2.0;  // shift 3 = 48 cells
  const Field u = propagate_unitary(phi, Dispersion::linear(c), t);
  double err = 0.0;
  for (int j = 0; j < 1024; ++j) err = std::max(err, std::abs(u[(j + 48) % 1024] - phi[j]));
  EXPECT_LT(err, 1e-12);
  EXPECT_LT(tail_mass(u, 1.1, {3.0}), 1e-8);
}

TEST(Unitary, TabulatedMustMatchGrid) {
  const Grid g = Grid::uniform(1, 64, 10.0);
  const Grid h = Grid::uniform(1, 128, 10.0);
  const Dispersion w = Dispersion::tabulated(g, std::vector<double>(64, 0.5));
  const Field phi = make_preset("gaussian", g);
  const Field u = propagate_unitary(phi, w, 2.0);
  EXPECT_LT(max_abs_diff(u, Field(g, Domain::Space, [&] {
              std::vector<cplx> v(phi.samples());
              for (auto& c : v) c *= std::polar(1.0, -1.0);
              return v;
            }())),
            1e-14);
  EXPECT_EQ(code_of([&] { propagate_unitary(make_preset("gaussian", h), w, 1.0); }),
            ErrorCode::ShapeMismatch);
}

TEST(Residual, AtOriginIsOneMinusInverseAlpha) {
  for (double t : {0.0, 1.0, 30.0}) {
    EXPECT_NEAR(residual_multiplier(0.5, t, 0.0).real(), -1.0, 1e-15);
    EXPECT_NEAR(std::abs(residual_multiplier(0.25, t, 0.0)), 3.0, 1e-15);
  }
}

TEST(Residual, OracleValueAtHundred) {
  const cplx m = residual_multiplier(0.5, 10.0, 100.0);
  EXPECT_LT(std::abs(m - oracle::kResidualHalfT10Xi100) / std::abs(oracle::kResidualHalfT10Xi100), 1e-9);
  // |m| <~ C (t|xi|)^-alpha
  EXPECT_LT(std::abs(m), 1.0 / std::sqrt(1000.0));
}

TEST(Residual, TimeZeroScalesTheDatum) {
  const Grid g = Grid::uniform(1, 128, 30.0);
  const Field phi = make_preset("gaussian", g);
  const Field r = apply_residual(phi, 0.25, 0.0);
  for (std::size_t i = 0; i < phi.size(); ++i) EXPECT_NEAR(std::abs(r[i] + 3.0 * phi[i]), 0.0, 1e-12);
}

TEST(ResidualProperty, NormBoundAndMonotoneModulus) {
  gen::Source src(24);
  const Grid g = Grid::uniform(1, 512, 100.0);
  for (int trial = 0; trial < 12; ++trial) {
    const double alpha = src.uniform(0.15, 0.95);
    const double t = src.log_uniform(0.1, 1e3);
    const Field phi = random_field(g, src);
    EXPECT_LE(l2_norm(apply_residual(phi, alpha, t)), (1 - alpha) / alpha * l2_norm(phi) * (1 + 1e-12));
  }
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double t : {1.0, 10.0, 100.0}) {
      const RadialFrequencies radial(Grid::uniform(1, 4096, 300.0));
      double prev = std::abs(residual_multiplier(alpha, t, 0.0));
      for (double r : radial.radii()) {
        const double m = std::abs(residual_multiplier(alpha, t, r));
        EXPECT_LE(m, prev * (1 + 1e-12) + 1e-15) << alpha << " " << t << " " << r;
        prev = m;
      }
    }
  }
}

TEST(Residual, GaussianRatioAtThousandMatchesQuadrature) {
  // Direct quadrature gives ||E(1000) phi|| / ||phi|| = 0.0522, so the
  // calibrated threshold is 0.06 rather than 0.05. |m| has a square-root cusp at
  // xi = 0 on the scale 1/t, which limits the node sum to O(dxi^1.5) accuracy.
  const Grid g = Grid::uniform(1, 1 << 16, 65536.0);
  const Field phi = make_preset("gaussian", g);
  const double ratio = l2_norm(apply_residual(phi, 0.5, 1000.0)) / l2_norm(phi);
  EXPECT_NEAR(ratio, oracle::kStrongRatio[12], 3e-3 * oracle::kStrongRatio[12]);
  EXPECT_LT(ratio, 0.06);
}

TEST(Presets, ShapesAndErrors) {
  const Grid g = Grid::uniform(2, 32, 8.0);
  const Field b = make_preset("bump", g);
  EXPECT_NEAR(linf_norm(b), std::exp(-1.0), 1e-15);
  EXPECT_EQ(tail_mass(b, 1.0), 0.0);
  EXPECT_EQ(code_of([&] { make_preset("annulus_wave", g); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { make_preset("nope", g); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(preset_support_radius("bump"), 1.0);
  EXPECT_TRUE(std::isinf(preset_support_radius("gaussian")));
}

TEST(RadialFrequencies, DistinctRadiiCoverEveryNode) {
  const Grid g(2, {16, 32}, {10.0, 17.0});
  const RadialFrequencies radial(g);
  const std::vector<double> r2 = node_radius_squared(g, Domain::Frequency);
  ASSERT_EQ(radial.node_radius().size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(radial.radii()[radial.node_radius()[i]], std::sqrt(r2[i]), 1e-12);
  }
  for (std::size_t k = 1; k < radial.radii().size(); ++k) EXPECT_LT(radial.radii()[k - 1], radial.radii()[k]);
}

TEST(FieldIo, RoundTripAndHeader) {
  gen::Source src(25);
  const Grid g(2, {8, 16}, {3.0, 5.5});
  const Field f = random_field(g, src, Domain::Frequency);
  const auto path = (std::filesystem::temp_directory_path() / "fracwave_io_test.fwf").string();
  write_field(path, f);
  const Field back = read_field(path);
  EXPECT_EQ(back.grid(), g);
  EXPECT_EQ(back.domain(), Domain::Frequency);
  EXPECT_EQ(back.samples(), f.samples());
  std::ifstream in(path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "FWF1");
  EXPECT_EQ(std::filesystem::file_size(path), 4u + 4 + 2 * 4 + 2 * 8 + 1 + 16u * 128);
  std::filesystem::remove(path);
}

TEST(FieldIo, TruncatedFileIsIoError) {
  const auto path = (std::filesystem::temp_directory_path() / "fracwave_bad.fwf").string();
  write_file_atomic(path, "FWF1\x01");
  EXPECT_EQ(code_of([&] { read_field(path); }), ErrorCode::IoError);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { read_field(path); }), ErrorCode::IoError);
}

TEST(FieldIo, AtomicWriteLeavesNoTemporaries) {
  const auto dir = std::filesystem::temp_directory_path() / "fracwave_atomic";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  write_file_atomic(path, "old");
  write_file_atomic(path, "new contents");
  std::ifstream in(path);
  std::string s((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(s, "new contents");
  int files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(code_of([] { write_file_atomic("/nonexistent-dir/x/y", "z"); }), ErrorCode::IoError);
}

TEST(Parallel, ThreadCountDoesNotChangeResults) {
  const Grid g = Grid::uniform(2, 128, 64.0);
  const Field phi = make_preset("bump", g);
  std::vector<std::vector<cplx>> runs;
  for (const char* threads : {"1", "3", "8"}) {
    setenv("FRACWAVE_THREADS", threads, 1);
    EXPECT_EQ(thread_limit(), static_cast<unsigned>(std::atoi(threads)));
    runs.push_back(propagate_ml(phi, {0.5, 0.75, 0.6}, 7.0).samples());
  }
  unsetenv("FRACWAVE_THREADS");
  EXPECT_EQ(runs[0], runs[1]);
  EXPECT_EQ(runs[0], runs[2]);
}

TEST(Parallel, LowestFailingIndexIsRethrown) {
  setenv("FRACWAVE_THREADS", "4", 1);
  try {
    parallel_for(1000, [](std::size_t i) {
      if (i % 97 == 13) throw std::runtime_error(std::to_string(i));
    });
    ADD_FAILURE() << "nothing thrown";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "13");
  }
  unsetenv("FRACWAVE_THREADS");
}
