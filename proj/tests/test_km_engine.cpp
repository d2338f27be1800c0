#include "critpd/errors.hpp"
#include "critpd/km.hpp"
#include "critpd/prox.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace critpd;
using namespace critpd::testing;

namespace {

FixedPointMap primal_map(Index n, std::function<HVector(const HVector&)> f) {
  return FixedPointMap([f = std::move(f)](const PDState& z) { return PDState(f(z.primal)); }, PDState(HVector(n)));
}

SaddleOpV euclidean(Index n) { return SaddleOpV(Precond::scalar(n, 1.0), {}, {}); }

struct Contraction {
  Eigen::MatrixXd q;
  Eigen::VectorXd d;
  Eigen::VectorXd fixed;
};

// S y = (y + Q y) / 2 with Q y = rho O y + d, O orthogonal; Fix S = (I - rho O)^{-1} d.
Contraction make_contraction(Rng& rng, Index n, double rho) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rng, n, n));
  const Eigen::MatrixXd o = qr.householderQ();
  Contraction c{rho * o, random_vector(rng, n).values(), {}};
  c.fixed = (Eigen::MatrixXd::Identity(n, n) - c.q).partialPivLu().solve(c.d);
  return c;
}

FixedPointMap averaged(const Contraction& c) {
  return primal_map(c.d.size(), [c](const HVector& y) {
    return HVector(Eigen::VectorXd(0.5 * (y.values() + c.q * y.values() + c.d)));
  });
}

}  // namespace

TEST_CASE("relaxation schedules") {
  CHECK(RelaxationSchedule::constant(1.5).at(17) == 1.5);
  const RelaxationSchedule seq = RelaxationSchedule::sequence({0.5, 1.9});
  CHECK(seq.at(0) == 0.5);
  CHECK(seq.at(3) == 1.9);
  CHECK_FALSE(seq.is_constant());
  CHECK(seq.divergence_mass(4) == doctest::Approx(2 * 0.75 + 2 * 0.19));
  CHECK(RelaxationSchedule::constant(2.0).divergence_mass(100) == 0.0);
  CHECK_THROWS_AS(RelaxationSchedule::constant(2.1), DomainError);
  CHECK_THROWS_AS(RelaxationSchedule::constant(-0.1), DomainError);
  CHECK_THROWS_AS(RelaxationSchedule::sequence({}), DomainError);
  CHECK_THROWS_AS(RelaxationSchedule::constant(NAN), DomainError);
}

TEST_CASE("constant map reaches its value in one step") {
  const HVector c = HVector::from({3.0, -1.0});
  KMOptions opts;
  opts.eps = 1e-12;
  const KMResult r = km_iterate(primal_map(2, [c](const HVector&) { return c; }), PDState(HVector::from({1.0, 1.0})),
                                RelaxationSchedule::constant(1.0), opts);
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[1].n == 1);
  CHECK(r.trace[1].residual == 0.0);
  CHECK(r.converged);
  CHECK(max_abs_diff(r.state.primal, c) == 0.0);
}

TEST_CASE("half map decays geometrically") {
  StateRecorder rec;
  KMOptions opts;
  opts.eps = 1e-3;
  opts.max_iter = 20;
  opts.monitors = {&rec};
  const KMResult r = km_iterate(primal_map(1, [](const HVector& y) { return 0.5 * y; }), PDState(HVector::from({1.0})),
                                RelaxationSchedule::constant(1.0), opts);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 20);
  REQUIRE(rec.states().size() == 21);
  for (std::size_t n = 0; n < rec.states().size(); ++n) CHECK(rec.states()[n].primal[0] == std::ldexp(1.0, -static_cast<int>(n)));
  for (const IterTrace& row : r.trace) CHECK(row.residual == 0.5);
}

TEST_CASE("averaged contraction converges to the dense fixed point") {
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const Contraction c = make_contraction(rng, 8, 0.9);
    KMOptions opts;
    opts.eps = 1e-12;
    opts.max_iter = 100000;
    const KMResult r = km_iterate(averaged(c), PDState(random_vector(rng, 8)), RelaxationSchedule::constant(1.0), opts);
    CHECK(r.converged);
    CHECK((r.state.primal.values() - c.fixed).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("residual_rel") {
  const PDState z(HVector::from({1.0, 0.0}));
  CHECK(residual_rel(z, z) == 0.0);
  CHECK(residual_rel(PDState(HVector::from({2.0, 0.0})), z) == 1.0);
  CHECK(std::isinf(residual_rel(z, PDState(HVector::from({0.0, 0.0})))));
  CHECK_THROWS_AS(residual_rel(z, PDState(HVector(3))), DimensionError);

  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const PDState a = random_state(rng, 4, {3, 2});
    const PDState b = random_state(rng, 4, {3, 2});
    const double hand = std::sqrt((flatten(a) - flatten(b)).squaredNorm() / flatten(b).squaredNorm());
    CHECK(residual_rel(a, b) == doctest::Approx(hand).epsilon(1e-14));
  }
}

TEST_CASE("Fejer monitor on a contraction with its exact fixed point") {
  Rng rng(43);
  const Contraction c = make_contraction(rng, 6, 0.8);
  FejerMonitor fejer(euclidean(6), PDState(HVector(c.fixed)));
  KMOptions opts;
  opts.eps = 1e-10;
  opts.max_iter = 10000;
  opts.monitors = {&fejer};
  const KMResult r = km_iterate(averaged(c), PDState(random_vector(rng, 6)), RelaxationSchedule::constant(1.0), opts);
  REQUIRE(r.converged);
  const auto& d = fejer.distances();
  REQUIRE(d.size() == r.iterations + 1);
  for (std::size_t n = 1; n < d.size(); ++n) CHECK(d[n] < d[n - 1]);
  CHECK(fejer.max_increase() < 0.0);
}

TEST_CASE("Fejer monitor anchored at the starting point") {
  const HVector start = HVector::from({1.0, 2.0});
  FejerMonitor moving(euclidean(2), PDState(start));
  FejerMonitor fixed(euclidean(2), PDState(start));
  KMOptions opts;
  opts.max_iter = 3;
  opts.monitors = {&moving};
  km_iterate(primal_map(2, [](const HVector& y) { return 0.5 * y; }), PDState(start), RelaxationSchedule::constant(1.0), opts);
  CHECK(moving.distances()[0] == 0.0);
  for (std::size_t n = 1; n < moving.distances().size(); ++n) CHECK(moving.distances()[n] > 0.0);

  opts.monitors = {&fixed};
  km_iterate(primal_map(2, [](const HVector& y) { return y; }), PDState(start), RelaxationSchedule::constant(1.0), opts);
  for (double d : fixed.distances()) CHECK(d == 0.0);
}

TEST_CASE("displacement monitor") {
  DisplacementMonitor at_fixed(euclidean(2));
  KMOptions opts;
  opts.max_iter = 1;
  opts.monitors = {&at_fixed};
  const KMResult r0 = km_iterate(primal_map(2, [](const HVector& y) { return y; }), PDState(HVector::from({1.0, 1.0})),
                                 RelaxationSchedule::constant(1.0), opts);
  CHECK(at_fixed.initial() == 0.0);
  CHECK(r0.trace[0].v_displacement == 0.0);

  Rng rng(44);
  const Contraction c = make_contraction(rng, 8, 0.9);
  DisplacementMonitor disp(euclidean(8));
  opts.max_iter = 100000;
  opts.eps = 1e-10;
  opts.monitors = {&disp};
  const KMResult r = km_iterate(averaged(c), PDState(random_vector(rng, 8)), RelaxationSchedule::constant(1.0), opts);
  REQUIRE(r.converged);
  CHECK(disp.last() / disp.initial() < 1e-4);
  CHECK(r.trace.back().v_displacement == disp.last());
  CHECK_THROWS_AS(DisplacementMonitor(euclidean(1)).initial(), DomainError);
}

TEST_CASE("successive differences are nonincreasing for firmly nonexpansive maps") {
  Rng rng(45);
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 6;
    const Eigen::MatrixXd m = random_matrix(rng, n, n);
    const Eigen::MatrixXd k = random_matrix(rng, n, n);
    const Eigen::MatrixXd a = m * m.transpose() + (k - k.transpose());
    const Eigen::MatrixXd resolvent = (Eigen::MatrixXd::Identity(n, n) + a).inverse();
    const double kappa = uniform(rng, 0.1, 1.0);
    const std::vector<FixedPointMap> maps{
        primal_map(n, [resolvent](const HVector& y) { return HVector(Eigen::VectorXd(resolvent * y.values())); }),
        primal_map(n, [kappa](const HVector& y) { return prox_l1(y, kappa); }),
        primal_map(n, [](const HVector& y) { return project_box(y, -0.2, 0.3); }),
    };
    for (const FixedPointMap& s : maps) {
      StateRecorder rec;
      KMOptions opts;
      opts.max_iter = 200;
      opts.eps = 1e-14;
      opts.monitors = {&rec};
      km_iterate(s, PDState(random_vector(rng, n, -3.0, 3.0)), RelaxationSchedule::constant(1.0), opts);
      const auto& z = rec.states();
      for (std::size_t i = 2; i < z.size(); ++i) {
        CHECK(norm(z[i] - z[i - 1]) <= norm(z[i - 1] - z[i - 2]) + 1e-12);
      }
    }
  }
}

TEST_CASE("km_iterate is bit-deterministic") {
  Rng rng(46);
  const Contraction c = make_contraction(rng, 8, 0.95);
  const PDState z0(random_vector(rng, 8));
  KMOptions opts;
  opts.max_iter = 500;
  opts.eps = 1e-12;
  opts.objective = [](const PDState& z) { return squared_norm(z); };
  const RelaxationSchedule sched = RelaxationSchedule::sequence({1.0, 1.7, 0.3});
  const KMResult a = km_iterate(averaged(c), z0, sched, opts);
  const KMResult b = km_iterate(averaged(c), z0, sched, opts);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].residual == b.trace[i].residual);
    CHECK(*a.trace[i].objective == *b.trace[i].objective);
  }
  CHECK(max_abs_diff(a.state, b.state) == 0.0);
}

TEST_CASE("engine bookkeeping") {
  const FixedPointMap half = primal_map(1, [](const HVector& y) { return 0.5 * y; });
  KMOptions opts;
  opts.eps = -1.0;
  CHECK_THROWS_AS(km_iterate(half, PDState(HVector::from({1.0})), RelaxationSchedule::constant(1.0), opts), DomainError);

  opts.eps = 1e-8;
  opts.max_iter = 5;
  CHECK(km_iterate(half, PDState(HVector::from({1.0})), RelaxationSchedule::constant(1.0), opts).warnings.empty());
  const KMResult r = km_iterate(half, PDState(HVector::from({1.0})), RelaxationSchedule::constant(0.05), opts);
  CHECK_FALSE(r.converged);
  CHECK(r.trace.size() == 5);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("below floor") != std::string::npos);
  for (const IterTrace& row : r.trace) {
    CHECK(row.residual >= 0.0);
    CHECK(row.wall_ms >= 0.0);
    CHECK_FALSE(row.objective.has_value());
  }

  CHECK_THROWS_AS(km_iterate(half, PDState(HVector(2)), RelaxationSchedule::constant(1.0), opts), DimensionError);
  const FixedPointMap grows(
      [](const PDState& z) { return PDState(z.primal, {HVector(1)}); }, PDState(HVector(1)));
  CHECK_THROWS_AS(km_iterate(grows, PDState(HVector(1)), RelaxationSchedule::constant(1.0), opts), DimensionError);
}

TEST_CASE("non-finite iterates stop the run with a warning") {
  const FixedPointMap blowup = primal_map(1, [](const HVector& y) {
    HVector out = y;
    out[0] = y[0] > 4.0 ? NAN : 2.0 * y[0];
    return out;
  });
  KMOptions opts;
  opts.max_iter = 100;
  opts.divergence_floor = 0.0;
  const KMResult r = km_iterate(blowup, PDState(HVector::from({1.0})), RelaxationSchedule::constant(1.0), opts);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 4);
  CHECK(r.state.all_finite());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("non-finite") != std::string::npos);
}
