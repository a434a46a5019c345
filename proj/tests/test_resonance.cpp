#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "splitstep/dft.hpp"
#include "splitstep/flows.hpp"
#include "splitstep/function_spec.hpp"
#include "splitstep/norms.hpp"
#include "splitstep/resonance.hpp"

using namespace splitstep;

namespace {

const PhysicalState& two_mode() {
  static const PhysicalState u(Grid(4), {1.5, 0.5, 1.5, 0.5});
  return u;
}

PhysicalState plane_wave(int k, int mode) { return sample_function(FunctionSpec({{mode, 1.0}}), Grid(k)); }

double diff(const PhysicalState& a, const PhysicalState& b) {
  return oracle::max_abs_diff(a.values(), b.values());
}

// Commutator entries from the dense matrices of the free step and of V.
double dense_commutator(double tau, const LinearModel& v) {
  const Grid& g = v.grid();
  const int k = g.modes();
  std::vector<Complex> vhat(k);
  {
    std::vector<Complex> samples;
    for (int m = g.first_index(); m <= g.last_index(); ++m) samples.emplace_back(v[m], 0.0);
    vhat = oracle::naive_forward(PhysicalState(g, samples));
  }
  double worst = 0.0;
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    for (int l = g.first_index(); l <= g.last_index(); ++l) {
      // (F V F^{-1})_{jl} = V^_{(j-l) mod K}
      const Complex vjl = vhat[g.slot(g.wrap(j - l))];
      const Complex e = std::polar(1.0, -tau * j * j) - std::polar(1.0, -tau * l * l);
      worst = std::max(worst, std::abs(vjl * e));
    }
  }
  return worst;
}

}  // namespace

TEST(ResonantStep, CanonicalForm) {
  const ResonantStep a(2, 4);
  EXPECT_EQ(a.p(), 1);
  EXPECT_EQ(a.q(), 2);
  EXPECT_DOUBLE_EQ(a.tau(), M_PI);
  const ResonantStep b(3, 2, 2);
  EXPECT_EQ(b.power(), 2);
  EXPECT_EQ(b.denominator(), 4);
  EXPECT_DOUBLE_EQ(b.tau(), 2 * M_PI * 3 / 4);
  const ResonantStep c(2, 4, 2);
  EXPECT_EQ(c.power(), 1);
  EXPECT_EQ(c.q(), 8);
  EXPECT_DOUBLE_EQ(c.tau(), 2 * M_PI * 2 / 16);
  EXPECT_THROW(ResonantStep(0, 2), std::invalid_argument);
  EXPECT_THROW(ResonantStep(1, 0), std::invalid_argument);
  EXPECT_THROW(ResonantStep(1, 2, 3), std::invalid_argument);
}

TEST(ResonantStep, ExactPhaseMatchesFloatingPhase) {
  const ResonantStep s(5, 7, 2);
  for (long long j = -20; j <= 20; ++j) {
    for (long long mult : {1LL, 3LL, 1000LL}) {
      EXPECT_NEAR(std::abs(s.free_phase(j, mult) - std::polar(1.0, -static_cast<double>(mult) * s.tau() * j * j)), 0.0,
                  1e-9);
    }
  }
}

TEST(ProjectW, Examples) {
  std::mt19937_64 rng(41);
  const PhysicalState u = oracle::gaussian_state(Grid(8), rng);
  EXPECT_LE(diff(project_w(u, 1), u), 1e-14);
  EXPECT_LE(diff(project_w(two_mode(), 2), two_mode()), 1e-15);
  EXPECT_LE(linf_norm(project_w(plane_wave(4, 1), 2)), 1e-15);
}

TEST(ProjectW, DivisibilityContract) {
  const PhysicalState u = plane_wave(12, 1);
  EXPECT_THROW(project_w(u, 5), std::invalid_argument);
  EXPECT_THROW(project_w(u, 4), std::invalid_argument);  // kappa = 3 is odd
  EXPECT_NO_THROW(project_w(u, 3));
  EXPECT_THROW(resonant_kappa(Grid(12), 12), std::invalid_argument);
  EXPECT_EQ(resonant_kappa(Grid(12), 6), 2);
}

TEST(MembershipDefect, Examples) {
  EXPECT_LE(membership_defect(two_mode(), 2), 1e-13);
  const PhysicalState e = plane_wave(4, 1);
  EXPECT_NEAR(membership_defect(e, 2), l2_norm(e), 1e-14);
  std::mt19937_64 rng(42);
  for (int s = 0; s < 20; ++s) {
    EXPECT_LE(membership_defect(project_w(oracle::gaussian_state(Grid(24), rng), 3), 3), 1e-13);
  }
}

TEST(ProjectWProperty, OrthogonalProjection) {
  std::mt19937_64 rng(43);
  for (int s = 0; s < 20; ++s) {
    const Grid g(16);
    const PhysicalState a = oracle::gaussian_state(g, rng);
    const PhysicalState b = oracle::gaussian_state(g, rng);
    const PhysicalState pa = project_w(a, 4);
    EXPECT_LE(diff(project_w(pa, 4), pa), 1e-14);
    Complex lhs = 0.0;
    Complex rhs = 0.0;
    const PhysicalState pb = project_w(b, 4);
    for (int k = -8; k < 8; ++k) {
      lhs += std::conj(pa[k]) * b[k];
      rhs += std::conj(a[k]) * pb[k];
    }
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
}

TEST(CommutatorDefect, VanishesForPotentialInW) {
  std::mt19937_64 rng(44);
  struct Case { long long q, p; int k; };
  for (const Case c : {Case{2, 1, 8}, Case{3, 2, 12}, Case{4, 3, 16}}) {
    const Grid g(c.k);
    std::vector<Complex> raw;
    std::normal_distribution<double> n;
    for (int i = 0; i < c.k; ++i) raw.emplace_back(n(rng), 0.0);
    PhysicalState v = project_w(PhysicalState(g, raw), c.q);
    std::vector<double> re;
    for (const auto& z : v.values()) re.push_back(z.real());
    const LinearModel model(g, re);
    EXPECT_LE(commutator_defect(ResonantStep(c.p, c.q), model), 1e-12);
    EXPECT_LE(commutator_defect_frobenius(ResonantStep(c.p, c.q), model), 1e-12);
    EXPECT_LE(dense_commutator(ResonantStep(c.p, c.q).tau(), model), 1e-12);
  }
}

TEST(CommutatorDefect, PositiveOutsideW) {
  const Grid g(8);
  const LinearModel v = LinearModel::from_samples(sample_function(FunctionSpec::cosine(1), g));
  const double d = commutator_defect(ResonantStep(1, 2), v);
  EXPECT_GE(d, 1e-2);
  EXPECT_NEAR(d, dense_commutator(M_PI, v), 1e-12);
}

TEST(CommutatorDefect, MatchesDenseMatrixForRealSteps) {
  std::mt19937_64 rng(45);
  for (int k : {4, 8, 16}) {
    const Grid g(k);
    std::normal_distribution<double> n;
    std::vector<double> v(k);
    for (auto& x : v) x = n(rng);
    const LinearModel model(g, v);
    for (double tau : {0.1, 1.3, 2.9}) {
      EXPECT_NEAR(commutator_defect(TimeStep::real(tau), model), dense_commutator(tau, model), 1e-12);
    }
  }
}

TEST(CommutatorDefect, FullTurnCommutesWithAnything) {
  std::mt19937_64 rng(46);
  std::normal_distribution<double> n;
  std::vector<double> v(16);
  for (auto& x : v) x = n(rng);
  EXPECT_LE(commutator_defect(ResonantStep(1, 1), LinearModel(Grid(16), v)), 1e-12);
}

TEST(FreeFlowIdentity, Examples) {
  EXPECT_LE(free_flow_identity_defect(ResonantStep(1, 2), Grid(4)), 1e-13);
  EXPECT_LE(free_flow_identity_defect(ResonantStep(3, 2, 2), Grid(8)), 1e-13);
  EXPECT_GT(free_flow_mode_defect(ResonantStep(3, 2, 2), Grid(8), 1), 0.5);
  for (long long q : {2LL, 3LL, 4LL}) {
    for (int power : {1, 2}) {
      EXPECT_LE(free_flow_identity_defect(ResonantStep(1, q, power), Grid(static_cast<int>(4 * q))), 1e-13);
    }
  }
  EXPECT_THROW(free_flow_identity_defect(ResonantStep(1, 3), Grid(8)), std::invalid_argument);
}

TEST(BoundConstants, ConstantPotentialHasNoDrift) {
  const Grid g(8);
  const LinearModel v(g, std::vector<double>(8, 2.0));
  const BoundConstants b = bound_constants(v, plane_wave(8, 1), ResonantStep(1, 2));
  EXPECT_EQ(b.c0, 0.0);
  EXPECT_EQ(b.C1, 0.0);
  EXPECT_FALSE(b.horizon_steps.has_value());
  EXPECT_TRUE(b.no_drift);
  EXPECT_TRUE(b.within_horizon(1'000'000));
}

TEST(BoundConstants, CubicFixtureByHand) {
  const BoundConstants b = bound_constants(CubicModel(1), two_mode(), ResonantStep(1, 2));
  const double dx = M_PI / 2;
  EXPECT_NEAR(b.C1, 4 / M_PI, 1e-14);
  // |U|^2 = (2.25, 0.25, 2.25, 0.25); forward differences alternate -2, +2.
  const double u[] = {1.5, 0.5, 1.5, 0.5};
  const double w[] = {2.25, 0.25, 2.25, 0.25};
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double dq = (w[(k + 1) % 4] - w[k]) / dx;
    s += dq * dq * u[k] * u[k];
  }
  EXPECT_NEAR(b.c0, std::sqrt(dx * s), 1e-13);
  EXPECT_NEAR(b.C0, 1.5, 1e-15);
  EXPECT_NEAR(b.h1_0, h1_seminorm(two_mode()), 1e-15);
  ASSERT_TRUE(b.horizon_steps.has_value());
  EXPECT_EQ(*b.horizon_steps, static_cast<std::int64_t>(std::floor(M_PI / (M_PI * dx * 4 / M_PI))));
  EXPECT_EQ(*b.horizon_steps, 0);
}

TEST(Bounds, ValuesAndHorizon) {
  const BoundConstants b = bound_constants(CubicModel(1), two_mode(), ResonantStep(1, 2));
  EXPECT_NEAR(*h1_lower_bound(0, b), -b.h1_0, 1e-15);
  EXPECT_FALSE(h1_lower_bound(1, b).has_value());
  EXPECT_LT(*scheme_h1_lower_bound(0, b), 0.0);
  EXPECT_TRUE(std::isfinite(*energy_lower_bound(0, b)));
  EXPECT_FALSE(energy_lower_bound(1, b).has_value());

  const Grid g(8);
  const LinearModel flat(g, std::vector<double>(8, 1.0));
  const BoundConstants z = bound_constants(flat, plane_wave(8, 2), ResonantStep(1, 2));
  for (std::int64_t n : {0, 10, 1000}) EXPECT_NEAR(*h1_lower_bound(n, z), -z.h1_0, 1e-15);
}

TEST(Bounds, LinearFixtureHoldsUpToHorizon) {
  const Grid g(8);
  const LinearModel v = LinearModel::from_samples(sample_function(FunctionSpec::cosine(2), g));
  const PhysicalState u0 = plane_wave(8, 2);
  const TimeStep step = ResonantStep(1, 2);
  const BoundConstants b = bound_constants(v, u0, step);
  evolve(u0, step, b.horizon_steps.value_or(0), v, [&](std::int64_t n, const PhysicalState& u) {
    EXPECT_GE(h1_seminorm(u), *scheme_h1_lower_bound(n, b) - 1e-9) << n;
    EXPECT_GE(energy_hk(u, v), *energy_lower_bound(n, b) - 1e-9) << n;
  });
}

TEST(Bounds, LongHorizonFixtures) {
  for (int k : {64, 256}) {
    const Grid g(k);
    const PhysicalState u0 = sample_function(FunctionSpec({{0, 1.0}, {-2, 0.5}}), g);
    for (int sigma : {1, -1}) {
      const ModelSpec m = CubicModel(sigma);
      const TimeStep step = ResonantStep(1, 2);
      const BoundConstants b = bound_constants(m, u0, step);
      ASSERT_GE(b.horizon_steps.value_or(0), 2);
      evolve(u0, step, *b.horizon_steps, m, [&](std::int64_t n, const PhysicalState& u) {
        const double h = h1_seminorm(u);
        EXPECT_GE(h, *h1_lower_bound(n, b) - 1e-9);
        EXPECT_GE(h, *scheme_h1_lower_bound(n, b) - 1e-9);
        EXPECT_GE(energy_hk(u, m), *energy_lower_bound(n, b) - 1e-9);
      });
    }
  }
}

TEST(Bounds, AssembledConstantsAreExplicit) {
  const BoundConstants b = bound_constants(CubicModel(1), two_mode(), ResonantStep(1, 2));
  const AssembledConstants a = assembled_constants(b);
  EXPECT_NEAR(a.equivalence_lower, 1 / (2 * M_PI), 1e-16);
  EXPECT_NEAR(a.equivalence_upper, M_PI / 8, 1e-16);
  EXPECT_NEAR(a.slope_coefficient, 4 / (M_PI * M_PI), 1e-15);
  EXPECT_NEAR(a.offset_weight, M_PI / 2, 1e-15);
  EXPECT_NEAR(a.kinetic_prefactor, 0.5, 1e-15);
  EXPECT_NEAR(a.h1_slope, a.slope_coefficient * b.c0, 1e-14);
  EXPECT_NEAR(a.energy_root_slope, a.h1_slope * std::sqrt(0.5), 1e-14);
}

TEST(Bounds, EnergyBoundRootSlope) {
  const Grid g(64);
  const PhysicalState u0 = sample_function(FunctionSpec({{0, 1.0}, {-2, 0.5}}), g);
  BoundConstants b = bound_constants(CubicModel(1), u0, ResonantStep(1, 2));
  b.horizon_steps.reset();
  const AssembledConstants a = assembled_constants(b);
  const double n1 = 1e6;
  const double n2 = 2e6;
  const double slope = (std::sqrt(*energy_lower_bound(2'000'000, b)) - std::sqrt(*energy_lower_bound(1'000'000, b))) /
                       ((n2 - n1) * b.tau);
  EXPECT_NEAR(slope / a.energy_root_slope, 1.0, 1e-9);
}

TEST(ResonanceProperty, CubicFlowKeepsW) {
  std::mt19937_64 rng(47);
  for (int s = 0; s < 20; ++s) {
    const PhysicalState u = project_w(oracle::gaussian_state(Grid(32), rng), 4);
    for (double t : {0.1, 1.0, 17.0}) {
      EXPECT_LE(membership_defect(potential_flow(u, t, CubicModel(s % 2 ? 1 : -1)), 4), 1e-12);
    }
  }
}

TEST(ResonanceProperty, LieIteratesArePhaseFlow) {
  std::mt19937_64 rng(48);
  for (int s = 0; s < 10; ++s) {
    const Grid g(24);
    PhysicalState u = project_w(oracle::gaussian_state(g, rng, 0.5), 3);
    const TimeStep step = ResonantStep(1 + s % 2, 3, 1 + s % 2);
    const ModelSpec m = CubicModel(1);
    EXPECT_LE(diff(evolve(u, step, 10, m), potential_flow(u, 10 * step.tau(), m)), 1e-10);
  }
}
