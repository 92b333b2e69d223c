#include <catch_amalgamated.hpp>

#include <cmath>

#include "zenolab/channels.hpp"
#include "zenolab/engine.hpp"
#include "zenolab/errors.hpp"
#include "zenolab/fock.hpp"
#include "zenolab/parallel.hpp"
#include "zenolab/random.hpp"

using namespace zenolab;
using Catch::Approx;

namespace {

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

ComplexMatrix diag_hamiltonian(long d) {
  std::vector<Complex> v;
  for (long i = 0; i < d; ++i) v.emplace_back(double(i) / double(d));
  return ComplexMatrix::diagonal(v);
}

ComplexMatrix drive_hamiltonian(const FockSpace& s, double omega) {
  const ComplexMatrix a = annihilation(s);
  return Complex(omega) * (a + adjoint(a));
}

ZenoConfig attenuator_zeno(long d, Complex eta, const ComplexMatrix& h) {
  const FockSpace space(d);
  ZenoConfig cfg{attenuator_superop(eta, space),
                 generator_superoperator(HamiltonianCommutator{h}, d),
                 vacuum_projection_superop(space),
                 1.0,
                 {},
                 {}};
  return cfg;
}

std::vector<ConvergenceRecord> synthetic(const std::vector<double>& xs, double (*f)(double)) {
  std::vector<ConvergenceRecord> out;
  for (double x : xs) {
    ConvergenceRecord r;
    r.parameter = x;
    r.error = f(x);
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("zeno product special cases") {
  const long d = 6;
  const FockSpace space(d);
  Rng rng(50, 0);
  const ComplexMatrix x = random_density(rng, d, 4);
  ZenoConfig cfg = attenuator_zeno(d, 0.5, drive_hamiltonian(space, 0.5));

  // n = 1 is M e^{tL}.
  CHECK(max_abs_diff(zeno_product(cfg, 1, x), cfg.M.apply(exp(cfg.L).apply(x))) < 1e-13);

  // L = 0 leaves M^n.
  ZenoConfig no_l = cfg;
  no_l.L = Superoperator::zero(d);
  CHECK(max_abs_diff(zeno_product(no_l, 5, x), power(cfg.M, 5).apply(x)) < 1e-14);

  // M = I collapses to e^{tL}.
  ZenoConfig no_m = cfg;
  no_m.M = Superoperator::identity(d);
  CHECK(max_abs_diff(zeno_product(no_m, 64, x), exp(cfg.L).apply(x)) < 1e-12);

  CHECK_THROWS_AS(zeno_product(cfg, 0, x), InvariantViolation);
}

TEST_CASE("zeno product by repeated application and by binary powers agree") {
  Rng rng(51, 0);
  const long d = 5;
  const Superoperator m = to_superoperator(random_channel(51, 1, d, 2));
  ZenoConfig cfg{m,
                 generator_superoperator(HamiltonianCommutator{random_hermitian(rng, d)}, d),
                 fixed_point_projection(m),
                 0.7,
                 {},
                 {}};
  for (long n : {1L, 7L, 64L, 300L}) {
    const ComplexMatrix x = random_density(rng, d, d);
    CHECK(max_abs_diff(zeno_product(cfg, n, x), zeno_product_iterated(cfg, n, x)) < 1e-10);
  }
}

TEST_CASE("effective dynamics") {
  const long d = 6;
  const FockSpace space(d);
  Rng rng(52, 0);
  const Superoperator p = vacuum_projection_superop(space);
  const ComplexMatrix lm = ginibre(rng, d * d, d * d);
  const Superoperator l(d, lm);

  CHECK(max_abs_diff(effective_dynamics(p, l, 0.0).matrix(), p.matrix()) < 1e-15);
  const Superoperator id = Superoperator::identity(d);
  CHECK(max_abs_diff(effective_dynamics(id, l, 0.3).matrix(), exp(Complex(0.3) * l).matrix()) < 1e-11);

  // With the vacuum projection the limit is e^{t Tr L(|0><0|)} Tr(x) |0><0|.
  const ComplexMatrix vac = vacuum_state(space).matrix();
  const Complex rate = l.apply(vac).trace();
  const double t = 0.4;
  const Superoperator eff = effective_dynamics(p, l, t);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix x = ginibre(rng, d, d);
    const ComplexMatrix expected = std::exp(t * rate) * x.trace() * vac;
    CHECK(max_abs_diff(eff.apply(x), expected) < 1e-12 * std::max(1.0, std::abs(expected(0, 0))));
  }

  // The limit lives on ran P.
  CHECK(max_abs_diff((eff * p).matrix(), eff.matrix()) < 1e-12);
  CHECK(max_abs_diff((p * eff).matrix(), eff.matrix()) < 1e-12);
}

TEST_CASE("zeno error with a diagonal Hamiltonian has a closed form") {
  // L vanishes on diagonal states, so the error is ||Phi^n(|1><1|) - |0><0|||
  // = 2 |eta|^{2n}.
  const long d = 12;
  const ZenoConfig cfg = attenuator_zeno(d, 0.5, diag_hamiltonian(d));
  const NamedState one{"fock:1", fock_state(FockSpace(d), 1).matrix()};
  for (long n : {8L, 16L}) {
    CHECK(zeno_error(cfg, n, one).error == Approx(2.0 * std::pow(0.25, n)).epsilon(1e-6).margin(1e-15));
  }
  const NamedState vac{"vacuum", vacuum_state(FockSpace(d)).matrix()};
  CHECK(zeno_error(cfg, 8, vac).error < 1e-14);
}

TEST_CASE("attenuator zeno sweep decreases with log(n)/n dominance") {
  const long d = 12;
  const FockSpace space(d);
  ZenoConfig cfg = attenuator_zeno(d, 0.5, drive_hamiltonian(space, 0.5));
  cfg.n_grid = {8, 16, 32, 64, 128, 256, 512, 1024};
  cfg.test_states = {{"fock:1", fock_state(space, 1).matrix()},
                     {"coherent:0.8", coherent_vector(0.8, space).projector()}};
  cfg.validate();
  const auto records = zeno_sweep(cfg);
  REQUIRE(records.size() == 16);
  for (const std::string id : {"fock:1", "coherent:0.8"}) {
    std::vector<ConvergenceRecord> mine;
    for (const auto& r : records)
      if (r.state_id == id) mine.push_back(r);
    for (std::size_t i = 1; i < mine.size(); ++i) CHECK(mine[i].error < mine[i - 1].error);
    CHECK(log_rate_dominance(mine).holds);
    CHECK(fit_rate(mine, RateModel::power_log).exponent >= 0.9);
  }
  // Sweep records equal single-cell evaluations.
  CHECK(records[0].error == Approx(zeno_error(cfg, 8, cfg.test_states[1]).error).epsilon(1e-12));
}

TEST_CASE("zeno error with L = 0 equals the mixing error") {
  const long d = 10;
  const FockSpace space(d);
  Rng rng(53, 0);
  ZenoConfig cfg = attenuator_zeno(d, Complex(0.6, 0.2), ComplexMatrix(d, d));
  cfg.L = Superoperator::zero(d);
  const std::vector<long> grid{1, 2, 4, 8, 16, 32};
  for (int trial = 0; trial < 5; ++trial) {
    const NamedState rho{"r", random_density(rng, d, 5)};
    const MixingProfile prof = mixing_speed_empirical(cfg.M, cfg.P, rho.matrix, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      CHECK(std::abs(zeno_error(cfg, grid[i], rho).error - prof.points[i].raw) <= 1e-12);
  }
}

TEST_CASE("config validation") {
  const long d = 4;
  const FockSpace space(d);
  ZenoConfig cfg = attenuator_zeno(d, 0.5, diag_hamiltonian(d));
  cfg.n_grid = {1, 2};
  CHECK_NOTHROW(cfg.validate());

  ZenoConfig bad = cfg;
  bad.P = Superoperator(d, Complex(2.0) * vacuum_projection_superop(space).matrix());
  CHECK_THROWS_AS(bad.validate(), InvariantViolation);
  bad = cfg;
  bad.P = Superoperator::identity(d);  // idempotent but not absorbed by M
  CHECK_THROWS_AS(bad.validate(), InvariantViolation);
  bad = cfg;
  bad.t = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvariantViolation);
  bad = cfg;
  bad.n_grid = {0};
  CHECK_THROWS_AS(bad.validate(), InvariantViolation);
  bad = cfg;
  bad.M = Superoperator(d, Complex(1.5) * bad.M.matrix());
  bad.P = Superoperator::zero(d);
  bad.test_states = {{"vac", vacuum_state(space).matrix()}};
  CHECK_THROWS_AS(bad.validate(), InvariantViolation);

  DampingConfig damp{attenuator_generator(space), Superoperator::zero(d),
                     vacuum_projection_superop(space), 1.0, {1.0}, {{"vac", vacuum_state(space).matrix()}}};
  CHECK_NOTHROW(damp.validate());
  damp.gamma_grid = {-1.0};
  CHECK_THROWS_AS(damp.validate(), InvariantViolation);
}

TEST_CASE("damped evolution") {
  const long d = 10;
  const FockSpace space(d);
  Rng rng(54, 0);
  const ComplexMatrix x = random_density(rng, d, 5);
  DampingConfig cfg{attenuator_generator(space),
                    generator_superoperator(HamiltonianCommutator{drive_hamiltonian(space, 0.5)}, d),
                    vacuum_projection_superop(space), 1.0, {}, {}};

  CHECK(max_abs_diff(damped_evolution(cfg, 0.0, x), exp(cfg.L).apply(x)) < 1e-13);

  DampingConfig no_l = cfg;
  no_l.L = Superoperator::zero(d);
  CHECK(max_abs_diff(damped_evolution(no_l, 3.0, x), exp(Complex(3.0) * cfg.K).apply(x)) < 1e-12);

  // t gamma = 1 on |1><1|: e^{-2}|1><1| + (1 - e^{-2})|0><0|.
  ComplexMatrix expected(d, d);
  expected(1, 1) = std::exp(-2.0);
  expected(0, 0) = 1.0 - std::exp(-2.0);
  CHECK(max_abs_diff(damped_evolution(no_l, 1.0, fock_state(space, 1).matrix()), expected) < 1e-14);

  // Semigroup consistency in t.
  const Superoperator whole = damped_propagator(cfg, 5.0, 0.7);
  const Superoperator split = damped_propagator(cfg, 5.0, 0.3) * damped_propagator(cfg, 5.0, 0.4);
  CHECK((whole.matrix() - split.matrix()).frobenius_norm() <= 1e-9);

  CHECK_THROWS_AS(damped_evolution(cfg, -1.0, x), InvariantViolation);
}

TEST_CASE("damping error") {
  const long d = 16;
  const FockSpace space(d);
  DampingConfig cfg{attenuator_generator(space),
                    generator_superoperator(HamiltonianCommutator{diag_hamiltonian(d)}, d),
                    vacuum_projection_superop(space), 1.0, {}, {}};
  const NamedState one{"fock:1", fock_state(space, 1).matrix()};
  CHECK(damping_error(cfg, 200.0, one).error <= 1e-6);

  // L = 0: the error is the continuous mixing error 2 e^{-2 gamma t}.
  DampingConfig no_l = cfg;
  no_l.L = Superoperator::zero(d);
  CHECK(damping_error(no_l, 3.0, one).error == Approx(2.0 * std::exp(-6.0)).epsilon(1e-10));

  // Drive Hamiltonian: dominance and rate on gamma in {8..512}.
  DampingConfig drive = cfg;
  drive.L = generator_superoperator(HamiltonianCommutator{drive_hamiltonian(FockSpace(d), 0.5)}, d);
  drive.gamma_grid = {8, 16, 32, 64, 128, 256, 512};
  drive.test_states = {{"vacuum", vacuum_state(space).matrix()}};
  drive.validate();
  const auto records = damping_sweep(drive);
  REQUIRE(records.size() == 7);
  CHECK(log_rate_dominance(records).holds);
  CHECK(fit_rate(records, RateModel::power_log).exponent >= 0.9);
}

TEST_CASE("sweeps are independent of the thread count") {
  const long d = 8;
  const FockSpace space(d);
  ZenoConfig cfg = attenuator_zeno(d, 0.5, drive_hamiltonian(space, 0.5));
  cfg.n_grid = {8, 16, 32, 64};
  cfg.test_states = {{"b", fock_state(space, 1).matrix()}, {"a", vacuum_state(space).matrix()}};
  set_thread_count(1);
  const auto serial = zeno_sweep(cfg);
  set_thread_count(3);
  const auto threaded = zeno_sweep(cfg);
  set_thread_count(1);
  REQUIRE(serial.size() == threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].parameter == threaded[i].parameter);
    CHECK(serial[i].state_id == threaded[i].state_id);
    CHECK(serial[i].error == threaded[i].error);
  }
  CHECK(serial[0].state_id == "a");  // ordered by (parameter, state_id)
}

TEST_CASE("parallel_map keeps order and rethrows") {
  set_thread_count(4);
  const auto squares = parallel_map<long>(50, [](std::size_t i) { return long(i * i); });
  for (std::size_t i = 0; i < squares.size(); ++i) CHECK(squares[i] == long(i * i));
  CHECK_THROWS_AS(parallel_map<int>(10,
                                    [](std::size_t i) -> int {
                                      if (i == 7) throw InvariantViolation("boom");
                                      return 0;
                                    }),
                  InvariantViolation);
  set_thread_count(1);
}

TEST_CASE("constant sequence") {
  const auto n = constant_sequence(1024, 0.5, 4);
  REQUIRE(n.size() == 4);
  for (long v : n) CHECK(v == 10);
  CHECK(constant_sequence(100, 0.1, 1)[0] == 2);
  CHECK(constant_sequence(1, 0.5, 1)[0] == 0);
  CHECK_THROWS_AS(constant_sequence(10, 1.0, 2), InvariantViolation);
}

TEST_CASE("s_sup with vanishing mixing profile") {
  // M = P: every s-value is zero and the bound reduces to N_1 / n ||x||.
  MixingProfile zero;
  for (long n : {0L, 1L, 2L, 4L, 8L, 16L, 32L}) zero.points.push_back({n, 0.0, 0.0});
  const std::vector<MixingProfile> tables(3, zero);
  const auto N = constant_sequence(32, 0.5, 3);
  const SsupReport r = theoretical_zeno_bound_ssup(tables, 2.0, 32, N, 1.5);
  CHECK(r.value == Approx(5.0 / 32.0 * 1.5));
  CHECK(r.argmax_l == 1);
  CHECK(r.l_max == 3);
  CHECK(r.attained_inside);

  CHECK_THROWS_AS(theoretical_zeno_bound_ssup(tables, 2.0, 32, constant_sequence(32, 0.5, 4), 1.0),
                  InvariantViolation);
  CHECK_THROWS_AS(theoretical_zeno_bound_ssup(tables, 2.0, 32, {64}, 1.0), InvariantViolation);
}

TEST_CASE("s_sup with geometric mixing is O(log n / n)") {
  const double delta = 0.5, c = 3.0;
  std::vector<long> grid;
  for (long n = 0; n <= 64; ++n) grid.push_back(n);
  MixingProfile geo;
  for (long n : grid) geo.points.push_back({n, c * std::pow(delta, n), c * std::pow(delta, n)});
  const std::vector<MixingProfile> tables(kSsupMaxTerms, geo);

  double worst = 0.0;
  for (long n = 16; n <= (1L << 20); n *= 2) {
    const auto N = constant_sequence(n, delta, kSsupMaxTerms);
    const SsupReport r = theoretical_zeno_bound_ssup(tables, 1.0, n, N, 1.0);
    // s_{N} <= c delta^{log n / log 2 - 1} = 2c / n, so s_sup <= (2c + log2 n) / n.
    CHECK(r.value <= (2.0 * c + std::log2(double(n))) / double(n) * (1.0 + 1e-12));
    worst = std::max(worst, r.value * n / std::log(double(n)));
  }
  CHECK(worst < 2.0 * c + 2.0);
}

TEST_CASE("attenuator chain collapses onto L(|0><0|)") {
  const long d = 8;
  const FockSpace space(d);
  Rng rng(55, 0);
  const Superoperator l(d, ginibre(rng, d * d, d * d));
  const Superoperator p = vacuum_projection_superop(space);
  const ComplexMatrix x = random_density(rng, d, 4);
  const double t = 0.6;
  const auto chain = zeno_chain_states(l, p, t, x, 5);
  REQUIRE(chain.size() == 5);
  CHECK(max_abs_diff(chain[0], x) == 0.0);
  const ComplexMatrix lvac = l.apply(vacuum_state(space).matrix());
  const Complex tr = lvac.trace();
  // (tLP)^{l-1} x = t^{l-1} Tr(L|0><0|)^{l-2} Tr(x) L(|0><0|).
  for (int k = 2; k <= 5; ++k) {
    const Complex scale = std::pow(t, k - 1) * std::pow(tr, k - 2) * x.trace();
    CHECK(max_abs_diff(chain[k - 1], scale * lvac) < 1e-10 * std::max(1.0, std::abs(scale)));
  }
}

TEST_CASE("attenuator speed bound factor") {
  const long d = 16;
  const FockSpace space(d);
  const Superoperator diag_l = generator_superoperator(HamiltonianCommutator{diag_hamiltonian(d)}, d);
  const AttenuatorSpeedBound vac = attenuator_speed_bound(vacuum_state(space).matrix(), diag_l, 8.0, 1);
  CHECK(vac.factor == Approx(1.0));
  CHECK(vac.shape == Approx(std::log(8.0) / 8.0));
  CHECK(vac.value() == Approx(std::log(8.0) / 8.0));
  const AttenuatorSpeedBound one = attenuator_speed_bound(fock_state(space, 1).matrix(), diag_l, 8.0, 1);
  CHECK(one.factor == Approx(2.0));
  CHECK(one.l_norm.probes >= 200);

  // Drive Hamiltonian: L(|0><0|) = -i[H, |0><0|] is Hermitian and traceless,
  // so its positive parts come from its spectrum.
  const ComplexMatrix h = drive_hamiltonian(space, 0.5);
  const Superoperator l = generator_superoperator(HamiltonianCommutator{h}, d);
  Rng rng(56, 0);
  const ComplexMatrix rho = random_density(rng, d, 5);
  const AttenuatorSpeedBound b = attenuator_speed_bound(rho, l, 100.0, 7);

  const ComplexMatrix lvac = l.apply(vacuum_state(space).matrix());
  const SpectralData e = herm_eig(lvac);
  const ComplexMatrix weight = number_operator(space) + ComplexMatrix::identity(d);
  double lvac_part = 0.0;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    ComplexMatrix v(d, 1);
    for (long r = 0; r < d; ++r) v(r, 0) = (*e.vectors)(r, Eigen::Index(i));
    lvac_part += std::abs(e.values[i]) * matmul(matmul(adjoint(v), weight), v)(0, 0).real();
  }
  const double rho_part = matmul(weight, rho).trace().real();
  const double expected = rho_part + lvac_part * 1.0 / b.l_norm.value;
  CHECK(b.factor == Approx(expected).epsilon(1e-10));
  CHECK(b.shape == Approx(std::log(100.0) / 100.0));

  CHECK_THROWS_AS(attenuator_speed_bound(rho, l, 1.0, 7), InvariantViolation);
}

TEST_CASE("proof constant envelope") {
  CHECK(proof_constant_envelope(0.0) == 0.0);
  CHECK(proof_constant_envelope(1.0) == Approx(4.0 * std::exp(1.0)));
}

TEST_CASE("fit_rate on synthetic data") {
  const std::vector<double> grid{8, 16, 32, 64, 128, 256, 512};
  const RateFit pure = fit_rate(synthetic(grid, [](double n) { return 3.0 / n; }), RateModel::pure_power);
  CHECK(pure.exponent == Approx(1.0).margin(0.01));
  CHECK(pure.constant == Approx(3.0).epsilon(1e-10));
  CHECK(pure.residual < 1e-12);

  const RateFit logfit =
      fit_rate(synthetic(grid, [](double n) { return std::log(n) / n; }), RateModel::power_log);
  CHECK(logfit.exponent == Approx(1.0).margin(0.01));
  CHECK(logfit.constant == Approx(1.0).epsilon(1e-10));

  const RateFit squared =
      fit_rate(synthetic(grid, [](double n) { return 0.5 / (n * n); }), RateModel::pure_power);
  CHECK(squared.exponent == Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(fit_rate(synthetic({8, 16, 32}, [](double n) { return 1 / n; }), RateModel::pure_power),
                  InvariantViolation);
  CHECK_THROWS_AS(fit_rate(synthetic(grid, [](double) { return 0.0; }), RateModel::pure_power),
                  InvariantViolation);
  CHECK_THROWS_AS(fit_rate(synthetic({4, 4, 4, 4}, [](double n) { return 1 / n; }), RateModel::pure_power),
                  InvariantViolation);
  CHECK_THROWS_AS(fit_rate(synthetic({1, 2, 4, 8}, [](double n) { return 1 / n; }), RateModel::power_log),
                  InvariantViolation);
}

TEST_CASE("log-rate dominance") {
  const std::vector<double> grid{8, 16, 32, 64, 128};
  DominanceCheck c = log_rate_dominance(synthetic(grid, [](double n) { return 1.0 / n; }));
  CHECK(c.holds);
  CHECK(c.constant == Approx(1.0 / std::log(8.0)));
  c = log_rate_dominance(synthetic(grid, [](double n) { return 1.0 / std::sqrt(n); }));
  CHECK_FALSE(c.holds);
  CHECK(c.violations == 4);
}
