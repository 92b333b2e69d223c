#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zenolab/channels.hpp"

namespace zenolab {

struct NamedState {
  std::string id;
  ComplexMatrix matrix;
};

/// Inputs of the Zeno product (M e^{tL/n})^n.
struct ZenoConfig {
  Superoperator M;
  Superoperator L;
  Superoperator P;
  double t = 1.0;
  std::vector<long> n_grid;
  std::vector<NamedState> test_states;

  /// Checks P^2 = P, MP = PM = P (1e-9, Frobenius), trace-norm contractivity
  /// of M on the test states, t > 0 and a positive grid.
  void validate() const;
};

/// Inputs of the damped evolution e^{t(gamma K + L)}.
struct DampingConfig {
  Superoperator K;
  Superoperator L;
  Superoperator P;
  double t = 1.0;
  std::vector<double> gamma_grid;
  std::vector<NamedState> test_states;

  /// Checks P^2 = P, e^K P = P e^K = P (1e-9), contractivity of e^{sK} on the
  /// test states for s in {0.1, 1, 10}, t > 0 and a nonnegative grid.
  void validate() const;
};

struct ConvergenceRecord {
  double parameter = 0.0;  // n or gamma
  double error = 0.0;      // trace norm
  std::optional<double> bound;
  std::string state_id;
  std::chrono::duration<double, std::milli> wall_time{0};
};

/// (M e^{(t/n) L})^n by binary exponentiation.
Superoperator zeno_propagator(const ZenoConfig& cfg, long n);
ComplexMatrix zeno_product(const ZenoConfig& cfg, long n, const ComplexMatrix& x);
/// Same product applied step by step to x (n applications of M e^{tL/n}).
ComplexMatrix zeno_product_iterated(const ZenoConfig& cfg, long n,
                                    const ComplexMatrix& x);

/// e^{t PLP} P.
Superoperator effective_dynamics(const Superoperator& P, const Superoperator& L,
                                 double t);

ConvergenceRecord zeno_error(const ZenoConfig& cfg, long n, const NamedState& rho);
/// Errors for every (n, state) cell. One propagator per grid point.
std::vector<ConvergenceRecord> zeno_sweep(const ZenoConfig& cfg);

/// e^{t (gamma K + L)}.
Superoperator damped_propagator(const DampingConfig& cfg, double gamma);
Superoperator damped_propagator(const DampingConfig& cfg, double gamma, double t);
ComplexMatrix damped_evolution(const DampingConfig& cfg, double gamma,
                               const ComplexMatrix& x);
ConvergenceRecord damping_error(const DampingConfig& cfg, double gamma,
                                const NamedState& rho);
std::vector<ConvergenceRecord> damping_sweep(const DampingConfig& cfg);

/// (tLP)^{l-1} x for l = 1..l_max.
std::vector<ComplexMatrix> zeno_chain_states(const Superoperator& L,
                                             const Superoperator& P, double t,
                                             const ComplexMatrix& x, int l_max);

/// N_l = floor(log n / log(1/delta)) for l = 1..l_max.
std::vector<long> constant_sequence(long n, double delta, int l_max);

inline constexpr int kSsupMaxTerms = 12;

struct SsupReport {
  double value = 0.0;
  int argmax_l = 1;            // 1-based
  int l_max = 0;               // number of terms evaluated
  bool attained_inside = false;  // argmax_l < l_max
};

/// sup_l ( ||tL||^{1-l} s_{N_l}((tLP)^{l-1} x) + N_l / n ||x|| ) with the sup
/// over l truncated at N.size(). s_tables[l-1] holds the empirical profile of
/// the l-th chain state; s_N is read as the grid-sup at the first grid point
/// >= N. A zero ||tL|| drops the s-part of the l >= 2 terms (their chain
/// states vanish).
SsupReport theoretical_zeno_bound_ssup(const std::vector<MixingProfile>& s_tables,
                                       double tl_norm, long n,
                                       const std::vector<long>& N, double x_norm);

/// 4 ||L||^2 e^{||L||}.
double proof_constant_envelope(double l_norm);

struct AttenuatorSpeedBound {
  double factor = 0.0;  // sum_i (Tr((N+1) x_i) + Tr((N+1) L(|0><0|)_i) ||x||_1 / ||L||)
  double shape = 0.0;   // log(p) / p
  NormEstimate l_norm{0.0, 0};
  double value() const { return factor * shape; }
};

/// State-dependent factor and log(p)/p shape of the attenuator speed bound.
/// The constant C is left to the caller.
AttenuatorSpeedBound attenuator_speed_bound(const ComplexMatrix& x,
                                            const Superoperator& L,
                                            double parameter,
                                            std::uint64_t seed = 0);
/// Same, reusing an already measured ||L||.
AttenuatorSpeedBound attenuator_speed_bound(const ComplexMatrix& x,
                                            const Superoperator& L,
                                            double parameter,
                                            const NormEstimate& l_norm);

enum class RateModel { pure_power, power_log };

struct RateFit {
  double exponent = 0.0;
  double constant = 0.0;
  double residual = 0.0;  // RMS of the log-space residuals
};

/// Least squares fit of log(error) against log(parameter):
///   pure_power: log e = log C - p log x
///   power_log:  log e = log C + log log x - p log x
RateFit fit_rate(const std::vector<ConvergenceRecord>& records, RateModel model);

struct DominanceCheck {
  double constant = 0.0;  // e(x0) x0 / log x0 at the smallest parameter
  bool holds = false;
  std::size_t violations = 0;
};

/// Fits C in C log(x)/x at the smallest parameter and checks the records at
/// all larger parameters against it.
DominanceCheck log_rate_dominance(const std::vector<ConvergenceRecord>& records);

}  // namespace zenolab
