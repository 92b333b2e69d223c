#include "zenolab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "zenolab/errors.hpp"
#include "zenolab/parallel.hpp"

namespace zenolab {

namespace {

std::atomic<unsigned> g_threads{1};

using Clock = std::chrono::steady_clock;

double frob_diff(const Superoperator& a, const Superoperator& b) {
  return (a.matrix() - b.matrix()).frobenius_norm();
}

void check_projection(const Superoperator& P, const Superoperator& M,
                      const char* m_name) {
  if (P.dim() != M.dim()) throw DimensionError("P and M act on different spaces");
  if (frob_diff(P * P, P) > 1e-9) {
    throw InvariantViolation("P is not idempotent");
  }
  if (frob_diff(M * P, P) > 1e-9 || frob_diff(P * M, P) > 1e-9) {
    throw InvariantViolation(std::string("P is not absorbed by ") + m_name);
  }
}

void check_contractive(const Superoperator& M,
                       const std::vector<NamedState>& states, const char* what) {
  for (const auto& s : states) {
    const double in = trace_norm(s.matrix);
    const double out = trace_norm(M.apply(s.matrix));
    if (out > in + 1e-8) {
      throw InvariantViolation(std::string(what) + " expands trace norm of state " +
                               s.id);
    }
  }
}

void sort_records(std::vector<ConvergenceRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const ConvergenceRecord& a, const ConvergenceRecord& b) {
              return std::tie(a.parameter, a.state_id) <
                     std::tie(b.parameter, b.state_id);
            });
}

}  // namespace

void set_thread_count(unsigned count) {
  g_threads = count == 0 ? std::max(1u, std::thread::hardware_concurrency())
                         : count;
}

unsigned thread_count() { return g_threads; }

void ZenoConfig::validate() const {
  if (!(t > 0.0)) throw InvariantViolation("Zeno config: t must be > 0");
  if (L.dim() != M.dim()) throw DimensionError("L and M act on different spaces");
  for (long n : n_grid) {
    if (n < 1) throw InvariantViolation("Zeno config: grid entries must be >= 1");
  }
  check_projection(P, M, "M");
  check_contractive(M, test_states, "M");
}

void DampingConfig::validate() const {
  if (!(t > 0.0)) throw InvariantViolation("damping config: t must be > 0");
  if (L.dim() != K.dim()) throw DimensionError("L and K act on different spaces");
  for (double g : gamma_grid) {
    if (!(g >= 0.0)) throw InvariantViolation("damping config: gamma must be >= 0");
  }
  check_projection(P, exp(K), "e^K");
  for (double s : {0.1, 1.0, 10.0}) {
    check_contractive(exp(Complex(s) * K), test_states, "e^{sK}");
  }
}

Superoperator zeno_propagator(const ZenoConfig& cfg, long n) {
  if (n < 1) throw InvariantViolation("zeno_propagator: n must be >= 1");
  const Superoperator step =
      cfg.M * exp(Complex(cfg.t / static_cast<double>(n)) * cfg.L);
  return power(step, n);
}

ComplexMatrix zeno_product(const ZenoConfig& cfg, long n, const ComplexMatrix& x) {
  return zeno_propagator(cfg, n).apply(x);
}

ComplexMatrix zeno_product_iterated(const ZenoConfig& cfg, long n,
                                    const ComplexMatrix& x) {
  if (n < 1) throw InvariantViolation("zeno_product_iterated: n must be >= 1");
  const Superoperator step =
      cfg.M * exp(Complex(cfg.t / static_cast<double>(n)) * cfg.L);
  ComplexMatrix::Storage v = vectorize(x).values();
  for (long k = 0; k < n; ++k) v = step.matrix().values() * v;
  return devectorize(ComplexMatrix(std::move(v)), cfg.M.dim());
}

Superoperator effective_dynamics(const Superoperator& P, const Superoperator& L,
                                 double t) {
  const Superoperator plp = P * L * P;
  Superoperator out = exp(Complex(t) * plp) * P;
  return Superoperator(out.dim(), out.matrix(), "effective");
}

ConvergenceRecord zeno_error(const ZenoConfig& cfg, long n, const NamedState& rho) {
  const auto start = Clock::now();
  const ComplexMatrix limit = effective_dynamics(cfg.P, cfg.L, cfg.t).apply(rho.matrix);
  const ComplexMatrix value = zeno_product(cfg, n, rho.matrix);
  ConvergenceRecord rec;
  rec.parameter = static_cast<double>(n);
  rec.error = trace_norm(value - limit);
  rec.state_id = rho.id;
  rec.wall_time = Clock::now() - start;
  return rec;
}

std::vector<ConvergenceRecord> zeno_sweep(const ZenoConfig& cfg) {
  const Superoperator limit = effective_dynamics(cfg.P, cfg.L, cfg.t);
  std::vector<ComplexMatrix> targets;
  for (const auto& s : cfg.test_states) targets.push_back(limit.apply(s.matrix));

  auto per_n = parallel_map<std::vector<ConvergenceRecord>>(
      cfg.n_grid.size(), [&](std::size_t i) {
        const auto start = Clock::now();
        const long n = cfg.n_grid[i];
        const Superoperator prop = zeno_propagator(cfg, n);
        const auto shared = Clock::now() - start;
        std::vector<ConvergenceRecord> rows;
        for (std::size_t s = 0; s < cfg.test_states.size(); ++s) {
          const auto cell = Clock::now();
          ConvergenceRecord rec;
          rec.parameter = static_cast<double>(n);
          rec.error = trace_norm(prop.apply(cfg.test_states[s].matrix) - targets[s]);
          rec.state_id = cfg.test_states[s].id;
          rec.wall_time = shared + (Clock::now() - cell);
          rows.push_back(std::move(rec));
        }
        return rows;
      });
  std::vector<ConvergenceRecord> out;
  for (auto& rows : per_n) {
    for (auto& r : rows) out.push_back(std::move(r));
  }
  sort_records(out);
  return out;
}

Superoperator damped_propagator(const DampingConfig& cfg, double gamma) {
  return damped_propagator(cfg, gamma, cfg.t);
}

Superoperator damped_propagator(const DampingConfig& cfg, double gamma, double t) {
  if (!(gamma >= 0.0)) throw InvariantViolation("damped_propagator: gamma must be >= 0");
  return exp(Complex(t) * (Complex(gamma) * cfg.K + cfg.L));
}

ComplexMatrix damped_evolution(const DampingConfig& cfg, double gamma,
                               const ComplexMatrix& x) {
  return damped_propagator(cfg, gamma).apply(x);
}

ConvergenceRecord damping_error(const DampingConfig& cfg, double gamma,
                                const NamedState& rho) {
  const auto start = Clock::now();
  const ComplexMatrix limit = effective_dynamics(cfg.P, cfg.L, cfg.t).apply(rho.matrix);
  const ComplexMatrix value = damped_evolution(cfg, gamma, rho.matrix);
  ConvergenceRecord rec;
  rec.parameter = gamma;
  rec.error = trace_norm(value - limit);
  rec.state_id = rho.id;
  rec.wall_time = Clock::now() - start;
  return rec;
}

std::vector<ConvergenceRecord> damping_sweep(const DampingConfig& cfg) {
  const Superoperator limit = effective_dynamics(cfg.P, cfg.L, cfg.t);
  std::vector<ComplexMatrix> targets;
  for (const auto& s : cfg.test_states) targets.push_back(limit.apply(s.matrix));

  auto per_gamma = parallel_map<std::vector<ConvergenceRecord>>(
      cfg.gamma_grid.size(), [&](std::size_t i) {
        const auto start = Clock::now();
        const double gamma = cfg.gamma_grid[i];
        const Superoperator prop = damped_propagator(cfg, gamma);
        const auto shared = Clock::now() - start;
        std::vector<ConvergenceRecord> rows;
        for (std::size_t s = 0; s < cfg.test_states.size(); ++s) {
          const auto cell = Clock::now();
          ConvergenceRecord rec;
          rec.parameter = gamma;
          rec.error = trace_norm(prop.apply(cfg.test_states[s].matrix) - targets[s]);
          rec.state_id = cfg.test_states[s].id;
          rec.wall_time = shared + (Clock::now() - cell);
          rows.push_back(std::move(rec));
        }
        return rows;
      });
  std::vector<ConvergenceRecord> out;
  for (auto& rows : per_gamma) {
    for (auto& r : rows) out.push_back(std::move(r));
  }
  sort_records(out);
  return out;
}

std::vector<ComplexMatrix> zeno_chain_states(const Superoperator& L,
                                             const Superoperator& P, double t,
                                             const ComplexMatrix& x, int l_max) {
  if (l_max < 1) throw InvariantViolation("zeno_chain_states: l_max must be >= 1");
  const Superoperator tlp = Complex(t) * (L * P);
  std::vector<ComplexMatrix> chain{x};
  for (int l = 2; l <= l_max; ++l) chain.push_back(tlp.apply(chain.back()));
  return chain;
}

std::vector<long> constant_sequence(long n, double delta, int l_max) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvariantViolation("constant_sequence: delta must lie in (0, 1)");
  }
  if (n < 1) throw InvariantViolation("constant_sequence: n must be >= 1");
  const long value = static_cast<long>(
      std::floor(std::log(static_cast<double>(n)) / std::log(1.0 / delta)));
  return std::vector<long>(static_cast<std::size_t>(l_max), value);
}

SsupReport theoretical_zeno_bound_ssup(const std::vector<MixingProfile>& s_tables,
                                       double tl_norm, long n,
                                       const std::vector<long>& N, double x_norm) {
  if (N.empty()) throw InvariantViolation("s_sup: empty sequence N");
  if (N.size() > s_tables.size()) {
    throw InvariantViolation("s_sup: l = " + std::to_string(N.size()) +
                             " exceeds chain length " +
                             std::to_string(s_tables.size()));
  }
  if (n < 1) throw InvariantViolation("s_sup: n must be >= 1");
  SsupReport report;
  report.l_max = static_cast<int>(N.size());
  report.value = -std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < N.size(); ++idx) {
    const int l = static_cast<int>(idx) + 1;
    const auto& pts = s_tables[idx].points;
    auto it = std::find_if(pts.begin(), pts.end(),
                           [&](const MixingPoint& p) { return p.n >= N[idx]; });
    if (it == pts.end()) {
      throw InvariantViolation("s_sup: N_" + std::to_string(l) +
                               " lies beyond the tabulated grid");
    }
    double s_part = 0.0;
    if (l == 1) {
      s_part = it->sup;
    } else if (tl_norm > 0.0) {
      s_part = std::pow(tl_norm, 1 - l) * it->sup;
    }
    const double term =
        s_part + static_cast<double>(N[idx]) / static_cast<double>(n) * x_norm;
    if (term > report.value) {
      report.value = term;
      report.argmax_l = l;
    }
  }
  report.attained_inside = report.argmax_l < report.l_max;
  return report;
}

double proof_constant_envelope(double l_norm) {
  return 4.0 * l_norm * l_norm * std::exp(l_norm);
}

AttenuatorSpeedBound attenuator_speed_bound(const ComplexMatrix& x,
                                            const Superoperator& L,
                                            double parameter, std::uint64_t seed) {
  return attenuator_speed_bound(x, L, parameter, one_to_one_norm_estimate(L, seed));
}

AttenuatorSpeedBound attenuator_speed_bound(const ComplexMatrix& x,
                                            const Superoperator& L,
                                            double parameter,
                                            const NormEstimate& l_norm) {
  if (!(parameter > 1.0)) {
    throw InvariantViolation("attenuator_speed_bound: parameter must exceed 1");
  }
  const Eigen::Index d = L.dim();
  ComplexMatrix vac(d, d);
  vac(0, 0) = 1.0;
  const ComplexMatrix l_vac = L.apply(vac);

  AttenuatorSpeedBound out;
  out.l_norm = l_norm;
  const PositiveParts xs = positive_part_decomposition(x);
  const PositiveParts ls = positive_part_decomposition(l_vac);
  const double ratio = l_norm.value > 0.0 ? trace_norm(x) / l_norm.value : 0.0;
  const ComplexMatrix* xp[] = {&xs.x1, &xs.x2, &xs.x3, &xs.x4};
  const ComplexMatrix* lp[] = {&ls.x1, &ls.x2, &ls.x3, &ls.x4};
  for (int i = 0; i < 4; ++i) {
    out.factor += weighted_trace(*xp[i]) + weighted_trace(*lp[i]) * ratio;
  }
  out.shape = std::log(parameter) / parameter;
  return out;
}

RateFit fit_rate(const std::vector<ConvergenceRecord>& records, RateModel model) {
  if (records.size() < 4) {
    throw InvariantViolation("fit_rate: need at least 4 records, got " +
                             std::to_string(records.size()));
  }
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (!(r.error > 0.0)) throw InvariantViolation("fit_rate: nonpositive error");
    const double floor = model == RateModel::power_log ? 1.0 : 0.0;
    if (!(r.parameter > floor)) {
      throw InvariantViolation("fit_rate: degenerate grid (parameter " +
                               std::to_string(r.parameter) + ")");
    }
    const double lx = std::log(r.parameter);
    double y = std::log(r.error);
    if (model == RateModel::power_log) y -= std::log(lx);
    xs.push_back(lx);
    ys.push_back(y);
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) throw InvariantViolation("fit_rate: degenerate grid (single parameter)");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss += r * r;
  }
  return {-slope, std::exp(intercept), std::sqrt(ss / m)};
}

DominanceCheck log_rate_dominance(const std::vector<ConvergenceRecord>& records) {
  if (records.empty()) throw InvariantViolation("log_rate_dominance: no records");
  auto first = std::min_element(records.begin(), records.end(),
                                [](const auto& a, const auto& b) {
                                  return a.parameter < b.parameter;
                                });
  if (!(first->parameter > 1.0)) {
    throw InvariantViolation("log_rate_dominance: parameters must exceed 1");
  }
  DominanceCheck out;
  out.constant = first->error * first->parameter / std::log(first->parameter);
  for (const auto& r : records) {
    if (r.parameter == first->parameter) continue;  // the fit point itself
    const double bound = out.constant * std::log(r.parameter) / r.parameter;
    if (r.error > bound) ++out.violations;
  }
  out.holds = out.violations == 0;
  return out;
}

}  // namespace zenolab
