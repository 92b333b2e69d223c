#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "zenolab/binomial.hpp"
#include "zenolab/channels.hpp"
#include "zenolab/combinatorics.hpp"
#include "zenolab/engine.hpp"
#include "zenolab/errors.hpp"
#include "zenolab/experiment.hpp"
#include "zenolab/parallel.hpp"
#include "zenolab/random.hpp"

namespace zenolab {

namespace {

using Clock = std::chrono::steady_clock;

// Stream ids for the counter-based generator. Each random object has its own
// stream so adding a state never perturbs the others.
constexpr std::uint64_t kChannelStream = 1;
constexpr std::uint64_t kHamiltonianStream = 2;
constexpr std::uint64_t kGappedStream = 3;
constexpr std::uint64_t kSimplexStream = 4;
constexpr std::uint64_t kStateStreamBase = 0x1000;

constexpr long kRandomStateSupport = 6;

NamedState build_state(const ExperimentConfig& cfg, const StateSpec& spec) {
  const FockSpace space(cfg.dimension);
  switch (spec.type) {
    case StateSpec::Type::vacuum:
      return {spec.id, vacuum_state(space).matrix()};
    case StateSpec::Type::fock:
      return {spec.id, fock_state(space, spec.level).matrix()};
    case StateSpec::Type::coherent: {
      const CoherentVector v = coherent_vector(spec.amplitude, space);
      if (v.tail_mass > cfg.tail_mass) {
        std::ostringstream msg;
        msg << "state " << spec.id << ": truncation tail " << v.tail_mass
            << " exceeds tolerance.tail_mass = " << cfg.tail_mass;
        throw InvariantViolation(msg.str());
      }
      return {spec.id, DensityMatrix(space, v.projector()).matrix()};
    }
    case StateSpec::Type::random: {
      Rng rng(cfg.seed, kStateStreamBase + spec.index);
      const long support = std::min(cfg.dimension, kRandomStateSupport);
      return {spec.id, DensityMatrix(space, random_density(rng, cfg.dimension, support)).matrix()};
    }
  }
  throw InvariantViolation("unhandled state type");
}

std::vector<NamedState> build_states(const ExperimentConfig& cfg) {
  std::vector<NamedState> out;
  for (const auto& s : cfg.states) out.push_back(build_state(cfg, s));
  return out;
}

struct ChannelPair {
  Superoperator M;
  Superoperator P;
};

ChannelPair build_channel(const ExperimentConfig& cfg) {
  const FockSpace space(cfg.dimension);
  if (cfg.channel_type == "attenuator") {
    return {attenuator_superop(cfg.eta, space), vacuum_projection_superop(space)};
  }
  const KrausChannel c =
      random_channel(cfg.seed, kChannelStream, cfg.dimension, cfg.kraus_rank);
  Superoperator M = to_superoperator(c);
  Superoperator P = fixed_point_projection(M);
  return {std::move(M), std::move(P)};
}

Superoperator build_generator(const ExperimentConfig& cfg) {
  const long d = cfg.dimension;
  const FockSpace space(d);
  Superoperator L = Superoperator::zero(d);
  if (cfg.hamiltonian != "none") {
    ComplexMatrix h(d, d);
    if (cfg.hamiltonian == "drive") {
      const ComplexMatrix a = annihilation(space);
      h = Complex(cfg.omega) * (a + adjoint(a));
    } else if (cfg.hamiltonian == "number") {
      h = Complex(cfg.omega) * number_operator(space);
    } else {
      Rng rng(cfg.seed, kHamiltonianStream);
      const ComplexMatrix g = random_hermitian(rng, d);
      h = Complex(cfg.omega / spectral_norm(g)) * g;
    }
    L = generator_superoperator(HamiltonianCommutator{h}, d);
  }
  if (cfg.dephasing > 0.0) {
    L = L + generator_superoperator(Dephasing{cfg.dephasing}, d);
  }
  return L;
}

ReportRow make_row(const ExperimentConfig& cfg, const ConvergenceRecord& rec) {
  ReportRow row;
  row.experiment_id = cfg.id;
  row.kind = to_string(cfg.kind);
  row.parameter = rec.parameter;
  row.state_id = rec.state_id;
  row.error = rec.error;
  row.bound = rec.bound;
  row.wall_time_ms = rec.wall_time.count();
  return row;
}

// Per-state power_log fit and C log(x)/x dominance; fills bound and fitted
// columns in place.
void attach_rate_fits(std::vector<ReportRow>& rows,
                      const std::vector<ConvergenceRecord>& records,
                      std::vector<std::string>& notes) {
  std::map<std::string, std::vector<ConvergenceRecord>> by_state;
  for (const auto& r : records) by_state[r.state_id].push_back(r);
  for (const auto& [state, recs] : by_state) {
    const bool fittable =
        recs.size() >= 4 &&
        std::all_of(recs.begin(), recs.end(), [](const ConvergenceRecord& r) {
          return r.error > 0.0 && r.parameter > 1.0;
        });
    if (!fittable) {
      notes.push_back(state + ": rate fit skipped (needs >= 4 positive errors at parameters > 1)");
      continue;
    }
    const RateFit fit = fit_rate(recs, RateModel::power_log);
    const DominanceCheck dom = log_rate_dominance(recs);
    bool decreasing = true;
    for (std::size_t i = 1; i < recs.size(); ++i) {
      if (!(recs[i].error < recs[i - 1].error)) decreasing = false;
    }
    for (auto& row : rows) {
      if (row.state_id != state) continue;
      row.fitted_p = fit.exponent;
      row.fitted_C = dom.constant;
      row.bound = dom.constant * std::log(row.parameter) / row.parameter;
    }
    std::ostringstream msg;
    msg << state << ": p = " << fit.exponent << " (power_log, rms " << fit.residual
        << "), C = " << dom.constant << ", dominance "
        << (dom.holds ? "holds" : "violated at " + std::to_string(dom.violations) + " points")
        << ", error " << (decreasing ? "strictly decreasing" : "not monotone");
    notes.push_back(msg.str());
  }
}

std::vector<ReportRow> to_rows(const ExperimentConfig& cfg,
                               const std::vector<ConvergenceRecord>& records) {
  std::vector<ReportRow> rows;
  for (const auto& r : records) rows.push_back(make_row(cfg, r));
  return rows;
}

ExperimentResult run_mixing(const ExperimentConfig& cfg) {
  ExperimentResult res{cfg, {}, {}};
  const auto states = build_states(cfg);
  const auto grid = cfg.integer_grid();
  const bool attenuator = cfg.channel_type == "attenuator";
  std::optional<ChannelPair> channel;
  if (!attenuator) channel = build_channel(cfg);

  auto per_state = parallel_map<std::vector<ReportRow>>(states.size(), [&](std::size_t i) {
    const auto start = Clock::now();
    const auto& s = states[i];
    const MixingProfile prof =
        attenuator ? attenuator_mixing_profile(cfg.eta, s.matrix, grid)
                   : mixing_speed_empirical(channel->M, channel->P, s.matrix, grid);
    const double per_point =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count() /
        static_cast<double>(grid.size());
    std::vector<ReportRow> rows;
    for (const auto& p : prof.points) {
      ReportRow row;
      row.experiment_id = cfg.id;
      row.kind = to_string(cfg.kind);
      row.parameter = static_cast<double>(p.n);
      row.state_id = s.id;
      row.error = p.sup;
      if (attenuator) row.bound = attenuator_mixing_bound(cfg.eta, p.n, s.matrix);
      row.wall_time_ms = per_point;
      rows.push_back(std::move(row));
    }
    return rows;
  });
  std::size_t violations = 0;
  for (auto& rows : per_state) {
    for (auto& r : rows) {
      if (r.bound && r.error > *r.bound) ++violations;
      res.rows.push_back(std::move(r));
    }
  }
  res.notes.push_back("error column is the grid-sup estimate of s_n");
  if (attenuator) {
    res.notes.push_back("mixing bound violations: " + std::to_string(violations));
  }
  return res;
}

ExperimentResult run_zeno(const ExperimentConfig& cfg) {
  ExperimentResult res{cfg, {}, {}};
  ChannelPair ch = build_channel(cfg);
  ZenoConfig zc{ch.M, build_generator(cfg), ch.P, cfg.t, cfg.integer_grid(),
                build_states(cfg)};
  zc.validate();
  const auto records = zeno_sweep(zc);
  res.rows = to_rows(cfg, records);
  attach_rate_fits(res.rows, records, res.notes);
  return res;
}

ExperimentResult run_damping(const ExperimentConfig& cfg) {
  ExperimentResult res{cfg, {}, {}};
  Superoperator K = Superoperator::identity(cfg.dimension);
  Superoperator P = Superoperator::identity(cfg.dimension);
  if (cfg.channel_type == "attenuator") {
    const FockSpace space(cfg.dimension);
    K = attenuator_generator(space);
    P = vacuum_projection_superop(space);
  } else {
    // e^{s(M - 1)} is a channel semigroup with the same fixed points as M.
    ChannelPair ch = build_channel(cfg);
    K = ch.M - Superoperator::identity(cfg.dimension);
    P = ch.P;
  }
  DampingConfig dc{K, build_generator(cfg), P, cfg.t, cfg.real_grid(), build_states(cfg)};
  dc.validate();
  const auto records = damping_sweep(dc);
  res.rows = to_rows(cfg, records);
  attach_rate_fits(res.rows, records, res.notes);
  return res;
}

ExperimentResult run_binomial(const ExperimentConfig& cfg) {
  ExperimentResult res{cfg, {}, {}};
  const auto grid = cfg.integer_grid();
  std::vector<ConvergenceRecord> records;
  if (cfg.channel_type == "gapped") {
    // M = U diag(1, 1, g e^{i a}, g e^{i b}) U^dagger, P the spectral
    // projection onto the unit eigenvalues; ||M^n - P|| = g^n.
    Rng rng(cfg.seed, kGappedStream);
    const ComplexMatrix u = random_unitary(rng, 4);
    const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double b = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const ComplexMatrix m = matmul(
        matmul(u, ComplexMatrix::diagonal({1.0, 1.0, std::polar(cfg.gap, a),
                                           std::polar(cfg.gap, b)})),
        adjoint(u));
    const ComplexMatrix p =
        matmul(matmul(u, ComplexMatrix::diagonal({1.0, 1.0, 0.0, 0.0})), adjoint(u));
    const ComplexMatrix g = ginibre(rng, 4, 4);
    const ComplexMatrix l = Complex(cfg.t / spectral_norm(g)) * g;
    const ComplexMatrix limit = matmul(matrix_exp(matmul(matmul(p, l), p)), p);
    records = parallel_map<ConvergenceRecord>(grid.size(), [&](std::size_t i) {
      const auto start = Clock::now();
      ConvergenceRecord rec;
      rec.parameter = static_cast<double>(grid[i]);
      rec.error = spectral_norm(binomial_product(m, l, grid[i]) - limit);
      rec.state_id = "operator";
      rec.wall_time = Clock::now() - start;
      return rec;
    });
    res.notes.push_back("error column is the spectral norm of (M + tL/n)^n - e^{tPLP}P");
  } else {
    ChannelPair ch = build_channel(cfg);
    const Superoperator L = Complex(cfg.t) * build_generator(cfg);
    const Superoperator limit = effective_dynamics(ch.P, L, 1.0);
    const auto states = build_states(cfg);
    auto per_n = parallel_map<std::vector<ConvergenceRecord>>(grid.size(), [&](std::size_t i) {
      const auto start = Clock::now();
      const Superoperator prod = binomial_product(ch.M, L, grid[i]);
      std::vector<ConvergenceRecord> rows;
      for (const auto& s : states) {
        ConvergenceRecord rec;
        rec.parameter = static_cast<double>(grid[i]);
        rec.error = trace_norm(prod.apply(s.matrix) - limit.apply(s.matrix));
        rec.state_id = s.id;
        rec.wall_time = Clock::now() - start;
        rows.push_back(std::move(rec));
      }
      return rows;
    });
    for (auto& rows : per_n) {
      for (auto& r : rows) records.push_back(std::move(r));
    }
  }
  res.rows = to_rows(cfg, records);
  attach_rate_fits(res.rows, records, res.notes);
  return res;
}

ExperimentResult run_simplex(const ExperimentConfig& cfg) {
  ExperimentResult res{cfg, {}, {}};
  Rng rng(cfg.seed, kSimplexStream);
  std::vector<std::vector<long>> Ns;
  for (long k = 1; k <= cfg.k_max; ++k) {
    std::vector<long> N;
    for (long l = 0; l <= k; ++l) {
      N.push_back(std::uniform_int_distribution<long>(0, 5)(rng.engine()));
    }
    Ns.push_back(std::move(N));
  }
  auto per_k = parallel_map<std::vector<ReportRow>>(
      static_cast<std::size_t>(cfg.k_max), [&](std::size_t idx) {
        const long k = static_cast<long>(idx) + 1;
        std::vector<ReportRow> rows;
        for (long n = k; n <= cfg.n_max; ++n) {
          const auto t0 = Clock::now();
          const SimplexRatioCheck card = simplex_ratio_bound_check(n, k);
          const auto t1 = Clock::now();
          const RestrictedBoundCheck restr = restricted_bound_check(n, k, Ns[idx]);
          const auto t2 = Clock::now();
          if (!card.holds || !restr.holds) {
            throw InvariantViolation("cardinality bound fails at n = " +
                                     std::to_string(n) + ", k = " + std::to_string(k));
          }
          ReportRow a;
          a.experiment_id = cfg.id;
          a.kind = to_string(cfg.kind);
          a.parameter = static_cast<double>(n);
          a.state_id = "k" + std::to_string(k) + ":card";
          a.error = card.deviation;
          a.bound = card.bound;
          a.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
          ReportRow b = a;
          b.state_id = "k" + std::to_string(k) + ":restricted";
          b.error = restr.difference;
          b.bound = restr.bound;
          b.wall_time_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
          rows.push_back(std::move(a));
          rows.push_back(std::move(b));
        }
        return rows;
      });
  for (auto& rows : per_k) {
    for (auto& r : rows) res.rows.push_back(std::move(r));
  }
  std::ostringstream msg;
  msg << "restricted sets use N = ";
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    msg << (i ? "; " : "") << "k" << i + 1 << ":(";
    for (std::size_t j = 0; j < Ns[i].size(); ++j) msg << (j ? "," : "") << Ns[i][j];
    msg << ")";
  }
  res.notes.push_back(msg.str());
  res.notes.push_back("all cardinality bounds hold (decided in exact rational arithmetic)");
  return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res{cfg, {}, {}};
  switch (cfg.kind) {
    case ExperimentKind::mixing: res = run_mixing(cfg); break;
    case ExperimentKind::zeno: res = run_zeno(cfg); break;
    case ExperimentKind::damping: res = run_damping(cfg); break;
    case ExperimentKind::binomial: res = run_binomial(cfg); break;
    case ExperimentKind::simplex: res = run_simplex(cfg); break;
  }
  std::stable_sort(res.rows.begin(), res.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     return std::tie(a.parameter, a.state_id) <
                            std::tie(b.parameter, b.state_id);
                   });
  return res;
}

}  // namespace zenolab
