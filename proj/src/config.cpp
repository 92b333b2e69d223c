#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "zenolab/errors.hpp"
#include "zenolab/experiment.hpp"

namespace zenolab {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment", {"id", "kind", "dimension", "seed", "t"}},
      {"channel", {"type", "eta_re", "eta_im", "kraus_rank", "gap"}},
      {"generator", {"hamiltonian", "omega", "dephasing"}},
      {"grid", {"start", "factor", "count"}},
      {"states", {"list"}},
      {"tolerance", {"tail_mass"}},
      {"simplex", {"k_max", "n_max"}},
      {"output", {"path"}},
  };
  return keys;
}

double parse_double(const std::string& field, std::string text) {
  boost::algorithm::trim(text);
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(field, "expected a finite number, got '" + text + "'");
  }
  return value;
}

long long parse_integer(const std::string& field, std::string text) {
  boost::algorithm::trim(text);
  long long value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(field, "expected an integer, got '" + text + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(const std::string& field, std::string text) {
  boost::algorithm::trim(text);
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(field, "expected an unsigned 64-bit integer, got '" + text + "'");
  }
  return value;
}

// Accepts "a", "bi", "a+bi", "a-bi" (i may also be written j).
Complex parse_complex(const std::string& field, std::string text) {
  boost::algorithm::trim(text);
  if (text.empty()) throw ConfigError(field, "empty complex number");
  const char last = text.back();
  if (last != 'i' && last != 'j') return {parse_double(field, text), 0.0};
  text.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t p = text.size(); p-- > 1;) {
    if ((text[p] == '+' || text[p] == '-') && text[p - 1] != 'e' && text[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) {
    if (text.empty() || text == "+") return {0.0, 1.0};
    if (text == "-") return {0.0, -1.0};
    return {0.0, parse_double(field, text)};
  }
  const double re = parse_double(field, text.substr(0, split));
  std::string im_text = text.substr(split);
  double im = 0.0;
  if (im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    if (im_text[0] == '+') im_text.erase(0, 1);
    im = parse_double(field, im_text);
  }
  return {re, im};
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::mixing: return "mixing";
    case ExperimentKind::zeno: return "zeno";
    case ExperimentKind::damping: return "damping";
    case ExperimentKind::binomial: return "binomial";
    case ExperimentKind::simplex: return "simplex";
  }
  return "unknown";
}

StateSpec parse_state_spec(const std::string& raw) {
  const std::string field = "states.list";
  std::string token = boost::algorithm::trim_copy(raw);
  StateSpec spec;
  spec.id = token;
  if (token == "vacuum") {
    spec.type = StateSpec::Type::vacuum;
    return spec;
  }
  const auto colon = token.find(':');
  if (colon == std::string::npos) {
    throw ConfigError(field, "state '" + token + "' is not of the form type:value");
  }
  const std::string type = token.substr(0, colon);
  const std::string value = token.substr(colon + 1);
  if (type == "fock") {
    spec.type = StateSpec::Type::fock;
    spec.level = parse_integer(field, value);
    if (spec.level < 0) throw ConfigError(field, "Fock level must be >= 0");
  } else if (type == "coherent") {
    spec.type = StateSpec::Type::coherent;
    spec.amplitude = parse_complex(field, value);
  } else if (type == "random") {
    spec.type = StateSpec::Type::random;
    spec.index = parse_unsigned(field, value);
  } else {
    throw ConfigError(field, "unknown state type '" + type + "'");
  }
  return spec;
}

std::vector<long> ExperimentConfig::integer_grid() const {
  std::vector<long> out;
  for (int i = 0; i < grid.count; ++i) {
    out.push_back(std::lround(grid.start * std::pow(grid.factor, i)));
  }
  return out;
}

std::vector<double> ExperimentConfig::real_grid() const {
  std::vector<double> out;
  for (int i = 0; i < grid.count; ++i) {
    out.push_back(grid.start * std::pow(grid.factor, i));
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("file", "line " + std::to_string(e.line()) + ": " + e.message());
  }

  for (const auto& [section, body] : tree) {
    auto it = schema().find(section);
    if (it == schema().end()) {
      if (body.empty()) throw ConfigError(section, "key outside of any section");
      throw ConfigError(section, "unknown section");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw ConfigError(section + "." + key, "unknown key");
      }
    }
  }

  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) {
      return boost::algorithm::trim_copy(*v);
    }
    return std::nullopt;
  };

  ExperimentConfig cfg;
  if (auto v = get("experiment.id")) cfg.id = *v;
  if (cfg.id.empty()) throw ConfigError("experiment.id", "missing experiment id");
  for (char c : cfg.id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) {
      throw ConfigError("experiment.id", "only letters, digits, '-', '_' and '.' are allowed");
    }
  }

  const auto kind = get("experiment.kind");
  if (!kind) throw ConfigError("experiment.kind", "missing experiment kind");
  if (*kind == "mixing") cfg.kind = ExperimentKind::mixing;
  else if (*kind == "zeno") cfg.kind = ExperimentKind::zeno;
  else if (*kind == "damping") cfg.kind = ExperimentKind::damping;
  else if (*kind == "binomial") cfg.kind = ExperimentKind::binomial;
  else if (*kind == "simplex") cfg.kind = ExperimentKind::simplex;
  else throw ConfigError("experiment.kind", "unknown kind '" + *kind + "'");

  if (auto v = get("experiment.dimension")) cfg.dimension = parse_integer("experiment.dimension", *v);
  if (cfg.dimension < 2 || cfg.dimension > 64) {
    throw ConfigError("experiment.dimension", "must lie in [2, 64]");
  }
  if (auto v = get("experiment.seed")) cfg.seed = parse_unsigned("experiment.seed", *v);
  if (auto v = get("experiment.t")) cfg.t = parse_double("experiment.t", *v);
  if (!(cfg.t > 0.0)) throw ConfigError("experiment.t", "must be > 0");

  if (auto v = get("channel.type")) cfg.channel_type = *v;
  if (cfg.channel_type != "attenuator" && cfg.channel_type != "random" &&
      cfg.channel_type != "gapped") {
    throw ConfigError("channel.type", "expected attenuator, random or gapped");
  }
  if (cfg.channel_type == "gapped" && cfg.kind != ExperimentKind::binomial) {
    throw ConfigError("channel.type", "gapped matrices are only used by binomial experiments");
  }
  double eta_re = cfg.eta.real(), eta_im = cfg.eta.imag();
  if (auto v = get("channel.eta_re")) eta_re = parse_double("channel.eta_re", *v);
  if (auto v = get("channel.eta_im")) eta_im = parse_double("channel.eta_im", *v);
  cfg.eta = {eta_re, eta_im};
  if (std::abs(cfg.eta) > 1.0) throw ConfigError("channel.eta_re", "|eta| must be <= 1");
  if (auto v = get("channel.kraus_rank")) cfg.kraus_rank = parse_integer("channel.kraus_rank", *v);
  if (cfg.kraus_rank < 1) throw ConfigError("channel.kraus_rank", "must be >= 1");
  if (auto v = get("channel.gap")) cfg.gap = parse_double("channel.gap", *v);
  if (!(cfg.gap > 0.0 && cfg.gap < 1.0)) throw ConfigError("channel.gap", "must lie in (0, 1)");

  if (auto v = get("generator.hamiltonian")) cfg.hamiltonian = *v;
  if (cfg.hamiltonian != "none" && cfg.hamiltonian != "drive" &&
      cfg.hamiltonian != "number" && cfg.hamiltonian != "random") {
    throw ConfigError("generator.hamiltonian", "expected none, drive, number or random");
  }
  if (auto v = get("generator.omega")) cfg.omega = parse_double("generator.omega", *v);
  if (auto v = get("generator.dephasing")) cfg.dephasing = parse_double("generator.dephasing", *v);
  if (cfg.dephasing < 0.0) throw ConfigError("generator.dephasing", "must be >= 0");

  if (auto v = get("grid.start")) cfg.grid.start = parse_double("grid.start", *v);
  if (auto v = get("grid.factor")) cfg.grid.factor = parse_double("grid.factor", *v);
  if (auto v = get("grid.count")) {
    const auto count = parse_integer("grid.count", *v);
    if (count < 1 || count > 64) throw ConfigError("grid.count", "must lie in [1, 64]");
    cfg.grid.count = static_cast<int>(count);
  }
  if (!(cfg.grid.factor > 1.0)) throw ConfigError("grid.factor", "must be > 1");
  const bool integer_kind = cfg.kind == ExperimentKind::mixing ||
                            cfg.kind == ExperimentKind::zeno ||
                            cfg.kind == ExperimentKind::binomial;
  if (integer_kind) {
    if (!(cfg.grid.start >= 1.0)) throw ConfigError("grid.start", "must be >= 1");
    const auto g = cfg.integer_grid();
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (g[i] <= g[i - 1]) {
        throw ConfigError("grid.factor", "rounded grid is not strictly increasing");
      }
    }
    if (g.back() > 1'000'000) throw ConfigError("grid.count", "grid exceeds 1e6");
  } else if (!(cfg.grid.start > 0.0)) {
    throw ConfigError("grid.start", "must be > 0");
  }

  if (auto v = get("states.list")) {
    std::vector<std::string> tokens;
    boost::algorithm::split(tokens, *v, boost::is_any_of(","));
    for (const auto& tok : tokens) {
      if (boost::algorithm::trim_copy(tok).empty()) continue;
      StateSpec s = parse_state_spec(tok);
      if (s.type == StateSpec::Type::fock && s.level >= cfg.dimension) {
        throw ConfigError("states.list", "Fock level " + std::to_string(s.level) +
                                             " outside dimension");
      }
      for (const auto& prev : cfg.states) {
        if (prev.id == s.id) throw ConfigError("states.list", "duplicate state " + s.id);
      }
      cfg.states.push_back(std::move(s));
    }
  }
  const bool needs_states = cfg.kind == ExperimentKind::mixing ||
                            cfg.kind == ExperimentKind::zeno ||
                            cfg.kind == ExperimentKind::damping ||
                            (cfg.kind == ExperimentKind::binomial &&
                             cfg.channel_type != "gapped");
  if (needs_states && cfg.states.empty()) {
    throw ConfigError("states.list", "at least one state is required");
  }

  if (auto v = get("tolerance.tail_mass")) cfg.tail_mass = parse_double("tolerance.tail_mass", *v);
  if (!(cfg.tail_mass > 0.0)) throw ConfigError("tolerance.tail_mass", "must be > 0");

  if (auto v = get("simplex.k_max")) cfg.k_max = parse_integer("simplex.k_max", *v);
  if (cfg.k_max < 1 || cfg.k_max > 12) throw ConfigError("simplex.k_max", "must lie in [1, 12]");
  if (auto v = get("simplex.n_max")) cfg.n_max = parse_integer("simplex.n_max", *v);
  if (cfg.n_max < cfg.k_max || cfg.n_max > 5000) {
    throw ConfigError("simplex.n_max", "must lie in [k_max, 5000]");
  }

  if (auto v = get("output.path")) cfg.output_path = *v;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("file", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace zenolab
