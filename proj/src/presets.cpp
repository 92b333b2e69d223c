#include "zenolab/experiment.hpp"

namespace zenolab {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"attenuator-mixing",
       "attenuator powers vs the 4|eta|^n Tr((N+1) rho) mixing bound",
       R"([experiment]
id = attenuator-mixing
kind = mixing
dimension = 16
seed = 7

[channel]
type = attenuator
eta_re = 0.8
eta_im = 0.0

[grid]
start = 1
factor = 2
count = 7

[states]
list = vacuum, fock:1, fock:3, coherent:0.8, coherent:0.5+0.5i, random:1, random:2, random:3
)"},
      {"attenuator-zeno",
       "Zeno product (M e^{tL/n})^n with M the attenuator, L a coherent drive",
       R"([experiment]
id = attenuator-zeno
kind = zeno
dimension = 16
seed = 11
t = 1.0

[channel]
type = attenuator
eta_re = 0.5
eta_im = 0.0

[generator]
hamiltonian = drive
omega = 0.5

[grid]
start = 8
factor = 2
count = 10

[states]
list = fock:1, coherent:0.8, random:1
)"},
      {"attenuator-damping",
       "strong damping e^{t(gamma K_att + L)} towards the vacuum",
       R"([experiment]
id = attenuator-damping
kind = damping
dimension = 16
seed = 13
t = 1.0

[channel]
type = attenuator

[generator]
hamiltonian = drive
omega = 0.5

[grid]
start = 8
factor = 2
count = 9

[states]
list = fock:1, coherent:0.8, random:1
)"},
      {"uniform-zeno",
       "Zeno product for a random primitive channel on C^4 with a random Hamiltonian",
       R"([experiment]
id = uniform-zeno
kind = zeno
dimension = 4
seed = 17
t = 1.0

[channel]
type = random
kraus_rank = 2

[generator]
hamiltonian = random
omega = 1.0

[grid]
start = 8
factor = 2
count = 10

[states]
list = vacuum, fock:2, random:1, random:2
)"},
      {"binomial-limit",
       "(M + tL/n)^n vs e^{tPLP}P for a 4x4 matrix with spectral gap 0.5",
       R"([experiment]
id = binomial-limit
kind = binomial
seed = 19
t = 1.0

[channel]
type = gapped
gap = 0.5

[grid]
start = 8
factor = 2
count = 10
)"},
      {"simplex-bounds",
       "exact discrete-simplex cardinality bounds for k <= 8, n <= 1000",
       R"([experiment]
id = simplex-bounds
kind = simplex
seed = 23

[simplex]
k_max = 8
n_max = 1000
)"},
  };
  return all;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace zenolab
