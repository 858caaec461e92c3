#pragma once

#include "ctpotts/spin.hpp"

namespace ctpotts {

/// Joint chain state for the annealed measure
/// P(t, sigma) proportional to exp(-mu n(t) - beta h(sigma)).
/// The triangulation is stored as its strip words; the graph, the spin
/// vector and the energy are kept in sync with them.
struct ChainState {
  std::vector<Strip> strips;
  CausalTriangulation t;
  HostGraph host;
  SpinConfig spins;
  int satisfied = 0;  // cached; h(sigma) = -satisfied

  std::int64_t steps = 0;
  std::int64_t proposed_inserts = 0, accepted_inserts = 0;
  std::int64_t proposed_deletes = 0, accepted_deletes = 0;
  std::int64_t rejected_no_move = 0;
  std::vector<std::uint8_t> bonds;  // last Swendsen-Wang bond draw
  int last_cluster_count = 0;

  int n_strips() const { return static_cast<int>(strips.size()); }
  double energy() const { return -satisfied; }
  double accept_rate() const;

  std::string to_json() const;  // versioned checkpoint payload
  static ChainState from_json(const std::string& text);
};

/// Fresh chain at minimal volume (all widths 1) with uniform spin 1.
ChainState make_chain(int n_strips, int q);

/// One Swendsen-Wang sweep at fixed triangulation: bonds open on satisfied
/// edges with probability p = 1 - e^{-beta}, clusters recolored uniformly.
/// Self-loop bonds are connectivity no-ops.
void sw_sweep(ChainState& state, double beta, int q, Rng& rng);

/// One Metropolis-Hastings geometry move at fixed N: insert a vertex on a
/// random slice (one extra down-triangle in the strip below, one extra
/// up-triangle in the strip above, a uniform new spin) or the inverse
/// deletion. Widths stay within [1, max_width]. Returns true when accepted.
bool triangulation_move(ChainState& state, double beta, double mu, int q, int max_width,
                        Rng& rng);

struct FreeEnergyEstimate {
  double value = 0;     // estimate of ln Xi_N(beta, mu) at truncation max_width
  double std_error = 0; // jackknife, quadrature-weighted
  double anchor = 0;    // exact beta = 0 term
};

/// ln Xi_N(beta, mu) = ln Z_N(mu - ln(q)/2) + integral_0^beta <satisfied> dbeta',
/// the integral by Gauss-Legendre with one chain per node. Refuses points in
/// the no-Gibbs region.
FreeEnergyEstimate estimate_free_energy(int n_strips, double beta, double mu, int q,
                                        int max_width, std::int64_t sweeps_per_node,
                                        std::uint64_t seed);

}  // namespace ctpotts
