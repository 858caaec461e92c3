#pragma once

#include "ctpotts/spin.hpp"

#include <string>

namespace ctpotts {

enum class Side { Primal, Dual };

/// Inverse temperature / cosmological constant pair with the cluster weight
/// q, tagged by which side of the duality it lives on.
struct CoupledParams {
  double beta = 0;
  double mu = 0;
  double q = 2;
  Side side = Side::Primal;
};

/// Maps (beta, mu) to the opposite side:
///   beta* = ln(1 + q/(e^beta - 1)) in both directions;
///   primal -> dual:  mu* = mu - (3/2) ln(e^beta - 1) + ln q,
///   dual -> primal:  mu  = mu* - (3/2) ln(e^beta* - 1) + (1/2) ln q.
/// The round trip is the identity and (e^beta - 1)(e^beta* - 1) = q.
CoupledParams dual_point(const CoupledParams& params);

/// p*(p, q) = (1-p) q / ((1-p) q + p); satisfies p*/(1-p*) * p/(1-p) = q.
double p_star(double p, double q);

/// Two-sided comparison between a partition function ratio and its bounds,
/// all in log domain. ok means both margins are nonnegative.
struct DualityReport {
  double log_lhs_bound = 0;
  double log_ratio = 0;
  double log_rhs_bound = 0;
  double margin_low = 0;   // log_ratio - log_lhs_bound
  double margin_high = 0;  // log_rhs_bound - log_ratio
  bool lower_ok = false;
  bool upper_ok = false;

  bool ok() const { return lower_ok && upper_ok; }
  std::string to_json(const std::string& label) const;
};

/// FK-side comparison: (p/(1-p*))^{3n/2} q^{-1-n} <= Z_FK(p,q,t)/Z_FK(p*,q,t*)
/// <= (p/(1-p*))^{3n/2} q^{1-n}, and the swapped-role form.
DualityReport fk_duality_check(const CausalTriangulation& t, double p, double q,
                               const Budget& budget = {});
DualityReport fk_duality_check_dual_form(const CausalTriangulation& t, double p, double q,
                                         const Budget& budget = {});

/// Potts-side transport of the same inequalities through the coupling with
/// p = 1 - e^{-beta} and (e^beta - 1)(e^beta* - 1) = q.
DualityReport potts_duality_check(const CausalTriangulation& t, double beta, int q,
                                  const Budget& budget = {});

/// ln of the truncated annealed partition function
/// Xi_N(beta, mu) = sum over enumerated t of e^{-mu n(t)} Z_P(beta, q, t),
/// with spins on the primal (Side::Primal) or dual (Side::Dual) host.
double log_xi_truncated(int n_strips, int max_width, double beta, double mu, int q, Side side,
                        const Budget& budget = {});

/// Annealed comparison (1/q) Xi*_N <= Xi_N <= q Xi*_N over a common
/// truncation, plus the |ln Xi - ln Xi*| <= ln q proxy.
struct AnnealedReport {
  double log_xi = 0;
  double log_xi_dual = 0;
  double log_q = 0;
  bool lower_ok = false;
  bool upper_ok = false;
  bool free_energy_gap_ok = false;  // |log_xi - log_xi_dual| <= ln q

  bool ok() const { return lower_ok && upper_ok && free_energy_gap_ok; }
};

AnnealedReport annealed_duality_check(int n_strips, int max_width, double beta, double mu, int q,
                                      const Budget& budget = {});

}  // namespace ctpotts
