#pragma once

#include "ctpotts/duality.hpp"

namespace ctpotts {

/// Classification of a parameter point against the closed-form curves:
/// below the lower curve no Gibbs measure exists (the annealed partition
/// function diverges for large N); above the upper curve the model is
/// provably subcritical. The band between them is where the critical curve
/// lives. Boundary points (equalities) belong to the band.
struct RegionVerdict {
  double beta = 0;
  double mu = 0;
  double q = 2;
  Side side = Side::Primal;
  bool in_no_gibbs_region = false;
  bool in_subcritical_region = false;
  bool band = false;

  std::string to_json() const;
};

/// Lower curve: max{ ln(2 sqrt q) primal / ln(2q) dual,
///                   (3/2) ln(e^beta - 1) + ln 2 }.
double no_gibbs_boundary(double beta, double q, Side side);

/// Upper curve. Primal:
///   (3/2) ln(q + e^b - 1) + ln 2 - ln q
///     + (3/2) ln(1 + (q^{2/3} - 1)(e^b - 1)/(q + e^b - 1));
/// dual: (3/2) b + ln 2 + (3/2) ln(1 + (q^{2/3} - 1) e^{-b}).
double subcritical_boundary(double beta, double q, Side side);

double small_beta_constant(double q, Side side);

RegionVerdict classify_point(double beta, double mu, double q, Side side);

/// phi(beta, mu) = (beta*, mu*): same map as dual_point, primal to dual.
std::pair<double, double> region_map_phi(double beta, double mu, double q);

/// Per-triangulation lower bounds for ln Z_P:
///   first  q (e^beta - 1)^{3n/2}   (sharp at low temperature),
///   second q^{n/2}                 (sharp at beta = 0).
std::pair<double, double> lower_bounds_zp(int n_triangles, double beta, double q);

/// High-temperature product bound for ln Z_P:
///   |E| ln((q+h)/q) + (|V| + 2/3) ln q + |E| ln(1 + u),
/// h = e^beta - 1, u = (q^{2/3} - 1) h / (q + h).
double high_t_upper_bound(int n_edges, int n_vertices, double beta, double q);

struct AnnealedBound {
  double log_value = 0;
  bool shifted_mu_below_ln2 = false;  // truncated value kept, tail divergent
};

/// max{ ln q + ln Z_N(mu - (3/2) ln(e^beta - 1)), ln Z_N(mu - ln(q)/2) },
/// truncated at K; minorizes the same-truncation annealed sum.
AnnealedBound annealed_lower_bound(int n_strips, double beta, double mu, double q, int K);

/// (2/3) ln q + ln Z_N(mu~), mu~ = mu - (3/2) ln((q+h)/q) - ln(q)/2
/// - (3/2) ln(1+u); dominates the same-truncation annealed sum wherever the
/// per-triangulation product bound holds.
AnnealedBound annealed_upper_bound(int n_strips, double beta, double mu, double q, int K);

/// q = 2 free-energy sandwich on the dual side: both closed-form Lambda
/// values, (lower, upper). Domain error when an argument falls below ln 2.
std::pair<double, double> free_energy_sandwich_q2(double beta_star, double mu_star);

struct CurveTable {
  double q = 2;
  Side side = Side::Primal;
  struct Row {
    double beta, lower, upper, asymptote, small_beta_const;
  };
  std::vector<Row> rows;

  std::string to_csv() const;  // header beta,lower,upper,asymptote,small_beta_const
};

CurveTable curve_table(double q, Side side, const std::vector<double>& beta_grid);

/// Exhaustively checks the circuit-count bound xi(S) <= (2/3)(|S|+1) over
/// all edge subsets with |S| <= k_max, xi = independent circuits (exact
/// integer circuit rank). The bound is the combinatorial step behind the
/// high-temperature expansion; it fails on loop subsets and on full edge
/// sets of torus triangulations, and the violations are reported.
struct CircuitCheck {
  struct Violation {
    std::uint64_t subset;
    int k;
    int xi;
  };
  std::uint64_t subsets_checked = 0;
  std::vector<Violation> violations;  // capped at 32 entries

  bool ok() const { return violations.empty(); }
};

CircuitCheck circuit_bound_check(const CausalTriangulation& t, int k_max);

}  // namespace ctpotts
