#pragma once

#include "ctpotts/strip.hpp"

#include <vector>

namespace ctpotts {

/// Dense K x K truncation of the strip-to-strip transfer matrix with
/// entries u(n, n') = C(n + n' - 1, n - 1) e^{-mu (n + n')} for
/// 1 <= n, n' <= K. All entries are strictly positive. Note u is not
/// symmetric (the binomial is not), but D U D^{-1} with D = diag(1/sqrt n)
/// is, so the spectrum is real and the leading eigenvalue simple.
struct TransferMatrix {
  double mu = 0;
  int K = 0;
  std::vector<long double> entries;  // row-major, (n-1)*K + (n'-1)

  long double at(int n, int np) const { return entries[(n - 1) * K + (np - 1)]; }
};

long double u_entry(int n, int np, double mu);
TransferMatrix build_transfer(double mu, int K);

/// Closed-form leading eigenvalue of the untruncated transfer matrix,
/// [(1 - sqrt(1 - 4 e^{-2 mu})) / (2 e^{-mu})]^2, defined for mu >= ln 2.
double lambda_closed_form(double mu);

/// Leading eigenvalue of the truncated matrix by power iteration
/// (relative-change stop 1e-12, at most 1e5 iterations).
double leading_eigenvalue(const TransferMatrix& u);

/// ln of the truncated N-strip partition function: ln tr(U^N) with all
/// widths <= K, i.e. ln of the sum over cyclic width sequences of the
/// product of u entries. Scaled long-double accumulation.
double z_n_truncated(int n_strips, double mu, int K);

struct DivergenceReport {
  enum class Verdict { Converging, Diverging };
  struct Row {
    int K = 0;
    double log_z = 0;
    double log_increment = 0;  // ln(Z^{(K)} - Z^{(K-1)}), -inf if below precision
    double ratio = 0;          // increment ratio vs previous K, NaN for K <= 2
  };
  Verdict verdict = Verdict::Converging;
  double threshold = 0;  // ln(2 cos(pi/(N+1))), the analytic classification
  double measured_ratio = 0;
  std::vector<Row> rows;
};

/// Increment-trend diagnostic for the truncated partition function. The
/// verdict is heuristic; the analytic threshold in the report is the
/// authoritative classification. Requires K_max >= 8.
DivergenceReport divergence_diagnostic(int n_strips, double mu, int K_max);

/// Exact sampler for width sequences under the truncated N-strip Gibbs law
/// Q(n^0..n^{N-1}) proportional to the product of u(n^i, n^{i+1}).
struct PureGibbsWidthLaw {
  int N = 0;
  double mu = 0;
  int K = 0;
  TransferMatrix u;
  // u^j for j = 1..N, each scaled to unit max with its log-scale recorded.
  std::vector<std::vector<long double>> powers;
  std::vector<long double> power_log_scale;
  double log_z = 0;

  double log_probability(const std::vector<int>& widths) const;
};

PureGibbsWidthLaw make_width_law(int n_strips, double mu, int K);
WidthSequence sample_widths(const PureGibbsWidthLaw& law, Rng& rng);

}  // namespace ctpotts
