#include "ctpotts/transfer.hpp"

#include <algorithm>
#include <cmath>

namespace ctpotts {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// C = A * B for row-major K x K long-double matrices.
void matmul(int K, const std::vector<long double>& a, const std::vector<long double>& b,
            std::vector<long double>& c) {
  c.assign(static_cast<std::size_t>(K) * K, 0.0L);
  for (int i = 0; i < K; ++i)
    for (int l = 0; l < K; ++l) {
      long double ail = a[i * K + l];
      if (ail == 0.0L) continue;
      const long double* brow = &b[l * K];
      long double* crow = &c[i * K];
      for (int j = 0; j < K; ++j) crow[j] += ail * brow[j];
    }
}

// Rescales m to unit max entry, returning the log of the applied factor.
long double normalize(std::vector<long double>& m) {
  long double mx = 0.0L;
  for (long double v : m) mx = std::max(mx, v);
  if (mx <= 0.0L) return 0.0L;
  for (long double& v : m) v /= mx;
  return std::log(mx);
}

}  // namespace

long double u_entry(int n, int np, double mu) {
  if (n < 1 || np < 1) throw std::domain_error("transfer entry needs widths >= 1");
  return binomial_ld(n + np - 1, n - 1) *
         std::exp(static_cast<long double>(-mu) * (n + np));
}

TransferMatrix build_transfer(double mu, int K) {
  if (K < 1) throw std::domain_error("transfer truncation K must be >= 1");
  if (std::isnan(mu)) throw std::domain_error("mu is NaN");
  TransferMatrix u;
  u.mu = mu;
  u.K = K;
  u.entries.resize(static_cast<std::size_t>(K) * K);
  for (int n = 1; n <= K; ++n)
    for (int np = 1; np <= K; ++np) u.entries[(n - 1) * K + (np - 1)] = u_entry(n, np, mu);
  return u;
}

double lambda_closed_form(double mu) {
  if (std::isnan(mu)) throw std::domain_error("mu is NaN");
  if (mu < std::log(2.0)) throw std::domain_error("Lambda undefined below ln 2");
  double x = std::exp(-mu);
  double disc = std::max(0.0, 1.0 - 4.0 * x * x);
  double r = (1.0 - std::sqrt(disc)) / (2.0 * x);
  return r * r;
}

double leading_eigenvalue(const TransferMatrix& u) {
  const int K = u.K;
  std::vector<long double> v(static_cast<std::size_t>(K), 1.0L), w(static_cast<std::size_t>(K));
  long double lambda = 0.0L, prev = -1.0L;
  for (int it = 0; it < 100000; ++it) {
    long double sv = 0.0L, sw = 0.0L;
    for (int i = 0; i < K; ++i) {
      long double acc = 0.0L;
      const long double* row = &u.entries[i * K];
      for (int j = 0; j < K; ++j) acc += row[j] * v[j];
      w[i] = acc;
      sw += acc;
      sv += v[i];
    }
    lambda = sw / sv;
    for (int i = 0; i < K; ++i) v[i] = w[i] / sw;
    if (prev > 0.0L && std::abs(lambda - prev) <= 1e-12L * lambda) break;
    prev = lambda;
  }
  return static_cast<double>(lambda);
}

double z_n_truncated(int n_strips, double mu, int K) {
  if (n_strips < 1) throw std::domain_error("need N >= 1");
  if (K < 1) throw std::domain_error("need K >= 1");
  if (std::isnan(mu)) throw std::domain_error("mu is NaN");
  TransferMatrix u = build_transfer(mu, K);

  // tr(U^N) by squaring, entries rescaled to unit max at each step.
  std::vector<long double> acc, base = u.entries, tmp;
  long double log_acc = 0.0L, log_base = normalize(base);
  bool have_acc = false;
  int n = n_strips;
  while (n > 0) {
    if (n & 1) {
      if (!have_acc) {
        acc = base;
        log_acc = log_base;
        have_acc = true;
      } else {
        matmul(K, acc, base, tmp);
        acc.swap(tmp);
        log_acc += log_base + normalize(acc);
      }
    }
    n >>= 1;
    if (n > 0) {
      matmul(K, base, base, tmp);
      base.swap(tmp);
      log_base = 2 * log_base + normalize(base);
    }
  }
  long double trace = 0.0L;
  for (int i = 0; i < K; ++i) trace += acc[i * K + i];
  return static_cast<double>(log_acc + std::log(trace));
}

DivergenceReport divergence_diagnostic(int n_strips, double mu, int K_max) {
  if (K_max < 8) throw std::domain_error("divergence diagnostic needs K_max >= 8");
  DivergenceReport rep;
  rep.threshold = std::log(2.0 * std::cos(M_PI / (n_strips + 1)));

  std::vector<double> log_z(static_cast<std::size_t>(K_max) + 1, 0.0);
  for (int K = 1; K <= K_max; ++K) log_z[K] = z_n_truncated(n_strips, mu, K);

  rep.rows.reserve(K_max);
  double prev_inc = kNegInf;
  for (int K = 1; K <= K_max; ++K) {
    DivergenceReport::Row row;
    row.K = K;
    row.log_z = log_z[K];
    if (K == 1)
      row.log_increment = log_z[1];
    else if (log_z[K] - log_z[K - 1] < 1e-17)
      row.log_increment = kNegInf;  // increment lost below precision
    else
      row.log_increment = log_diff_exp(log_z[K], log_z[K - 1]);
    row.ratio = (K >= 2 && std::isfinite(prev_inc) && std::isfinite(row.log_increment))
                    ? std::exp(row.log_increment - prev_inc)
                    : std::numeric_limits<double>::quiet_NaN();
    prev_inc = row.log_increment;
    rep.rows.push_back(row);
  }

  // Trend over the top half of the truncation window.
  int lo = K_max / 2;
  bool nondecreasing = true, decaying = true;
  double log_ratio_sum = 0.0;
  int ratio_count = 0;
  for (int K = lo + 1; K <= K_max; ++K) {
    const auto& row = rep.rows[K - 1];
    const auto& prev = rep.rows[K - 2];
    if (std::isfinite(row.log_increment) && std::isfinite(prev.log_increment)) {
      double lr = row.log_increment - prev.log_increment;
      log_ratio_sum += lr;
      ++ratio_count;
      if (lr < 0) nondecreasing = false;
      if (lr >= 0) decaying = false;
    } else {
      nondecreasing = false;  // vanished increments cannot be growing
    }
  }
  rep.measured_ratio = ratio_count > 0 ? std::exp(log_ratio_sum / ratio_count) : 0.0;
  if (nondecreasing && ratio_count > 0)
    rep.verdict = DivergenceReport::Verdict::Diverging;
  else if (decaying || ratio_count == 0)
    rep.verdict = DivergenceReport::Verdict::Converging;
  else
    rep.verdict = rep.measured_ratio >= 1.0 ? DivergenceReport::Verdict::Diverging
                                            : DivergenceReport::Verdict::Converging;
  return rep;
}

PureGibbsWidthLaw make_width_law(int n_strips, double mu, int K) {
  if (n_strips < 1 || K < 1) throw std::domain_error("need N >= 1 and K >= 1");
  PureGibbsWidthLaw law;
  law.N = n_strips;
  law.mu = mu;
  law.K = K;
  law.u = build_transfer(mu, K);

  law.powers.resize(static_cast<std::size_t>(n_strips) + 1);
  law.power_log_scale.assign(static_cast<std::size_t>(n_strips) + 1, 0.0L);
  law.powers[1] = law.u.entries;
  law.power_log_scale[1] = normalize(law.powers[1]);
  std::vector<long double> tmp;
  for (int j = 2; j <= n_strips; ++j) {
    matmul(K, law.powers[j - 1], law.powers[1], tmp);
    law.powers[j] = tmp;
    law.power_log_scale[j] =
        law.power_log_scale[j - 1] + law.power_log_scale[1] + normalize(law.powers[j]);
  }
  long double trace = 0.0L;
  for (int i = 0; i < K; ++i) trace += law.powers[n_strips][i * K + i];
  law.log_z = static_cast<double>(law.power_log_scale[n_strips] + std::log(trace));
  return law;
}

double PureGibbsWidthLaw::log_probability(const std::vector<int>& widths) const {
  if (static_cast<int>(widths.size()) != N) throw std::domain_error("width sequence length != N");
  long double s = 0.0L;
  for (int i = 0; i < N; ++i) {
    int n = widths[i], np = widths[(i + 1) % N];
    if (n < 1 || n > K || np < 1 || np > K) return -std::numeric_limits<double>::infinity();
    s += std::log(u_entry(n, np, mu));
  }
  return static_cast<double>(s) - log_z;
}

WidthSequence sample_widths(const PureGibbsWidthLaw& law, Rng& rng) {
  const int K = law.K, N = law.N;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto pick = [&](const std::vector<long double>& weight) {
    long double total = 0.0L;
    for (long double w : weight) total += w;
    long double r = static_cast<long double>(unif(rng)) * total;
    for (int i = 0; i < static_cast<int>(weight.size()); ++i) {
      r -= weight[i];
      if (r <= 0.0L) return i;
    }
    return static_cast<int>(weight.size()) - 1;
  };

  std::vector<int> w(static_cast<std::size_t>(N));
  // Marginal of n^0 is diag(U^N)/tr; conditionals close the cycle through
  // the remaining power of U. Scale factors cancel inside each pick.
  std::vector<long double> weight(static_cast<std::size_t>(K));
  for (int i = 0; i < K; ++i) weight[i] = law.powers[N][i * K + i];
  w[0] = pick(weight);
  for (int pos = 1; pos < N; ++pos) {
    int rem = N - pos;
    for (int i = 0; i < K; ++i)
      weight[i] = law.u.at(w[pos - 1] + 1, i + 1) * law.powers[rem][i * K + w[0]];
    w[pos] = pick(weight);
  }
  for (int& x : w) ++x;  // widths are 1-based
  return WidthSequence{w};
}

}  // namespace ctpotts
