#include "ctpotts/duality.hpp"

#include "json.hpp"

#include <cmath>

namespace ctpotts {

CoupledParams dual_point(const CoupledParams& params) {
  if (!(params.beta > 0)) throw std::domain_error("dual_point needs beta > 0");
  if (!(params.q >= 2)) throw std::domain_error("dual_point needs q >= 2");
  double h = std::expm1(params.beta);
  CoupledParams out;
  out.q = params.q;
  out.beta = std::log1p(params.q / h);
  if (params.side == Side::Primal) {
    out.mu = params.mu - 1.5 * std::log(h) + std::log(params.q);
    out.side = Side::Dual;
  } else {
    out.mu = params.mu - 1.5 * std::log(h) + 0.5 * std::log(params.q);
    out.side = Side::Primal;
  }
  return out;
}

double p_star(double p, double q) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("p_star needs p in (0,1)");
  if (!(q > 0.0)) throw std::domain_error("p_star needs q > 0");
  return (1.0 - p) * q / ((1.0 - p) * q + p);
}

std::string DualityReport::to_json(const std::string& label) const {
  nlohmann::json j;
  j["params"] = label;
  j["lhs"] = log_lhs_bound;
  j["rhs"] = log_rhs_bound;
  j["ratio"] = log_ratio;
  j["ok"] = ok();
  j["margin_log"] = {margin_low, margin_high};
  return j.dump();
}

namespace {

DualityReport make_report(double log_lhs, double log_ratio, double log_rhs) {
  DualityReport r;
  r.log_lhs_bound = log_lhs;
  r.log_ratio = log_ratio;
  r.log_rhs_bound = log_rhs;
  r.margin_low = log_ratio - log_lhs;
  r.margin_high = log_rhs - log_ratio;
  r.lower_ok = r.margin_low >= 0;
  r.upper_ok = r.margin_high >= 0;
  return r;
}

}  // namespace

DualityReport fk_duality_check(const CausalTriangulation& t, double p, double q,
                               const Budget& budget) {
  double ps = p_star(p, q);
  double n = t.n_triangles();
  double log_fk = fk_partition_exact(t.host(), p, q, budget);
  double log_fk_dual = fk_partition_exact(dualize(t).host(), ps, q, budget);
  double common = 1.5 * n * (std::log(p) - std::log1p(-ps));
  return make_report(common - (1.0 + n) * std::log(q), log_fk - log_fk_dual,
                     common + (1.0 - n) * std::log(q));
}

DualityReport fk_duality_check_dual_form(const CausalTriangulation& t, double p, double q,
                                         const Budget& budget) {
  double ps = p_star(p, q);
  double n = t.n_triangles();
  double log_fk = fk_partition_exact(t.host(), p, q, budget);
  double log_fk_dual = fk_partition_exact(dualize(t).host(), ps, q, budget);
  double common = 1.5 * n * (std::log(ps) - std::log1p(-p));
  return make_report(common - (1.0 + 0.5 * n) * std::log(q), log_fk_dual - log_fk,
                     common + (1.0 - 0.5 * n) * std::log(q));
}

DualityReport potts_duality_check(const CausalTriangulation& t, double beta, int q,
                                  const Budget& budget) {
  CoupledParams prm{beta, 0.0, double(q), Side::Primal};
  double beta_star = dual_point(prm).beta;
  double p = -std::expm1(-beta);
  double ps = p_star(p, q);
  double n = t.n_triangles();
  double log_zp = potts_partition_exact(t.host(), q, budget).log_evaluate(beta);
  double log_zp_dual = potts_partition_exact(dualize(t).host(), q, budget).log_evaluate(beta_star);
  double common =
      1.5 * n * (std::log(p) - std::log1p(-ps)) + 1.5 * (beta - beta_star) * n;
  return make_report(common - (1.0 + n) * std::log(double(q)), log_zp - log_zp_dual,
                     common + (1.0 - n) * std::log(double(q)));
}

double log_xi_truncated(int n_strips, int max_width, double beta, double mu, int q, Side side,
                        const Budget& budget) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  enumerate_triangulations(n_strips, max_width, [&](const CausalTriangulation& t) {
    HostGraph host = side == Side::Primal ? t.host() : dualize(t).host();
    double term =
        -mu * t.n_triangles() + potts_partition_exact(host, q, budget).log_evaluate(beta);
    terms.push_back(term);
    best = std::max(best, term);
    return true;
  });
  long double acc = 0.0L;
  for (double v : terms) acc += std::exp(static_cast<long double>(v - best));
  return best + static_cast<double>(std::log(acc));
}

AnnealedReport annealed_duality_check(int n_strips, int max_width, double beta, double mu, int q,
                                      const Budget& budget) {
  CoupledParams primal{beta, mu, double(q), Side::Primal};
  CoupledParams dual = dual_point(primal);
  AnnealedReport rep;
  rep.log_q = std::log(double(q));
  rep.log_xi = log_xi_truncated(n_strips, max_width, beta, mu, q, Side::Primal, budget);
  rep.log_xi_dual =
      log_xi_truncated(n_strips, max_width, dual.beta, dual.mu, q, Side::Dual, budget);
  rep.lower_ok = rep.log_xi >= rep.log_xi_dual - rep.log_q;
  rep.upper_ok = rep.log_xi <= rep.log_xi_dual + rep.log_q;
  rep.free_energy_gap_ok = std::abs(rep.log_xi - rep.log_xi_dual) <= rep.log_q;
  return rep;
}

}  // namespace ctpotts
