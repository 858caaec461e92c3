#include "ctpotts/bounds.hpp"

#include "ctpotts/transfer.hpp"

#include "json.hpp"

#include <cmath>
#include <sstream>

namespace ctpotts {

double small_beta_constant(double q, Side side) {
  return side == Side::Primal ? std::log(2.0 * std::sqrt(q)) : std::log(2.0 * q);
}

double no_gibbs_boundary(double beta, double q, Side side) {
  if (!(beta > 0) || !(q >= 2)) throw std::domain_error("need beta > 0 and q >= 2");
  return std::max(small_beta_constant(q, side), 1.5 * std::log(std::expm1(beta)) + std::log(2.0));
}

double subcritical_boundary(double beta, double q, Side side) {
  if (!(beta > 0) || !(q >= 2)) throw std::domain_error("need beta > 0 and q >= 2");
  double qc = std::cbrt(q * q);  // q^{2/3}
  if (side == Side::Primal) {
    double h = std::expm1(beta);
    return 1.5 * std::log(q + h) + std::log(2.0) - std::log(q) +
           1.5 * std::log1p((qc - 1.0) * h / (q + h));
  }
  return 1.5 * beta + std::log(2.0) + 1.5 * std::log1p((qc - 1.0) * std::exp(-beta));
}

RegionVerdict classify_point(double beta, double mu, double q, Side side) {
  RegionVerdict v;
  v.beta = beta;
  v.mu = mu;
  v.q = q;
  v.side = side;
  v.in_no_gibbs_region = mu < no_gibbs_boundary(beta, q, side);
  v.in_subcritical_region = mu > subcritical_boundary(beta, q, side);
  v.band = !v.in_no_gibbs_region && !v.in_subcritical_region;
  if (v.in_no_gibbs_region && v.in_subcritical_region)
    throw StructureError("region curves cross: point classified as both");
  return v;
}

std::string RegionVerdict::to_json() const {
  nlohmann::json j;
  j["beta"] = beta;
  j["mu"] = mu;
  j["q"] = q;
  j["side"] = side == Side::Primal ? "primal" : "dual";
  j["in_no_gibbs_region"] = in_no_gibbs_region;
  j["in_subcritical_region"] = in_subcritical_region;
  j["band"] = band;
  return j.dump();
}

std::pair<double, double> region_map_phi(double beta, double mu, double q) {
  CoupledParams out = dual_point(CoupledParams{beta, mu, q, Side::Primal});
  return {out.beta, out.mu};
}

std::pair<double, double> lower_bounds_zp(int n_triangles, double beta, double q) {
  double low_t = std::log(q) + 1.5 * n_triangles * std::log(std::expm1(beta));
  double high_t = 0.5 * n_triangles * std::log(q);
  return {low_t, high_t};
}

double high_t_upper_bound(int n_edges, int n_vertices, double beta, double q) {
  double h = std::expm1(beta);
  double u = (std::cbrt(q * q) - 1.0) * h / (q + h);
  return n_edges * std::log((q + h) / q) + (n_vertices + 2.0 / 3.0) * std::log(q) +
         n_edges * std::log1p(u);
}

AnnealedBound annealed_lower_bound(int n_strips, double beta, double mu, double q, int K) {
  double shift_low_t = mu - 1.5 * std::log(std::expm1(beta));
  double shift_high_t = mu - 0.5 * std::log(q);
  AnnealedBound b;
  b.log_value = std::max(std::log(q) + z_n_truncated(n_strips, shift_low_t, K),
                         z_n_truncated(n_strips, shift_high_t, K));
  b.shifted_mu_below_ln2 =
      std::min(shift_low_t, shift_high_t) <= std::log(2.0);
  return b;
}

AnnealedBound annealed_upper_bound(int n_strips, double beta, double mu, double q, int K) {
  double h = std::expm1(beta);
  double u = (std::cbrt(q * q) - 1.0) * h / (q + h);
  double mu_tilde =
      mu - 1.5 * std::log((q + h) / q) - 0.5 * std::log(q) - 1.5 * std::log1p(u);
  AnnealedBound b;
  b.log_value = (2.0 / 3.0) * std::log(q) + z_n_truncated(n_strips, mu_tilde, K);
  b.shifted_mu_below_ln2 = mu_tilde <= std::log(2.0);
  return b;
}

std::pair<double, double> free_energy_sandwich_q2(double beta_star, double mu_star) {
  double phi_inf = no_gibbs_boundary(beta_star, 2.0, Side::Dual);
  double phi_sup = subcritical_boundary(beta_star, 2.0, Side::Dual);
  double lo = std::log(lambda_closed_form(mu_star - phi_inf + std::log(2.0)));
  double hi = std::log(lambda_closed_form(mu_star - phi_sup + std::log(2.0)));
  return {lo, hi};
}

CurveTable curve_table(double q, Side side, const std::vector<double>& beta_grid) {
  for (std::size_t i = 0; i < beta_grid.size(); ++i) {
    if (!(beta_grid[i] > 0)) throw std::domain_error("beta grid must be positive");
    if (i > 0 && beta_grid[i] <= beta_grid[i - 1])
      throw std::domain_error("beta grid must be strictly increasing");
  }
  CurveTable table;
  table.q = q;
  table.side = side;
  table.rows.reserve(beta_grid.size());
  for (double beta : beta_grid)
    table.rows.push_back({beta, no_gibbs_boundary(beta, q, side),
                          subcritical_boundary(beta, q, side),
                          1.5 * beta + std::log(2.0), small_beta_constant(q, side)});
  return table;
}

std::string CurveTable::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "beta,lower,upper,asymptote,small_beta_const\n";
  for (const auto& r : rows)
    os << r.beta << ',' << r.lower << ',' << r.upper << ',' << r.asymptote << ','
       << r.small_beta_const << '\n';
  return os.str();
}

CircuitCheck circuit_bound_check(const CausalTriangulation& t, int k_max) {
  const int E = t.n_edges();
  if (E > 24) throw ResourceError("circuit_bound_check: |E| exceeds the subset budget");
  CircuitCheck result;
  std::vector<int> parent(t.n_vertices());
  const std::uint64_t full = (1ull << E) - 1;
  for (std::uint64_t s = 0;; ++s) {
    int k = __builtin_popcountll(s);
    if (k <= k_max && k >= 1) {
      ++result.subsets_checked;
      // xi = circuit rank: edges whose insertion closes a cycle.
      for (int v = 0; v < t.n_vertices(); ++v) parent[v] = v;
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      int xi = 0;
      for (int e = 0; e < E; ++e) {
        if (!((s >> e) & 1u)) continue;
        int a = find(t.edges[e].tail), b = find(t.edges[e].head);
        if (a == b)
          ++xi;
        else
          parent[a] = b;
      }
      if (3 * xi > 2 * (k + 1) && result.violations.size() < 32)
        result.violations.push_back({s, k, xi});
    }
    if (s == full) break;
  }
  return result;
}

}  // namespace ctpotts
