#include "ctpotts/spin.hpp"

#include "json.hpp"

#include <cmath>

namespace ctpotts {

void SpinConfig::validate() const {
  if (q < 2) throw std::domain_error("q must be >= 2");
  for (auto v : values)
    if (v < 1 || v > q) throw StructureError("spin value out of range");
}

int satisfied_edges(const HostGraph& g, const SpinConfig& s) {
  int m = 0;
  for (const auto& e : g.edges)
    if (s.values[e.tail] == s.values[e.head]) ++m;
  return m;
}

double PartitionPolynomial::log_evaluate(double beta) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [m, c] : coeffs)
    best = std::max(best, beta * m + static_cast<double>(std::log(c.convert_to<long double>())));
  long double acc = 0.0L;
  for (const auto& [m, c] : coeffs) {
    long double lc = std::log(c.convert_to<long double>());
    acc += std::exp(static_cast<long double>(beta * m) + lc - best);
  }
  return best + static_cast<double>(std::log(acc));
}

BigInt PartitionPolynomial::coefficient_sum() const {
  BigInt s = 0;
  for (const auto& [m, c] : coeffs) s += c;
  return s;
}

std::string PartitionPolynomial::to_json() const {
  nlohmann::json j;
  j["q"] = q;
  j["E"] = n_edges;
  j["V"] = n_vertices;
  nlohmann::json cs = nlohmann::json::object();
  for (const auto& [m, c] : coeffs) cs[std::to_string(m)] = c.str();
  j["coeffs"] = cs;
  return j.dump();
}

PartitionPolynomial PartitionPolynomial::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PartitionPolynomial p;
  p.q = j.at("q").get<int>();
  p.n_edges = j.at("E").get<int>();
  p.n_vertices = j.at("V").get<int>();
  for (const auto& [k, v] : j.at("coeffs").items())
    p.coeffs[std::stoi(k)] = BigInt(v.get<std::string>());
  return p;
}

PartitionPolynomial potts_partition_exact(const HostGraph& g, int q, const Budget& budget) {
  if (q < 2) throw std::domain_error("q must be >= 2");
  const int V = g.n_vertices;
  double configs = std::pow(double(q), V);
  if (configs > static_cast<double>(budget.max_spin_configs))
    throw ResourceError("potts_partition_exact: q^|V| exceeds the enumeration budget");

  PartitionPolynomial poly;
  poly.q = q;
  poly.n_edges = g.n_edges();
  poly.n_vertices = V;

  SpinConfig s;
  s.q = q;
  s.values.assign(static_cast<std::size_t>(V), 1);
  std::vector<std::int64_t> tally(static_cast<std::size_t>(g.n_edges()) + 1, 0);
  for (;;) {
    tally[satisfied_edges(g, s)]++;
    int i = 0;
    while (i < V && s.values[i] == q) s.values[i++] = 1;
    if (i == V) break;
    s.values[i]++;
  }
  for (int m = 0; m <= g.n_edges(); ++m)
    if (tally[m] > 0) poly.coeffs[m] = tally[m];
  return poly;
}

FkTable fk_cluster_table(const HostGraph& g, const Budget& budget) {
  const int E = g.n_edges();
  if (E > budget.max_fk_edges)
    throw ResourceError("fk_cluster_table: |E| exceeds the 2^|E| enumeration budget");
  FkTable table;
  table.n_edges = E;
  table.n_vertices = g.n_vertices;
  table.count.assign(static_cast<std::size_t>(E) + 1,
                     std::vector<std::uint64_t>(static_cast<std::size_t>(g.n_vertices) + 1, 0));
  ClusterScratch scratch;
  const std::uint64_t full = (E == 0) ? 0 : ((1ull << E) - 1);
  for (std::uint64_t w = 0;; ++w) {
    int o = __builtin_popcountll(w);
    int k = count_clusters(g, w, scratch);
    table.count[o][k]++;
    if (w == full) break;
  }
  return table;
}

double FkTable::log_z_fk(double p, double q) const {
  if (p < 0.0 || p > 1.0) throw std::domain_error("p must lie in [0,1]");
  if (q <= 0.0) throw std::domain_error("q must be positive");
  // At most (E+1)(V+1) integer-weighted terms; stabilized by the max term.
  double lp = p > 0 ? std::log(p) : 0.0, lc = p < 1 ? std::log1p(-p) : 0.0;
  double best = -std::numeric_limits<double>::infinity();
  auto term_log = [&](int o, int k) {
    if (p == 0.0 && o > 0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0 && o < n_edges) return -std::numeric_limits<double>::infinity();
    return o * lp + (n_edges - o) * lc + k * std::log(q);
  };
  for (int o = 0; o <= n_edges; ++o)
    for (int k = 1; k <= n_vertices; ++k)
      if (count[o][k]) best = std::max(best, term_log(o, k) + std::log(double(count[o][k])));
  long double acc = 0.0L;
  for (int o = 0; o <= n_edges; ++o)
    for (int k = 1; k <= n_vertices; ++k)
      if (count[o][k]) {
        double tl = term_log(o, k);
        if (std::isfinite(tl))
          acc += count[o][k] * std::exp(static_cast<long double>(tl - best));
      }
  return best + static_cast<double>(std::log(acc));
}

double fk_partition_exact(const HostGraph& g, double p, double q, const Budget& budget) {
  return fk_cluster_table(g, budget).log_z_fk(p, q);
}

double edwards_sokal_check(const HostGraph& g, int q, const std::vector<double>& beta_grid,
                           const Budget& budget) {
  PartitionPolynomial zp = potts_partition_exact(g, q, budget);
  FkTable table = fk_cluster_table(g, budget);
  double worst = 0.0;
  for (double beta : beta_grid) {
    double p = 1.0 - std::exp(-beta);
    double log_fk = table.log_z_fk(p, double(q));
    double log_es = -beta * g.n_edges() + zp.log_evaluate(beta);
    worst = std::max(worst, std::abs(std::expm1(log_es - log_fk)));
  }
  return worst;
}

std::pair<SpinConfig, BondConfig> sample_es_coupled(const HostGraph& g, int q, double beta,
                                                    Rng& rng, const Budget& budget) {
  const int V = g.n_vertices;
  double configs = std::pow(double(q), V);
  if (configs > static_cast<double>(budget.max_spin_configs))
    throw ResourceError("sample_es_coupled: q^|V| exceeds the enumeration budget");

  // Exact Potts draw by inverse transform over the enumerated weights.
  SpinConfig s;
  s.q = q;
  s.values.assign(static_cast<std::size_t>(V), 1);
  std::vector<double> weight;
  weight.reserve(static_cast<std::size_t>(configs));
  for (;;) {
    weight.push_back(std::exp(beta * satisfied_edges(g, s)));
    int i = 0;
    while (i < V && s.values[i] == q) s.values[i++] = 1;
    if (i == V) break;
    s.values[i]++;
  }
  double total = 0;
  for (double w : weight) total += w;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = unif(rng) * total;
  std::size_t idx = 0;
  for (; idx + 1 < weight.size(); ++idx) {
    r -= weight[idx];
    if (r <= 0) break;
  }
  s.values.assign(static_cast<std::size_t>(V), 1);
  for (std::size_t rem = idx, i = 0; i < static_cast<std::size_t>(V); ++i) {
    s.values[i] = static_cast<std::uint8_t>(1 + rem % q);
    rem /= q;
  }

  // Bonds: open satisfied edges with probability p = 1 - e^{-beta}.
  double p = 1.0 - std::exp(-beta);
  BondConfig w;
  w.n_edges = g.n_edges();
  for (int e = 0; e < g.n_edges(); ++e)
    if (s.values[g.edges[e].tail] == s.values[g.edges[e].head] && unif(rng) < p)
      w.open |= (1ull << e);
  return {s, w};
}

}  // namespace ctpotts
