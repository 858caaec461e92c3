#include "ctpotts/mc.hpp"

#include "ctpotts/bounds.hpp"
#include "ctpotts/transfer.hpp"

#include "json.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace ctpotts {

namespace {

void rebuild(ChainState& state) {
  state.t = build_graph(state.strips);
  state.host = state.t.host();
}

void check_cache(const ChainState& state) {
  if (state.steps % 10000 != 0 || state.steps == 0) return;
  if (satisfied_edges(state.host, state.spins) != state.satisfied)
    throw StructureError("chain energy cache out of sync");
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

double ChainState::accept_rate() const {
  std::int64_t proposed = proposed_inserts + proposed_deletes;
  if (proposed == 0) return 0.0;
  return double(accepted_inserts + accepted_deletes) / double(proposed);
}

ChainState make_chain(int n_strips, int q) {
  if (n_strips < 1) throw std::domain_error("need N >= 1");
  if (q < 2) throw std::domain_error("need q >= 2");
  ChainState s;
  s.strips.assign(static_cast<std::size_t>(n_strips), enumerate_strips(1, 1)[0]);
  rebuild(s);
  s.spins.q = q;
  s.spins.values.assign(static_cast<std::size_t>(s.t.n_vertices()), 1);
  s.satisfied = satisfied_edges(s.host, s.spins);
  s.bonds.assign(static_cast<std::size_t>(s.host.n_edges()), 0);
  s.last_cluster_count = s.t.n_vertices();
  return s;
}

void sw_sweep(ChainState& state, double beta, int q, Rng& rng) {
  const int E = state.host.n_edges();
  const int V = state.host.n_vertices;
  const double p = -std::expm1(-beta);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  state.bonds.assign(static_cast<std::size_t>(E), 0);
  std::vector<int> parent(static_cast<std::size_t>(V));
  std::iota(parent.begin(), parent.end(), 0);
  int clusters = V;
  for (int e = 0; e < E; ++e) {
    const auto& ed = state.host.edges[e];
    if (state.spins.values[ed.tail] != state.spins.values[ed.head]) continue;
    if (unif(rng) >= p) continue;
    state.bonds[e] = 1;
    int a = find_root(parent, ed.tail), b = find_root(parent, ed.head);
    if (a != b) {
      parent[a] = b;
      --clusters;
    }
  }
  state.last_cluster_count = clusters;

  std::uniform_int_distribution<int> color(1, q);
  std::vector<std::uint8_t> root_color(static_cast<std::size_t>(V), 0);
  for (int v = 0; v < V; ++v) {
    int r = find_root(parent, v);
    if (!root_color[r]) root_color[r] = static_cast<std::uint8_t>(color(rng));
    state.spins.values[v] = root_color[r];
  }
  state.satisfied = satisfied_edges(state.host, state.spins);
  ++state.steps;
  check_cache(state);
}

bool triangulation_move(ChainState& state, double beta, double mu, int q, int max_width,
                        Rng& rng) {
  const int N = state.n_strips();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> pick_slice(0, N - 1);
  const bool insert = unif(rng) < 0.5;
  const int slice = pick_slice(rng);
  const int prev = (slice + N - 1) % N;
  Strip& sp = state.strips[prev];   // gains/loses a down-triangle
  Strip& sc = state.strips[slice];  // gains/loses an up-triangle
  const int n_i = sc.lower_width;
  ++state.steps;
  check_cache(state);

  // Spins on slices follow vertex ids; an inserted vertex goes to the end
  // of its slice block and a deleted slice vertex is the block's last
  // (the word slots, not vertex positions, carry the proposal entropy).
  const int slice_base = state.t.vertex_offset[slice];

  if (insert) {
    ++state.proposed_inserts;
    if (n_i + 1 > max_width) {
      ++state.rejected_no_move;
      return false;
    }
    std::uniform_int_distribution<int> slot_prev(0, sp.length() - 1);
    std::uniform_int_distribution<int> slot_cur(0, sc.length() - 1);
    std::uniform_int_distribution<int> color(1, q);
    const int jd = slot_prev(rng), ju = slot_cur(rng);
    const std::uint8_t new_spin = static_cast<std::uint8_t>(color(rng));

    std::vector<Strip> trial = state.strips;
    trial[prev].word.insert(trial[prev].word.begin() + jd + 1, Tri::Down);
    trial[prev].upper_width++;
    trial[slice].word.insert(trial[slice].word.begin() + ju + 1, Tri::Up);
    trial[slice].lower_width++;

    CausalTriangulation t_new = build_graph(trial);
    SpinConfig spins_new;
    spins_new.q = q;
    spins_new.values.reserve(state.spins.values.size() + 1);
    for (int v = 0; v < state.t.n_vertices(); ++v) {
      if (v == slice_base + n_i) spins_new.values.push_back(new_spin);
      spins_new.values.insert(spins_new.values.end(), 1, state.spins.values[v]);
    }
    if (slice_base + n_i == state.t.n_vertices()) spins_new.values.push_back(new_spin);
    HostGraph host_new = t_new.host();
    int sat_new = satisfied_edges(host_new, spins_new);

    // Proposal bookkeeping: forward picks two word slots and a color,
    // backward picks one of n_i+1 down-triangles and one of n_i non-marked
    // up-triangles.
    double log_ratio = -2.0 * mu + beta * (sat_new - state.satisfied) + std::log(double(q)) +
                       std::log(double(sp.length()) * double(sc.length())) -
                       std::log(double(n_i + 1) * double(n_i));
    if (std::log(unif(rng)) >= log_ratio) return false;

    state.strips = std::move(trial);
    state.t = std::move(t_new);
    state.host = std::move(host_new);
    state.spins = std::move(spins_new);
    state.satisfied = sat_new;
    ++state.accepted_inserts;
    return true;
  }

  ++state.proposed_deletes;
  if (n_i < 2) {
    ++state.rejected_no_move;
    return false;
  }
  // Pick the r-th down-triangle of the strip below and the r'-th non-marked
  // up-triangle of the strip above.
  std::uniform_int_distribution<int> pick_d(0, n_i - 1);
  std::uniform_int_distribution<int> pick_u(0, n_i - 2);
  int rd = pick_d(rng), ru = pick_u(rng);
  std::vector<Strip> trial = state.strips;
  {
    int seen = 0;
    for (std::size_t j = 0; j < trial[prev].word.size(); ++j)
      if (trial[prev].word[j] == Tri::Down && seen++ == rd) {
        trial[prev].word.erase(trial[prev].word.begin() + j);
        break;
      }
    trial[prev].upper_width--;
    seen = 0;
    for (std::size_t j = 1; j < trial[slice].word.size(); ++j)
      if (trial[slice].word[j] == Tri::Up && seen++ == ru) {
        trial[slice].word.erase(trial[slice].word.begin() + j);
        break;
      }
    trial[slice].lower_width--;
  }

  CausalTriangulation t_new = build_graph(trial);
  SpinConfig spins_new;
  spins_new.q = q;
  for (int v = 0; v < state.t.n_vertices(); ++v)
    if (v != slice_base + n_i - 1) spins_new.values.push_back(state.spins.values[v]);
  HostGraph host_new = t_new.host();
  int sat_new = satisfied_edges(host_new, spins_new);

  double log_ratio = 2.0 * mu + beta * (sat_new - state.satisfied) - std::log(double(q)) +
                     std::log(double(n_i) * double(n_i - 1)) -
                     std::log(double(trial[prev].length()) * double(trial[slice].length()));
  if (std::log(unif(rng)) >= log_ratio) return false;

  state.strips = std::move(trial);
  state.t = std::move(t_new);
  state.host = std::move(host_new);
  state.spins = std::move(spins_new);
  state.satisfied = sat_new;
  ++state.accepted_deletes;
  return true;
}

std::string ChainState::to_json() const {
  nlohmann::json j;
  j["version"] = 1;
  j["q"] = spins.q;
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& s : strips)
    ws.push_back({{"n", s.lower_width},
                  {"np", s.upper_width},
                  {"word", word_to_string(s.word)},
                  {"mark", s.mark}});
  j["strips"] = ws;
  j["spins"] = spins.values;
  j["steps"] = steps;
  j["proposed_inserts"] = proposed_inserts;
  j["accepted_inserts"] = accepted_inserts;
  j["proposed_deletes"] = proposed_deletes;
  j["accepted_deletes"] = accepted_deletes;
  j["rejected_no_move"] = rejected_no_move;
  return j.dump();
}

ChainState ChainState::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("version").get<int>() != 1) throw StructureError("unknown checkpoint version");
  ChainState s;
  for (const auto& e : j.at("strips")) {
    Strip st;
    st.lower_width = e.at("n").get<int>();
    st.upper_width = e.at("np").get<int>();
    st.word = word_from_string(e.at("word").get<std::string>());
    st.mark = e.at("mark").get<int>();
    s.strips.push_back(st);
  }
  rebuild(s);
  s.spins.q = j.at("q").get<int>();
  s.spins.values = j.at("spins").get<std::vector<std::uint8_t>>();
  s.spins.validate();
  if (static_cast<int>(s.spins.values.size()) != s.t.n_vertices())
    throw StructureError("checkpoint spin count does not match the triangulation");
  s.satisfied = satisfied_edges(s.host, s.spins);
  s.steps = j.at("steps").get<std::int64_t>();
  s.proposed_inserts = j.at("proposed_inserts").get<std::int64_t>();
  s.accepted_inserts = j.at("accepted_inserts").get<std::int64_t>();
  s.proposed_deletes = j.at("proposed_deletes").get<std::int64_t>();
  s.accepted_deletes = j.at("accepted_deletes").get<std::int64_t>();
  s.rejected_no_move = j.at("rejected_no_move").get<std::int64_t>();
  s.bonds.assign(static_cast<std::size_t>(s.host.n_edges()), 0);
  s.last_cluster_count = s.t.n_vertices();
  return s;
}

FreeEnergyEstimate estimate_free_energy(int n_strips, double beta, double mu, int q,
                                        int max_width, std::int64_t sweeps_per_node,
                                        std::uint64_t seed) {
  if (beta < 0) throw std::domain_error("need beta >= 0");
  if (beta > 0) {
    auto verdict = classify_point(beta, mu, double(q), Side::Primal);
    if (verdict.in_no_gibbs_region)
      throw std::domain_error(
          "estimate_free_energy: point is in the no-Gibbs region (" + verdict.to_json() + ")");
  }

  FreeEnergyEstimate est;
  est.anchor = z_n_truncated(n_strips, mu - 0.5 * std::log(double(q)), max_width);
  est.value = est.anchor;
  est.std_error = 0;
  if (beta == 0) return est;

  // 16-point Gauss-Legendre nodes/weights on [-1, 1].
  static const double kNodes[8] = {0.0950125098376374, 0.2816035507792589,
                                   0.4580167776572274, 0.6178762444026438,
                                   0.7554044083550030, 0.8656312023878318,
                                   0.9445750230732326, 0.9894009349916499};
  static const double kWeights[8] = {0.1894506104550685, 0.1826034150449236,
                                     0.1691565193950025, 0.1495959888165767,
                                     0.1246289712555339, 0.0951585116824928,
                                     0.0622535239386479, 0.0271524594117541};

  double var_total = 0;
  Rng seeder(seed);
  for (int half = 0; half < 2; ++half)
    for (int i = 0; i < 8; ++i) {
      double x = half == 0 ? -kNodes[i] : kNodes[i];
      double beta_node = 0.5 * beta * (x + 1.0);
      double weight = 0.5 * beta * kWeights[i];

      Rng rng(seeder());
      ChainState chain = make_chain(n_strips, q);
      std::int64_t burn = std::max<std::int64_t>(200, sweeps_per_node / 10);
      for (std::int64_t s = 0; s < burn; ++s) {
        triangulation_move(chain, beta_node, mu, q, max_width, rng);
        sw_sweep(chain, beta_node, q, rng);
      }
      // Block means for a jackknife-style error on the node average.
      const int n_blocks = 20;
      std::int64_t per_block = std::max<std::int64_t>(1, sweeps_per_node / n_blocks);
      std::vector<double> block_mean;
      for (int b = 0; b < n_blocks; ++b) {
        double acc = 0;
        for (std::int64_t s = 0; s < per_block; ++s) {
          triangulation_move(chain, beta_node, mu, q, max_width, rng);
          sw_sweep(chain, beta_node, q, rng);
          acc += chain.satisfied;
        }
        block_mean.push_back(acc / double(per_block));
      }
      double mean = 0;
      for (double m : block_mean) mean += m;
      mean /= n_blocks;
      double var = 0;
      for (double m : block_mean) var += (m - mean) * (m - mean);
      var /= (n_blocks - 1.0) * n_blocks;
      est.value += weight * mean;
      var_total += weight * weight * var;
    }
  est.std_error = std::sqrt(var_total);
  return est;
}

}  // namespace ctpotts
