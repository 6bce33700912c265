#include "isoprofile/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "isoprofile/parallel.hpp"
#include "isoprofile/rng.hpp"

namespace isoprofile {

namespace {

struct PairRef {
  int partner;
  double weight;
};

// Fixed-cardinality annealing state over the weighted pair functional.  Each
// crossing pair contributes its weight once; energy = unit * sum.
class AnnealState {
 public:
  explicit AnnealState(const Grid& grid)
      : g_(grid), occ_(grid.ncells(), 0), nbrs_(grid.ncells()),
        unit_(grid.length_unit) {
    // Symmetric half-weight entries per slot: toggling either endpoint moves
    // half_sum_ by half the pair weight, and energy doubles it back.
    for (const auto& slot : g_.pair_slots) {
      nbrs_[slot.cell].push_back({slot.partner, 0.5 * slot.weight});
      nbrs_[slot.partner].push_back({slot.cell, 0.5 * slot.weight});
    }
  }

  const Grid& grid() const { return g_; }
  const std::vector<std::uint8_t>& occupied() const { return occ_; }
  double energy() const { return unit_ * 2.0 * half_sum_; }

  void toggle(int c) {
    for (const auto& [nb, w] : nbrs_[c]) {
      if (occ_[nb] == occ_[c])
        half_sum_ += w;  // pair starts crossing
      else
        half_sum_ -= w;
    }
    occ_[c] ^= 1;
  }

  void assign(const std::vector<int>& cells) {
    std::fill(occ_.begin(), occ_.end(), 0);
    half_sum_ = 0.0;
    for (int c : cells) toggle(c);
  }

 private:
  const Grid& g_;
  std::vector<std::uint8_t> occ_;
  std::vector<std::vector<PairRef>> nbrs_;
  double unit_;
  double half_sum_ = 0.0;  // half the weighted crossing count
};

// Index set with O(1) insert/erase/uniform-sample.
class IndexSet {
 public:
  explicit IndexSet(int capacity) : pos_(capacity, -1) {}
  bool contains(int x) const { return pos_[x] >= 0; }
  int size() const { return static_cast<int>(items_.size()); }
  void insert(int x) {
    if (pos_[x] >= 0) return;
    pos_[x] = size();
    items_.push_back(x);
  }
  void erase(int x) {
    const int p = pos_[x];
    if (p < 0) return;
    const int last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[x] = -1;
  }
  int sample(Rng& rng) const {
    return items_[rng.uniform_index(items_.size())];
  }

 private:
  std::vector<int> pos_;
  std::vector<int> items_;
};

struct MoveSets {
  IndexSet occupied, vacant, boundary, frontier;
  explicit MoveSets(int capacity)
      : occupied(capacity), vacant(capacity), boundary(capacity),
        frontier(capacity) {}
};

class Annealer {
 public:
  explicit Annealer(const Grid& grid)
      : state_(grid), axis_(axis_offsets(grid.dim)) {}

  void init(const std::vector<int>& cells) {
    state_.assign(cells);
    rebuild_sets();
  }

  double run(Rng& rng, int sweeps, double cooling, int k) {
    best_energy_ = state_.energy();
    best_occ_ = state_.occupied();
    const Grid& g = state_.grid();
    double T = 2.0 * std::pow(g.h, g.dim - 1);
    const int moves = std::max(64, k);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      for (int m = 0; m < moves; ++m) propose(rng, T);
      T *= cooling;
    }
    restore_best();
    smooth();
    return best_energy_;
  }

  const std::vector<std::uint8_t>& best() const { return best_occ_; }
  double best_energy() const { return best_energy_; }

 private:
  void propose(Rng& rng, double T) {
    int rm, ad;
    if (sets_->boundary.size() > 0 && sets_->frontier.size() > 0 &&
        rng.uniform01() < 0.9) {
      rm = sets_->boundary.sample(rng);
      ad = sets_->frontier.sample(rng);
    } else {
      rm = sets_->occupied.sample(rng);
      ad = sets_->vacant.sample(rng);
    }
    const double e0 = state_.energy();
    state_.toggle(rm);
    state_.toggle(ad);
    const double dE = state_.energy() - e0;
    if (dE <= 0.0 || rng.uniform01() < std::exp(-dE / T)) {
      commit(rm, ad);
      if (state_.energy() < best_energy_ - 1e-15) {
        best_energy_ = state_.energy();
        best_occ_ = state_.occupied();
      }
    } else {
      state_.toggle(ad);
      state_.toggle(rm);
    }
  }

  void commit(int rm, int ad) {
    for (int c : {rm, ad}) {
      update_status(c);
      for (const auto& d : axis_) {
        for (int sgn : {+1, -1}) {
          std::vector<int> dd(d);
          for (auto& x : dd) x *= sgn;
          const int nb = state_.grid().neighbor(c, dd);
          if (nb >= 0 && state_.grid().in_body[nb]) update_status(nb);
        }
      }
    }
  }

  void update_status(int c) {
    const auto& occ = state_.occupied();
    bool mixed = false;
    for (const auto& d : axis_) {
      for (int sgn : {+1, -1}) {
        std::vector<int> dd(d);
        for (auto& x : dd) x *= sgn;
        const int nb = state_.grid().neighbor(c, dd);
        if (nb >= 0 && state_.grid().in_body[nb] && occ[nb] != occ[c])
          mixed = true;
      }
    }
    if (occ[c]) {
      sets_->occupied.insert(c);
      sets_->vacant.erase(c);
      sets_->frontier.erase(c);
      if (mixed)
        sets_->boundary.insert(c);
      else
        sets_->boundary.erase(c);
    } else {
      sets_->vacant.insert(c);
      sets_->occupied.erase(c);
      sets_->boundary.erase(c);
      if (mixed)
        sets_->frontier.insert(c);
      else
        sets_->frontier.erase(c);
    }
  }

  void rebuild_sets() {
    sets_ = std::make_unique<MoveSets>(state_.grid().ncells());
    for (int c : state_.grid().in_body_cells) update_status(c);
  }

  void restore_best() {
    std::vector<int> cells;
    for (int c : state_.grid().in_body_cells)
      if (best_occ_[c]) cells.push_back(c);
    state_.assign(cells);
    rebuild_sets();
  }

  // Best-improvement swaps between boundary and frontier until stuck.
  void smooth() {
    for (int pass = 0; pass < 200; ++pass) {
      std::vector<int> bnd, frt;
      for (int c : state_.grid().in_body_cells) {
        if (sets_->boundary.contains(c)) bnd.push_back(c);
        if (sets_->frontier.contains(c)) frt.push_back(c);
      }
      double best_d = -1e-12;
      int best_rm = -1, best_ad = -1;
      const double e0 = state_.energy();
      for (int rm : bnd) {
        state_.toggle(rm);
        for (int ad : frt) {
          state_.toggle(ad);
          const double d = state_.energy() - e0;
          if (d < best_d) {
            best_d = d;
            best_rm = rm;
            best_ad = ad;
          }
          state_.toggle(ad);
        }
        state_.toggle(rm);
      }
      if (best_rm < 0) break;
      state_.toggle(best_rm);
      state_.toggle(best_ad);
      commit(best_rm, best_ad);
    }
    if (state_.energy() < best_energy_) {
      best_energy_ = state_.energy();
      best_occ_ = state_.occupied();
    }
  }

  static std::vector<std::vector<int>> axis_offsets(int dim) {
    std::vector<std::vector<int>> out;
    for (int a = 0; a < dim; ++a) {
      std::vector<int> d(dim, 0);
      d[a] = 1;
      out.push_back(d);
    }
    return out;
  }

  AnnealState state_;
  std::vector<std::vector<int>> axis_;
  std::unique_ptr<MoveSets> sets_;
  double best_energy_ = 0.0;
  std::vector<std::uint8_t> best_occ_;
};

std::vector<int> ball_seed(const Grid& g, const Vector& anchor, int k) {
  std::vector<std::pair<double, int>> order;
  order.reserve(g.in_body_cells.size());
  for (int c : g.in_body_cells)
    order.push_back({(g.cell_center(c) - anchor).norm(), c});
  std::sort(order.begin(), order.end());
  std::vector<int> cells;
  cells.reserve(k);
  for (int i = 0; i < k; ++i) cells.push_back(order[i].second);
  return cells;
}

OracleResult exhaustive_search(std::shared_ptr<const Grid> grid, int k) {
  const Grid& g = *grid;
  const int n = static_cast<int>(g.in_body_cells.size());
  if (n > 24)
    throw InvalidArgument("exhaustive search limited to 24 in-body cells");
  std::vector<int> pos(g.ncells(), -1);
  for (int i = 0; i < n; ++i) pos[g.in_body_cells[i]] = i;
  // Group slots by exact weight so popcount masks apply per class.
  std::vector<double> weights;
  std::vector<std::vector<std::uint32_t>> masks;
  for (const auto& slot : g.pair_slots) {
    int cls = -1;
    for (std::size_t w = 0; w < weights.size(); ++w)
      if (weights[w] == slot.weight) cls = static_cast<int>(w);
    if (cls < 0) {
      weights.push_back(slot.weight);
      masks.emplace_back(n, 0);
      cls = static_cast<int>(weights.size()) - 1;
    }
    const int i = pos[slot.cell], j = pos[slot.partner];
    masks[cls][i] |= 1u << j;
    masks[cls][j] |= 1u << i;
  }
  const int nfam = static_cast<int>(weights.size());

  std::uint32_t subset = (1u << k) - 1;
  const std::uint32_t limit = 1u << n;
  double best_e = std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = subset;
  while (subset < limit) {
    double e = 0.0;
    for (int w = 0; w < nfam; ++w) {
      long crossings = 0;
      std::uint32_t bits = subset;
      while (bits) {
        const int i = std::countr_zero(bits);
        bits &= bits - 1;
        crossings += std::popcount(masks[w][i] & ~subset);
      }
      e += weights[w] * crossings;
    }
    e *= g.length_unit;
    if (e < best_e) {
      best_e = e;
      best_mask = subset;
    }
    // Gosper's hack: next subset with the same popcount.
    const std::uint32_t c = subset & -subset;
    const std::uint32_t r = subset + c;
    if (r >= limit || r == 0) break;
    subset = (((r ^ subset) >> 2) / c) | r;
  }
  std::vector<int> cells;
  for (int i = 0; i < n; ++i)
    if (best_mask & (1u << i)) cells.push_back(g.in_body_cells[i]);
  OracleResult res{make_region(grid, cells), best_e, 0.0, 0.0};
  res.face_perimeter = face_count_perimeter(res.region);
  res.uncertainty = g.h * res.perimeter;
  return res;
}

}  // namespace

OracleResult grid_oracle_on_grid(std::shared_ptr<const Grid> grid,
                                 double v_target, OracleStrategy strategy,
                                 const AnnealParams& params) {
  const Grid& g = *grid;
  const int n = static_cast<int>(g.in_body_cells.size());
  const int k =
      static_cast<int>(std::llround(v_target / g.cell_volume()));
  if (k < 1 || k >= n)
    throw ResolutionTooCoarse("target cell count " + std::to_string(k) +
                              " of " + std::to_string(n));
  if (strategy == OracleStrategy::Exhaustive)
    return exhaustive_search(grid, k);

  int restarts = params.restarts;
  if (n <= 24) restarts = std::max(restarts, 16);  // tiny instances: be sure

  std::vector<double> energies(restarts,
                               std::numeric_limits<double>::infinity());
  std::vector<std::vector<std::uint8_t>> results(restarts);
  parallel_for_index(restarts, params.workers, [&](std::size_t r) {
    Rng rng(derive_seed(params.seed, r));
    // Anchor: a random in-body cell center, biased toward the discrete
    // boundary of the body so seeds start attached to the wall.
    Vector anchor;
    if (rng.uniform01() < 0.75) {
      std::vector<int> wall;
      for (int c : g.in_body_cells) {
        bool edge = false;
        for (int a = 0; a < g.dim; ++a) {
          for (int sgn : {+1, -1}) {
            std::vector<int> d(g.dim, 0);
            d[a] = sgn;
            const int nb = g.neighbor(c, d);
            if (nb < 0 || !g.in_body[nb]) edge = true;
          }
        }
        if (edge) wall.push_back(c);
      }
      anchor = g.cell_center(wall[rng.uniform_index(wall.size())]);
    } else {
      anchor = g.cell_center(
          g.in_body_cells[rng.uniform_index(g.in_body_cells.size())]);
    }
    Annealer annealer(g);
    annealer.init(ball_seed(g, anchor, k));
    energies[r] = annealer.run(rng, params.sweeps, params.cooling, k);
    results[r] = annealer.best();
  });
  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (energies[r] < energies[best]) best = r;
  std::vector<int> cells;
  for (int c : g.in_body_cells)
    if (results[best][c]) cells.push_back(c);
  OracleResult res{make_region(grid, cells), energies[best], 0.0, 0.0};
  res.face_perimeter = face_count_perimeter(res.region);
  res.uncertainty = g.h * res.perimeter;
  return res;
}

OracleResult grid_oracle(const ConvexBody& body, double v_target,
                         int resolution, OracleStrategy strategy,
                         const AnnealParams& params) {
  return grid_oracle_on_grid(make_grid(body, resolution), v_target, strategy,
                             params);
}

}  // namespace isoprofile
