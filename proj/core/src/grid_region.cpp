#include "isoprofile/grid_region.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace isoprofile {

namespace {

// Pair families and weights for the 2D boundary length estimate.  The weights
// solve for exact measurement of straight interfaces at angles 0, atan(1/2)
// and 45 degrees; the remaining anisotropy is +-1.35% after the global
// calibration divisor.
const double kAxisW = 0.23606797749979;    // sqrt(5) - 2
const double kDiagW = 0.1147476339401469;
const double kKnightW = 0.08907279243665275;
const double kCalibration = 1.0136500618365;

struct SignedOffset {
  std::vector<int> delta;
  int family;
};

std::vector<SignedOffset> signed_offsets(int dim) {
  std::vector<SignedOffset> out;
  if (dim == 2) {
    auto add = [&](int dx, int dy, int fam) {
      out.push_back({{dx, dy}, fam});
    };
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1},
                          std::pair{0, -1}})
      add(dx, dy, 0);
    for (auto [dx, dy] : {std::pair{1, 1}, std::pair{-1, -1}, std::pair{1, -1},
                          std::pair{-1, 1}})
      add(dx, dy, 1);
    for (auto [dx, dy] :
         {std::pair{2, 1}, std::pair{-2, -1}, std::pair{1, 2},
          std::pair{-1, -2}, std::pair{2, -1}, std::pair{-2, 1},
          std::pair{1, -2}, std::pair{-1, 2}})
      add(dx, dy, 2);
  } else {
    for (int a = 0; a < dim; ++a) {
      for (int sgn : {+1, -1}) {
        std::vector<int> d(dim, 0);
        d[a] = sgn;
        out.push_back({d, 0});
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> axis_offsets(int dim) {
  std::vector<std::vector<int>> out;
  for (int a = 0; a < dim; ++a) {
    std::vector<int> d(dim, 0);
    d[a] = 1;
    out.push_back(d);
  }
  return out;
}

// Mirror an out-of-body point across the nearest wall.
Vector reflect_across_wall(const ConvexBody& body, const Vector& q) {
  if (body.kind() == BodyKind::Ball) {
    const Vector r = q - body.ball_center();
    const double len = r.norm();
    if (len <= 0.0) return q;
    const Vector on_wall = body.ball_center() + (body.ball_radius() / len) * r;
    return 2.0 * on_wall - q;
  }
  double worst = -std::numeric_limits<double>::infinity();
  const Halfspace* wall = nullptr;
  for (const auto& h : body.halfspaces()) {
    const double violation = h.normal.dot(q) - h.offset;
    if (violation > worst) {
      worst = violation;
      wall = &h;
    }
  }
  if (!wall || worst <= 0.0) return q;
  return q - 2.0 * worst * wall->normal;
}

}  // namespace

std::shared_ptr<const Grid> make_grid(const ConvexBody& body, int resolution) {
  if (resolution < 2) throw InvalidArgument("grid resolution must be >= 2");
  auto grid = std::make_shared<Grid>();
  grid->dim = body.dim();
  grid->resolution = resolution;
  Vector lo, hi;
  body.bounding_box(lo, hi);
  grid->origin = lo;
  double extent = 0.0;
  for (int a = 0; a < grid->dim; ++a) extent = std::max(extent, hi[a] - lo[a]);
  grid->h = extent / resolution;
  grid->dims.resize(grid->dim);
  for (int a = 0; a < grid->dim; ++a) {
    grid->dims[a] = std::max(
        1, static_cast<int>(std::ceil((hi[a] - lo[a]) / grid->h - 1e-12)));
  }
  const int n = grid->ncells();
  grid->in_body.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (body.contains(grid->cell_center(i))) {
      grid->in_body[i] = 1;
      grid->in_body_cells.push_back(i);
    }
  }
  if (grid->in_body_cells.empty())
    throw ResolutionTooCoarse("no cell center falls inside the body");

  if (grid->dim == 2) {
    grid->length_unit = grid->h / kCalibration;
  } else {
    grid->length_unit = std::pow(grid->h, grid->dim - 1);
  }
  const double fam_w[3] = {kAxisW, kDiagW, kKnightW};
  const auto offsets = signed_offsets(grid->dim);
  std::map<std::pair<int, int>, double> merged;
  for (int c : grid->in_body_cells) {
    const auto cc = grid->coords(c);
    for (const auto& off : offsets) {
      const double w = grid->dim == 2 ? fam_w[off.family] : 1.0;
      bool in_grid = true;
      auto nc = cc;
      for (int a = 0; a < grid->dim; ++a) {
        nc[a] += off.delta[a];
        if (nc[a] < 0 || nc[a] >= grid->dims[a]) in_grid = false;
      }
      int partner = -1;
      if (in_grid && grid->in_body[grid->flat(nc)]) {
        partner = grid->flat(nc);
        if (partner < c) continue;  // real pairs once, from the smaller index
      } else {
        // Reflect the endpoint across the wall; keep the slot when the
        // mirror lands in a different in-body cell.
        Vector q(grid->dim);
        for (int a = 0; a < grid->dim; ++a)
          q[a] = grid->origin[a] + (cc[a] + off.delta[a] + 0.5) * grid->h;
        const Vector r = reflect_across_wall(body, q);
        bool ok = body.contains(r);
        std::vector<int> rc(grid->dim);
        for (int a = 0; a < grid->dim && ok; ++a) {
          rc[a] = static_cast<int>(
              std::floor((r[a] - grid->origin[a]) / grid->h));
          if (rc[a] < 0 || rc[a] >= grid->dims[a]) ok = false;
        }
        if (ok) {
          const int rcell = grid->flat(rc);
          if (rcell != c && grid->in_body[rcell]) partner = rcell;
        }
      }
      if (partner >= 0)
        merged[{std::min(c, partner), std::max(c, partner)}] += w;
    }
  }
  grid->pair_slots.reserve(merged.size());
  for (const auto& [key, w] : merged)
    grid->pair_slots.push_back({key.first, key.second, w});
  return grid;
}

std::vector<int> GridRegion::cells() const {
  std::vector<int> out;
  out.reserve(cell_count);
  for (int i = 0; i < static_cast<int>(occupied.size()); ++i)
    if (occupied[i]) out.push_back(i);
  return out;
}

GridRegion make_region(std::shared_ptr<const Grid> grid,
                       const std::vector<int>& cells) {
  GridRegion region;
  region.grid = std::move(grid);
  region.occupied.assign(region.grid->ncells(), 0);
  for (int c : cells) {
    if (c < 0 || c >= region.grid->ncells() || !region.grid->in_body[c])
      throw InvalidArgument("region cell outside the discretized body");
    if (!region.occupied[c]) {
      region.occupied[c] = 1;
      ++region.cell_count;
    }
  }
  return region;
}

double face_count_perimeter(const GridRegion& region) {
  const Grid& g = *region.grid;
  const auto offsets = axis_offsets(g.dim);
  long faces = 0;
  for (int c : g.in_body_cells) {
    if (!region.occupied[c]) continue;
    for (const auto& d : offsets) {
      for (int sgn : {+1, -1}) {
        std::vector<int> dd(d);
        for (auto& x : dd) x *= sgn;
        const int nb = g.neighbor(c, dd);
        if (nb >= 0 && g.in_body[nb] && !region.occupied[nb]) ++faces;
      }
    }
  }
  return faces * std::pow(g.h, g.dim - 1);
}

double boundary_length_estimate(const GridRegion& region) {
  const Grid& g = *region.grid;
  double total = 0.0;
  for (const auto& slot : g.pair_slots) {
    if (region.occupied[slot.cell] != region.occupied[slot.partner])
      total += slot.weight;
  }
  return total * g.length_unit;
}

double boundary_length_estimate_in_ball(const GridRegion& region,
                                        const Vector& x, double r) {
  const Grid& g = *region.grid;
  double total = 0.0;
  for (const auto& slot : g.pair_slots) {
    if (region.occupied[slot.cell] == region.occupied[slot.partner]) continue;
    if ((0.5 * (g.cell_center(slot.cell) + g.cell_center(slot.partner)) - x)
            .norm() <= r)
      total += slot.weight;
  }
  return total * g.length_unit;
}

std::vector<int> region_boundary_cells(const GridRegion& region) {
  const Grid& g = *region.grid;
  const auto offsets = axis_offsets(g.dim);
  std::vector<int> out;
  for (int c : g.in_body_cells) {
    if (!region.occupied[c]) continue;
    bool boundary = false;
    for (const auto& d : offsets) {
      for (int sgn : {+1, -1}) {
        std::vector<int> dd(d);
        for (auto& x : dd) x *= sgn;
        const int nb = g.neighbor(c, dd);
        if (nb >= 0 && g.in_body[nb] && !region.occupied[nb]) boundary = true;
      }
    }
    if (boundary) out.push_back(c);
  }
  return out;
}

std::vector<int> free_boundary_cells(const GridRegion& region) {
  const Grid& g = *region.grid;
  const auto offsets = axis_offsets(g.dim);
  std::vector<int> out;
  for (int c : region_boundary_cells(region)) {
    bool touches_wall = false;
    for (const auto& d : offsets) {
      for (int sgn : {+1, -1}) {
        std::vector<int> dd(d);
        for (auto& x : dd) x *= sgn;
        const int nb = g.neighbor(c, dd);
        if (nb < 0 || !g.in_body[nb]) touches_wall = true;
      }
    }
    if (!touches_wall) out.push_back(c);
  }
  return out;
}

namespace {

bool flood_connected(const Grid& g, const std::vector<std::uint8_t>& member,
                     int member_count) {
  if (member_count == 0) return true;
  int start = -1;
  for (int c : g.in_body_cells) {
    if (member[c]) {
      start = c;
      break;
    }
  }
  std::vector<std::uint8_t> seen(g.ncells(), 0);
  std::vector<int> stack = {start};
  seen[start] = 1;
  int visited = 0;
  const auto offsets = axis_offsets(g.dim);
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    ++visited;
    for (const auto& d : offsets) {
      for (int sgn : {+1, -1}) {
        std::vector<int> dd(d);
        for (auto& x : dd) x *= sgn;
        const int nb = g.neighbor(c, dd);
        if (nb >= 0 && g.in_body[nb] && member[nb] && !seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
  }
  return visited == member_count;
}

}  // namespace

ConnectednessResult connectedness_check(const GridRegion& region) {
  const Grid& g = *region.grid;
  std::vector<std::uint8_t> complement(g.ncells(), 0);
  int comp_count = 0;
  for (int c : g.in_body_cells) {
    if (!region.occupied[c]) {
      complement[c] = 1;
      ++comp_count;
    }
  }
  ConnectednessResult res;
  res.region_connected = flood_connected(g, region.occupied, region.cell_count);
  res.complement_connected = flood_connected(g, complement, comp_count);
  return res;
}

std::vector<Vector> region_boundary_polygon(const GridRegion& region) {
  const Grid& g = *region.grid;
  if (g.dim != 2)
    throw MethodDimensionMismatch("boundary polygon extraction is 2D");
  // Directed boundary edges in grid-vertex coordinates, region on the left.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> out_edges;
  auto add_edge = [&](int x0, int y0, int x1, int y1) {
    out_edges[{x0, y0}].push_back({x1, y1});
  };
  for (int c : g.in_body_cells) {
    if (!region.occupied[c]) continue;
    const auto cc = g.coords(c);
    const int ix = cc[0], iy = cc[1];
    auto occupied_at = [&](int dx, int dy) {
      const int nb = g.neighbor(c, {dx, dy});
      return nb >= 0 && region.occupied[nb];
    };
    if (!occupied_at(0, -1)) add_edge(ix, iy, ix + 1, iy);
    if (!occupied_at(1, 0)) add_edge(ix + 1, iy, ix + 1, iy + 1);
    if (!occupied_at(0, 1)) add_edge(ix + 1, iy + 1, ix, iy + 1);
    if (!occupied_at(-1, 0)) add_edge(ix, iy + 1, ix, iy);
  }
  std::vector<std::vector<Vector>> loops;
  while (!out_edges.empty()) {
    auto it = out_edges.begin();
    const std::pair<int, int> start = it->first;
    std::pair<int, int> cur = start;
    std::vector<Vector> loop;
    for (;;) {
      auto& nexts = out_edges[cur];
      if (nexts.empty()) break;
      const std::pair<int, int> nxt = nexts.back();
      nexts.pop_back();
      if (nexts.empty()) out_edges.erase(cur);
      loop.push_back(make_vec2(g.origin[0] + cur.first * g.h,
                               g.origin[1] + cur.second * g.h));
      cur = nxt;
      if (cur == start) break;
    }
    if (loop.size() >= 4) loops.push_back(std::move(loop));
  }
  if (loops.empty()) return {};
  std::size_t best = 0;
  for (std::size_t i = 1; i < loops.size(); ++i) {
    if (std::abs(polygon_area(loops[i])) > std::abs(polygon_area(loops[best])))
      best = i;
  }
  return loops[best];
}

std::string region_to_json_string(const GridRegion& region) {
  const Grid& g = *region.grid;
  nlohmann::json j;
  j["resolution"] = g.resolution;
  auto origin = nlohmann::json::array();
  for (int a = 0; a < g.dim; ++a) origin.push_back(g.origin[a]);
  j["origin"] = origin;
  j["h"] = g.h;
  j["dims"] = g.dims;
  j["cells"] = region.cells();
  return j.dump();
}

GridRegion region_from_json_string(const std::string& text,
                                   const ConvexBody& body) {
  const auto j = nlohmann::json::parse(text);
  const int resolution = j.at("resolution").get<int>();
  auto grid = make_grid(body, resolution);
  if (j.contains("h")) {
    const double h = j.at("h").get<double>();
    if (std::abs(h - grid->h) > 1e-9 * grid->h)
      throw IoError("region file cell size does not match the body grid");
  }
  if (j.contains("origin")) {
    const auto& o = j.at("origin");
    for (int a = 0; a < grid->dim; ++a) {
      if (std::abs(o[a].get<double>() - grid->origin[a]) > 1e-9)
        throw IoError("region file origin does not match the body grid");
    }
  }
  return make_region(grid, j.at("cells").get<std::vector<int>>());
}

void save_region(const GridRegion& region, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write region file " + path);
  out << region_to_json_string(region) << "\n";
}

GridRegion load_region(const std::string& path, const ConvexBody& body) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open region file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return region_from_json_string(ss.str(), body);
}

}  // namespace isoprofile
