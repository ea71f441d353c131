#include "fires/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace fires {

namespace {

double dist2(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Nearest grid coordinate along one axis, near-ties to the lower index.
// Positions are base + j*pitch for j in [0, n).
int snap_axis(double target, double base, double pitch, int n) {
  if (n <= 1 || pitch <= 0.0) return 0;
  const double t = (target - base) / pitch;
  int lo = static_cast<int>(std::floor(t));
  lo = std::clamp(lo, 0, n - 1);
  const int hi = std::min(lo + 1, n - 1);
  const double d_lo = std::abs(target - (base + lo * pitch));
  const double d_hi = std::abs(target - (base + hi * pitch));
  // Exact midpoints land here with only rounding noise between the two
  // distances; resolve them to the lower index.
  if (d_hi < d_lo && (d_lo - d_hi) > 1e-9 * pitch) return hi;
  return lo;
}

}  // namespace

void ApertureConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("aperture: " + what); };
  if (!(A_h > 0.0) || !(A_v > 0.0)) fail("aperture sides must be positive");
  if (!(lambda > 0.0)) fail("wavelength must be positive");
  if (!(D_min >= 0.0)) fail("minimum spacing must be nonnegative");
  if (M_h < 1 || M_v < 1) fail("subarea counts must be at least 1");
  if (N_h_sub < 1 || N_v_sub < 1) fail("preset resolution must be at least 1");
}

std::int64_t map_index(const ApertureConfig& cfg, GridIndex g) {
  if (g.h < 0 || g.h >= cfg.grid_h() || g.v < 0 || g.v >= cfg.grid_v())
    throw std::out_of_range("map_index: grid coordinate out of bounds");
  return static_cast<std::int64_t>(g.v) * cfg.grid_h() + g.h;
}

GridIndex unmap_index(const ApertureConfig& cfg, std::int64_t linear) {
  if (linear < 0 || linear >= cfg.grid_total())
    throw std::out_of_range("unmap_index: linear index out of bounds");
  const int lh = cfg.grid_h();
  return GridIndex{static_cast<int>(linear % lh), static_cast<int>(linear / lh)};
}

int subarea_of(const ApertureConfig& cfg, int m_h, int m_v) {
  if (m_h < 0 || m_h >= cfg.M_h || m_v < 0 || m_v >= cfg.M_v)
    throw std::out_of_range("subarea_of: index out of bounds");
  return m_v * cfg.M_h + m_h;
}

SubareaBox subarea_box(const ApertureConfig& cfg, int subarea) {
  if (subarea < 0 || subarea >= cfg.subarea_count())
    throw std::out_of_range("subarea_box: index out of bounds");
  const int m_h = subarea % cfg.M_h;
  const int m_v = subarea / cfg.M_h;
  const double w = cfg.A_h / cfg.M_h;
  const double h = cfg.A_v / cfg.M_v;
  return SubareaBox{{m_h * w, m_v * h}, {(m_h + 1) * w, (m_v + 1) * h}};
}

GridIndex preset_grid(const ApertureConfig& cfg, PresetIndex idx) {
  if (idx.subarea < 0 || idx.subarea >= cfg.subarea_count())
    throw std::out_of_range("preset_grid: subarea out of bounds");
  if (idx.local < 0 || idx.local >= cfg.presets_per_subarea())
    throw std::out_of_range("preset_grid: local index out of bounds");
  const int m_h = idx.subarea % cfg.M_h;
  const int m_v = idx.subarea / cfg.M_h;
  const int j_h = idx.local % cfg.N_h_sub;
  const int j_v = idx.local / cfg.N_h_sub;
  return GridIndex{m_h * cfg.N_h_sub + j_h, m_v * cfg.N_v_sub + j_v};
}

PresetIndex preset_from_grid(const ApertureConfig& cfg, GridIndex g) {
  if (g.h < 0 || g.h >= cfg.grid_h() || g.v < 0 || g.v >= cfg.grid_v())
    throw std::out_of_range("preset_from_grid: grid coordinate out of bounds");
  const int m_h = g.h / cfg.N_h_sub;
  const int m_v = g.v / cfg.N_v_sub;
  const int j_h = g.h % cfg.N_h_sub;
  const int j_v = g.v % cfg.N_v_sub;
  return PresetIndex{subarea_of(cfg, m_h, m_v), j_v * cfg.N_h_sub + j_h};
}

Vec2 grid_position(const ApertureConfig& cfg, GridIndex g) {
  if (g.h < 0 || g.h >= cfg.grid_h() || g.v < 0 || g.v >= cfg.grid_v())
    throw std::out_of_range("grid_position: grid coordinate out of bounds");
  return Vec2{g.h * cfg.pitch_h(), g.v * cfg.pitch_v()};
}

Vec2 preset_position(const ApertureConfig& cfg, PresetIndex idx) {
  return grid_position(cfg, preset_grid(cfg, idx));
}

PresetIndex snap(const ApertureConfig& cfg, int subarea, Vec2 unit) {
  const SubareaBox box = subarea_box(cfg, subarea);
  unit.x = std::clamp(unit.x, 0.0, 1.0);
  unit.y = std::clamp(unit.y, 0.0, 1.0);
  const Vec2 target{box.lo.x + unit.x * (box.hi.x - box.lo.x),
                    box.lo.y + unit.y * (box.hi.y - box.lo.y)};
  const int m_h = subarea % cfg.M_h;
  const int m_v = subarea / cfg.M_h;
  const double base_x = (m_h * cfg.N_h_sub) * cfg.pitch_h();
  const double base_y = (m_v * cfg.N_v_sub) * cfg.pitch_v();
  const int j_h = snap_axis(target.x, base_x, cfg.pitch_h(), cfg.N_h_sub);
  const int j_v = snap_axis(target.y, base_y, cfg.pitch_v(), cfg.N_v_sub);
  return PresetIndex{subarea, j_v * cfg.N_h_sub + j_h};
}

Vec2 unit_of_preset(const ApertureConfig& cfg, PresetIndex idx) {
  const SubareaBox box = subarea_box(cfg, idx.subarea);
  const Vec2 pos = preset_position(cfg, idx);
  const double w = box.hi.x - box.lo.x;
  const double h = box.hi.y - box.lo.y;
  return Vec2{w > 0.0 ? (pos.x - box.lo.x) / w : 0.0, h > 0.0 ? (pos.y - box.lo.y) / h : 0.0};
}

std::vector<Vec2> placement_positions(const ApertureConfig& cfg, const Placement& p) {
  if (static_cast<int>(p.active.size()) != cfg.subarea_count())
    throw std::invalid_argument("placement size does not match subarea count");
  std::vector<Vec2> out(p.active.size());
  for (std::size_t m = 0; m < p.active.size(); ++m) {
    if (p.active[m].subarea != static_cast<int>(m))
      throw std::invalid_argument("placement slot does not own its subarea");
    out[m] = preset_position(cfg, p.active[m]);
  }
  return out;
}

int spacing_violations(const ApertureConfig& cfg, const std::vector<Vec2>& positions) {
  const double d2 = cfg.D_min * cfg.D_min;
  int count = 0;
  for (std::size_t m = 0; m + 1 < positions.size(); ++m)
    for (std::size_t k = m + 1; k < positions.size(); ++k)
      if (dist2(positions[m], positions[k]) < d2) ++count;
  return count;
}

int spacing_violations(const ApertureConfig& cfg, const Placement& p) {
  return spacing_violations(cfg, placement_positions(cfg, p));
}

RepairResult repair_spacing(const ApertureConfig& cfg, const Placement& p) {
  RepairResult result{p, 0, 0};
  std::vector<Vec2> pos = placement_positions(cfg, p);
  const std::vector<Vec2> original = pos;  // pre-repair reference points
  const double d2 = cfg.D_min * cfg.D_min;
  const int m_total = cfg.subarea_count();
  const int n_presets = cfg.presets_per_subarea();

  for (int m = 0; m + 1 < m_total; ++m) {
    for (int mp = m + 1; mp < m_total; ++mp) {
      if (dist2(pos[m], pos[mp]) >= d2) continue;
      // Enumerate subarea mp's presets outward from the pre-repair point and
      // take the first one that clears every current conflict.
      using Entry = std::pair<double, int>;  // (distance^2, local index)
      std::vector<Entry> heap;
      heap.reserve(static_cast<std::size_t>(n_presets));
      for (int local = 0; local < n_presets; ++local) {
        const Vec2 q = preset_position(cfg, PresetIndex{mp, local});
        heap.emplace_back(dist2(q, original[mp]), local);
      }
      auto cmp = [](const Entry& a, const Entry& b) { return a > b; };  // min-heap
      std::make_heap(heap.begin(), heap.end(), cmp);
      while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const int local = heap.back().second;
        heap.pop_back();
        const Vec2 q = preset_position(cfg, PresetIndex{mp, local});
        bool clear = true;
        for (int k = 0; k < m_total && clear; ++k) {
          if (k == mp) continue;
          if (dist2(q, pos[k]) < d2) clear = false;
        }
        if (clear) {
          pos[mp] = q;
          result.placement.active[static_cast<std::size_t>(mp)] = PresetIndex{mp, local};
          ++result.moved;
          break;
        }
      }
    }
  }
  result.residual = spacing_violations(cfg, pos);
  return result;
}

Placement center_placement(const ApertureConfig& cfg) {
  Placement p;
  p.active.reserve(static_cast<std::size_t>(cfg.subarea_count()));
  for (int m = 0; m < cfg.subarea_count(); ++m) p.active.push_back(snap(cfg, m, Vec2{0.5, 0.5}));
  return p;
}

}  // namespace fires
