#pragma once

// Aperture geometry: a rectangular surface tiled by M_h x M_v disjoint
// subareas, each carrying a regular grid of preset positions for its single
// movable element. Global preset indexing is row-major with the horizontal
// index fastest; the aperture is anchored at the origin with corners (0,0)
// and (A_h, A_v).

#include <cstdint>
#include <vector>

namespace fires {

struct Vec2 {
  double x{0.0};
  double y{0.0};
};

struct ApertureConfig {
  double A_h{1.0};   // aperture width [m]
  double A_v{1.0};   // aperture height [m]
  int M_h{1};        // subarea columns
  int M_v{1};        // subarea rows
  int N_h_sub{1};    // presets per subarea, horizontal
  int N_v_sub{1};    // presets per subarea, vertical
  double lambda{1.0};  // wavelength [m]
  double D_min{0.0};   // minimum element spacing [m]

  int subarea_count() const { return M_h * M_v; }
  int presets_per_subarea() const { return N_h_sub * N_v_sub; }
  int grid_h() const { return M_h * N_h_sub; }   // L_h
  int grid_v() const { return M_v * N_v_sub; }   // L_v
  std::int64_t grid_total() const {
    return static_cast<std::int64_t>(grid_h()) * grid_v();
  }
  // Degenerate single-column/row grids interpolate with divisor 1.
  double pitch_h() const { return A_h / (grid_h() > 1 ? grid_h() - 1 : 1); }
  double pitch_v() const { return A_v / (grid_v() > 1 ? grid_v() - 1 : 1); }

  void validate() const;  // throws std::invalid_argument
};

// Global grid coordinates (h fastest under the linear mapping).
struct GridIndex {
  int h{0};
  int v{0};
};

struct PresetIndex {
  int subarea{0};  // [0, M)
  int local{0};    // [0, N_m), row-major within the subarea
};

// One active preset per subarea; slot m holds subarea m's choice.
struct Placement {
  std::vector<PresetIndex> active;
};

struct SubareaBox {
  Vec2 lo;
  Vec2 hi;
};

// Bijection between 2-D grid coordinates and the linear preset index.
std::int64_t map_index(const ApertureConfig& cfg, GridIndex g);
GridIndex unmap_index(const ApertureConfig& cfg, std::int64_t linear);

int subarea_of(const ApertureConfig& cfg, int m_h, int m_v);
SubareaBox subarea_box(const ApertureConfig& cfg, int subarea);

GridIndex preset_grid(const ApertureConfig& cfg, PresetIndex idx);
PresetIndex preset_from_grid(const ApertureConfig& cfg, GridIndex g);

Vec2 grid_position(const ApertureConfig& cfg, GridIndex g);
Vec2 preset_position(const ApertureConfig& cfg, PresetIndex idx);

// Nearest preset in `subarea` to the geometric image of a unit-square
// surrogate. Near-ties resolve to the smaller local index.
PresetIndex snap(const ApertureConfig& cfg, int subarea, Vec2 unit);

// Unit-square coordinates of a preset inside its subarea (inverse of the
// geometric projection used by snap).
Vec2 unit_of_preset(const ApertureConfig& cfg, PresetIndex idx);

std::vector<Vec2> placement_positions(const ApertureConfig& cfg, const Placement& p);

int spacing_violations(const ApertureConfig& cfg, const std::vector<Vec2>& positions);
int spacing_violations(const ApertureConfig& cfg, const Placement& p);

struct RepairResult {
  Placement placement;
  int residual{0};  // violations remaining after repair
  int moved{0};     // elements reassigned
};

// Greedy spacing repair: pairs scanned in ascending (m, m'); the member with
// the larger subarea index moves to the preset nearest its pre-repair point
// that clears every current conflict. Unresolvable violations stay counted.
RepairResult repair_spacing(const ApertureConfig& cfg, const Placement& p);

// Placement with every element snapped to the preset nearest its subarea
// center (the fixed-position benchmark layout).
Placement center_placement(const ApertureConfig& cfg);

}  // namespace fires
