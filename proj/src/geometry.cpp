#include "drisim/geometry.hpp"

#include <cmath>

namespace drisim {

ElementGrid element_positions(const PanelSpec& panel) {
    ElementGrid grid;
    grid.n_x = panel.n_x;
    grid.n_y = panel.n_y;
    grid.positions.resize(static_cast<size_t>(panel.count()));
    for (int ix = 0; ix < panel.n_x; ++ix) {
        for (int iy = 0; iy < panel.n_y; ++iy) {
            grid.positions[static_cast<size_t>(grid.index(ix, iy))] =
                panel.anchor_m + (ix * panel.spacing_m) * panel.basis_x
                               + (iy * panel.spacing_m) * panel.basis_y;
        }
    }
    return grid;
}

LinkGeometry pairwise_distances(const Scenario& scn) {
    LinkGeometry g;
    g.grid_u = element_positions(scn.ris_u);
    g.grid_s = element_positions(scn.ris_s);

    g.su_to_ris_u_m.resize(g.grid_u.positions.size());
    for (size_t i = 0; i < g.grid_u.positions.size(); ++i)
        g.su_to_ris_u_m[i] = norm(g.grid_u.positions[i] - scn.su_position_m);

    g.ris_s_to_sap_m.resize(g.grid_s.positions.size());
    for (size_t i = 0; i < g.grid_s.positions.size(); ++i)
        g.ris_s_to_sap_m[i] = norm(scn.sap_position_m - g.grid_s.positions[i]);

    g.d_u_m = norm(scn.ris_u.center() - scn.su_position_m);
    g.d_s_m = norm(scn.sap_position_m - scn.ris_s.center());
    g.d_h_m = norm(scn.ris_s.center() - scn.ris_u.center());
    g.direct_m = norm(scn.sap_position_m - scn.su_position_m);
    return g;
}

LocalAngles local_angles(const Vec3& point, const PanelSpec& panel, const Vec3& reference) {
    const Vec3 r = point - reference;
    const double len = norm(r);
    if (!(len > 0.0)) throw ValidationError("degenerate geometry: zero-length link");
    const double cx = dot(r, panel.basis_x);
    const double cy = dot(r, panel.basis_y);
    const double cz = dot(r, panel.normal());
    LocalAngles a;
    const double ratio = cz / len;
    a.theta = std::acos(ratio < -1.0 ? -1.0 : (ratio > 1.0 ? 1.0 : ratio));
    a.phi = (cx == 0.0 && cy == 0.0) ? 0.0 : std::atan2(cy, cx);
    return a;
}

LocalAngles local_angles(const Vec3& point, const PanelSpec& panel) {
    return local_angles(point, panel, panel.center());
}

double rayleigh_distance(const PanelSpec& panel, double wavelength_m) {
    if (!(wavelength_m > 0.0)) throw ValidationError("wavelength must be positive");
    const double span_x = panel.spacing_m * (panel.n_x - 1);
    const double span_y = panel.spacing_m * (panel.n_y - 1);
    const double diag_sq = span_x * span_x + span_y * span_y;
    return 2.0 * diag_sq / wavelength_m;
}

FieldRegion classify_region(double distance_m, const PanelSpec& panel, double wavelength_m) {
    if (!(distance_m > 0.0)) throw ValidationError("distance must be positive");
    return distance_m < rayleigh_distance(panel, wavelength_m) ? FieldRegion::near_field
                                                               : FieldRegion::far_field;
}

}  // namespace drisim
