#pragma once

#include <vector>

#include "drisim/scenario.hpp"

namespace drisim {

struct ElementGrid {
    int n_x = 0;
    int n_y = 0;
    std::vector<Vec3> positions;  // x-major: index = ix * n_y + iy

    int index(int ix, int iy) const { return ix * n_y + iy; }
    int count() const { return n_x * n_y; }
};

ElementGrid element_positions(const PanelSpec& panel);

// Per-element hop distances for one link evaluation. The element-pair distances of
// the panel-to-panel hop are computed on demand; materializing N_s x N_u values is
// prohibitive for large panels.
struct LinkGeometry {
    ElementGrid grid_u;
    ElementGrid grid_s;
    std::vector<double> su_to_ris_u_m;   // length N_u
    std::vector<double> ris_s_to_sap_m;  // length N_s
    double d_u_m = 0.0;      // SU to RIS-u center
    double d_s_m = 0.0;      // RIS-s center to SAP
    double d_h_m = 0.0;      // panel center to panel center
    double direct_m = 0.0;   // SU to SAP

    double middle_m(int is, int iu) const {
        return norm(grid_s.positions[is] - grid_u.positions[iu]);
    }
};

LinkGeometry pairwise_distances(const Scenario& scn);

// Direction angles in a panel's local frame: theta from the panel normal,
// phi of the in-plane projection measured from basis_x toward basis_y.
struct LocalAngles {
    double theta = 0.0;
    double phi = 0.0;
};

LocalAngles local_angles(const Vec3& point, const PanelSpec& panel, const Vec3& reference);
LocalAngles local_angles(const Vec3& point, const PanelSpec& panel);  // from panel center

// Fraunhofer boundary 2 D^2 / lambda with D the diagonal of the element-center
// extent. A 1x1 panel has D = 0, so every distance classifies as far field.
double rayleigh_distance(const PanelSpec& panel, double wavelength_m);

enum class FieldRegion { near_field, far_field };

FieldRegion classify_region(double distance_m, const PanelSpec& panel, double wavelength_m);

}  // namespace drisim
