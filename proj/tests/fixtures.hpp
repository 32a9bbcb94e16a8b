#pragma once

// Shared test polygons. All are validated (outer CCW, holes CW).

#include "geodisk/geometry.hpp"

namespace fixtures {

using geodisk::Point2;
using geodisk::Polygon;
using geodisk::Ring;

inline Polygon unit_square() {
    return geodisk::validate_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline Polygon rect(double w, double h) {
    return geodisk::validate_polygon({{0, 0}, {w, 0}, {w, h}, {0, h}});
}

// Reflex corner at (1,1).
inline Polygon l_polygon() {
    return geodisk::validate_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

inline Polygon convex_pentagon() {
    return geodisk::validate_polygon({{1, 0}, {3, 0}, {4, 1.8}, {2, 3}, {0, 1.8}});
}

// Rectangular spiral corridor, exactly 3 reflex vertices: (2,7), (7,7), (7,1).
inline Polygon spiral() {
    return geodisk::validate_polygon(
        {{0, 0}, {8, 0}, {8, 8}, {1, 8}, {1, 3}, {2, 3}, {2, 7}, {7, 7}, {7, 1}, {0, 1}});
}

// Base strip [0,9]x[0,1] with four teeth [1,2],[3,4],[5,6],[7,8] up to y=3.
inline Polygon comb() {
    return geodisk::validate_polygon({{0, 0}, {9, 0}, {9, 1}, {8, 1}, {8, 3}, {7, 3}, {7, 1},
                                      {6, 1}, {6, 3}, {5, 3}, {5, 1}, {4, 1}, {4, 3}, {3, 3},
                                      {3, 1}, {2, 1}, {2, 3}, {1, 3}, {1, 1}, {0, 1}});
}

inline Polygon square_with_hole() {
    return geodisk::validate_polygon({{0, 0}, {6, 0}, {6, 6}, {0, 6}},
                                     {{{2, 2}, {2, 4}, {4, 4}, {4, 2}}});
}

inline std::vector<std::pair<std::string, Polygon>> acceptance_set() {
    return {{"convex_pentagon", convex_pentagon()},
            {"l_polygon", l_polygon()},
            {"spiral", spiral()},
            {"comb", comb()},
            {"square_with_hole", square_with_hole()}};
}

}  // namespace fixtures
