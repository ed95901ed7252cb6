#pragma once

#include "contactlab/curve.hpp"

#include <iosfwd>
#include <string>

namespace contactlab {

// Curve files: {"n": int, "closed": bool, "samples": [[t, x.., y.., z], ...]}
// with strictly increasing t. Space curves carry 2n+2 entries per row, planar
// curves 2n+1. Constructions attach an optional "provenance" object.
std::string space_curve_to_json(const SpaceCurve& c, int samples = 0);
std::string planar_curve_to_json(const PlanarCurve& c, int samples = 0);

SpaceCurve space_curve_from_json(const std::string& text);
PlanarCurve planar_curve_from_json(const std::string& text);

SpaceCurve load_space_curve(const std::string& path);
void save_space_curve(const SpaceCurve& c, const std::string& path, int samples = 0);

} // namespace contactlab
