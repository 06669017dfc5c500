#include "circlepat/types.hpp"

#include "circlepat/error.hpp"

namespace circlepat {

std::string_view to_string(Geometry g) noexcept {
    return g == Geometry::Hyperbolic ? "hyperbolic" : "euclidean";
}

Geometry parse_geometry(std::string_view text) {
    if (text == "hyperbolic") return Geometry::Hyperbolic;
    if (text == "euclidean") return Geometry::Euclidean;
    throw ParseError("unknown geometry '" + std::string(text) + "' (expected hyperbolic or euclidean)");
}

}  // namespace circlepat
