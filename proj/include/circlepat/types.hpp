#pragma once

#include <string>
#include <string_view>

namespace circlepat {

/// Constant-curvature model in which the circle-pattern triangles are built.
enum class Geometry { Hyperbolic, Euclidean };

[[nodiscard]] std::string_view to_string(Geometry g) noexcept;

/// Parses "hyperbolic" / "euclidean"; throws ParseError otherwise.
[[nodiscard]] Geometry parse_geometry(std::string_view text);

}  // namespace circlepat
