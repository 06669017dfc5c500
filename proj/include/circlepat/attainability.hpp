#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "circlepat/geometry.hpp"

namespace circlepat {

/// Prescribed curvature per vertex, radians.
using TargetCurvature = Vector;

enum class FailedCondition { None, UpperBound, SubsetInequality, EqualityAtV };

[[nodiscard]] std::string_view to_string(FailedCondition c) noexcept;

struct AttainabilityReport {
    bool attainable = false;
    FailedCondition failed_condition = FailedCondition::None;
    /// Subset responsible for the failure, or the worst-margin subset when attainable.
    std::optional<std::vector<VertexId>> witness_subset;
    /// Smallest slack over the strict checks (upper bound and subset
    /// inequalities). The Euclidean equality at A = V is not part of it.
    double margin = 0.0;
};

inline constexpr int kMaxEnumerationVertices = 25;
inline constexpr double kAttainabilityTolerance = 1e-9;

/// Sum of theta over the edges with at least one endpoint in A (each edge
/// once, self-loops included). Throws DomainError for an empty A and
/// IndexError for out-of-range ids.
[[nodiscard]] double boundary_theta_sum(const SurfaceComplex& complex, const AngleAssignment& angles,
                                        const std::vector<VertexId>& subset);

/// Decides whether target lies in the image of the curvature map by
/// enumerating all 2^N - 1 nonempty vertex subsets in increasing bitmask
/// order. Does not check the face angle-sum condition; callers do that
/// separately. Throws PreconditionError if N > kMaxEnumerationVertices and
/// IndexError on size mismatch.
[[nodiscard]] AttainabilityReport check_target(const SurfaceComplex& complex, const AngleAssignment& angles,
                                               const TargetCurvature& target, Geometry geometry,
                                               double tol = kAttainabilityTolerance);

}  // namespace circlepat
