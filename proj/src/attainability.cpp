#include "circlepat/attainability.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace circlepat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<VertexId> subset_of_mask(std::uint32_t mask, int n) {
    std::vector<VertexId> out;
    for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) out.push_back(v);
    return out;
}

}  // namespace

std::string_view to_string(FailedCondition c) noexcept {
    switch (c) {
        case FailedCondition::None: return "none";
        case FailedCondition::UpperBound: return "upper-bound";
        case FailedCondition::SubsetInequality: return "subset-inequality";
        case FailedCondition::EqualityAtV: return "equality-at-V";
    }
    return "none";
}

double boundary_theta_sum(const SurfaceComplex& complex, const AngleAssignment& angles,
                          const std::vector<VertexId>& subset) {
    if (subset.empty()) throw DomainError("vertex subset must be nonempty");
    if (angles.size() != static_cast<std::size_t>(complex.num_edges()))
        throw IndexError("angle assignment does not match the edge count");
    std::vector<char> in(static_cast<std::size_t>(complex.num_vertices()), 0);
    for (VertexId v : subset) {
        if (v < 0 || v >= complex.num_vertices()) throw IndexError("vertex " + std::to_string(v) + " out of range");
        in[static_cast<std::size_t>(v)] = 1;
    }
    double sum = 0.0;
    for (EdgeId e = 0; e < complex.num_edges(); ++e) {
        const Edge& ed = complex.edge(e);
        if (in[static_cast<std::size_t>(ed.tail)] || in[static_cast<std::size_t>(ed.head)]) sum += angles[e];
    }
    return sum;
}

AttainabilityReport check_target(const SurfaceComplex& complex, const AngleAssignment& angles,
                                 const TargetCurvature& target, Geometry geometry, double tol) {
    const int n = complex.num_vertices();
    if (target.size() != n)
        throw IndexError("target has " + std::to_string(target.size()) + " entries for " + std::to_string(n) +
                         " vertices");
    if (angles.size() != static_cast<std::size_t>(complex.num_edges()))
        throw IndexError("angle assignment does not match the edge count");
    if (n > kMaxEnumerationVertices)
        throw PreconditionError("attainability enumeration is limited to " +
                                std::to_string(kMaxEnumerationVertices) + " vertices (got " + std::to_string(n) + ")");

    AttainabilityReport report;
    report.margin = std::numeric_limits<double>::infinity();

    // Upper bound k_i < 2 pi.
    VertexId worst_vertex = 0;
    for (VertexId v = 0; v < n; ++v) {
        const double slack = kTwoPi - target[v];
        if (slack < report.margin) {
            report.margin = slack;
            worst_vertex = v;
        }
    }
    if (!(report.margin > tol)) {
        report.failed_condition = FailedCondition::UpperBound;
        report.witness_subset = std::vector<VertexId>{worst_vertex};
        return report;
    }

    // Subset inequalities: sum_A k > 2 pi |A| - 2 sum_{e touches A} theta.
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<std::uint32_t> edge_mask(static_cast<std::size_t>(complex.num_edges()));
    for (EdgeId e = 0; e < complex.num_edges(); ++e) {
        const Edge& ed = complex.edge(e);
        edge_mask[static_cast<std::size_t>(e)] = (1u << ed.tail) | (1u << ed.head);
    }

    double worst_slack = std::numeric_limits<double>::infinity();
    std::uint32_t worst_mask = 0;
    double slack_at_v = 0.0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        double k_sum = 0.0;
        int count = 0;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) {
                k_sum += target[v];
                ++count;
            }
        double theta_sum = 0.0;
        for (std::size_t e = 0; e < edge_mask.size(); ++e)
            if (mask & edge_mask[e]) theta_sum += angles[static_cast<EdgeId>(e)];
        const double slack = k_sum - (kTwoPi * count - 2.0 * theta_sum);
        if (geometry == Geometry::Euclidean && mask == full) {
            slack_at_v = slack;
            continue;
        }
        if (slack < worst_slack) {
            worst_slack = slack;
            worst_mask = mask;
        }
    }

    if (worst_mask != 0) {
        report.witness_subset = subset_of_mask(worst_mask, n);
        report.margin = std::min(report.margin, worst_slack);
        if (!(worst_slack > tol)) {
            report.failed_condition = FailedCondition::SubsetInequality;
            return report;
        }
    }

    if (geometry == Geometry::Euclidean && std::abs(slack_at_v) > tol) {
        report.failed_condition = FailedCondition::EqualityAtV;
        report.witness_subset = subset_of_mask(full, n);
        return report;
    }

    report.attainable = true;
    return report;
}

}  // namespace circlepat
