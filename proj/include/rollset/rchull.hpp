#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rollset/delaunay.hpp"
#include "rollset/geom.hpp"

namespace rollset {

constexpr std::uint32_t kNoSample = 0xffffffffu;

/// Boundary arc of the hull: a radius-r arc of the empty disc centered at
/// arc.center, running between two contact points of that disc. Endpoint
/// annotations are sample indices; kNoSample marks an endpoint produced by
/// trimming against another part of the empty-center locus.
struct HullArc {
    ArcSegment arc;
    std::uint32_t endpoint_i = kNoSample;
    std::uint32_t endpoint_j = kNoSample;
    int chain_id = -1;
};

struct ChainDiagnostic {
    std::vector<std::uint32_t> fragment;  // arc ids of the unclosed fragment
    std::string message;
};

struct HullBoundary {
    std::vector<HullArc> arcs;
    std::vector<std::vector<std::uint32_t>> chains;  // arc ids in traversal order
    std::vector<int> component_ids;                  // per chain
    int component_count = 0;
    std::vector<ChainDiagnostic> diagnostics;
};

/// The r-convex hull of a planar sample: the complement of the union of all
/// open radius-r discs containing no sample point. Immutable once built;
/// concurrent queries are safe.
class RConvexHull {
public:
    const PointSet& sample() const { return *sample_; }
    double r() const { return r_; }
    const HullBoundary& boundary() const { return boundary_; }
    const std::vector<std::uint32_t>& isolated() const { return isolated_; }
    const std::vector<std::uint32_t>& regular() const { return regular_; }

    /// Exact membership test against the boundary structure.
    bool contains(Point2 x) const;

    /// Total length of the boundary arcs of the hull minus its isolated
    /// points; isolated points contribute zero.
    double boundary_length() const;

    PointSet isolated_points() const;

    /// Distance from x to the locus of admissible empty-disc centers
    /// (+inf when the sample leaves no admissible center anywhere).
    double dist_to_center_locus(Point2 x) const;

    friend RConvexHull build_hull(const PointSet& sample, double r);

private:
    struct FreeInterval {
        double start;  // radians
        double sweep;  // >= 0, counterclockwise
    };

    std::shared_ptr<const PointSet> sample_;
    double r_ = 0.0;
    HullBoundary boundary_;
    std::vector<std::uint32_t> isolated_;
    std::vector<std::uint32_t> regular_;

    // Membership structure: per-point free arcs of the empty-disc center
    // locus, plus grids for local queries.
    // Heap-held so the grids' references stay valid when the hull moves.
    std::vector<std::uint32_t> free_pts_;               // sample indices with free arcs
    std::vector<std::vector<FreeInterval>> free_ivals_;  // aligned with free_pts_
    std::shared_ptr<std::vector<Point2>> free_positions_;
    PointGrid grid_all_;
    PointGrid grid_free_;
};

/// Builds the r-convex hull. The sample must be nonempty and deduplicated;
/// r must be positive.
RConvexHull build_hull(const PointSet& sample, double r);

/// Brute-force membership verdict on a pitch-grid of empty-disc centers:
/// x is outside the hull iff some grid center y with |y-x| < r has
/// dist_to_set(y, sample) >= r. One-sided error O(pitch).
bool hull_membership_oracle(const PointSet& sample, double r, Point2 x, double pitch);

}  // namespace rollset
