#pragma once

// 2-parameter strong exactness on slices and 3-parameter strong exactness on
// cubes. Every decision reduces to rank computations over GF(p).

#include <array>
#include <string>
#include <vector>

#include "blockdec/grid_module.hpp"

namespace blockdec {

/// A commutative square
///
///     B --g1--> D
///     ^         ^
///     f1        g2
///     |         |
///     A --f2--> C
struct SquareDiagram {
    Matrix f1;  // A -> B
    Matrix f2;  // A -> C
    Matrix g1;  // B -> D
    Matrix g2;  // C -> D

    std::size_t dim_a() const { return f1.cols(); }
    std::size_t dim_b() const { return f1.rows(); }
    std::size_t dim_c() const { return f2.rows(); }
    std::size_t dim_d() const { return g1.rows(); }
    bool commutes() const;

    /// The square of `m` spanned by `lo` <= `hi` in the plane of axes (i, j):
    /// B = lo moved to hi on axis i, C = lo moved to hi on axis j.
    static SquareDiagram from_module(const GridModule& m, const GridPoint& lo, const GridPoint& hi,
                                     std::size_t axis_i, std::size_t axis_j);
};

/// Exactness of A -> B (+) C -> D at the middle (image equals kernel).
bool square_exact(const SquareDiagram& sq);
/// Surjectivity of A onto the pullback B x_D C.
bool square_pullback_surjective(const SquareDiagram& sq);
/// Injectivity of the pushout B +_A C into D.
bool square_pushout_injective(const SquareDiagram& sq);

/// A 3-cube diagram. Corner k (a 3-bit mask) sits at coordinate hi_i on every
/// axis i with bit i set and lo_i otherwise; corner 0 is the bottom, corner 7
/// the top. edge(k, i) is the map from corner k to corner k | (1 << i).
class CubeDiagram {
public:
    static constexpr std::size_t kCorners = 8;

    CubeDiagram(Field field, std::array<std::size_t, kCorners> dims,
                std::array<std::array<Matrix, kAxes>, kCorners> edges);
    static CubeDiagram from_module(const GridModule& m, const GridPoint& lo, const GridPoint& hi);

    const Field& field() const noexcept { return field_; }
    std::size_t dim(std::size_t corner) const { return dims_[corner]; }
    const Matrix& edge(std::size_t corner, std::size_t axis) const;
    /// Composite from `from` to `to` (`from` must be a sub-mask of `to`).
    Matrix path(std::size_t from, std::size_t to) const;
    bool commutes() const;

private:
    Field field_;
    std::array<std::size_t, kCorners> dims_;
    std::array<std::array<Matrix, kAxes>, kCorners> edges_;
};

/// The two sides of a rank equality; the condition holds iff they agree.
struct RankCheck {
    std::size_t found = 0;
    std::size_t required = 0;
    bool holds() const noexcept { return found == required; }
};

/// rank(psi) against dim of the limit over the nonempty corners.
RankCheck psi_rank_check(const CubeDiagram& c);
/// rank of the colimit relations against dim ker of the summed map into X(S).
RankCheck phi_rank_check(const CubeDiagram& c);

/// psi: X(empty) -> lim over nonempty corners is surjective.
inline bool cube_psi_surjective(const CubeDiagram& c) { return psi_rank_check(c).holds(); }
/// phi: colim over proper corners -> X(S) is injective.
inline bool cube_phi_injective(const CubeDiagram& c) { return phi_rank_check(c).holds(); }

struct SquareFailure {
    std::size_t axis = 0;  // the fixed axis of the slice
    int index = 1;
    GridPoint lower;       // rectangle corners in parent coordinates
    GridPoint upper;
};

struct CubeFailure {
    enum class Which { psi, phi };
    GridPoint s;
    GridPoint t;
    Which which;
    std::size_t rank_found = 0;     // rank of psi, or rank of the relation map
    std::size_t rank_required = 0;  // dim of the limit, or dim ker of the summed map
};

std::string to_string(CubeFailure::Which w);

struct ExactnessReport {
    bool overall = true;
    bool unit_cells_only = false;
    std::vector<SquareFailure> slice_failures;
    std::vector<CubeFailure> cube_failures;
};

enum class CheckMode { exhaustive, unit_cells };

/// Every rectangle of the slice with strictly increasing corners; degenerate
/// rectangles are exact by construction.
std::vector<SquareFailure> slice_strongly_exact(const SliceModule& s, CheckMode mode = CheckMode::exhaustive);

/// Slice exactness on every slice of every axis, plus psi/phi on the cube of
/// every pair s < t strict on all three axes (cubes degenerate on some axis
/// are covered by the slice and edge conditions). Throws std::invalid_argument
/// for a module that does not validate. Failures are sorted by (s, t).
ExactnessReport check_strong_exactness(const GridModule& m, CheckMode mode = CheckMode::exhaustive);

}  // namespace blockdec
