#pragma once

// Pointwise finite-dimensional persistence modules on a finite 3-D cell grid.
//
// Cells are 1-based: on axis i they run 1..m_i, cell 1 standing for the ray
// down to -inf and cell m_i for the ray up to +inf. Axes are 0-based array
// indices (0, 1, 2). A module stores the dimension at every grid point and one
// step map per axis per point t with t_i < m_i, of shape dim(t + e_i) x dim(t).

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blockdec/linalg.hpp"

namespace blockdec {

inline constexpr std::size_t kAxes = 3;

struct GridPoint {
    std::array<int, kAxes> t{1, 1, 1};

    int& operator[](std::size_t axis) { return t[axis]; }
    int operator[](std::size_t axis) const { return t[axis]; }

    /// Componentwise order.
    bool leq(const GridPoint& other) const {
        return t[0] <= other.t[0] && t[1] <= other.t[1] && t[2] <= other.t[2];
    }
    GridPoint shifted(std::size_t axis, int delta = 1) const {
        GridPoint p = *this;
        p.t[axis] += delta;
        return p;
    }
    GridPoint with(std::size_t axis, int value) const {
        GridPoint p = *this;
        p.t[axis] = value;
        return p;
    }
    std::string to_string() const;

    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

class Grid {
public:
    Grid() = default;
    /// Throws std::invalid_argument unless every count is >= 1.
    explicit Grid(std::array<int, kAxes> cells);

    const std::array<int, kAxes>& cells() const noexcept { return cells_; }
    int cells(std::size_t axis) const { return cells_[axis]; }
    std::size_t size() const noexcept {
        return static_cast<std::size_t>(cells_[0]) * cells_[1] * cells_[2];
    }

    bool contains(const GridPoint& p) const;
    std::size_t index(const GridPoint& p) const;
    GridPoint point(std::size_t index) const;
    /// All points in lexicographic order (axis 0 slowest).
    std::vector<GridPoint> points() const;
    /// Maps cell t to m + 1 - t on every axis.
    GridPoint reversed(const GridPoint& p) const;
    GridPoint top() const { return GridPoint{cells_}; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::array<int, kAxes> cells_{1, 1, 1};
};

class TransitionCache;

class GridModule {
public:
    GridModule();
    /// All step maps start as zero matrices of the shape the dims dictate.
    GridModule(Field field, Grid grid, std::vector<std::size_t> dims);
    static GridModule zero(Field field, Grid grid);

    const Field& field() const noexcept { return field_; }
    const Grid& grid() const noexcept { return grid_; }
    std::size_t dim(const GridPoint& p) const { return dims_[grid_.index(p)]; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t total_dim() const;

    bool has_step(std::size_t axis, const GridPoint& from) const;
    /// The map from `from` to `from + e_axis`.
    const Matrix& step(std::size_t axis, const GridPoint& from) const;
    /// Throws std::invalid_argument on a shape or field mismatch.
    void set_step(std::size_t axis, const GridPoint& from, Matrix m);

    /// rho_s^t, composed along axis 0 first, then 1, then 2; memoized.
    /// Throws std::invalid_argument unless s <= t.
    Matrix transition(const GridPoint& s, const GridPoint& t) const;

    /// Same dims and step maps.
    friend bool operator==(const GridModule& a, const GridModule& b);

private:
    void reset_cache();

    Field field_;
    Grid grid_;
    std::vector<std::size_t> dims_;
    std::array<std::vector<Matrix>, kAxes> steps_;
    std::shared_ptr<TransitionCache> cache_;
};

struct ValidationIssue {
    enum class Kind { dimension_mismatch, non_commuting_square };
    Kind kind;
    GridPoint at;
    std::size_t axis_a = 0;
    std::size_t axis_b = 0;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const noexcept { return issues.empty(); }
};

/// Lists every step map with the wrong shape and every non-commuting unit square.
ValidationReport validate(const GridModule& m);

/// A 2-parameter restriction, stored as a grid module whose fixed axis has one cell.
struct SliceModule {
    std::size_t fixed_axis = 0;
    int index = 1;
    std::array<std::size_t, 2> free_axes{1, 2};
    GridModule module;

    /// Lifts a slice point back to the parent grid.
    GridPoint parent_point(const GridPoint& p) const { return p.with(fixed_axis, index); }
};

/// Throws std::out_of_range unless 1 <= index <= m_axis.
SliceModule restrict_slice(const GridModule& m, std::size_t axis, int index);

/// Pointwise dual on the reversed grid: every step map is the transpose of the
/// opposite step map.
GridModule dualize(const GridModule& m);

/// Throws std::invalid_argument unless both modules share a grid and field.
GridModule direct_sum(const GridModule& a, const GridModule& b);

/// Conjugates every step map by seeded random invertible changes of basis:
/// step' = P_{t} * step * P_{s}^{-1}.
GridModule basis_twist(const GridModule& m, std::uint64_t seed);

Matrix random_invertible(const Field& field, std::size_t n, std::uint64_t& state);

}  // namespace blockdec
