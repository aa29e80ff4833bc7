#include "blockdec/exactness.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace blockdec {

namespace {

void require_commuting(const SquareDiagram& sq) {
    if (!sq.commutes()) throw std::invalid_argument("square diagram does not commute");
}

// Total dimension and per-corner offsets for a list of cube corners.
struct Layout {
    std::array<std::size_t, CubeDiagram::kCorners> offset{};
    std::size_t total = 0;
};

Layout layout(const CubeDiagram& c, const std::vector<std::size_t>& corners) {
    Layout l;
    for (std::size_t k : corners) {
        l.offset[k] = l.total;
        l.total += c.dim(k);
    }
    return l;
}

// Covering relations T -> T + {i} of the cube restricted to `keep`.
std::vector<std::pair<std::size_t, std::size_t>> covers(bool (*keep)(std::size_t)) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 0; k < CubeDiagram::kCorners; ++k) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            const std::size_t bit = std::size_t{1} << axis;
            if ((k & bit) != 0) continue;
            if (keep(k) && keep(k | bit)) out.emplace_back(k, axis);
        }
    }
    return out;
}

}  // namespace

bool SquareDiagram::commutes() const {
    if (f1.cols() != f2.cols() || g1.cols() != f1.rows() || g2.cols() != f2.rows() || g1.rows() != g2.rows()) {
        return false;
    }
    return g1 * f1 == g2 * f2;
}

SquareDiagram SquareDiagram::from_module(const GridModule& m, const GridPoint& lo, const GridPoint& hi,
                                         std::size_t axis_i, std::size_t axis_j) {
    const GridPoint b = lo.with(axis_i, hi[axis_i]);
    const GridPoint c = lo.with(axis_j, hi[axis_j]);
    const GridPoint d = b.with(axis_j, hi[axis_j]);
    return SquareDiagram{m.transition(lo, b), m.transition(lo, c), m.transition(b, d), m.transition(c, d)};
}

bool square_exact(const SquareDiagram& sq) {
    require_commuting(sq);
    const Subspace image = image_basis(sq.f1.vstack(sq.f2));
    const Subspace kernel = kernel_basis(sq.g1.hstack(sq.g2.scaled(sq.g2.field().neg(1))));
    return image == kernel;
}

bool square_pullback_surjective(const SquareDiagram& sq) {
    require_commuting(sq);
    const Subspace pullback = kernel_basis(sq.g1.hstack(sq.g2.scaled(sq.g2.field().neg(1))));
    // Coordinates in an rref basis are the entries at the pivot columns.
    const Matrix f = sq.f1.vstack(sq.f2);
    Matrix coords(f.field(), pullback.dim(), f.cols());
    for (std::size_t i = 0; i < pullback.dim(); ++i)
        for (std::size_t c = 0; c < f.cols(); ++c) coords(i, c) = f(pullback.pivots()[i], c);
    return rank(coords) == pullback.dim();
}

bool square_pushout_injective(const SquareDiagram& sq) {
    require_commuting(sq);
    // Pushout = (B (+) C) / {(f1 a, -f2 a)}; the induced map has the rank of [g1 | g2].
    const Matrix relations = sq.f1.vstack(sq.f2.scaled(sq.f2.field().neg(1)));
    const std::size_t pushout_dim = sq.dim_b() + sq.dim_c() - rank(relations);
    return rank(sq.g1.hstack(sq.g2)) == pushout_dim;
}

// ---------------------------------------------------------------------------

CubeDiagram::CubeDiagram(Field field, std::array<std::size_t, kCorners> dims,
                         std::array<std::array<Matrix, kAxes>, kCorners> edges)
    : field_(field), dims_(dims), edges_(std::move(edges)) {
    for (std::size_t k = 0; k < kCorners; ++k) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            const std::size_t bit = std::size_t{1} << axis;
            if ((k & bit) != 0) continue;
            const Matrix& e = edges_[k][axis];
            if (e.rows() != dims_[k | bit] || e.cols() != dims_[k]) {
                throw std::invalid_argument("cube edge shape does not match corner dimensions");
            }
        }
    }
}

CubeDiagram CubeDiagram::from_module(const GridModule& m, const GridPoint& lo, const GridPoint& hi) {
    std::array<GridPoint, kCorners> corner;
    std::array<std::size_t, kCorners> dims{};
    for (std::size_t k = 0; k < kCorners; ++k) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) corner[k][axis] = (k >> axis) & 1U ? hi[axis] : lo[axis];
        dims[k] = m.dim(corner[k]);
    }
    std::array<std::array<Matrix, kAxes>, kCorners> edges;
    for (std::size_t k = 0; k < kCorners; ++k) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            const std::size_t bit = std::size_t{1} << axis;
            if ((k & bit) == 0) edges[k][axis] = m.transition(corner[k], corner[k | bit]);
        }
    }
    return CubeDiagram(m.field(), dims, std::move(edges));
}

const Matrix& CubeDiagram::edge(std::size_t corner, std::size_t axis) const {
    if (corner >= kCorners || axis >= kAxes || ((corner >> axis) & 1U) != 0) {
        throw std::out_of_range("no such cube edge");
    }
    return edges_[corner][axis];
}

Matrix CubeDiagram::path(std::size_t from, std::size_t to) const {
    if ((from & ~to) != 0 || to >= kCorners) throw std::invalid_argument("cube path must go upward");
    Matrix acc = Matrix::identity(field_, dims_[from]);
    std::size_t k = from;
    for (std::size_t axis = 0; axis < kAxes; ++axis) {
        const std::size_t bit = std::size_t{1} << axis;
        if ((to & bit) != 0 && (k & bit) == 0) {
            acc = edges_[k][axis] * acc;
            k |= bit;
        }
    }
    return acc;
}

bool CubeDiagram::commutes() const {
    for (std::size_t k = 0; k < kCorners; ++k) {
        for (std::size_t i = 0; i < kAxes; ++i) {
            for (std::size_t j = i + 1; j < kAxes; ++j) {
                const std::size_t bi = std::size_t{1} << i;
                const std::size_t bj = std::size_t{1} << j;
                if ((k & bi) != 0 || (k & bj) != 0) continue;
                if (edges_[k | bi][j] * edges_[k][i] != edges_[k | bj][i] * edges_[k][j]) return false;
            }
        }
    }
    return true;
}

RankCheck psi_rank_check(const CubeDiagram& c) {
    if (!c.commutes()) throw std::invalid_argument("cube diagram does not commute");
    const std::vector<std::size_t> upper{1, 2, 3, 4, 5, 6, 7};
    const Layout cols = layout(c, upper);
    const auto arrows = covers([](std::size_t k) { return k != 0; });

    // E: (+) upper -> (+) arrows, value at target minus transported value at source.
    std::size_t rows = 0;
    for (auto [k, axis] : arrows) rows += c.dim(k | (std::size_t{1} << axis));
    Matrix constraint(c.field(), rows, cols.total);
    std::size_t r = 0;
    for (auto [k, axis] : arrows) {
        const std::size_t target = k | (std::size_t{1} << axis);
        constraint.set_block(r, cols.offset[target], Matrix::identity(c.field(), c.dim(target)));
        constraint.set_block(r, cols.offset[k], c.edge(k, axis).scaled(c.field().neg(1)));
        r += c.dim(target);
    }
    const std::size_t limit_dim = cols.total - rank(constraint);

    Matrix psi(c.field(), cols.total, c.dim(0));
    for (std::size_t k : upper) psi.set_block(cols.offset[k], 0, c.path(0, k));
    return {rank(psi), limit_dim};
}

RankCheck phi_rank_check(const CubeDiagram& c) {
    if (!c.commutes()) throw std::invalid_argument("cube diagram does not commute");
    const std::vector<std::size_t> lower{0, 1, 2, 3, 4, 5, 6};
    const Layout rows = layout(c, lower);
    const auto arrows = covers([](std::size_t k) { return k != 7; });

    // D: (+) arrows -> (+) lower, identifying x at the source with its image at the target.
    std::size_t cols = 0;
    for (auto [k, axis] : arrows) cols += c.dim(k);
    Matrix relations(c.field(), rows.total, cols);
    std::size_t col = 0;
    for (auto [k, axis] : arrows) {
        const std::size_t target = k | (std::size_t{1} << axis);
        relations.set_block(rows.offset[k], col, Matrix::identity(c.field(), c.dim(k)));
        relations.set_block(rows.offset[target], col, c.edge(k, axis).scaled(c.field().neg(1)));
        col += c.dim(k);
    }

    Matrix summed(c.field(), c.dim(7), rows.total);
    for (std::size_t k : lower) summed.set_block(0, rows.offset[k], c.path(k, 7));
    const std::size_t kernel_dim = rows.total - rank(summed);
    return {rank(relations), kernel_dim};
}

std::string to_string(CubeFailure::Which w) { return w == CubeFailure::Which::psi ? "psi" : "phi"; }

// ---------------------------------------------------------------------------

std::vector<SquareFailure> slice_strongly_exact(const SliceModule& s, CheckMode mode) {
    std::vector<SquareFailure> failures;
    const GridModule& m = s.module;
    const auto [ai, aj] = s.free_axes;
    const auto points = m.grid().points();
    for (const GridPoint& lo : points) {
        for (const GridPoint& hi : points) {
            if (hi[ai] <= lo[ai] || hi[aj] <= lo[aj]) continue;
            if (mode == CheckMode::unit_cells && (hi[ai] != lo[ai] + 1 || hi[aj] != lo[aj] + 1)) continue;
            const SquareDiagram sq = SquareDiagram::from_module(m, lo, hi, ai, aj);
            if (!square_exact(sq)) {
                failures.push_back({s.fixed_axis, s.index, s.parent_point(lo), s.parent_point(hi)});
            }
        }
    }
    return failures;
}

ExactnessReport check_strong_exactness(const GridModule& m, CheckMode mode) {
    const ValidationReport v = validate(m);
    if (!v.ok()) throw std::invalid_argument("module is not a valid functor: " + v.issues.front().message);

    ExactnessReport report;
    report.unit_cells_only = mode == CheckMode::unit_cells;
    for (std::size_t axis = 0; axis < kAxes; ++axis) {
        for (int index = 1; index <= m.grid().cells(axis); ++index) {
            auto f = slice_strongly_exact(restrict_slice(m, axis, index), mode);
            report.slice_failures.insert(report.slice_failures.end(), f.begin(), f.end());
        }
    }

    const auto points = m.grid().points();
    for (const GridPoint& s : points) {
        for (const GridPoint& t : points) {
            if (t[0] <= s[0] || t[1] <= s[1] || t[2] <= s[2]) continue;
            if (mode == CheckMode::unit_cells && t != GridPoint{{s[0] + 1, s[1] + 1, s[2] + 1}}) continue;
            const CubeDiagram cube = CubeDiagram::from_module(m, s, t);
            if (const RankCheck r = psi_rank_check(cube); !r.holds()) {
                report.cube_failures.push_back({s, t, CubeFailure::Which::psi, r.found, r.required});
            }
            if (const RankCheck r = phi_rank_check(cube); !r.holds()) {
                report.cube_failures.push_back({s, t, CubeFailure::Which::phi, r.found, r.required});
            }
        }
    }

    std::sort(report.slice_failures.begin(), report.slice_failures.end(), [](const auto& x, const auto& y) {
        return std::tie(x.lower, x.upper, x.axis, x.index) < std::tie(y.lower, y.upper, y.axis, y.index);
    });
    std::sort(report.cube_failures.begin(), report.cube_failures.end(), [](const auto& x, const auto& y) {
        return std::tie(x.s, x.t, x.which) < std::tie(y.s, y.t, y.which);
    });
    report.overall = report.slice_failures.empty() && report.cube_failures.empty();
    return report;
}

}  // namespace blockdec
