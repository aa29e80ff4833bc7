#include "blockdec/grid_module.hpp"

#include <mutex>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace blockdec {

std::string GridPoint::to_string() const {
    std::ostringstream os;
    os << '(' << t[0] << ',' << t[1] << ',' << t[2] << ')';
    return os.str();
}

Grid::Grid(std::array<int, kAxes> cells) : cells_(cells) {
    for (int c : cells_) {
        if (c < 1) throw std::invalid_argument("grid cell counts must be >= 1");
    }
}

bool Grid::contains(const GridPoint& p) const {
    for (std::size_t i = 0; i < kAxes; ++i) {
        if (p[i] < 1 || p[i] > cells_[i]) return false;
    }
    return true;
}

std::size_t Grid::index(const GridPoint& p) const {
    if (!contains(p)) throw std::out_of_range("grid point " + p.to_string() + " outside the grid");
    return (static_cast<std::size_t>(p[0] - 1) * cells_[1] + (p[1] - 1)) * cells_[2] + (p[2] - 1);
}

GridPoint Grid::point(std::size_t index) const {
    GridPoint p;
    p[2] = static_cast<int>(index % cells_[2]) + 1;
    index /= cells_[2];
    p[1] = static_cast<int>(index % cells_[1]) + 1;
    index /= cells_[1];
    p[0] = static_cast<int>(index) + 1;
    return p;
}

std::vector<GridPoint> Grid::points() const {
    std::vector<GridPoint> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
    return out;
}

GridPoint Grid::reversed(const GridPoint& p) const {
    GridPoint q;
    for (std::size_t i = 0; i < kAxes; ++i) q[i] = cells_[i] + 1 - p[i];
    return q;
}

// ---------------------------------------------------------------------------

// Concurrent readers, idempotent inserts: two threads computing the same
// transition store equal matrices.
class TransitionCache {
public:
    std::optional<Matrix> find(std::uint64_t key) const {
        std::shared_lock lock(mutex_);
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }
    void insert(std::uint64_t key, const Matrix& m) {
        std::unique_lock lock(mutex_);
        entries_.try_emplace(key, m);
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::uint64_t, Matrix> entries_;
};

GridModule::GridModule() : GridModule(Field{}, Grid{}, {0}) {}

GridModule::GridModule(Field field, Grid grid, std::vector<std::size_t> dims)
    : field_(field), grid_(grid), dims_(std::move(dims)) {
    if (dims_.size() != grid_.size()) throw std::invalid_argument("dims do not cover the grid");
    for (std::size_t axis = 0; axis < kAxes; ++axis) {
        auto& steps = steps_[axis];
        steps.resize(grid_.size());
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            const GridPoint p = grid_.point(i);
            if (p[axis] < grid_.cells(axis)) {
                steps[i] = Matrix(field_, dims_[grid_.index(p.shifted(axis))], dims_[i]);
            }
        }
    }
    reset_cache();
}

GridModule GridModule::zero(Field field, Grid grid) {
    return GridModule(field, grid, std::vector<std::size_t>(grid.size(), 0));
}

std::size_t GridModule::total_dim() const {
    std::size_t s = 0;
    for (std::size_t d : dims_) s += d;
    return s;
}

bool GridModule::has_step(std::size_t axis, const GridPoint& from) const {
    return axis < kAxes && grid_.contains(from) && from[axis] < grid_.cells(axis);
}

const Matrix& GridModule::step(std::size_t axis, const GridPoint& from) const {
    if (!has_step(axis, from)) {
        throw std::out_of_range("no step map on axis " + std::to_string(axis + 1) + " at " + from.to_string());
    }
    return steps_[axis][grid_.index(from)];
}

void GridModule::set_step(std::size_t axis, const GridPoint& from, Matrix m) {
    if (!has_step(axis, from)) {
        throw std::out_of_range("no step map on axis " + std::to_string(axis + 1) + " at " + from.to_string());
    }
    const std::size_t rows = dim(from.shifted(axis));
    const std::size_t cols = dim(from);
    if (m.rows() != rows || m.cols() != cols) {
        throw std::invalid_argument("step map on axis " + std::to_string(axis + 1) + " at " +
                                    from.to_string() + " must be " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
    }
    if (m.field() != field_) throw std::invalid_argument("step map over a different field");
    steps_[axis][grid_.index(from)] = std::move(m);
    reset_cache();
}

void GridModule::reset_cache() { cache_ = std::make_shared<TransitionCache>(); }

Matrix GridModule::transition(const GridPoint& s, const GridPoint& t) const {
    if (!s.leq(t)) throw std::invalid_argument("transition requires " + s.to_string() + " <= " + t.to_string());
    if (s == t) return Matrix::identity(field_, dim(s));
    const std::uint64_t key = static_cast<std::uint64_t>(grid_.index(s)) * grid_.size() + grid_.index(t);
    if (auto hit = cache_->find(key)) return *hit;
    // The last step is taken along the highest axis that still moves, so the
    // full path runs along axis 0 first.
    std::size_t axis = kAxes - 1;
    while (s[axis] == t[axis]) --axis;
    const GridPoint before = t.shifted(axis, -1);
    Matrix result = step(axis, before) * transition(s, before);
    cache_->insert(key, result);
    return result;
}

bool operator==(const GridModule& a, const GridModule& b) {
    return a.field_ == b.field_ && a.grid_ == b.grid_ && a.dims_ == b.dims_ && a.steps_ == b.steps_;
}

// ---------------------------------------------------------------------------

ValidationReport validate(const GridModule& m) {
    ValidationReport report;
    const Grid& g = m.grid();
    for (const GridPoint& p : g.points()) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            if (!m.has_step(axis, p)) continue;
            const Matrix& s = m.step(axis, p);
            if (s.rows() != m.dim(p.shifted(axis)) || s.cols() != m.dim(p)) {
                report.issues.push_back({ValidationIssue::Kind::dimension_mismatch, p, axis, axis,
                                         "step map on axis " + std::to_string(axis + 1) + " at " +
                                             p.to_string() + " has shape " + std::to_string(s.rows()) +
                                             "x" + std::to_string(s.cols())});
            }
        }
    }
    if (!report.ok()) return report;
    for (const GridPoint& p : g.points()) {
        for (std::size_t i = 0; i < kAxes; ++i) {
            for (std::size_t j = i + 1; j < kAxes; ++j) {
                if (!m.has_step(i, p) || !m.has_step(j, p)) continue;
                const Matrix lhs = m.step(j, p.shifted(i)) * m.step(i, p);
                const Matrix rhs = m.step(i, p.shifted(j)) * m.step(j, p);
                if (lhs != rhs) {
                    report.issues.push_back({ValidationIssue::Kind::non_commuting_square, p, i, j,
                                             "square at " + p.to_string() + " in axes " +
                                                 std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                 " does not commute"});
                }
            }
        }
    }
    return report;
}

SliceModule restrict_slice(const GridModule& m, std::size_t axis, int index) {
    if (axis >= kAxes || index < 1 || index > m.grid().cells(axis)) {
        throw std::out_of_range("slice index " + std::to_string(index) + " out of range on axis " +
                                std::to_string(axis + 1));
    }
    std::array<int, kAxes> cells = m.grid().cells();
    cells[axis] = 1;
    const Grid g(cells);
    std::vector<std::size_t> dims(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) dims[i] = m.dim(g.point(i).with(axis, index));
    GridModule slice(m.field(), g, std::move(dims));
    for (const GridPoint& p : g.points()) {
        for (std::size_t a = 0; a < kAxes; ++a) {
            if (slice.has_step(a, p)) slice.set_step(a, p, m.step(a, p.with(axis, index)));
        }
    }
    SliceModule out;
    out.fixed_axis = axis;
    out.index = index;
    std::size_t k = 0;
    for (std::size_t a = 0; a < kAxes; ++a) {
        if (a != axis) out.free_axes[k++] = a;
    }
    out.module = std::move(slice);
    return out;
}

GridModule dualize(const GridModule& m) {
    const Grid& g = m.grid();
    std::vector<std::size_t> dims(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) dims[i] = m.dim(g.reversed(g.point(i)));
    GridModule out(m.field(), g, std::move(dims));
    for (const GridPoint& p : g.points()) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            if (!out.has_step(axis, p)) continue;
            // p -> p + e in the dual is the transpose of rev(p) - e -> rev(p).
            const GridPoint src = g.reversed(p).shifted(axis, -1);
            out.set_step(axis, p, m.step(axis, src).transpose());
        }
    }
    return out;
}

GridModule direct_sum(const GridModule& a, const GridModule& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("direct sum of modules on different grids");
    if (a.field() != b.field()) throw std::invalid_argument("direct sum of modules over different fields");
    const Grid& g = a.grid();
    std::vector<std::size_t> dims(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) dims[i] = a.dims()[i] + b.dims()[i];
    GridModule out(a.field(), g, std::move(dims));
    for (const GridPoint& p : g.points()) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            if (out.has_step(axis, p)) out.set_step(axis, p, a.step(axis, p).block_diagonal(b.step(axis, p)));
        }
    }
    return out;
}

Matrix random_invertible(const Field& field, std::size_t n, std::uint64_t& state) {
    std::mt19937_64 rng(state);
    for (;;) {
        Matrix candidate(field, n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) candidate(r, c) = static_cast<Scalar>(rng() % field.prime());
        state = rng();
        if (rank(candidate) == n) return candidate;
        rng.seed(state);
    }
}

GridModule basis_twist(const GridModule& m, std::uint64_t seed) {
    const Grid& g = m.grid();
    std::uint64_t state = seed;
    std::vector<Matrix> change(g.size());
    std::vector<Matrix> change_inv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        change[i] = random_invertible(m.field(), m.dims()[i], state);
        change_inv[i] = inverse(change[i]);
    }
    GridModule out(m.field(), g, m.dims());
    for (const GridPoint& p : g.points()) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            if (!m.has_step(axis, p)) continue;
            const std::size_t to = g.index(p.shifted(axis));
            out.set_step(axis, p, change[to] * m.step(axis, p) * change_inv[g.index(p)]);
        }
    }
    return out;
}

}  // namespace blockdec
