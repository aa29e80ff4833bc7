#include "blockdec/generator.hpp"

#include <algorithm>
#include <random>

namespace blockdec {

GridModule block_module(const Field& field, const Grid& g, const Cuboid& c) {
    if (!c.valid_on(g)) throw std::invalid_argument("cuboid does not fit the grid");
    std::vector<std::size_t> dims(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) dims[i] = c.contains(g.point(i)) ? 1 : 0;
    GridModule m(field, g, std::move(dims));
    for (const GridPoint& p : g.points()) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            if (m.has_step(axis, p) && c.contains(p) && c.contains(p.shifted(axis))) {
                m.set_step(axis, p, Matrix::identity(field, 1));
            }
        }
    }
    return m;
}

GridModule sum_of_blocks(const Field& field, const Grid& g, const std::vector<DecompositionEntry>& entries) {
    GridModule out = GridModule::zero(field, g);
    for (const auto& e : entries) {
        const GridModule one = block_module(field, g, e.block);
        for (std::size_t k = 0; k < e.multiplicity; ++k) out = direct_sum(out, one);
    }
    return out;
}

GroundTruth random_block_sum(const Field& field, const Grid& g, std::uint64_t seed, std::size_t max_blocks,
                             std::size_t max_mult) {
    GroundTruth truth{GridModule::zero(field, g), {}};
    if (max_blocks == 0 || max_mult == 0) return truth;
    std::mt19937_64 rng(seed);
    std::vector<Block> pool = enumerate_blocks(g);
    const std::size_t count = std::min<std::size_t>(1 + rng() % max_blocks, pool.size());
    // Partial Fisher-Yates: the first `count` entries become a uniform sample.
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng() % (pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    for (std::size_t i = 0; i < count; ++i) {
        truth.entries.push_back({pool[i], 1 + static_cast<std::size_t>(rng() % max_mult)});
    }
    std::sort(truth.entries.begin(), truth.entries.end(),
              [](const auto& x, const auto& y) { return x.block < y.block; });
    truth.module = sum_of_blocks(field, g, truth.entries);
    return truth;
}

GridModule paper_example(const Field& field) {
    const Grid g({2, 2, 2});
    std::vector<std::size_t> dims(g.size(), 0);
    auto set_dim = [&](GridPoint p, std::size_t d) { dims[g.index(p)] = d; };
    set_dim({{2, 2, 1}}, 1);
    set_dim({{2, 1, 2}}, 1);
    set_dim({{1, 2, 2}}, 1);
    set_dim({{2, 2, 2}}, 2);
    GridModule m(field, g, std::move(dims));
    m.set_step(2, {{2, 2, 1}}, Matrix::from_rows(field, {{1}, {1}}));  // h
    m.set_step(1, {{2, 1, 2}}, Matrix::from_rows(field, {{0}, {1}}));  // g
    m.set_step(0, {{1, 2, 2}}, Matrix::from_rows(field, {{1}, {0}}));  // f
    return m;
}

namespace {

// Linear constraints on a perturbation E of step(axis, p) that keep the
// adjacent squares commuting: step_j(p + e_axis) E = 0 for the square at p and
// E step_j(p - e_j) = 0 for the square at p - e_j. Returns the solution space
// with E flattened row-major.
Subspace admissible_perturbations(const GridModule& m, std::size_t axis, const GridPoint& p) {
    const Matrix& x = m.step(axis, p);
    const std::size_t r = x.rows();
    const std::size_t c = x.cols();
    Matrix system(m.field(), 0, r * c);
    for (std::size_t j = 0; j < kAxes; ++j) {
        if (j == axis) continue;
        if (m.has_step(j, p)) {
            const Matrix& after = m.step(j, p.shifted(axis));  // k x r
            Matrix eq(m.field(), after.rows() * c, r * c);
            for (std::size_t u = 0; u < after.rows(); ++u)
                for (std::size_t v = 0; v < c; ++v)
                    for (std::size_t w = 0; w < r; ++w) eq(u * c + v, w * c + v) = after(u, w);
            system = system.vstack(eq);
        }
        if (p[j] > 1) {
            const Matrix& before = m.step(j, p.shifted(j, -1));  // c x l
            Matrix eq(m.field(), r * before.cols(), r * c);
            for (std::size_t u = 0; u < r; ++u)
                for (std::size_t v = 0; v < before.cols(); ++v)
                    for (std::size_t w = 0; w < c; ++w) eq(u * before.cols() + v, u * c + w) = before(w, v);
            system = system.vstack(eq);
        }
    }
    return kernel_basis(system);
}

}  // namespace

GridModule perturb(const GridModule& m, std::uint64_t seed, std::size_t budget) {
    const Grid& g = m.grid();
    std::vector<std::pair<std::size_t, GridPoint>> candidates;
    for (const GridPoint& p : g.points()) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            if (m.has_step(axis, p) && !m.step(axis, p).empty()) candidates.emplace_back(axis, p);
        }
    }
    if (candidates.empty()) return m;

    std::mt19937_64 rng(seed);
    const Scalar p = m.field().prime();
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        const auto& [axis, at] = candidates[rng() % candidates.size()];
        const Subspace space = admissible_perturbations(m, axis, at);
        if (space.is_zero()) continue;
        const Matrix& x = m.step(axis, at);
        Vector flat(x.rows() * x.cols(), 0);
        bool nonzero = false;
        while (!nonzero) {
            std::fill(flat.begin(), flat.end(), 0);
            for (std::size_t i = 0; i < space.dim(); ++i) {
                const Scalar coeff = static_cast<Scalar>(rng() % p);
                for (std::size_t k = 0; k < flat.size(); ++k) {
                    flat[k] = m.field().add(flat[k], m.field().mul(coeff, space.basis()(i, k)));
                }
            }
            nonzero = std::any_of(flat.begin(), flat.end(), [](Scalar s) { return s != 0; });
        }
        GridModule out = m;
        out.set_step(axis, at, x + Matrix(m.field(), x.rows(), x.cols(), std::move(flat)));
        if (!validate(out).ok()) {
            throw std::logic_error("perturbation broke commutativity");
        }
        return out;
    }
    throw PerturbationExhausted("no commuting perturbation found after " + std::to_string(budget) + " draws");
}

}  // namespace blockdec
