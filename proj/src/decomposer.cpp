#include "blockdec/decomposer.hpp"

#include <algorithm>

namespace blockdec {

namespace {

Subspace meet(const Subspace& a, const Subspace& b, const Subspace& c) {
    return subspace_intersect(subspace_intersect(a, b), c);
}

// Stacks the given pointwise families and checks they form a basis of m_t.
bool stacks_to_basis(const GridModule& m, const std::vector<const Submodule*>& parts) {
    const Grid& g = m.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::size_t d = m.dims()[i];
        Matrix stacked(m.field(), 0, d);
        for (const Submodule* part : parts) {
            const Subspace& s = part->spaces[i];
            if (s.is_zero()) continue;
            stacked = stacked.vstack(s.basis());
        }
        if (stacked.rows() != d || rank(stacked) != d) return false;
    }
    return true;
}

}  // namespace

ExactModule ExactModule::certify(GridModule m) {
    ExactnessReport report = check_strong_exactness(m, CheckMode::exhaustive);
    if (!report.overall) throw NotStronglyExact(std::move(report));
    return ExactModule(std::move(m));
}

AxisLimits axis_limits(const GridModule& m, std::size_t axis, const AxisInterval& interval, const GridPoint& t) {
    if (!interval.contains(t[axis])) {
        throw std::invalid_argument("point " + t.to_string() + " lies outside the interval on axis " +
                                    std::to_string(axis + 1));
    }
    const Field& f = m.field();
    const std::size_t d = m.dim(t);
    const int top = m.grid().cells(axis);
    AxisLimits out;
    out.im_plus = interval.a + 1 == t[axis] ? Subspace::full(f, d)
                                            : image_basis(m.transition(t.with(axis, interval.a + 1), t));
    out.im_minus = interval.a >= 1 ? image_basis(m.transition(t.with(axis, interval.a), t)) : Subspace::zero(f, d);
    out.ker_plus = interval.b < top ? kernel_basis(m.transition(t, t.with(axis, interval.b + 1)))
                                    : Subspace::full(f, d);
    out.ker_minus = kernel_basis(m.transition(t, t.with(axis, interval.b)));
    return out;
}

BlockSections block_sections(const GridModule& m, const Cuboid& c, const GridPoint& t) {
    if (!c.contains(t)) throw std::invalid_argument("point " + t.to_string() + " lies outside the cuboid");
    BlockSections s;
    for (std::size_t axis = 0; axis < kAxes; ++axis) s.axes[axis] = axis_limits(m, axis, c.iv[axis], t);
    const auto& [x, y, z] = s.axes;

    s.im_plus = meet(x.im_plus, y.im_plus, z.im_plus);
    s.im_minus = subspace_sum(subspace_sum(meet(x.im_minus, y.im_plus, z.im_plus),
                                           meet(x.im_plus, y.im_minus, z.im_plus)),
                              meet(x.im_plus, y.im_plus, z.im_minus));
    s.ker_minus = subspace_sum(subspace_sum(x.ker_minus, y.ker_minus), z.ker_minus);
    s.ker_plus_meet = meet(x.ker_plus, y.ker_plus, z.ker_plus);
    s.ker_plus = subspace_sum(s.ker_minus, s.ker_plus_meet);

    s.v_plus = subspace_intersect(s.im_plus, s.ker_plus);
    s.v_minus = subspace_sum(subspace_intersect(s.im_plus, s.ker_minus), subspace_intersect(s.im_minus, s.ker_plus));
    s.f_plus = subspace_sum(s.im_minus, s.v_plus);
    s.f_minus = subspace_sum(s.im_minus, s.v_minus);
    return s;
}

std::size_t counting_dim(const ExactModule& m, const Block& b) {
    const BlockSections s = block_sections(m.module(), b.box(), b.min_corner());
    if (s.count() < 0) throw InternalInconsistency("V- is larger than V+ for block " + b.to_string());
    return static_cast<std::size_t>(s.count());
}

Submodule extract_submodule(const ExactModule& em, const Block& b, std::optional<std::size_t> take) {
    const GridModule& m = em.module();
    const Grid& g = m.grid();
    const GridPoint t0 = b.min_corner();
    const BlockSections s = block_sections(m, b.box(), t0);

    Subspace generator;
    if (b.kind() == BlockClass::birth) {
        generator = complement_in(s.v_minus, s.v_plus);
    } else {
        Subspace k_plus;
        if (b.kind() == BlockClass::death) {
            k_plus = s.ker_plus_meet;
        } else {
            const AxisLimits& layer = s.axes[b.layer_axis()];
            k_plus = subspace_intersect(layer.im_plus, layer.ker_plus);
        }
        generator = complement_in(subspace_intersect(s.v_minus, k_plus), k_plus);
    }

    const std::size_t expected = static_cast<std::size_t>(std::max<std::ptrdiff_t>(s.count(), 0));
    if (generator.dim() != expected || !s.v_plus.contains(generator) ||
        !subspace_intersect(generator, s.v_minus).is_zero()) {
        throw InternalInconsistency("generator for block " + b.to_string() + " is not a complement of V- in V+");
    }
    if (take) {
        if (*take > generator.dim()) {
            throw InternalInconsistency("block " + b.to_string() + " has only " + std::to_string(generator.dim()) +
                                        " independent generators, " + std::to_string(*take) + " requested");
        }
        generator = Subspace::row_span(generator.basis().select_rows(0, *take));
    }

    Submodule out;
    out.block = b;
    out.anchor = t0;
    out.generator = generator;
    out.spaces.reserve(g.size());
    for (const GridPoint& p : g.points()) {
        if (!b.contains(p)) {
            out.spaces.push_back(Subspace::zero(m.field(), m.dim(p)));
            continue;
        }
        Subspace here = apply_to_subspace(m.transition(t0, p), generator);
        if (here.dim() != generator.dim()) {
            throw InternalInconsistency("block " + b.to_string() + " loses rank at " + p.to_string());
        }
        out.spaces.push_back(std::move(here));
    }
    // Leaving the block through any single step must kill the submodule.
    for (const GridPoint& p : g.points()) {
        if (!b.contains(p)) continue;
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            if (!m.has_step(axis, p) || b.contains(p.shifted(axis))) continue;
            if (!apply_to_subspace(m.step(axis, p), out.at(g, p)).is_zero()) {
                throw InternalInconsistency("block " + b.to_string() + " survives the step out of " + p.to_string() +
                                            " on axis " + std::to_string(axis + 1));
            }
        }
    }
    return out;
}

Submodule tilde_module(const ExactModule& em) {
    const GridModule& m = em.module();
    const Grid& g = m.grid();
    const Cuboid everything = Cuboid::full(g);
    Submodule out;
    out.anchor = GridPoint{};
    out.spaces.reserve(g.size());
    for (const GridPoint& p : g.points()) {
        const BlockSections s = block_sections(m, everything, p);
        out.spaces.push_back(subspace_intersect(s.im_plus, s.ker_minus));
    }
    out.generator = out.spaces.front();
    for (const GridPoint& p : g.points()) {
        for (std::size_t axis = 0; axis < kAxes; ++axis) {
            if (!m.has_step(axis, p)) continue;
            if (!out.at(g, p.shifted(axis)).contains(apply_to_subspace(m.step(axis, p), out.at(g, p)))) {
                throw InternalInconsistency("tilde module is not closed under the step at " + p.to_string());
            }
        }
    }
    return out;
}

std::vector<ConservationRow> conservation_table(const GridModule& m, const std::vector<DecompositionEntry>& entries) {
    std::vector<ConservationRow> rows;
    for (const GridPoint& p : m.grid().points()) {
        std::size_t counted = 0;
        for (const auto& e : entries) {
            if (e.block.contains(p)) counted += e.multiplicity;
        }
        rows.push_back({p, m.dim(p), counted});
    }
    return rows;
}

DecompositionReport decompose(const GridModule& m) { return decompose(ExactModule::certify(m)); }

DecompositionReport decompose(const ExactModule& em) {
    DecompositionReport report;
    for (const Block& b : enumerate_blocks(em.module().grid())) {
        const std::size_t n = counting_dim(em, b);
        if (n > 0) report.entries.push_back({b, n});
    }
    report.conservation = conservation_table(em.module(), report.entries);
    report.verified = std::all_of(report.conservation.begin(), report.conservation.end(),
                                  [](const ConservationRow& r) { return r.dim == r.counted; });
    return report;
}

bool verify_direct_sum(const ExactModule& em, const DecompositionReport& report) {
    const Grid& g = em.module().grid();
    std::vector<Submodule> parts;
    try {
        for (const auto& e : report.entries) {
            if (!e.block.box().valid_on(g)) return false;
            parts.push_back(extract_submodule(em, e.block, e.multiplicity));
        }
    } catch (const InternalInconsistency&) {
        return false;
    }
    std::vector<const Submodule*> ptrs;
    for (const auto& p : parts) ptrs.push_back(&p);
    return stacks_to_basis(em.module(), ptrs);
}

bool tilde_split_holds(const ExactModule& em, const DecompositionReport& report) {
    std::vector<Submodule> parts;
    parts.push_back(tilde_module(em));
    try {
        for (const auto& e : report.entries) {
            if (e.block.partition_tag() == PartitionTag::B4) continue;
            parts.push_back(extract_submodule(em, e.block, e.multiplicity));
        }
    } catch (const InternalInconsistency&) {
        return false;
    }
    std::vector<const Submodule*> ptrs;
    for (const auto& p : parts) ptrs.push_back(&p);
    return stacks_to_basis(em.module(), ptrs);
}

}  // namespace blockdec
