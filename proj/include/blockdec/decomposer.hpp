#pragma once

// Block decomposition of strongly exact modules through the counting functor.
//
// For a cuboid C and a point t in C, every axis contributes images from just
// above / just below its lower cut and kernels towards just beyond / at its
// upper cut (AxisLimits). These combine into Im+-, Ker+- and V+- at t
// (BlockSections), and dim V+ - dim V- at the least point of a block is the
// multiplicity of that block in the decomposition.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "blockdec/blocks.hpp"
#include "blockdec/exactness.hpp"
#include "blockdec/grid_module.hpp"

namespace blockdec {

class NotStronglyExact : public std::runtime_error {
public:
    explicit NotStronglyExact(ExactnessReport report)
        : std::runtime_error("module is not 3-parameter strongly exact"), report_(std::move(report)) {}
    const ExactnessReport& report() const noexcept { return report_; }

private:
    ExactnessReport report_;
};

/// A computed object failed a property the decomposition guarantees for
/// strongly exact input.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A module whose strong exactness has been checked exhaustively.
class ExactModule {
public:
    /// Throws NotStronglyExact (carrying the report) or std::invalid_argument
    /// for an invalid module.
    static ExactModule certify(GridModule m);

    const GridModule& module() const noexcept { return module_; }

private:
    explicit ExactModule(GridModule m) : module_(std::move(m)) {}
    GridModule module_;
};

struct AxisLimits {
    Subspace im_plus;    // image from the first cell above the lower cut
    Subspace im_minus;   // image from the last cell below the lower cut (0 if none)
    Subspace ker_plus;   // kernel towards the first cell beyond the upper cut (all if none)
    Subspace ker_minus;  // kernel towards the last cell within the upper cut
};

/// Throws std::invalid_argument unless interval.a < t[axis] <= interval.b.
AxisLimits axis_limits(const GridModule& m, std::size_t axis, const AxisInterval& interval, const GridPoint& t);

struct BlockSections {
    std::array<AxisLimits, kAxes> axes;
    Subspace im_plus;
    Subspace im_minus;
    Subspace ker_plus;
    Subspace ker_minus;
    Subspace ker_plus_meet;  // intersection of the per-axis ker_plus
    Subspace v_plus;
    Subspace v_minus;
    Subspace f_plus;
    Subspace f_minus;

    std::ptrdiff_t count() const noexcept {
        return static_cast<std::ptrdiff_t>(v_plus.dim()) - static_cast<std::ptrdiff_t>(v_minus.dim());
    }
};

/// Throws std::invalid_argument unless c contains t.
BlockSections block_sections(const GridModule& m, const Cuboid& c, const GridPoint& t);

/// dim V+ - dim V- at the least point of the block.
std::size_t counting_dim(const ExactModule& m, const Block& b);

struct Submodule {
    std::optional<Block> block;
    GridPoint anchor;             // min corner of the block
    Subspace generator;           // the complement chosen at the anchor
    std::vector<Subspace> spaces; // indexed by grid index; zero outside the block

    const Subspace& at(const Grid& g, const GridPoint& p) const { return spaces[g.index(p)]; }
};

/// The explicit copy of the block's summand inside m. With `take`, only the
/// first `take` generator vectors are used; throws InternalInconsistency if
/// fewer are available or a postcondition fails.
Submodule extract_submodule(const ExactModule& m, const Block& b, std::optional<std::size_t> take = std::nullopt);

/// Pointwise Im+ cap Ker- for the full grid: the death-block part of m.
Submodule tilde_module(const ExactModule& m);

struct DecompositionEntry {
    Block block;
    std::size_t multiplicity;

    friend bool operator==(const DecompositionEntry&, const DecompositionEntry&) = default;
};

struct ConservationRow {
    GridPoint at;
    std::size_t dim = 0;
    std::size_t counted = 0;
};

struct DecompositionReport {
    std::vector<DecompositionEntry> entries;  // sorted by block
    bool verified = false;
    std::vector<ConservationRow> conservation;
};

/// Counting functor over every block plus the mandatory conservation check.
/// Throws NotStronglyExact.
DecompositionReport decompose(const GridModule& m);
DecompositionReport decompose(const ExactModule& m);

/// Sum over entries of mult * [t in B], compared against dim m_t everywhere.
std::vector<ConservationRow> conservation_table(const GridModule& m, const std::vector<DecompositionEntry>& entries);

/// Extracts every listed submodule with its listed multiplicity and checks that
/// their bases stack to a basis of m_t at every point.
bool verify_direct_sum(const ExactModule& m, const DecompositionReport& report);

/// The tilde module stacked with all B1, B2, B3 and B5 submodules forms a basis
/// of m_t at every point.
bool tilde_split_holds(const ExactModule& m, const DecompositionReport& report);

}  // namespace blockdec
