#pragma once

// Ground-truth modules for end-to-end testing: block modules, seeded random
// block sums, the 2x2x2 counterexample, and commutativity-preserving
// perturbations for fuzzing.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "blockdec/blocks.hpp"
#include "blockdec/decomposer.hpp"
#include "blockdec/grid_module.hpp"

namespace blockdec {

struct GroundTruth {
    GridModule module;
    std::vector<DecompositionEntry> entries;  // sorted by block
};

/// The field on the cuboid with identity maps inside and zero maps across its
/// boundary. Throws std::invalid_argument if the cuboid does not fit the grid.
GridModule block_module(const Field& field, const Grid& g, const Cuboid& c);
inline GridModule block_module(const Field& field, const Grid& g, const Block& b) {
    return block_module(field, g, b.box());
}

/// Direct sum of block modules with multiplicity.
GridModule sum_of_blocks(const Field& field, const Grid& g, const std::vector<DecompositionEntry>& entries);

/// Draws between 1 and max_blocks distinct blocks (none when max_blocks is 0)
/// uniformly from enumerate_blocks, each with a multiplicity in [1, max_mult].
GroundTruth random_block_sum(const Field& field, const Grid& g, std::uint64_t seed, std::size_t max_blocks,
                             std::size_t max_mult);

/// The 2x2x2 module with 0 below the three middle-height corners, k at the
/// three corners two steps up, k^2 at the top, entering through f=(1,0),
/// g=(0,1), h=(1,1). Commutative and slice-exact but not block-decomposable.
GridModule paper_example(const Field& field);

class PerturbationExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adds a random nonzero perturbation to one randomly chosen step map,
/// restricted to perturbations that keep every adjacent square commuting.
/// Step maps admitting none are discarded and another is drawn. A module with
/// no step-map entries is returned unchanged. Throws PerturbationExhausted
/// after `budget` discarded draws.
GridModule perturb(const GridModule& m, std::uint64_t seed, std::size_t budget = 64);

}  // namespace blockdec
