#pragma once

// Property suites shared by the unit tests and the acceptance binary. Each
// suite walks every applicable tuple and tallies the outcomes.

#include <cstdint>
#include <random>
#include <string>

#include "blockdec/decomposer.hpp"
#include "blockdec/exactness.hpp"
#include "blockdec/generator.hpp"

namespace props {

struct Tally {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void record(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures++ == 0) first_failure = what;
    }
    void merge(const Tally& other) {
        checks += other.checks;
        if (other.failures && !failures) first_failure = other.first_failure;
        failures += other.failures;
    }
    bool ok() const { return failures == 0; }
};

/// Image of a transition is the meet of the three single-axis-relaxed images;
/// its kernel is the sum of the three single-axis kernels. All s <= t.
Tally image_kernel_factorization(const blockdec::GridModule& m);
/// Transport of per-axis image meets and kernel sums, all 8 sign triples,
/// every cuboid and every s <= t inside it.
Tally axis_transport(const blockdec::GridModule& m);
/// Transport of the combined Im/Ker/V sections of every cuboid.
Tally section_transport(const blockdec::GridModule& m);
/// Kernel along one axis lies in the images along the other two, with the
/// signs fixed by which sides of the cuts are empty.
Tally kernel_in_images(const blockdec::GridModule& m);
/// dim V+ - dim V- is the same at every point of every block.
Tally counting_constancy(const blockdec::GridModule& m);

/// Random grid with 1..max_cells cells per axis.
blockdec::Grid random_grid(std::mt19937_64& rng, int max_cells);

/// Random commuting square; the square is exact when the columns of the
/// initial maps happen to span the pullback, so both outcomes occur.
blockdec::SquareDiagram random_commuting_square(const blockdec::Field& f, std::mt19937_64& rng, int max_dim);


/// Random dims in [0, max_dim] with zero maps, then `rounds` successive
/// commuting perturbations: a generic valid module, usually not exact.
blockdec::GridModule random_commuting_module(const blockdec::Field& f, const blockdec::Grid& g, std::uint64_t seed,
                                             int max_dim, int rounds);

}  // namespace props
