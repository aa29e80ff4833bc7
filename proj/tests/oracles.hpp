#pragma once

// Brute-force reference implementations over tiny prime fields. Nothing here
// calls the library's elimination code: spaces are enumerated element by
// element, so every answer is a set of explicit vectors.

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "blockdec/blocks.hpp"
#include "blockdec/grid_module.hpp"

namespace oracle {

using Vec = std::vector<int>;
using Mat = std::vector<Vec>;  // rows; a rows x cols matrix acts on column vectors
using VecSet = std::set<Vec>;

struct Map {
    int rows = 0;
    int cols = 0;
    Mat m;  // rows x cols
};

Map from_matrix(const blockdec::Matrix& m);
blockdec::Matrix to_matrix(const blockdec::Field& f, const Map& m);
Map compose(const Map& after, const Map& before, int p);
Map identity(int n);

std::vector<Vec> all_vectors(int n, int p);
Vec apply(const Map& m, const Vec& x, int p);
Vec add(const Vec& a, const Vec& b, int p);
Vec scale(const Vec& a, int c, int p);
Vec concat(const Vec& a, const Vec& b);

/// Every element of the span, by closure under adding multiples of generators.
VecSet span_set(const std::vector<Vec>& generators, int n, int p);
VecSet kernel_set(const Map& m, int p);
VecSet image_set(const Map& m, int p);
VecSet preimage_set(const Map& m, const VecSet& target, int p);
VecSet intersect(const VecSet& a, const VecSet& b);
VecSet sum(const VecSet& a, const VecSet& b, int p);
/// log_p of the size of a subspace given as a set.
int dim_of(const VecSet& s, int p);
VecSet as_set(const blockdec::Subspace& s);

// Square A -> B, A -> C, B -> D, C -> D.
struct Square {
    Map f1, f2, g1, g2;
    int a() const { return f1.cols; }
    int b() const { return f1.rows; }
    int c() const { return f2.rows; }
    int d() const { return g1.rows; }
};
/// Image of A in B+C equals {(b,c) : g1 b = g2 c}.
bool square_exact(const Square& s, int p);
/// Kernel of (b,c) -> g1 b + g2 c equals the relations {(f1 a, -f2 a)}.
bool square_pushout_injective(const Square& s, int p);

// A module read out of a GridModule's raw step matrices, with transitions
// composed axis 3 first (the library composes axis 1 first).
struct Module {
    int p = 2;
    std::array<int, 3> cells{1, 1, 1};
    std::vector<int> dims;
    std::array<std::vector<Map>, 3> steps;

    int index(const blockdec::GridPoint& t) const;
    int dim(const blockdec::GridPoint& t) const { return dims[index(t)]; }
    Map transition(blockdec::GridPoint s, const blockdec::GridPoint& t) const;
};
Module read(const blockdec::GridModule& m);

/// Corner of the cube spanned by s <= t selected by a 3-bit mask (bit i: t on axis i).
blockdec::GridPoint corner(const blockdec::GridPoint& s, const blockdec::GridPoint& t, int mask);
/// The cone map into the limit of the punctured cube is onto: every compatible
/// triple at the three singleton corners comes from the bottom corner.
bool cube_psi_surjective(const Module& m, const blockdec::GridPoint& s, const blockdec::GridPoint& t);
/// The map out of the colimit of the proper corners is injective: relations
/// from every comparable pair exhaust the kernel of the summed map to the top.
bool cube_phi_injective(const Module& m, const blockdec::GridPoint& s, const blockdec::GridPoint& t);

/// Cell sets of blocks, classified by set-theoretic predicates only.
struct CellBlock {
    std::set<std::array<int, 3>> cells;
    bool birth = false, death = false, layer = false;
    int layer_axis = -1;
};
std::vector<CellBlock> brute_blocks(const std::array<int, 3>& cells);
std::set<std::array<int, 3>> cell_set(const blockdec::Cuboid& c);

}  // namespace oracle
