#pragma once

// Cuts, cuboids and blocks on a finite cell grid.
//
// A cut on axis i is a breakpoint position in [0, m_i]: cells 1..pos form the
// lower part and pos+1..m_i the upper part. An AxisInterval (a, b) pairs a lower
// and an upper cut and denotes cells a+1..b.

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "blockdec/grid_module.hpp"

namespace blockdec {

struct Cut {
    std::size_t axis = 0;
    int position = 0;

    bool lower_empty() const noexcept { return position == 0; }
    bool upper_empty(const Grid& g) const { return position == g.cells(axis); }
};

struct AxisInterval {
    int a = 0;
    int b = 1;

    bool contains(int cell) const noexcept { return a < cell && cell <= b; }
    friend auto operator<=>(const AxisInterval&, const AxisInterval&) = default;
};

/// A product of three axis intervals.
struct Cuboid {
    std::array<AxisInterval, kAxes> iv;

    bool contains(const GridPoint& t) const {
        return iv[0].contains(t[0]) && iv[1].contains(t[1]) && iv[2].contains(t[2]);
    }
    GridPoint min_corner() const { return GridPoint{{iv[0].a + 1, iv[1].a + 1, iv[2].a + 1}}; }
    GridPoint max_corner() const { return GridPoint{{iv[0].b, iv[1].b, iv[2].b}}; }
    bool valid_on(const Grid& g) const;
    /// Image under cell reversal t -> m + 1 - t.
    Cuboid reversed(const Grid& g) const;
    static Cuboid full(const Grid& g);

    friend auto operator<=>(const Cuboid&, const Cuboid&) = default;
};

enum class BlockClass { layer1, layer2, layer3, birth, death };

/// Partition used to split the decomposition into independent families:
/// B1..B3 strict layers per axis, B4 death blocks other than the full grid,
/// B5 birth blocks (full grid included).
enum class PartitionTag { B1 = 1, B2, B3, B4, B5 };

std::string to_string(BlockClass c);
std::optional<BlockClass> block_class_from_string(const std::string& s);
std::string to_string(PartitionTag t);

/// Classifies a cuboid with precedence birth > death > strict layer; nullopt
/// if it is not a block.
std::optional<BlockClass> classify(const Grid& g, const Cuboid& c);

class Block {
public:
    /// Throws std::invalid_argument if `box` is not a block of `g`.
    Block(const Grid& g, const Cuboid& box);

    const Cuboid& box() const noexcept { return box_; }
    BlockClass kind() const noexcept { return kind_; }
    const AxisInterval& interval(std::size_t axis) const { return box_.iv[axis]; }

    bool contains(const GridPoint& t) const { return box_.contains(t); }
    GridPoint min_corner() const { return box_.min_corner(); }
    PartitionTag partition_tag() const;
    bool is_strict_layer() const noexcept {
        return kind_ == BlockClass::layer1 || kind_ == BlockClass::layer2 || kind_ == BlockClass::layer3;
    }
    /// The axis a strict layer is bounded on.
    std::size_t layer_axis() const;

    /// The block occupying the reversed cells (a_i <-> m_i - b_i).
    Block reversed(const Grid& g) const;

    /// `a=(..) b=(..) class=..`
    std::string to_string() const;

    friend bool operator==(const Block& x, const Block& y) { return x.box_ == y.box_; }
    /// Orders by lower cuts, then upper cuts (the serialization order).
    friend std::strong_ordering operator<=>(const Block& x, const Block& y) { return x.sort_key() <=> y.sort_key(); }

private:
    std::array<int, 2 * kAxes> sort_key() const {
        return {box_.iv[0].a, box_.iv[1].a, box_.iv[2].a, box_.iv[0].b, box_.iv[1].b, box_.iv[2].b};
    }

    Cuboid box_;
    BlockClass kind_;
};

/// Every block of `g` exactly once, sorted by (a, b).
std::vector<Block> enumerate_blocks(const Grid& g);

inline bool contains(const Block& b, const GridPoint& t) { return b.contains(t); }
inline GridPoint min_corner(const Block& b) { return b.min_corner(); }
inline PartitionTag partition_tag(const Block& b) { return b.partition_tag(); }

}  // namespace blockdec
