#include "blockdec/blocks.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace blockdec {

bool Cuboid::valid_on(const Grid& g) const {
    for (std::size_t i = 0; i < kAxes; ++i) {
        if (iv[i].a < 0 || iv[i].a >= iv[i].b || iv[i].b > g.cells(i)) return false;
    }
    return true;
}

Cuboid Cuboid::reversed(const Grid& g) const {
    Cuboid out;
    for (std::size_t i = 0; i < kAxes; ++i) out.iv[i] = {g.cells(i) - iv[i].b, g.cells(i) - iv[i].a};
    return out;
}

Cuboid Cuboid::full(const Grid& g) {
    return Cuboid{{AxisInterval{0, g.cells(0)}, AxisInterval{0, g.cells(1)}, AxisInterval{0, g.cells(2)}}};
}

std::string to_string(BlockClass c) {
    switch (c) {
        case BlockClass::layer1: return "layer1";
        case BlockClass::layer2: return "layer2";
        case BlockClass::layer3: return "layer3";
        case BlockClass::birth: return "birth";
        case BlockClass::death: return "death";
    }
    return "?";
}

std::optional<BlockClass> block_class_from_string(const std::string& s) {
    for (BlockClass c : {BlockClass::layer1, BlockClass::layer2, BlockClass::layer3, BlockClass::birth,
                         BlockClass::death}) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

std::string to_string(PartitionTag t) { return "B" + std::to_string(static_cast<int>(t)); }

std::optional<BlockClass> classify(const Grid& g, const Cuboid& c) {
    if (!c.valid_on(g)) return std::nullopt;
    bool birth = true;
    bool death = true;
    for (std::size_t i = 0; i < kAxes; ++i) {
        birth = birth && c.iv[i].b == g.cells(i);
        death = death && c.iv[i].a == 0;
    }
    if (birth) return BlockClass::birth;
    if (death) return BlockClass::death;
    for (std::size_t i = 0; i < kAxes; ++i) {
        bool others_full = true;
        for (std::size_t j = 0; j < kAxes; ++j) {
            if (j != i) others_full = others_full && c.iv[j].a == 0 && c.iv[j].b == g.cells(j);
        }
        if (others_full && c.iv[i].a >= 1 && c.iv[i].b <= g.cells(i) - 1) {
            return static_cast<BlockClass>(static_cast<int>(BlockClass::layer1) + static_cast<int>(i));
        }
    }
    return std::nullopt;
}

Block::Block(const Grid& g, const Cuboid& box) : box_(box) {
    auto k = classify(g, box);
    if (!k) {
        std::ostringstream os;
        os << "cuboid a=(" << box.iv[0].a << ',' << box.iv[1].a << ',' << box.iv[2].a << ") b=(" << box.iv[0].b
           << ',' << box.iv[1].b << ',' << box.iv[2].b << ") is not a block of the grid";
        throw std::invalid_argument(os.str());
    }
    kind_ = *k;
}

PartitionTag Block::partition_tag() const {
    switch (kind_) {
        case BlockClass::layer1: return PartitionTag::B1;
        case BlockClass::layer2: return PartitionTag::B2;
        case BlockClass::layer3: return PartitionTag::B3;
        case BlockClass::death: return PartitionTag::B4;
        case BlockClass::birth: return PartitionTag::B5;
    }
    return PartitionTag::B5;
}

std::size_t Block::layer_axis() const {
    if (!is_strict_layer()) throw std::logic_error("layer_axis of a non-layer block");
    return static_cast<std::size_t>(static_cast<int>(kind_) - static_cast<int>(BlockClass::layer1));
}

Block Block::reversed(const Grid& g) const { return Block(g, box_.reversed(g)); }

std::string Block::to_string() const {
    std::ostringstream os;
    os << "a=(" << box_.iv[0].a << ',' << box_.iv[1].a << ',' << box_.iv[2].a << ") b=(" << box_.iv[0].b << ','
       << box_.iv[1].b << ',' << box_.iv[2].b << ") class=" << blockdec::to_string(kind_);
    return os.str();
}

std::vector<Block> enumerate_blocks(const Grid& g) {
    std::vector<Block> out;
    const auto m = g.cells();
    // birth: b = m, a free
    for (int a0 = 0; a0 < m[0]; ++a0)
        for (int a1 = 0; a1 < m[1]; ++a1)
            for (int a2 = 0; a2 < m[2]; ++a2)
                out.emplace_back(g, Cuboid{{AxisInterval{a0, m[0]}, AxisInterval{a1, m[1]}, AxisInterval{a2, m[2]}}});
    // death: a = 0, b free, full grid already listed
    for (int b0 = 1; b0 <= m[0]; ++b0)
        for (int b1 = 1; b1 <= m[1]; ++b1)
            for (int b2 = 1; b2 <= m[2]; ++b2) {
                if (b0 == m[0] && b1 == m[1] && b2 == m[2]) continue;
                out.emplace_back(g, Cuboid{{AxisInterval{0, b0}, AxisInterval{0, b1}, AxisInterval{0, b2}}});
            }
    // strict layers: 1 <= a < b <= m - 1 on one axis, others full
    for (std::size_t axis = 0; axis < kAxes; ++axis) {
        for (int a = 1; a < m[axis] - 1; ++a) {
            for (int b = a + 1; b <= m[axis] - 1; ++b) {
                Cuboid c = Cuboid::full(g);
                c.iv[axis] = {a, b};
                out.emplace_back(g, c);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace blockdec
