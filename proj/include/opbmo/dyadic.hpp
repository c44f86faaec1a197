// Dyadic interval algebra on the unit circle [0,1).
//
// An interval is identified by (level, pos): [pos*2^-level, (pos+1)*2^-level).
// Depth-K cells are the 2^K intervals at level K; every function in this
// library is piecewise constant on them, so integrals are finite sums.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace opbmo {

struct DyadicIndex {
    int level = 0;
    std::int64_t pos = 0;

    DyadicIndex() = default;
    DyadicIndex(int lvl, std::int64_t p) : level(lvl), pos(p) {
        if (lvl < 0 || lvl > 62 || p < 0 || p >= (std::int64_t{1} << lvl))
            throw std::invalid_argument("dyadic index out of range: level=" +
                                        std::to_string(lvl) + " pos=" + std::to_string(p));
    }

    bool operator==(const DyadicIndex&) const = default;

    double measure() const { return std::ldexp(1.0, -level); }

    bool has_parent() const { return level >= 1; }
    DyadicIndex parent() const {
        if (!has_parent()) throw std::logic_error("whole circle has no parent");
        return {level - 1, pos / 2};
    }
    // The left child carries the +1 sign of the Haar function (fixed convention).
    DyadicIndex left_child() const { return {level + 1, 2 * pos}; }
    DyadicIndex right_child() const { return {level + 1, 2 * pos + 1}; }

    bool contains(const DyadicIndex& other) const {
        return other.level >= level && (other.pos >> (other.level - level)) == pos;
    }
};

inline DyadicIndex whole_circle() { return {0, 0}; }

/// Number of intervals with level < depth (the Haar coefficient slots).
inline std::int64_t interval_count(int depth) { return (std::int64_t{1} << depth) - 1; }

/// Linear index in [0, 2^depth - 1) for level-ordered interval storage.
inline std::int64_t interval_linear_index(const DyadicIndex& idx) {
    return (std::int64_t{1} << idx.level) - 1 + idx.pos;
}

inline DyadicIndex interval_from_linear_index(std::int64_t linear) {
    int level = 0;
    while ((std::int64_t{2} << level) - 1 <= linear) ++level;
    return {level, linear - ((std::int64_t{1} << level) - 1)};
}

/// Index range [first, last) of the depth-K cells covered by the interval.
inline std::pair<std::int64_t, std::int64_t> cell_range(const DyadicIndex& idx, int depth) {
    if (idx.level > depth) throw std::invalid_argument("interval finer than cell depth");
    const int shift = depth - idx.level;
    return {idx.pos << shift, (idx.pos + 1) << shift};
}

/// Ancestor of depth-K cell `cell` at the given level.
inline std::int64_t ancestor_pos(std::int64_t cell, int depth, int level) {
    return cell >> (depth - level);
}

/// Sign of h_I on a depth-K cell contained in I (+1 on the left half).
inline int haar_sign(const DyadicIndex& idx, std::int64_t cell, int depth) {
    return ((cell >> (depth - idx.level - 1)) & 1) ? -1 : 1;
}

/// |I|^{-1/2}, the amplitude of h_I.
inline double haar_amplitude(int level) { return std::sqrt(std::ldexp(1.0, level)); }

/// Value of h_I on a depth-K cell (0 outside I).
inline double haar_value(const DyadicIndex& idx, std::int64_t cell, int depth) {
    if (ancestor_pos(cell, depth, idx.level) != idx.pos) return 0.0;
    return haar_sign(idx, cell, depth) * haar_amplitude(idx.level);
}

}  // namespace opbmo
