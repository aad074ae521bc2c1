#ifndef PM4COVER_INSTANCE_GEN_HPP
#define PM4COVER_INSTANCE_GEN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pm4cover/pole.hpp"

namespace pm4cover {

// xorshift64* with a fixed multiplier; documented in the README so seeded
// runs can be reproduced elsewhere. Seed 0 is replaced by a fixed constant.
struct Rng64 {
    std::uint64_t state;
    explicit Rng64(std::uint64_t seed) : state(seed ? seed : 0x9E3779B97F4A7C15ULL) {}
    std::uint64_t next() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 0x2545F4914F6CDD1DULL;
    }
    // modulo draw, part of the documented stream
    int below(int m) { return static_cast<int>(next() % static_cast<std::uint64_t>(m)); }
};

enum class ProfileConstraint { Any, ThreeOdd, Len2, UniqueExterior, RichEven };

const char* profile_constraint_name(ProfileConstraint c);
std::optional<ProfileConstraint> profile_constraint_from_name(const std::string& name);

struct GenSpec {
    int n = 3;
    std::uint64_t seed = 0;
    ProfileConstraint constraint = ProfileConstraint::Any;
    bool allow_digons = true;
};

// Deterministic for a given spec; rejection sampling against the constraint
// with a fixed budget.
ThreePole gen_random_pole(const GenSpec& spec);

// Convenience wrapper for the all-odd profile.
ThreePole gen_all_odd(int n, std::uint64_t seed);

// All poles with the first spoke fixed at position 0 (rotation quotient),
// spoke sets and chord matchings in lexicographic order. n <= 13.
std::vector<ThreePole> enumerate_poles(int n);

} // namespace pm4cover

#endif
