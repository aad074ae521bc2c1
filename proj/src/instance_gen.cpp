#include "pm4cover/instance_gen.hpp"

#include <algorithm>
#include <optional>

namespace pm4cover {

namespace {
constexpr int kRejectionBudget = 10000;
}

const char* profile_constraint_name(ProfileConstraint c) {
    switch (c) {
        case ProfileConstraint::Any: return "any";
        case ProfileConstraint::ThreeOdd: return "three-odd";
        case ProfileConstraint::Len2: return "len2";
        case ProfileConstraint::UniqueExterior: return "unique-exterior";
        case ProfileConstraint::RichEven: return "rich";
    }
    return "?";
}

std::optional<ProfileConstraint> profile_constraint_from_name(const std::string& name) {
    for (ProfileConstraint c : {ProfileConstraint::Any, ProfileConstraint::ThreeOdd,
                                ProfileConstraint::Len2, ProfileConstraint::UniqueExterior,
                                ProfileConstraint::RichEven})
        if (name == profile_constraint_name(c)) return c;
    return std::nullopt;
}

namespace {

bool constraint_met(const ThreePole& pole, ProfileConstraint c) {
    SegmentProfile prof = segment_profile(pole);
    switch (c) {
        case ProfileConstraint::Any: return true;
        case ProfileConstraint::ThreeOdd: return prof.kind == ProfileKind::ThreeOdd;
        case ProfileConstraint::Len2:
            return prof.two_even() && (prof.seg[0].length == 2 || prof.seg[1].length == 2);
        case ProfileConstraint::UniqueExterior:
            return prof.two_even() &&
                   (prof.seg[0].exterior_chords == 1 || prof.seg[1].exterior_chords == 1);
        case ProfileConstraint::RichEven: return prof.rich();
    }
    return false;
}

// Spoke positions honouring the length shape the constraint needs. Returned
// sorted ascending so the same pole always serialises identically.
std::array<int, 3> sample_spokes(int n, ProfileConstraint c, Rng64& rng) {
    auto arcs_to_spokes = [&](int l1, int l2) {
        std::array<int, 3> s{0, l1, l1 + l2};
        std::sort(s.begin(), s.end());
        return s;
    };
    switch (c) {
        case ProfileConstraint::ThreeOdd: {
            // three odd arc lengths summing to n
            int max1 = n - 2;
            int l1 = 1 + 2 * rng.below((max1 - 1) / 2 + 1);
            int max2 = n - l1 - 1;
            int l2 = 1 + 2 * rng.below((max2 - 1) / 2 + 1);
            return arcs_to_spokes(l1, l2);
        }
        case ProfileConstraint::Len2: {
            // one even arc of length exactly 2, one even arc, rest odd
            int max2 = n - 3;
            int l2 = 2 + 2 * rng.below((max2 - 2) / 2 + 1);
            return arcs_to_spokes(2, l2);
        }
        case ProfileConstraint::UniqueExterior:
        case ProfileConstraint::RichEven: {
            int lo = c == ProfileConstraint::RichEven ? 4 : 2;
            int max1 = n - lo - 1;
            int l1 = lo + 2 * rng.below((max1 - lo) / 2 + 1);
            int max2 = n - l1 - 1;
            int l2 = lo + 2 * rng.below((max2 - lo) / 2 + 1);
            return arcs_to_spokes(l1, l2);
        }
        case ProfileConstraint::Any:
        default: {
            std::array<int, 3> s{};
            s[0] = rng.below(n);
            do s[1] = rng.below(n); while (s[1] == s[0]);
            do s[2] = rng.below(n); while (s[2] == s[0] || s[2] == s[1]);
            std::sort(s.begin(), s.end());
            return s;
        }
    }
}

// Random perfect matching of the non-spoke positions: repeatedly pair the
// lowest free position with a uniformly drawn other one.
std::optional<std::vector<std::pair<int, int>>> sample_chords(int n,
                                                              const std::array<int, 3>& spokes,
                                                              bool allow_digons, Rng64& rng) {
    std::vector<int> free;
    for (int v = 0; v < n; v++)
        if (v != spokes[0] && v != spokes[1] && v != spokes[2]) free.push_back(v);

    std::vector<std::pair<int, int>> chords;
    while (!free.empty()) {
        int u = free.front();
        free.erase(free.begin());
        int tries = 0;
        while (true) {
            int idx = rng.below(static_cast<int>(free.size()));
            int v = free[idx];
            bool digon = (u + 1) % n == v || (v + 1) % n == u;
            if (digon && !allow_digons) {
                if (++tries > 64) return std::nullopt;  // likely forced; restart the draw
                continue;
            }
            free.erase(free.begin() + idx);
            chords.emplace_back(u, v);
            break;
        }
    }
    return chords;
}

void check_feasible(const GenSpec& spec) {
    if (spec.n < 3 || spec.n % 2 == 0)
        throw Error(Err::InfeasibleSpec, "vertex count must be odd and at least 3");
    int min_n = 3;
    switch (spec.constraint) {
        case ProfileConstraint::Len2: min_n = 5; break;
        case ProfileConstraint::UniqueExterior: min_n = 5; break;
        case ProfileConstraint::RichEven: min_n = 9; break;  // two even arcs of length >= 4
        default: break;
    }
    if (spec.n < min_n)
        throw Error(Err::InfeasibleSpec,
                    std::string(profile_constraint_name(spec.constraint)) + " needs n >= " +
                        std::to_string(min_n));
}

} // namespace

ThreePole gen_random_pole(const GenSpec& spec) {
    check_feasible(spec);
    Rng64 rng(spec.seed);
    for (int attempt = 0; attempt < kRejectionBudget; attempt++) {
        std::array<int, 3> spokes = sample_spokes(spec.n, spec.constraint, rng);
        auto chords = sample_chords(spec.n, spokes, spec.allow_digons, rng);
        if (!chords) continue;
        ThreePole pole = validate_pole(spec.n, spokes, std::move(*chords));
        if (constraint_met(pole, spec.constraint)) return pole;
    }
    throw Error(Err::RejectionBudgetExceeded,
                std::string("no ") + profile_constraint_name(spec.constraint) +
                    " pole with n=" + std::to_string(spec.n) + " found within " +
                    std::to_string(kRejectionBudget) + " samples");
}

ThreePole gen_all_odd(int n, std::uint64_t seed) {
    return gen_random_pole({n, seed, ProfileConstraint::ThreeOdd, true});
}

std::vector<ThreePole> enumerate_poles(int n) {
    if (n < 3 || n % 2 == 0)
        throw Error(Err::InfeasibleSpec, "vertex count must be odd and at least 3");
    if (n > 13) throw Error(Err::SizeCap, "pole enumeration capped at n = 13");

    std::vector<ThreePole> out;
    std::vector<std::pair<int, int>> chords;

    auto matchings = [&](std::vector<int> rest, auto&& self,
                         const std::array<int, 3>& spokes) -> void {
        if (rest.empty()) {
            out.push_back(validate_pole(n, spokes, chords));
            return;
        }
        int u = rest.front();
        for (size_t i = 1; i < rest.size(); i++) {
            std::vector<int> remaining;
            for (size_t j = 1; j < rest.size(); j++)
                if (j != i) remaining.push_back(rest[j]);
            chords.emplace_back(u, rest[i]);
            self(std::move(remaining), self, spokes);
            chords.pop_back();
        }
    };

    for (int a = 1; a < n; a++)
        for (int b = a + 1; b < n; b++) {
            std::array<int, 3> spokes{0, a, b};
            std::vector<int> rest;
            for (int v = 1; v < n; v++)
                if (v != a && v != b) rest.push_back(v);
            matchings(std::move(rest), matchings, spokes);
        }
    return out;
}

} // namespace pm4cover
