#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace cayspar {

/// Explicit finite group: elements are indices 0..n-1, multiplication is a
/// dense n x n lookup table. All constructors validate closure, identity,
/// inverses and associativity (exhaustively for n <= 64, on random triples
/// above that).
struct GroupTable {
    int n = 0;
    std::vector<int> mul;  // row-major: mul[a * n + b]
    std::vector<int> inv;
    int id = 0;

    int times(int a, int b) const { return mul[std::size_t(a) * n + b]; }
    int inverse(int g) const { return inv[g]; }
    bool is_involution(int g) const { return inv[g] == g; }
};

using GroupPtr = std::shared_ptr<const GroupTable>;

inline GroupPtr share(GroupTable g) {
    return std::make_shared<const GroupTable>(std::move(g));
}

/// Largest multiplication table we are willing to materialize (2^26 entries,
/// 256 MiB of int32). Keeps f2:13 and sym:7 reachable.
inline constexpr std::size_t kMaxTableEntries = std::size_t(1) << 26;

GroupTable make_cyclic(int n);
GroupTable make_f2k(int k);
GroupTable make_dihedral(int m);

/// Symmetric group S_m, elements ranked lexicographically over permutation
/// arrays. Composition order: mul(a, b) applies a first, then b, i.e. the
/// product permutation maps x to perm_b(perm_a(x)).
GroupTable make_symmetric(int m);

GroupTable make_product(const GroupTable& g1, const GroupTable& g2);

/// Parses the group-table text format: first non-comment line holds n, the
/// next n lines hold the rows of mul. Identity and inverses are inferred and
/// all invariants are enforced.
GroupTable from_table(std::istream& in);
GroupTable from_table(const std::string& text);
GroupTable from_table_file(const std::string& path);

std::string to_table_text(const GroupTable& g);

/// Throws std::invalid_argument when any GroupTable invariant fails.
void validate(const GroupTable& g, std::uint64_t seed = 0x5eedULL);

/// Lexicographic rank <-> permutation helpers backing make_symmetric.
std::vector<int> permutation_of_rank(int m, std::int64_t rank);
std::int64_t rank_of_permutation(const std::vector<int>& perm);

/// A finite right action of a group on a set X = {0..setSize-1}:
/// act(x, id) = x and act(x, mul(g, h)) = act(act(x, g), h).
struct GroupAction {
    GroupPtr group;
    int setSize = 0;
    std::vector<int> table;  // row-major: table[x * n + g]; empty when regular
    bool regular = false;

    int apply(int x, int g) const {
        return regular ? group->times(x, g) : table[std::size_t(x) * group->n + g];
    }
};

/// The regular action of a group on itself (act = mul). The table is not
/// duplicated; lookups go straight to the multiplication table.
GroupAction regular_action(GroupPtr g);

/// S_m acting on the m points it permutes.
GroupAction natural_symmetric_action(int m);

void validate(const GroupAction& a, std::uint64_t seed = 0x5eedULL);

}  // namespace cayspar
