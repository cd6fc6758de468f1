#include "cayspar/group.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cayspar/rng.hpp"

namespace cayspar {
namespace {

void check_table_budget(std::size_t n) {
    if (n == 0) throw std::invalid_argument("group order must be positive");
    if (n * n > kMaxTableEntries)
        throw std::invalid_argument("group order " + std::to_string(n) +
                                    " exceeds the multiplication-table budget");
}

std::vector<int> inverses_from_table(const GroupTable& g) {
    std::vector<int> inv(g.n, -1);
    for (int a = 0; a < g.n; ++a) {
        for (int b = 0; b < g.n; ++b) {
            if (g.times(a, b) == g.id && g.times(b, a) == g.id) {
                inv[a] = b;
                break;
            }
        }
        if (inv[a] < 0)
            throw std::invalid_argument("element " + std::to_string(a) + " has no inverse");
    }
    return inv;
}

}  // namespace

GroupTable make_cyclic(int n) {
    check_table_budget(std::size_t(std::max(n, 0)));
    GroupTable g;
    g.n = n;
    g.id = 0;
    g.mul.resize(std::size_t(n) * n);
    g.inv.resize(n);
    for (int a = 0; a < n; ++a) {
        g.inv[a] = (n - a) % n;
        for (int b = 0; b < n; ++b) g.mul[std::size_t(a) * n + b] = (a + b) % n;
    }
    return g;
}

GroupTable make_f2k(int k) {
    if (k < 1) throw std::invalid_argument("f2^k requires k >= 1");
    if (k > 26 || (std::size_t(1) << (2 * k)) > kMaxTableEntries)
        throw std::invalid_argument("f2^" + std::to_string(k) + " exceeds the table budget");
    int n = 1 << k;
    GroupTable g;
    g.n = n;
    g.id = 0;
    g.mul.resize(std::size_t(n) * n);
    g.inv.resize(n);
    for (int a = 0; a < n; ++a) {
        g.inv[a] = a;  // characteristic 2
        for (int b = 0; b < n; ++b) g.mul[std::size_t(a) * n + b] = a ^ b;
    }
    return g;
}

GroupTable make_dihedral(int m) {
    if (m < 3) throw std::invalid_argument("dihedral group requires m >= 3");
    std::size_t n = 2 * std::size_t(m);
    check_table_budget(n);
    // Element a + m*b encodes r^a f^b with r^m = 1, f^2 = 1, f r f = r^-1.
    GroupTable g;
    g.n = int(n);
    g.id = 0;
    g.mul.resize(n * n);
    g.inv.resize(n);
    auto idx = [m](int rot, int flip) { return rot + m * flip; };
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b <= 1; ++b) {
            int lhs = idx(a, b);
            g.inv[lhs] = b ? lhs : idx((m - a) % m, 0);
            for (int c = 0; c < m; ++c) {
                for (int d = 0; d <= 1; ++d) {
                    int rot = b ? (a - c + m) % m : (a + c) % m;
                    g.mul[std::size_t(lhs) * n + idx(c, d)] = idx(rot, b ^ d);
                }
            }
        }
    }
    return g;
}

std::vector<int> permutation_of_rank(int m, std::int64_t rank) {
    std::vector<int> pool(m);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> perm;
    perm.reserve(m);
    std::int64_t fact = 1;
    for (int i = 2; i < m; ++i) fact *= i;  // (m-1)!
    for (int i = m - 1; i >= 1; --i) {
        auto d = rank / fact;
        rank %= fact;
        perm.push_back(pool[d]);
        pool.erase(pool.begin() + d);
        fact /= i;
    }
    perm.push_back(pool[0]);
    return perm;
}

std::int64_t rank_of_permutation(const std::vector<int>& perm) {
    int m = int(perm.size());
    std::int64_t rank = 0, fact = 1;
    for (int i = 2; i <= m - 1; ++i) fact *= i;
    std::vector<bool> used(m, false);
    for (int i = 0; i < m; ++i) {
        int smaller = 0;
        for (int v = 0; v < perm[i]; ++v) smaller += !used[v];
        rank += smaller * fact;
        used[perm[i]] = true;
        if (m - 1 - i > 0) fact /= (m - 1 - i);
    }
    return rank;
}

GroupTable make_symmetric(int m) {
    if (m < 2 || m > 7) throw std::invalid_argument("symmetric group supported for 2 <= m <= 7");
    std::int64_t n = 1;
    for (int i = 2; i <= m; ++i) n *= i;
    check_table_budget(std::size_t(n));
    std::vector<std::vector<int>> perms(n);
    for (std::int64_t i = 0; i < n; ++i) perms[i] = permutation_of_rank(m, i);

    GroupTable g;
    g.n = int(n);
    g.id = 0;  // rank 0 is the identity permutation
    g.mul.resize(std::size_t(n) * n);
    g.inv.resize(n);
    std::vector<int> comp(m);
    for (std::int64_t a = 0; a < n; ++a) {
        const auto& pa = perms[a];
        std::vector<int> ia(m);
        for (int x = 0; x < m; ++x) ia[pa[x]] = x;
        g.inv[a] = int(rank_of_permutation(ia));
        for (std::int64_t b = 0; b < n; ++b) {
            const auto& pb = perms[b];
            for (int x = 0; x < m; ++x) comp[x] = pb[pa[x]];  // apply a, then b
            g.mul[std::size_t(a) * n + b] = int(rank_of_permutation(comp));
        }
    }
    return g;
}

GroupTable make_product(const GroupTable& g1, const GroupTable& g2) {
    std::size_t n = std::size_t(g1.n) * g2.n;
    check_table_budget(n);
    GroupTable g;
    g.n = int(n);
    g.id = g1.id * g2.n + g2.id;
    g.mul.resize(n * n);
    g.inv.resize(n);
    for (int a1 = 0; a1 < g1.n; ++a1) {
        for (int a2 = 0; a2 < g2.n; ++a2) {
            int a = a1 * g2.n + a2;
            g.inv[a] = g1.inv[a1] * g2.n + g2.inv[a2];
            for (int b1 = 0; b1 < g1.n; ++b1) {
                int p1 = g1.times(a1, b1) * g2.n;
                std::size_t row = std::size_t(a) * n + std::size_t(b1) * g2.n;
                for (int b2 = 0; b2 < g2.n; ++b2)
                    g.mul[row + b2] = p1 + g2.times(a2, b2);
            }
        }
    }
    return g;
}

GroupTable from_table(std::istream& in) {
    auto next_line = [&in](std::string& line) {
        while (std::getline(in, line)) {
            auto pos = line.find('#');
            if (pos != std::string::npos) line.erase(pos);
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
        }
        return false;
    };

    std::string line;
    if (!next_line(line)) throw std::invalid_argument("group table: empty input");
    int n = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> n)) throw std::invalid_argument("group table: bad order line");
        int extra;
        if (ls >> extra) throw std::invalid_argument("group table: order line has trailing tokens");
    }
    check_table_budget(std::size_t(std::max(n, 0)));

    GroupTable g;
    g.n = n;
    g.mul.resize(std::size_t(n) * n);
    for (int r = 0; r < n; ++r) {
        if (!next_line(line))
            throw std::invalid_argument("group table: expected " + std::to_string(n) + " rows");
        std::istringstream ls(line);
        for (int c = 0; c < n; ++c) {
            int v;
            if (!(ls >> v))
                throw std::invalid_argument("group table: row " + std::to_string(r) +
                                            " is not square");
            if (v < 0 || v >= n)
                throw std::invalid_argument("group table: entry out of range in row " +
                                            std::to_string(r));
            g.mul[std::size_t(r) * n + c] = v;
        }
        int extra;
        if (ls >> extra)
            throw std::invalid_argument("group table: row " + std::to_string(r) + " too long");
    }

    // Infer the identity rather than assuming index 0.
    g.id = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = g.times(e, x) == x && g.times(x, e) == x;
        if (ok) {
            g.id = e;
            break;
        }
    }
    if (g.id < 0) throw std::invalid_argument("group table: no identity row/column");
    g.inv = inverses_from_table(g);
    validate(g);
    return g;
}

GroupTable from_table(const std::string& text) {
    std::istringstream in(text);
    return from_table(in);
}

GroupTable from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open group table file: " + path);
    return from_table(in);
}

std::string to_table_text(const GroupTable& g) {
    std::ostringstream out;
    out << g.n << '\n';
    for (int a = 0; a < g.n; ++a) {
        for (int b = 0; b < g.n; ++b) out << (b ? " " : "") << g.times(a, b);
        out << '\n';
    }
    return out.str();
}

void validate(const GroupTable& g, std::uint64_t seed) {
    if (g.n <= 0) throw std::invalid_argument("group: order must be positive");
    if (g.mul.size() != std::size_t(g.n) * g.n || g.inv.size() != std::size_t(g.n))
        throw std::invalid_argument("group: table sizes inconsistent with order");
    for (int v : g.mul)
        if (v < 0 || v >= g.n) throw std::invalid_argument("group: closure violated");
    if (g.id < 0 || g.id >= g.n) throw std::invalid_argument("group: identity out of range");
    for (int x = 0; x < g.n; ++x)
        if (g.times(g.id, x) != x || g.times(x, g.id) != x)
            throw std::invalid_argument("group: identity law violated at " + std::to_string(x));
    for (int x = 0; x < g.n; ++x) {
        int iv = g.inv[x];
        if (iv < 0 || iv >= g.n || g.times(x, iv) != g.id || g.times(iv, x) != g.id)
            throw std::invalid_argument("group: inverse law violated at " + std::to_string(x));
    }
    auto assoc = [&g](int a, int b, int c) {
        return g.times(g.times(a, b), c) == g.times(a, g.times(b, c));
    };
    if (g.n <= 64) {
        for (int a = 0; a < g.n; ++a)
            for (int b = 0; b < g.n; ++b)
                for (int c = 0; c < g.n; ++c)
                    if (!assoc(a, b, c))
                        throw std::invalid_argument("group: associativity violated at (" +
                                                    std::to_string(a) + "," + std::to_string(b) +
                                                    "," + std::to_string(c) + ")");
    } else {
        SplitMix64 rng(seed);
        for (int t = 0; t < 10000; ++t) {
            int a = int(rng.next_below(g.n));
            int b = int(rng.next_below(g.n));
            int c = int(rng.next_below(g.n));
            if (!assoc(a, b, c))
                throw std::invalid_argument("group: associativity violated at sampled triple");
        }
    }
}

GroupAction regular_action(GroupPtr g) {
    GroupAction a;
    a.setSize = g->n;
    a.group = std::move(g);
    a.regular = true;
    return a;
}

GroupAction natural_symmetric_action(int m) {
    GroupAction a;
    a.group = share(make_symmetric(m));
    a.setSize = m;
    a.regular = false;
    int n = a.group->n;
    a.table.resize(std::size_t(m) * n);
    for (int g = 0; g < n; ++g) {
        auto perm = permutation_of_rank(m, g);
        for (int x = 0; x < m; ++x) a.table[std::size_t(x) * n + g] = perm[x];
    }
    return a;
}

void validate(const GroupAction& a, std::uint64_t seed) {
    if (!a.group) throw std::invalid_argument("action: missing group");
    const GroupTable& g = *a.group;
    if (a.setSize <= 0) throw std::invalid_argument("action: set must be nonempty");
    if (!a.regular && a.table.size() != std::size_t(a.setSize) * g.n)
        throw std::invalid_argument("action: table size mismatch");
    for (int x = 0; x < a.setSize; ++x) {
        int y = a.apply(x, g.id);
        if (y != x) throw std::invalid_argument("action: identity must fix every point");
    }
    auto homo = [&](int x, int p, int q) {
        return a.apply(x, g.times(p, q)) == a.apply(a.apply(x, p), q);
    };
    if (std::size_t(a.setSize) * g.n * g.n <= 1u << 18) {
        for (int x = 0; x < a.setSize; ++x)
            for (int p = 0; p < g.n; ++p)
                for (int q = 0; q < g.n; ++q)
                    if (!homo(x, p, q))
                        throw std::invalid_argument("action: right-action law violated");
    } else {
        SplitMix64 rng(seed);
        for (int t = 0; t < 10000; ++t) {
            int x = int(rng.next_below(a.setSize));
            int p = int(rng.next_below(g.n));
            int q = int(rng.next_below(g.n));
            if (!homo(x, p, q))
                throw std::invalid_argument("action: right-action law violated (sampled)");
        }
    }
    for (int gidx = 0; gidx < g.n && !a.regular; ++gidx) {
        std::vector<bool> seen(a.setSize, false);
        for (int x = 0; x < a.setSize; ++x) {
            int y = a.apply(x, gidx);
            if (y < 0 || y >= a.setSize || seen[y])
                throw std::invalid_argument("action: element " + std::to_string(gidx) +
                                            " does not act by permutation");
            seen[y] = true;
        }
    }
}

}  // namespace cayspar
