#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "cayspar/group.hpp"

namespace cayspar {

struct GeneratorEntry {
    int elem = 0;
    double weight = 1.0;
};

enum class SymmetrizePolicy { Reject, Average };

/// Weighted multiset of generator elements. Identity entries are rejected,
/// zero-weight entries are dropped, duplicates are merged by weight addition.
/// Undirected sets must be closed under inverses with equal weights on s and
/// s^-1 (or get averaged under SymmetrizePolicy::Average).
class GeneratorSet {
public:
    static GeneratorSet undirected(const GroupTable& g, std::vector<GeneratorEntry> entries,
                                   SymmetrizePolicy policy = SymmetrizePolicy::Reject);
    static GeneratorSet directed(const GroupTable& g, std::vector<GeneratorEntry> entries);

    const std::vector<GeneratorEntry>& entries() const { return entries_; }
    bool directed() const { return directed_; }
    bool empty() const { return entries_.empty(); }
    double total_weight() const;
    bool unit_weights() const;

private:
    GeneratorSet(std::vector<GeneratorEntry> entries, bool directed)
        : entries_(std::move(entries)), directed_(directed) {}

    std::vector<GeneratorEntry> entries_;  // sorted by elem
    bool directed_ = false;
};

/// One representative per {s, s^-1} pair of an undirected generator set.
struct PairRep {
    int rep = 0;            // min(s, s^-1)
    bool involution = false;
    double weight = 0.0;    // shared weight of s and s^-1
};

/// Cayley or Schreier graph: vertices are the points of a group action
/// (the group itself for plain Cayley graphs), edges x -> act(x, s) per
/// generator s.
struct CayleyGraph {
    GroupAction vertices;
    GeneratorSet gens;

    int vertex_count() const { return vertices.setSize; }
    const GroupTable& group() const { return *vertices.group; }
};

CayleyGraph make_cayley(GroupPtr g, GeneratorSet gens);
CayleyGraph make_schreier(GroupAction action, GeneratorSet gens);

std::vector<PairRep> symmetric_representatives(const GroupTable& g, const GeneratorSet& gens);
std::vector<PairRep> symmetric_representatives(const CayleyGraph& h);

/// Permutation x -> act(x, s); as a matrix, row x has its single 1 at
/// column act(x, s), so A_a * A_b = A_{ab}.
std::vector<int> adjacency_perm(const CayleyGraph& h, int s);
Eigen::MatrixXd adjacency_matrix(const CayleyGraph& h, int s);

/// weight * (2I - A_s - A_{s^-1}) for proper pairs, weight * (I - A_s) for
/// involutions. Symmetric PSD with zero row sums.
Eigen::MatrixXd generator_laplacian(const CayleyGraph& h, int rep, double weight);

/// Sum of generator_laplacian over symmetric representatives.
Eigen::MatrixXd graph_laplacian(const CayleyGraph& h);

/// Directed: sum over generators s of w_s * #{x in T : act(x,s) not in T}.
/// Undirected: the quadratic form 1_T' L_H 1_T (each pair-edge once at pair
/// weight), which is exactly twice the one-directional escape count.
double cut_value(const CayleyGraph& h, const std::vector<bool>& inT);

/// Adds s^-1 for every proper directed generator (merging duplicates by
/// weight addition); involutions pass through unchanged.
CayleyGraph undirectify(const CayleyGraph& h);

/// Connected components via union-find over generator edges; cross-validates
/// the Laplacian null-space dimension.
int component_count(const CayleyGraph& h);

/// Generator list files: `elem [weight]` per line, weight defaults to 1,
/// '#' starts a comment.
std::vector<GeneratorEntry> parse_generator_list(std::istream& in);
std::vector<GeneratorEntry> parse_generator_list(const std::string& text);

/// Edge list export, `u v w` per line. Undirected graphs emit every edge
/// once; directed graphs emit one line per generator arc.
void write_edge_list(const CayleyGraph& h, std::ostream& out);

}  // namespace cayspar
