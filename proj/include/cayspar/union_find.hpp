#pragma once

#include <numeric>
#include <vector>

namespace cayspar {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1), components_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int p) {
        while (p != parent_[p]) {
            parent_[p] = parent_[parent_[p]];  // path halving
            p = parent_[p];
        }
        return p;
    }

    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (size_[ra] < size_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        --components_;
        return true;
    }

    bool connected(int a, int b) { return find(a) == find(b); }
    int components() const { return components_; }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    int components_;
};

}  // namespace cayspar
