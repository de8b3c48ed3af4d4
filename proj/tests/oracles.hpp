#pragma once

// Brute-force oracles used by the test suites. These deliberately avoid the
// library's own presentation machinery wherever they are used to check it.

#include "msset/simplicial_set.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace msset::oracle {

// Nondegenerate p-simplices of standard(m) x standard(n), counted as strictly
// increasing chains of length p+1 in the grid poset [m] x [n].
inline int grid_chain_count(int m, int n, int p) {
    std::vector<std::pair<int, int>> grid;
    for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= n; ++b) grid.emplace_back(a, b);
    int count = 0;
    std::vector<std::pair<int, int>> chain;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (static_cast<int>(chain.size()) == p + 1) {
            ++count;
            return;
        }
        for (size_t i = start; i < grid.size(); ++i) {
            if (!chain.empty()) {
                auto [a, b] = chain.back();
                if (grid[i].first < a || grid[i].second < b) continue;
                if (grid[i] == chain.back()) continue;
            }
            chain.push_back(grid[i]);
            rec(i);
            chain.pop_back();
        }
    };
    rec(0);
    return count;
}

// Chains of the grid poset [1] x [n] that lie inside the prism-generator
// source: second coordinates proper (inside the boundary) or first
// coordinates constant at `corner`.
inline int prism_union_chain_count(int n, int corner, int p) {
    std::vector<std::pair<int, int>> grid;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= n; ++b) grid.emplace_back(a, b);
    int count = 0;
    std::vector<std::pair<int, int>> chain;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (static_cast<int>(chain.size()) == p + 1) {
            std::set<int> seconds;
            bool corner_only = true;
            for (auto& [a, b] : chain) {
                seconds.insert(b);
                if (a != corner) corner_only = false;
            }
            if (corner_only || static_cast<int>(seconds.size()) < n + 1) ++count;
            return;
        }
        for (size_t i = start; i < grid.size(); ++i) {
            if (!chain.empty()) {
                auto [a, b] = chain.back();
                if (grid[i].first < a || grid[i].second < b || grid[i] == chain.back())
                    continue;
            }
            chain.push_back(grid[i]);
            rec(i);
            chain.pop_back();
        }
    };
    rec(0);
    return count;
}

// Marked edges of the prism target sharp x flat: grid edges with constant
// second coordinate.
inline int prism_mark_count(int n) {
    return n + 1;
}

// All levelwise functions X_k -> Y_k for k <= dim(X) that commute with faces
// and degeneracies in that range; counts simplicial maps X -> Y.
inline long long levelwise_map_count(const SSetPtr& X, const SSetPtr& Y) {
    int top = X->dim();
    if (top < 0) return 1;
    std::vector<std::vector<SimplexRef>> xl(static_cast<size_t>(top) + 1);
    std::vector<std::vector<SimplexRef>> yl(static_cast<size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) {
        xl[static_cast<size_t>(k)] = X->level(k);
        yl[static_cast<size_t>(k)] = Y->level(k);
    }
    // assignment per level as index vectors
    std::vector<std::vector<int>> choice(static_cast<size_t>(top) + 1);
    long long found = 0;

    auto lookup = [&](int k, const SimplexRef& r) -> const SimplexRef& {
        const auto& lev = xl[static_cast<size_t>(k)];
        for (size_t i = 0; i < lev.size(); ++i)
            if (lev[i] == r) return yl[static_cast<size_t>(k)][static_cast<size_t>(
                choice[static_cast<size_t>(k)][i])];
        throw std::logic_error("oracle lookup");
    };

    std::function<void(int, size_t)> rec = [&](int k, size_t i) {
        if (k > top) {
            ++found;
            return;
        }
        if (i == xl[static_cast<size_t>(k)].size()) {
            rec(k + 1, 0);
            return;
        }
        const SimplexRef& x = xl[static_cast<size_t>(k)][i];
        for (size_t c = 0; c < yl[static_cast<size_t>(k)].size(); ++c) {
            const SimplexRef& y = yl[static_cast<size_t>(k)][c];
            bool ok = true;
            if (k >= 1)
                for (int ii = 0; ii <= k && ok; ++ii)
                    if (lookup(k - 1, X->face(x, ii)) != Y->face(y, ii)) ok = false;
            if (ok && k >= 1) {
                // degeneracy compatibility against the level below
                for (int j = 0; j < k && ok; ++j) {
                    // if x = s_j x', its image must be s_j of the image of x'
                    SimplexRef below = X->face(x, j);
                    if (X->degeneracy(below, j) == x &&
                        Y->degeneracy(lookup(k - 1, below), j) != y)
                        ok = false;
                }
            }
            if (!ok) continue;
            choice[static_cast<size_t>(k)].push_back(static_cast<int>(c));
            rec(k, i + 1);
            choice[static_cast<size_t>(k)].pop_back();
        }
    };
    rec(0, 0);
    return found;
}

} // namespace msset::oracle
