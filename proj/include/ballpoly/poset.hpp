#pragma once

#include <cstddef>
#include <vector>

namespace ballpoly {

/// Finite poset given by ranks and covering pairs (lower, upper) with
/// rank(upper) = rank(lower) + 1.
class GradedPoset {
public:
    int add(int rank);
    void cover(int lower, int upper);

    int size() const { return int(rank_.size()); }
    int rank(int x) const { return rank_[x]; }
    int max_rank() const;
    const std::vector<int>& up(int x) const { return up_[x]; }
    const std::vector<int>& down(int x) const { return down_[x]; }
    bool covers(int lower, int upper) const;
    /// Strict order, the transitive closure of the covers.
    bool less(int a, int b) const;

private:
    std::vector<int> rank_;
    std::vector<std::vector<int>> up_;
    std::vector<std::vector<int>> down_;
};

/// Bijections m from a to b mapping covers to covers. With `reverse` the
/// maps are anti-isomorphisms: ranks are mirrored and covers flip direction.
/// Stops after `limit` maps.
std::vector<std::vector<int>> poset_isomorphisms(const GradedPoset& a, const GradedPoset& b, bool reverse,
                                                 std::size_t limit);

/// Number of ordered pairs (x, y) where x < y in a disagrees with the image
/// pair in b (m(x) < m(y), or m(y) < m(x) when reversed).
std::size_t order_violations(const GradedPoset& a, const GradedPoset& b, const std::vector<int>& map, bool reverse);

}  // namespace ballpoly
