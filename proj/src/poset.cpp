#include "ballpoly/poset.hpp"

#include <algorithm>
#include <queue>

#include "ballpoly/error.hpp"

namespace ballpoly {

int GradedPoset::add(int rank) {
    rank_.push_back(rank);
    up_.emplace_back();
    down_.emplace_back();
    return int(rank_.size()) - 1;
}

void GradedPoset::cover(int lower, int upper) {
    if (rank_[upper] != rank_[lower] + 1) throw Error(ErrorKind::InvalidArgument, "cover must raise rank by one");
    if (covers(lower, upper)) return;
    up_[lower].push_back(upper);
    down_[upper].push_back(lower);
}

int GradedPoset::max_rank() const {
    int r = 0;
    for (int x : rank_) r = std::max(r, x);
    return r;
}

bool GradedPoset::covers(int lower, int upper) const {
    const auto& u = up_[lower];
    return std::find(u.begin(), u.end(), upper) != u.end();
}

bool GradedPoset::less(int a, int b) const {
    if (rank_[a] >= rank_[b]) return false;
    std::vector<int> stack{a};
    std::vector<char> seen(rank_.size(), 0);
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int y : up_[x]) {
            if (y == b) return true;
            if (!seen[y] && rank_[y] < rank_[b]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return false;
}

namespace {

struct Search {
    const GradedPoset& a;
    const GradedPoset& b;
    bool reverse;
    std::size_t limit;
    int top;
    std::vector<int> order;
    std::vector<int> map;
    std::vector<char> used;
    std::vector<std::vector<int>> found;

    int target_rank(int x) const { return reverse ? top - a.rank(x) : a.rank(x); }
    std::size_t target_up(int x) const { return reverse ? a.down(x).size() : a.up(x).size(); }
    std::size_t target_down(int x) const { return reverse ? a.up(x).size() : a.down(x).size(); }

    // Image of the cover x <. y must be a cover in b (flipped when reversed).
    bool image_covers(int lower, int upper) const {
        return reverse ? b.covers(map[upper], map[lower]) : b.covers(map[lower], map[upper]);
    }

    bool consistent(int x, int c) {
        if (b.rank(c) != target_rank(x) || b.up(c).size() != target_up(x) || b.down(c).size() != target_down(x))
            return false;
        map[x] = c;
        bool ok = true;
        for (int y : a.up(x))
            if (map[y] >= 0 && !image_covers(x, y)) ok = false;
        for (int y : a.down(x))
            if (map[y] >= 0 && !image_covers(y, x)) ok = false;
        if (!ok) map[x] = -1;
        return ok;
    }

    std::vector<int> candidates(int x) const {
        // Neighbors of an already placed neighbor's image, else everything.
        for (int y : a.up(x))
            if (map[y] >= 0) return reverse ? b.up(map[y]) : b.down(map[y]);
        for (int y : a.down(x))
            if (map[y] >= 0) return reverse ? b.down(map[y]) : b.up(map[y]);
        std::vector<int> all(b.size());
        for (int i = 0; i < b.size(); ++i) all[i] = i;
        return all;
    }

    void run(std::size_t depth) {
        if (found.size() >= limit) return;
        if (depth == order.size()) {
            found.push_back(map);
            return;
        }
        const int x = order[depth];
        for (int c : candidates(x)) {
            if (used[c] || !consistent(x, c)) continue;
            used[c] = 1;
            run(depth + 1);
            used[c] = 0;
            map[x] = -1;
            if (found.size() >= limit) return;
        }
    }
};

}  // namespace

std::vector<std::vector<int>> poset_isomorphisms(const GradedPoset& a, const GradedPoset& b, bool reverse,
                                                 std::size_t limit) {
    if (a.size() != b.size() || limit == 0) return {};
    const int top = std::max(a.max_rank(), b.max_rank());
    std::vector<int> count_a(top + 1, 0), count_b(top + 1, 0);
    for (int x = 0; x < a.size(); ++x) ++count_a[reverse ? top - a.rank(x) : a.rank(x)];
    for (int x = 0; x < b.size(); ++x) ++count_b[b.rank(x)];
    if (count_a != count_b) return {};

    Search s{a, b, reverse, limit, top, {}, std::vector<int>(a.size(), -1), std::vector<char>(b.size(), 0), {}};
    // Breadth-first over the cover graph so each placed element after the
    // first of its component already has a placed neighbor.
    std::vector<char> seen(a.size(), 0);
    std::vector<int> roots(a.size());
    for (int i = 0; i < a.size(); ++i) roots[i] = i;
    std::stable_sort(roots.begin(), roots.end(), [&](int x, int y) {
        return a.up(x).size() + a.down(x).size() > a.up(y).size() + a.down(y).size();
    });
    for (int r : roots) {
        if (seen[r]) continue;
        std::queue<int> q;
        q.push(r);
        seen[r] = 1;
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            s.order.push_back(x);
            for (const auto* nbrs : {&a.up(x), &a.down(x)})
                for (int y : *nbrs)
                    if (!seen[y]) {
                        seen[y] = 1;
                        q.push(y);
                    }
        }
    }
    s.run(0);
    return s.found;
}

std::size_t order_violations(const GradedPoset& a, const GradedPoset& b, const std::vector<int>& map, bool reverse) {
    std::size_t bad = 0;
    for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < a.size(); ++y) {
            if (x == y) continue;
            const bool in_a = a.less(x, y);
            const bool in_b = reverse ? b.less(map[y], map[x]) : b.less(map[x], map[y]);
            if (in_a != in_b) ++bad;
        }
    return bad;
}

}  // namespace ballpoly
