#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace listup {

// A self-organizing list over elements 1..n. Positions are 1-indexed: the
// front of the list is position 1. The initial configuration is always the
// identity (element i at position i).
class ListState {
public:
    ListState() = default;

    explicit ListState(int n) : order_(), pos_() {
        if (n < 1) throw std::invalid_argument("list size must be >= 1");
        order_.resize(static_cast<size_t>(n));
        pos_.resize(static_cast<size_t>(n) + 1);
        for (int i = 1; i <= n; ++i) {
            order_[static_cast<size_t>(i) - 1] = i;
            pos_[static_cast<size_t>(i)] = i;
        }
    }

    static ListState from_order(const std::vector<int>& order) {
        ListState ls(static_cast<int>(order.size()));
        ls.order_ = order;
        std::vector<bool> seen(order.size() + 1, false);
        for (int i = 1; i <= ls.size(); ++i) {
            int e = order[static_cast<size_t>(i) - 1];
            if (e < 1 || e > ls.size() || seen[static_cast<size_t>(e)])
                throw std::invalid_argument("order is not a permutation of 1..n");
            seen[static_cast<size_t>(e)] = true;
            ls.pos_[static_cast<size_t>(e)] = i;
        }
        return ls;
    }

    int size() const { return static_cast<int>(order_.size()); }

    // Element at position p (1-indexed).
    int element_at(int p) const {
        check_pos(p);
        return order_[static_cast<size_t>(p) - 1];
    }

    // Position of element e (1-indexed).
    int position(int e) const {
        check_elem(e);
        return pos_[static_cast<size_t>(e)];
    }

    const std::vector<int>& order() const { return order_; }

    // Exchange the elements at positions p and p+1 (one paid transposition).
    void swap_adjacent(int p) {
        check_pos(p);
        if (p == size()) throw std::out_of_range("swap position must be < n");
        int a = order_[static_cast<size_t>(p) - 1];
        int b = order_[static_cast<size_t>(p)];
        order_[static_cast<size_t>(p) - 1] = b;
        order_[static_cast<size_t>(p)] = a;
        pos_[static_cast<size_t>(a)] = p + 1;
        pos_[static_cast<size_t>(b)] = p;
    }

    // Move element e to the front; returns the number of adjacent
    // transpositions performed (position(e) - 1).
    int move_to_front(int e) {
        int p = position(e);
        for (int i = p - 1; i >= 1; --i) swap_adjacent(i);
        return p - 1;
    }

    // Elements currently at positions 1..l, in list order. l is clamped to n.
    std::vector<int> prefix_elements(int l) const {
        if (l < 0) throw std::invalid_argument("negative prefix length");
        if (l > size()) l = size();
        return std::vector<int>(order_.begin(), order_.begin() + l);
    }

    // Number of inversions between this list and `other` (pairs ordered
    // differently). Symmetric; equals the minimum number of adjacent
    // transpositions turning one into the other (Kendall tau distance).
    long long inversions_against(const ListState& other) const {
        if (other.size() != size())
            throw std::invalid_argument("inversion count over mismatched sizes");
        long long inv = 0;
        for (int p = 1; p <= size(); ++p)
            for (int q = p + 1; q <= size(); ++q) {
                int a = element_at(p), b = element_at(q);
                if (other.position(a) > other.position(b)) ++inv;
            }
        return inv;
    }

    // Elements strictly before e in this list but strictly after e in
    // `other` (the inverted predecessors of e).
    std::vector<int> inverted_before(int e, const ListState& other) const {
        std::vector<int> out;
        int pe = position(e);
        for (int p = 1; p < pe; ++p) {
            int a = element_at(p);
            if (other.position(a) > other.position(e)) out.push_back(a);
        }
        return out;
    }

    // Elements strictly before e in this list and also before e in `other`.
    std::vector<int> noninverted_before(int e, const ListState& other) const {
        std::vector<int> out;
        int pe = position(e);
        for (int p = 1; p < pe; ++p) {
            int a = element_at(p);
            if (other.position(a) < other.position(e)) out.push_back(a);
        }
        return out;
    }

    bool operator==(const ListState& o) const { return order_ == o.order_; }
    bool operator!=(const ListState& o) const { return !(*this == o); }

private:
    void check_pos(int p) const {
        if (p < 1 || p > size()) throw std::out_of_range("list position out of range");
    }
    void check_elem(int e) const {
        if (e < 1 || e > size()) throw std::out_of_range("element id out of range");
    }

    std::vector<int> order_; // order_[p-1] = element at position p
    std::vector<int> pos_;   // pos_[e] = position of element e
};

} // namespace listup
