#include "doctest.h"

#include "listup/list_state.hpp"

using namespace listup;

TEST_CASE("initial configuration is the identity") {
    ListState ls(4);
    for (int i = 1; i <= 4; ++i) {
        CHECK(ls.element_at(i) == i);
        CHECK(ls.position(i) == i);
    }
}

TEST_CASE("adjacent swaps update both directions of the index") {
    ListState ls(3);
    ls.swap_adjacent(1); // 2 1 3
    CHECK(ls.element_at(1) == 2);
    CHECK(ls.position(1) == 2);
    ls.swap_adjacent(2); // 2 3 1
    CHECK(ls.order() == std::vector<int>{2, 3, 1});
    CHECK_THROWS_AS(ls.swap_adjacent(3), std::out_of_range);
    CHECK_THROWS_AS(ls.swap_adjacent(0), std::out_of_range);
}

TEST_CASE("move_to_front returns the transposition count") {
    ListState ls(5);
    CHECK(ls.move_to_front(4) == 3);
    CHECK(ls.order() == std::vector<int>{4, 1, 2, 3, 5});
    CHECK(ls.move_to_front(4) == 0);
}

TEST_CASE("inversions equal the adjacent-swap distance") {
    ListState a(4);
    ListState b = ListState::from_order({4, 3, 2, 1});
    CHECK(a.inversions_against(b) == 6);
    CHECK(b.inversions_against(a) == 6);
    CHECK(a.inversions_against(a) == 0);
    ListState c = ListState::from_order({2, 1, 3, 4});
    CHECK(a.inversions_against(c) == 1);
}

TEST_CASE("inverted and non-inverted predecessor sets") {
    ListState alg = ListState::from_order({3, 1, 2});
    ListState opt = ListState::from_order({1, 2, 3});
    // Before 2 in alg: 3 and 1. In opt, 3 is after 2 and 1 is before it.
    CHECK(alg.inverted_before(2, opt) == std::vector<int>{3});
    CHECK(alg.noninverted_before(2, opt) == std::vector<int>{1});
}

TEST_CASE("from_order rejects non-permutations") {
    CHECK_THROWS_AS(ListState::from_order({1, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(ListState::from_order({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(ListState::from_order({1, 3}), std::invalid_argument);
}
