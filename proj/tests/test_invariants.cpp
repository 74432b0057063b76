#include <doctest.h>

TEST_SUITE("invariants") {}
