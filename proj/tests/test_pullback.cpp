#include <doctest.h>

TEST_SUITE("pullback") {}
