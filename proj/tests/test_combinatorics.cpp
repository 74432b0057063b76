#include <doctest.h>

TEST_SUITE("combinatorics") {}
