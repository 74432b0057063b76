#include <doctest.h>

TEST_SUITE("angle") {}
