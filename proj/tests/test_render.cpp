#include <doctest.h>

TEST_SUITE("render") {}
