#include <doctest.h>

TEST_SUITE("itinerary") {}
