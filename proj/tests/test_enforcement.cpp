#include "doctest.h"
TEST_CASE("placeholder enforcement") { CHECK(true); }
