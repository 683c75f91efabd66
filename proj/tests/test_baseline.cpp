#include "doctest.h"
TEST_CASE("placeholder baseline") { CHECK(true); }
