#include "doctest.h"
TEST_CASE("placeholder certificates") { CHECK(true); }
