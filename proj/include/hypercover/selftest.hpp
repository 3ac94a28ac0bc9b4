#pragma once

#include <ostream>

namespace hypercover {

// The acceptance suite: ten seeded end-to-end criteria, one pass/fail line
// each, checked against independent exhaustive reference scans.  Returns
// true iff every criterion passed.
bool run_selftest(std::ostream& out);

}  // namespace hypercover
