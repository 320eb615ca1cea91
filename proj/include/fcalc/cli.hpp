#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcalc {

/// Runs one fcalc command line (without the program name). Returns 0 on
/// success, 1 when an oracle or exactness check fails, 2 on bad input.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FCALC_MARGIN if set to a non-negative integer, else 2.
int default_margin();

}  // namespace fcalc
