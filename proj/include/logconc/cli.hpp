#ifndef LOGCONC_CLI_HPP
#define LOGCONC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace logconc {

/// Entry point behind the `logconc` executable. `args` excludes the program
/// name. Reports go to `out` (or --out FILE), diagnostics to `err`. Returns
/// 0 on success, 2 for parse/spec errors, 3 for numeric failures and 4 when
/// the input is outside the method's scope.
///
/// Options also read LOGCONC_PRECISION_BITS, LOGCONC_PREFIX_CAP,
/// LOGCONC_TAIL_CAP and LOGCONC_FORMAT; flags win over the environment.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logconc

#endif  // LOGCONC_CLI_HPP
