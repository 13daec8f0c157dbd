#ifndef OOPS_PRESETS_HPP
#define OOPS_PRESETS_HPP

#include <vector>

#include "oops/driver.hpp"

namespace oops {

// tokens of the two discovered nested-recursion solvers
std::vector<int> onetwon_starter_tokens(); // solves the first instance
std::vector<int> onetwon_solver_tokens();  // solves every instance
std::vector<int> hanoi_solver_tokens();
std::vector<int> hanoi_suffix_tokens(); // the part after the bias shift

// freezes the two list-building solvers into the store exactly as a
// completed first-suite run leaves them: a closed two-token starter and an
// open five-token universal solver
void preload_solvers(Engine &e);

// probability of the forced token sequence on a fresh instance of the given
// suite with the given boosts; tape state restored
ForcedOut forced_probability(Engine &e, Suite s, int n,
                             const std::vector<int> &boosts,
                             const std::vector<int> &tokens);

} // namespace oops

#endif
