#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lieval/cohomology.hpp"
#include "lieval/rootsys.hpp"

namespace lieval::cli {

enum ExitCode { kPass = 0, kMismatch = 1, kConfigError = 2 };

// A reductive datum: simple components plus the rank of the connected centre.
// Accepted forms: "A2", "A1xB2", "A1,G2", "GL3" (A2 with centre 1), "T2"
// (a torus of rank 2).
struct ReductiveDatum {
  std::vector<RootSystem> components;
  int center = 0;
  std::string str() const;
};
ReductiveDatum parse_datum(const std::string& text);

// (1 + t)^{f * center} * prod over components of prod_i (1 + t^{2 m_i + 1})^f
Poly predicted_poincare(const ReductiveDatum& d, int f);

// Runs one command line (without the program name). Normal output goes to
// out, warnings, errors and timings to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lieval::cli
