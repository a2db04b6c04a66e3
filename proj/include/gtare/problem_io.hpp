#ifndef GTARE_PROBLEM_IO_HPP
#define GTARE_PROBLEM_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "gtare/model.hpp"

namespace gtare {

/// Parsed problem file: the coefficients plus the optional certificate gain.
struct ProblemFile {
  GtareProblem problem;
  std::optional<MatrixXd> L;
  std::vector<std::string> warnings;  // unknown fields in lax mode
};

/// Reads a JSON problem file. strict = true rejects unknown fields with
/// ParseError; lax mode records them as warnings. Rank-deficient R(0) is
/// rejected with UnsupportedRankDeficientR.
ProblemFile read_problem(const std::string& path, bool strict = true,
                         const Tolerances& tol = {});
ProblemFile parse_problem(const std::string& text, bool strict = true,
                          const Tolerances& tol = {});

/// Writes the problem (and L if present) as JSON; doubles round-trip
/// exactly (shortest-representation serialization, >= 17 significant
/// digits where needed).
std::string problem_to_json(const GtareProblem& p,
                            const std::optional<MatrixXd>& L = std::nullopt);
void write_problem(const std::string& path, const GtareProblem& p,
                   const std::optional<MatrixXd>& L = std::nullopt);

/// Reads a matrix file: either a bare nested array or an object holding one
/// of the keys "P", "L", "matrix".
MatrixXd read_matrix(const std::string& path);

/// Reads either a matrix (as above, interpreted as P) or an object with
/// "K1" and "K2" gain matrices.
struct POrGains {
  std::optional<MatrixXd> P;
  std::optional<Gains> gains;
};
POrGains read_p_or_gains(const std::string& path);

}  // namespace gtare

#endif  // GTARE_PROBLEM_IO_HPP
