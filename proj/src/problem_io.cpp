#include "gtare/problem_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gtare {

namespace {

using nlohmann::json;

MatrixXd parse_matrix(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorCode::ParseError,
                name + ": expected a nested array of numbers");
  }
  const size_t rows = j.size();
  const size_t cols = j[0].size();
  MatrixXd m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw Error(ErrorCode::ParseError, name + ": ragged rows");
    }
    for (size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) {
        throw Error(ErrorCode::ParseError, name + ": non-numeric entry");
      }
      m(static_cast<Index>(i), static_cast<Index>(k)) =
          j[i][k].get<double>();
    }
  }
  return m;
}

std::vector<MatrixXd> parse_matrix_list(const json& j,
                                        const std::string& name) {
  if (!j.is_array()) {
    throw Error(ErrorCode::ParseError, name + ": expected a list of matrices");
  }
  std::vector<MatrixXd> out;
  for (size_t l = 0; l < j.size(); ++l) {
    out.push_back(parse_matrix(j[l], name + "[" + std::to_string(l) + "]"));
  }
  return out;
}

json matrix_to_json(const MatrixXd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError,
                path + ": JSON parse error: " + e.what());
  }
  return j;
}

}  // namespace

ProblemFile parse_problem(const std::string& text, bool strict,
                          const Tolerances& tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError,
                std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::ParseError, "problem file must be a JSON object");
  }

  const std::set<std::string> known = {"n",  "m1", "m2",  "r",   "A",
                                       "C",  "B1", "B2",  "D1",  "D2",
                                       "Q",  "S1", "S2",  "R11", "R12",
                                       "R22", "L"};
  ProblemFile out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      if (strict) {
        throw Error(ErrorCode::ParseError,
                    "unknown field '" + it.key() + "' (strict mode)");
      }
      out.warnings.push_back("unknown field '" + it.key() + "' ignored");
    }
  }
  for (const char* req :
       {"n", "m1", "m2", "r", "A", "C", "B1", "B2", "D1", "D2", "Q", "S1",
        "S2", "R11", "R12", "R22"}) {
    if (!j.contains(req)) {
      throw Error(ErrorCode::ParseError,
                  std::string("missing field '") + req + "'");
    }
  }

  GtareProblem& p = out.problem;
  for (const char* dim : {"n", "m1", "m2", "r"}) {
    if (!j[dim].is_number_integer() || j[dim].get<long long>() <= 0) {
      throw Error(ErrorCode::ParseError,
                  std::string(dim) + " must be a positive integer");
    }
  }
  p.n = j["n"].get<Index>();
  p.m1 = j["m1"].get<Index>();
  p.m2 = j["m2"].get<Index>();
  p.r = j["r"].get<Index>();
  p.A = parse_matrix(j["A"], "A");
  p.C = parse_matrix_list(j["C"], "C");
  p.B1 = parse_matrix(j["B1"], "B1");
  p.B2 = parse_matrix(j["B2"], "B2");
  p.D1 = parse_matrix_list(j["D1"], "D1");
  p.D2 = parse_matrix_list(j["D2"], "D2");
  p.S1 = parse_matrix(j["S1"], "S1");
  p.S2 = parse_matrix(j["S2"], "S2");
  p.R12 = parse_matrix(j["R12"], "R12");
  try {
    p.Q = SymMatrix(parse_matrix(j["Q"], "Q"), tol.sym_tol_scale);
    p.R11 = SymMatrix(parse_matrix(j["R11"], "R11"), tol.sym_tol_scale);
    p.R22 = SymMatrix(parse_matrix(j["R22"], "R22"), tol.sym_tol_scale);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (j.contains("L")) out.L = parse_matrix(j["L"], "L");

  const std::vector<std::string> diags = validate(p, tol);
  if (!diags.empty()) {
    std::ostringstream os;
    os << "invalid problem:";
    for (const std::string& d : diags) os << " " << d << ";";
    throw Error(ErrorCode::ParseError, os.str());
  }
  // Remark-2.1 restriction: R(0) must have full rank; the Moore-Penrose
  // branch of the GTARE is out of scope.
  const CoefficientBlocks b =
      coefficient_blocks(p, SymMatrix::Zero(p.n));
  try {
    solve_linear(b.RP.mat(), MatrixXd::Identity(b.RP.dim(), b.RP.dim()), tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) {
      throw Error(ErrorCode::UnsupportedRankDeficientR,
                  "R(0) is rank-deficient at tolerance; only full-rank R(P) "
                  "is supported");
    }
    throw;
  }
  return out;
}

ProblemFile read_problem(const std::string& path, bool strict,
                         const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), strict, tol);
}

std::string problem_to_json(const GtareProblem& p,
                            const std::optional<MatrixXd>& L) {
  json j;
  j["n"] = p.n;
  j["m1"] = p.m1;
  j["m2"] = p.m2;
  j["r"] = p.r;
  j["A"] = matrix_to_json(p.A);
  json C = json::array(), D1 = json::array(), D2 = json::array();
  for (const MatrixXd& m : p.C) C.push_back(matrix_to_json(m));
  for (const MatrixXd& m : p.D1) D1.push_back(matrix_to_json(m));
  for (const MatrixXd& m : p.D2) D2.push_back(matrix_to_json(m));
  j["C"] = std::move(C);
  j["D1"] = std::move(D1);
  j["D2"] = std::move(D2);
  j["B1"] = matrix_to_json(p.B1);
  j["B2"] = matrix_to_json(p.B2);
  j["Q"] = matrix_to_json(p.Q.mat());
  j["S1"] = matrix_to_json(p.S1);
  j["S2"] = matrix_to_json(p.S2);
  j["R11"] = matrix_to_json(p.R11.mat());
  j["R12"] = matrix_to_json(p.R12);
  j["R22"] = matrix_to_json(p.R22.mat());
  if (L) j["L"] = matrix_to_json(*L);
  return j.dump(2) + "\n";
}

void write_problem(const std::string& path, const GtareProblem& p,
                   const std::optional<MatrixXd>& L) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::ParseError, "cannot write file: " + path);
  }
  out << problem_to_json(p, L);
}

MatrixXd read_matrix(const std::string& path) {
  const json j = load_json_file(path);
  if (j.is_array()) return parse_matrix(j, path);
  if (j.is_object()) {
    for (const char* key : {"P", "L", "matrix"}) {
      if (j.contains(key)) return parse_matrix(j[key], key);
    }
  }
  throw Error(ErrorCode::ParseError,
              path + ": expected a nested array or an object with P/L/matrix");
}

POrGains read_p_or_gains(const std::string& path) {
  const json j = load_json_file(path);
  POrGains out;
  if (j.is_object() && j.contains("K1") && j.contains("K2")) {
    Gains g;
    g.K1 = parse_matrix(j["K1"], "K1");
    g.K2 = parse_matrix(j["K2"], "K2");
    out.gains = std::move(g);
    return out;
  }
  if (j.is_array()) {
    out.P = parse_matrix(j, path);
    return out;
  }
  if (j.is_object()) {
    for (const char* key : {"P", "matrix"}) {
      if (j.contains(key)) {
        out.P = parse_matrix(j[key], key);
        return out;
      }
    }
  }
  throw Error(ErrorCode::ParseError,
              path + ": expected a matrix P or an object with K1 and K2");
}

}  // namespace gtare
