#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "csic/basis.hpp"
#include "csic/certify.hpp"
#include "csic/diffset.hpp"
#include "csic/dual.hpp"
#include "csic/optim.hpp"
#include "csic/povm.hpp"
#include "csic/scheme.hpp"
#include "csic/tomo.hpp"

namespace csic {

using nlohmann::json;

/// Shortest-round-trip decimal formatting; used everywhere a double lands in
/// CSV or fixed-width tables so outputs are byte-deterministic.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// Matrices: nested arrays of [re, im] pairs, row-major.

inline json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("matrix JSON: expected a non-empty array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix JSON: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& cell = row.at(static_cast<size_t>(c));
      if (!cell.is_array() || cell.size() != 2) {
        throw std::invalid_argument("matrix JSON: entries must be [re, im] pairs");
      }
      m(i, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Basis files: {"n": int, "elements": [matrix, ...]}

inline json basis_to_json(const HermitianBasis& b) {
  json elements = json::array();
  for (const CMatrix& e : b.elements()) elements.push_back(matrix_to_json(e));
  return json{{"n", b.dim()}, {"elements", std::move(elements)}};
}

inline HermitianBasis basis_from_json(const json& j, double tol = kTol) {
  int n = j.at("n").get<int>();
  std::vector<CMatrix> elements;
  for (const json& e : j.at("elements")) elements.push_back(matrix_from_json(e));
  return HermitianBasis::from_elements(n, std::move(elements), tol);
}

// ---------------------------------------------------------------------------
// POVM files: {"n": int, "N": int, "weights": [...], "elements": [matrix,...]}

inline json povm_to_json(const Povm& p) {
  json elements = json::array();
  json weights = json::array();
  for (int i = 0; i < p.size(); ++i) {
    elements.push_back(matrix_to_json(p.element(i)));
    weights.push_back(p.weight(i));
  }
  return json{{"n", p.dim()},
              {"N", p.size()},
              {"weights", std::move(weights)},
              {"elements", std::move(elements)}};
}

inline Povm povm_from_json(const json& j, double tol = kTol) {
  int n = j.at("n").get<int>();
  std::vector<CMatrix> elements;
  for (const json& e : j.at("elements")) elements.push_back(matrix_from_json(e));
  if (j.contains("N") &&
      j.at("N").get<int>() != static_cast<int>(elements.size())) {
    throw std::invalid_argument("povm JSON: N does not match element count");
  }
  Povm povm(n, std::move(elements), tol);
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    if (static_cast<int>(w.size()) != povm.size()) {
      throw std::invalid_argument("povm JSON: weight count mismatch");
    }
    for (int i = 0; i < povm.size(); ++i) {
      if (std::abs(w.at(static_cast<size_t>(i)).get<double>() - povm.weight(i)) >
          std::max(tol, 1e-12)) {
        throw std::invalid_argument("povm JSON: stored weight disagrees with Tr F_i");
      }
    }
  }
  return povm;
}

/// Serializes a rank-1 equal-weight frame that need not sum to the identity
/// yet (optimizer output); povm_from_json with a loose tolerance reads it back.
inline json fiducial_frame_to_json(int n, const std::vector<CVector>& fiducials) {
  const double w = double(n) / double(fiducials.size());
  json elements = json::array();
  json weights = json::array();
  for (const CVector& v : fiducials) {
    CMatrix f = w * (v * v.adjoint());
    elements.push_back(matrix_to_json(f));
    weights.push_back(w);
  }
  return json{{"n", n},
              {"N", static_cast<int>(fiducials.size())},
              {"weights", std::move(weights)},
              {"elements", std::move(elements)}};
}

// ---------------------------------------------------------------------------
// Difference sets: {"N": int, "n": int, "lambda": int, "residues": [...]}

inline json difference_set_to_json(const DifferenceSet& d) {
  return json{{"N", d.modulus},
              {"n", d.size()},
              {"lambda", d.multiplicity},
              {"residues", d.residues}};
}

inline DifferenceSet difference_set_from_json(const json& j) {
  DifferenceSet d;
  d.modulus = j.at("N").get<std::int64_t>();
  d.multiplicity = j.contains("lambda") ? j.at("lambda").get<std::int64_t>() : 1;
  d.residues = j.at("residues").get<std::vector<std::int64_t>>();
  if (j.contains("n") && j.at("n").get<int>() != d.size()) {
    throw std::invalid_argument("difference set JSON: n does not match residue count");
  }
  detail::validate_residues(d.residues, d.modulus);
  std::sort(d.residues.begin(), d.residues.end());
  return d;
}

inline json diffset_certificate_to_json(const DifferenceSetCertificate& c) {
  std::vector<std::int64_t> counts(c.counts.begin() + std::min<size_t>(1, c.counts.size()),
                                   c.counts.end());
  return json{{"passed", c.passed},
              {"counting_ok", c.counting_ok},
              {"N", c.modulus},
              {"lambda", c.multiplicity},
              {"counts", std::move(counts)}};
}

inline std::string diffset_certificate_table(const DifferenceSetCertificate& c) {
  std::ostringstream out;
  out << "difference-set certificate (N=" << c.modulus
      << ", lambda=" << c.multiplicity << ")\n";
  out << "  counting identity n(n-1)=lambda(N-1): "
      << (c.counting_ok ? "ok" : "violated") << "\n";
  std::int64_t bad = 0;
  for (size_t r = 1; r < c.counts.size(); ++r) {
    if (c.counts[r] != c.multiplicity) ++bad;
  }
  out << "  residues with wrong difference count: " << bad << "\n";
  if (c.modulus <= 64) {
    out << "  residue  count\n";
    for (size_t r = 1; r < c.counts.size(); ++r) {
      char line[64];
      std::snprintf(line, sizeof(line), "  %7zu  %5lld\n", r,
                    static_cast<long long>(c.counts[r]));
      out << line;
    }
  } else if (bad > 0) {
    out << "  residue  count (violations only)\n";
    for (size_t r = 1; r < c.counts.size(); ++r) {
      if (c.counts[r] == c.multiplicity) continue;
      char line[64];
      std::snprintf(line, sizeof(line), "  %7zu  %5lld\n", r,
                    static_cast<long long>(c.counts[r]));
      out << line;
    }
  }
  out << "  verdict: " << (c.passed ? "PASS" : "FAIL") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Schemes: {"n": int, "known": [...]} plus the two named shorthands.

inline json scheme_to_json(const Scheme& s) {
  return json{{"n", s.dim()}, {"known", s.known()}};
}

inline Scheme scheme_from_json(const json& j) {
  return Scheme(j.at("n").get<int>(),
                j.at("known").get<std::vector<int>>());
}

// ---------------------------------------------------------------------------
// Certificates.

inline json csic_certificate_to_json(const CsicCertificate& c) {
  return json{{"n", c.dim},
              {"N", c.size},
              {"expected_N", c.expected_size},
              {"parameter_count_ok", c.parameter_count_ok},
              {"overlap_target", c.overlap_target},
              {"sum_deviation", c.sum_deviation},
              {"overlap_deviation", c.overlap_deviation},
              {"orthogonality_deviation", c.orthogonality_deviation},
              {"weight_deviation", c.weight_deviation},
              {"rank1_deviation", c.rank1_deviation},
              {"tolerance", c.tolerance},
              {"passed", c.passed}};
}

inline std::string csic_certificate_table(const CsicCertificate& c) {
  std::ostringstream out;
  out << "conditional SIC certificate (n=" << c.dim << ", N=" << c.size
      << ", expected N=" << c.expected_size << ")\n";
  out << "  parameter count: " << (c.parameter_count_ok ? "ok" : "MISMATCH")
      << "\n";
  out << "  overlap target:  " << format_double(c.overlap_target) << "\n";
  auto row = [&](const char* name, double v) {
    char line[96];
    std::snprintf(line, sizeof(line), "  %-24s %s\n", name,
                  format_double(v).c_str());
    out << line;
  };
  row("sum deviation", c.sum_deviation);
  row("overlap deviation", c.overlap_deviation);
  row("orthogonality deviation", c.orthogonality_deviation);
  row("weight deviation", c.weight_deviation);
  row("rank-1 deviation", c.rank1_deviation);
  row("tolerance", c.tolerance);
  out << "  verdict: " << (c.passed ? "PASS" : "FAIL") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Dual frames.

inline json dual_frame_to_json(const DualFrame& d) {
  json elements = json::array();
  for (const CMatrix& q : d.elements) elements.push_back(matrix_to_json(q));
  return json{{"n", d.dim},
              {"N", static_cast<int>(d.elements.size())},
              {"scheme", scheme_to_json(d.scheme)},
              {"elements", std::move(elements)}};
}

// ---------------------------------------------------------------------------
// Simulation output.

inline std::string simulation_csv(const SimResult& r) {
  std::ostringstream out;
  out << "trial,sq_error,theoretical_T\n";
  for (size_t t = 0; t < r.records.size(); ++t) {
    out << t << ',' << format_double(r.records[t].sq_error) << ','
        << format_double(r.records[t].theoretical) << '\n';
  }
  return out.str();
}

inline json simulation_summary_json(const SimResult& r, std::uint64_t seed) {
  return json{{"mean_sq_error", r.mean_sq_error},
              {"std_error", r.std_error},
              {"theoretical_mean", r.theoretical_mean},
              {"shots", r.shots},
              {"trials", r.trials},
              {"seed", seed}};
}

inline json optim_report_to_json(const OptimReport& r) {
  json j{{"best_objective", r.best_objective},
         {"converged", r.converged},
         {"iterations", r.iterations},
         {"best_restart", r.best_restart}};
  if (r.certificate) j["certificate"] = csic_certificate_to_json(*r.certificate);
  return j;
}

// ---------------------------------------------------------------------------
// Files.

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

inline json parse_json(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw std::runtime_error("malformed JSON in " + origin);
  }
  return j;
}

inline json read_json_file(const std::string& path) {
  return parse_json(read_text_file(path), path);
}

inline void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace csic
