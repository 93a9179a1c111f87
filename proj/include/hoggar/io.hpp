// SPDX-License-Identifier: Apache-2.0
//
// JSON and CSV serialization. Documents are nlohmann::ordered_json so key
// order is insertion order; dump() prints floats with %.17g so output is
// byte-stable across runs.
#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hoggar/bloch.hpp"
#include "hoggar/capacity.hpp"
#include "hoggar/designs.hpp"
#include "hoggar/infotheory.hpp"
#include "hoggar/sic.hpp"

namespace hoggar::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep the value typed as a float when re-read.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void dump_to(const Json& j, std::string& out, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_to(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_to(e, out, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

inline std::string dump(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_to(j, out, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed JSON in " + path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

// ---- complex literals ------------------------------------------------------

/// Parses sums of terms [coef][sqrt3][i] such as "-1+2i", "1-sqrt3i",
/// "0.5+0.5sqrt3+0.5i-0.5sqrt3i". A bare "i" or "sqrt3" has coefficient 1.
inline Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw InvalidArgument("empty complex literal");
  const double root3 = std::sqrt(3.0);
  Complex total{0.0, 0.0};
  std::size_t pos = 0;
  bool any = false;
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (any) {
      throw InvalidArgument("bad complex literal '" + std::string(text) + "'");
    }
    double coef = 1.0;
    bool has_body = false;
    const std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                              ((s[pos] == 'e' || s[pos] == 'E') && pos > start && pos + 1 < s.size() &&
                               (std::isdigit(static_cast<unsigned char>(s[pos + 1])) || s[pos + 1] == '-' ||
                                s[pos + 1] == '+')))) {
      if (s[pos] == 'e' || s[pos] == 'E') pos += 2;
      else ++pos;
    }
    if (pos > start) {
      const std::string num = s.substr(start, pos - start);
      std::size_t used = 0;
      try {
        coef = std::stod(num, &used);
      } catch (const std::exception&) {
        throw InvalidArgument("bad number '" + num + "' in complex literal");
      }
      if (used != num.size()) throw InvalidArgument("bad number '" + num + "' in complex literal");
      has_body = true;
    }
    if (s.compare(pos, 5, "sqrt3") == 0) {
      coef *= root3;
      pos += 5;
      has_body = true;
    }
    bool imag = false;
    if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j')) {
      imag = true;
      ++pos;
      has_body = true;
    }
    if (!has_body) throw InvalidArgument("bad complex literal '" + std::string(text) + "'");
    total += imag ? Complex(0.0, sign * coef) : Complex(sign * coef, 0.0);
    any = true;
  }
  return total;
}

// ---- matrices and vectors ----------------------------------------------------

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("complex must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline Json vector_to_json(const ComplexVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("vector must be an array");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

/// {"rows","cols","entries"} with row-major [re, im] entries.
inline Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json e = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) e.push_back(to_json(m(r, c)));
  }
  j["entries"] = std::move(e);
  return j;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<Index>();
    const auto cols = j.at("cols").get<Index>();
    const Json& e = j.at("entries");
    if (rows < 0 || cols < 0 || e.size() != static_cast<std::size_t>(rows * cols)) {
      throw InvalidArgument("matrix entry count does not match rows*cols");
    }
    ComplexMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(e[static_cast<std::size_t>(r * cols + c)]);
    }
    return m;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("malformed matrix: ") + ex.what());
  }
}

inline Json to_json(const HadamardMatrix& h) {
  Json j = matrix_to_json(h.matrix());
  if (h.is_real()) j["signs"] = h.signs();
  return j;
}

inline HadamardMatrix hadamard_from_json(const Json& j) {
  if (j.contains("signs")) return HadamardMatrix::from_signs(j.at("rows").get<int>(), j.at("signs").get<std::vector<int>>());
  return HadamardMatrix::from_matrix(matrix_from_json(j), 1e-12);
}

// ---- families ----------------------------------------------------------------

inline Json to_json(const SicFamily& fam) {
  Json j;
  j["d"] = fam.dim();
  j["v"] = to_json(fam.v());
  j["hadamard"] = to_json(fam.hadamard());
  Json vs = Json::array();
  for (const auto& cv : fam.vectors()) {
    Json e;
    e["j"] = cv.j;
    e["k"] = cv.k;
    e["coords"] = vector_to_json(cv.coords);
    vs.push_back(std::move(e));
  }
  j["vectors"] = std::move(vs);
  return j;
}

inline SicFamily family_from_json(const Json& j) {
  try {
    const int d = j.at("d").get<int>();
    HadamardMatrix h = hadamard_from_json(j.at("hadamard"));
    if (h.dim() != d) throw InvalidArgument("family: hadamard dimension differs from d");
    std::vector<ConstructionVector> vecs;
    for (const auto& e : j.at("vectors")) {
      ConstructionVector cv;
      cv.j = e.at("j").get<int>();
      cv.k = e.at("k").get<int>();
      cv.coords = vector_from_json(e.at("coords"));
      if (cv.coords.size() != d) throw InvalidArgument("family: vector length differs from d");
      cv.squared_norm = cv.coords.squaredNorm();
      vecs.push_back(std::move(cv));
    }
    return SicFamily(std::move(h), complex_from_json(j.at("v")), std::move(vecs));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("malformed family: ") + ex.what());
  }
}

// ---- ensembles and distributions --------------------------------------------

inline Json to_json(const Ensemble& e) {
  Json j;
  j["weights"] = e.weights();
  Json states = Json::array();
  for (const auto& s : e.states()) {
    Json st;
    if (s.is_pure()) {
      st["kind"] = "pure";
      st["coords"] = vector_to_json(s.vector());
    } else {
      st["kind"] = "mixed";
      st["matrix"] = matrix_to_json(s.density());
    }
    states.push_back(std::move(st));
  }
  j["states"] = std::move(states);
  return j;
}

inline Ensemble ensemble_from_json(const Json& j) {
  try {
    std::vector<QuantumState> states;
    for (const auto& st : j.at("states")) {
      const auto kind = st.at("kind").get<std::string>();
      if (kind == "pure") {
        states.push_back(QuantumState::pure(vector_from_json(st.at("coords"))));
      } else if (kind == "mixed") {
        states.push_back(QuantumState::mixed(matrix_from_json(st.at("matrix"))));
      } else {
        throw InvalidArgument("ensemble: unknown state kind '" + kind + "'");
      }
    }
    return Ensemble(std::move(states), j.at("weights").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("malformed ensemble: ") + ex.what());
  }
}

inline Json to_json(const OutcomeDistribution& d) {
  Json j;
  j["probs"] = d.probs;
  j["zero_count"] = d.zero_count;
  return j;
}

// ---- designs -----------------------------------------------------------------

inline Json triple_json(const BinaryTriple& t) { return Json::array({t.bits[0], t.bits[1], t.bits[2]}); }

inline Json to_json(const ZeroBlockDesign& d) {
  Json j;
  j["points"] = d.params.points;
  Json blocks = Json::array();
  for (const auto& b : d.blocks) {
    Json e;
    e["mu"] = triple_json(b.mu);
    e["nu"] = triple_json(b.nu);
    Json members = Json::array();
    for (int x : b.members) members.push_back(Json::array({x >> 3, x & 7}));
    e["members"] = std::move(members);
    blocks.push_back(std::move(e));
  }
  j["blocks"] = std::move(blocks);
  j["params"] = Json::array({d.params.points, d.params.block_size, d.params.lambda});
  return j;
}

inline ZeroBlockDesign design_from_json(const Json& j) {
  try {
    ZeroBlockDesign d;
    const auto triple = [](const Json& a) {
      const auto bits = a.get<std::vector<int>>();
      if (bits.size() != 3) throw InvalidArgument("design: triple must have 3 bits");
      for (int b : bits) {
        if (b != 0 && b != 1) throw InvalidArgument("design: bits must be 0 or 1");
      }
      return BinaryTriple::from_index((bits[0] << 2) | (bits[1] << 1) | bits[2]);
    };
    for (const auto& e : j.at("blocks")) {
      Block b;
      b.mu = triple(e.at("mu"));
      b.nu = triple(e.at("nu"));
      for (const auto& m : e.at("members")) {
        const int iota = m.at(0).get<int>();
        const int kappa = m.at(1).get<int>();
        if (iota < 0 || iota > 7 || kappa < 0 || kappa > 7) throw InvalidArgument("design: point out of range");
        b.members.push_back((iota << 3) | kappa);
      }
      std::sort(b.members.begin(), b.members.end());
      d.blocks.push_back(std::move(b));
    }
    const auto p = j.at("params").get<std::vector<int>>();
    if (p.size() != 3) throw InvalidArgument("design: params must be [v, k, lambda]");
    d.params = {p[0], p[1], p[2]};
    return d;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("malformed design: ") + ex.what());
  }
}

// ---- optimizer results -------------------------------------------------------

inline Json to_json(const OptimizerConfig& c) {
  Json j;
  j["restarts"] = c.restarts;
  j["max_iters"] = c.max_iters;
  j["step_init"] = c.step_init;
  j["grad_tol"] = c.grad_tol;
  j["value_tol"] = c.value_tol;
  j["seed"] = c.seed;
  j["gap_tol"] = c.gap_tol;
  j["max_rounds"] = c.max_rounds;
  return j;
}

inline Json to_json(const StateSearchResult& r, const OptimizerConfig& c) {
  Json j;
  j["config"] = to_json(c);
  j["best_value"] = r.best_value;
  j["best_restart"] = r.best_restart;
  j["converged"] = r.converged;
  j["iterations_used"] = r.iterations_used;
  j["restart_values"] = r.restart_values;
  j["best_state"] = vector_to_json(r.best_state);
  return j;
}

inline Json to_json(const EnsembleSearchResult& r, const OptimizerConfig& c) {
  Json j;
  j["config"] = to_json(c);
  j["best_value"] = r.best_value;
  j["min_entropy"] = r.min_entropy;
  j["certificate"] = r.certificate;
  j["certificate_gap"] = r.certificate_gap;
  j["rounds"] = r.rounds;
  j["converged"] = r.converged;
  j["iterations_used"] = r.iterations_used;
  j["restart_values"] = r.restart_values;
  j["round_values"] = r.round_values;
  j["ensemble"] = to_json(r.ensemble());
  return j;
}

// ---- CSV ---------------------------------------------------------------------

inline std::string bloch_csv(const std::vector<BlochVector>& vs, const HermitianBasis& basis) {
  std::string out;
  for (std::size_t a = 0; a < basis.names.size(); ++a) {
    if (a) out += ',';
    out += basis.names[a];
  }
  out += '\n';
  for (const auto& v : vs) {
    for (Index a = 0; a < v.size(); ++a) {
      if (a) out += ',';
      out += format_double(v(a));
    }
    out += '\n';
  }
  return out;
}

inline std::string matrix_csv(const RealMatrix& m) {
  std::string out;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

inline std::string incidence_csv(const ZeroBlockDesign& d) {
  std::string out;
  for (const auto& row : incidence_matrix(d)) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c] ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

}  // namespace hoggar::io
