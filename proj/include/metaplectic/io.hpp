#pragma once

// Wire formats: matrix JSON, verdict/report JSON, grid CSV (m <= 2) and the
// flat binary + JSON sidecar for m = 4.

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "metaplectic/decision.hpp"
#include "metaplectic/grid.hpp"

namespace metaplectic {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Matrix schema: {"half_dim": n, "entries": [[row], ...]} row-major.

inline Json matrix_to_json(const RealMatrix& m, int half_dim) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"half_dim", half_dim}, {"entries", std::move(rows)}};
}

inline Json matrix_to_json(const SymplecticMatrix& a) {
  return matrix_to_json(a.matrix(), a.half_dim());
}

inline RealMatrix real_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("half_dim") || !j.contains("entries"))
    fail(Err::ParseError, "expected {\"half_dim\", \"entries\"}");
  if (!j["half_dim"].is_number_integer()) fail(Err::ParseError, "half_dim must be an integer");
  int n = j["half_dim"].get<int>();
  if (n < 1) fail(Err::ParseError, "half_dim must be >= 1");
  const Json& rows = j["entries"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(2 * n))
    fail(Err::ParseError, "entries must hold 2*half_dim rows");
  RealMatrix m(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(2 * n))
      fail(Err::ParseError, "each row must hold 2*half_dim numbers");
    for (int k = 0; k < 2 * n; ++k) {
      if (!row[k].is_number()) fail(Err::ParseError, "matrix entries must be numbers");
      m(i, k) = row[k].get<double>();
      if (!std::isfinite(m(i, k))) fail(Err::ParseError, "matrix entries must be finite");
    }
  }
  return m;
}

inline Json complex_matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix complex_matrix_from_json(const Json& j) {
  if (!j.contains("re") || !j.contains("im")) fail(Err::ParseError, "expected {\"re\", \"im\"}");
  const Json& re = j["re"];
  const Json& im = j["im"];
  std::size_t rows = re.size();
  if (rows == 0 || im.size() != rows) fail(Err::ParseError, "re/im shape mismatch");
  std::size_t cols = re[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (re[i].size() != cols || im[i].size() != cols) fail(Err::ParseError, "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
  }
  return m;
}

// ---------------------------------------------------------------------------
// Verdict schema.

inline Json verdict_to_json(const Verdict& v) {
  return Json{{"kind", v.kind == VerdictKind::Sesquilinear ? "sesquilinear" : "quadratic"},
              {"holds", v.holds},
              {"off_block_norm", v.off_block_norm},
              {"conj_mismatch", v.conj_mismatch},
              {"tolerance", v.tolerance},
              {"borderline", v.borderline},
              {"deciding_product", complex_matrix_to_json(v.deciding_product)}};
}

inline Verdict verdict_from_json(const Json& j) {
  Verdict v;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sesquilinear")
    v.kind = VerdictKind::Sesquilinear;
  else if (kind == "quadratic")
    v.kind = VerdictKind::Quadratic;
  else
    fail(Err::ParseError, "unknown verdict kind");
  v.holds = j.at("holds").get<bool>();
  v.off_block_norm = j.at("off_block_norm").get<double>();
  v.conj_mismatch = j.at("conj_mismatch").get<double>();
  v.tolerance = j.at("tolerance").get<double>();
  v.borderline = j.at("borderline").get<bool>();
  v.deciding_product = complex_matrix_from_json(j.at("deciding_product"));
  return v;
}

inline Json support_report_to_json(const SupportReport& r) {
  return Json{{"eps", r.eps},
              {"area", r.area},
              {"mass_fraction", r.mass_fraction},
              {"threshold", r.threshold}};
}

inline SupportReport support_report_from_json(const Json& j) {
  SupportReport r;
  r.eps = j.at("eps").get<double>();
  r.area = j.at("area").get<double>();
  r.mass_fraction = j.at("mass_fraction").get<double>();
  r.threshold = j.at("threshold").get<double>();
  return r;
}

inline Json witness_recipe_to_json(const WitnessRecipe& r) {
  return Json{{"q", matrix_to_json(r.q, static_cast<int>(r.q.rows()) / 2)["entries"]},
              {"l", matrix_to_json(r.l, static_cast<int>(r.l.rows()) / 2)["entries"]},
              {"w", matrix_to_json(r.w, static_cast<int>(r.w.rows()) / 2)["entries"]},
              {"delta1", complex_matrix_to_json(r.delta1)},
              {"delta2", complex_matrix_to_json(r.delta2)}};
}

// ---------------------------------------------------------------------------
// Grid output: CSV with header "x1,...,xm,re,im,abs" for m <= 2, flat binary
// of little-endian doubles (re, im interleaved, row-major) with a JSON
// sidecar for m = 4.

inline void write_grid_csv(const GridFunction& f, std::ostream& os) {
  const int m = f.spec.dims;
  if (m > 2) fail(Err::BadParam, "CSV output supports m <= 2");
  for (int a = 0; a < m; ++a) os << "x" << (a + 1) << ",";
  os << "re,im,abs\n";
  os << std::setprecision(17);
  std::array<int, 4> idx{};
  for (std::size_t flat = 0; flat < f.samples.size(); ++flat) {
    detail::decode_index(flat, f.spec, idx);
    for (int a = 0; a < m; ++a) os << f.spec.coord(idx[a]) << ",";
    const Complex& z = f.samples[flat];
    os << z.real() << "," << z.imag() << "," << std::abs(z) << "\n";
  }
}

inline void write_grid_binary(const GridFunction& f, const std::string& path) {
  std::ofstream bin(path, std::ios::binary);
  if (!bin) fail(Err::BadParam, "cannot open '" + path + "' for writing");
  for (const Complex& z : f.samples) {
    double re = z.real(), im = z.imag();
    bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
    bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
  Json sidecar{{"dims", f.spec.dims}, {"N", f.spec.n}, {"h", f.spec.h}, {"order", "row-major"}};
  std::ofstream side(path + ".json");
  side << sidecar.dump(2) << "\n";
}

inline void write_grid(const GridFunction& f, const std::string& path) {
  if (f.spec.dims <= 2) {
    std::ofstream os(path);
    if (!os) fail(Err::BadParam, "cannot open '" + path + "' for writing");
    write_grid_csv(f, os);
  } else {
    write_grid_binary(f, path);
  }
}

}  // namespace metaplectic
