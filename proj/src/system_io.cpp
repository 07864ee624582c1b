#include "qfs/system_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qfs/errors.hpp"

namespace qfs {

using nlohmann::json;

namespace {

json matrix_to_json(const QMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMatrix matrix_from_json(const json& rows, int expect_rows, int expect_cols,
                         const std::string& what) {
  if (!rows.is_array()) throw ParseError(what + ": expected a list of rows");
  if (expect_rows >= 0 && static_cast<int>(rows.size()) != expect_rows)
    throw ParseError(what + ": expected " + std::to_string(expect_rows) + " rows");
  int nrows = static_cast<int>(rows.size());
  int ncols = expect_cols;
  if (ncols < 0) ncols = nrows == 0 ? 0 : static_cast<int>(rows[0].size());
  QMatrix m(nrows, ncols);
  for (int i = 0; i < nrows; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != ncols)
      throw ParseError(what + ": row " + std::to_string(i) + " has the wrong length");
    for (int j = 0; j < ncols; ++j) {
      if (!row[j].is_string()) throw ParseError(what + ": entries must be rational strings");
      m.at(i, j) = rat_from_string(row[j].get<std::string>());
    }
  }
  return m;
}

json vectors_to_json(const std::vector<QVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json jv = json::array();
    for (const auto& x : v) jv.push_back(rat_to_string(x));
    out.push_back(std::move(jv));
  }
  return out;
}

std::vector<QVector> vectors_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected a list of vectors");
  std::vector<QVector> out;
  for (const auto& jv : j) {
    if (!jv.is_array()) throw ParseError(what + ": expected a list of vectors");
    QVector v;
    for (const auto& x : jv) {
      if (!x.is_string()) throw ParseError(what + ": entries must be rational strings");
      v.push_back(rat_from_string(x.get<std::string>()));
    }
    out.push_back(std::move(v));
  }
  return out;
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(what + ": not valid JSON");
  return j;
}

}  // namespace

std::string serialize_system(const QFSystem& sys) {
  json j;
  j["dim"] = sys.dim;
  json forms = json::array();
  for (const auto& q : sys.forms) forms.push_back(matrix_to_json(q.gram()));
  j["forms"] = std::move(forms);
  if (!sys.labels.empty()) j["labels"] = sys.labels;
  return j.dump() + "\n";
}

QFSystem parse_system(const std::string& text) {
  json j = parse_json(text, "system file");
  if (!j.is_object() || !j.contains("dim") || !j.contains("forms"))
    throw ParseError("system file: need an object with 'dim' and 'forms'");
  if (!j["dim"].is_number_integer()) throw ParseError("system file: 'dim' must be an integer");
  QFSystem sys;
  sys.dim = j["dim"].get<int>();
  if (sys.dim < 0) throw ParseError("system file: 'dim' must be nonnegative");
  if (!j["forms"].is_array()) throw ParseError("system file: 'forms' must be a list");
  int k = 0;
  for (const auto& jf : j["forms"]) {
    QMatrix g = matrix_from_json(jf, sys.dim, sys.dim, "form " + std::to_string(k));
    if (!g.is_symmetric())
      throw ParseError("form " + std::to_string(k) + " is not symmetric");
    sys.forms.push_back(QuadForm(std::move(g)));
    ++k;
  }
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw ParseError("system file: 'labels' must be a list");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw ParseError("system file: labels must be strings");
      sys.labels.push_back(l.get<std::string>());
    }
    if (sys.labels.size() != sys.forms.size())
      throw ParseError("system file: one label per form required");
  }
  return sys;
}

QFSystem load_system(const std::string& path) { return parse_system(read_file(path)); }

void save_system(const std::string& path, const QFSystem& sys) {
  write_file(path, serialize_system(sys));
}

std::string serialize_witness(const WitnessRecord& w) {
  json j;
  switch (w.kind) {
    case WitnessRecord::Kind::hyperbolic_subspaces:
      j["type"] = "hyperbolic_subspaces";
      j["U"] = vectors_to_json(w.u_basis);
      j["W"] = vectors_to_json(w.w_basis);
      break;
    case WitnessRecord::Kind::idempotent:
      j["type"] = "idempotent";
      j["amplification"] = w.amplification;
      j["phi"] = matrix_to_json(w.phi);
      j["psi"] = matrix_to_json(w.psi);
      break;
    case WitnessRecord::Kind::closure_form:
      j["type"] = "closure_form";
      j["gram"] = matrix_to_json(w.gram);
      break;
  }
  return j.dump() + "\n";
}

WitnessRecord parse_witness(const std::string& text) {
  json j = parse_json(text, "witness file");
  // Reports carry their witness under this key; accept either layout.
  if (j.is_object() && j.contains("witness") && j["witness"].is_object()) j = j["witness"];
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("witness file: need an object with a 'type' string");
  std::string type = j["type"].get<std::string>();
  WitnessRecord w;
  if (type == "hyperbolic_subspaces") {
    w.kind = WitnessRecord::Kind::hyperbolic_subspaces;
    if (!j.contains("U") || !j.contains("W"))
      throw ParseError("witness file: subspace witness needs 'U' and 'W'");
    w.u_basis = vectors_from_json(j["U"], "U");
    w.w_basis = vectors_from_json(j["W"], "W");
  } else if (type == "idempotent") {
    w.kind = WitnessRecord::Kind::idempotent;
    if (!j.contains("phi") || !j.contains("psi"))
      throw ParseError("witness file: idempotent witness needs 'phi' and 'psi'");
    if (j.contains("amplification")) {
      if (!j["amplification"].is_number_integer() || j["amplification"].get<int>() < 1)
        throw ParseError("witness file: 'amplification' must be a positive integer");
      w.amplification = j["amplification"].get<int>();
    }
    w.phi = matrix_from_json(j["phi"], -1, -1, "phi");
    w.psi = matrix_from_json(j["psi"], w.phi.rows(), w.phi.cols(), "psi");
    if (w.phi.rows() != w.phi.cols()) throw ParseError("witness file: 'phi' must be square");
  } else if (type == "closure_form") {
    w.kind = WitnessRecord::Kind::closure_form;
    if (!j.contains("gram")) throw ParseError("witness file: closure witness needs 'gram'");
    w.gram = matrix_from_json(j["gram"], -1, -1, "gram");
    if (w.gram.rows() != w.gram.cols() || !w.gram.is_symmetric())
      throw ParseError("witness file: 'gram' must be square and symmetric");
  } else {
    throw ParseError("witness file: unknown type '" + type + "'");
  }
  return w;
}

WitnessRecord load_witness(const std::string& path) { return parse_witness(read_file(path)); }

std::string content_digest(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

}  // namespace qfs
