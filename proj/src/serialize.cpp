#include "qharm/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qharm {

namespace {

Json dim_to_json(const BigInt& n) {
  if (n <= BigInt(std::numeric_limits<long long>::max())) return static_cast<long long>(n);
  return n.str();
}

BigInt dim_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw InvalidArgument("block dim must be an integer or a decimal string");
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::nan("");
  }
  throw InvalidArgument("expected a number");
}

std::complex<double> complex_from_json(const Json& j) {
  return {number_from_json(j.at("re")), j.contains("im") ? number_from_json(j.at("im")) : 0.0};
}

Json block_to_json(const Block& block) {
  Json out;
  if (const auto* s = std::get_if<ScalarBlock>(&block)) {
    out["kind"] = "scalar";
    out["dim"] = dim_to_json(s->dim);
    out["re"] = number(s->value.real());
    out["im"] = number(s->value.imag());
    return out;
  }
  const auto& m = std::get<DenseBlock>(block).entries;
  out["kind"] = "dense";
  out["dim"] = m.rows();
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({number(m(i, j).real()), number(m(i, j).imag())});
    rows.push_back(std::move(row));
  }
  out["entries"] = std::move(rows);
  return out;
}

Block block_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "scalar") return ScalarBlock{dim_from_json(j.at("dim")), complex_from_json(j)};
  if (kind != "dense") throw InvalidArgument("unknown block kind '" + kind + "'");
  const auto& rows = j.at("entries");
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (j.contains("dim") && dim_from_json(j.at("dim")) != BigInt(n))
    throw InvalidArgument("dense block: dim does not match the number of rows");
  if (n > kMaxDenseDim) throw InvalidArgument("dense block exceeds the 64-dimensional guard");
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != n) throw InvalidArgument("dense block must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& e = rows[r][c];
      if (e.is_array()) m(r, c) = {number_from_json(e.at(0)), number_from_json(e.at(1))};
      else m(r, c) = number_from_json(e);
    }
  }
  return DenseBlock{std::move(m)};
}

}  // namespace

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

// ---------------------------------------------------------------------------
// Labels and coefficients

Json label_to_json(const IrrLabel& label) {
  if (const auto* d = std::get_if<Degree>(&label)) return d->k;
  if (const auto* w = std::get_if<Word>(&label)) return format_word(*w);
  return std::get<Lattice>(label).v;
}

IrrLabel label_from_json(const GroupDescriptor& group, const Json& label) {
  IrrLabel out;
  if (group.has_degree_labels()) {
    if (!label.is_number_integer()) throw LabelMismatch("expected an integer label for " + group.selector());
    out = Degree{label.get<int>()};
  } else if (group.kind() == GroupKind::DualFreeGroup) {
    if (!label.is_string()) throw LabelMismatch("expected a word label for " + group.selector());
    out = parse_word(label.get<std::string>(), group.param());
  } else {
    if (!label.is_array()) throw LabelMismatch("expected an integer array label for " + group.selector());
    out = Lattice{label.get<std::vector<long long>>()};
  }
  check_label(group, out);
  return out;
}

Json to_json(const FourierCoefficients& coeffs) {
  Json doc;
  doc["group"] = coeffs.group().selector();
  doc["kind"] = "fourier";
  Json list = Json::array();
  for (const auto& [label, block] : coeffs.support())
    list.push_back({{"label", label_to_json(label)}, {"block", block_to_json(block)}});
  doc["coeffs"] = std::move(list);
  return doc;
}

Json to_json(const CentralElement& f) {
  Json doc;
  doc["group"] = f.group.selector();
  doc["kind"] = "central";
  Json list = Json::array();
  for (const auto& [k, a] : f.coeffs)
    list.push_back({{"label", k}, {"coefficient", {{"re", number(a.real())}, {"im", number(a.imag())}}}});
  doc["coeffs"] = std::move(list);
  return doc;
}

Json to_json(const GroupElementCoeffs& f) {
  Json doc;
  doc["N"] = f.N;
  Json list = Json::array();
  for (const auto& [w, c] : f.terms)
    list.push_back({{"word", format_word(w)}, {"re", number(c.real())}, {"im", number(c.imag())}});
  doc["terms"] = std::move(list);
  return doc;
}

FourierCoefficients fourier_from_json(const Json& doc) {
  const auto group = GroupDescriptor::parse(doc.at("group").get<std::string>());
  const auto kind = doc.value("kind", std::string("fourier"));
  if (kind == "central") return to_fourier(central_from_json(doc));
  if (kind != "fourier") throw InvalidArgument("unknown coefficient document kind '" + kind + "'");
  FourierCoefficients out(group);
  for (const auto& entry : doc.at("coeffs"))
    out.set(label_from_json(group, entry.at("label")), block_from_json(entry.at("block")));
  return out;
}

CentralElement central_from_json(const Json& doc) {
  const auto group = GroupDescriptor::parse(doc.at("group").get<std::string>());
  const auto kind = doc.value("kind", std::string("central"));
  if (kind == "fourier") return to_central(fourier_from_json(doc));
  if (kind != "central") throw InvalidArgument("unknown coefficient document kind '" + kind + "'");
  detail::require_degree_group(group, "central document");
  CentralElement f{group, {}};
  for (const auto& entry : doc.at("coeffs")) {
    const auto label = label_from_json(group, entry.at("label"));
    f.coeffs[std::get<Degree>(label).k] += complex_from_json(entry.at("coefficient"));
  }
  return f;
}

GroupElementCoeffs group_element_from_json(const Json& doc) {
  GroupElementCoeffs f;
  f.N = doc.at("N").get<int>();
  if (f.N < 2) throw InvalidArgument("free group rank N must be >= 2");
  for (const auto& term : doc.at("terms"))
    f.terms[parse_word(term.at("word").get<std::string>(), f.N)] += complex_from_json(term);
  return f;
}

// ---------------------------------------------------------------------------
// CSV

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string format_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return csv_escape(std::get<std::string>(cell));
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_escape(table.columns[i]);
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const ScanReport& report) {
  Json doc;
  doc["id"] = report.id;
  doc["params"] = report.params;
  doc["parameter"] = report.parameter;
  doc["verdict"] = to_string(report.verdict);
  doc["slope"] = number(report.slope);
  doc["extremal"] = {{report.parameter, number(report.extremal_parameter)},
                     {"value", number(report.extremal_value)}};
  Json rows = Json::array();
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    Json row;
    row[report.parameter] = number(report.grid[i]);
    row["value"] = number(report.values[i]);
    row["certified_tail"] = number(report.certified_tail[i]);
    for (const auto& [name, col] : report.extra_columns) row[name] = number(col[i]);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

Table to_table(const ScanReport& report) {
  Table t;
  t.columns = {report.parameter, "value", "certified_tail"};
  for (const auto& [name, col] : report.extra_columns) t.columns.push_back(name);
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    std::vector<Cell> row{report.grid[i], report.values[i], report.certified_tail[i]};
    for (const auto& [name, col] : report.extra_columns) row.emplace_back(col[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json to_json(const VerifyReport& report) {
  Json doc;
  doc["id"] = report.id;
  doc["params"] = report.params;
  Json list = Json::array();
  for (const auto& inst : report.instances)
    list.push_back({{"parameter", number(inst.parameter)},
                    {"lhs", number(inst.lhs)},
                    {"rhs", number(inst.rhs)},
                    {"ratio", number(inst.ratio)}});
  doc["instances"] = std::move(list);
  doc["max_ratio"] = number(report.max_ratio);
  doc["slope"] = number(report.slope);
  doc["verdict"] = to_string(report.verdict);
  return doc;
}

Table to_table(const VerifyReport& report) {
  Table t;
  t.columns = {"id", "parameter", "lhs", "rhs", "ratio"};
  for (const auto& inst : report.instances)
    t.rows.push_back({report.id, inst.parameter, inst.lhs, inst.rhs, inst.ratio});
  return t;
}

Json to_json(const RdDegreeReport& report) {
  Json doc;
  doc["id"] = "rd_degree";
  doc["params"] = {{"group", report.group},
                   {"route", report.route},
                   {"beta", report.beta},
                   {"kmax", report.kmax},
                   {"threshold", report.threshold}};
  Json list = Json::array();
  for (const auto& e : report.entries)
    list.push_back({{"s", number(e.s)},
                    {"partial", number(e.partial)},
                    {"tail_bound", number(e.tail_bound)},
                    {"verdict", to_string(e.verdict)}});
  doc["entries"] = std::move(list);
  return doc;
}

Table to_table(const RdDegreeReport& report) {
  Table t;
  t.columns = {"s", "partial", "tail_bound", "verdict"};
  for (const auto& e : report.entries) t.rows.push_back({e.s, e.partial, e.tail_bound, to_string(e.verdict)});
  return t;
}

Json to_json(const ExponentReport& report) {
  Json doc;
  doc["id"] = "exponent_algebra";
  doc["kind"] = report.kind;
  Json list = Json::array();
  for (const auto& row : report.rows)
    list.push_back({{"params", row.params},
                    {"lhs", number(row.lhs)},
                    {"rhs", number(row.rhs)},
                    {"residual", number(row.residual)},
                    {"equivalence_ok", row.equivalence_ok},
                    {"degenerate", row.degenerate}});
  doc["rows"] = std::move(list);
  doc["max_residual"] = number(report.max_residual);
  doc["ok"] = report.ok;
  return doc;
}

Table to_table(const ExponentReport& report) {
  Table t;
  t.columns = {"kind", "params", "lhs", "rhs", "residual", "equivalence_ok", "degenerate"};
  for (const auto& row : report.rows)
    t.rows.push_back({report.kind, row.params.dump(), row.lhs, row.rhs, row.residual,
                      std::string(row.equivalence_ok ? "true" : "false"),
                      std::string(row.degenerate ? "true" : "false")});
  return t;
}

}  // namespace qharm
