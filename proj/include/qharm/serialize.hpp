#pragma once

// JSON and CSV encodings of coefficient data and reports.

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qharm/fourier.hpp"
#include "qharm/freegroup.hpp"
#include "qharm/semigroup.hpp"
#include "qharm/verify.hpp"

namespace qharm {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Coefficient documents
//
//   {"group": "oplus:3", "kind": "central",
//    "coeffs": [{"label": 2, "coefficient": {"re": 1.0, "im": 0.0}}]}
//   {"group": "oplus:3", "kind": "fourier",
//    "coeffs": [{"label": 1, "block": {"kind": "scalar", "dim": 3, "re": 0.5, "im": 0.0}},
//               {"label": 1, "block": {"kind": "dense", "dim": 3,
//                                      "entries": [[[re, im], ...], ...]}}]}
//   {"N": 2, "terms": [{"word": "a b A", "re": 1.0, "im": 0.0}]}
//
// Labels are integers for degree-labelled groups, word strings for fdual:N
// and integer arrays for zd:d. Dimensions too large for a double are strings.

Json to_json(const FourierCoefficients& coeffs);
Json to_json(const CentralElement& f);
Json to_json(const GroupElementCoeffs& f);

/// Accepts both "central" and "fourier" documents.
FourierCoefficients fourier_from_json(const Json& doc);
/// Accepts "central" documents and "fourier" documents with scalar blocks.
CentralElement central_from_json(const Json& doc);
GroupElementCoeffs group_element_from_json(const Json& doc);

IrrLabel label_from_json(const GroupDescriptor& group, const Json& label);
Json label_to_json(const IrrLabel& label);

// ---------------------------------------------------------------------------
// Tables and reports

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// %.17g for doubles, RFC-4180 quoting for strings.
std::string format_cell(const Cell& cell);
std::string csv_escape(const std::string& text);
/// Header row followed by one line per row, CRLF-free ("\n").
std::string to_csv(const Table& table);

Json to_json(const ScanReport& report);
Table to_table(const ScanReport& report);

Json to_json(const VerifyReport& report);
Table to_table(const VerifyReport& report);

Json to_json(const RdDegreeReport& report);
Table to_table(const RdDegreeReport& report);

Json to_json(const ExponentReport& report);
Table to_table(const ExponentReport& report);

/// Doubles that are not finite become strings ("inf", "-inf", "nan") so the
/// document stays lossless.
Json number(double v);

}  // namespace qharm
