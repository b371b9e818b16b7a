#include "qharm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qharm/classical_lp.hpp"
#include "qharm/fourier.hpp"
#include "qharm/freegroup.hpp"
#include "qharm/repdata.hpp"
#include "qharm/semigroup.hpp"
#include "qharm/serialize.hpp"
#include "qharm/verify.hpp"

namespace qharm::cli {

namespace {

struct Output {
  Json doc = Json::object();
  Table table;
  Json thresholds = Json::object();
  std::string verdict;
  bool unexpected = false;
};

std::string join_command(const std::vector<std::string>& args) {
  std::string out = "qharm";
  for (const auto& a : args) {
    out += ' ';
    if (a.empty() || a.find_first_of(" \t\"'") != std::string::npos) {
      out += '\'';
      for (char c : a) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
      out += '\'';
    } else {
      out += a;
    }
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
  }
}

std::string big_cell(const BigInt& n) { return n.str(); }

Json big_json(const BigInt& n) {
  if (n <= BigInt(std::numeric_limits<long long>::max())) return static_cast<long long>(n);
  return n.str();
}

IrrLabel parse_label_text(const GroupDescriptor& group, const std::string& text) {
  IrrLabel label;
  if (group.has_degree_labels()) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw InvalidArgument("bad degree label '" + text + "'");
    label = Degree{k};
  } else if (group.kind() == GroupKind::DualFreeGroup) {
    label = parse_word(text, group.param());
  } else {
    std::vector<long long> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        v.push_back(std::stoll(item));
      } catch (const std::exception&) {
        throw InvalidArgument("bad lattice label '" + text + "'");
      }
    }
    label = Lattice{v};
  }
  check_label(group, label);
  return label;
}

Json scan_thresholds() {
  const ScanThresholds t;
  return {{"slope", t.slope}, {"rise_ratio", t.rise_ratio}};
}

bool check_expect(const std::string& expect, Verdict v) {
  return expect.empty() || expect == to_string(v);
}

// ---------------------------------------------------------------------------
// Subcommands

Output cmd_dims(const GroupDescriptor& group, int kmax) {
  if (kmax < 0 || kmax > 100000) throw InvalidArgument("--kmax must lie in [0, 100000]");
  Output o;
  o.table.columns = {"k", "n_k", "s_k", "b_k"};
  Json rows = Json::array();
  BigInt ball = 0;
  const auto dims = group.has_degree_labels() ? dimensions(group, kmax) : std::vector<BigInt>(kmax + 1, BigInt(1));
  for (int k = 0; k <= kmax; ++k) {
    const BigInt s = sphere_size(group, k);
    ball += s;
    o.table.rows.push_back({static_cast<long long>(k), big_cell(dims[k]), big_cell(s), big_cell(ball)});
    rows.push_back({{"k", k}, {"n_k", big_json(dims[k])}, {"s_k", big_json(s)}, {"b_k", big_json(ball)}});
  }
  o.doc = {{"id", "dims"}, {"params", {{"group", group.selector()}, {"kmax", kmax}}}, {"rows", rows}};
  return o;
}

Output cmd_growth(const GroupDescriptor& group, int kmax) {
  const double gamma_hat = growth_order_estimate(group, kmax);
  Output o;
  o.table.columns = {"group", "kmax", "gamma_hat", "gamma"};
  o.table.rows.push_back({group.selector(), static_cast<long long>(kmax), gamma_hat,
                          static_cast<long long>(group.growth_order())});
  o.doc = {{"id", "growth"},
           {"params", {{"group", group.selector()}, {"kmax", kmax}}},
           {"gamma_hat", gamma_hat},
           {"gamma", group.growth_order()}};
  return o;
}

Output cmd_fusion(const GroupDescriptor& group, const std::string& a_text, const std::string& b_text) {
  const auto a = parse_label_text(group, a_text);
  const auto b = parse_label_text(group, b_text);
  Output o;
  o.table.columns = {"label", "multiplicity", "dimension"};
  Json terms = Json::array();
  BigInt total = 0;
  for (const auto& [c, mult] : fusion_decompose(group, a, b)) {
    const BigInt n = dimension(group, c);
    total += n * mult;
    o.table.rows.push_back({format_label(c), static_cast<long long>(mult), big_cell(n)});
    terms.push_back({{"label", label_to_json(c)}, {"multiplicity", mult}, {"dimension", big_json(n)}});
  }
  const BigInt expected = dimension(group, a) * dimension(group, b);
  o.unexpected = total != expected;
  o.verdict = o.unexpected ? "dimension-mismatch" : "dimension-consistent";
  o.doc = {{"id", "fusion"},
           {"params", {{"group", group.selector()}, {"a", label_to_json(a)}, {"b", label_to_json(b)}}},
           {"terms", terms},
           {"dimension_check", {{"sum", big_json(total)}, {"product", big_json(expected)}}}};
  return o;
}

Output cmd_norm(const std::string& input, const std::string& p_text, const std::string& q_text,
                double weight_exp, const std::string& pprime_text, double beta) {
  const Json doc = read_json_file(input);
  const auto coeffs = fourier_from_json(doc);
  const GroupDescriptor& group = coeffs.group();
  const double p = parse_real(p_text);
  std::vector<std::pair<std::string, double>> rows;
  rows.emplace_back("dual_lp", dual_lp_norm(coeffs, p));
  rows.emplace_back("plancherel_l2", plancherel_l2_norm(coeffs));
  if (!q_text.empty())
    rows.emplace_back("mixed", mixed_norm(coeffs, parse_real(q_text),
                                          [weight_exp](int k) { return std::pow(1.0 + k, weight_exp); }));
  if (!pprime_text.empty()) rows.emplace_back("schatten_weighted", schatten_weighted_norm(coeffs, parse_real(pprime_text), beta));

  bool central = group.has_degree_labels();
  for (const auto& [label, block] : coeffs.support()) central = central && std::holds_alternative<ScalarBlock>(block);
  if (central && (group.has_degree_labels())) {
    const auto f = to_central(coeffs);
    const auto model = group.kind();
    (void)model;
    if (std::isfinite(p)) rows.emplace_back("classical_lp", central_lp_norm(group, f, p));
    rows.emplace_back("classical_linf", central_linf_norm(group, f));
  }

  Output o;
  o.table.columns = {"quantity", "value"};
  Json values = Json::object();
  for (const auto& [name, v] : rows) {
    o.table.rows.push_back({name, v});
    values[name] = number(v);
  }
  o.doc = {{"id", "norm"},
           {"params", {{"input", input}, {"group", group.selector()}, {"p", number(p)}}},
           {"values", values}};
  return o;
}

Output cmd_fgnorm(const std::string& input, const std::string& radial, int n, int m, double tol, int extrapolate_from) {
  PowerIterationOptions opt;
  opt.tol = tol;
  Output o;
  o.thresholds = {{"tol", tol}, {"max_iterations", opt.max_iterations}, {"stall_window", opt.stall_window}};
  if (!radial.empty()) {
    const auto a = parse_real_list(radial);
    const auto r = radial_equivalence_report(n, a, m, opt);
    o.table.columns = {"m", "lhs", "rhs", "ratio"};
    o.table.rows.push_back({static_cast<long long>(r.m), r.lhs, r.rhs, r.ratio});
    o.doc = {{"id", "radial_equivalence"},
             {"params", {{"N", n}, {"a", a}, {"m", m}}},
             {"lhs", r.lhs},
             {"rhs", r.rhs},
             {"ratio", r.ratio}};
    return o;
  }
  if (input.empty()) throw InvalidArgument("fgnorm needs --input or --radial");
  const auto f = group_element_from_json(read_json_file(input));
  const double trunc = truncated_operator_norm(f, m, opt);
  const double haagerup = haagerup_upper_bound(f);
  o.table.columns = {"quantity", "value"};
  o.table.rows.push_back({std::string("truncated"), trunc});
  o.table.rows.push_back({std::string("haagerup_upper"), haagerup});
  o.table.rows.push_back({std::string("coefficient_l2"), coefficient_l2_norm(f)});
  o.doc = {{"id", "fgnorm"},
           {"params", {{"input", input}, {"N", f.N}, {"m", m}}},
           {"truncated", trunc},
           {"haagerup_upper", haagerup},
           {"coefficient_l2", coefficient_l2_norm(f)}};
  if (extrapolate_from >= 0) {
    const double ext = extrapolated_operator_norm(f, extrapolate_from, m, opt);
    o.table.rows.push_back({std::string("extrapolated"), ext});
    o.doc["extrapolated"] = ext;
  }
  o.unexpected = trunc > haagerup * (1.0 + 1e-12);
  o.verdict = o.unexpected ? "sandwich-violated" : "sandwich-ok";
  return o;
}

Output scan_output(const ScanReport& r, const std::string& expect) {
  Output o;
  o.doc = to_json(r);
  o.table = to_table(r);
  o.thresholds = scan_thresholds();
  o.verdict = to_string(r.verdict);
  o.unexpected = !check_expect(expect, r.verdict);
  return o;
}

Output cmd_scan_ultra(const GroupDescriptor& group, double s, double tmin, double tmax, int points,
                      const std::string& length, const std::string& mode, int kmax, const std::string& expect) {
  const auto grid = log_grid(tmin, tmax, points);
  if (mode == "poly") return scan_output(poly_ultra_sup(group, s, grid, kmax), expect);
  if (mode != "ultra") throw InvalidArgument("--mode must be ultra or poly");
  LengthFunction l = LengthFunction::poisson();
  if (length == "auto") {
    if (group.kind() != GroupKind::DualFreeGroup && group.kind() != GroupKind::DualZd) l = LengthFunction::heat(group);
  } else {
    l = LengthFunction::parse(length, group);
  }
  auto r = ultra_sup_scan(s, l, grid);
  r.params["group"] = group.selector();
  return scan_output(r, expect);
}

Output rd_output(const RdDegreeReport& r) {
  Output o;
  o.doc = to_json(r);
  o.table = to_table(r);
  return o;
}

// ---------------------------------------------------------------------------
// Verification batteries

Output verify_hy(const GroupDescriptor& group, const std::vector<double>& ps, int trials, std::uint64_t seed,
                 int max_degree) {
  Output o;
  o.thresholds = {{"tolerance", kHyTolerance}};
  o.table.columns = {"p", "trial", "lhs", "rhs", "ratio"};
  Json reports = Json::array();
  double worst = 0.0;
  for (double p : ps) {
    const auto r = hy_battery(group, p, trials, seed, max_degree);
    for (const auto& inst : r.instances) o.table.rows.push_back({p, inst.parameter, inst.lhs, inst.rhs, inst.ratio});
    worst = std::max(worst, r.max_ratio);
    o.unexpected = o.unexpected || r.verdict != Verdict::Holds;
    reports.push_back(to_json(r));
  }
  o.verdict = o.unexpected ? "violated" : "holds";
  o.doc = {{"id", "verify_hy"}, {"max_ratio", worst}, {"verdict", o.verdict}, {"reports", reports}};
  return o;
}

Output verify_trend(GradedCheck check, const GroupDescriptor& group, const std::vector<double>& ps, double param,
                    GradedFamily family, int mmax) {
  Output o;
  o.thresholds = {{"trend_slope", kTrendSlope}};
  o.table.columns = {"p", "m", "lhs", "rhs", "ratio"};
  Json reports = Json::array();
  for (double p : ps) {
    const auto r = graded_trend(check, group, family, p, param, mmax);
    for (const auto& inst : r.instances) o.table.rows.push_back({p, inst.parameter, inst.lhs, inst.rhs, inst.ratio});
    o.unexpected = o.unexpected || r.verdict != Verdict::Bounded;
    reports.push_back(to_json(r));
  }
  o.verdict = o.unexpected ? "unbounded-trend" : "bounded";
  o.doc = {{"id", check == GradedCheck::SharpenedHY ? "verify_sharpened_hy" : "verify_sobolev"},
           {"verdict", o.verdict},
           {"reports", reports}};
  return o;
}

Output verify_ultra(const GroupDescriptor& group, const std::vector<double>& ss) {
  Output o;
  o.thresholds = scan_thresholds();
  o.thresholds["expected_threshold"] = 3.0;
  o.table.columns = {"group", "s", "verdict", "expected", "slope", "extremal_t", "extremal_value"};
  Json reports = Json::array();
  for (double s : ss) {
    const auto r = ultracontractivity_decision(group, s);
    const Verdict expected = s >= 3.0 ? Verdict::Bounded : Verdict::Divergent;
    o.unexpected = o.unexpected || r.verdict != expected;
    o.table.rows.push_back({group.selector(), s, to_string(r.verdict), to_string(expected), r.slope,
                            r.extremal_parameter, r.extremal_value});
    auto j = to_json(r);
    j["expected"] = to_string(expected);
    reports.push_back(std::move(j));
  }
  o.verdict = o.unexpected ? "unexpected" : "as-expected";
  o.doc = {{"id", "verify_ultra"}, {"verdict", o.verdict}, {"reports", reports}};
  return o;
}

Output verify_rd(const GroupDescriptor& group, const std::vector<double>& ss, int kmax) {
  const auto r = rd_degree_scan(group, ss, kmax);
  Output o;
  o.table.columns = {"s", "partial", "tail_bound", "verdict", "expected"};
  auto doc = to_json(r);
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const auto& e = r.entries[i];
    const Verdict expected = e.s > r.threshold ? Verdict::Converges : Verdict::Diverges;
    o.unexpected = o.unexpected || e.verdict != expected;
    o.table.rows.push_back({e.s, e.partial, e.tail_bound, to_string(e.verdict), to_string(expected)});
    doc["entries"][i]["expected"] = to_string(expected);
  }
  o.verdict = o.unexpected ? "unexpected" : "as-expected";
  doc["verdict"] = o.verdict;
  o.doc = std::move(doc);
  o.thresholds = {{"threshold", r.threshold}};
  return o;
}

Output verify_sharpness(const GroupDescriptor& group, const std::vector<double>& ss, int mmax) {
  const SharpnessThresholds th;
  const int gamma = group.growth_order();
  const double threshold = gamma / 4.0;
  Output o;
  o.thresholds = {{"divergent_slope", th.divergent_slope},
                  {"bounded_slope", th.bounded_slope},
                  {"quadrature_rel_tol", 1e-6},
                  {"expected_threshold", threshold}};
  o.table.columns = {"s", "slope", "q_slope", "verdict", "expected", "max_quadrature_rel_gap"};
  Json reports = Json::array();
  for (double s : ss) {
    const auto r = sharpness_scan(group, s, mmax, th);
    const double gap = r.params.at("max_quadrature_rel_gap").get<double>();
    std::string expected = "any";
    if (s < threshold) expected = "divergent";
    if (s > threshold) expected = "bounded";
    const bool ok = (expected == "any" || expected == to_string(r.verdict)) && gap <= 1e-6;
    o.unexpected = o.unexpected || !ok;
    o.table.rows.push_back({s, r.slope, r.params.at("q_slope").get<double>(), to_string(r.verdict), expected, gap});
    auto j = to_json(r);
    j["expected"] = expected;
    reports.push_back(std::move(j));
  }
  o.verdict = o.unexpected ? "unexpected" : "as-expected";
  o.doc = {{"id", "verify_sharpness"}, {"verdict", o.verdict}, {"reports", reports}};
  return o;
}

Output verify_exponents(const std::string& kind) {
  std::vector<std::string> kinds = {kind};
  if (kind == "all") kinds = {"lp_ultra", "lp_dual_ultra", "hy_interpolation", "sobolev_interpolation"};
  Output o;
  o.thresholds = {{"residual", kExponentTolerance}};
  o.table.columns = {"kind", "params", "lhs", "rhs", "residual", "equivalence_ok", "degenerate"};
  Json reports = Json::array();
  for (const auto& k : kinds) {
    const auto r = exponent_algebra_check(k);
    const auto t = to_table(r);
    o.table.rows.insert(o.table.rows.end(), t.rows.begin(), t.rows.end());
    o.unexpected = o.unexpected || !r.ok;
    reports.push_back(to_json(r));
  }
  o.verdict = o.unexpected ? "failed" : "ok";
  o.doc = {{"id", "verify_exponents"}, {"verdict", o.verdict}, {"reports", reports}};
  return o;
}

void emit(const Output& o, const std::string& format, const std::string& command, std::uint64_t seed,
          std::ostream& out) {
  if (format == "json") {
    Json doc;
    doc["header"] = {{"command", command}, {"seed", seed}, {"version", kVersion}, {"thresholds", o.thresholds}};
    doc["report"] = o.doc;
    doc["status"] = o.unexpected ? "unexpected" : "ok";
    out << doc.dump(2) << '\n';
    return;
  }
  out << "# command: " << command << '\n';
  out << "# seed: " << seed << '\n';
  out << "# version: " << kVersion << '\n';
  out << "# thresholds: " << o.thresholds.dump() << '\n';
  if (!o.verdict.empty()) out << "# verdict: " << o.verdict << '\n';
  out << "# status: " << (o.unexpected ? "unexpected" : "ok") << '\n';
  out << to_csv(o.table);
}

}  // namespace

double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t u1 = 0, u2 = 0;
      const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
      const double num = std::stod(a, &u1), den = std::stod(b, &u2);
      if (u1 != a.size() || u2 != b.size() || den == 0.0) throw std::invalid_argument("");
      return num / den;
    }
    if (text == "inf") return kInfinity;
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("bad number '" + text + "'");
  }
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw InvalidArgument("empty number list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic analysis on compact quantum groups of Kac type"};
  app.require_subcommand(1);
  std::string format = "csv", output_path;
  std::uint64_t seed = 0;
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", output_path, "write the report here instead of standard output");
  app.add_option("--seed", seed, "seed for randomized batteries");
  app.set_version_flag("--version", kVersion);

  std::string group_text, expect;
  auto add_group = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--group", group_text, "oplus:N, splus:N, fdual:N, zd:d, su2, so3");
    if (required) opt->required();
    sub->fallthrough();
  };

  int kmax = 10;
  auto* dims = app.add_subcommand("dims", "dimensions n_k and growth s_k, b_k");
  add_group(dims);
  dims->add_option("--kmax", kmax, "largest degree");

  int growth_kmax = 200;
  auto* growth = app.add_subcommand("growth", "fitted polynomial growth order");
  add_group(growth);
  growth->add_option("--kmax", growth_kmax, "largest degree (>= 8)");

  std::string a_text, b_text;
  auto* fusion = app.add_subcommand("fusion", "tensor product decomposition a (x) b");
  add_group(fusion);
  fusion->add_option("--a", a_text)->required();
  fusion->add_option("--b", b_text)->required();

  std::string input, p_text = "2", q_text, pprime_text;
  double weight_exp = 0.0, beta = 1.0;
  auto* norm = app.add_subcommand("norm", "norms of a coefficient document");
  norm->fallthrough();
  norm->add_option("--input", input, "JSON coefficient document")->required();
  norm->add_option("--p", p_text, "exponent of the l^p norm on the dual");
  norm->add_option("--q", q_text, "outer exponent of the mixed norm");
  norm->add_option("--weight-exp", weight_exp, "mixed-norm weight (1+k)^e");
  norm->add_option("--pprime", pprime_text, "Schatten exponent p' >= 2");
  norm->add_option("--beta", beta, "Schatten weight exponent");

  std::string fg_input, radial;
  int fg_n = 2, fg_m = 10, extrapolate_from = -1;
  double tol = 1e-8;
  auto* fgnorm = app.add_subcommand("fgnorm", "operator norm estimates on the free group");
  fgnorm->fallthrough();
  fgnorm->add_option("--input", fg_input, "GroupElementCoeffs JSON document");
  fgnorm->add_option("--radial", radial, "a_0,...,a_K for sum a_k sigma_k / sqrt(s_k)");
  fgnorm->add_option("--N", fg_n, "rank for --radial");
  fgnorm->add_option("--m", fg_m, "ball radius");
  fgnorm->add_option("--tol", tol, "power iteration relative tolerance");
  fgnorm->add_option("--extrapolate-from", extrapolate_from, "fit L - C/(m+2)^2 over radii [value, m]");

  std::string s_text = "3", length = "auto", mode = "ultra";
  double tmin = 1e-3, tmax = 10.0;
  int points = 60, scan_kmax = 50'000'000;
  auto* scan_ultra = app.add_subcommand("scan-ultra", "t^s (ultracontractivity series) as t -> 0");
  add_group(scan_ultra);
  scan_ultra->add_option("--s", s_text);
  scan_ultra->add_option("--tmin", tmin);
  scan_ultra->add_option("--tmax", tmax);
  scan_ultra->add_option("--points", points);
  scan_ultra->add_option("--length", length, "auto, poisson, heat or a comma list");
  scan_ultra->add_option("--mode", mode, "ultra (sum (1+k)^2 e^{-2t(1+l(k))}) or poly (t^{2s} sum s_k e^{-2t(1+k)})");
  scan_ultra->add_option("--kmax", scan_kmax, "term cap for --mode poly");
  scan_ultra->add_option("--expect", expect, "bounded or divergent; exit 1 on mismatch");

  int mmax = 200;
  auto* scan_sharp = app.add_subcommand("scan-sharpness", "xi_m sharpness scan on a polynomial-growth group");
  add_group(scan_sharp);
  scan_sharp->add_option("--s", s_text);
  scan_sharp->add_option("--mmax", mmax);
  scan_sharp->add_option("--expect", expect, "bounded or divergent; exit 1 on mismatch");

  std::string s_list = "1.4,1.5,1.51,1.6,2";
  int rd_kmax = 10000;
  auto* rd = app.add_subcommand("rd-degree", "convergence of the rapid-decay / growth series per s");
  add_group(rd);
  rd->add_option("--s", s_list);
  rd->add_option("--kmax", rd_kmax);

  auto* verify = app.add_subcommand("verify", "verification batteries");
  verify->require_subcommand(1);
  verify->fallthrough();

  std::string p_list = "1,4/3,3/2,2";
  int trials = 200, max_degree = 10;
  auto* v_hy = verify->add_subcommand("hy", "Hausdorff-Young on random central elements");
  add_group(v_hy);
  v_hy->add_option("--p", p_list);
  v_hy->add_option("--trials", trials);
  v_hy->add_option("--max-degree", max_degree);

  std::string family = "charsum", trend_p_list = "6/5,4/3,3/2";
  int trend_mmax = 60;
  double trend_param = 1.0, sobolev_s = 3.0;
  auto* v_shy = verify->add_subcommand("sharpened-hy", "sharpened Hausdorff-Young trend along a graded family");
  add_group(v_shy);
  v_shy->add_option("--p", trend_p_list);
  v_shy->add_option("--beta", trend_param);
  v_shy->add_option("--family", family, "xi, charsum, sphere, geometric");
  v_shy->add_option("--mmax", trend_mmax);

  auto* v_sob = verify->add_subcommand("sobolev", "Sobolev embedding trend along a graded family");
  add_group(v_sob);
  v_sob->add_option("--p", trend_p_list);
  v_sob->add_option("--s", sobolev_s);
  v_sob->add_option("--family", family, "xi, charsum, sphere, geometric");
  v_sob->add_option("--mmax", trend_mmax);

  std::string ultra_s = "2.5,2.8,3,3.5";
  auto* v_ultra = verify->add_subcommand("ultra", "ultracontractivity threshold s = 3");
  add_group(v_ultra);
  v_ultra->add_option("--s", ultra_s);

  auto* v_rd = verify->add_subcommand("rd", "rapid-decay degree thresholds");
  add_group(v_rd);
  v_rd->add_option("--s", s_list);
  v_rd->add_option("--kmax", rd_kmax);

  std::string sharp_s = "0.7,0.8";
  auto* v_sharp = verify->add_subcommand("sharpness", "xi_m sharpness scan with fusion-vs-quadrature check");
  add_group(v_sharp);
  v_sharp->add_option("--s", sharp_s);
  v_sharp->add_option("--mmax", mmax);

  std::string exp_kind = "all";
  auto* v_exp = verify->add_subcommand("exponents", "exponent identities of the interpolation arguments");
  v_exp->fallthrough();
  v_exp->add_option("--kind", exp_kind, "all, lp_ultra, lp_dual_ultra, hy_interpolation, sobolev_interpolation");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    auto group = [&] { return GroupDescriptor::parse(group_text); };
    Output o;
    if (dims->parsed()) o = cmd_dims(group(), kmax);
    else if (growth->parsed()) o = cmd_growth(group(), growth_kmax);
    else if (fusion->parsed()) o = cmd_fusion(group(), a_text, b_text);
    else if (norm->parsed()) o = cmd_norm(input, p_text, q_text, weight_exp, pprime_text, beta);
    else if (fgnorm->parsed()) o = cmd_fgnorm(fg_input, radial, fg_n, fg_m, tol, extrapolate_from);
    else if (scan_ultra->parsed())
      o = cmd_scan_ultra(group(), parse_real(s_text), tmin, tmax, points, length, mode, scan_kmax, expect);
    else if (scan_sharp->parsed()) {
      const auto r = sharpness_scan(group(), parse_real(s_text), mmax);
      o = scan_output(r, expect);
      o.thresholds = {{"divergent_slope", SharpnessThresholds{}.divergent_slope},
                      {"bounded_slope", SharpnessThresholds{}.bounded_slope}};
    } else if (rd->parsed()) o = rd_output(rd_degree_scan(group(), parse_real_list(s_list), rd_kmax));
    else if (v_hy->parsed()) o = verify_hy(group(), parse_real_list(p_list), trials, seed, max_degree);
    else if (v_shy->parsed())
      o = verify_trend(GradedCheck::SharpenedHY, group(), parse_real_list(trend_p_list), trend_param,
                       parse_graded_family(family), trend_mmax);
    else if (v_sob->parsed())
      o = verify_trend(GradedCheck::Sobolev, group(), parse_real_list(trend_p_list), sobolev_s,
                       parse_graded_family(family), trend_mmax);
    else if (v_ultra->parsed()) o = verify_ultra(group(), parse_real_list(ultra_s));
    else if (v_rd->parsed()) o = verify_rd(group(), parse_real_list(s_list), rd_kmax);
    else if (v_sharp->parsed()) o = verify_sharpness(group(), parse_real_list(sharp_s), mmax);
    else if (v_exp->parsed()) o = verify_exponents(exp_kind);

    const std::string command = join_command(args);
    if (output_path.empty()) {
      emit(o, format, command, seed, out);
    } else {
      std::ofstream file(output_path);
      if (!file) throw InvalidArgument("cannot write '" + output_path + "'");
      emit(o, format, command, seed, file);
    }
    return o.unexpected ? 1 : 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed document: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qharm::cli
