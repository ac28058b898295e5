#include "mixconc/report.hpp"


namespace mixconc::report {
namespace {

Json sequence(const Alphabet& alphabet, std::span<const std::size_t> z) {
  Json out = Json::array();
  for (std::size_t s : z) out.push_back(alphabet.label(s));
  return out;
}

Json values(std::span<const double> v) { return Json(std::vector<double>(v.begin(), v.end())); }

std::string number(double v) {
  // Same shortest round-trip digits as the JSON output.
  return Json(v).dump();
}

}  // namespace

Json document(const std::string& kind) {
  Json out;
  out["schema"] = kSchema;
  out["kind"] = kind;
  return out;
}

Json to_json(const MixingProfile& profile) {
  Json out = document("mixing-profile");
  out["n"] = profile.n;
  Json rows = Json::array();
  for (std::size_t i = 1; i <= profile.n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 1; j <= profile.n; ++j) row.push_back(profile.at(i, j));
    rows.push_back(row);
  }
  out["eta_bar"] = rows;
  out["h_rows"] = profile.h_rows;
  out["inf_norm"] = profile.inf_norm;
  return out;
}

Json to_json(const ContractionProfile& profile) {
  Json out = document("contraction-profile");
  out["n"] = profile.n;
  out["thetas"] = profile.thetas;
  out["m_n"] = profile.m_n;
  return out;
}

Json to_json(const Certificate& certificate, std::span<const double> t_grid) {
  Json out = document("certificate");
  out["n"] = certificate.n;
  out["c"] = certificate.c;
  out["metric"] = to_string(certificate.metric);
  out["constant_kind"] = to_string(certificate.kind);
  out["constant"] = certificate.constant;
  out["t_grid"] = values(t_grid);
  Json bound = Json::array();
  Json effective = Json::array();
  for (double t : t_grid) {
    bound.push_back(certificate.bound(t));
    effective.push_back(certificate.effective(t));
  }
  out["bound"] = bound;
  out["effective"] = effective;
  out["note"] = certificate.note;
  return out;
}

Json to_json(const PhiNormResult& result, const Alphabet& alphabet) {
  Json out = document("phi-norm");
  out["value"] = result.value;
  out["sign"] = result.sign;
  out["visited"] = result.visited;
  Json argmax = Json::array();
  const std::size_t k = result.argmax.length();
  for (std::size_t x = 0; x < result.argmax.values().size(); ++x) {
    Json cell;
    cell["x"] = sequence(alphabet, decode(x, alphabet.size(), k));
    cell["phi"] = result.argmax[x];
    argmax.push_back(cell);
  }
  out["argmax"] = argmax;
  return out;
}

Json to_json(const BarFunction& bar, const Alphabet& alphabet) {
  Json out;
  out["symbols"] = alphabet.symbols();
  out["rows"] = bar.rows();
  return out;
}

Json to_json(const ExtremalReport& report, const Alphabet& alphabet) {
  Json out = document("extremal-report");
  out["i"] = report.i;
  out["lhs"] = report.lhs;
  out["rhs"] = report.rhs;
  out["gap"] = report.gap;
  out["max_phi_norm"] = report.max_phi_norm;
  out["dominates_phi"] = report.dominates_phi;
  out["full_support"] = report.full_support;
  out["argmax_z"] = sequence(alphabet, report.argmax_z);
  out["sign"] = report.sign;
  if (report.bar) out["bar"] = to_json(*report.bar, alphabet);
  Json entries = Json::array();
  for (const ExtremalEntry& e : report.entries) {
    Json entry;
    entry["z"] = sequence(alphabet, e.z);
    entry["psi_norm"] = e.psi_norm;
    entry["psi_norm_unreduced"] = e.psi_norm_unreduced;
    entry["phi_norm"] = e.phi_norm;
    entry["phi_route"] = e.phi_route;
    entry["bar_value"] = e.bar_value;
    entry["own_bar_gap"] = e.own_bar_gap;
    entries.push_back(entry);
  }
  out["entries"] = entries;
  out["warnings"] = report.warnings;
  return out;
}

Json to_json(const TailEstimate& estimate) {
  Json out = document("tail-estimate");
  out["n"] = estimate.n;
  out["functional"] = estimate.functional;
  out["lipschitz_const"] = estimate.lipschitz_const;
  out["count"] = estimate.count;
  out["seed"] = estimate.seed;
  out["mean_mode"] = to_string(estimate.mean_mode);
  out["mean"] = estimate.mean;
  out["mean_radius"] = estimate.mean_radius;
  out["confidence"] = estimate.confidence;
  out["t_grid"] = estimate.t_grid;
  out["empirical"] = estimate.empirical;
  out["upper_conf"] = estimate.upper_conf;
  return out;
}

Json to_json(const TailComparison& comparison) {
  Json out = document("tail-comparison");
  out["pass"] = comparison.pass;
  out["first_failure"] = comparison.first_failure ? Json(*comparison.first_failure) : Json(nullptr);
  Json rows = Json::array();
  for (const auto& row : comparison.rows) {
    Json r;
    r["t"] = row.t;
    r["empirical"] = row.empirical;
    r["upper_conf"] = row.upper_conf;
    r["bound"] = row.bound;
    r["effective_bound"] = row.effective;
    r["verdict"] = row.pass ? "pass" : "fail";
    rows.push_back(r);
  }
  out["rows"] = rows;
  return out;
}

void write_tsv(std::ostream& out, const TailComparison& comparison) {
  out << "t\tempirical\tupper_conf\tbound\teffective_bound\tverdict\n";
  for (const auto& row : comparison.rows) {
    out << number(row.t) << '\t' << number(row.empirical) << '\t' << number(row.upper_conf) << '\t'
        << number(row.bound) << '\t' << number(row.effective) << '\t' << (row.pass ? "pass" : "fail") << '\n';
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace mixconc::report
