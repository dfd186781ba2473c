#include "pocmob/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace pocmob {

using Json = nlohmann::ordered_json;

namespace {

std::string bracket(const std::array<int, kPocColumns>& t, const std::array<int, kPocColumns>& r, int cols) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < cols; ++i) os << (i ? " " : "") << t[i];
  os << ';';
  for (int i = 0; i < cols; ++i) os << ' ' << r[i];
  os << ']';
  return os.str();
}

int sum(const std::array<int, kPocColumns>& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

}  // namespace

ReportSummary summarize(const MobilityReport& report, std::vector<std::string> warnings) {
  ReportSummary s;
  s.mechanism = report.name;
  s.dof = report.dof;
  s.dof_label = dof_label(report);
  s.classification = report.classification;
  s.rigid = report.rigid();
  s.sum_f = report.total_joint_dof;
  for (const auto& lp : report.legs) {
    LegSummary l;
    l.label = lp.label;
    l.f = lp.f;
    for (const auto& seg : lp.segments) l.segments += (l.segments.empty() ? "" : " ") + describe_segment(seg);
    l.t = lp.matrix.t;
    l.r = lp.matrix.r;
    l.xi_t = lp.xi_t;
    l.xi_r = lp.xi_r;
    s.legs.push_back(std::move(l));
  }
  s.loops = report.loop_ranks;
  s.t = report.poc.t;
  s.r = report.poc.r;
  s.owners = {report.poc.translation_owner, report.poc.rotation_owner};
  s.translation = report.translation;
  s.rotation = report.rotation;
  s.trace = report.trace;
  s.warnings = std::move(warnings);
  return s;
}

OracleSummary summarize(const OracleComparison& cmp, std::uint64_t base_seed) {
  OracleSummary o;
  o.seeds = cmp.total();
  o.agreeing = cmp.agreeing;
  o.base_seed = base_seed;
  o.seed_stable = cmp.seed_stable;
  for (const auto& sample : cmp.samples)
    if (!sample.agrees) o.mismatches.push_back("seed " + std::to_string(sample.seed) + ": " + sample.mismatch);
  return o;
}

std::string render_human(const ReportSummary& s, bool trace) {
  std::ostringstream os;
  os << "mechanism: " << s.mechanism << '\n';
  os << "legs: " << s.legs.size() << ", sum f = " << s.sum_f << "\n\n";

  std::size_t seg_w = std::string("segments").size();
  std::size_t poc_w = std::string("POC").size();
  std::vector<std::string> pocs;
  for (const auto& l : s.legs) {
    pocs.push_back(bracket(l.t, l.r, kPocColumns));
    seg_w = std::max(seg_w, l.segments.size());
    poc_w = std::max(poc_w, pocs.back().size());
  }
  os << "leg  f  " << std::left << std::setw(static_cast<int>(seg_w)) << "segments" << "  "
     << std::setw(static_cast<int>(poc_w)) << "POC" << "  xi_t  xi_r\n" << std::right;
  for (std::size_t i = 0; i < s.legs.size(); ++i) {
    const auto& l = s.legs[i];
    os << std::setw(3) << l.label << std::setw(3) << l.f << "  " << std::left << std::setw(static_cast<int>(seg_w))
       << l.segments << "  " << std::setw(static_cast<int>(poc_w)) << pocs[i] << std::right << std::setw(6) << l.xi_t
       << std::setw(6) << l.xi_r << '\n';
  }

  os << "\nloop  xi_t  xi_r  xi\n";
  for (std::size_t j = 0; j < s.loops.size(); ++j)
    os << std::setw(4) << j + 1 << std::setw(6) << s.loops[j].xi_t << std::setw(6) << s.loops[j].xi_r << std::setw(4)
       << s.loops[j].xi() << '\n';

  os << "\nPOC = " << bracket(s.t, s.r, kPocColumns) << "  legs (" << s.owners[0] << ", " << s.owners[1] << ")\n";
  os << "translation: " << sum(s.t) << ", " << s.translation << '\n';
  os << "rotation: " << sum(s.r) << ", " << s.rotation << '\n';
  os << "DOF = " << s.dof_label << '\n';
  os << "class = " << s.classification << '\n';

  if (trace) {
    os << "\ntrace:\n";
    for (const auto& step : s.trace) os << "  (" << step.step << ") " << step.text << '\n';
  }
  if (s.oracle) {
    const auto& o = *s.oracle;
    os << "\noracle: " << o.agreeing << '/' << o.seeds << " agree (base seed " << o.base_seed << ")\n";
    if (!o.seed_stable) os << "  results differ between seeds\n";
    for (const auto& m : o.mismatches) os << "  " << m << '\n';
  }
  return os.str();
}

namespace {

Json to_json(const ReportSummary& s) {
  Json j;
  j["format_version"] = kReportFormatVersion;
  j["mechanism"] = s.mechanism;
  j["dof"] = s.dof;
  j["dof_label"] = s.dof_label;
  j["class"] = s.classification;
  j["rigid"] = s.rigid;
  j["sum_f"] = s.sum_f;
  j["legs"] = Json::array();
  for (const auto& l : s.legs)
    j["legs"].push_back({{"label", l.label}, {"f", l.f}, {"segments", l.segments}, {"t", l.t}, {"r", l.r},
                         {"xi_t", l.xi_t}, {"xi_r", l.xi_r}});
  j["loops"] = Json::array();
  for (std::size_t k = 0; k < s.loops.size(); ++k)
    j["loops"].push_back(
        {{"index", k + 1}, {"xi_t", s.loops[k].xi_t}, {"xi_r", s.loops[k].xi_r}, {"xi", s.loops[k].xi()}});
  j["poc"] = {{"t", s.t}, {"r", s.r}, {"owners", s.owners}, {"translation", s.translation}, {"rotation", s.rotation}};
  j["trace"] = Json::array();
  for (const auto& step : s.trace) j["trace"].push_back({{"step", step.step}, {"text", step.text}});
  j["warnings"] = s.warnings;
  if (s.oracle) {
    const auto& o = *s.oracle;
    j["oracle"] = {{"seeds", o.seeds},
                   {"agreeing", o.agreeing},
                   {"base_seed", o.base_seed},
                   {"seed_stable", o.seed_stable},
                   {"all_agree", o.all_agree()},
                   {"mismatches", o.mismatches}};
  }
  return j;
}

ReportSummary from_json(const Json& j) {
  const int version = j.at("format_version").get<int>();
  if (version != kReportFormatVersion)
    throw ReportFormatError("unsupported format_version " + std::to_string(version));
  ReportSummary s;
  s.mechanism = j.at("mechanism").get<std::string>();
  s.dof = j.at("dof").get<int>();
  s.dof_label = j.at("dof_label").get<std::string>();
  s.classification = j.at("class").get<std::string>();
  s.rigid = j.at("rigid").get<bool>();
  s.sum_f = j.at("sum_f").get<int>();
  for (const auto& l : j.at("legs")) {
    LegSummary leg;
    leg.label = l.at("label").get<int>();
    leg.f = l.at("f").get<int>();
    leg.segments = l.at("segments").get<std::string>();
    leg.t = l.at("t").get<std::array<int, kPocColumns>>();
    leg.r = l.at("r").get<std::array<int, kPocColumns>>();
    leg.xi_t = l.at("xi_t").get<int>();
    leg.xi_r = l.at("xi_r").get<int>();
    s.legs.push_back(std::move(leg));
  }
  for (const auto& l : j.at("loops")) {
    LoopRank lr{l.at("xi_t").get<int>(), l.at("xi_r").get<int>()};
    if (l.at("xi").get<int>() != lr.xi()) throw ReportFormatError("loop xi does not equal xi_t + xi_r");
    s.loops.push_back(lr);
  }
  const auto& poc = j.at("poc");
  s.t = poc.at("t").get<std::array<int, kPocColumns>>();
  s.r = poc.at("r").get<std::array<int, kPocColumns>>();
  s.owners = poc.at("owners").get<std::array<int, 2>>();
  s.translation = poc.at("translation").get<std::string>();
  s.rotation = poc.at("rotation").get<std::string>();
  for (const auto& t : j.at("trace")) s.trace.push_back({t.at("step").get<int>(), t.at("text").get<std::string>()});
  s.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("oracle")) {
    const auto& o = j.at("oracle");
    OracleSummary os;
    os.seeds = o.at("seeds").get<int>();
    os.agreeing = o.at("agreeing").get<int>();
    os.base_seed = o.at("base_seed").get<std::uint64_t>();
    os.seed_stable = o.at("seed_stable").get<bool>();
    os.mismatches = o.at("mismatches").get<std::vector<std::string>>();
    s.oracle = std::move(os);
  }
  return s;
}

}  // namespace

std::string render_structured(const ReportSummary& s) { return to_json(s).dump(2) + "\n"; }

std::string render_structured(const std::vector<ReportSummary>& all) {
  Json arr = Json::array();
  for (const auto& s : all) arr.push_back(to_json(s));
  return arr.dump(2) + "\n";
}

ReportSummary parse_structured(std::string_view text) {
  try {
    return from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw ReportFormatError(e.what());
  }
}

}  // namespace pocmob
