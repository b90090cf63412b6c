#include "asurf/report.hpp"

#include <cstdio>
#include <sstream>

namespace asurf {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Json path_score_json(const PathScore& s) {
  Json j;
  j["connection"] = s.path.connection;
  j["untrusted_end"] = s.path.untrusted_end;
  j["trusted_process"] = s.path.trusted_process;
  j["t_c"] = s.t_c;
  j["exp_c"] = s.exp_c;
  j["imp_c_kw"] = s.imp_c_kw;
  j["as_c"] = s.as_c;
  j["t_p"] = s.t_p;
  j["exp_p"] = s.exp_p;
  j["imp_p_kw"] = s.imp_p_kw;
  j["as_p"] = s.as_p;
  j["total"] = s.total;
  return j;
}

Json surface_report_json(const std::string& model_name, const SurfaceReport& r) {
  Json j;
  j["model"] = model_name;
  j["paths"] = Json::array();
  for (const auto& s : r.paths) j["paths"].push_back(path_score_json(s));
  j["tasm"] = r.tasm;
  return j;
}

Json diagnostics_json(const std::string& model_name,
                      const std::vector<Diagnostic>& diags) {
  Json j;
  j["model"] = model_name;
  j["diagnostics"] = Json::array();
  for (const auto& d : diags) {
    Json dj;
    dj["severity"] = to_string(d.severity);
    dj["location"] = d.location;
    dj["rule"] = d.rule;
    dj["message"] = d.message;
    j["diagnostics"].push_back(dj);
  }
  return j;
}

Json partition_result_json(const std::string& model_name,
                           const PartitionResult& r) {
  Json j;
  j["model"] = model_name;
  j["split_process"] = r.assignment.split_process;
  j["groups"] = Json::array();
  for (const auto& g : r.assignment.groups) {
    Json gj;
    gj["profile"] = g.profile.name;
    gj["data"] = g.data;
    j["groups"].push_back(gj);
  }
  j["paths"] = Json::array();
  for (const auto& s : r.report.paths) j["paths"].push_back(path_score_json(s));
  j["tasm"] = r.tasm;
  return j;
}

std::string surface_report_text(const std::string& model_name,
                                const SurfaceReport& r) {
  std::ostringstream os;
  os << "model: " << model_name << "\n";
  os << "attack paths: " << r.paths.size() << "\n";
  for (const auto& s : r.paths) {
    os << "  " << s.path.connection << "  " << s.path.untrusted_end << " -> "
       << s.path.trusted_process << "\n"
       << "    t_c=" << s.t_c << " exp_c=" << fmt6(s.exp_c)
       << " imp_c=" << fmt6(s.imp_c_kw) << " kW  as_c=" << fmt6(s.as_c) << "\n"
       << "    t_p=" << s.t_p << " exp_p=" << fmt6(s.exp_p)
       << " imp_p=" << fmt6(s.imp_p_kw) << " kW  as_p=" << fmt6(s.as_p) << "\n"
       << "    total=" << fmt6(s.total) << "\n";
  }
  os << "tasm: " << fmt6(r.tasm) << "\n";
  return os.str();
}

std::string surface_report_csv(const SurfaceReport& r) {
  std::ostringstream os;
  os << "connection,untrusted_end,trusted_process,t_c,exp_c,imp_c_kw,as_c,"
        "t_p,exp_p,imp_p_kw,as_p,total\n";
  for (const auto& s : r.paths) {
    os << s.path.connection << ',' << s.path.untrusted_end << ','
       << s.path.trusted_process << ',' << s.t_c << ',' << fmt6(s.exp_c) << ','
       << fmt6(s.imp_c_kw) << ',' << fmt6(s.as_c) << ',' << s.t_p << ','
       << fmt6(s.exp_p) << ',' << fmt6(s.imp_p_kw) << ',' << fmt6(s.as_p) << ','
       << fmt6(s.total) << '\n';
  }
  return os.str();
}

}  // namespace asurf
